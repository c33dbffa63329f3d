//! Canonical forms of tensor monomials under mono-term symmetries,
//! factor reordering and dummy relabelling.
//!
//! Factors are placed one at a time. Each placement picks a factor that may
//! legally move to the front of the remaining ones and a symmetry-group
//! image of its slots; the resulting block of slot tokens is compared
//! lexicographically, and every placement achieving the minimum is kept.
//! Two surviving states that agree on everything but the sign prove the
//! term equals its own negative.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::expr::{index_paths, Name, Node, ParentRel};
use crate::index::rename_dummies;
use crate::notation::print_tex;
use crate::properties::{PropertyKind, Registry};
use crate::rational::Rational;

use super::perm::{Perm, SignedGroup};
use super::tableau::YoungTableau;

#[derive(Clone, Copy, Debug)]
pub struct CanonOptions {
    /// Treat dummies as interchangeable labels. When off every index is
    /// compared by name and no renaming happens.
    pub rename_dummies: bool,
}

impl Default for CanonOptions {
    fn default() -> Self {
        CanonOptions { rename_dummies: true }
    }
}

thread_local! {
    static GROUPS: RefCell<HashMap<(YoungTableau, usize), Arc<SignedGroup>>> = RefCell::new(HashMap::new());
}

/// The signed slot group of a factor with `n_slots` slots.
pub fn slot_group(reg: &Registry, factor: &Node, n_slots: usize) -> Arc<SignedGroup> {
    match reg.tableau(factor) {
        Some(t) if t.max_slot().is_some_and(|m| m < n_slots) => GROUPS.with(|g| {
            g.borrow_mut()
                .entry((t.clone(), n_slots))
                .or_insert_with(|| Arc::new(t.monoterm_group(n_slots)))
                .clone()
        }),
        _ => Arc::new(SignedGroup::trivial(n_slots)),
    }
}

/// Copy of `factor` where slot `i` holds what slot `perm[i]` held.
pub fn permute_slots(factor: &Node, paths: &[Vec<usize>], perm: &Perm) -> Node {
    let mut out = factor.clone();
    for (i, &src) in perm.0.iter().enumerate() {
        if i != src {
            *out.at_mut(&paths[i]) = factor.at(&paths[src]).clone();
        }
    }
    out
}

/// Print of the factor with index names and positions erased.
fn skeleton(factor: &Node, paths: &[Vec<usize>]) -> String {
    if paths.is_empty() {
        return print_tex(&factor.unit());
    }
    let mut s = factor.unit();
    for p in paths {
        let n = s.at_mut(p);
        n.name = Name::from("#");
        n.rel = ParentRel::Subscript;
        n.children.clear();
    }
    print_tex(&s)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
enum Token {
    Free(u32, ParentRel),
    Dummy(u32, u32, ParentRel),
}

struct Factor {
    node: Node,
    paths: Vec<Vec<usize>>,
    skeleton: u32,
    /// Per slot: (name id, relation).
    occ: Vec<(u32, ParentRel)>,
    group: Arc<SignedGroup>,
    content: u32,
}

#[derive(Clone)]
struct State {
    remaining: Vec<usize>,
    labels: Vec<u32>,
    next: u32,
    sign: i32,
    choices: Vec<(usize, usize)>,
}

const UNLABELLED: u32 = u32::MAX;

/// A traceless tensor contracted with itself.
fn self_traced(f: &Node, reg: &Registry) -> bool {
    if !reg.query(f, PropertyKind::WeylTensor).is_some_and(|r| r.is_traceless()) {
        return false;
    }
    let own: Vec<&str> = f.index_children().map(|c| &*c.name).collect();
    own.iter().enumerate().any(|(i, a)| own[i + 1..].contains(a))
}

/// Canonical form of a single term (not a sum). The result may be zero.
pub fn canonicalise_term(term: &Node, reg: &Registry, opts: CanonOptions) -> Result<Node> {
    if term.is_number() || term.is_zero() {
        return Ok(term.clone());
    }
    let raw: Vec<&Node> = term.factors();
    if raw.iter().any(|f| self_traced(f, reg)) {
        return Ok(Node::zero());
    }
    // interned name ids, occurrence counts
    let mut names: Vec<Name> = Vec::new();
    let mut name_ids: HashMap<Name, u32> = HashMap::new();
    let mut counts: Vec<usize> = Vec::new();
    let mut skeletons: HashMap<String, u32> = HashMap::new();
    let mut contents: HashMap<(u32, Vec<(u32, ParentRel)>), u32> = HashMap::new();
    let mut factors = Vec::with_capacity(raw.len());
    for f in &raw {
        let mut node = (*f).clone();
        node.multiplier = Rational::one();
        let paths = index_paths(&node, reg);
        let occ: Vec<(u32, ParentRel)> = paths
            .iter()
            .map(|p| {
                let n = node.at(p);
                let id = *name_ids.entry(n.name.clone()).or_insert_with(|| {
                    names.push(n.name.clone());
                    counts.push(0);
                    (names.len() - 1) as u32
                });
                counts[id as usize] += 1;
                (id, n.rel)
            })
            .collect();
        let sk = skeleton(&node, &paths);
        let next_sk = skeletons.len() as u32;
        let skeleton = *skeletons.entry(sk).or_insert(next_sk);
        let next_content = contents.len() as u32;
        let content = *contents.entry((skeleton, occ.clone())).or_insert(next_content);
        let group = slot_group(reg, &node, paths.len());
        factors.push(Factor { node, paths, skeleton, occ, group, content });
    }
    if let Some(i) = counts.iter().position(|&c| c > 2) {
        return Err(Error::RepeatedIndex {
            name: names[i].to_string(),
            count: counts[i],
            slots: Vec::new(),
        });
    }
    // skeleton ids ordered by their text
    let mut sk_sorted: Vec<(&String, &u32)> = skeletons.iter().collect();
    sk_sorted.sort();
    let mut sk_rank = vec![0u32; skeletons.len()];
    for (rank, (_, &id)) in sk_sorted.iter().enumerate() {
        sk_rank[id as usize] = rank as u32;
    }
    // free names ranked alphabetically; dummies tagged with their index set
    let mut order: Vec<u32> = (0..names.len() as u32).collect();
    order.sort_by(|a, b| names[*a as usize].cmp(&names[*b as usize]));
    let mut free_rank = vec![0u32; names.len()];
    for (rank, &id) in order.iter().enumerate() {
        free_rank[id as usize] = rank as u32;
    }
    let is_dummy: Vec<bool> = counts.iter().map(|&c| opts.rename_dummies && c == 2).collect();
    let set_of: Vec<u32> = names
        .iter()
        .map(|n| reg.index_set_position(n).map_or(u32::MAX - 1, |p| p as u32))
        .collect();

    let n = factors.len();
    let mut comm = vec![vec![Some(1i32); n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let s = reg.commutation_sign(&factors[i].node, &factors[j].node);
            comm[i][j] = s;
            comm[j][i] = s;
        }
    }

    let mut beam = vec![State {
        remaining: (0..n).collect(),
        labels: vec![UNLABELLED; names.len()],
        next: 0,
        sign: 1,
        choices: Vec::new(),
    }];
    let mut block: Vec<Token> = Vec::new();
    for _ in 0..n {
        let mut best: Option<(u32, Vec<Token>)> = None;
        let mut next_beam: Vec<State> = Vec::new();
        for st in &beam {
            for k in 0..st.remaining.len() {
                let f = st.remaining[k];
                let mut cross = 1;
                let mut legal = true;
                for &g in &st.remaining[..k] {
                    match comm[g][f] {
                        Some(s) => cross *= s,
                        None => {
                            legal = false;
                            break;
                        }
                    }
                }
                if !legal {
                    continue;
                }
                let fac = &factors[f];
                let skr = sk_rank[fac.skeleton as usize];
                if let Some((bs, _)) = &best {
                    if skr > *bs {
                        continue;
                    }
                }
                for (gi, (perm, gs)) in fac.group.elements.iter().enumerate() {
                    block.clear();
                    let mut labels_added: Vec<u32> = Vec::new();
                    let mut next = st.next;
                    for &src in &perm.0 {
                        let (id, rel) = fac.occ[src];
                        let tok = if is_dummy[id as usize] {
                            let mut l = st.labels[id as usize];
                            if l == UNLABELLED {
                                if let Some(pos) = labels_added.iter().position(|&x| x == id) {
                                    l = st.next + pos as u32;
                                } else {
                                    labels_added.push(id);
                                    l = next;
                                    next += 1;
                                }
                            }
                            Token::Dummy(set_of[id as usize], l, rel)
                        } else {
                            Token::Free(free_rank[id as usize], rel)
                        };
                        block.push(tok);
                    }
                    let better = match &best {
                        None => true,
                        Some((bs, bt)) => (skr, block.as_slice()) < (*bs, bt.as_slice()),
                    };
                    let equal = !better && best.as_ref().is_some_and(|(bs, bt)| skr == *bs && block == *bt);
                    if better {
                        best = Some((skr, block.clone()));
                        next_beam.clear();
                    }
                    if better || equal {
                        let mut ns = st.clone();
                        ns.remaining.remove(k);
                        for (off, id) in labels_added.iter().enumerate() {
                            ns.labels[*id as usize] = st.next + off as u32;
                        }
                        ns.next = next;
                        ns.sign *= cross * gs;
                        ns.choices.push((f, gi));
                        next_beam.push(ns);
                    }
                }
            }
        }
        // merge equivalent states; opposite signs mean the term vanishes
        let mut seen: HashMap<Vec<u32>, i32> = HashMap::new();
        let mut merged = Vec::with_capacity(next_beam.len());
        for st in next_beam {
            let mut key = Vec::new();
            for &f in &st.remaining {
                key.push(factors[f].content);
                key.extend(factors[f].occ.iter().map(|(id, _)| st.labels[*id as usize]));
            }
            match seen.get(&key) {
                Some(&s) if s != st.sign => return Ok(Node::zero()),
                Some(_) => {}
                None => {
                    seen.insert(key, st.sign);
                    merged.push(st);
                }
            }
        }
        beam = merged;
    }
    let st = &beam[0];
    let mut out_factors = Vec::with_capacity(n);
    for &(f, gi) in &st.choices {
        let fac = &factors[f];
        out_factors.push(permute_slots(&fac.node, &fac.paths, &fac.group.elements[gi].0));
    }
    let mult = &term.multiplier * &Rational::from_int(st.sign as i64);
    let mut out = if out_factors.len() == 1 {
        out_factors.pop().unwrap()
    } else {
        Node::prod(out_factors)
    };
    out.multiplier = mult;
    out.rel = term.rel;
    out.bracket = term.bracket;
    if opts.rename_dummies {
        out = rename_dummies(&out, reg);
    }
    Ok(out)
}

/// Canonicalises every term of a sum (or every entry of a list).
pub fn canonicalise_with(e: &Node, reg: &Registry, opts: CanonOptions) -> Result<Node> {
    if e.is_list() {
        let mut out = e.clone();
        out.children = e
            .children
            .iter()
            .map(|c| canonicalise_with(c, reg, opts))
            .collect::<Result<_>>()?;
        return Ok(out);
    }
    if e.is_sum() {
        let terms: Vec<Node> = if e.children.len() > 64 {
            e.children
                .par_iter()
                .map(|t| canonicalise_term(t, reg, opts))
                .collect::<Result<_>>()?
        } else {
            e.children
                .iter()
                .map(|t| canonicalise_term(t, reg, opts))
                .collect::<Result<_>>()?
        };
        let mut out = e.clone();
        out.children = terms;
        return Ok(crate::expr::normalize(out));
    }
    canonicalise_term(e, reg, opts)
}

pub fn canonicalise(e: &Node, reg: &Registry) -> Result<Node> {
    canonicalise_with(e, reg, CanonOptions::default())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::notation::{parse, parse_line, Statement};
    use crate::properties::{Pattern, PropertyKind, PropertyRecord};

    pub(crate) fn registry(lines: &[&str]) -> Registry {
        let mut reg = Registry::new();
        for l in lines {
            let Statement::PropertyDeclaration(d) = parse_line(l).unwrap().statement else {
                panic!("{l}")
            };
            let pats: Vec<Pattern> = d.patterns.iter().map(Pattern::from_node).collect();
            let mut rec = PropertyRecord::new(PropertyKind::parse(&d.property).unwrap());
            for (k, v) in &d.args {
                rec = rec.with_arg(k, v);
            }
            reg.declare(&pats, rec).unwrap();
        }
        reg
    }

    fn canon(reg: &Registry, s: &str) -> String {
        canonicalise(&parse(s).unwrap(), reg).unwrap().to_string()
    }

    #[test]
    fn riemann_monoterm_moves() {
        let reg = registry(&["R_{m n p q}::RiemannTensor."]);
        assert_eq!(canon(&reg, "R_{b a c d}"), "-R_{a b c d}");
        assert_eq!(canon(&reg, "R_{c d a b}"), "R_{a b c d}");
        assert_eq!(canon(&reg, "R_{a a c d}"), "0");
    }

    #[test]
    fn dummies_relabelled() {
        let reg = registry(&[
            "{m,n,p,q,r,s}::Indices(vector).",
            "R_{m n p q}::RiemannTensor.",
        ]);
        assert_eq!(canon(&reg, "R_{p q r s} R_{p r q s}"), "R_{m n p q} R_{m p n q}");
        assert_eq!(canon(&reg, "R_{p r q s} R_{p q r s}"), "R_{m n p q} R_{m p n q}");
    }

    #[test]
    fn anticommuting_reorder_sign() {
        let reg = registry(&[
            "{\\epsilon, \\lambda}::AntiCommuting.",
            "\\lambda::SelfAntiCommuting.",
        ]);
        assert_eq!(canon(&reg, "\\lambda \\epsilon"), "-\\epsilon \\lambda");
        assert_eq!(canon(&reg, "\\lambda \\lambda"), "0");
    }

    #[test]
    fn noncommuting_keeps_order() {
        let reg = registry(&["{\\lambda, \\gamma_{#}}::NonCommuting."]);
        assert_eq!(canon(&reg, "\\lambda \\gamma_{a}"), "\\lambda \\gamma_{a}");
    }

    #[test]
    fn antisymmetric_contracted_with_symmetric_vanishes() {
        let reg = registry(&[
            "{a,b,c}::Indices(vector).",
            "F_{a b}::AntiSymmetric.",
            "S_{a b}::Symmetric.",
        ]);
        assert_eq!(canon(&reg, "F_{a b} S_{a b}"), "0");
        assert_eq!(canon(&reg, "S_{b a} F_{a b}"), "0");
    }
}
