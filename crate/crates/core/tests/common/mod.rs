#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use fieldcas::expr::{normalize, Node, ParentRel};
use fieldcas::{Rational, Registry, Session};
use proptest::prelude::*;

pub fn registry(lines: &[&str]) -> Registry {
    let mut s = Session::new();
    for l in lines {
        s.eval_line(l).unwrap_or_else(|e| panic!("{l}: {e}"));
    }
    s.registry().clone()
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4)
        .prop_filter("non-zero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| Rational::new(n, d))
}

fn leaf() -> impl Strategy<Value = Node> {
    let symbol = prop::sample::select(vec!["a", "b", "x", "A", "\\alpha", "\\psi"]).prop_map(Node::new);
    let index = (
        prop::sample::select(vec!["m", "n", "p", "q", "\\mu"]),
        any::<bool>(),
    )
        .prop_map(|(i, up)| {
            Node::new(i).with_rel(if up { ParentRel::Superscript } else { ParentRel::Subscript })
        });
    let tensor = (
        prop::sample::select(vec!["T", "R", "\\Gamma"]),
        prop::collection::vec(index, 1..=3),
    )
        .prop_map(|(name, idx)| Node::new(name).with_children(idx));
    prop_oneof![symbol, tensor, rational().prop_map(Node::number)]
}

/// Sums, products, derivatives and accents over symbols and tensors.
pub fn arb_expr() -> impl Strategy<Value = Node> {
    leaf().prop_recursive(3, 24, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..=3).prop_map(Node::sum),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(Node::prod),
            (inner.clone(), prop::sample::select(vec!["m", "n"])).prop_map(|(a, i)| {
                Node::new("\\partial")
                    .with_children(vec![Node::new(i).with_rel(ParentRel::Subscript), a])
            }),
            inner.clone().prop_map(|a| Node::new("\\bar").with_children(vec![a])),
            (inner, rational()).prop_map(|(a, r)| {
                let m = &a.multiplier * &r;
                a.with_multiplier(m)
            }),
        ]
    })
    .prop_map(normalize)
}

/// A tensor kind used by the canonicaliser oracle: name, slot count and
/// generators of its mono-term slot symmetry with their signs.
#[derive(Clone, Copy, Debug)]
pub struct Kind {
    pub name: &'static str,
    pub slots: usize,
    pub generators: &'static [(&'static [usize], i32)],
}

pub const VECTOR: Kind = Kind { name: "V", slots: 1, generators: &[] };
pub const SYM: Kind = Kind { name: "S", slots: 2, generators: &[(&[1, 0], 1)] };
pub const ANTI: Kind = Kind { name: "A", slots: 2, generators: &[(&[1, 0], -1)] };
pub const RIEMANN: Kind = Kind {
    name: "R",
    slots: 4,
    generators: &[(&[1, 0, 2, 3], -1), (&[0, 1, 3, 2], -1), (&[2, 3, 0, 1], 1)],
};

pub const ORACLE_DECLARATIONS: &[&str] = &[
    "{a,b,c,d,e,f,g,h}::Indices(vector).",
    "S_{a b}::Symmetric.",
    "A_{a b}::AntiSymmetric.",
    "R_{a b c d}::RiemannTensor.",
];

/// Closes the generators under composition. Elements map slot i of the
/// image to slot perm[i] of the original.
pub fn group_elements(k: &Kind) -> Vec<(Vec<usize>, i32)> {
    let id: Vec<usize> = (0..k.slots).collect();
    let mut seen: HashMap<Vec<usize>, i32> = HashMap::from([(id.clone(), 1)]);
    let mut queue = vec![(id, 1)];
    while let Some((p, s)) = queue.pop() {
        for (g, gs) in k.generators {
            let q: Vec<usize> = g.iter().map(|&i| p[i]).collect();
            if !seen.contains_key(&q) {
                seen.insert(q.clone(), s * gs);
                queue.push((q, s * gs));
            }
        }
    }
    let mut v: Vec<_> = seen.into_iter().collect();
    v.sort();
    v
}

pub type Factor = (&'static str, Vec<String>);

pub fn term_text(factors: &[Factor]) -> String {
    factors
        .iter()
        .map(|(n, idx)| format!("{n}_{{{}}}", idx.join(" ")))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Monomials of at most six slots with each index name used once or twice.
pub fn arb_monomial(kinds: Vec<Kind>) -> impl Strategy<Value = Vec<Factor>> {
    let pool: Vec<usize> = (0..6).flat_map(|i| [i, i]).collect();
    (
        prop::collection::vec(prop::sample::select(kinds), 1..=3),
        Just(pool).prop_shuffle(),
    )
        .prop_map(|(ks, names)| {
            let letters = ["a", "b", "c", "d", "e", "f"];
            let mut used = 0;
            let mut it = names.into_iter();
            let mut out = Vec::new();
            for k in ks {
                if used + k.slots > 6 {
                    continue;
                }
                used += k.slots;
                let idx = (0..k.slots).map(|_| letters[it.next().unwrap()].to_string()).collect();
                out.push((k.name, idx));
            }
            out
        })
}

fn kind_of(name: &str) -> Kind {
    match name {
        "V" => VECTOR,
        "S" => SYM,
        "A" => ANTI,
        "R" => RIEMANN,
        _ => unreachable!(),
    }
}

/// Renames repeated indices to `_0`, `_1`, ... in order of first occurrence.
pub fn dummy_normal_form(factors: &[Factor]) -> Vec<Factor> {
    let mut count: HashMap<&str, usize> = HashMap::new();
    for (_, idx) in factors {
        for i in idx {
            *count.entry(i).or_default() += 1;
        }
    }
    let mut map: HashMap<String, String> = HashMap::new();
    factors
        .iter()
        .map(|(n, idx)| {
            let idx = idx
                .iter()
                .map(|i| {
                    if count[i.as_str()] < 2 {
                        return i.clone();
                    }
                    let next = format!("_{}", map.len());
                    map.entry(i.clone()).or_insert(next).clone()
                })
                .collect();
            (*n, idx)
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every image of a commuting monomial under factor reordering and slot
/// symmetries, in dummy normal form, with its sign.
pub fn all_images(factors: &[Factor]) -> Vec<(Vec<Factor>, i32)> {
    let groups: Vec<_> = factors.iter().map(|(n, _)| group_elements(&kind_of(n))).collect();
    let mut slotwise: Vec<(Vec<Factor>, i32)> = vec![(Vec::new(), 1)];
    for (f, g) in factors.iter().zip(&groups) {
        let mut next = Vec::new();
        for (acc, s) in &slotwise {
            for (perm, gs) in g {
                let idx = perm.iter().map(|&i| f.1[i].clone()).collect();
                let mut acc = acc.clone();
                acc.push((f.0, idx));
                next.push((acc, s * gs));
            }
        }
        slotwise = next;
    }
    let mut out = Vec::new();
    for order in permutations(factors.len()) {
        for (fs, s) in &slotwise {
            let reordered: Vec<Factor> = order.iter().map(|&i| fs[i].clone()).collect();
            out.push((dummy_normal_form(&reordered), *s));
        }
    }
    out
}

/// Brute-force verdicts: whether the monomial vanishes by symmetry, and
/// the sign relating it to `other` if they are equal up to symmetry.
pub fn oracle(t1: &[Factor], t2: &[Factor]) -> (bool, Option<i32>) {
    let images = all_images(t1);
    let own = dummy_normal_form(t1);
    let zero = images.iter().any(|(f, s)| *f == own && *s == -1);
    let target = dummy_normal_form(t2);
    let sign = images.iter().find(|(f, _)| *f == target).map(|(_, s)| *s);
    (zero, sign)
}

pub fn free_names(factors: &[Factor]) -> HashSet<String> {
    let mut count: HashMap<&str, usize> = HashMap::new();
    for (_, idx) in factors {
        for i in idx {
            *count.entry(i).or_default() += 1;
        }
    }
    count.into_iter().filter(|(_, c)| *c == 1).map(|(n, _)| n.to_string()).collect()
}

/// A symmetry image of `t` picked by `choices`: slot permutations, a
/// factor reordering and a renaming of the dummies. Returns its sign.
pub fn random_image(t: &[Factor], choices: &[usize]) -> (Vec<Factor>, i32) {
    let mut c = choices.iter().copied().cycle();
    let mut sign = 1;
    let mut fs: Vec<Factor> = t
        .iter()
        .map(|(n, idx)| {
            let g = group_elements(&kind_of(n));
            let (perm, s) = &g[c.next().unwrap() % g.len()];
            sign *= s;
            (*n, perm.iter().map(|&i| idx[i].clone()).collect())
        })
        .collect();
    for i in (1..fs.len()).rev() {
        fs.swap(i, c.next().unwrap() % (i + 1));
    }
    let free = free_names(t);
    let mut pool: Vec<String> = "abcdefgh"
        .chars()
        .map(|ch| ch.to_string())
        .filter(|n| !free.contains(n))
        .collect();
    let mut map = HashMap::new();
    for (_, idx) in t {
        for i in idx {
            if !free.contains(i) && !map.contains_key(i) {
                let k = c.next().unwrap() % pool.len();
                map.insert(i.clone(), pool.remove(k));
            }
        }
    }
    for (_, idx) in fs.iter_mut() {
        for i in idx.iter_mut() {
            if let Some(n) = map.get(i) {
                *i = n.clone();
            }
        }
    }
    (fs, sign)
}

pub mod checks {
    use super::*;
    use fieldcas::algorithms::{collect_terms, prodsort, vary, RuleSet};
    use fieldcas::expr::equal_subtree;
    use fieldcas::index::{contraction_pairs, names_in_use, relabel_on_insert, textual_dummies};
    use fieldcas::symmetry::canonicalise;
    use fieldcas::symmetry::project::{projected_coordinates, young_project};
    use fieldcas::{parse, print_tex};
    use proptest::test_runner::TestCaseError;

    type Check = Result<(), TestCaseError>;

    fn fail(msg: String) -> TestCaseError {
        TestCaseError::fail(msg)
    }

    pub fn roundtrip(e: &Node) -> Check {
        let text = print_tex(e);
        let back = parse(&text).map_err(|err| fail(format!("{text}: {err}")))?;
        prop_assert!(equal_subtree(&back, e, true), "{} reparsed as {}", text, print_tex(&back));
        prop_assert_eq!(print_tex(&back), text);
        Ok(())
    }

    fn canon_text(reg: &Registry, t: &[Factor], mult: &Rational) -> Result<Node, TestCaseError> {
        let mut n = parse(&term_text(t)).map_err(|e| fail(e.to_string()))?;
        n.multiplier = &n.multiplier * mult;
        canonicalise(&n, reg).map_err(|e| fail(e.to_string()))
    }

    pub fn idempotent(reg: &Registry, t: &[Factor], mult: &Rational) -> Check {
        let once = canon_text(reg, t, mult)?;
        let twice = canonicalise(&once, reg).map_err(|e| fail(e.to_string()))?;
        prop_assert_eq!(print_tex(&twice), print_tex(&once));
        Ok(())
    }

    pub fn sign_invariant(reg: &Registry, t: &[Factor], choices: &[usize]) -> Check {
        let (img, sign) = random_image(t, choices);
        let a = canon_text(reg, t, &Rational::one())?;
        let b = canon_text(reg, &img, &Rational::from_int(sign as i64))?;
        prop_assert_eq!(print_tex(&a), print_tex(&b), "image {}", term_text(&img));
        Ok(())
    }

    pub fn matches_oracle(reg: &Registry, t1: &[Factor], t2: &[Factor]) -> Check {
        let (zero, sign) = oracle(t1, t2);
        let a = canon_text(reg, t1, &Rational::one())?;
        prop_assert_eq!(a.is_zero(), zero, "{} gave {}", term_text(t1), print_tex(&a));
        if zero {
            return Ok(());
        }
        let b = canon_text(reg, t2, &Rational::one())?;
        let same_unit = print_tex(&a.unit()) == print_tex(&b.unit());
        prop_assert_eq!(same_unit, sign.is_some(), "{} vs {}", term_text(t1), term_text(t2));
        if let Some(s) = sign {
            prop_assert_eq!(a.multiplier, &b.multiplier * &Rational::from_int(s as i64));
        }
        Ok(())
    }

    pub fn projector_idempotent(reg: &Registry, t: &[Factor]) -> Check {
        let e = parse(&term_text(t)).map_err(|e| fail(e.to_string()))?;
        let once = young_project(&e, reg).map_err(|e| fail(e.to_string()))?;
        let a = projected_coordinates(&e, reg).map_err(|e| fail(e.to_string()))?;
        let b = projected_coordinates(&once, reg).map_err(|e| fail(e.to_string()))?;
        prop_assert_eq!(a, b);
        Ok(())
    }

    pub fn relabel_preserves_topology(reg: &Registry, t: &[Factor], host: &[usize]) -> Check {
        let letters = ["a", "b", "c", "d", "e", "f", "g", "h"];
        let host: HashSet<String> = host.iter().map(|&i| letters[i].to_string()).collect();
        let inserted = parse(&term_text(t)).map_err(|e| fail(e.to_string()))?;
        let mut names = host.clone();
        let out = relabel_on_insert(&mut names, inserted.clone(), reg).map_err(|e| fail(e.to_string()))?;
        prop_assert_eq!(contraction_pairs(&out, reg), contraction_pairs(&inserted, reg));
        let free: HashSet<String> = free_names(t);
        let dummies: HashSet<String> = textual_dummies(&out, reg).into_iter().collect();
        prop_assert!(dummies.is_disjoint(&host), "{} clashes with {:?}", print_tex(&out), host);
        prop_assert!(dummies.is_disjoint(&free));
        prop_assert!(names_in_use(&out, reg).is_subset(&names));
        let shape = |n: &Node| n.factors().iter().map(|f| f.name.to_string()).collect::<Vec<_>>();
        prop_assert_eq!(shape(&out), shape(&inserted));
        Ok(())
    }

    pub const GRASSMANN_DECLARATIONS: &[&str] = &[
        "{\\epsilon, \\lambda, \\chi}::AntiCommuting.",
        "{\\chi, \\epsilon}::SortOrder.",
    ];

    fn is_odd(name: &str) -> bool {
        matches!(name, "\\epsilon" | "\\lambda" | "\\chi")
    }

    /// The sign of reordering, counted as the parity of crossed pairs of
    /// odd factors.
    pub fn prodsort_preserves_value(reg: &Registry, names: &[&str]) -> Check {
        let e = parse(&names.join(" ")).map_err(|e| fail(e.to_string()))?;
        let sorted = prodsort(&e, reg);
        let out: Vec<String> = sorted.factors().iter().map(|f| f.name.to_string()).collect();
        let mut before: Vec<&str> = names.to_vec();
        let mut after = out.iter().map(String::as_str).collect::<Vec<_>>();
        before.sort();
        after.sort();
        prop_assert_eq!(&before, &after);
        let mut taken = vec![false; names.len()];
        let mut origin = Vec::new();
        for n in &out {
            let i = (0..names.len()).find(|&i| !taken[i] && names[i] == n).unwrap();
            taken[i] = true;
            origin.push(i);
        }
        let mut sign = 1i64;
        for i in 0..origin.len() {
            for j in i + 1..origin.len() {
                if origin[i] > origin[j] && is_odd(&out[i]) && is_odd(&out[j]) {
                    sign = -sign;
                }
            }
        }
        prop_assert_eq!(sorted.multiplier, Rational::from_int(sign));
        Ok(())
    }

    pub const VARY_DECLARATIONS: &[&str] = &[
        "{a,b,c,d#}::Indices(vector).",
        "\\partial{#}::PartialDerivative.",
        "\\delta{#}::Accent.",
        "f_{a b}::AntiSymmetric.",
    ];

    pub const VARY_MONOMIALS: &[&str] = &[
        "f_{a b} f_{a b}",
        "g x",
        "g g f_{a b} f_{b a}",
        "x",
        "\\partial_{a}{g} \\partial_{a}{g}",
        "f_{a b} \\partial_{a}{\\partial_{b}{g}}",
    ];

    pub fn vary_rules(reg: &Registry) -> RuleSet {
        let rules = [
            parse("f_{a b} -> \\delta{f_{a b}}").unwrap(),
            parse("g -> \\delta{g}").unwrap(),
        ];
        RuleSet::from_nodes(&rules, reg).unwrap()
    }

    pub fn polynomial(terms: &[(usize, Rational)]) -> Node {
        let nodes = terms
            .iter()
            .map(|(i, c)| {
                let mut t = parse(VARY_MONOMIALS[*i]).unwrap();
                t.multiplier = &t.multiplier * c;
                t
            })
            .collect();
        normalize(Node::sum(nodes))
    }

    fn vanishes(terms: Vec<Node>) -> bool {
        collect_terms(&normalize(Node::sum(terms))).is_zero()
    }

    fn scaled(mut e: Node, c: &Rational) -> Node {
        e.multiplier = &e.multiplier * c;
        normalize(e)
    }

    pub fn vary_linear(reg: &Registry, p: &[(usize, Rational)], q: &[(usize, Rational)], c: &Rational) -> Check {
        let rules = vary_rules(reg);
        let v = |e: &Node| vary(e, &rules, reg).map_err(|err| fail(err.to_string()));
        let (ep, eq) = (polynomial(p), polynomial(q));
        let both = normalize(Node::sum(vec![ep.clone(), eq.clone()]));
        let minus = Rational::from_int(-1);
        prop_assert!(vanishes(vec![v(&both)?, scaled(v(&ep)?, &minus), scaled(v(&eq)?, &minus)]));
        let cp = scaled(ep.clone(), c);
        prop_assert!(vanishes(vec![v(&cp)?, scaled(v(&ep)?, &(c * &minus))]));
        Ok(())
    }
}
