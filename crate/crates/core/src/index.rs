//! Free/dummy classification, fresh index names and dummy relabelling.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::expr::{index_paths, textual_index_paths, Node, ParentRel};
use crate::properties::{is_positive_integer, Registry};

/// A named pool of index symbols, e.g. `{m,n,p,q#}::Indices(vector)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSet {
    pub name: String,
    pub members: Vec<String>,
    /// Stem of the generated-name family (`q` for `q#`).
    pub generator: Option<String>,
    pub dimension: Option<usize>,
}

impl IndexSet {
    pub fn new(name: &str) -> Self {
        IndexSet {
            name: name.to_string(),
            members: Vec::new(),
            generator: None,
            dimension: None,
        }
    }

    pub fn contains(&self, name: &str) -> bool {
        self.members.iter().any(|m| m == name)
            || self
                .generator
                .as_deref()
                .is_some_and(|g| name.strip_prefix(g).is_some_and(is_positive_integer))
    }

    /// The n-th candidate name (explicit members first, then the family).
    fn candidate(&self, n: usize) -> Option<String> {
        if n < self.members.len() {
            return Some(self.members[n].clone());
        }
        let g = self.generator.as_ref()?;
        Some(format!("{g}{}", n - self.members.len() + 1))
    }

    /// First name of the set that is not in use: explicit members in
    /// declaration order, then `q1, q2, ...`.
    pub fn fresh(&self, in_use: &HashSet<String>) -> Result<String> {
        for n in 0.. {
            match self.candidate(n) {
                Some(c) if !in_use.contains(c.as_str()) => return Ok(c),
                Some(_) => {}
                None => break,
            }
        }
        Err(Error::IndicesExhausted(self.name.clone()))
    }
}

/// Free function form of [`IndexSet::fresh`].
pub fn fresh_dummy(set: &IndexSet, in_use: &HashSet<String>) -> Result<String> {
    set.fresh(in_use)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeIndex {
    pub name: String,
    pub rel: ParentRel,
    pub slot: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DummyPair {
    pub name: String,
    pub slots: (usize, usize),
}

/// Free and dummy indices of one term; slots count positions in the
/// index iterator of the term.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndexClassification {
    pub free: Vec<FreeIndex>,
    pub dummy: Vec<DummyPair>,
}

impl IndexClassification {
    pub fn free_names(&self) -> Vec<String> {
        let mut v: Vec<String> = self.free.iter().map(|f| f.name.clone()).collect();
        v.sort();
        v
    }
}

pub fn classify_indices(term: &Node, reg: &Registry) -> Result<IndexClassification> {
    let slots = crate::expr::index_iterator(term, reg);
    let mut positions: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    let mut order: Vec<&str> = Vec::new();
    for (i, n) in slots.iter().enumerate() {
        let e = positions.entry(&n.name).or_default();
        if e.is_empty() {
            order.push(&n.name);
        }
        e.push(i);
    }
    let mut out = IndexClassification::default();
    for name in order {
        let pos = &positions[name];
        match pos.len() {
            1 => out.free.push(FreeIndex {
                name: name.to_string(),
                rel: slots[pos[0]].rel,
                slot: pos[0],
            }),
            2 => out.dummy.push(DummyPair {
                name: name.to_string(),
                slots: (pos[0], pos[1]),
            }),
            count => {
                return Err(Error::RepeatedIndex {
                    name: name.to_string(),
                    count,
                    slots: pos.clone(),
                })
            }
        }
    }
    Ok(out)
}

/// Checks that all terms of a sum carry the same free indices.
pub fn check_free_indices(e: &Node, reg: &Registry) -> Result<Vec<String>> {
    let mut expected: Option<Vec<String>> = None;
    for t in e.terms() {
        let free = classify_indices(t, reg)?.free_names();
        match &expected {
            None => expected = Some(free),
            Some(x) if *x != free => {
                return Err(Error::FreeIndexMismatch(format!(
                    "terms carry {x:?} and {free:?}"
                )))
            }
            _ => {}
        }
    }
    Ok(expected.unwrap_or_default())
}

/// Every index name appearing anywhere below `n`.
pub fn names_in_use(n: &Node, reg: &Registry) -> HashSet<String> {
    textual_index_paths(n, reg)
        .iter()
        .map(|p| n.at(p).name.to_string())
        .collect()
}

/// Index names of `n` occurring exactly twice, in textual order.
pub fn textual_dummies(n: &Node, reg: &Registry) -> Vec<String> {
    let mut counts: HashMap<String, usize> = HashMap::new();
    let mut order = Vec::new();
    for p in textual_index_paths(n, reg) {
        let name = n.at(&p).name.to_string();
        let c = counts.entry(name.clone()).or_default();
        if *c == 0 {
            order.push(name);
        }
        *c += 1;
    }
    order.into_iter().filter(|k| counts[k] == 2).collect()
}

/// Renames index nodes below `n` according to `map`, simultaneously.
pub fn rename_indices(n: &mut Node, map: &HashMap<String, String>, reg: &Registry) {
    if map.is_empty() {
        return;
    }
    for p in textual_index_paths(n, reg) {
        let node = n.at_mut(&p);
        if let Some(new) = map.get(&*node.name) {
            node.name = new.as_str().into();
        }
    }
}

/// Renames those dummies of `inserted` whose names clash with `host_names`,
/// drawing fresh names from each dummy's own index set. The chosen names
/// are added to `host_names`. Free indices are never touched.
pub fn relabel_on_insert(
    host_names: &mut HashSet<String>,
    mut inserted: Node,
    reg: &Registry,
) -> Result<Node> {
    let dummies = textual_dummies(&inserted, reg);
    let own = names_in_use(&inserted, reg);
    let mut avoid: HashSet<String> = host_names.union(&own).cloned().collect();
    let mut map = HashMap::new();
    for d in &dummies {
        if !host_names.contains(d) {
            continue;
        }
        let Some(set) = reg.index_set_of(d) else {
            continue;
        };
        let fresh = set.fresh(&avoid)?;
        avoid.insert(fresh.clone());
        map.insert(d.clone(), fresh);
    }
    rename_indices(&mut inserted, &map, reg);
    host_names.extend(names_in_use(&inserted, reg));
    Ok(inserted)
}

/// Gives the dummies of one term the earliest available names of their
/// index sets, in order of first occurrence, avoiding the free indices.
pub fn rename_dummies(term: &Node, reg: &Registry) -> Node {
    let dummies = textual_dummies(term, reg);
    if dummies.is_empty() {
        return term.clone();
    }
    let dummy_set: HashSet<&String> = dummies.iter().collect();
    let mut avoid: HashSet<String> = names_in_use(term, reg)
        .into_iter()
        .filter(|n| !dummy_set.contains(n))
        .collect();
    // dummies outside any declared set keep their names
    for d in &dummies {
        if reg.index_set_of(d).is_none() {
            avoid.insert(d.clone());
        }
    }
    let mut map = HashMap::new();
    for d in &dummies {
        let Some(set) = reg.index_set_of(d) else {
            continue;
        };
        match set.fresh(&avoid) {
            Ok(fresh) => {
                avoid.insert(fresh.clone());
                if &fresh != d {
                    map.insert(d.clone(), fresh);
                }
            }
            Err(_) => {
                avoid.insert(d.clone());
            }
        }
    }
    let mut out = term.clone();
    rename_indices(&mut out, &map, reg);
    out
}

/// Applies [`rename_dummies`] to every term of a sum (or list entries).
pub fn rename_dummies_expr(e: &Node, reg: &Registry) -> Node {
    if e.is_sum() || e.is_list() {
        let mut out = e.clone();
        out.children = e.children.iter().map(|t| rename_dummies_expr(t, reg)).collect();
        return out;
    }
    rename_dummies(e, reg)
}

/// Slot positions (in index-iterator order) paired by contraction.
pub fn contraction_pairs(term: &Node, reg: &Registry) -> Vec<(usize, usize)> {
    let slots = index_paths(term, reg);
    let mut first: HashMap<String, usize> = HashMap::new();
    let mut pairs = Vec::new();
    for (i, p) in slots.iter().enumerate() {
        let name = term.at(p).name.to_string();
        if let Some(j) = first.remove(&name) {
            pairs.push((j, i));
        } else {
            first.insert(name, i);
        }
    }
    pairs.sort();
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;
    use crate::properties::{Pattern, PropertyKind, PropertyRecord};

    fn vector_set() -> Registry {
        let mut reg = Registry::new();
        let pats: Vec<Pattern> = ["m", "n", "p", "q#"]
            .iter()
            .map(|s| Pattern::from_node(&parse(s).unwrap()))
            .collect();
        reg.declare(&pats, PropertyRecord::new(PropertyKind::Indices).with_arg("0", "vector"))
            .unwrap();
        reg
    }

    fn in_use(names: &[&str]) -> HashSet<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn fresh_prefers_members_then_family() {
        let reg = vector_set();
        let set = reg.index_set_of("m").unwrap();
        assert_eq!(fresh_dummy(set, &in_use(&["m", "n"])).unwrap(), "p");
        assert_eq!(fresh_dummy(set, &in_use(&["m", "n", "p", "q1"])).unwrap(), "q2");
    }

    #[test]
    fn fresh_without_generator_exhausts() {
        let mut set = IndexSet::new("small");
        set.members = vec!["a".into(), "b".into()];
        assert!(matches!(
            fresh_dummy(&set, &in_use(&["a", "b"])),
            Err(Error::IndicesExhausted(_))
        ));
    }

    #[test]
    fn classify_basic() {
        let reg = Registry::new();
        let c = classify_indices(&parse("T_{m m}").unwrap(), &reg).unwrap();
        assert_eq!(c.dummy.len(), 1);
        assert!(c.free.is_empty());
        let err = classify_indices(&parse("T_{m} S_{m} R_{m}").unwrap(), &reg).unwrap_err();
        assert!(matches!(err, Error::RepeatedIndex { count: 3, .. }));
    }

    #[test]
    fn rename_dummies_to_earliest() {
        let reg = vector_set();
        let t = parse("T_{q3 q5} T_{q3 q5}").unwrap();
        assert_eq!(rename_dummies(&t, &reg).to_string(), "T_{m n} T_{m n}");
        let t = parse("T_{m n} T_{m n}").unwrap();
        assert_eq!(rename_dummies(&t, &reg), t);
        let t = parse("T_{m q1} T_{q1 q2} S_{q2}").unwrap();
        assert_eq!(rename_dummies(&t, &reg).to_string(), "T_{m n} T_{n p} S_{p}");
    }

    #[test]
    fn relabel_only_on_clash() {
        let reg = vector_set();
        let mut host = in_use(&["m", "n"]);
        let ins = relabel_on_insert(&mut host, parse("B_{m n} B_{m n}").unwrap(), &reg).unwrap();
        assert_eq!(ins.to_string(), "B_{p q1} B_{p q1}");
        let mut empty = HashSet::new();
        let ins = relabel_on_insert(&mut empty, parse("B_{m n} B_{m n}").unwrap(), &reg).unwrap();
        assert_eq!(ins.to_string(), "B_{m n} B_{m n}");
    }
}
