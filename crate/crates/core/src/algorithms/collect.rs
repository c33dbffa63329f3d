use std::collections::HashMap;

use crate::expr::{normalize, Node};
use crate::rational::Rational;

/// Merges terms that are equal up to their multipliers, keeping the
/// position of the first occurrence. Zero sums become the node 0.
pub fn collect_flat(terms: Vec<Node>) -> Node {
    let mut slots: HashMap<Node, usize> = HashMap::with_capacity(terms.len());
    let mut out: Vec<(Node, Rational)> = Vec::new();
    for t in terms {
        if t.is_zero() {
            continue;
        }
        let unit = t.unit();
        match slots.get(&unit) {
            Some(&i) => out[i].1 += &t.multiplier,
            None => {
                slots.insert(unit.clone(), out.len());
                out.push((unit, t.multiplier));
            }
        }
    }
    let terms: Vec<Node> = out
        .into_iter()
        .filter(|(_, m)| !m.is_zero())
        .map(|(mut n, m)| {
            n.multiplier = if n.is_number() { m } else { &n.multiplier * &m };
            n
        })
        .collect();
    normalize(Node::sum(terms))
}

/// Collects like terms in every sum of the tree.
pub fn collect_terms(e: &Node) -> Node {
    let mut out = e.clone();
    out.children = e.children.iter().map(collect_terms).collect();
    if out.is_sum() {
        let rel = out.rel;
        let bracket = out.bracket;
        let mult = out.multiplier.clone();
        let mut c = collect_flat(out.children);
        if !mult.is_one() {
            c = normalize(c.with_multiplier_scaled(&mult));
        }
        c.rel = rel;
        c.bracket = bracket;
        return c;
    }
    out
}

impl Node {
    pub(crate) fn with_multiplier_scaled(mut self, by: &Rational) -> Node {
        self.multiplier = &self.multiplier * by;
        self
    }
}
