//! First-order variation.

use std::collections::HashSet;

use crate::error::Result;
use crate::expr::{normalize, Node};
use crate::index::names_in_use;
use crate::properties::Registry;

use super::substitute::{instantiate, match_with_symmetry, RuleSet};

/// Sum over single replacements of a matching factor by its rule image,
/// reaching through products, sums and the arguments of derivatives and
/// accents. Terms without any matching factor vanish.
pub fn vary(e: &Node, rules: &RuleSet, reg: &Registry) -> Result<Node> {
    if e.is_list() {
        let mut out = e.clone();
        out.children = e.children.iter().map(|c| vary(c, rules, reg)).collect::<Result<_>>()?;
        return Ok(out);
    }
    let mut terms = Vec::new();
    for t in e.terms() {
        let host = names_in_use(t, reg);
        if let Some(v) = vary_node(t, rules, &host, reg)? {
            terms.push(v);
        }
    }
    Ok(normalize(Node::sum(terms)))
}

fn vary_node(n: &Node, rules: &RuleSet, host: &HashSet<String>, reg: &Registry) -> Result<Option<Node>> {
    if n.is_number() || n.rel.is_index() {
        return Ok(None);
    }
    for rule in &rules.rules {
        if let Some((site, b)) = match_with_symmetry(&rule.lhs, n, reg) {
            return instantiate(rule, &site, &b, host, reg).map(Some);
        }
    }
    if n.is_sum() {
        let mut terms = Vec::new();
        for t in &n.children {
            if let Some(v) = vary_node(t, rules, host, reg)? {
                terms.push(v);
            }
        }
        return Ok(wrap(n, terms));
    }
    // products and any node with arguments: one replacement per child
    let mut terms = Vec::new();
    for (i, c) in n.children.iter().enumerate() {
        if c.rel.is_index() {
            continue;
        }
        if let Some(v) = vary_node(c, rules, host, reg)? {
            let mut t = n.clone();
            t.children[i] = v;
            t.rel = crate::expr::ParentRel::NoRelation;
            t.bracket = crate::expr::Bracket::None;
            terms.push(t);
        }
    }
    Ok(wrap(n, terms))
}

fn wrap(site: &Node, terms: Vec<Node>) -> Option<Node> {
    if terms.is_empty() {
        return None;
    }
    let mut s = normalize(Node::sum(terms));
    if site.is_sum() {
        s.multiplier = &s.multiplier * &site.multiplier;
    }
    s.rel = site.rel;
    s.bracket = site.bracket;
    Some(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;
    use crate::symmetry::canon::tests::registry;

    fn v(reg: &Registry, e: &str, r: &[&str]) -> String {
        let nodes: Vec<Node> = r.iter().map(|s| parse(s).unwrap()).collect();
        let rules = RuleSet::from_nodes(&nodes, reg).unwrap();
        vary(&parse(e).unwrap(), &rules, reg).unwrap().to_string()
    }

    #[test]
    fn two_slots() {
        let reg = registry(&["{a,b,c}::Indices(vector).", "\\delta{#}::Accent."]);
        assert_eq!(
            v(&reg, "f_{a b} f_{a b}", &["f_{a b} -> \\delta{f_{a b}}"]),
            "\\delta{f_{a b}} f_{a b} + f_{a b} \\delta{f_{a b}}"
        );
        assert_eq!(v(&reg, "g_{a} g_{a}", &["f_{a b} -> \\delta{f_{a b}}"]), "0");
    }

    #[test]
    fn through_derivatives_and_accents() {
        let reg = registry(&["\\partial{#}::PartialDerivative.", "\\bar{#}::DiracBar."]);
        assert_eq!(
            v(&reg, "-1/2 \\bar{\\lambda} \\gamma_{a} \\partial_{a}{\\lambda}", &["\\lambda -> \\delta{\\lambda}"]),
            "-1/2 \\bar{\\delta{\\lambda}} \\gamma_{a} \\partial_{a}{\\lambda} - 1/2 \\bar{\\lambda} \\gamma_{a} \\partial_{a}{\\delta{\\lambda}}"
        );
    }
}
