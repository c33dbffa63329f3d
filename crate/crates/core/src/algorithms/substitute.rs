//! Rule-based replacement of subtrees with index-aware matching.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::expr::{index_paths, normalize, textual_index_paths, Node, ARROW, EQUALS};
use crate::index::{check_free_indices, classify_indices, names_in_use, rename_indices};
use crate::properties::Registry;
use crate::rational::Rational;
use crate::symmetry::canon::{permute_slots, slot_group};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Node,
    pub rhs: Node,
}

impl Rule {
    /// Checks that both sides carry the same free indices.
    pub fn new(lhs: Node, rhs: Node, reg: &Registry) -> Result<Self> {
        let left = classify_indices(&lhs, reg)?.free_names();
        let right = if rhs.is_zero() { left.clone() } else { check_free_indices(&rhs, reg)? };
        if left != right {
            return Err(Error::FreeIndexMismatch(format!(
                "rule {lhs} carries {left:?} on the left and {right:?} on the right"
            )));
        }
        Ok(Rule { lhs, rhs })
    }

    /// Reads `lhs = rhs` or `lhs -> rhs`.
    pub fn from_node(n: &Node, reg: &Registry) -> Result<Self> {
        if !(n.is(EQUALS) || n.is(ARROW)) || n.children.len() != 2 {
            return Err(Error::Invalid(format!("`{n}` is not a rule")));
        }
        let mut lhs = n.children[0].clone();
        let mut rhs = n.children[1].clone();
        lhs.rel = crate::expr::ParentRel::NoRelation;
        rhs.rel = crate::expr::ParentRel::NoRelation;
        Rule::new(lhs, rhs, reg)
    }
}

/// Ordered rules; at every site the first matching rule wins.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RuleSet {
    pub rules: Vec<Rule>,
}

impl RuleSet {
    pub fn from_nodes(nodes: &[Node], reg: &Registry) -> Result<Self> {
        let mut rules = Vec::new();
        for n in nodes {
            if n.is_list() {
                rules.extend(RuleSet::from_nodes(&n.children, reg)?.rules);
            } else {
                rules.push(Rule::from_node(n, reg)?);
            }
        }
        Ok(RuleSet { rules })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub expression: Node,
    pub applied: bool,
    pub diagnostics: Vec<String>,
}

/// Binds pattern index names to target index names. Distinct pattern names
/// bind to distinct targets.
#[derive(Clone, Debug, Default)]
pub(crate) struct Binding {
    map: HashMap<String, String>,
    used: HashSet<String>,
}

impl Binding {
    fn bind(&mut self, from: &str, to: &str) -> bool {
        match self.map.get(from) {
            Some(t) => t == to,
            None => {
                if !self.used.insert(to.to_string()) {
                    return false;
                }
                self.map.insert(from.to_string(), to.to_string());
                true
            }
        }
    }
}

fn is_numeral(name: &str) -> bool {
    name.chars().all(|c| c.is_ascii_digit())
}

fn match_children(p: &Node, t: &Node, b: &mut Binding) -> bool {
    if p.name != t.name || p.children.len() != t.children.len() {
        return false;
    }
    for (pc, tc) in p.children.iter().zip(&t.children) {
        if pc.rel != tc.rel {
            return false;
        }
        if pc.rel.is_index() && pc.children.is_empty() && tc.children.is_empty() {
            if is_numeral(&pc.name) || is_numeral(&tc.name) {
                if pc.name != tc.name {
                    return false;
                }
            } else if !b.bind(&pc.name, &tc.name) {
                return false;
            }
        } else if pc.multiplier != tc.multiplier || !match_children(pc, tc, b) {
            return false;
        }
    }
    true
}

/// Matches the pattern against `target`, ignoring the root multipliers.
pub(crate) fn match_pattern(pattern: &Node, target: &Node) -> Option<Binding> {
    let mut b = Binding::default();
    match_children(pattern, target, &mut b).then_some(b)
}

/// Matches `target` or, failing that, one of its images under the
/// mono-term symmetries of its slots. The returned site carries the sign
/// of the image in its multiplier.
pub(crate) fn match_with_symmetry(pattern: &Node, target: &Node, reg: &Registry) -> Option<(Node, Binding)> {
    if let Some(b) = match_pattern(pattern, target) {
        return Some((target.clone(), b));
    }
    if pattern.name != target.name || reg.tableau(target).is_none() {
        return None;
    }
    let paths = index_paths(target, reg);
    let group = slot_group(reg, target, paths.len());
    for (perm, sign) in group.elements.iter().skip(1) {
        let mut img = permute_slots(target, &paths, perm);
        if let Some(b) = match_pattern(pattern, &img) {
            img.multiplier = &target.multiplier * &Rational::from_int(*sign as i64);
            return Some((img, b));
        }
    }
    None
}

/// The rule's right-hand side at a match site: bound names substituted,
/// rule dummies renamed where they clash with `avoid`.
pub(crate) fn instantiate(
    rule: &Rule,
    site: &Node,
    binding: &Binding,
    avoid: &HashSet<String>,
    reg: &Registry,
) -> Result<Node> {
    let mut rhs = rule.rhs.clone();
    let mut map = binding.map.clone();
    let mut avoid: HashSet<String> = avoid.iter().cloned().collect();
    avoid.extend(binding.map.values().cloned());
    let mut seen = HashSet::new();
    for p in textual_index_paths(&rhs, reg) {
        let name = rhs.at(&p).name.to_string();
        if binding.map.contains_key(&name) || !seen.insert(name.clone()) {
            continue;
        }
        if avoid.contains(&name) {
            if let Some(set) = reg.index_set_of(&name) {
                let fresh = set.fresh(&avoid)?;
                avoid.insert(fresh.clone());
                map.insert(name, fresh);
                continue;
            }
        }
        avoid.insert(name);
    }
    rename_indices(&mut rhs, &map, reg);
    rhs.multiplier = &(&rhs.multiplier * &site.multiplier) / &rule.lhs.multiplier;
    rhs.rel = site.rel;
    rhs.bracket = site.bracket;
    Ok(rhs)
}

struct Pass<'a> {
    rules: &'a RuleSet,
    reg: &'a Registry,
    applied: bool,
}

impl Pass<'_> {
    fn node(&mut self, n: &Node, host: &mut HashSet<String>) -> Result<Node> {
        if n.rel.is_index() {
            return Ok(n.clone());
        }
        for rule in &self.rules.rules {
            if let Some((site, b)) = match_with_symmetry(&rule.lhs, n, self.reg) {
                let out = instantiate(rule, &site, &b, host, self.reg)?;
                host.extend(names_in_use(&out, self.reg));
                self.applied = true;
                return Ok(out);
            }
        }
        let mut out = n.clone();
        out.children = n
            .children
            .iter()
            .map(|c| self.node(c, host))
            .collect::<Result<_>>()?;
        Ok(out)
    }

    fn expr(&mut self, e: &Node) -> Result<Node> {
        if e.is_sum() || e.is_list() {
            let mut out = e.clone();
            out.children = e.children.iter().map(|c| self.expr(c)).collect::<Result<_>>()?;
            return Ok(out);
        }
        let mut host = names_in_use(e, self.reg);
        self.node(e, &mut host)
    }
}

/// One outermost-first pass of the rules over every term.
pub fn substitute(e: &Node, rules: &RuleSet, reg: &Registry) -> Result<CommandResult> {
    let mut pass = Pass { rules, reg, applied: false };
    let out = pass.expr(e)?;
    let expression = if pass.applied { normalize(out) } else { e.clone() };
    let mut diagnostics = Vec::new();
    if !pass.applied {
        diagnostics.push("no rule matched".to_string());
    }
    Ok(CommandResult {
        expression,
        applied: pass.applied,
        diagnostics,
    })
}
