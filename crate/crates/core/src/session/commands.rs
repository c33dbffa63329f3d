//! Dispatch from command names to algorithms.

use crate::algorithms::{
    collect_terms, distribute, indexsort, list_sum, pintegrate, prodrule, prodsort, substitute, vary, RuleSet,
};
use crate::error::{Error, Result};
use crate::expr::{equal_subtree, normalize, Node};
use crate::index::rename_dummies_expr;
use crate::properties::Registry;
use crate::symmetry::{all_contractions, asym, build_basis, canonicalise, decompose, reduce_sum, young_project};

/// Passes before a repeated command gives up on reaching a fixpoint.
const MAX_PASSES: usize = 100;

const UNIMPLEMENTED: &[&str] = &["join", "rewrite_diracbar", "spinorsort", "rename"];

/// Commands that `!` repeats until the expression stops changing. The
/// others act once.
const REPEATABLE: &[&str] = &[
    "substitute",
    "distribute",
    "prodrule",
    "collect_terms",
    "prodsort",
    "indexsort",
    "canonicalise",
    "rename_dummies",
];

pub(super) fn run(name: &str, repeat: bool, e: &Node, args: &[Node], reg: &Registry) -> Result<Node> {
    if UNIMPLEMENTED.contains(&name) {
        return Err(Error::UnimplementedCommand(name.to_string()));
    }
    if !(REPEATABLE.contains(&name) && repeat) {
        return once(name, e, args, reg);
    }
    let mut cur = e.clone();
    for _ in 0..MAX_PASSES {
        let next = once(name, &cur, args, reg)?;
        if equal_subtree(&next, &cur, true) {
            return Ok(next);
        }
        cur = next;
    }
    Err(Error::Invalid(format!("@{name} did not settle after {MAX_PASSES} passes")))
}

fn once(name: &str, e: &Node, args: &[Node], reg: &Registry) -> Result<Node> {
    Ok(match name {
        "substitute" => substitute(e, &RuleSet::from_nodes(args, reg)?, reg)?.expression,
        "vary" => vary(e, &RuleSet::from_nodes(args, reg)?, reg)?,
        "distribute" => distribute(e),
        "prodrule" => prodrule(e, reg),
        "pintegrate" => {
            let d = args.first().map_or("\\partial".to_string(), |a| a.name.to_string());
            pintegrate(e, &d, reg)?
        }
        "collect_terms" => collect_terms(e),
        "prodsort" => prodsort(e, reg),
        "indexsort" => indexsort(e, reg),
        "canonicalise" | "canonicalize" => canonicalise(e, reg)?,
        "rename_dummies" => rename_dummies_expr(e, reg),
        "young_project" => young_project(e, reg)?,
        "reduce_sum" => per_entry(e, |x| reduce_sum(x, reg))?,
        "list_sum" => list_sum(e, reg)?,
        "asym" => asym(e, args, reg)?,
        "all_contractions" => Node::list(all_contractions(e, reg)?),
        "decompose" => {
            let basis = build_basis(args, reg)?;
            let lists = e
                .terms()
                .into_iter()
                .map(|t| decompose(t, &basis, reg).map(|c| c.to_node()))
                .collect::<Result<Vec<_>>>()?;
            if lists.len() == 1 {
                lists.into_iter().next().unwrap()
            } else {
                normalize(Node::sum(lists))
            }
        }
        _ => return Err(Error::UnknownCommand(name.to_string())),
    })
}

fn per_entry(e: &Node, f: impl Fn(&Node) -> Result<Node>) -> Result<Node> {
    if e.is_list() {
        let mut out = e.clone();
        out.children = e.children.iter().map(&f).collect::<Result<_>>()?;
        return Ok(out);
    }
    f(e)
}
