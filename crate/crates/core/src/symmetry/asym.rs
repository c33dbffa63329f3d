//! Explicit antisymmetrisation over a set of index slots.

use rayon::prelude::*;

use crate::algorithms::collect::collect_flat;
use crate::error::{Error, Result};
use crate::expr::{textual_index_paths, Node, ParentRel};
use crate::properties::Registry;
use crate::rational::Rational;

use super::perm::all_permutations;

/// Sum over all orderings of the given indices with parity signs and
/// weight `1/k!`. Each index is located by name, and by position when the
/// argument carries one (`^{m}`). Vanishes when the indices' set has fewer
/// values than there are indices.
pub fn asym(e: &Node, indices: &[Node], reg: &Registry) -> Result<Node> {
    let k = indices.len();
    if k < 2 {
        return Ok(e.clone());
    }
    let dims: Vec<Option<usize>> = indices
        .iter()
        .map(|i| reg.index_set_of(&i.name).and_then(|s| s.dimension))
        .collect();
    if let Some(d) = dims.iter().flatten().min() {
        if *d < k {
            return Ok(Node::zero());
        }
    }
    let perms = all_permutations(k);
    let mut weight = Rational::one();
    for n in 2..=k {
        weight = &weight / &Rational::from_int(n as i64);
    }
    let mut all = Vec::new();
    for t in e.terms() {
        let slots = locate(t, indices, reg)?;
        let names: Vec<Node> = slots.iter().map(|p| t.at(p).clone()).collect();
        let terms: Vec<Node> = perms
            .par_iter()
            .map(|p| {
                let mut img = t.clone();
                for (i, &src) in p.0.iter().enumerate() {
                    let node = img.at_mut(&slots[i]);
                    node.name = names[src].name.clone();
                }
                let s = Rational::from_int(p.parity() as i64);
                img.multiplier = &(&t.multiplier * &weight) * &s;
                img
            })
            .collect();
        all.extend(terms);
    }
    Ok(collect_flat(all))
}

fn locate(t: &Node, indices: &[Node], reg: &Registry) -> Result<Vec<Vec<usize>>> {
    let paths = textual_index_paths(t, reg);
    let mut taken = vec![false; paths.len()];
    let mut out = Vec::with_capacity(indices.len());
    for idx in indices {
        let hit = paths.iter().enumerate().position(|(i, p)| {
            let n = t.at(p);
            !taken[i] && n.name == idx.name && (!idx.rel.is_index() || idx.rel == n.rel)
        });
        match hit {
            Some(i) => {
                taken[i] = true;
                out.push(paths[i].clone());
            }
            None => {
                let pos = match idx.rel {
                    ParentRel::Superscript => "^",
                    ParentRel::Subscript => "_",
                    _ => "",
                };
                return Err(Error::IndexNotFound(format!("{pos}{}", idx.name)));
            }
        }
    }
    Ok(out)
}
