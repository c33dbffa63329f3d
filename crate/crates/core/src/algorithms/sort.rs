//! Reordering of factors within products and of indices within factors.

use std::cmp::Ordering;

use crate::expr::{index_paths, normalize, Node};
use crate::properties::Registry;
use crate::rational::Rational;
use crate::symmetry::canon::{permute_slots, slot_group};

fn sort_key(n: &Node, reg: &Registry) -> (usize, String, usize) {
    (
        reg.sort_position(n).unwrap_or(usize::MAX),
        n.name.to_string(),
        n.index_count(),
    )
}

/// Sorts the factors of every product by adjacent exchanges, each one
/// multiplying the term by its commutation sign. Pairs without a definite
/// sign never cross.
pub fn prodsort(e: &Node, reg: &Registry) -> Node {
    normalize(sort_products(e, reg))
}

fn sort_products(e: &Node, reg: &Registry) -> Node {
    let mut out = e.clone();
    out.children = e.children.iter().map(|c| sort_products(c, reg)).collect();
    if !out.is_prod() {
        return out;
    }
    let mut keyed: Vec<((usize, String, usize), Node)> =
        out.children.drain(..).map(|f| (sort_key(&f, reg), f)).collect();
    let mut sign = 1;
    loop {
        let mut swapped = false;
        for i in 0..keyed.len().saturating_sub(1) {
            if keyed[i].0.cmp(&keyed[i + 1].0) != Ordering::Greater {
                continue;
            }
            if let Some(s) = reg.commutation_sign(&keyed[i].1, &keyed[i + 1].1) {
                sign *= s;
                keyed.swap(i, i + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    out.children = keyed.into_iter().map(|(_, f)| f).collect();
    if sign < 0 {
        out.multiplier = -out.multiplier;
    }
    out
}

/// Moves the indices of each factor towards sorted order using the
/// factor's mono-term symmetries only.
pub fn indexsort(e: &Node, reg: &Registry) -> Node {
    normalize(sort_indices(e, reg))
}

fn sort_indices(e: &Node, reg: &Registry) -> Node {
    if e.rel.is_index() {
        return e.clone();
    }
    let mut out = e.clone();
    out.children = e.children.iter().map(|c| sort_indices(c, reg)).collect();
    if out.is_sum() || out.is_prod() || out.is_list() || reg.tableau(&out).is_none() {
        return out;
    }
    let paths = index_paths(&out, reg);
    let group = slot_group(reg, &out, paths.len());
    let key = |n: &Node| -> Vec<(usize, String)> {
        paths
            .iter()
            .map(|p| {
                let name = &n.at(p).name;
                (reg.index_set_position(name).unwrap_or(usize::MAX), name.to_string())
            })
            .collect()
    };
    let mut best: Option<(Vec<(usize, String)>, Node, i32)> = None;
    let mut vanishes = false;
    for (perm, s) in &group.elements {
        let img = permute_slots(&out, &paths, perm);
        let k = key(&img);
        match &best {
            Some((bk, _, bs)) if *bk == k => {
                if *bs != *s {
                    vanishes = true;
                }
            }
            Some((bk, _, _)) if *bk < k => {}
            _ => best = Some((k, img, *s)),
        }
    }
    let (_, mut img, s) = best.unwrap();
    if vanishes {
        // symmetric and antisymmetric under the same exchange
        let mut z = Node::zero();
        z.rel = out.rel;
        return z;
    }
    img.multiplier = &out.multiplier * &Rational::from_int(s as i64);
    img
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;
    use crate::symmetry::canon::tests::registry;

    #[test]
    fn signed_transposition() {
        let reg = registry(&["{\\epsilon, \\lambda}::SortOrder.", "{\\epsilon, \\lambda}::AntiCommuting."]);
        assert_eq!(prodsort(&parse("\\lambda \\epsilon").unwrap(), &reg).to_string(), "-\\epsilon \\lambda");
        assert_eq!(prodsort(&parse("b a").unwrap(), &reg).to_string(), "a b");
    }

    #[test]
    fn noncommuting_blocks() {
        let reg = registry(&["{\\lambda, \\gamma_{#}}::NonCommuting."]);
        assert_eq!(prodsort(&parse("\\lambda \\gamma_{a}").unwrap(), &reg).to_string(), "\\lambda \\gamma_{a}");
    }

    #[test]
    fn index_sorting() {
        let reg = registry(&["{m,n,p}::Indices(vector).", "T_{a b}::Symmetric.", "F_{a b}::AntiSymmetric."]);
        let s = |x: &str| indexsort(&parse(x).unwrap(), &reg).to_string();
        assert_eq!(s("T_{n m}"), "T_{m n}");
        assert_eq!(s("F_{n m}"), "-F_{m n}");
        assert_eq!(s("F_{m m}"), "0");
        assert_eq!(s("G_{n m}"), "G_{n m}");
    }
}
