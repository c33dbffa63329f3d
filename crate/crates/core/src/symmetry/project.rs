//! Young projection of tensor monomials.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::algorithms::collect::collect_flat;
use crate::error::{Error, Result};
use crate::expr::{index_paths, Node};
use crate::notation::print_tex;
use crate::properties::Registry;
use crate::rational::Rational;

use super::canon::{canonicalise_term, permute_slots, CanonOptions};

const FIXED_NAMES: CanonOptions = CanonOptions { rename_dummies: false };

/// Projector image of one factor, collected under its mono-term symmetries
/// with index names held fixed. With `strict` off, factors without a
/// tableau are left as they are.
pub fn project_factor(f: &Node, reg: &Registry, strict: bool) -> Result<Vec<(Node, Rational)>> {
    let unit = f.unit();
    let paths = index_paths(&unit, reg);
    if paths.is_empty() {
        return Ok(vec![(unit, Rational::one())]);
    }
    let t = match reg.tableau(&unit) {
        Some(t) => t,
        None if strict => return Err(Error::NoTableau(print_tex(&unit))),
        None => return Ok(vec![(unit, Rational::one())]),
    };
    let full = t.cell_count() == paths.len();
    if full && (t.is_single_row() || t.is_single_column()) {
        let c = canonicalise_term(&unit, reg, FIXED_NAMES)?;
        if c.is_zero() {
            return Ok(Vec::new());
        }
        let m = c.multiplier.clone();
        return Ok(vec![(c.unit(), m)]);
    }
    let mut images = Vec::new();
    for (perm, w) in &t.projector(paths.len()).terms {
        let mut img = permute_slots(&unit, &paths, perm);
        img.multiplier = w.clone();
        images.push(canonicalise_term(&img, reg, FIXED_NAMES)?);
    }
    let collected = collect_flat(images);
    Ok(collected
        .into_terms()
        .into_iter()
        .filter(|t| !t.is_zero())
        .map(|t| {
            let m = t.multiplier.clone();
            (t.unit(), m)
        })
        .collect())
}

/// Projects every factor of a single term, expands, canonicalises and
/// collects.
pub fn young_project_term(term: &Node, reg: &Registry) -> Result<Node> {
    project_term(term, reg, true)
}

fn project_term(term: &Node, reg: &Registry, strict: bool) -> Result<Node> {
    if term.is_number() || term.is_zero() {
        return Ok(term.clone());
    }
    let mut per_factor: Vec<Vec<(Node, Rational)>> = Vec::new();
    let mut cache: HashMap<Node, Vec<(Node, Rational)>> = HashMap::new();
    for f in term.factors() {
        let key = f.unit();
        let images = match cache.get(&key) {
            Some(v) => v.clone(),
            None => {
                let v = project_factor(&key, reg, strict)?;
                cache.insert(key, v.clone());
                v
            }
        };
        if images.is_empty() {
            return Ok(Node::zero());
        }
        per_factor.push(images);
    }
    let mut combos: Vec<(Vec<Node>, Rational)> = vec![(Vec::new(), term.multiplier.clone())];
    for images in &per_factor {
        let mut next = Vec::with_capacity(combos.len() * images.len());
        for (fs, w) in &combos {
            for (img, wi) in images {
                let mut fs = fs.clone();
                fs.push(img.clone());
                next.push((fs, w * wi));
            }
        }
        combos = next;
    }
    let terms: Vec<Node> = combos
        .into_par_iter()
        .map(|(mut fs, w)| {
            let mut t = if fs.len() == 1 { fs.pop().unwrap() } else { Node::prod(fs) };
            t.multiplier = w;
            canonicalise_term(&t, reg, CanonOptions::default())
        })
        .collect::<Result<_>>()?;
    Ok(collect_flat(terms))
}

/// Young projection of an expression, term by term.
pub fn young_project(e: &Node, reg: &Registry) -> Result<Node> {
    project_expr(e, reg, true)
}

fn project_expr(e: &Node, reg: &Registry, strict: bool) -> Result<Node> {
    if e.is_list() {
        let mut out = e.clone();
        out.children = e
            .children
            .iter()
            .map(|c| project_expr(c, reg, strict))
            .collect::<Result<_>>()?;
        return Ok(out);
    }
    let projected: Vec<Node> = e
        .terms()
        .par_iter()
        .map(|t| project_term(t, reg, strict))
        .collect::<Result<_>>()?;
    let mut all = Vec::new();
    for p in projected {
        all.extend(p.into_terms());
    }
    Ok(collect_flat(all))
}

/// Coordinates of the projected expression: canonical monomial text to
/// coefficient. Factors without a tableau count as having no symmetry.
pub fn projected_coordinates(e: &Node, reg: &Registry) -> Result<HashMap<String, Rational>> {
    let p = project_expr(e, reg, false)?;
    let mut out = HashMap::new();
    for t in p.into_terms() {
        if t.is_zero() {
            continue;
        }
        *out.entry(print_tex(&t.unit())).or_insert_with(Rational::zero) += &t.multiplier;
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;
    use crate::symmetry::canon::tests::registry;

    fn proj(reg: &Registry, s: &str) -> String {
        young_project(&parse(s).unwrap(), reg).unwrap().to_string()
    }

    #[test]
    fn riemann_projection() {
        let reg = registry(&["R_{m n p q}::RiemannTensor."]);
        assert_eq!(
            proj(&reg, "R_{a b c d}"),
            "2/3 R_{a b c d} + 1/3 R_{a c b d} - 1/3 R_{a d b c}"
        );
        assert_eq!(proj(&reg, "R_{m n p q} + R_{m p q n} + R_{m q n p}"), "0");
    }

    #[test]
    fn symmetric_and_antisymmetric() {
        let reg = registry(&["S_{a b}::Symmetric.", "F_{a b c}::AntiSymmetric."]);
        assert_eq!(proj(&reg, "S_{b a}"), "S_{a b}");
        assert_eq!(proj(&reg, "F_{c b a}"), "-F_{a b c}");
        assert_eq!(proj(&reg, "x"), "x");
    }

    #[test]
    fn missing_tableau_is_an_error() {
        let reg = registry(&[]);
        assert!(matches!(
            young_project(&parse("T_{a b}").unwrap(), &reg),
            Err(Error::NoTableau(_))
        ));
    }

    #[test]
    fn quadratic_riemann() {
        let reg = registry(&["{a,b,c,d,e,f}::Indices(vector).", "R_{m n p q}::RiemannTensor."]);
        let x = projected_coordinates(&parse("R_{a b c d} R_{a c b d}").unwrap(), &reg).unwrap();
        let y = projected_coordinates(&parse("R_{a b c d} R_{a b c d}").unwrap(), &reg).unwrap();
        assert_eq!(x.len(), 2);
        for (k, v) in &x {
            assert_eq!(&(v * &Rational::from_int(2)), &y[k]);
        }
    }
}
