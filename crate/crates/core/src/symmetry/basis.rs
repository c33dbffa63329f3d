//! Bases of tensor monomials: enumeration of contractions, decomposition
//! on a basis and elimination of dependent terms in a sum.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::expr::{index_paths, Node};
use crate::index::IndexSet;
use crate::notation::print_tex;
use crate::properties::Registry;
use crate::rational::Rational;

use super::canon::{canonicalise_term, CanonOptions};
use super::linalg::{null_vector, solve, Span};
use super::project::projected_coordinates;

/// Monomials together with the coordinates of their Young projections.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    pub elements: Vec<Node>,
    /// Canonical projected monomials labelling the columns.
    pub keys: Vec<String>,
    /// One row per element.
    pub projected_matrix: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientVector {
    pub coefficients: Vec<Rational>,
}

impl CoefficientVector {
    pub fn to_node(&self) -> Node {
        Node::list(self.coefficients.iter().cloned().map(Node::number).collect())
    }
}

fn coordinates(rows: &[HashMap<String, Rational>]) -> (Vec<String>, Vec<Vec<Rational>>) {
    let keys: Vec<String> = rows
        .iter()
        .flat_map(|r| r.keys().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let col: HashMap<&str, usize> = keys.iter().enumerate().map(|(i, k)| (k.as_str(), i)).collect();
    let matrix = rows
        .iter()
        .map(|r| {
            let mut v = vec![Rational::zero(); keys.len()];
            for (k, x) in r {
                v[col[k.as_str()]] = x.clone();
            }
            v
        })
        .collect();
    (keys, matrix)
}

fn transpose(rows: &[Vec<Rational>], width: usize) -> Vec<Vec<Rational>> {
    (0..width)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn build_basis(monomials: &[Node], reg: &Registry) -> Result<MonomialBasis> {
    let coords: Vec<HashMap<String, Rational>> = monomials
        .par_iter()
        .map(|m| projected_coordinates(m, reg))
        .collect::<Result<_>>()?;
    let (keys, matrix) = coordinates(&coords);
    let columns = transpose(&matrix, keys.len());
    let dependent = if monomials.is_empty() {
        None
    } else if keys.is_empty() {
        Some(vec![Rational::one(); monomials.len()])
    } else {
        null_vector(&columns)
    };
    if let Some(cert) = dependent {
        return Err(Error::DependentBasis {
            certificate: cert.iter().map(Rational::to_string).collect(),
        });
    }
    Ok(MonomialBasis {
        elements: monomials.to_vec(),
        keys,
        projected_matrix: matrix,
    })
}

/// Coefficients `c` with `young_project(e) = sum c_i young_project(b_i)`.
pub fn decompose(e: &Node, basis: &MonomialBasis, reg: &Registry) -> Result<CoefficientVector> {
    let target = projected_coordinates(e, reg)?;
    let col: HashMap<&str, usize> = basis.keys.iter().enumerate().map(|(i, k)| (k.as_str(), i)).collect();
    let mut b = vec![Rational::zero(); basis.keys.len()];
    for (k, v) in target {
        match col.get(k.as_str()) {
            Some(&i) => b[i] = v,
            None => return Err(Error::NotInSpan),
        }
    }
    if basis.elements.is_empty() {
        return if b.iter().all(Rational::is_zero) {
            Ok(CoefficientVector { coefficients: Vec::new() })
        } else {
            Err(Error::NotInSpan)
        };
    }
    let a = transpose(&basis.projected_matrix, basis.keys.len());
    let x = solve(&a, &b).ok_or(Error::NotInSpan)?;
    Ok(CoefficientVector { coefficients: x })
}

/// Folds every term that is a linear combination of earlier kept terms
/// into their coefficients.
pub fn reduce_sum(e: &Node, reg: &Registry) -> Result<Node> {
    let terms = e.terms();
    let coords: Vec<HashMap<String, Rational>> = terms
        .par_iter()
        .map(|t| projected_coordinates(&t.unit(), reg))
        .collect::<Result<_>>()?;
    let mut kept: Vec<usize> = Vec::new();
    let mut coeff: Vec<Rational> = Vec::new();
    for (i, t) in terms.iter().enumerate() {
        if coords[i].is_empty() {
            continue;
        }
        let folded = if kept.is_empty() {
            None
        } else {
            let mut rows: Vec<HashMap<String, Rational>> = kept.iter().map(|&k| coords[k].clone()).collect();
            rows.push(coords[i].clone());
            let (keys, matrix) = coordinates(&rows);
            let target = matrix.last().unwrap().clone();
            let a = transpose(&matrix[..kept.len()], keys.len());
            solve(&a, &target)
        };
        match folded {
            Some(x) => {
                for (c, xi) in coeff.iter_mut().zip(&x) {
                    *c += &(xi * &t.multiplier);
                }
            }
            None => {
                kept.push(i);
                coeff.push(t.multiplier.clone());
            }
        }
    }
    let out: Vec<Node> = kept
        .iter()
        .zip(coeff)
        .filter(|(_, c)| !c.is_zero())
        .map(|(&k, c)| terms[k].unit().with_multiplier(c))
        .collect();
    Ok(crate::expr::normalize(Node::sum(out)))
}

/// Perfect matchings of `0..n` as lists of pairs.
fn pairings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        let a = rest.remove(0);
        for i in 0..rest.len() {
            let b = rest.remove(i);
            cur.push((a, b));
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, b);
        }
        rest.insert(0, a);
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

/// Order in which candidate contractions are offered to the independence
/// filter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ScanOrder {
    /// Ascending canonical text.
    Ascending,
    /// Descending canonical text.
    Descending,
    /// Order of first appearance while enumerating pairings.
    #[default]
    Enumeration,
    ReverseEnumeration,
}

/// All independent full contractions of a monomial whose indices are free.
pub fn all_contractions(monomial: &Node, reg: &Registry) -> Result<Vec<Node>> {
    all_contractions_ordered(monomial, reg, ScanOrder::default())
}

pub fn all_contractions_ordered(monomial: &Node, reg: &Registry, order: ScanOrder) -> Result<Vec<Node>> {
    let term = monomial.unit();
    let paths = index_paths(&term, reg);
    if paths.len() % 2 == 1 {
        return Err(Error::OddIndexCount(paths.len()));
    }
    let names: Vec<String> = fresh_names(&term, &paths, reg)?;
    let candidates: Vec<Node> = pairings(paths.len())
        .par_iter()
        .map(|pairing| {
            let mut t = term.clone();
            for (k, (a, b)) in pairing.iter().enumerate() {
                t.at_mut(&paths[*a]).name = names[k].as_str().into();
                t.at_mut(&paths[*b]).name = names[k].as_str().into();
            }
            canonicalise_term(&t, reg, CanonOptions::default())
        })
        .collect::<Result<_>>()?;
    let mut first_seen: Vec<(String, Node)> = Vec::new();
    let mut seen: HashMap<String, ()> = HashMap::new();
    for c in candidates {
        if c.is_zero() {
            continue;
        }
        let u = c.unit();
        let s = print_tex(&u);
        if seen.insert(s.clone(), ()).is_none() {
            first_seen.push((s, u));
        }
    }
    match order {
        ScanOrder::Ascending => first_seen.sort_by(|a, b| a.0.cmp(&b.0)),
        ScanOrder::Descending => first_seen.sort_by(|a, b| b.0.cmp(&a.0)),
        ScanOrder::Enumeration => {}
        ScanOrder::ReverseEnumeration => first_seen.reverse(),
    }
    let ordered: Vec<Node> = first_seen.into_iter().map(|(_, n)| n).collect();
    let coords: Vec<HashMap<String, Rational>> = ordered
        .par_iter()
        .map(|m| projected_coordinates(m, reg))
        .collect::<Result<_>>()?;
    let mut col: HashMap<String, usize> = HashMap::new();
    let mut span = Span::new();
    let mut out = Vec::new();
    for (m, c) in ordered.into_iter().zip(coords) {
        let mut v = Vec::new();
        let mut entries: Vec<(&String, &Rational)> = c.iter().collect();
        entries.sort();
        for (k, x) in entries {
            let next = col.len();
            let j = *col.entry(k.clone()).or_insert(next);
            if v.len() <= j {
                v.resize(j + 1, Rational::zero());
            }
            v[j] = x.clone();
        }
        if !v.is_empty() && span.insert(v) {
            out.push(m);
        }
    }
    Ok(out)
}

/// `k` distinct names for the contracted pairs, taken from the index set
/// of the monomial's first index.
fn fresh_names(term: &Node, paths: &[Vec<usize>], reg: &Registry) -> Result<Vec<String>> {
    let Some(first) = paths.first() else {
        return Ok(Vec::new());
    };
    let first_name = term.at(first).name.to_string();
    let set: IndexSet = match reg.index_set_of(&first_name) {
        Some(s) => s.clone(),
        None => {
            let mut s = IndexSet::new("anonymous");
            s.members = paths.iter().map(|p| term.at(p).name.to_string()).collect();
            s
        }
    };
    let mut used = std::collections::HashSet::new();
    let mut out = Vec::new();
    for _ in 0..paths.len() / 2 {
        let n = set.fresh(&used)?;
        used.insert(n.clone());
        out.push(n);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;
    use crate::symmetry::canon::tests::registry;

    fn riemann() -> Registry {
        registry(&["{a,b,c,d,e,f,m,n,p,q}::Indices(vector).", "R_{m n p q}::RiemannTensor."])
    }

    #[test]
    fn pairing_count() {
        assert_eq!(pairings(6).len(), 15);
        assert_eq!(pairings(12).len(), 10395);
    }

    #[test]
    fn quadratic_decomposition() {
        let reg = riemann();
        let b = build_basis(&[parse("R_{a b c d} R_{a c b d}").unwrap()], &reg).unwrap();
        let c = decompose(&parse("R_{a b c d} R_{a b c d}").unwrap(), &b, &reg).unwrap();
        assert_eq!(c.coefficients, vec![Rational::from_int(2)]);
    }

    #[test]
    fn dependent_basis_certificate() {
        let reg = riemann();
        let err = build_basis(
            &[parse("R_{a b c d} R_{a b c d}").unwrap(), parse("2 R_{a b c d} R_{a b c d}").unwrap()],
            &reg,
        )
        .unwrap_err();
        assert_eq!(err, Error::DependentBasis { certificate: vec!["2".into(), "-1".into()] });
    }

    #[test]
    fn minimal_forms() {
        let reg = riemann();
        let r = reduce_sum(&parse("2 R_{a b c d} + 2 R_{b c a d} + R_{c a b d}").unwrap(), &reg).unwrap();
        assert_eq!(r.to_string(), "R_{a b c d} + R_{b c a d}");
        let r = reduce_sum(&parse("R_{a b c d} R_{a c b d} + R_{a b c d} R_{a b c d}").unwrap(), &reg).unwrap();
        assert_eq!(r.to_string(), "3 R_{a b c d} R_{a c b d}");
    }

    #[test]
    fn simple_contractions() {
        let reg = registry(&["{m,n,p,q}::Indices(vector).", "S_{m n}::Symmetric."]);
        let c = all_contractions(&parse("T_{m} S_{n}").unwrap(), &reg).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].to_string(), "S_{m} T_{m}");
        let c = all_contractions(&parse("S_{m n} S_{p q}").unwrap(), &reg).unwrap();
        let mut s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
        s.sort();
        assert_eq!(s, ["S_{m m} S_{n n}", "S_{m n} S_{m n}"]);
    }

    #[test]
    fn odd_index_count() {
        let reg = riemann();
        assert_eq!(
            all_contractions(&parse("R_{a b c d} V_{e}").unwrap(), &reg).unwrap_err(),
            Error::OddIndexCount(5)
        );
    }
}
