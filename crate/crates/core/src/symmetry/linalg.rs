//! Exact linear algebra over the rationals.
//!
//! Elimination is fraction-free (Bareiss): rows are first scaled to integer
//! entries and each update divides exactly by the previous pivot, so the
//! entries stay integral minors of the input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

fn lcm_of_denominators(row: &[Rational]) -> BigInt {
    row.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()))
}

/// Scales a row so every entry is an integer.
fn integral(row: &[Rational]) -> Vec<Rational> {
    let l = Rational::from_bigint(lcm_of_denominators(row));
    row.iter().map(|x| x * &l).collect()
}

/// Row echelon form by Bareiss elimination. Returns the pivot columns; the
/// first `pivots.len()` rows of `a` are the nonzero echelon rows.
pub fn echelon(a: &mut [Vec<Rational>]) -> Vec<usize> {
    for row in a.iter_mut() {
        *row = integral(row);
    }
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = Rational::one();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let f = row[c].clone();
            for j in (c + 1)..n {
                let v = &(&piv * &row[j]) - &(&f * &pivot_row[j]);
                row[j] = &v / &prev;
            }
            row[c] = Rational::zero();
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut a = rows.to_vec();
    echelon(&mut a).len()
}

/// Solves `a x = b` for `a` given as rows. Free variables are set to zero.
/// `None` when the system is inconsistent.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = echelon(&mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate().rev() {
        let mut acc = aug[r][n].clone();
        for j in (c + 1)..n {
            if !aug[r][j].is_zero() {
                acc -= &(&aug[r][j] * &x[j]);
            }
        }
        x[c] = &acc / &aug[r][c];
    }
    Some(x)
}

/// A nonzero `x` with `a x = 0`, scaled to coprime integers with a
/// positive first entry; `None` when the columns are independent.
pub fn null_vector(a: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let n = a.first().map_or(0, Vec::len);
    let mut e = a.to_vec();
    let pivots = echelon(&mut e);
    let free = (0..n).find(|c| !pivots.contains(c))?;
    let mut x = vec![Rational::zero(); n];
    x[free] = Rational::one();
    for (r, &c) in pivots.iter().enumerate().rev() {
        let mut acc = Rational::zero();
        for j in (c + 1)..n {
            if !e[r][j].is_zero() {
                acc -= &(&e[r][j] * &x[j]);
            }
        }
        x[c] = &acc / &e[r][c];
    }
    Some(primitive(x))
}

fn primitive(x: Vec<Rational>) -> Vec<Rational> {
    let x = integral(&x);
    let g = x
        .iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(&v.numer()));
    let first_negative = x.iter().find(|v| !v.is_zero()).is_some_and(|v| v.numer().is_negative());
    let mut g = Rational::from_bigint(g);
    if first_negative {
        g = -g;
    }
    x.iter().map(|v| v / &g).collect()
}

/// Incrementally grown set of independent vectors in reduced form.
#[derive(Clone, Debug, Default)]
pub struct Span {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Span {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the vectors already present.
    pub fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        for (p, row) in &self.rows {
            if *p < v.len() && !v[*p].is_zero() {
                let f = &v[*p] / &row[*p];
                for (j, rj) in row.iter().enumerate() {
                    if j >= v.len() {
                        v.resize(j + 1, Rational::zero());
                    }
                    if !rj.is_zero() {
                        v[j] -= &(&f * rj);
                    }
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, v));
                true
            }
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn rank_and_solve() {
        let a = vec![q(&[1, 2]), q(&[2, 4]), q(&[0, 1])];
        assert_eq!(rank(&a), 2);
        let x = solve(&a, &q(&[3, 6, 1])).unwrap();
        assert_eq!(x, q(&[1, 1]));
        assert!(solve(&a, &q(&[3, 7, 1])).is_none());
    }

    #[test]
    fn fractional_solution() {
        let a = vec![q(&[4, 0]), q(&[0, 3])];
        let x = solve(&a, &q(&[1, 1])).unwrap();
        assert_eq!(x, vec![Rational::new(1, 4), Rational::new(1, 3)]);
    }

    #[test]
    fn null_vector_certificate() {
        // columns (1,1) and (2,2)
        let a = vec![q(&[1, 2]), q(&[1, 2])];
        assert_eq!(null_vector(&a).unwrap(), q(&[2, -1]));
        assert!(null_vector(&[q(&[1, 0]), q(&[0, 1])]).is_none());
    }

    #[test]
    fn span_detects_dependence() {
        let mut s = Span::new();
        assert!(s.insert(q(&[1, 1, 0])));
        assert!(s.insert(q(&[0, 1, 1])));
        assert!(!s.insert(q(&[1, 2, 1])));
        assert!(s.insert(q(&[0, 0, 1, 5])));
        assert_eq!(s.dim(), 3);
    }
}
