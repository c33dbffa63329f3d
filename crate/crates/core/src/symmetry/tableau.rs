//! Young tableaux filled with tensor slot positions, and their projectors.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::rational::Rational;

use super::perm::{all_permutations, Perm, SignedGroup};

/// A Young tableau whose cells hold slot positions (0-based). Rows are
/// listed top to bottom and must have weakly decreasing lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct YoungTableau {
    pub rows: Vec<Vec<usize>>,
}

/// A formal linear combination of slot permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotPermutationSum {
    pub terms: Vec<(Perm, Rational)>,
}

impl YoungTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, Error> {
        let t = YoungTableau { rows };
        t.validate()?;
        Ok(t)
    }

    /// Builds a tableau from a shape and a row-major filling.
    pub fn from_shape(shape: &[usize], filling: &[usize]) -> Result<Self, Error> {
        if shape.iter().sum::<usize>() != filling.len() {
            return Err(Error::InvalidTableau(format!(
                "shape {shape:?} has {} cells but {} slots were given",
                shape.iter().sum::<usize>(),
                filling.len()
            )));
        }
        let mut rows = Vec::new();
        let mut it = filling.iter().copied();
        for &len in shape {
            rows.push(it.by_ref().take(len).collect());
        }
        YoungTableau::new(rows)
    }

    /// One row over the given slots: total symmetry.
    pub fn symmetric(slots: impl IntoIterator<Item = usize>) -> Self {
        YoungTableau {
            rows: vec![slots.into_iter().collect()],
        }
    }

    /// One column over the given slots: total antisymmetry.
    pub fn antisymmetric(slots: impl IntoIterator<Item = usize>) -> Self {
        YoungTableau {
            rows: slots.into_iter().map(|s| vec![s]).collect(),
        }
    }

    /// The Riemann-type tableau: columns (0,1) and (2,3), rows (0,2) and (1,3).
    pub fn riemann() -> Self {
        YoungTableau {
            rows: vec![vec![0, 2], vec![1, 3]],
        }
    }

    fn validate(&self) -> Result<(), Error> {
        if self.rows.iter().any(Vec::is_empty) {
            return Err(Error::InvalidTableau("empty row".into()));
        }
        if self.rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::InvalidTableau(
                "row lengths must be weakly decreasing".into(),
            ));
        }
        let mut seen = std::collections::HashSet::new();
        for &s in self.rows.iter().flatten() {
            if !seen.insert(s) {
                return Err(Error::InvalidTableau(format!("slot {s} used twice")));
            }
        }
        Ok(())
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn cell_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn max_slot(&self) -> Option<usize> {
        self.rows.iter().flatten().copied().max()
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width)
            .map(|c| {
                self.rows
                    .iter()
                    .take_while(|r| r.len() > c)
                    .map(|r| r[c])
                    .collect()
            })
            .collect()
    }

    pub fn is_single_row(&self) -> bool {
        self.rows.len() == 1
    }

    pub fn is_single_column(&self) -> bool {
        self.rows.iter().all(|r| r.len() == 1)
    }

    /// Product of hook lengths; the projector normalization is its inverse.
    pub fn hook_product(&self) -> u64 {
        let shape = self.shape();
        let mut prod = 1u64;
        for (r, &len) in shape.iter().enumerate() {
            for c in 0..len {
                let arm = len - c - 1;
                let leg = shape[r + 1..].iter().take_while(|&&l| l > c).count();
                prod *= (arm + leg + 1) as u64;
            }
        }
        prod
    }

    /// Mono-term symmetries: antisymmetry inside each column and exchange of
    /// columns of equal length.
    pub fn monoterm_generators(&self, n_slots: usize) -> Vec<(Perm, i32)> {
        let mut gens = Vec::new();
        let cols = self.columns();
        for col in &cols {
            for w in col.windows(2) {
                gens.push((Perm::transposition(n_slots, w[0], w[1]), -1));
            }
        }
        for w in cols.windows(2) {
            if w[0].len() == w[1].len() {
                let mut p = Perm::identity(n_slots);
                for (&a, &b) in w[0].iter().zip(&w[1]) {
                    p.0.swap(a, b);
                }
                gens.push((p, 1));
            }
        }
        gens
    }

    pub fn monoterm_group(&self, n_slots: usize) -> SignedGroup {
        SignedGroup::generate(n_slots, &self.monoterm_generators(n_slots))
            .expect("tableau mono-term generators are consistent")
    }

    /// The Young projector acting on `n_slots` slots: antisymmetrize the
    /// columns, then symmetrize the rows, divided by the hook product so the
    /// operator is idempotent.
    pub fn projector(&self, n_slots: usize) -> SlotPermutationSum {
        let rows = subset_group(n_slots, &self.rows, false);
        let cols = subset_group(n_slots, &self.columns(), true);
        let norm = Rational::new(1, self.hook_product() as i64);
        let mut acc: BTreeMap<Perm, Rational> = BTreeMap::new();
        for (q, sq) in &cols {
            for (p, _) in &rows {
                let r = q.then(p);
                *acc.entry(r).or_default() += &(&norm * &Rational::from_int(*sq as i64));
            }
        }
        SlotPermutationSum {
            terms: acc.into_iter().filter(|(_, w)| !w.is_zero()).collect(),
        }
    }
}

/// Direct product of the full permutation groups of each block, with the
/// permutation parity as sign when `signed`.
fn subset_group(n: usize, blocks: &[Vec<usize>], signed: bool) -> Vec<(Perm, i32)> {
    let mut out = vec![(Perm::identity(n), 1)];
    for block in blocks {
        if block.len() < 2 {
            continue;
        }
        let local = all_permutations(block.len());
        let mut next = Vec::with_capacity(out.len() * local.len());
        for (g, s) in &out {
            for lp in &local {
                let mut p = Perm::identity(n);
                for (i, &j) in lp.0.iter().enumerate() {
                    p.0[block[i]] = block[j];
                }
                let sign = if signed { s * lp.parity() } else { *s };
                next.push((g.then(&p), sign));
            }
        }
        out = next;
    }
    out
}

impl SlotPermutationSum {
    /// Composition `self` followed by `other`, collected.
    pub fn then(&self, other: &SlotPermutationSum) -> SlotPermutationSum {
        let mut acc: BTreeMap<Perm, Rational> = BTreeMap::new();
        for (a, wa) in &self.terms {
            for (b, wb) in &other.terms {
                *acc.entry(a.then(b)).or_default() += &(wa * wb);
            }
        }
        SlotPermutationSum {
            terms: acc.into_iter().filter(|(_, w)| !w.is_zero()).collect(),
        }
    }
}
