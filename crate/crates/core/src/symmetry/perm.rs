//! Slot permutations and finite groups of signed slot permutations.

use std::collections::HashMap;

/// A permutation of tensor slots. Applying it to a slot sequence `t`
/// yields `t'[i] = t[p[i]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Perm::identity(n);
        p.0.swap(a, b);
        p
    }

    pub fn apply<T: Clone>(&self, slots: &[T]) -> Vec<T> {
        self.0.iter().map(|&i| slots[i].clone()).collect()
    }

    /// The permutation equivalent to applying `self` and then `then`.
    pub fn then(&self, then: &Perm) -> Perm {
        Perm(then.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Perm(inv)
    }

    /// +1 for even, -1 for odd permutations.
    pub fn parity(&self) -> i32 {
        let mut seen = vec![false; self.0.len()];
        let mut sign = 1;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(Perm(cur.clone()));
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// A group of slot permutations, each carrying the sign the tensor picks up.
#[derive(Clone, Debug)]
pub struct SignedGroup {
    pub elements: Vec<(Perm, i32)>,
}

impl SignedGroup {
    pub fn trivial(n: usize) -> Self {
        SignedGroup {
            elements: vec![(Perm::identity(n), 1)],
        }
    }

    /// Closure of the generators. Returns `None` when some permutation is
    /// reached with both signs, i.e. the object vanishes identically.
    pub fn generate(n: usize, generators: &[(Perm, i32)]) -> Option<Self> {
        let mut seen: HashMap<Perm, i32> = HashMap::new();
        let id = Perm::identity(n);
        seen.insert(id.clone(), 1);
        let mut order = vec![(id, 1)];
        let mut frontier = 0;
        while frontier < order.len() {
            let (g, s) = order[frontier].clone();
            frontier += 1;
            for (h, t) in generators {
                let k = g.then(h);
                let sk = s * t;
                match seen.get(&k) {
                    Some(&prev) if prev != sk => return None,
                    Some(_) => {}
                    None => {
                        seen.insert(k.clone(), sk);
                        order.push((k, sk));
                    }
                }
            }
        }
        Some(SignedGroup { elements: order })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_and_count() {
        let all = all_permutations(4);
        assert_eq!(all.len(), 24);
        assert_eq!(all.iter().filter(|p| p.parity() == 1).count(), 12);
        assert_eq!(Perm(vec![1, 0, 2]).parity(), -1);
        assert_eq!(Perm(vec![1, 2, 0]).parity(), 1);
    }

    #[test]
    fn then_composes_in_application_order() {
        let a = Perm(vec![1, 0, 2]);
        let b = Perm(vec![0, 2, 1]);
        let t = ["x", "y", "z"];
        let stepwise = b.apply(&a.apply(&t));
        assert_eq!(a.then(&b).apply(&t), stepwise);
        assert!(a.then(&a.inverse()).is_identity());
    }

    #[test]
    fn riemann_monoterm_group_has_eight_elements() {
        let gens = [
            (Perm(vec![1, 0, 2, 3]), -1),
            (Perm(vec![0, 1, 3, 2]), -1),
            (Perm(vec![2, 3, 0, 1]), 1),
        ];
        assert_eq!(SignedGroup::generate(4, &gens).unwrap().order(), 8);
    }

    #[test]
    fn inconsistent_signs_detected() {
        let gens = [(Perm(vec![1, 0]), -1), (Perm(vec![1, 0]), 1)];
        assert!(SignedGroup::generate(2, &gens).is_none());
    }
}
