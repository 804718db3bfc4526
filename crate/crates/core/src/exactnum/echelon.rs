use std::collections::BTreeMap;

use super::matrix::ExactMatrix;
use super::scalar::Scalar;

/// A sparse vector keyed by coordinate.
pub type SparseVec = BTreeMap<usize, Scalar>;

/// Incrementally built echelon basis of a subspace of `k^dim`.
///
/// Each stored row is monic at its largest nonzero coordinate, so pivots
/// land on the highest coordinates and the complement is spanned by the
/// lowest ones.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    dim: usize,
    rows: BTreeMap<usize, SparseVec>,
}

fn axpy(target: &mut SparseVec, factor: &Scalar, row: &SparseVec) {
    for (&k, v) in row {
        let delta = factor * v;
        let entry = target.entry(k).or_insert_with(Scalar::zero);
        *entry -= &delta;
        if entry.is_zero() {
            target.remove(&k);
        }
    }
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis {
            dim,
            rows: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.rows.contains_key(&c)
    }

    /// Coordinates not used as pivots, ascending.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.dim).filter(|c| !self.rows.contains_key(c)).collect()
    }

    /// Reduce `v` modulo the span; the result has no pivot coordinates.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        v.retain(|_, s| !s.is_zero());
        let mut bound = usize::MAX;
        loop {
            let next = v
                .range(..bound)
                .rev()
                .find(|(k, _)| self.rows.contains_key(k))
                .map(|(k, s)| (*k, s.clone()));
            let Some((k, factor)) = next else {
                return v;
            };
            axpy(&mut v, &factor, &self.rows[&k]);
            bound = k;
        }
    }

    /// Add `v` to the span. Returns true when the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&lead, lead_val)) = r.iter().next_back() else {
            return false;
        };
        let inv = lead_val.inverse().expect("nonzero lead");
        let row: SparseVec = r.iter().map(|(&k, s)| (k, s * &inv)).collect();
        self.rows.insert(lead, row);
        true
    }

    /// The stored basis rows, keyed by pivot.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> + '_ {
        self.rows.values()
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Insert every column of a dense matrix.
    pub fn insert_columns(&mut self, m: &ExactMatrix) {
        for j in 0..m.cols() {
            let v: SparseVec = (0..m.rows())
                .filter(|&i| !m.get(i, j).is_zero())
                .map(|i| (i, m.get(i, j).clone()))
                .collect();
            self.insert(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pivots_prefer_high_coordinates() {
        let mut b = EchelonBasis::new(3);
        b.insert([(0, Scalar::one()), (2, Scalar::from_i64(2))].into_iter().collect());
        assert_eq!(b.pivots().collect::<Vec<_>>(), vec![2]);
        assert_eq!(b.complement(), vec![0, 1]);
        let r = b.reduce([(2, Scalar::one())].into_iter().collect());
        assert_eq!(r.get(&0), Some(&Scalar::ratio(-1, 2)));
        assert!(!b.insert([(0, Scalar::from_i64(3)), (2, Scalar::from_i64(6))].into_iter().collect()));
    }
}
