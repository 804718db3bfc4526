use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::ExactMatrix;

/// A graded vector space as an ordered list of `(grade, multiplicity)` summands.
///
/// Summands are never merged, so the basis order of a tensor product is
/// summand-major: summand `(i, j)` of `A ⊗ B` sits at position `i * |B| + j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedSpace {
    pub summands: Vec<(usize, usize)>,
}

impl GradedSpace {
    pub fn new(summands: Vec<(usize, usize)>) -> Self {
        GradedSpace { summands }
    }

    pub fn dim(&self) -> usize {
        self.summands.iter().map(|s| s.1).sum()
    }

    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.summands
            .iter()
            .map(|s| {
                let o = acc;
                acc += s.1;
                o
            })
            .collect()
    }

    /// The grade of every basis vector, in order.
    pub fn basis_grades(&self) -> Vec<usize> {
        self.summands
            .iter()
            .flat_map(|&(g, m)| std::iter::repeat_n(g, m))
            .collect()
    }

    pub fn tensor(&self, other: &GradedSpace, mul: &[Vec<usize>]) -> GradedSpace {
        GradedSpace {
            summands: self
                .summands
                .iter()
                .flat_map(|&(g, m)| other.summands.iter().map(move |&(h, k)| (mul[g][h], m * k)))
                .collect(),
        }
    }
}

/// A grade-preserving linear map stored as blocks keyed by
/// `(source summand, target summand)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    source: GradedSpace,
    target: GradedSpace,
    blocks: BTreeMap<(usize, usize), ExactMatrix>,
}

impl GradedMatrix {
    pub fn zero(source: &GradedSpace, target: &GradedSpace) -> Self {
        GradedMatrix {
            source: source.clone(),
            target: target.clone(),
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(space: &GradedSpace) -> Self {
        let blocks = space
            .summands
            .iter()
            .enumerate()
            .map(|(i, s)| ((i, i), ExactMatrix::identity(s.1)))
            .collect();
        GradedMatrix {
            source: space.clone(),
            target: space.clone(),
            blocks,
        }
    }

    pub fn source(&self) -> &GradedSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedSpace {
        &self.target
    }

    pub fn blocks(&self) -> &BTreeMap<(usize, usize), ExactMatrix> {
        &self.blocks
    }

    /// Insert a block; fails unless both summands carry the same grade.
    pub fn set_block(&mut self, src: usize, tgt: usize, m: ExactMatrix) -> Result<()> {
        let (gs, ms) = self.source.summands[src];
        let (gt, mt) = self.target.summands[tgt];
        if m.shape() != (mt, ms) {
            return Err(Error::ShapeMismatch(format!("block ({src},{tgt}) must be {mt}x{ms}")));
        }
        if m.is_zero() {
            self.blocks.remove(&(src, tgt));
            return Ok(());
        }
        if gs != gt {
            return Err(Error::GradeMismatch(format!(
                "nonzero block from grade {gs} to grade {gt}"
            )));
        }
        self.blocks.insert((src, tgt), m);
        Ok(())
    }

    /// Split a dense matrix into blocks, rejecting entries between different grades.
    pub fn from_dense(source: &GradedSpace, target: &GradedSpace, dense: &ExactMatrix) -> Result<Self> {
        if dense.shape() != (target.dim(), source.dim()) {
            return Err(Error::ShapeMismatch(format!(
                "dense map is {}x{}, graded type needs {}x{}",
                dense.rows(),
                dense.cols(),
                target.dim(),
                source.dim()
            )));
        }
        let so = source.offsets();
        let to = target.offsets();
        let mut out = GradedMatrix::zero(source, target);
        for (i, &(_, ms)) in source.summands.iter().enumerate() {
            for (j, &(_, mt)) in target.summands.iter().enumerate() {
                let block = dense.submatrix(to[j]..to[j] + mt, so[i]..so[i] + ms);
                out.set_block(i, j, block)?;
            }
        }
        Ok(out)
    }

    pub fn to_dense(&self) -> ExactMatrix {
        let so = self.source.offsets();
        let to = self.target.offsets();
        let mut out = ExactMatrix::zeros(self.target.dim(), self.source.dim());
        for (&(i, j), b) in &self.blocks {
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    out.set(to[j] + r, so[i] + c, b.get(r, c).clone());
                }
            }
        }
        out
    }

    /// The same map viewed between spaces with the same basis order.
    pub fn reindex(&self, source: &GradedSpace, target: &GradedSpace) -> Result<Self> {
        if *source == self.source && *target == self.target {
            return Ok(self.clone());
        }
        GradedMatrix::from_dense(source, target, &self.to_dense())
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GradedMatrix) -> GradedMatrix {
        assert_eq!(inner.target.dim(), self.source.dim(), "graded composition shapes");
        let mut blocks: BTreeMap<(usize, usize), ExactMatrix> = BTreeMap::new();
        for (&(i, j), b) in &inner.blocks {
            for (&(j2, k), a) in self.blocks.range((j, 0)..=(j, usize::MAX)) {
                debug_assert_eq!(j, j2);
                let p = a * b;
                match blocks.get_mut(&(i, k)) {
                    Some(acc) => *acc = &*acc + &p,
                    None => {
                        blocks.insert((i, k), p);
                    }
                }
            }
        }
        blocks.retain(|_, m| !m.is_zero());
        GradedMatrix {
            source: inner.source.clone(),
            target: self.target.clone(),
            blocks,
        }
    }

    pub fn tensor(&self, other: &GradedMatrix, mul: &[Vec<usize>]) -> GradedMatrix {
        let nbs = other.source.summands.len();
        let nbt = other.target.summands.len();
        let mut blocks = BTreeMap::new();
        for (&(ia, ja), a) in &self.blocks {
            for (&(ib, jb), b) in &other.blocks {
                blocks.insert((ia * nbs + ib, ja * nbt + jb), a.kron(b));
            }
        }
        GradedMatrix {
            source: self.source.tensor(&other.source, mul),
            target: self.target.tensor(&other.target, mul),
            blocks,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.to_dense().is_identity()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(ExactMatrix::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> Vec<Vec<usize>> {
        vec![vec![0, 1], vec![1, 0]]
    }

    #[test]
    fn dense_round_trip_and_grade_check() {
        let s = GradedSpace::new(vec![(0, 1), (1, 2)]);
        let ok = ExactMatrix::from_i64(&[&[3, 0, 0], &[0, 1, 2], &[0, 4, 5]]);
        let g = GradedMatrix::from_dense(&s, &s, &ok).unwrap();
        assert_eq!(g.to_dense(), ok);
        let bad = ExactMatrix::from_i64(&[&[3, 1, 0], &[0, 1, 2], &[0, 4, 5]]);
        assert!(matches!(GradedMatrix::from_dense(&s, &s, &bad), Err(Error::GradeMismatch(_))));
    }

    #[test]
    fn tensor_shifts_grades() {
        let a = GradedSpace::new(vec![(1, 1)]);
        let b = GradedSpace::new(vec![(0, 2), (1, 1)]);
        let t = a.tensor(&b, &z2());
        assert_eq!(t.summands, vec![(1, 2), (0, 1)]);
    }

    #[test]
    fn compose_matches_dense() {
        let s = GradedSpace::new(vec![(0, 2), (1, 1), (0, 1)]);
        let a = ExactMatrix::from_i64(&[&[1, 2, 0, 3], &[0, 1, 0, 0], &[0, 0, 7, 0], &[1, 1, 0, 1]]);
        let b = ExactMatrix::from_i64(&[&[2, 0, 0, 1], &[1, 1, 0, 0], &[0, 0, -1, 0], &[0, 5, 0, 1]]);
        let ga = GradedMatrix::from_dense(&s, &s, &a).unwrap();
        let gb = GradedMatrix::from_dense(&s, &s, &b).unwrap();
        assert_eq!(ga.compose(&gb).to_dense(), &a * &b);
        let t = ga.tensor(&gb, &z2());
        assert_eq!(t.to_dense().nnz(), (ga.to_dense().kron(&gb.to_dense())).nnz());
    }
}
