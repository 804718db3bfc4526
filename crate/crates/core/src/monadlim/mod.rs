//! Degree-truncated model of the free Hopf monad `T` on `C(P,Q)`.
//!
//! `T_{≤d}(X)` is the quotient of `⊕_{|w|≤d} F_w(X)` by the images of the
//! four parallel pairs, whiskered by every outer word.

mod augment;
mod compare;
mod maps;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use augment::{
    augmentation, augmentation_check, augmentation_check_with, centrality_report, CentralStructure, FlipBraiding,
    ScaledBraiding,
};
pub use compare::{compare_with_hopf, hopf_filtration_dim};
pub use maps::{apply_functor, counit_action, counit_report, structure_maps, MuMap, StructureMaps};

use crate::error::{Error, Result};
use crate::exactnum::{EchelonBasis, ExactMatrix, Scalar, SparseVec};
use crate::pivpair::PivotalPair;

/// A word in `{+, −}`; `true` is `+`. The first letter is the outermost functor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignWord(pub Vec<bool>);

impl SignWord {
    pub fn empty() -> Self {
        SignWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &SignWord) -> SignWord {
        SignWord(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn parse(s: &str) -> Result<SignWord> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(true),
                '-' | '−' => Ok(false),
                _ => Err(Error::Parse(format!("bad sign letter {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignWord)
    }

    /// Every word of length at most `d`, by length and then with `+` before `−`.
    pub fn all_up_to(d: usize) -> Vec<SignWord> {
        let mut out = vec![SignWord::empty()];
        let mut layer = vec![SignWord::empty()];
        for _ in 0..d {
            layer = layer
                .iter()
                .flat_map(|w| {
                    [true, false].map(|s| {
                        let mut v = w.0.clone();
                        v.push(s);
                        SignWord(v)
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }
}

impl fmt::Display for SignWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        for &s in &self.0 {
            write!(f, "{}", if s { '+' } else { '-' })?;
        }
        Ok(())
    }
}

/// Which of the four parallel pairs an instance comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    /// `P⊗Q⊗F_w ⇉`: `F_w ⊗ cvl` into `−+w`, `evr ⊗ F_w` into `w`.
    PqLeft,
    /// `F_w⊗Q⊗P ⇉`: `cvr ⊗ F_w` into `+−w`, `F_w ⊗ evl` into `w`.
    QpRight,
    /// `Q⊗P⊗F_w ⇉`: `F_w ⊗ cvr` into `+−w`, `evl ⊗ F_w` into `w`.
    QpLeft,
    /// `F_w⊗P⊗Q ⇉`: `cvl ⊗ F_w` into `−+w`, `F_w ⊗ evr` into `w`.
    PqRight,
}

const FAMILIES: [Family; 4] = [Family::PqLeft, Family::QpRight, Family::QpLeft, Family::PqRight];

/// Nonzero entries of each column.
fn sparse_columns(m: &ExactMatrix) -> Vec<Vec<(usize, Scalar)>> {
    (0..m.cols())
        .map(|j| {
            (0..m.rows())
                .filter(|&i| !m.get(i, j).is_zero())
                .map(|i| (i, m.get(i, j).clone()))
                .collect()
        })
        .collect()
}

/// `T_{≤d}(X)` as an explicit quotient space.
#[derive(Clone, Debug)]
pub struct TruncatedT {
    pair: Arc<PivotalPair>,
    n: usize,
    dim_x: usize,
    degree: usize,
    words: Vec<SignWord>,
    offsets: Vec<usize>,
    word_index: HashMap<SignWord, usize>,
    total: usize,
    relations: EchelonBasis,
    instances: usize,
    complement: Vec<usize>,
    position: HashMap<usize, usize>,
}

/// Build the truncation with every relation instance whose longer leg has length `≤ d`.
pub fn truncate(pair: &Arc<PivotalPair>, dim_x: usize, d: usize) -> Result<TruncatedT> {
    let n = pair.dim_p();
    if pair.dim_q() != n {
        return Err(Error::ShapeMismatch("the monad needs dim P = dim Q".into()));
    }
    let words = SignWord::all_up_to(d);
    let mut offsets = Vec::with_capacity(words.len());
    let mut total = 0;
    for w in &words {
        offsets.push(total);
        total += n.pow(2 * w.len() as u32) * dim_x;
    }
    let word_index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    let mut t = TruncatedT {
        pair: pair.clone(),
        n,
        dim_x,
        degree: d,
        words,
        offsets,
        word_index,
        total,
        relations: EchelonBasis::new(total),
        instances: 0,
        complement: Vec::new(),
        position: HashMap::new(),
    };
    t.build_relations();
    t.complement = t.relations.complement();
    t.position = t.complement.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    Ok(t)
}

impl TruncatedT {
    pub fn pair(&self) -> &Arc<PivotalPair> {
        &self.pair
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim_x(&self) -> usize {
        self.dim_x
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn words(&self) -> &[SignWord] {
        &self.words
    }

    /// Dimension of `F_w(X)` for a word of length `len`.
    pub fn block_dim(&self, len: usize) -> usize {
        self.n.pow(2 * len as u32) * self.dim_x
    }

    pub fn block_offset(&self, w: &SignWord) -> Option<usize> {
        self.word_index.get(w).map(|&i| self.offsets[i])
    }

    /// Dimension of `⊕_{|w|≤d} F_w(X)`.
    pub fn total_dim(&self) -> usize {
        self.total
    }

    pub fn relation_rank(&self) -> usize {
        self.relations.rank()
    }

    pub fn relation_instances(&self) -> usize {
        self.instances
    }

    /// Dimension of the quotient `T_{≤d}(X)`.
    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Carrier coordinates representing the quotient basis.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    /// A spanning set of the relation subspace.
    pub fn relation_vectors(&self) -> impl Iterator<Item = &SparseVec> + '_ {
        self.relations.rows()
    }

    /// `(dims per word, quotient dim)` summary rows.
    pub fn block_table(&self) -> Vec<(String, usize)> {
        self.words
            .iter()
            .map(|w| (w.to_string(), self.block_dim(w.len())))
            .collect()
    }

    /// Project a carrier vector to quotient coordinates.
    pub fn project(&self, v: SparseVec) -> SparseVec {
        self.relations
            .reduce(v)
            .into_iter()
            .map(|(k, s)| (self.position[&k], s))
            .collect()
    }

    /// The projection `⊕F_w(X) → T_{≤d}(X)` as a dense matrix.
    pub fn projection(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.dim(), self.total);
        for j in 0..self.total {
            for (i, s) in self.project([(j, Scalar::one())].into_iter().collect()) {
                m.set(i, j, s);
            }
        }
        m
    }

    /// Project the columns of a map into the carrier, given as sparse columns.
    pub fn project_columns(&self, cols: Vec<SparseVec>) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.dim(), cols.len());
        for (j, v) in cols.into_iter().enumerate() {
            for (i, s) in self.project(v) {
                m.set(i, j, s);
            }
        }
        m
    }

    /// Word and local index of a carrier coordinate.
    pub fn locate(&self, c: usize) -> (&SignWord, usize) {
        let i = self.offsets.partition_point(|&o| o <= c) - 1;
        (&self.words[i], c - self.offsets[i])
    }

    fn leg_matrices(&self, fam: Family, inner: usize) -> (ExactMatrix, ExactMatrix) {
        let p = &self.pair;
        let i = ExactMatrix::identity(inner);
        match fam {
            Family::PqLeft => (
                ExactMatrix::kron_all(&[&ExactMatrix::identity(self.n * self.n), &i, &p.cvl]),
                ExactMatrix::kron_all(&[&p.evr, &i]),
            ),
            Family::QpRight => (
                ExactMatrix::kron_all(&[&p.cvr, &i, &ExactMatrix::identity(self.n * self.n)]),
                ExactMatrix::kron_all(&[&i, &p.evl]),
            ),
            Family::QpLeft => (
                ExactMatrix::kron_all(&[&ExactMatrix::identity(self.n * self.n), &i, &p.cvr]),
                ExactMatrix::kron_all(&[&p.evl, &i]),
            ),
            Family::PqRight => (
                ExactMatrix::kron_all(&[&p.cvl, &i, &ExactMatrix::identity(self.n * self.n)]),
                ExactMatrix::kron_all(&[&i, &p.evr]),
            ),
        }
    }

    fn build_relations(&mut self) {
        let d = self.degree;
        if d < 2 {
            return;
        }
        let words = self.words.clone();
        for fam in FAMILIES {
            let mid = match fam {
                Family::PqLeft | Family::PqRight => SignWord(vec![false, true]),
                Family::QpRight | Family::QpLeft => SignWord(vec![true, false]),
            };
            for w in words.iter().filter(|w| w.len() + 2 <= d) {
                let inner = self.block_dim(w.len());
                let (l1, l2) = self.leg_matrices(fam, inner);
                let (c1, c2) = (sparse_columns(&l1), sparse_columns(&l2));
                for v in words.iter().filter(|v| v.len() + w.len() + 2 <= d) {
                    let a = self.n.pow(v.len() as u32);
                    let long = self.block_offset(&v.concat(&mid).concat(w)).expect("long word");
                    let short = self.block_offset(&v.concat(w)).expect("short word");
                    let (r1, r2) = (l1.rows(), l2.rows());
                    for al in 0..a {
                        for s0 in 0..l1.cols() {
                            for ar in 0..a {
                                let mut vec = SparseVec::new();
                                for (t, c) in &c1[s0] {
                                    vec.insert(long + (al * r1 + t) * a + ar, c.clone());
                                }
                                for (t, c) in &c2[s0] {
                                    let k = short + (al * r2 + t) * a + ar;
                                    let e = vec.entry(k).or_insert_with(Scalar::zero);
                                    *e -= c;
                                }
                                self.relations.insert(vec);
                                self.instances += 1;
                            }
                        }
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::random_invertible;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pair(q: ExactMatrix) -> Arc<PivotalPair> {
        Arc::new(PivotalPair::from_matrix(q.rows(), &q).unwrap())
    }

    #[test]
    fn word_order() {
        let ws: Vec<String> = SignWord::all_up_to(2).iter().map(|w| w.to_string()).collect();
        assert_eq!(ws, ["∅", "+", "-", "++", "+-", "-+", "--"]);
        assert_eq!(SignWord::parse("+-").unwrap(), SignWord(vec![true, false]));
    }

    #[test]
    fn laurent_dimensions() {
        for q in [1, 3] {
            let pp = pair(ExactMatrix::diagonal(&[Scalar::from_i64(q)]));
            for dx in 1..=2 {
                for d in 0..=4 {
                    let t = truncate(&pp, dx, d).unwrap();
                    assert_eq!(t.dim(), dx * (2 * d + 1), "q={q} dimX={dx} d={d}");
                }
            }
        }
    }

    #[test]
    fn matrix_dimensions_and_monotonicity() {
        let pp = pair(ExactMatrix::identity(2));
        let dims: Vec<usize> = (0..=2).map(|d| truncate(&pp, 1, d).unwrap().dim()).collect();
        assert_eq!(dims, vec![1, 9, 59]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pq = pair(random_invertible(&mut rng, 2, 3, 2));
        let t1 = truncate(&pq, 1, 2).unwrap();
        let t2 = truncate(&pq, 2, 2).unwrap();
        assert_eq!(t2.dim(), 2 * t1.dim());
    }

    #[test]
    fn projection_splits_section() {
        let pp = pair(ExactMatrix::identity(1));
        let t = truncate(&pp, 1, 2).unwrap();
        let pi = t.projection();
        for (i, &c) in t.complement().iter().enumerate() {
            assert_eq!(pi.column(c), ExactMatrix::unit_column(t.dim(), i));
        }
        for r in t.relation_vectors() {
            assert!(t.project(r.clone()).is_empty());
        }
        assert_eq!(t.locate(3), (&SignWord::parse("++").unwrap(), 0));
    }
}
