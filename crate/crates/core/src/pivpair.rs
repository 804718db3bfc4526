//! Pivotal pairs: an object `P` with a left dual and a right dual realized on
//! the same object `Q`, together with transposes and pivotal morphisms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{ExactMatrix, Scalar};
use crate::report::Report;
use crate::sigterm::{DiagTerm, EvalAssignment, Interpretation, ObjectWord, Signature};

/// A pivotal pair `(P, Q)` in finite-dimensional vector spaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PairJson", into = "PairJson")]
pub struct PivotalPair {
    dim_p: usize,
    dim_q: usize,
    /// `1 → P⊗Q`
    pub cvl: ExactMatrix,
    /// `Q⊗P → 1`
    pub evl: ExactMatrix,
    /// `1 → Q⊗P`
    pub cvr: ExactMatrix,
    /// `P⊗Q → 1`
    pub evr: ExactMatrix,
}

#[derive(Serialize, Deserialize)]
struct PairJson {
    #[serde(rename = "dimP")]
    dim_p: usize,
    #[serde(rename = "dimQ", default)]
    dim_q: Option<usize>,
    cvl: ExactMatrix,
    evl: ExactMatrix,
    cvr: ExactMatrix,
    evr: ExactMatrix,
}

impl TryFrom<PairJson> for PivotalPair {
    type Error = Error;
    fn try_from(j: PairJson) -> Result<Self> {
        PivotalPair::new(j.dim_p, j.dim_q.unwrap_or(j.dim_p), j.cvl, j.evl, j.cvr, j.evr)
    }
}

impl From<PivotalPair> for PairJson {
    fn from(p: PivotalPair) -> Self {
        PairJson {
            dim_p: p.dim_p,
            dim_q: Some(p.dim_q),
            cvl: p.cvl,
            evl: p.evl,
            cvr: p.cvr,
            evr: p.evr,
        }
    }
}

fn id(n: usize) -> ExactMatrix {
    ExactMatrix::identity(n)
}

fn kron(fs: &[&ExactMatrix]) -> ExactMatrix {
    ExactMatrix::kron_all(fs)
}

fn expect_shape(name: &str, m: &ExactMatrix, shape: (usize, usize)) -> Result<()> {
    if m.shape() != shape {
        return Err(Error::ShapeMismatch(format!(
            "{name} is {}x{}, expected {}x{}",
            m.rows(),
            m.cols(),
            shape.0,
            shape.1
        )));
    }
    Ok(())
}

/// The signature of a pivotal pair and its four snake terms with their expected object.
pub fn snake_terms() -> (Signature, Vec<(&'static str, DiagTerm, ObjectWord)>) {
    let sig = Signature::new(&["P", "Q"])
        .with_morphism("cvl", &[], &["P", "Q"])
        .with_morphism("evl", &["Q", "P"], &[])
        .with_morphism("cvr", &[], &["Q", "P"])
        .with_morphism("evr", &["P", "Q"], &[]);
    let g = |n: &str| sig.gen(n).expect("declared generator");
    let snake = |outer: DiagTerm, inner: DiagTerm| DiagTerm::compose(outer, inner).expect("well typed snake");
    let terms = vec![
        (
            "left snake on Q",
            snake(
                DiagTerm::tensor(g("evl"), sig.id(&["Q"])),
                DiagTerm::tensor(sig.id(&["Q"]), g("cvl")),
            ),
            ObjectWord::single("Q"),
        ),
        (
            "left snake on P",
            snake(
                DiagTerm::tensor(sig.id(&["P"]), g("evl")),
                DiagTerm::tensor(g("cvl"), sig.id(&["P"])),
            ),
            ObjectWord::single("P"),
        ),
        (
            "right snake on P",
            snake(
                DiagTerm::tensor(g("evr"), sig.id(&["P"])),
                DiagTerm::tensor(sig.id(&["P"]), g("cvr")),
            ),
            ObjectWord::single("P"),
        ),
        (
            "right snake on Q",
            snake(
                DiagTerm::tensor(sig.id(&["Q"]), g("evr")),
                DiagTerm::tensor(g("cvr"), sig.id(&["Q"])),
            ),
            ObjectWord::single("Q"),
        ),
    ];
    (sig, terms)
}

impl PivotalPair {
    /// Assemble a pair from its four maps; only shapes are checked.
    pub fn new(
        dim_p: usize,
        dim_q: usize,
        cvl: ExactMatrix,
        evl: ExactMatrix,
        cvr: ExactMatrix,
        evr: ExactMatrix,
    ) -> Result<Self> {
        let pq = dim_p * dim_q;
        expect_shape("cvl", &cvl, (pq, 1))?;
        expect_shape("evl", &evl, (1, pq))?;
        expect_shape("cvr", &cvr, (pq, 1))?;
        expect_shape("evr", &evr, (1, pq))?;
        Ok(PivotalPair {
            dim_p,
            dim_q,
            cvl,
            evl,
            cvr,
            evr,
        })
    }

    /// The pair on `k^n` with standard left duality and right duality twisted by `q`.
    pub fn from_matrix(n: usize, q: &ExactMatrix) -> Result<Self> {
        expect_shape("Q", q, (n, n))?;
        let p = q.invert()?;
        let delta = ExactMatrix::from_fn(n * n, 1, |r, _| {
            if r / n == r % n {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let cvr = ExactMatrix::from_fn(n * n, 1, |r, _| q.get(r / n, r % n).clone());
        let evr = ExactMatrix::from_fn(1, n * n, |_, c| p.get(c / n, c % n).clone());
        PivotalPair::new(n, n, delta.clone(), delta.transpose(), cvr, evr)
    }

    /// The pair `(1, 1)` with every structure map `[[1]]`.
    pub fn unit() -> Self {
        PivotalPair::from_matrix(1, &id(1)).expect("unit pair")
    }

    /// Complete a left duality to a pivotal pair using the symmetric flip.
    pub fn from_braided(cvl: ExactMatrix, evl: ExactMatrix) -> Result<Self> {
        let n = cvl.rows();
        let dim = (1..=n).find(|d| d * d == n).ok_or_else(|| {
            Error::ShapeMismatch(format!("cvl has {n} rows, not a square dimension"))
        })?;
        expect_shape("evl", &evl, (1, n))?;
        let left_ok = (&kron(&[&evl, &id(dim)]) * &kron(&[&id(dim), &cvl])).is_identity()
            && (&kron(&[&id(dim), &evl]) * &kron(&[&cvl, &id(dim)])).is_identity();
        if !left_ok {
            return Err(Error::NotADuality("left snake identities fail".into()));
        }
        // Standard right dual P^v of P, with copairing Σ e_i⊗e_i in P^v⊗P.
        let std = PivotalPair::from_matrix(dim, &id(dim))?;
        let (cvr0, evr0) = (&std.cvr, &std.evr);
        let flip = ExactMatrix::swap(dim, dim);
        let flip_inv = flip.transpose();
        // lr : Q → P^v and rl : P^v → Q
        let lr = &kron(&[&id(dim), &(&evl * &flip)]) * &kron(&[cvr0, &id(dim)]);
        let rl = &kron(&[&id(dim), evr0]) * &kron(&[&(&flip_inv * &cvl), &id(dim)]);
        if !(&rl * &lr).is_identity() || !(&lr * &rl).is_identity() {
            return Err(Error::NotADuality("comparison maps are not inverse".into()));
        }
        let cvr = &kron(&[&rl, &id(dim)]) * cvr0;
        let evr = evr0 * &kron(&[&id(dim), &lr]);
        PivotalPair::new(dim, dim, cvl, evl, cvr, evr)
    }

    pub fn dim_p(&self) -> usize {
        self.dim_p
    }

    pub fn dim_q(&self) -> usize {
        self.dim_q
    }

    /// The assignment sending the snake signature to this pair.
    pub fn assignment(&self) -> EvalAssignment {
        EvalAssignment::new()
            .object("P", self.dim_p)
            .object("Q", self.dim_q)
            .morphism("cvl", self.cvl.clone())
            .morphism("evl", self.evl.clone())
            .morphism("cvr", self.cvr.clone())
            .morphism("evr", self.evr.clone())
    }

    /// Evaluate the four snake identities.
    pub fn check(&self) -> Report {
        let mut rep = Report::new("pivotal pair");
        let a = self.assignment();
        let (_, terms) = snake_terms();
        for (name, t, obj) in terms {
            match a.evaluate(&t) {
                Ok(m) => {
                    let d = a.word(&obj).expect("assigned object");
                    rep.equal(name, &m, &id(d));
                }
                Err(e) => {
                    rep.flag(name, false, Some(e.to_string()));
                }
            }
        }
        rep
    }

    /// The matrix `𝔔` when this pair has the standard left duality; `None` otherwise.
    pub fn q_matrix(&self) -> Option<ExactMatrix> {
        if self.dim_p != self.dim_q {
            return None;
        }
        let n = self.dim_p;
        let standard = PivotalPair::from_matrix(n, &id(n)).ok()?;
        if self.cvl != standard.cvl || self.evl != standard.evl {
            return None;
        }
        Some(ExactMatrix::from_fn(n, n, |i, j| self.cvr.get(i * n + j, 0).clone()))
    }
}

/// Free-function form of [`PivotalPair::check`].
pub fn check_pair(pp: &PivotalPair) -> Report {
    pp.check()
}

fn transpose_shapes(f: &ExactMatrix, pp1: &PivotalPair, pp2: &PivotalPair) -> Result<()> {
    expect_shape("f", f, (pp2.dim_p, pp1.dim_p))
}

/// `(evl₂⊗Q₁)(Q₂⊗f⊗Q₁)(Q₂⊗cvl₁) : Q₂ → Q₁`.
pub fn left_transpose(f: &ExactMatrix, pp1: &PivotalPair, pp2: &PivotalPair) -> Result<ExactMatrix> {
    transpose_shapes(f, pp1, pp2)?;
    let (q1, q2) = (id(pp1.dim_q), id(pp2.dim_q));
    Ok(&(&kron(&[&pp2.evl, &q1]) * &kron(&[&q2, f, &q1])) * &kron(&[&q2, &pp1.cvl]))
}

/// `(Q₁⊗evr₂)(Q₁⊗f⊗Q₂)(cvr₁⊗Q₂) : Q₂ → Q₁`.
pub fn right_transpose(f: &ExactMatrix, pp1: &PivotalPair, pp2: &PivotalPair) -> Result<ExactMatrix> {
    transpose_shapes(f, pp1, pp2)?;
    let (q1, q2) = (id(pp1.dim_q), id(pp2.dim_q));
    Ok(&(&kron(&[&q1, &pp2.evr]) * &kron(&[&q1, f, &q2])) * &kron(&[&pp1.cvr, &q2]))
}

/// Whether `f : P₁ → P₂` has equal left and right transposes.
pub fn is_pivotal_morphism(f: &ExactMatrix, pp1: &PivotalPair, pp2: &PivotalPair) -> Result<bool> {
    Ok(left_transpose(f, pp1, pp2)? == right_transpose(f, pp1, pp2)?)
}

/// `(P₁⊗P₂, Q₂⊗Q₁)` with nested duality maps.
pub fn tensor_pairs(pp1: &PivotalPair, pp2: &PivotalPair) -> PivotalPair {
    let (p1, q1) = (id(pp1.dim_p), id(pp1.dim_q));
    let (p2, q2) = (id(pp2.dim_p), id(pp2.dim_q));
    let cvl = &kron(&[&p1, &pp2.cvl, &q1]) * &pp1.cvl;
    let evl = &pp2.evl * &kron(&[&q2, &pp1.evl, &p2]);
    let cvr = &kron(&[&q2, &pp1.cvr, &p2]) * &pp2.cvr;
    let evr = &pp1.evr * &kron(&[&p1, &pp2.evr, &q1]);
    PivotalPair::new(
        pp1.dim_p * pp2.dim_p,
        pp1.dim_q * pp2.dim_q,
        cvl,
        evl,
        cvr,
        evr,
    )
    .expect("nested shapes")
}

/// The pair `(Q, P)` with left and right structure exchanged.
pub fn dual_pair(pp: &PivotalPair) -> PivotalPair {
    PivotalPair {
        dim_p: pp.dim_q,
        dim_q: pp.dim_p,
        cvl: pp.cvr.clone(),
        evl: pp.evr.clone(),
        cvr: pp.cvl.clone(),
        evr: pp.evl.clone(),
    }
}

/// The antisymmetrizer `k^n⊗k^n → Λ²k^n` onto the basis `e_i∧e_j`, `i<j`.
pub fn antisymmetrizer(n: usize) -> ExactMatrix {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut m = ExactMatrix::zeros(pairs.len(), n * n);
    for (r, &(i, j)) in pairs.iter().enumerate() {
        m.set(r, i * n + j, Scalar::one());
        m.set(r, j * n + i, Scalar::from_i64(-1));
    }
    m
}

/// The flip-braided pair on `k^n`.
pub fn standard_braided(n: usize) -> PivotalPair {
    let std = PivotalPair::from_matrix(n, &id(n)).expect("identity is invertible");
    PivotalPair::from_braided(std.cvl, std.evl).expect("standard duality")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar_pair(q: Scalar) -> PivotalPair {
        PivotalPair::from_matrix(1, &ExactMatrix::diagonal(&[q])).unwrap()
    }

    #[test]
    fn scalar_pair_maps() {
        let pp = scalar_pair(Scalar::ratio(2, 3));
        assert_eq!(pp.cvr.get(0, 0), &Scalar::ratio(2, 3));
        assert_eq!(pp.evr.get(0, 0), &Scalar::ratio(3, 2));
        assert!(pp.check().passed);
        assert_eq!(PivotalPair::unit().cvr, id(1));
    }

    #[test]
    fn upper_triangular_pair_passes() {
        let q = ExactMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let pp = PivotalPair::from_matrix(2, &q).unwrap();
        assert!(pp.check().passed);
        assert_eq!(pp.q_matrix().unwrap(), q);
        assert_eq!(
            PivotalPair::from_matrix(2, &ExactMatrix::from_i64(&[&[1, 2], &[2, 4]])),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn scaled_evr_breaks_right_snakes() {
        let mut pp = PivotalPair::from_matrix(2, &id(2)).unwrap();
        pp.evr = pp.evr.scale(&Scalar::from_i64(2));
        let rep = pp.check();
        let failed: Vec<_> = rep.failures().map(|c| c.name.as_str()).collect();
        assert_eq!(failed, vec!["right snake on P", "right snake on Q"]);
    }

    #[test]
    fn snake_under_scalar_assignment() {
        let pp = scalar_pair(Scalar::from_i64(5));
        let (_, terms) = snake_terms();
        let m = pp.assignment().evaluate(&terms[0].1).unwrap();
        assert_eq!(m, id(1));
    }

    #[test]
    fn braided_completion() {
        for n in 1..=3 {
            assert_eq!(standard_braided(n), PivotalPair::from_matrix(n, &id(n)).unwrap());
        }
        let c = Scalar::ratio(3, 7);
        let pp = PivotalPair::from_braided(
            ExactMatrix::diagonal(std::slice::from_ref(&c)),
            ExactMatrix::diagonal(&[c.inverse().unwrap()]),
        )
        .unwrap();
        assert!(pp.check().passed);
        let bad = PivotalPair::from_braided(id(1), ExactMatrix::diagonal(&[Scalar::from_i64(2)]));
        assert!(matches!(bad, Err(Error::NotADuality(_))));
    }

    #[test]
    fn scalar_transposes() {
        let (q1, q2, s) = (Scalar::from_i64(2), Scalar::ratio(1, 3), Scalar::from_i64(5));
        let (pp1, pp2) = (scalar_pair(q1.clone()), scalar_pair(q2.clone()));
        let f = ExactMatrix::diagonal(std::slice::from_ref(&s));
        assert_eq!(left_transpose(&f, &pp1, &pp2).unwrap().get(0, 0), &s);
        assert_eq!(right_transpose(&f, &pp1, &pp2).unwrap().get(0, 0), &(&(&q1 * &s) / &q2));
        assert!(!is_pivotal_morphism(&id(1), &pp1, &pp2).unwrap());
        assert!(is_pivotal_morphism(&id(1), &pp1, &pp1).unwrap());
    }

    #[test]
    fn standard_pairs_transpose_ordinarily() {
        let pp = PivotalPair::from_matrix(2, &id(2)).unwrap();
        let f = ExactMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        assert_eq!(left_transpose(&f, &pp, &pp).unwrap(), f.transpose());
        assert_eq!(right_transpose(&f, &pp, &pp).unwrap(), f.transpose());
        assert!(matches!(left_transpose(&id(3), &pp, &pp), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn tensor_and_dual() {
        let t = tensor_pairs(&scalar_pair(Scalar::from_i64(2)), &scalar_pair(Scalar::from_i64(3)));
        assert_eq!(t.cvr.get(0, 0), &Scalar::from_i64(6));
        let pp = PivotalPair::from_matrix(2, &ExactMatrix::from_i64(&[&[1, 1], &[0, 1]])).unwrap();
        assert!(tensor_pairs(&pp, &pp).check().passed);
        assert_eq!(tensor_pairs(&pp, &PivotalPair::unit()), pp);
        assert_eq!(dual_pair(&dual_pair(&pp)), pp);
        assert!(dual_pair(&pp).check().passed);
        assert_eq!(dual_pair(&PivotalPair::unit()), PivotalPair::unit());
    }

    #[test]
    fn antisymmetrizer_is_pivotal() {
        for n in 2..=3 {
            let pp = standard_braided(n);
            let lam = standard_braided(n * (n - 1) / 2);
            let pi = antisymmetrizer(n);
            assert!(is_pivotal_morphism(&pi, &tensor_pairs(&pp, &pp), &lam).unwrap());
        }
    }

    #[test]
    fn json_round_trip() {
        let pp = PivotalPair::from_matrix(2, &ExactMatrix::from_i64(&[&[2, 1], &[0, 1]])).unwrap();
        let s = serde_json::to_string(&pp).unwrap();
        let back: PivotalPair = serde_json::from_str(&s).unwrap();
        assert_eq!(back, pp);
    }
}
