//! Objects of `C(P,Q)`: spaces `X` with an invertible `σ : X⊗P → P⊗X`
//! whose induced `Q`-intertwinings are mutually inverse.

mod diagram;
mod dual;
mod hom;
pub mod samples;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use diagram::{diagram_check, DiagramIntertwiner, PivotalDiagram};
pub use dual::{dual_objects, duality_report, lift_pivotal};
pub use hom::{
    check_closure_units, left_hom, left_hom_with_inverse, right_hom, right_hom_via_opposite,
    right_hom_with_inverse, HomCarrier,
};

use crate::error::{Error, Result};
use crate::exactnum::ExactMatrix;
use crate::pivpair::PivotalPair;
use crate::report::Report;

pub(crate) fn id(n: usize) -> ExactMatrix {
    ExactMatrix::identity(n)
}

/// Compose a chain written outermost first.
pub(crate) fn chain(ms: &[ExactMatrix]) -> ExactMatrix {
    let mut it = ms.iter().rev();
    let first = it.next().expect("nonempty chain").clone();
    it.fold(first, |acc, m| m * &acc)
}

pub(crate) fn kron(fs: &[&ExactMatrix]) -> ExactMatrix {
    ExactMatrix::kron_all(fs)
}

/// An object `(X, σ)` over a fixed pivotal pair.
#[derive(Clone, Debug)]
pub struct Intertwiner {
    dim_x: usize,
    sigma: ExactMatrix,
    sigma_inv: Option<ExactMatrix>,
    pair: Arc<PivotalPair>,
}

impl PartialEq for Intertwiner {
    fn eq(&self, other: &Self) -> bool {
        self.dim_x == other.dim_x && self.sigma == other.sigma && self.pair == other.pair
    }
}

impl Eq for Intertwiner {}

impl Intertwiner {
    /// Wrap `σ`; only its shape is checked here.
    pub fn new(dim_x: usize, sigma: ExactMatrix, pair: Arc<PivotalPair>) -> Result<Self> {
        let d = dim_x * pair.dim_p();
        if sigma.shape() != (d, d) {
            return Err(Error::ShapeMismatch(format!(
                "sigma must be {d}x{d} for dimX={dim_x}, dimP={}",
                pair.dim_p()
            )));
        }
        let sigma_inv = sigma.invert().ok();
        Ok(Intertwiner {
            dim_x,
            sigma,
            sigma_inv,
            pair,
        })
    }

    /// Wrap `σ` and reject it unless it passes [`check_object`].
    pub fn validated(dim_x: usize, sigma: ExactMatrix, pair: Arc<PivotalPair>) -> Result<Self> {
        let obj = Intertwiner::new(dim_x, sigma, pair)?;
        let rep = obj.check();
        if !rep.passed {
            let first = rep.failures().next().map(|c| c.name.clone()).unwrap_or_default();
            return Err(Error::InvalidObject(first));
        }
        Ok(obj)
    }

    /// The monoidal unit `(1, id_P)`.
    pub fn unit(pair: Arc<PivotalPair>) -> Self {
        let n = pair.dim_p();
        Intertwiner::new(1, id(n), pair).expect("unit shape")
    }

    /// `(X, flip)`, which lies in `C(P,Q)` for every pair.
    pub fn trivial(dim_x: usize, pair: Arc<PivotalPair>) -> Self {
        let n = pair.dim_p();
        Intertwiner::new(dim_x, ExactMatrix::swap(dim_x, n), pair).expect("flip shape")
    }

    pub fn dim_x(&self) -> usize {
        self.dim_x
    }

    pub fn sigma(&self) -> &ExactMatrix {
        &self.sigma
    }

    pub fn sigma_inv(&self) -> Result<&ExactMatrix> {
        self.sigma_inv.as_ref().ok_or(Error::SingularSigma)
    }

    pub fn pair(&self) -> &Arc<PivotalPair> {
        &self.pair
    }

    pub fn dim_p(&self) -> usize {
        self.pair.dim_p()
    }

    pub fn dim_q(&self) -> usize {
        self.pair.dim_q()
    }

    pub fn check(&self) -> Report {
        check_object(self.dim_x, &self.sigma, &self.pair)
    }

    pub fn same_pair(&self, other: &Intertwiner) -> Result<()> {
        if Arc::ptr_eq(&self.pair, &other.pair) || self.pair == other.pair {
            Ok(())
        } else {
            Err(Error::PairMismatch)
        }
    }
}

/// `ovσ = (evl⊗X⊗Q)(Q⊗σ⊗Q)(Q⊗X⊗cvl) : Q⊗X → X⊗Q` and
/// `ovσ⁻¹ = (Q⊗X⊗evr)(Q⊗σ⁻¹⊗Q)(cvr⊗X⊗Q) : X⊗Q → Q⊗X`.
pub fn induced_q(obj: &Intertwiner) -> Result<(ExactMatrix, ExactMatrix)> {
    let inv = obj.sigma_inv()?;
    Ok(induced_raw(&obj.pair, obj.dim_x, &obj.sigma, inv))
}

pub(crate) fn induced_raw(
    pp: &PivotalPair,
    dx: usize,
    sigma: &ExactMatrix,
    sigma_inv: &ExactMatrix,
) -> (ExactMatrix, ExactMatrix) {
    let (x, q) = (id(dx), id(pp.dim_q()));
    let ov = &(&kron(&[&pp.evl, &x, &q]) * &kron(&[&q, sigma, &q])) * &kron(&[&q, &x, &pp.cvl]);
    let ov_inv = &(&kron(&[&q, &x, &pp.evr]) * &kron(&[&q, sigma_inv, &q])) * &kron(&[&pp.cvr, &x, &q]);
    (ov, ov_inv)
}

/// Check that `σ` is invertible and its induced `Q`-intertwinings are inverse.
pub fn check_object(dim_x: usize, sigma: &ExactMatrix, pair: &PivotalPair) -> Report {
    let mut rep = Report::new("intertwined object");
    let d = dim_x * pair.dim_p();
    if sigma.shape() != (d, d) {
        rep.flag("shape", false, Some(format!("sigma must be {d}x{d}")));
        return rep;
    }
    let Ok(inv) = sigma.invert() else {
        rep.flag("sigma invertible", false, None);
        return rep;
    };
    rep.flag("sigma invertible", true, None);
    let (ov, ov_inv) = induced_raw(pair, dim_x, sigma, &inv);
    rep.identity("ov∘ov⁻¹", &(&ov * &ov_inv));
    rep.identity("ov⁻¹∘ov", &(&ov_inv * &ov));
    rep
}

/// Whether `f : a → b` satisfies `σ_b(f⊗P) = (P⊗f)σ_a`.
pub fn is_morphism(f: &ExactMatrix, a: &Intertwiner, b: &Intertwiner) -> Result<bool> {
    Ok(morphism_defect(f, a, b)?.is_zero())
}

/// `σ_b(f⊗P) − (P⊗f)σ_a`.
pub fn morphism_defect(f: &ExactMatrix, a: &Intertwiner, b: &Intertwiner) -> Result<ExactMatrix> {
    a.same_pair(b)?;
    if f.shape() != (b.dim_x, a.dim_x) {
        return Err(Error::ShapeMismatch(format!(
            "morphism must be {}x{}",
            b.dim_x, a.dim_x
        )));
    }
    let p = id(a.dim_p());
    Ok(&(&b.sigma * &f.kron(&p)) - &(&p.kron(f) * &a.sigma))
}

/// A basis of the morphisms `a → b` in `C(P,Q)`.
pub fn morphism_space(a: &Intertwiner, b: &Intertwiner) -> Result<Vec<ExactMatrix>> {
    a.same_pair(b)?;
    let (da, db) = (a.dim_x, b.dim_x);
    let n = a.dim_p();
    let out_len = db * n * da * n;
    let mut lin = ExactMatrix::zeros(out_len, da * db);
    for r in 0..db {
        for s in 0..da {
            let mut e = ExactMatrix::zeros(db, da);
            e.set(r, s, crate::exactnum::Scalar::one());
            let img = morphism_defect(&e, a, b)?;
            for (k, v) in img.entries().iter().enumerate() {
                lin.set(k, r * da + s, v.clone());
            }
        }
    }
    let ker = lin.kernel();
    Ok((0..ker.cols())
        .map(|c| ExactMatrix::from_fn(db, da, |i, j| ker.get(i * da + j, c).clone()))
        .collect())
}

/// `(X⊗Y, (σ⊗Y)(X⊗τ))`.
pub fn tensor_objects(a: &Intertwiner, b: &Intertwiner) -> Result<Intertwiner> {
    a.same_pair(b)?;
    let sigma = &kron(&[&a.sigma, &id(b.dim_x)]) * &kron(&[&id(a.dim_x), &b.sigma]);
    Intertwiner::new(a.dim_x * b.dim_x, sigma, a.pair.clone())
}

/// `(X⊕Y, σ⊕τ)`.
pub fn direct_sum(a: &Intertwiner, b: &Intertwiner) -> Result<Intertwiner> {
    a.same_pair(b)?;
    let n = a.dim_p();
    let (dx, dy) = (a.dim_x, b.dim_x);
    let d = dx + dy;
    let mut sigma = ExactMatrix::zeros(d * n, d * n);
    // source basis (z, p) ↦ z*n + p; target basis (p, z) ↦ p*d + z
    for (src, off, dz) in [(a, 0usize, dx), (b, dx, dy)] {
        for z in 0..dz {
            for p in 0..n {
                for z2 in 0..dz {
                    for p2 in 0..n {
                        let v = src.sigma.get(p2 * dz + z2, z * n + p);
                        if !v.is_zero() {
                            sigma.set(p2 * d + off + z2, (off + z) * n + p, v.clone());
                        }
                    }
                }
            }
        }
    }
    Intertwiner::new(d, sigma, a.pair.clone())
}

/// Transport along an invertible `g : X → X'`: `σ' = (P⊗g)σ(g⁻¹⊗P)`.
pub fn change_basis(a: &Intertwiner, g: &ExactMatrix) -> Result<Intertwiner> {
    let g_inv = g.invert()?;
    let p = id(a.dim_p());
    let sigma = &(&p.kron(g) * &a.sigma) * &g_inv.kron(&p);
    Intertwiner::new(a.dim_x, sigma, a.pair.clone())
}

/// JSON form of an object: either a full pair or `n` and `Q`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ObjectJson {
    #[serde(rename = "dimX")]
    pub dim_x: usize,
    pub sigma: ExactMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<PivotalPair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(rename = "Q", default, skip_serializing_if = "Option::is_none")]
    pub q: Option<ExactMatrix>,
}

impl ObjectJson {
    pub fn build(self) -> Result<Intertwiner> {
        let pair = match (self.pair, self.q) {
            (Some(p), _) => p,
            (None, Some(q)) => PivotalPair::from_matrix(self.n.unwrap_or(q.rows()), &q)?,
            (None, None) => {
                return Err(Error::Parse("object needs a \"pair\" or a \"Q\" matrix".into()))
            }
        };
        Intertwiner::new(self.dim_x, self.sigma, Arc::new(pair))
    }
}

impl From<&Intertwiner> for ObjectJson {
    fn from(o: &Intertwiner) -> Self {
        ObjectJson {
            dim_x: o.dim_x,
            sigma: o.sigma.clone(),
            pair: Some((*o.pair).clone()),
            n: None,
            q: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Scalar;

    fn scalar_pair(q: Scalar) -> Arc<PivotalPair> {
        Arc::new(PivotalPair::from_matrix(1, &ExactMatrix::diagonal(&[q])).unwrap())
    }

    fn scalar_obj(pp: &Arc<PivotalPair>, s: Scalar) -> Intertwiner {
        Intertwiner::new(1, ExactMatrix::diagonal(&[s]), pp.clone()).unwrap()
    }

    #[test]
    fn unit_object_is_valid() {
        let pp = Arc::new(PivotalPair::from_matrix(2, &ExactMatrix::from_i64(&[&[1, 1], &[0, 1]])).unwrap());
        let u = Intertwiner::unit(pp.clone());
        assert!(u.check().passed);
        let (ov, ov_inv) = induced_q(&u).unwrap();
        assert!(ov.is_identity() && ov_inv.is_identity());
        assert!(Intertwiner::trivial(3, pp).check().passed);
    }

    #[test]
    fn scalar_induced_maps() {
        let pp = scalar_pair(Scalar::from_i64(3));
        let s = Scalar::ratio(-2, 5);
        let (ov, ov_inv) = induced_q(&scalar_obj(&pp, s.clone())).unwrap();
        assert_eq!(ov, ExactMatrix::diagonal(std::slice::from_ref(&s)));
        assert_eq!(ov_inv, ExactMatrix::diagonal(&[s.inverse().unwrap()]));
        let singular = scalar_obj(&pp, Scalar::zero());
        assert_eq!(induced_q(&singular), Err(Error::SingularSigma));
        assert!(!singular.check().passed);
    }

    #[test]
    fn diag_pair_with_identity_sigma() {
        let q = ExactMatrix::diagonal(&[Scalar::one(), Scalar::from_i64(2)]);
        let pp = Arc::new(PivotalPair::from_matrix(2, &q).unwrap());
        // identity commutes with Q, so the object is valid
        assert!(check_object(1, &id(2), &pp).passed);
        // a sigma whose transpose does not commute with Q is not
        let bad = ExactMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert!(!check_object(1, &bad, &pp).passed);
    }

    #[test]
    fn morphism_checks() {
        let pp = scalar_pair(Scalar::one());
        let a = scalar_obj(&pp, Scalar::from_i64(2));
        let b = scalar_obj(&pp, Scalar::from_i64(3));
        assert!(is_morphism(&id(1), &a, &a).unwrap());
        assert!(is_morphism(&ExactMatrix::zeros(1, 1), &a, &b).unwrap());
        assert!(!is_morphism(&id(1), &a, &b).unwrap());
        assert!(morphism_space(&a, &b).unwrap().is_empty());
        assert_eq!(morphism_space(&a, &a).unwrap().len(), 1);
    }

    #[test]
    fn tensor_of_scalars() {
        let pp = scalar_pair(Scalar::from_i64(2));
        let a = scalar_obj(&pp, Scalar::from_i64(2));
        let b = scalar_obj(&pp, Scalar::ratio(1, 7));
        let t = tensor_objects(&a, &b).unwrap();
        assert_eq!(t.sigma(), &ExactMatrix::diagonal(&[Scalar::ratio(2, 7)]));
        assert_eq!(tensor_objects(&a, &Intertwiner::unit(pp.clone())).unwrap(), a);
        let other = scalar_obj(&scalar_pair(Scalar::from_i64(5)), Scalar::one());
        assert_eq!(tensor_objects(&a, &other), Err(Error::PairMismatch));
    }

    #[test]
    fn direct_sum_and_basis_change_stay_valid() {
        let pp = Arc::new(PivotalPair::from_matrix(2, &ExactMatrix::from_i64(&[&[1, 1], &[0, 1]])).unwrap());
        let t = Intertwiner::trivial(1, pp.clone());
        let c = Intertwiner::new(1, ExactMatrix::from_i64(&[&[2, 0], &[3, 2]]), pp.clone()).unwrap();
        assert!(c.check().passed);
        let s = direct_sum(&t, &c).unwrap();
        assert!(s.check().passed);
        let g = ExactMatrix::from_i64(&[&[1, 2], &[0, 1]]);
        assert!(change_basis(&s, &g).unwrap().check().passed);
    }
}
