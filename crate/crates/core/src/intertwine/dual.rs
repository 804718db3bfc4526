use super::{chain, id, induced_raw, is_morphism, kron, tensor_objects, Intertwiner};
use crate::error::{Error, Result};
use crate::exactnum::ExactMatrix;
use crate::pivpair::{is_pivotal_morphism, PivotalPair};
use crate::report::Report;

/// Standard copairing `Σ e_i⊗e_i` on `k^d`.
fn copairing(d: usize) -> ExactMatrix {
    PivotalPair::from_matrix(d, &id(d)).expect("identity").cvl
}

fn pairing(d: usize) -> ExactMatrix {
    copairing(d).transpose()
}

/// Left dual `(ᵛX, σ_ᵛX)` and right dual `(Xᵛ, σ_Xᵛ)`, both on `k^dimX` with the
/// standard pairings.
pub fn dual_objects(a: &Intertwiner) -> Result<(Intertwiner, Intertwiner)> {
    let pp = &a.pair;
    let dx = a.dim_x;
    let (x, p, q) = (id(dx), id(pp.dim_p()), id(pp.dim_q()));
    let (cv, ev) = (copairing(dx), pairing(dx));
    let sigma_inv = a.sigma_inv()?;
    let (ov, ov_inv) = induced_raw(pp, dx, &a.sigma, sigma_inv);

    // σ_ᵛX = (ev⊗P⊗ᵛX)(ᵛX⊗σ⁻¹⊗ᵛX)(ᵛX⊗P⊗cv)
    let left = &(&kron(&[&ev, &p, &x]) * &kron(&[&x, sigma_inv, &x])) * &kron(&[&x, &p, &cv]);
    // its displayed inverse
    let left_inv = chain(&[
        kron(&[&pp.evr, &x, &p]),
        kron(&[&p, &ev, &q, &x, &p]),
        kron(&[&p, &x, &ov, &x, &p]),
        kron(&[&p, &x, &q, &cv, &p]),
        kron(&[&p, &x, &pp.cvr]),
    ]);

    // σ_Xᵛ = (P⊗Xᵛ⊗evl)(P⊗Xᵛ⊗Q⊗ev⊗P)(P⊗Xᵛ⊗ovσ⁻¹⊗Xᵛ⊗P)(P⊗cv⊗Q⊗Xᵛ⊗P)(cvl⊗Xᵛ⊗P)
    let right = chain(&[
        kron(&[&p, &x, &pp.evl]),
        kron(&[&p, &x, &q, &ev, &p]),
        kron(&[&p, &x, &ov_inv, &x, &p]),
        kron(&[&p, &cv, &q, &x, &p]),
        kron(&[&pp.cvl, &x, &p]),
    ]);
    // and its displayed inverse (Xᵛ⊗P⊗ev)(Xᵛ⊗σ⊗Xᵛ)(cv⊗P⊗Xᵛ)
    let right_inv = &(&kron(&[&x, &p, &ev]) * &kron(&[&x, &a.sigma, &x])) * &kron(&[&cv, &p, &x]);

    if !(&left * &left_inv).is_identity() || !(&right * &right_inv).is_identity() {
        return Err(Error::InvalidObject("dual intertwinings are not invertible as displayed".into()));
    }
    Ok((
        Intertwiner::new(dx, left, pp.clone())?,
        Intertwiner::new(dx, right, pp.clone())?,
    ))
}

/// Validity of both duals and the standard duality maps as morphisms of `C(P,Q)`.
pub fn duality_report(a: &Intertwiner) -> Result<Report> {
    let mut rep = Report::new("duals");
    let (l, r) = dual_objects(a)?;
    rep.absorb("left dual", l.check());
    rep.absorb("right dual", r.check());
    let u = Intertwiner::unit(a.pair.clone());
    let dx = a.dim_x;
    let (cv, ev) = (copairing(dx), pairing(dx));
    rep.flag("ev: ᵛX⊗X → 1", is_morphism(&ev, &tensor_objects(&l, a)?, &u)?, None);
    rep.flag("coev: 1 → X⊗ᵛX", is_morphism(&cv, &u, &tensor_objects(a, &l)?)?, None);
    rep.flag("ev: X⊗Xᵛ → 1", is_morphism(&ev, &tensor_objects(a, &r)?, &u)?, None);
    rep.flag("coev: 1 → Xᵛ⊗X", is_morphism(&cv, &u, &tensor_objects(&r, a)?)?, None);
    Ok(rep)
}

/// Lift the pivotal structure: `id_X` is a morphism from `X` to its double left dual.
///
/// Requires `id_P` to be a pivotal morphism from the ambient pair to the
/// canonical pair on `k^n`.
pub fn lift_pivotal(a: &Intertwiner) -> Result<Report> {
    let n = a.dim_p();
    let canonical = PivotalPair::from_matrix(n, &id(n))?;
    if !is_pivotal_morphism(&id(n), &a.pair, &canonical)? {
        return Err(Error::HypothesisFailed(
            "the identity of P is not a pivotal morphism to the canonical pair".into(),
        ));
    }
    let mut rep = Report::new("pivotal lift");
    let (l, _) = dual_objects(a)?;
    let (ll, _) = dual_objects(&l)?;
    rep.flag("identity to double dual", is_morphism(&id(a.dim_x), a, &ll)?, None);
    let (_, r) = dual_objects(a)?;
    let (_, rr) = dual_objects(&r)?;
    rep.flag("identity to double right dual", is_morphism(&id(a.dim_x), a, &rr)?, None);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactnum::Scalar;
    use crate::intertwine::samples::random_object;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn scalar_duals() {
        let pp = Arc::new(PivotalPair::from_matrix(1, &ExactMatrix::diagonal(&[Scalar::from_i64(4)])).unwrap());
        let s = Scalar::ratio(3, 2);
        let a = Intertwiner::new(1, ExactMatrix::diagonal(std::slice::from_ref(&s)), pp.clone()).unwrap();
        let (l, r) = dual_objects(&a).unwrap();
        assert_eq!(l.sigma(), &ExactMatrix::diagonal(&[s.inverse().unwrap()]));
        assert!(r.check().passed);
        let u = Intertwiner::unit(pp);
        let (ul, ur) = dual_objects(&u).unwrap();
        assert_eq!(ul, u);
        assert_eq!(ur, u);
    }

    #[test]
    fn random_duals_are_objects() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=2 {
            let q = crate::exactnum::random_invertible(&mut rng, n, 2, 2);
            let pp = Arc::new(PivotalPair::from_matrix(n, &q).unwrap());
            for d in 1..=2 {
                let a = random_object(&mut rng, &pp, d).unwrap();
                let rep = duality_report(&a).unwrap();
                assert!(rep.passed, "{rep:?}");
            }
        }
    }

    #[test]
    fn lift_needs_identity_q() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let pp = Arc::new(PivotalPair::from_matrix(2, &id(2)).unwrap());
        let a = random_object(&mut rng, &pp, 2).unwrap();
        assert!(lift_pivotal(&a).unwrap().passed);
        assert!(lift_pivotal(&Intertwiner::unit(pp)).unwrap().passed);
        let q = ExactMatrix::diagonal(&[Scalar::one(), Scalar::from_i64(2)]);
        let pp2 = Arc::new(PivotalPair::from_matrix(2, &q).unwrap());
        assert!(matches!(
            lift_pivotal(&Intertwiner::unit(pp2)),
            Err(Error::HypothesisFailed(_))
        ));
    }
}
