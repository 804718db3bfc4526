use super::{id, induced_raw, kron, tensor_objects, Intertwiner};
use crate::error::Result;
use crate::exactnum::{ExactMatrix, Scalar};
use crate::pivpair::PivotalPair;
use crate::report::Report;

/// Inner-hom carriers `Hom(A,B)` with matrix-unit basis `E_ij`, index `i·dimA + j`.
pub struct HomCarrier;

impl HomCarrier {
    /// `η : Y → [A, Y⊗A]`, `y ↦ (a ↦ y⊗a)`.
    pub fn eta(da: usize, dy: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(dy * da * da, dy);
        for y in 0..dy {
            for k in 0..da {
                m.set((y * da + k) * da + k, y, Scalar::one());
            }
        }
        m
    }

    /// `ε : [A,B]⊗A → B`, evaluation.
    pub fn eps(da: usize, db: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(db, db * da * da);
        for i in 0..db {
            for j in 0..da {
                m.set(i, (i * da + j) * da + j, Scalar::one());
            }
        }
        m
    }

    /// `Γ : Y → [A, A⊗Y]`, `y ↦ (a ↦ a⊗y)`.
    pub fn gamma(da: usize, dy: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(da * dy * da, dy);
        for y in 0..dy {
            for k in 0..da {
                m.set((k * dy + y) * da + k, y, Scalar::one());
            }
        }
        m
    }

    /// `Θ : A⊗[A,B] → B`, evaluation.
    pub fn theta(da: usize, db: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(db, da * db * da);
        for i in 0..db {
            for j in 0..da {
                m.set(i, j * (db * da) + i * da + j, Scalar::one());
            }
        }
        m
    }

    /// `[A, h]` as post-composition on matrix units.
    pub fn post(h: &ExactMatrix, da: usize) -> ExactMatrix {
        h.kron(&id(da))
    }
}

/// Structure maps of an object as seen from a (possibly opposite) frame.
struct Side<'a> {
    dim: usize,
    sigma: &'a ExactMatrix,
    sigma_inv: &'a ExactMatrix,
    ov: ExactMatrix,
}

/// A pivotal pair viewed in `C` or in `C` with reversed tensor product.
struct Frame<'a> {
    op: bool,
    p: usize,
    q: usize,
    cvl: &'a ExactMatrix,
    evl: &'a ExactMatrix,
    cvr: &'a ExactMatrix,
    evr: &'a ExactMatrix,
}

impl<'a> Frame<'a> {
    fn normal(pp: &'a PivotalPair) -> Self {
        Frame {
            op: false,
            p: pp.dim_p(),
            q: pp.dim_q(),
            cvl: &pp.cvl,
            evl: &pp.evl,
            cvr: &pp.cvr,
            evr: &pp.evr,
        }
    }

    /// In the reversed tensor, `(P, Q)` is a pivotal pair with left and right structure exchanged.
    fn opposite(pp: &'a PivotalPair) -> Self {
        Frame {
            op: true,
            p: pp.dim_p(),
            q: pp.dim_q(),
            cvl: &pp.cvr,
            evl: &pp.evr,
            cvr: &pp.cvl,
            evr: &pp.evl,
        }
    }

    fn t(&self, fs: &[&ExactMatrix]) -> ExactMatrix {
        if self.op {
            let rev: Vec<&ExactMatrix> = fs.iter().rev().copied().collect();
            kron(&rev)
        } else {
            kron(fs)
        }
    }

    fn unit(&self, da: usize, dy: usize) -> ExactMatrix {
        if self.op {
            HomCarrier::gamma(da, dy)
        } else {
            HomCarrier::eta(da, dy)
        }
    }

    fn counit(&self, da: usize, db: usize) -> ExactMatrix {
        if self.op {
            HomCarrier::theta(da, db)
        } else {
            HomCarrier::eps(da, db)
        }
    }

    fn side<'b>(&self, dim: usize, sigma: &'b ExactMatrix, sigma_inv: &'b ExactMatrix) -> Side<'b> {
        let (x, q) = (id(dim), id(self.q));
        let ov = &(&self.t(&[self.evl, &x, &q]) * &self.t(&[&q, sigma, &q])) * &self.t(&[&q, &x, self.cvl]);
        Side {
            dim,
            sigma,
            sigma_inv,
            ov,
        }
    }

    /// The left-hom `P`-intertwining and its displayed inverse.
    fn left_hom(&self, a: &Side, b: &Side) -> (ExactMatrix, ExactMatrix) {
        let (da, db) = (a.dim, b.dim);
        let dh = da * db;
        let (p, q, h, ib) = (id(self.p), id(self.q), id(dh), id(db));
        let eps = self.counit(da, db);

        let hmap = &(&(&self.t(&[self.evl, &ib]) * &self.t(&[&q, b.sigma]))
            * &self.t(&[&q, &eps, &p]))
            * &self.t(&[&q, &h, a.sigma_inv]);
        let dy = self.q * dh * self.p;
        let sigma = &(&self.t(&[&p, &HomCarrier::post(&hmap, da)]) * &self.t(&[&p, &self.unit(da, dy)]))
            * &self.t(&[self.cvl, &h, &p]);

        let hmap_inv = &(&(&self.t(&[&ib, self.evr]) * &self.t(&[b.sigma_inv, &q]))
            * &self.t(&[&p, &eps, &q]))
            * &self.t(&[&p, &h, &a.ov]);
        let sigma_inv = &(&self.t(&[&HomCarrier::post(&hmap_inv, da), &p]) * &self.t(&[&self.unit(da, dy), &p]))
            * &self.t(&[&p, &h, self.cvr]);
        (sigma, sigma_inv)
    }
}

/// The left inner hom `([A,B], ⟨σ_A,σ_B⟩_l)` and the displayed inverse of its intertwining.
pub fn left_hom_with_inverse(a: &Intertwiner, b: &Intertwiner) -> Result<(Intertwiner, ExactMatrix)> {
    a.same_pair(b)?;
    let f = Frame::normal(&a.pair);
    let sa = f.side(a.dim_x, &a.sigma, a.sigma_inv()?);
    let sb = f.side(b.dim_x, &b.sigma, b.sigma_inv()?);
    let (sigma, inv) = f.left_hom(&sa, &sb);
    Ok((Intertwiner::new(a.dim_x * b.dim_x, sigma, a.pair.clone())?, inv))
}

/// The left inner hom `[A,B]`.
pub fn left_hom(a: &Intertwiner, b: &Intertwiner) -> Result<Intertwiner> {
    left_hom_with_inverse(a, b).map(|r| r.0)
}

/// The right inner hom `([A,B]^r, ⟨σ_A,σ_B⟩_r)` from its direct display, with
/// the displayed inverse. The adjunction is `A⊗– ⊣ [A,–]^r`.
pub fn right_hom_with_inverse(a: &Intertwiner, b: &Intertwiner) -> Result<(Intertwiner, ExactMatrix)> {
    a.same_pair(b)?;
    let pp = &a.pair;
    let (da, db) = (a.dim_x, b.dim_x);
    let dh = da * db;
    let (p, q, h, ib) = (id(pp.dim_p()), id(pp.dim_q()), id(dh), id(db));
    let theta = HomCarrier::theta(da, db);
    let (_, ov_inv) = induced_raw(pp, da, &a.sigma, a.sigma_inv()?);
    let sb_inv = b.sigma_inv()?;

    let hmap = &(&(&kron(&[&pp.evl, &ib]) * &kron(&[&q, &b.sigma])) * &kron(&[&q, &theta, &p]))
        * &kron(&[&ov_inv, &h, &p]);
    let dy = pp.dim_q() * dh * pp.dim_p();
    let sigma = &(&kron(&[&p, &HomCarrier::post(&hmap, da)]) * &kron(&[&p, &HomCarrier::gamma(da, dy)]))
        * &kron(&[&pp.cvl, &h, &p]);

    let hmap_inv = &(&(&kron(&[&ib, &pp.evr]) * &kron(&[sb_inv, &q])) * &kron(&[&p, &theta, &q]))
        * &kron(&[&a.sigma, &h, &q]);
    let sigma_inv = &(&kron(&[&HomCarrier::post(&hmap_inv, da), &p]) * &kron(&[&HomCarrier::gamma(da, dy), &p]))
        * &kron(&[&p, &h, &pp.cvr]);
    Ok((Intertwiner::new(dh, sigma, a.pair.clone())?, sigma_inv))
}

pub fn right_hom(a: &Intertwiner, b: &Intertwiner) -> Result<Intertwiner> {
    right_hom_with_inverse(a, b).map(|r| r.0)
}

/// The right inner hom obtained as the left inner hom in the category with
/// reversed tensor product, transported back. Returns `(σ, σ⁻¹)`.
pub fn right_hom_via_opposite(a: &Intertwiner, b: &Intertwiner) -> Result<(ExactMatrix, ExactMatrix)> {
    a.same_pair(b)?;
    let f = Frame::opposite(&a.pair);
    let sa = f.side(a.dim_x, a.sigma_inv()?, &a.sigma);
    let sb = f.side(b.dim_x, b.sigma_inv()?, &b.sigma);
    let (sigma_op, sigma_op_inv) = f.left_hom(&sa, &sb);
    Ok((sigma_op_inv, sigma_op))
}

/// The unit and counit of both inner-hom adjunctions are morphisms of `C(P,Q)`.
pub fn check_closure_units(a: &Intertwiner, b: &Intertwiner) -> Result<Report> {
    a.same_pair(b)?;
    let mut rep = Report::new("closure units");
    let (da, db) = (a.dim_x, b.dim_x);
    let p = id(a.dim_p());

    let ba = tensor_objects(b, a)?;
    let hom_ba = left_hom(a, &ba)?;
    let eta = HomCarrier::eta(da, db);
    rep.equal(
        "eta is a morphism",
        &(&p.kron(&eta) * &b.sigma),
        &(&hom_ba.sigma * &eta.kron(&p)),
    );

    let hom = left_hom(a, b)?;
    let eps = HomCarrier::eps(da, db);
    let ha = tensor_objects(&hom, a)?;
    rep.equal(
        "eps is a morphism",
        &(&b.sigma * &eps.kron(&p)),
        &(&p.kron(&eps) * &ha.sigma),
    );

    let ab = tensor_objects(a, b)?;
    let rhom_ab = right_hom(a, &ab)?;
    let gamma = HomCarrier::gamma(da, db);
    rep.equal(
        "gamma is a morphism",
        &(&p.kron(&gamma) * &b.sigma),
        &(&rhom_ab.sigma * &gamma.kron(&p)),
    );

    let rhom = right_hom(a, b)?;
    let theta = HomCarrier::theta(da, db);
    let ah = tensor_objects(a, &rhom)?;
    rep.equal(
        "theta is a morphism",
        &(&b.sigma * &theta.kron(&p)),
        &(&p.kron(&theta) * &ah.sigma),
    );
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::intertwine::samples::random_object;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn adjunction_triangles() {
        for (da, db) in [(1, 1), (2, 3), (3, 2)] {
            // (ε⊗... ) ε_{Y⊗A} ∘ (η_Y ⊗ A) = id_{Y⊗A}
            let lhs = &HomCarrier::eps(da, db * da) * &HomCarrier::eta(da, db).kron(&id(da));
            assert!(lhs.is_identity());
            // [A, ε_B] ∘ η_{[A,B]} = id_{[A,B]}
            let rhs = &HomCarrier::post(&HomCarrier::eps(da, db), da) * &HomCarrier::eta(da, da * db);
            assert!(rhs.is_identity());
            let l2 = &HomCarrier::theta(da, da * db) * &id(da).kron(&HomCarrier::gamma(da, db));
            assert!(l2.is_identity());
            let r2 = &HomCarrier::post(&HomCarrier::theta(da, db), da) * &HomCarrier::gamma(da, da * db);
            assert!(r2.is_identity());
        }
    }

    fn scalar_setup(q: i64) -> Arc<PivotalPair> {
        Arc::new(PivotalPair::from_matrix(1, &ExactMatrix::diagonal(&[Scalar::from_i64(q)])).unwrap())
    }

    #[test]
    fn hom_out_of_unit_and_into_unit() {
        let pp = scalar_setup(3);
        let s = Scalar::ratio(2, 5);
        let a = Intertwiner::new(1, ExactMatrix::diagonal(std::slice::from_ref(&s)), pp.clone()).unwrap();
        let u = Intertwiner::unit(pp.clone());
        assert_eq!(left_hom(&u, &a).unwrap().sigma(), a.sigma());
        assert_eq!(right_hom(&u, &a).unwrap().sigma(), a.sigma());
        let d = left_hom(&a, &u).unwrap();
        assert_eq!(d.sigma(), &ExactMatrix::diagonal(&[s.inverse().unwrap()]));
    }

    #[test]
    fn homs_are_valid_with_displayed_inverses() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=2 {
            for _ in 0..4 {
                let q = crate::exactnum::random_invertible(&mut rng, n, 2, 2);
                let pp = Arc::new(PivotalPair::from_matrix(n, &q).unwrap());
                let a = random_object(&mut rng, &pp, 2).unwrap();
                let b = random_object(&mut rng, &pp, 1).unwrap();
                let (l, l_inv) = left_hom_with_inverse(&a, &b).unwrap();
                assert!((l.sigma() * &l_inv).is_identity());
                assert!(l.check().passed);
                let (r, r_inv) = right_hom_with_inverse(&a, &b).unwrap();
                assert!((r.sigma() * &r_inv).is_identity());
                assert!((&r_inv * r.sigma()).is_identity());
                assert!(r.check().passed);
                let (r2, r2_inv) = right_hom_via_opposite(&a, &b).unwrap();
                assert_eq!(&r2, r.sigma());
                assert_eq!(r2_inv, r_inv);
                assert!(check_closure_units(&a, &b).unwrap().passed);
            }
        }
    }
}
