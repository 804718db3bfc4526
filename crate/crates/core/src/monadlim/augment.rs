use super::maps::{iterated_star, kills_relations, on_quotient};
use super::{apply_functor, truncate, TruncatedT};
use crate::error::{Error, Result};
use crate::exactnum::ExactMatrix;
use crate::pivpair::PivotalPair;
use crate::report::Report;

fn kron(fs: &[&ExactMatrix]) -> ExactMatrix {
    ExactMatrix::kron_all(fs)
}

fn id(n: usize) -> ExactMatrix {
    ExactMatrix::identity(n)
}

/// Candidate half-braidings `λ_X : P⊗X → X⊗P` and `χ_X : Q⊗X → X⊗Q`.
pub trait CentralStructure {
    fn name(&self) -> String;
    fn lambda(&self, pair: &PivotalPair, dim_x: usize) -> ExactMatrix;
    fn chi(&self, pair: &PivotalPair, dim_x: usize) -> ExactMatrix;
}

/// The symmetry of `Mat(𝕜)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct FlipBraiding;

impl CentralStructure for FlipBraiding {
    fn name(&self) -> String {
        "flip".into()
    }

    fn lambda(&self, pair: &PivotalPair, dim_x: usize) -> ExactMatrix {
        ExactMatrix::swap(pair.dim_p(), dim_x)
    }

    fn chi(&self, pair: &PivotalPair, dim_x: usize) -> ExactMatrix {
        ExactMatrix::swap(pair.dim_q(), dim_x)
    }
}

/// `flip∘(h⊗X)`: natural, but a half-braiding only when `h` is the identity.
#[derive(Clone, Debug)]
pub struct ScaledBraiding {
    pub h_p: ExactMatrix,
    pub h_q: ExactMatrix,
}

impl CentralStructure for ScaledBraiding {
    fn name(&self) -> String {
        "flip twisted by an endomorphism".into()
    }

    fn lambda(&self, pair: &PivotalPair, dim_x: usize) -> ExactMatrix {
        &ExactMatrix::swap(pair.dim_p(), dim_x) * &kron(&[&self.h_p, &id(dim_x)])
    }

    fn chi(&self, pair: &PivotalPair, dim_x: usize) -> ExactMatrix {
        &ExactMatrix::swap(pair.dim_q(), dim_x) * &kron(&[&self.h_q, &id(dim_x)])
    }
}

/// Half-braiding axioms and centrality of the four duality maps, on small test objects.
pub fn centrality_report(pair: &PivotalPair, cs: &dyn CentralStructure) -> Report {
    let (n, m) = (pair.dim_p(), pair.dim_q());
    let mut rep = Report::new(format!("central structure: {}", cs.name()));
    rep.identity("λ at unit", &cs.lambda(pair, 1));
    rep.identity("χ at unit", &cs.chi(pair, 1));
    for (a, b) in [(1, 2), (2, 2)] {
        let lhs = cs.lambda(pair, a * b);
        let rhs = &kron(&[&id(a), &cs.lambda(pair, b)]) * &kron(&[&cs.lambda(pair, a), &id(b)]);
        rep.equal(format!("λ on {a}⊗{b}"), &lhs, &rhs);
        let lhs = cs.chi(pair, a * b);
        let rhs = &kron(&[&id(a), &cs.chi(pair, b)]) * &kron(&[&cs.chi(pair, a), &id(b)]);
        rep.equal(format!("χ on {a}⊗{b}"), &lhs, &rhs);
    }
    let f = ExactMatrix::from_i64(&[&[1, 2], &[3, 5], &[0, 1]]);
    rep.equal(
        "λ natural",
        &(&kron(&[&f, &id(n)]) * &cs.lambda(pair, 2)),
        &(&cs.lambda(pair, 3) * &kron(&[&id(n), &f])),
    );
    rep.equal(
        "χ natural",
        &(&kron(&[&f, &id(m)]) * &cs.chi(pair, 2)),
        &(&cs.chi(pair, 3) * &kron(&[&id(m), &f])),
    );
    for x in 1..=2 {
        let (l, c) = (cs.lambda(pair, x), cs.chi(pair, x));
        let ix = id(x);
        rep.equal(
            format!("evl central at {x}"),
            &kron(&[&pair.evl, &ix]),
            &(&(&kron(&[&ix, &pair.evl]) * &kron(&[&c, &id(n)])) * &kron(&[&id(m), &l])),
        );
        rep.equal(
            format!("evr central at {x}"),
            &kron(&[&pair.evr, &ix]),
            &(&(&kron(&[&ix, &pair.evr]) * &kron(&[&l, &id(m)])) * &kron(&[&id(n), &c])),
        );
        rep.equal(
            format!("cvl central at {x}"),
            &(&(&kron(&[&l, &id(m)]) * &kron(&[&id(n), &c])) * &kron(&[&pair.cvl, &ix])),
            &kron(&[&ix, &pair.cvl]),
        );
        rep.equal(
            format!("cvr central at {x}"),
            &(&(&kron(&[&c, &id(n)]) * &kron(&[&id(m), &l])) * &kron(&[&pair.cvr, &ix])),
            &kron(&[&ix, &pair.cvr]),
        );
    }
    rep
}

/// `ξ : T_{≤d}(X) → X` on the carrier, from `ξ₊ = (X⊗evl)(χ⊗P)` and `ξ₋ = (X⊗evr)(λ⊗Q)`.
fn xi_star(t: &TruncatedT, cs: &dyn CentralStructure) -> ExactMatrix {
    let p = t.pair();
    let ix = id(t.dim_x());
    let plus = &kron(&[&ix, &p.evl]) * &kron(&[&cs.chi(p, t.dim_x()), &id(p.dim_p())]);
    let minus = &kron(&[&ix, &p.evr]) * &kron(&[&cs.lambda(p, t.dim_x()), &id(p.dim_q())]);
    iterated_star(t, &plus, &minus)
}

/// The augmentation `ξ` on the quotient, once it is known to be well defined.
pub fn augmentation(t: &TruncatedT, cs: &dyn CentralStructure) -> Result<ExactMatrix> {
    let star = xi_star(t, cs);
    if !kills_relations(t, &star) {
        return Err(Error::NotCentral("ξ does not factor through the quotient".into()));
    }
    Ok(on_quotient(t, &star))
}

/// Check that `ξ` is a bimonad morphism `T → id` at this truncation.
pub fn augmentation_check_with(t: &TruncatedT, cs: &dyn CentralStructure) -> Result<Report> {
    let pair = t.pair();
    let central = centrality_report(pair, cs);
    if let Some(c) = central.failures().next() {
        return Err(Error::NotCentral(c.name.clone()));
    }
    let d = t.degree();
    let mut rep = Report::new(format!("augmentation, dimX={}, degree {d}", t.dim_x()));
    rep.absorb("centrality", central);
    let star = xi_star(t, cs);
    rep.flag("ξ kills relations", kills_relations(t, &star), None);
    let xi = on_quotient(t, &star);
    rep.identity("ξ∘ν = id", &(&xi * &t.nu()));

    for a in 0..=d {
        let b = d - a;
        let mu = t.mu(a, b)?;
        let xi_b = on_quotient(&mu.inner, &xi_star(&mu.inner, cs));
        let low = truncate(pair, t.dim_x(), a)?;
        let t_xi = apply_functor(&mu.outer, &low, &xi_b)?;
        let xi_a = on_quotient(&low, &xi_star(&low, cs));
        rep.equal(format!("ξ∘μ({a},{b}) = ξ∘T(ξ)"), &(&xi * &mu.matrix), &(&xi_a * &t_xi));
    }

    let unit = truncate(pair, 1, d)?;
    let xi_unit = on_quotient(&unit, &xi_star(&unit, cs));
    rep.equal("ξ at unit = T₀", &xi_unit, &unit.t0()?);
    let t2 = t.comultiplication(t, &unit)?;
    rep.equal("(ξ⊗ξ)∘T₂ = ξ", &(&kron(&[&xi, &xi_unit]) * &t2), &xi);
    if t.dim_x() > 1 {
        let tx = truncate(pair, 1, d)?;
        let ty = truncate(pair, t.dim_x(), d)?;
        let t2 = t.comultiplication(&tx, &ty)?;
        rep.equal("(ξ⊗ξ)∘T₂ = ξ on 𝟙⊗X", &(&kron(&[&xi_unit, &xi]) * &t2), &xi);
    }
    Ok(rep)
}

/// [`augmentation_check_with`] for the flip braidings.
pub fn augmentation_check(t: &TruncatedT) -> Result<Report> {
    augmentation_check_with(t, &FlipBraiding)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{random_invertible, Scalar};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn pair(q: ExactMatrix) -> Arc<PivotalPair> {
        Arc::new(PivotalPair::from_matrix(q.rows(), &q).unwrap())
    }

    #[test]
    fn identity_pairs_are_augmented() {
        for n in 1..=2 {
            let pp = pair(id(n));
            let t = truncate(&pp, 1, 2).unwrap();
            let rep = augmentation_check(&t).unwrap();
            assert!(rep.passed, "{rep:#?}");
        }
        let pp = pair(id(1));
        let rep = augmentation_check(&truncate(&pp, 2, 2).unwrap()).unwrap();
        assert!(rep.passed, "{rep:#?}");
    }

    #[test]
    fn flip_is_central_for_every_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..3 {
            let pp = pair(random_invertible(&mut rng, 2, 3, 2));
            assert!(centrality_report(&pp, &FlipBraiding).passed);
            let rep = augmentation_check(&truncate(&pp, 1, 2).unwrap()).unwrap();
            assert!(rep.passed, "{rep:#?}");
        }
    }

    #[test]
    fn twisted_braiding_is_not_central() {
        let pp = pair(id(2));
        let t = truncate(&pp, 1, 2).unwrap();
        let twisted = ScaledBraiding {
            h_p: ExactMatrix::diagonal(&[Scalar::from_i64(2), Scalar::one()]),
            h_q: id(2),
        };
        assert!(matches!(augmentation_check_with(&t, &twisted), Err(Error::NotCentral(_))));
    }
}
