use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::ncpoly::{NCPoly, Word};
use super::presentation::{gen_name, NCPresentation};
use crate::error::{Error, Result};
use crate::exactnum::{ExactMatrix, Scalar};
use crate::intertwine::Intertwiner;
use crate::pivpair::PivotalPair;
use crate::report::Report;

/// Matrices by which the generators act on a carrier of dimension `dim_x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorAction {
    pub n: usize,
    #[serde(rename = "dimX")]
    pub dim_x: usize,
    /// `f[i][j]` at index `i·n+j`.
    pub f: Vec<ExactMatrix>,
    /// `e[i][j]` at index `i·n+j`.
    pub e: Vec<ExactMatrix>,
}

impl GeneratorAction {
    pub fn generator(&self, g: u16) -> &ExactMatrix {
        let g = g as usize;
        let nn = self.n * self.n;
        if g < nn {
            &self.f[g]
        } else {
            &self.e[g - nn]
        }
    }

    /// `g₁⋯g_m` acts as `act(g₁)⋯act(g_m)`.
    pub fn act_word(&self, w: &Word) -> ExactMatrix {
        w.0.iter()
            .fold(ExactMatrix::identity(self.dim_x), |acc, &g| &acc * self.generator(g))
    }

    pub fn act_poly(&self, p: &NCPoly) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.dim_x, self.dim_x);
        for (w, c) in p.terms() {
            out = &out + &self.act_word(w).scale(c);
        }
        out
    }

    /// Evaluate every relation of `pres` on this action.
    pub fn relation_report(&self, pres: &NCPresentation) -> Report {
        let mut rep = Report::new("relations on module");
        for (k, r) in pres.relations.iter().enumerate() {
            rep.zero(format!("relation {k}"), &self.act_poly(r));
        }
        rep
    }

    /// Whether `h : self → other` commutes with every generator.
    pub fn is_module_map(&self, h: &ExactMatrix, other: &GeneratorAction) -> bool {
        if h.shape() != (other.dim_x, self.dim_x) || self.n != other.n {
            return false;
        }
        (0..2 * self.n * self.n).all(|g| {
            let g = g as u16;
            other.generator(g) * h == h * self.generator(g)
        })
    }

    pub fn describe(&self) -> Vec<(String, ExactMatrix)> {
        (0..2 * self.n * self.n)
            .map(|g| (gen_name(self.n, g as u16), self.generator(g as u16).clone()))
            .collect()
    }
}

fn check_pair_matches(pair: &PivotalPair, pres: &NCPresentation) -> Result<()> {
    match pair.q_matrix() {
        Some(q) if q == pres.q && pair.dim_p() == pres.n => Ok(()),
        _ => Err(Error::InvalidObject(
            "object is not over the pair of this presentation".into(),
        )),
    }
}

/// `act(e[i][j]) = α_σ(qᵢ⊗–⊗p_j)`, `act(f[i][j]) = β_σ(pᵢ⊗–⊗q_j)`.
pub fn action_from_intertwiner(obj: &Intertwiner, pres: &NCPresentation) -> Result<GeneratorAction> {
    check_pair_matches(obj.pair(), pres)?;
    let rep = obj.check();
    if !rep.passed {
        let first = rep.failures().next().map(|c| c.name.clone()).unwrap_or_default();
        return Err(Error::InvalidObject(first));
    }
    let (n, dx) = (pres.n, obj.dim_x());
    let sigma = obj.sigma();
    let inv = obj.sigma_inv()?;
    let mut e = Vec::with_capacity(n * n);
    let mut f = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            e.push(ExactMatrix::from_fn(dx, dx, |b, a| sigma.get(i * dx + b, a * n + j).clone()));
            f.push(ExactMatrix::from_fn(dx, dx, |c, a| {
                (0..n).fold(Scalar::zero(), |acc, k| {
                    &acc + &(inv.get(c * n + k, i * dx + a) * pres.p.get(k, j))
                })
            }));
        }
    }
    Ok(GeneratorAction { n, dim_x: dx, f, e })
}

/// Rebuild `σ = (P⊗α)(cvl⊗X⊗P)` from the `e`-actions.
pub fn intertwiner_from_action(act: &GeneratorAction, pres: &NCPresentation) -> Result<Intertwiner> {
    let (n, dx) = (pres.n, act.dim_x);
    if act.n != n || act.e.len() != n * n || act.f.len() != n * n {
        return Err(Error::ShapeMismatch(format!("action needs {} matrices per letter", n * n)));
    }
    if act.e.iter().chain(&act.f).any(|m| m.shape() != (dx, dx)) {
        return Err(Error::ShapeMismatch(format!("generator actions must be {dx}x{dx}")));
    }
    let rep = act.relation_report(pres);
    if let Some(c) = rep.failures().next() {
        return Err(Error::RelationViolated(c.name.clone()));
    }
    // α : Q⊗X⊗P → X, column (i·dX+a)·n+j.
    let alpha = ExactMatrix::from_fn(dx, n * dx * n, |b, col| {
        let (i, a, j) = (col / (dx * n), (col / n) % dx, col % n);
        act.e[i * n + j].get(b, a).clone()
    });
    let pair = Arc::new(PivotalPair::from_matrix(n, &pres.q)?);
    let ip = ExactMatrix::identity(n);
    let ix = ExactMatrix::identity(dx);
    let sigma = &ExactMatrix::kron_all(&[&ip, &alpha])
        * &ExactMatrix::kron_all(&[&pair.cvl, &ix, &ip]);
    let obj = Intertwiner::validated(dx, sigma, pair)?;
    if &action_from_intertwiner(&obj, pres)? != act {
        return Err(Error::RelationViolated(
            "f-actions disagree with the rebuilt intertwining".into(),
        ));
    }
    Ok(obj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freehopf::presentation::build_presentation;
    use crate::intertwine::samples::random_object;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn scalar(v: Scalar) -> ExactMatrix {
        ExactMatrix::diagonal(&[v])
    }

    #[test]
    fn unit_object_gives_counit() {
        for q in [ExactMatrix::identity(2), ExactMatrix::from_i64(&[&[1, 1], &[0, 1]])] {
            let pres = build_presentation(2, &q).unwrap();
            let pair = Arc::new(PivotalPair::from_matrix(2, &q).unwrap());
            let act = action_from_intertwiner(&Intertwiner::unit(pair.clone()), &pres).unwrap();
            for g in 0..8u16 {
                assert_eq!(act.generator(g).get(0, 0), &pres.counit[g as usize]);
            }
            assert_eq!(intertwiner_from_action(&act, &pres).unwrap(), Intertwiner::unit(pair));
        }
    }

    #[test]
    fn scalar_object() {
        let q = scalar(Scalar::from_i64(3));
        let pres = build_presentation(1, &q).unwrap();
        let pair = Arc::new(PivotalPair::from_matrix(1, &q).unwrap());
        let s = Scalar::ratio(5, 2);
        let obj = Intertwiner::new(1, scalar(s.clone()), pair).unwrap();
        let act = action_from_intertwiner(&obj, &pres).unwrap();
        assert_eq!(act.e[0], scalar(s.clone()));
        // β carries the twist p = 1/q along with s⁻¹.
        assert_eq!(act.f[0], scalar(&s.inverse().unwrap() * &Scalar::ratio(1, 3)));
        assert_eq!(intertwiner_from_action(&act, &pres).unwrap(), obj);
    }

    #[test]
    fn random_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [ExactMatrix::identity(2), ExactMatrix::from_i64(&[&[2, 1], &[0, 1]])] {
            let pres = build_presentation(2, &q).unwrap();
            let pair = Arc::new(PivotalPair::from_matrix(2, &q).unwrap());
            for dim in 1..=3 {
                let obj = random_object(&mut rng, &pair, dim).unwrap();
                let act = action_from_intertwiner(&obj, &pres).unwrap();
                assert!(act.relation_report(&pres).passed);
                assert_eq!(intertwiner_from_action(&act, &pres).unwrap(), obj);
            }
        }
    }

    #[test]
    fn violated_relations_rejected() {
        let pres = build_presentation(1, &ExactMatrix::identity(1)).unwrap();
        let act = GeneratorAction {
            n: 1,
            dim_x: 1,
            f: vec![scalar(Scalar::from_i64(2))],
            e: vec![scalar(Scalar::from_i64(2))],
        };
        assert!(matches!(
            intertwiner_from_action(&act, &pres),
            Err(Error::RelationViolated(_))
        ));
    }
}
