//! Seeded generators of valid objects and morphisms of `C(P,Q)`.

use std::sync::Arc;

use rand::Rng;

use super::{change_basis, direct_sum, id, morphism_space, tensor_objects, Intertwiner};
use crate::error::{Error, Result};
use crate::exactnum::{random_invertible, random_scalar, ExactMatrix};
use crate::pivpair::PivotalPair;

/// The one-dimensional object with `σ = cᵀ`; valid exactly when `c` commutes with `𝔔`.
pub fn character(pair: &Arc<PivotalPair>, c: &ExactMatrix) -> Result<Intertwiner> {
    Intertwiner::new(1, c.transpose(), pair.clone())
}

/// A random invertible matrix commuting with `q`.
pub fn random_commuting<R: Rng>(rng: &mut R, q: &ExactMatrix) -> ExactMatrix {
    let n = q.rows();
    let scalar_q = (0..n).all(|i| (0..n).all(|j| if i == j { q.get(i, i) == q.get(0, 0) } else { q.get(i, j).is_zero() }));
    if scalar_q {
        return random_invertible(rng, n, 3, 2);
    }
    let q2 = q * q;
    loop {
        let (a, b, c) = (
            random_scalar(rng, 3, 2),
            random_scalar(rng, 3, 2),
            random_scalar(rng, 2, 1),
        );
        let m = &(&id(n).scale(&a) + &q.scale(&b)) + &q2.scale(&c);
        if m.rank() == n {
            return m;
        }
    }
}

/// A random valid object of dimension `dim` over a pair with standard left duality.
pub fn random_object<R: Rng>(rng: &mut R, pair: &Arc<PivotalPair>, dim: usize) -> Result<Intertwiner> {
    let q = pair
        .q_matrix()
        .ok_or_else(|| Error::InvalidObject("sampling needs a pair with standard left duality".into()))?;
    let n = pair.dim_p();
    let obj = if n == 1 && rng.gen_bool(0.3) {
        Intertwiner::new(dim, random_invertible(rng, dim, 3, 2), pair.clone())?
    } else {
        let mut acc: Option<Intertwiner> = None;
        let mut remaining = dim;
        while remaining > 0 {
            let k = rng.gen_range(1..=remaining);
            let piece = match (k, rng.gen_range(0..3)) {
                (1, 0 | 1) => character(pair, &random_commuting(rng, &q))?,
                (_, 0) => Intertwiner::trivial(k, pair.clone()),
                _ => tensor_objects(
                    &character(pair, &random_commuting(rng, &q))?,
                    &Intertwiner::trivial(k, pair.clone()),
                )?,
            };
            acc = Some(match acc {
                None => piece,
                Some(a) => direct_sum(&a, &piece)?,
            });
            remaining -= k;
        }
        let sum = acc.unwrap_or_else(|| Intertwiner::unit(pair.clone()));
        change_basis(&sum, &random_invertible(rng, dim, 2, 2))?
    };
    let rep = obj.check();
    if !rep.passed {
        return Err(Error::InvalidObject(format!("sampler produced an invalid object: {rep:?}")));
    }
    Ok(obj)
}

/// A random morphism `a → b`: a random combination of a basis of the morphism space.
pub fn random_morphism<R: Rng>(rng: &mut R, a: &Intertwiner, b: &Intertwiner) -> Result<ExactMatrix> {
    let basis = morphism_space(a, b)?;
    let mut f = ExactMatrix::zeros(b.dim_x(), a.dim_x());
    for m in &basis {
        f = &f + &m.scale(&random_scalar(rng, 3, 2));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sampled_objects_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=2 {
            for _ in 0..5 {
                let q = random_invertible(&mut rng, n, 3, 2);
                let pp = Arc::new(PivotalPair::from_matrix(n, &q).unwrap());
                for d in 1..=3 {
                    let o = random_object(&mut rng, &pp, d).unwrap();
                    assert_eq!(o.dim_x(), d);
                }
            }
        }
    }

    #[test]
    fn non_standard_pairs_are_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let pp = PivotalPair::from_matrix(2, &id(2)).unwrap();
        let swapped = Arc::new(crate::pivpair::dual_pair(&crate::pivpair::PivotalPair::from_matrix(
            2,
            &ExactMatrix::from_i64(&[&[2, 0], &[0, 1]]),
        )
        .unwrap()));
        assert!(random_object(&mut rng, &Arc::new(pp), 1).is_ok());
        assert!(random_object(&mut rng, &swapped, 1).is_err());
    }
}
