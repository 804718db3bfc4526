//! Exact scalars and matrices over `Q` or a prime field.

mod echelon;
mod matrix;
mod scalar;

pub use echelon::{EchelonBasis, SparseVec};
pub use matrix::ExactMatrix;
pub use scalar::{Field, Scalar};

use rand::Rng;

/// A random rational with numerator in `-range..=range` and denominator in `1..=den`.
pub fn random_scalar<R: Rng>(rng: &mut R, range: i64, den: i64) -> Scalar {
    let n = rng.gen_range(-range..=range);
    let d = rng.gen_range(1..=den.max(1));
    Scalar::ratio(n, d)
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, range: i64, den: i64) -> ExactMatrix {
    ExactMatrix::from_fn(rows, cols, |_, _| random_scalar(rng, range, den))
}

/// A random invertible matrix with small entries.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize, range: i64, den: i64) -> ExactMatrix {
    loop {
        let m = random_matrix(rng, n, n, range, den);
        if m.rank() == n {
            return m;
        }
    }
}
