use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// A dense matrix over an exact field, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Build from integer rows. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_i64(v)).collect())
                .collect(),
        )
        .expect("rectangular integer rows")
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    /// The column vector with a single one at `index`.
    pub fn unit_column(dim: usize, index: usize) -> Self {
        let mut m = Self::zeros(dim, 1);
        m.data[index] = Scalar::one();
        m
    }

    /// The permutation `A ⊗ B → B ⊗ A`.
    pub fn swap(a: usize, b: usize) -> Self {
        let mut m = Self::zeros(a * b, a * b);
        for i in 0..a {
            for j in 0..b {
                m.data[(j * a + i) * (a * b) + i * b + j] = Scalar::one();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> ExactMatrix {
        ExactMatrix::from_fn(self.rows, 1, |i, _| self.get(i, j).clone())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|e| !e.is_zero()).count()
    }

    /// The modulus of the first residue entry, if any.
    pub fn modulus(&self) -> Option<u64> {
        self.data.iter().find_map(Scalar::modulus)
    }

    pub fn embed(&self, field: Field) -> Result<ExactMatrix> {
        let data = self
            .data
            .iter()
            .map(|e| field.embed(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix { data, ..*self })
    }

    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &Scalar) -> ExactMatrix {
        ExactMatrix {
            data: self.data.iter().map(|e| e * s).collect(),
            ..*self
        }
    }

    pub fn try_mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        let oc = other.cols;
        for i in 0..self.rows {
            let row = &mut out.data[i * oc..(i + 1) * oc];
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let brow = &other.data[k * oc..(k + 1) * oc];
                if a.is_one() {
                    for (acc, b) in row.iter_mut().zip(brow) {
                        if !b.is_zero() {
                            *acc += b;
                        }
                    }
                } else {
                    for (acc, b) in row.iter_mut().zip(brow) {
                        if !b.is_zero() {
                            *acc += &(a * b);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &ExactMatrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<ExactMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(ExactMatrix {
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
            ..*self
        })
    }

    pub fn try_add(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Kronecker product: `(A⊗B)[i1*rB+i2, j1*cB+j2] = A[i1,j1]·B[i2,j2]`.
    pub fn kron(&self, other: &ExactMatrix) -> ExactMatrix {
        let (ra, ca) = self.shape();
        let (rb, cb) = other.shape();
        let mut out = ExactMatrix::zeros(ra * rb, ca * cb);
        let oc = ca * cb;
        for i1 in 0..ra {
            for j1 in 0..ca {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..rb {
                    for j2 in 0..cb {
                        let b = other.get(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        out.data[(i1 * rb + i2) * oc + j1 * cb + j2] = a * b;
                    }
                }
            }
        }
        out
    }

    /// Left-to-right Kronecker product of a list; the empty product is `[[1]]`.
    pub fn kron_all(factors: &[&ExactMatrix]) -> ExactMatrix {
        factors
            .iter()
            .fold(ExactMatrix::identity(1), |acc, f| acc.kron(f))
    }

    pub fn hstack(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch("hstack row counts differ".into()));
        }
        Ok(ExactMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn vstack(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(ExactMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn block_diag(blocks: &[&ExactMatrix]) -> ExactMatrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = ExactMatrix::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> ExactMatrix {
        let c0 = cols.start;
        let r0 = rows.start;
        ExactMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inverse().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&factor * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Rank. Rational matrices use fraction-free Bareiss elimination on
    /// integer-scaled rows; residue matrices use Gaussian elimination.
    pub fn rank(&self) -> usize {
        if self.modulus().is_some() {
            return self.rref().1.len();
        }
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = row.iter().fold(BigInt::one(), |acc, e| {
                    acc.lcm(e.as_rational().expect("rational entry").denom())
                });
                row.iter()
                    .map(|e| {
                        let r = e.as_rational().expect("rational entry");
                        r.numer() * (&lcm / r.denom())
                    })
                    .collect()
            })
            .collect();
        let mut rank = 0;
        let mut prev = BigInt::one();
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let pivot = a[rank][c].clone();
            for i in rank + 1..self.rows {
                let (top, rest) = a.split_at_mut(i);
                let (row, piv) = (&mut rest[0], &top[rank]);
                let lead = row[c].clone();
                for (x, y) in row[c + 1..].iter_mut().zip(&piv[c + 1..]) {
                    *x = (&*x * &pivot - &lead * y) / &prev;
                }
                row[c] = BigInt::zero();
            }
            prev = pivot;
            rank += 1;
        }
        rank
    }

    /// Basis of the right kernel, as columns of the returned matrix.
    pub fn kernel(&self) -> ExactMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = ExactMatrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, Scalar::one());
            for (row, &p) in pivots.iter().enumerate() {
                out.set(p, k, -r.get(row, f));
            }
        }
        out
    }

    pub fn invert(&self) -> Result<ExactMatrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let aug = self.hstack(&ExactMatrix::identity(n))?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        Ok(r.submatrix(0..n, n..2 * n))
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Scalar::zero());
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = &det * &pivot;
            let inv = pivot.inverse()?;
            for i in c + 1..n {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Entries as nested string rows.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Scalar::to_string).collect())
            .collect()
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(Scalar::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Mul<&ExactMatrix> for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_mul(rhs).expect("compatible shapes")
    }
}

impl Mul<ExactMatrix> for ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: ExactMatrix) -> ExactMatrix {
        &self * &rhs
    }
}

impl Add<&ExactMatrix> for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_add(rhs).expect("equal shapes")
    }
}

impl Sub<&ExactMatrix> for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_sub(rhs).expect("equal shapes")
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        ExactMatrix {
            data: self.data.iter().map(|e| -e).collect(),
            ..*self
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.data.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Flat(MatrixJson),
            Nested(Vec<Vec<Scalar>>),
        }
        match Raw::deserialize(d)? {
            Raw::Flat(m) => ExactMatrix::new(m.rows, m.cols, m.entries).map_err(serde::de::Error::custom),
            Raw::Nested(rows) => ExactMatrix::from_rows(rows).map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_convention() {
        let a = ExactMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        let b = ExactMatrix::from_i64(&[&[0, 5], &[6, 7]]);
        let k = a.kron(&b);
        // Row (i, k) = 2i + k, column (j, l) = 2j + l.
        assert_eq!(k.get(2, 1), &Scalar::from_i64(3 * 5));
        assert_eq!(k.get(1, 2), &Scalar::from_i64(2 * 6));
    }

    #[test]
    fn invert_and_singular() {
        let a = ExactMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = a.invert().unwrap();
        assert!((&a * &inv).is_identity());
        let s = ExactMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.invert(), Err(Error::SingularMatrix));
    }

    #[test]
    fn rank_and_kernel() {
        let m = ExactMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.cols(), 1);
        assert!((&m * &k).is_zero());
    }

    #[test]
    fn swap_is_flip() {
        let a = ExactMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        let b = ExactMatrix::from_i64(&[&[5, 6, 7]]);
        let s_src = ExactMatrix::swap(2, 1);
        let s_tgt = ExactMatrix::swap(2, 1);
        let lhs = &s_tgt * &a.kron(&b);
        let rhs = &b.kron(&a) * &ExactMatrix::swap(2, 3);
        assert_eq!(lhs, rhs);
        assert!((&s_src * &ExactMatrix::swap(1, 2)).is_identity());
    }

    #[test]
    fn json_round_trip() {
        let m = ExactMatrix::from_rows(vec![vec![Scalar::ratio(1, 2), Scalar::from_i64(-3)]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":1,"cols":2,"entries":["1/2","-3"]}"#);
        let back: ExactMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let nested: ExactMatrix = serde_json::from_str(r#"[["1","2/3"],[0,1]]"#).unwrap();
        assert_eq!(nested.shape(), (2, 2));
    }

    #[test]
    fn prime_field_elimination() {
        let m = ExactMatrix::from_i64(&[&[1, 2], &[3, 4]]).embed(Field::Prime(2)).unwrap();
        // det = -2 = 0 mod 2
        assert_eq!(m.rank(), 1);
        assert!(m.invert().is_err());
    }
}
