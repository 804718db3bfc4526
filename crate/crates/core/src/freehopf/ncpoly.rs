use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use crate::exactnum::Scalar;

/// A word in the generators, compared degree-lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<u16>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: u16) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// First position where `pat` occurs as a contiguous subword.
    pub fn find(&self, pat: &Word) -> Option<usize> {
        if pat.len() > self.len() {
            return None;
        }
        if pat.is_empty() {
            return Some(0);
        }
        self.0.windows(pat.len()).position(|w| w == pat.0.as_slice())
    }

    pub fn slice(&self, r: std::ops::Range<usize>) -> Word {
        Word(self.0[r].to_vec())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A noncommutative polynomial: like terms combined, zero coefficients dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NCPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        NCPoly::term(c, Word::empty())
    }

    pub fn one() -> Self {
        NCPoly::constant(Scalar::one())
    }

    pub fn term(c: Scalar, w: Word) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(c, w);
        p
    }

    pub fn word(w: Word) -> Self {
        NCPoly::term(Scalar::one(), w)
    }

    pub fn add_term(&mut self, c: Scalar, w: Word) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &NCPoly) {
        for (w, v) in &other.terms {
            self.add_term(c * v, w.clone());
        }
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().map_or(0, Word::len)
    }

    /// The largest word in the term order with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        let mut out = NCPoly::zero();
        out.add_scaled(c, self);
        out
    }

    /// The constant term.
    pub fn constant_term(&self) -> Scalar {
        self.terms.get(&Word::empty()).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Word::is_empty)
    }

    /// `left · self · right` for words.
    pub fn wrap(&self, left: &Word, right: &Word) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (left.concat(w).concat(right), c.clone()))
                .collect(),
        }
    }
}

impl Add<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), rhs);
        out
    }
}

impl Sub<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(&Scalar::from_i64(-1), rhs);
        out
    }
}

impl Mul<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(x * y, a.concat(b));
            }
        }
        out
    }
}

/// An element of the `k`-fold tensor power of the free algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorPoly {
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl TensorPoly {
    pub fn zero() -> Self {
        TensorPoly::default()
    }

    pub fn unit(legs: usize) -> Self {
        let mut t = TensorPoly::zero();
        t.add_term(Scalar::one(), vec![Word::empty(); legs]);
        t
    }

    pub fn add_term(&mut self, c: Scalar, legs: Vec<Word>) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&legs) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&legs);
                }
            }
            None => {
                self.terms.insert(legs, c);
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Word>, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Legwise product.
    pub fn mul(&self, other: &TensorPoly) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let legs = a.iter().zip(b).map(|(u, v)| u.concat(v)).collect();
                out.add_term(x * y, legs);
            }
        }
        out
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &TensorPoly) {
        for (legs, v) in &other.terms {
            self.add_term(c * v, legs.clone());
        }
    }

    /// Replace leg `k` of every term by the polynomial `f(word)`.
    pub fn map_leg(&self, k: usize, mut f: impl FnMut(&Word) -> NCPoly) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for (legs, c) in &self.terms {
            for (w, d) in f(&legs[k]).terms() {
                let mut l = legs.clone();
                l[k] = w.clone();
                out.add_term(c * d, l);
            }
        }
        out
    }

    /// Replace leg `k` by a tensor element of several legs.
    pub fn expand_leg(&self, k: usize, mut f: impl FnMut(&Word) -> TensorPoly) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for (legs, c) in &self.terms {
            for (inner, d) in f(&legs[k]).terms() {
                let mut l: Vec<Word> = legs[..k].to_vec();
                l.extend(inner.iter().cloned());
                l.extend(legs[k + 1..].iter().cloned());
                out.add_term(c * d, l);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deglex_order() {
        let a = Word(vec![5]);
        let b = Word(vec![0, 0]);
        let c = Word(vec![0, 1]);
        assert!(a < b && b < c);
        assert!(Word::empty() < a);
    }

    #[test]
    fn like_terms_cancel() {
        let mut p = NCPoly::word(Word(vec![1, 2]));
        p.add_term(Scalar::from_i64(-1), Word(vec![1, 2]));
        assert!(p.is_zero());
        let x = NCPoly::word(Word::letter(0));
        let y = &x + &NCPoly::one();
        let sq = &y * &y;
        assert_eq!(sq.terms().len(), 3);
        assert_eq!(sq.leading().unwrap().0, &Word(vec![0, 0]));
        assert_eq!(Word(vec![1, 2, 3]).find(&Word(vec![2, 3])), Some(1));
    }
}
