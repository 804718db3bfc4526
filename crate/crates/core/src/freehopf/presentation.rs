use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ncpoly::{NCPoly, TensorPoly, Word};
use crate::error::{Error, Result};
use crate::exactnum::{ExactMatrix, Scalar};

/// Generator index of `f[i][j]` (0-based).
pub fn f_gen(n: usize, i: usize, j: usize) -> u16 {
    (i * n + j) as u16
}

/// Generator index of `e[i][j]` (0-based).
pub fn e_gen(n: usize, i: usize, j: usize) -> u16 {
    (n * n + i * n + j) as u16
}

/// Printable name `f[i][j]` or `e[i][j]`, 1-based.
pub fn gen_name(n: usize, g: u16) -> String {
    let g = g as usize;
    let (letter, k) = if g < n * n { ('f', g) } else { ('e', g - n * n) };
    format!("{letter}[{}][{}]", k / n + 1, k % n + 1)
}

pub fn parse_gen(n: usize, name: &str) -> Option<u16> {
    let (letter, rest) = name.split_at(1);
    let rest = rest.strip_prefix('[')?.strip_suffix(']')?;
    let (i, j) = rest.split_once("][")?;
    let (i, j): (usize, usize) = (i.parse().ok()?, j.parse().ok()?);
    if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return None;
    }
    match letter {
        "f" => Some(f_gen(n, i - 1, j - 1)),
        "e" => Some(e_gen(n, i - 1, j - 1)),
        _ => None,
    }
}

pub fn word_names(n: usize, w: &Word) -> Vec<String> {
    w.0.iter().map(|&g| gen_name(n, g)).collect()
}

fn delta_ik(i: usize, k: usize) -> Scalar {
    if i == k {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

/// The presentation of `H(𝔔)` with its coalgebra structure and antipode.
#[derive(Clone, Debug)]
pub struct NCPresentation {
    pub n: usize,
    pub q: ExactMatrix,
    pub p: ExactMatrix,
    /// Relations `lhs − rhs`, four families of `n²` each.
    pub relations: Vec<NCPoly>,
    pub delta: Vec<TensorPoly>,
    pub counit: Vec<Scalar>,
    pub antipode: Vec<NCPoly>,
}

pub fn build_presentation(n: usize, q: &ExactMatrix) -> Result<NCPresentation> {
    if q.shape() != (n, n) || n == 0 {
        return Err(Error::ShapeMismatch(format!("Q must be {n}x{n}")));
    }
    let p = q.invert()?;
    let (f, e) = (|i, j| f_gen(n, i, j), |i, j| e_gen(n, i, j));
    let w2 = |a: u16, b: u16| Word(vec![a, b]);

    let mut relations = Vec::with_capacity(4 * n * n);
    for family in 0..4 {
        for i in 0..n {
            for k in 0..n {
                let mut r = NCPoly::zero();
                match family {
                    0 => {
                        for j in 0..n {
                            r.add_term(Scalar::one(), w2(f(j, k), e(j, i)));
                        }
                        r.add_term(-p.get(i, k), Word::empty());
                    }
                    1 => {
                        for j in 0..n {
                            r.add_term(Scalar::one(), w2(f(i, j), e(k, j)));
                        }
                        r.add_term(-p.get(i, k), Word::empty());
                    }
                    2 => {
                        for j in 0..n {
                            for l in 0..n {
                                r.add_term(q.get(j, l).clone(), w2(e(j, i), f(l, k)));
                            }
                        }
                        r.add_term(-delta_ik(i, k), Word::empty());
                    }
                    _ => {
                        for j in 0..n {
                            for l in 0..n {
                                r.add_term(q.get(l, j).clone(), w2(e(i, j), f(k, l)));
                            }
                        }
                        r.add_term(-delta_ik(i, k), Word::empty());
                    }
                }
                relations.push(r);
            }
        }
    }

    let gens = 2 * n * n;
    let mut delta = vec![TensorPoly::zero(); gens];
    let mut counit = vec![Scalar::zero(); gens];
    let mut antipode = vec![NCPoly::zero(); gens];
    for i in 0..n {
        for k in 0..n {
            let (ge, gf) = (e(i, k) as usize, f(i, k) as usize);
            for j in 0..n {
                delta[ge].add_term(Scalar::one(), vec![Word::letter(e(i, j)), Word::letter(e(j, k))]);
                for l in 0..n {
                    delta[gf].add_term(
                        q.get(j, l).clone(),
                        vec![Word::letter(f(i, j)), Word::letter(f(l, k))],
                    );
                }
            }
            counit[ge] = delta_ik(i, k);
            counit[gf] = p.get(i, k).clone();
            for l in 0..n {
                antipode[ge].add_term(q.get(l, i).clone(), Word::letter(f(k, l)));
                antipode[gf].add_term(p.get(i, l).clone(), Word::letter(e(k, l)));
            }
        }
    }
    Ok(NCPresentation {
        n,
        q: q.clone(),
        p,
        relations,
        delta,
        counit,
        antipode,
    })
}

impl NCPresentation {
    pub fn generator_count(&self) -> usize {
        2 * self.n * self.n
    }

    pub fn delta_word(&self, w: &Word) -> TensorPoly {
        w.0.iter()
            .fold(TensorPoly::unit(2), |acc, &g| acc.mul(&self.delta[g as usize]))
    }

    pub fn delta_poly(&self, p: &NCPoly) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for (w, c) in p.terms() {
            out.add_scaled(c, &self.delta_word(w));
        }
        out
    }

    pub fn counit_word(&self, w: &Word) -> Scalar {
        w.0.iter()
            .fold(Scalar::one(), |acc, &g| &acc * &self.counit[g as usize])
    }

    pub fn counit_poly(&self, p: &NCPoly) -> Scalar {
        p.terms()
            .iter()
            .fold(Scalar::zero(), |acc, (w, c)| &acc + &(c * &self.counit_word(w)))
    }

    /// `S(g₁…g_m) = S(g_m)…S(g₁)`.
    pub fn antipode_word(&self, w: &Word) -> NCPoly {
        w.0.iter()
            .rev()
            .fold(NCPoly::one(), |acc, &g| &acc * &self.antipode[g as usize])
    }

    pub fn antipode_poly(&self, p: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in p.terms() {
            out.add_scaled(c, &self.antipode_word(w));
        }
        out
    }

    pub fn q_is_identity(&self) -> bool {
        self.q.is_identity()
    }

    pub fn to_json(&self) -> PresentationJson {
        let n = self.n;
        let poly = |p: &NCPoly| -> PolyJson {
            p.terms()
                .iter()
                .map(|(w, c)| (c.to_string(), word_names(n, w)))
                .collect()
        };
        let gens: Vec<u16> = (0..self.generator_count() as u16).collect();
        PresentationJson {
            n,
            q: self.q.clone(),
            generators: gens.iter().map(|&g| gen_name(n, g)).collect(),
            relations: self.relations.iter().map(poly).collect(),
            delta: gens
                .iter()
                .map(|&g| {
                    let terms = self.delta[g as usize]
                        .terms()
                        .iter()
                        .map(|(legs, c)| (c.to_string(), word_names(n, &legs[0]), word_names(n, &legs[1])))
                        .collect();
                    (gen_name(n, g), terms)
                })
                .collect(),
            counit: gens
                .iter()
                .map(|&g| (gen_name(n, g), self.counit[g as usize].to_string()))
                .collect(),
            antipode: gens
                .iter()
                .map(|&g| (gen_name(n, g), poly(&self.antipode[g as usize])))
                .collect(),
        }
    }
}

/// `(coefficient, word)` terms of an exported polynomial.
pub type PolyJson = Vec<(String, Vec<String>)>;
/// Coproduct terms as coefficient, left word, right word.
pub type CoproductJson = Vec<(String, Vec<String>, Vec<String>)>;

/// The exported form of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub n: usize,
    #[serde(rename = "Q")]
    pub q: ExactMatrix,
    pub generators: Vec<String>,
    pub relations: Vec<PolyJson>,
    pub delta: BTreeMap<String, CoproductJson>,
    pub counit: BTreeMap<String, String>,
    pub antipode: BTreeMap<String, PolyJson>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for n in 1..=3 {
            for g in 0..(2 * n * n) as u16 {
                assert_eq!(parse_gen(n, &gen_name(n, g)), Some(g));
            }
        }
        assert_eq!(gen_name(2, e_gen(2, 1, 0)), "e[2][1]");
        assert_eq!(parse_gen(2, "e[3][1]"), None);
    }

    #[test]
    fn scalar_presentation() {
        let pres = build_presentation(1, &ExactMatrix::diagonal(&[Scalar::from_i64(3)])).unwrap();
        let (f, e) = (f_gen(1, 0, 0), e_gen(1, 0, 0));
        let fe = {
            let mut r = NCPoly::word(Word(vec![f, e]));
            r.add_term(Scalar::ratio(-1, 3), Word::empty());
            r
        };
        let qef = {
            let mut r = NCPoly::term(Scalar::from_i64(3), Word(vec![e, f]));
            r.add_term(Scalar::from_i64(-1), Word::empty());
            r
        };
        assert_eq!(pres.relations, vec![fe.clone(), fe, qef.clone(), qef]);
        assert_eq!(pres.counit[f as usize], Scalar::ratio(1, 3));
        assert_eq!(pres.antipode[e as usize], NCPoly::term(Scalar::from_i64(3), Word::letter(f)));
    }

    #[test]
    fn identity_presentation_counts() {
        let pres = build_presentation(2, &ExactMatrix::identity(2)).unwrap();
        assert_eq!(pres.relations.len(), 16);
        assert_eq!(pres.generator_count(), 8);
        let pres1 = build_presentation(1, &ExactMatrix::identity(1)).unwrap();
        let (f, e) = (Word::letter(0), Word::letter(1));
        assert_eq!(pres1.antipode_word(&f), NCPoly::word(e.clone()));
        assert_eq!(pres1.delta_word(&e).terms().len(), 1);
        assert!(matches!(
            build_presentation(2, &ExactMatrix::zeros(2, 2)),
            Err(Error::SingularMatrix)
        ));
    }
}
