//! The Hopf algebra `H(𝔔)` given by generators `f[i][j]`, `e[i][j]` and relations.

mod modules;
mod ncpoly;
mod presentation;
mod rewrite;
mod verify;

use std::collections::HashMap;

pub use modules::{action_from_intertwiner, intertwiner_from_action, GeneratorAction};
pub use ncpoly::{NCPoly, TensorPoly, Word};
pub use presentation::{
    build_presentation, e_gen, f_gen, gen_name, parse_gen, word_names, NCPresentation, PresentationJson,
};
pub use rewrite::{complete, Confluence, RewriteSystem, Rule};
pub use verify::{verify_hopf, verify_with};

use crate::exactnum::{EchelonBasis, SparseVec};

/// All words of length at most `d` over `letters` symbols, in term order.
pub fn all_words(letters: usize, d: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..d {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..letters as u16).map(move |g| {
                    let mut v = w.0.clone();
                    v.push(g);
                    Word(v)
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// `dim` of the span of words of length `≤ d` modulo all `u·r·v` of length `≤ d`,
/// by plain linear algebra; independent of any rewriting.
pub fn filtered_quotient_dim(pres: &NCPresentation, d: usize) -> usize {
    let words = all_words(pres.generator_count(), d);
    let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut span = EchelonBasis::new(words.len());
    for r in &pres.relations {
        let rd = r.degree();
        if rd > d {
            continue;
        }
        for u in words.iter().filter(|u| u.len() + rd <= d) {
            for v in words.iter().filter(|v| u.len() + rd + v.len() <= d) {
                let vec: SparseVec = r
                    .wrap(u, v)
                    .terms()
                    .iter()
                    .map(|(w, c)| (index[w], c.clone()))
                    .collect();
                span.insert(vec);
            }
        }
    }
    words.len() - span.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{ExactMatrix, Scalar};

    #[test]
    fn laurent_filtration() {
        for q in [1, 3] {
            let pres = build_presentation(1, &ExactMatrix::diagonal(&[Scalar::from_i64(q)])).unwrap();
            for d in 0..=4 {
                assert_eq!(filtered_quotient_dim(&pres, d), 2 * d + 1);
            }
        }
    }

    #[test]
    fn rewriting_matches_linear_algebra() {
        for q in [ExactMatrix::identity(2), ExactMatrix::from_i64(&[&[1, 1], &[0, 1]])] {
            let pres = build_presentation(2, &q).unwrap();
            let rs = complete(&pres, 2).unwrap();
            assert_eq!(rs.normal_words(2).len(), filtered_quotient_dim(&pres, 2));
        }
    }
}
