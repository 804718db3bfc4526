//! Values computed once by the linear-algebra oracle and pinned here.

use std::sync::Arc;

use pivhopf::exactnum::ExactMatrix;
use pivhopf::freehopf::{build_presentation, complete, filtered_quotient_dim};
use pivhopf::gvec::{enumerate_supports, FiniteGroup};
use pivhopf::monadlim::truncate;
use pivhopf::pivpair::PivotalPair;

fn unipotent() -> ExactMatrix {
    ExactMatrix::from_i64(&[&[1, 1], &[0, 1]])
}

#[test]
fn filtration_dimensions_for_two_by_two() {
    for q in [ExactMatrix::identity(2), unipotent()] {
        let pres = build_presentation(2, &q).unwrap();
        let oracle: Vec<usize> = (0..=3).map(|d| filtered_quotient_dim(&pres, d)).collect();
        assert_eq!(oracle, vec![1, 9, 59, 363]);
        let rs = complete(&pres, 4).unwrap();
        assert_eq!(rs.normal_words(4).len(), 2207);
        assert_eq!(rs.normal_word_counts(3), vec![1, 8, 50, 304]);
    }
}

#[test]
fn truncated_monad_dimensions() {
    let pp = Arc::new(PivotalPair::from_matrix(2, &ExactMatrix::identity(2)).unwrap());
    let dims: Vec<usize> = (0..=2).map(|d| truncate(&pp, 1, d).unwrap().dim()).collect();
    assert_eq!(dims, vec![1, 9, 59]);
    assert_eq!(truncate(&pp, 2, 2).unwrap().dim(), 118);
}

#[test]
fn graded_enumeration_counts() {
    let s3 = FiniteGroup::symmetric3();
    let counts: Vec<usize> = (0..6).map(|g| enumerate_supports(&s3, g, 6).unwrap().len()).collect();
    let z6 = FiniteGroup::cyclic(6);
    // Conjugation is trivial in an abelian group: every grading of dimension ≤ 6 appears.
    assert!((0..6).all(|g| enumerate_supports(&z6, g, 6).unwrap().len() == 923));
    // Brute force over all multiplicity vectors gives the same counts.
    assert_eq!(counts, vec![923, 79, 79, 79, 104, 104]);
}
