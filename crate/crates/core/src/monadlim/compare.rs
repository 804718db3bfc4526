use super::TruncatedT;
use crate::freehopf::{complete, filtered_quotient_dim, NCPresentation};
use crate::report::Report;

/// `dim F_dH` as (normal-form count, linear-algebra oracle).
pub fn hopf_filtration_dim(pres: &NCPresentation, d: usize) -> (Option<usize>, usize) {
    let oracle = filtered_quotient_dim(pres, d);
    let fast = match d {
        0 => Some(1),
        1 => Some(1 + pres.generator_count()),
        _ => complete(pres, d).ok().map(|rs| rs.normal_words(d).len()),
    };
    (fast, oracle)
}

/// Compare `dim T_{≤d}(X)` with `dimX · dim F_dH`, computing the latter two ways.
pub fn compare_with_hopf(t: &TruncatedT, pres: &NCPresentation) -> Report {
    let d = t.degree();
    let mut rep = Report::new(format!("monad vs Hopf algebra, dimX={}, degree {d}", t.dim_x()));
    let same = t.n() == pres.n && t.pair().q_matrix().as_ref() == Some(&pres.q);
    rep.flag("same matrix", same, None);
    let (fast, oracle) = hopf_filtration_dim(pres, d);
    rep.flag(
        "normal forms = oracle",
        fast == Some(oracle),
        Some(format!("normal forms {fast:?}, oracle {oracle}")),
    );
    rep.flag(
        "dim T = dimX · dim F_dH",
        t.dim() == t.dim_x() * oracle,
        Some(format!("{} vs {}·{}", t.dim(), t.dim_x(), oracle)),
    );
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{ExactMatrix, Scalar};
    use crate::freehopf::build_presentation;
    use crate::monadlim::truncate;
    use crate::pivpair::PivotalPair;
    use std::sync::Arc;

    #[test]
    fn dimensions_agree() {
        let cases = [
            (ExactMatrix::identity(1), 4, 2),
            (ExactMatrix::diagonal(&[Scalar::from_i64(3)]), 4, 1),
            (ExactMatrix::identity(2), 2, 1),
        ];
        for (q, dmax, xmax) in cases {
            let n = q.rows();
            let pres = build_presentation(n, &q).unwrap();
            let pp = Arc::new(PivotalPair::from_matrix(n, &q).unwrap());
            for d in 0..=dmax {
                for dx in 1..=xmax {
                    let rep = compare_with_hopf(&truncate(&pp, dx, d).unwrap(), &pres);
                    assert!(rep.passed, "{rep:#?}");
                }
            }
        }
    }
}
