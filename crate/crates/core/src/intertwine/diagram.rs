use serde::{Deserialize, Serialize};

use super::{check_object, id, kron};
use crate::error::{Error, Result};
use crate::exactnum::ExactMatrix;
use crate::pivpair::{is_pivotal_morphism, PivotalPair};
use crate::report::Report;

/// Pivotal pairs joined by pivotal morphisms `f_j : P_{s(j)} → P_{t(j)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PivotalDiagram {
    pub pairs: Vec<PivotalPair>,
    pub arrows: Vec<(usize, usize, ExactMatrix)>,
}

/// One space `X` with an intertwining for every pair of a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramIntertwiner {
    #[serde(rename = "dimX")]
    pub dim_x: usize,
    pub sigmas: Vec<ExactMatrix>,
}

impl DiagramIntertwiner {
    /// Componentwise tensor product.
    pub fn tensor(&self, other: &DiagramIntertwiner) -> Result<DiagramIntertwiner> {
        if self.sigmas.len() != other.sigmas.len() {
            return Err(Error::IndexMismatch("diagram objects over different index sets".into()));
        }
        let (x, y) = (id(self.dim_x), id(other.dim_x));
        let sigmas = self
            .sigmas
            .iter()
            .zip(&other.sigmas)
            .map(|(s, t)| &kron(&[s, &y]) * &kron(&[&x, t]))
            .collect();
        Ok(DiagramIntertwiner {
            dim_x: self.dim_x * other.dim_x,
            sigmas,
        })
    }
}

/// Check every component object and every compatibility square `(f⊗X)σ_s = σ_t(X⊗f)`.
pub fn diagram_check(d: &PivotalDiagram, obj: &DiagramIntertwiner) -> Result<Report> {
    if d.pairs.len() != obj.sigmas.len() {
        return Err(Error::IndexMismatch(format!(
            "{} pairs but {} intertwinings",
            d.pairs.len(),
            obj.sigmas.len()
        )));
    }
    let mut rep = Report::new("pivotal diagram");
    for (i, (pp, s)) in d.pairs.iter().zip(&obj.sigmas).enumerate() {
        rep.absorb(&format!("object {i}"), check_object(obj.dim_x, s, pp));
    }
    let x = id(obj.dim_x);
    for (j, (src, tgt, f)) in d.arrows.iter().enumerate() {
        let (Some(ps), Some(pt)) = (d.pairs.get(*src), d.pairs.get(*tgt)) else {
            return Err(Error::IndexMismatch(format!("arrow {j} has an endpoint out of range")));
        };
        rep.flag(
            format!("arrow {j} pivotal"),
            is_pivotal_morphism(f, ps, pt)?,
            None,
        );
        let lhs = &kron(&[f, &x]) * &obj.sigmas[*src];
        let rhs = &obj.sigmas[*tgt] * &kron(&[&x, f]);
        rep.equal(format!("arrow {j} square"), &lhs, &rhs);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Scalar;

    fn scalar(v: i64) -> ExactMatrix {
        ExactMatrix::diagonal(&[Scalar::from_i64(v)])
    }

    #[test]
    fn scalar_square() {
        let pp = PivotalPair::from_matrix(1, &scalar(3)).unwrap();
        let d = PivotalDiagram {
            pairs: vec![pp.clone(), pp],
            arrows: vec![(0, 1, scalar(1))],
        };
        let good = DiagramIntertwiner {
            dim_x: 1,
            sigmas: vec![scalar(2), scalar(2)],
        };
        assert!(diagram_check(&d, &good).unwrap().passed);
        let bad = DiagramIntertwiner {
            dim_x: 1,
            sigmas: vec![scalar(2), scalar(5)],
        };
        assert!(!diagram_check(&d, &bad).unwrap().passed);
        let t = good.tensor(&good).unwrap();
        assert!(diagram_check(&d, &t).unwrap().passed);
        let short = DiagramIntertwiner {
            dim_x: 1,
            sigmas: vec![scalar(2)],
        };
        assert!(matches!(diagram_check(&d, &short), Err(Error::IndexMismatch(_))));
    }
}
