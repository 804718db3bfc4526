//! Pass/fail reports with truncated, hashed residuals.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::exactnum::ExactMatrix;

const PREVIEW: usize = 8;

/// A residual matrix: its shape, an 8×8 preview and a digest of every entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Residual {
    pub rows: usize,
    pub cols: usize,
    pub nonzero: usize,
    pub preview: Vec<Vec<String>>,
    pub sha256: String,
}

impl Residual {
    pub fn of(m: &ExactMatrix) -> Self {
        let mut h = Sha256::new();
        h.update(format!("{}x{}:", m.rows(), m.cols()));
        for e in m.entries() {
            h.update(e.to_string());
            h.update(",");
        }
        let digest = h.finalize();
        let preview = (0..m.rows().min(PREVIEW))
            .map(|i| (0..m.cols().min(PREVIEW)).map(|j| m.get(i, j).to_string()).collect())
            .collect();
        Residual {
            rows: m.rows(),
            cols: m.cols(),
            nonzero: m.nnz(),
            preview,
            sha256: digest.iter().map(|b| format!("{b:02x}")).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<Residual>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            passed: true,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.passed &= check.passed;
        self.checks.push(check);
    }

    pub fn flag(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) -> bool {
        self.push(Check {
            name: name.into(),
            passed,
            detail,
            residual: None,
        });
        passed
    }

    /// Record whether `lhs == rhs`; a failing check carries the residual `lhs - rhs`.
    pub fn equal(&mut self, name: impl Into<String>, lhs: &ExactMatrix, rhs: &ExactMatrix) -> bool {
        let name = name.into();
        if lhs.shape() != rhs.shape() {
            return self.flag(
                name,
                false,
                Some(format!(
                    "shapes differ: {}x{} vs {}x{}",
                    lhs.rows(),
                    lhs.cols(),
                    rhs.rows(),
                    rhs.cols()
                )),
            );
        }
        let diff = lhs - rhs;
        let passed = diff.is_zero();
        self.push(Check {
            name,
            passed,
            detail: None,
            residual: (!passed).then(|| Residual::of(&diff)),
        });
        passed
    }

    pub fn identity(&mut self, name: impl Into<String>, m: &ExactMatrix) -> bool {
        self.equal(name, m, &ExactMatrix::identity(m.rows()))
    }

    pub fn zero(&mut self, name: impl Into<String>, m: &ExactMatrix) -> bool {
        self.equal(name, m, &ExactMatrix::zeros(m.rows(), m.cols()))
    }

    /// Append every check of `other` with its name prefixed.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}/{}", c.name);
            self.push(c);
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_is_truncated_and_hashed() {
        let m = ExactMatrix::identity(10);
        let r = Residual::of(&m);
        assert_eq!(r.preview.len(), 8);
        assert_eq!(r.preview[0].len(), 8);
        assert_eq!(r.nonzero, 10);
        assert_eq!(r.sha256.len(), 64);
        assert_eq!(r, Residual::of(&m.clone()));
    }

    #[test]
    fn failing_check_flips_report() {
        let mut rep = Report::new("t");
        assert!(rep.identity("id", &ExactMatrix::identity(2)));
        assert!(rep.passed);
        assert!(!rep.zero("z", &ExactMatrix::identity(2)));
        assert!(!rep.passed);
        assert!(rep.checks[1].residual.is_some());
    }
}
