use std::collections::BTreeMap;

use super::graded::{GradedMatrix, GradedSpace};
use super::term::{DiagTerm, ObjectWord, TermKind};
use crate::error::{Error, Result};
use crate::exactnum::ExactMatrix;

/// A strict monoidal functor out of the free category on a signature.
pub trait Interpretation {
    type Object: Clone;
    type Morphism;

    fn unit_object(&self) -> Self::Object;
    fn object(&self, name: &str) -> Result<Self::Object>;
    fn tensor_objects(&self, a: &Self::Object, b: &Self::Object) -> Self::Object;
    fn identity(&self, obj: &Self::Object) -> Self::Morphism;
    fn generator(&self, name: &str, source: &Self::Object, target: &Self::Object) -> Result<Self::Morphism>;
    fn compose(&self, outer: &Self::Morphism, inner: &Self::Morphism) -> Self::Morphism;
    fn tensor(&self, a: &Self::Morphism, b: &Self::Morphism) -> Self::Morphism;

    fn word(&self, w: &ObjectWord) -> Result<Self::Object> {
        w.0.iter().try_fold(self.unit_object(), |acc, n| {
            Ok(self.tensor_objects(&acc, &self.object(n)?))
        })
    }

    fn evaluate(&self, t: &DiagTerm) -> Result<Self::Morphism> {
        match t.kind() {
            TermKind::Id => Ok(self.identity(&self.word(t.source())?)),
            TermKind::Gen(name) => {
                let s = self.word(t.source())?;
                let g = self.word(t.target())?;
                self.generator(name, &s, &g)
            }
            TermKind::Compose(outer, inner) => {
                Ok(self.compose(&self.evaluate(outer)?, &self.evaluate(inner)?))
            }
            TermKind::Tensor(l, r) => Ok(self.tensor(&self.evaluate(l)?, &self.evaluate(r)?)),
        }
    }
}

/// Dimensions for generating objects and matrices for generating morphisms.
#[derive(Clone, Debug, Default)]
pub struct EvalAssignment {
    pub objects: BTreeMap<String, usize>,
    pub morphisms: BTreeMap<String, ExactMatrix>,
}

impl EvalAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(mut self, name: &str, dim: usize) -> Self {
        self.objects.insert(name.to_string(), dim);
        self
    }

    pub fn morphism(mut self, name: &str, m: ExactMatrix) -> Self {
        self.morphisms.insert(name.to_string(), m);
        self
    }
}

impl Interpretation for EvalAssignment {
    type Object = usize;
    type Morphism = ExactMatrix;

    fn unit_object(&self) -> usize {
        1
    }

    fn object(&self, name: &str) -> Result<usize> {
        self.objects
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnassignedGenerator(name.to_string()))
    }

    fn tensor_objects(&self, a: &usize, b: &usize) -> usize {
        a * b
    }

    fn identity(&self, obj: &usize) -> ExactMatrix {
        ExactMatrix::identity(*obj)
    }

    fn generator(&self, name: &str, source: &usize, target: &usize) -> Result<ExactMatrix> {
        let m = self
            .morphisms
            .get(name)
            .ok_or_else(|| Error::UnassignedGenerator(name.to_string()))?;
        if m.shape() != (*target, *source) {
            return Err(Error::ShapeMismatch(format!(
                "{name} is {}x{} but its type needs {target}x{source}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(m.clone())
    }

    fn compose(&self, outer: &ExactMatrix, inner: &ExactMatrix) -> ExactMatrix {
        outer * inner
    }

    fn tensor(&self, a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
        a.kron(b)
    }
}

/// Evaluate a term to a matrix.
pub fn evaluate(t: &DiagTerm, a: &EvalAssignment) -> Result<ExactMatrix> {
    a.evaluate(t)
}

/// Graded spaces and graded blocks over a finite group given by its table.
#[derive(Clone, Debug)]
pub struct GradedAssignment<'a> {
    pub mul: &'a [Vec<usize>],
    pub identity: usize,
    pub objects: BTreeMap<String, GradedSpace>,
    pub morphisms: BTreeMap<String, GradedMatrix>,
}

impl<'a> GradedAssignment<'a> {
    pub fn new(mul: &'a [Vec<usize>], identity: usize) -> Self {
        GradedAssignment {
            mul,
            identity,
            objects: BTreeMap::new(),
            morphisms: BTreeMap::new(),
        }
    }
}

impl Interpretation for GradedAssignment<'_> {
    type Object = GradedSpace;
    type Morphism = GradedMatrix;

    fn unit_object(&self) -> GradedSpace {
        GradedSpace::new(vec![(self.identity, 1)])
    }

    fn object(&self, name: &str) -> Result<GradedSpace> {
        self.objects
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnassignedGenerator(name.to_string()))
    }

    fn tensor_objects(&self, a: &GradedSpace, b: &GradedSpace) -> GradedSpace {
        a.tensor(b, self.mul)
    }

    fn identity(&self, obj: &GradedSpace) -> GradedMatrix {
        GradedMatrix::identity(obj)
    }

    fn generator(&self, name: &str, source: &GradedSpace, target: &GradedSpace) -> Result<GradedMatrix> {
        let m = self
            .morphisms
            .get(name)
            .ok_or_else(|| Error::UnassignedGenerator(name.to_string()))?;
        if m.source().dim() != source.dim() || m.target().dim() != target.dim() {
            return Err(Error::ShapeMismatch(format!("graded generator {name} has the wrong size")));
        }
        // Unit summands may be inserted or dropped by tensoring with the unit word.
        m.reindex(source, target)
    }

    fn compose(&self, outer: &GradedMatrix, inner: &GradedMatrix) -> GradedMatrix {
        outer.compose(inner)
    }

    fn tensor(&self, a: &GradedMatrix, b: &GradedMatrix) -> GradedMatrix {
        a.tensor(b, self.mul)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sigterm::Signature;

    #[test]
    fn unit_word_has_dimension_one() {
        let a = EvalAssignment::new().object("P", 3);
        assert_eq!(a.word(&ObjectWord::unit()).unwrap(), 1);
        assert_eq!(a.word(&ObjectWord::of(&["P", "P"])).unwrap(), 9);
    }

    #[test]
    fn identity_composite_normalizes() {
        let sig = Signature::new(&["P"]).with_morphism("f", &["P"], &["P"]);
        let f = sig.gen("f").unwrap();
        let t = DiagTerm::compose(sig.id(&["P"]), f.clone()).unwrap().normalize();
        assert_eq!(t, f);
    }

    #[test]
    fn type_and_shape_errors() {
        let sig = Signature::new(&["P", "Q"])
            .with_morphism("f", &["P"], &["Q"])
            .with_morphism("g", &["P"], &["P"]);
        let err = DiagTerm::compose(sig.gen("f").unwrap(), sig.gen("f").unwrap());
        assert!(matches!(err, Err(Error::TypeMismatch { .. })));
        let a = EvalAssignment::new()
            .object("P", 2)
            .object("Q", 3)
            .morphism("f", ExactMatrix::zeros(2, 2));
        assert!(matches!(evaluate(&sig.gen("f").unwrap(), &a), Err(Error::ShapeMismatch(_))));
        assert!(matches!(evaluate(&sig.gen("g").unwrap(), &a), Err(Error::UnassignedGenerator(_))));
    }

    #[test]
    fn tensor_evaluates_to_kron() {
        let sig = Signature::new(&["P"])
            .with_morphism("f", &["P"], &["P"])
            .with_morphism("g", &["P"], &["P"]);
        let f = ExactMatrix::from_i64(&[&[1, 2], &[0, 1]]);
        let g = ExactMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let a = EvalAssignment::new()
            .object("P", 2)
            .morphism("f", f.clone())
            .morphism("g", g.clone());
        let t = DiagTerm::tensor(sig.gen("f").unwrap(), sig.gen("g").unwrap());
        assert_eq!(evaluate(&t, &a).unwrap(), f.kron(&g));
    }
}
