use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word in generating objects; the empty word is the tensor unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectWord(pub Vec<String>);

impl ObjectWord {
    pub fn unit() -> Self {
        ObjectWord(Vec::new())
    }

    pub fn single(name: &str) -> Self {
        ObjectWord(vec![name.to_string()])
    }

    pub fn of(names: &[&str]) -> Self {
        ObjectWord(names.iter().map(|s| s.to_string()).collect())
    }

    pub fn concat(&self, other: &ObjectWord) -> ObjectWord {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        ObjectWord(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for ObjectWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", self.0.join("⊗"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermKind {
    Id,
    Gen(String),
    /// `outer ∘ inner`
    Compose(Box<DiagTerm>, Box<DiagTerm>),
    Tensor(Box<DiagTerm>, Box<DiagTerm>),
}

/// A typed string-diagram term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagTerm {
    kind: TermKind,
    source: ObjectWord,
    target: ObjectWord,
}

impl DiagTerm {
    pub fn id(word: ObjectWord) -> Self {
        DiagTerm {
            kind: TermKind::Id,
            source: word.clone(),
            target: word,
        }
    }

    pub fn gen(name: &str, source: ObjectWord, target: ObjectWord) -> Self {
        DiagTerm {
            kind: TermKind::Gen(name.to_string()),
            source,
            target,
        }
    }

    /// `outer ∘ inner`; the target of `inner` must equal the source of `outer`.
    pub fn compose(outer: DiagTerm, inner: DiagTerm) -> Result<Self> {
        if inner.target != outer.source {
            return Err(Error::TypeMismatch {
                expected: outer.source.to_string(),
                found: inner.target.to_string(),
            });
        }
        Ok(DiagTerm {
            source: inner.source.clone(),
            target: outer.target.clone(),
            kind: TermKind::Compose(Box::new(outer), Box::new(inner)),
        })
    }

    /// Compose a chain written outermost first, as in `f ∘ g ∘ h`.
    pub fn compose_all(terms: Vec<DiagTerm>) -> Result<Self> {
        let mut it = terms.into_iter().rev();
        let first = it
            .next()
            .ok_or_else(|| Error::Parse("empty composite".into()))?;
        it.try_fold(first, |acc, outer| DiagTerm::compose(outer, acc))
    }

    pub fn tensor(left: DiagTerm, right: DiagTerm) -> Self {
        DiagTerm {
            source: left.source.concat(&right.source),
            target: left.target.concat(&right.target),
            kind: TermKind::Tensor(Box::new(left), Box::new(right)),
        }
    }

    /// Tensor a list left to right; the empty list is the identity of the unit.
    pub fn tensor_all(terms: Vec<DiagTerm>) -> Self {
        terms
            .into_iter()
            .reduce(DiagTerm::tensor)
            .unwrap_or_else(|| DiagTerm::id(ObjectWord::unit()))
    }

    pub fn kind(&self) -> &TermKind {
        &self.kind
    }

    pub fn source(&self) -> &ObjectWord {
        &self.source
    }

    pub fn target(&self) -> &ObjectWord {
        &self.target
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.kind, TermKind::Id)
    }

    /// Drop identity factors of composites and unit factors of tensors.
    pub fn normalize(self) -> DiagTerm {
        match self.kind {
            TermKind::Compose(outer, inner) => {
                let (o, i) = (outer.normalize(), inner.normalize());
                if o.is_identity() {
                    i
                } else if i.is_identity() {
                    o
                } else {
                    DiagTerm {
                        kind: TermKind::Compose(Box::new(o), Box::new(i)),
                        ..self
                    }
                }
            }
            TermKind::Tensor(l, r) => {
                let (l, r) = (l.normalize(), r.normalize());
                match (l.is_identity() && l.source.is_empty(), r.is_identity() && r.source.is_empty()) {
                    (true, _) => r,
                    (_, true) => l,
                    _ if l.is_identity() && r.is_identity() => DiagTerm::id(self.source),
                    _ => DiagTerm {
                        kind: TermKind::Tensor(Box::new(l), Box::new(r)),
                        ..self
                    },
                }
            }
            _ => self,
        }
    }

    /// Names of the generators occurring in the term.
    pub fn generators(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_generators(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_generators(&self, out: &mut Vec<String>) {
        match &self.kind {
            TermKind::Id => {}
            TermKind::Gen(n) => out.push(n.clone()),
            TermKind::Compose(a, b) | TermKind::Tensor(a, b) => {
                a.collect_generators(out);
                b.collect_generators(out);
            }
        }
    }
}

impl fmt::Display for DiagTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            TermKind::Id => write!(f, "id[{}]", self.source),
            TermKind::Gen(n) => write!(f, "{n}"),
            TermKind::Compose(a, b) => write!(f, "({a} ∘ {b})"),
            TermKind::Tensor(a, b) => write!(f, "({a} ⊗ {b})"),
        }
    }
}

/// Generating objects and typed generating morphisms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub objects: Vec<String>,
    pub morphisms: BTreeMap<String, (ObjectWord, ObjectWord)>,
}

impl Signature {
    pub fn new(objects: &[&str]) -> Self {
        Signature {
            objects: objects.iter().map(|s| s.to_string()).collect(),
            morphisms: BTreeMap::new(),
        }
    }

    pub fn with_morphism(mut self, name: &str, source: &[&str], target: &[&str]) -> Self {
        self.morphisms
            .insert(name.to_string(), (ObjectWord::of(source), ObjectWord::of(target)));
        self
    }

    /// The generator term for a declared morphism.
    pub fn gen(&self, name: &str) -> Result<DiagTerm> {
        let (s, t) = self
            .morphisms
            .get(name)
            .ok_or_else(|| Error::UnassignedGenerator(name.to_string()))?;
        Ok(DiagTerm::gen(name, s.clone(), t.clone()))
    }

    pub fn id(&self, names: &[&str]) -> DiagTerm {
        DiagTerm::id(ObjectWord::of(names))
    }
}

/// The JSON shape of a diagram term.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum TermJson {
    Id {
        word: ObjectWord,
    },
    Gen {
        name: String,
        source: ObjectWord,
        target: ObjectWord,
    },
    Compose {
        outer: Box<TermJson>,
        inner: Box<TermJson>,
    },
    Tensor {
        left: Box<TermJson>,
        right: Box<TermJson>,
    },
}

impl TermJson {
    pub fn build(&self) -> Result<DiagTerm> {
        Ok(match self {
            TermJson::Id { word } => DiagTerm::id(word.clone()),
            TermJson::Gen { name, source, target } => DiagTerm::gen(name, source.clone(), target.clone()),
            TermJson::Compose { outer, inner } => DiagTerm::compose(outer.build()?, inner.build()?)?,
            TermJson::Tensor { left, right } => DiagTerm::tensor(left.build()?, right.build()?),
        })
    }
}

impl From<&DiagTerm> for TermJson {
    fn from(t: &DiagTerm) -> Self {
        match &t.kind {
            TermKind::Id => TermJson::Id {
                word: t.source.clone(),
            },
            TermKind::Gen(n) => TermJson::Gen {
                name: n.clone(),
                source: t.source.clone(),
                target: t.target.clone(),
            },
            TermKind::Compose(a, b) => TermJson::Compose {
                outer: Box::new(a.as_ref().into()),
                inner: Box::new(b.as_ref().into()),
            },
            TermKind::Tensor(a, b) => TermJson::Tensor {
                left: Box::new(a.as_ref().into()),
                right: Box::new(b.as_ref().into()),
            },
        }
    }
}

impl Serialize for DiagTerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TermJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiagTerm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        TermJson::deserialize(d)?.build().map_err(serde::de::Error::custom)
    }
}
