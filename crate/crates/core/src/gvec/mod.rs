//! Group-graded vector spaces: the pivotal pair `(V_g, V_{g⁻¹})`, graded
//! intertwined objects and the conjugation-orbit law for their supports.

mod group;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

pub use group::{FiniteGroup, GroupTable};

use crate::error::{Error, Result};
use crate::exactnum::ExactMatrix;
use crate::intertwine::check_object;
use crate::par::par_map;
use crate::pivpair::{snake_terms, PivotalPair};
use crate::report::Report;
use crate::sigterm::{GradedAssignment, GradedMatrix, GradedSpace, Interpretation};

/// A finite multiset of grades: element index to multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GradedObject {
    grades: BTreeMap<usize, usize>,
}

impl GradedObject {
    /// Sum multiplicities of repeated grades and drop zeros.
    pub fn new(grades: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut out = BTreeMap::new();
        for (h, m) in grades {
            *out.entry(h).or_insert(0) += m;
        }
        out.retain(|_, m| *m > 0);
        GradedObject { grades: out }
    }

    pub fn grades(&self) -> &BTreeMap<usize, usize> {
        &self.grades
    }

    pub fn multiplicity(&self, h: usize) -> usize {
        self.grades.get(&h).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.grades.keys().copied()
    }

    pub fn dim(&self) -> usize {
        self.grades.values().sum()
    }

    /// One summand per grade, in increasing element order.
    pub fn space(&self) -> GradedSpace {
        GradedSpace::new(self.grades.iter().map(|(&h, &m)| (h, m)).collect())
    }

    pub fn check_in(&self, group: &FiniteGroup) -> Result<()> {
        self.support().try_for_each(|h| group.check_element(h))
    }

    pub fn describe(&self, group: &FiniteGroup) -> Vec<(String, usize)> {
        self.grades.iter().map(|(&h, &m)| (group.name(h).to_string(), m)).collect()
    }
}

/// `P = V_g`, `Q = V_{g⁻¹}` with every duality map the scalar 1.
#[derive(Clone, Debug)]
pub struct GradedPair {
    group: FiniteGroup,
    g: usize,
    p: GradedSpace,
    q: GradedSpace,
    cvl: GradedMatrix,
    evl: GradedMatrix,
    cvr: GradedMatrix,
    evr: GradedMatrix,
}

pub fn graded_pair(group: &FiniteGroup, g: usize) -> Result<GradedPair> {
    group.check_element(g)?;
    let mul = group.table();
    let unit = GradedSpace::new(vec![(group.identity(), 1)]);
    let p = GradedSpace::new(vec![(g, 1)]);
    let q = GradedSpace::new(vec![(group.inv(g), 1)]);
    let one = ExactMatrix::identity(1);
    let (pq, qp) = (p.tensor(&q, mul), q.tensor(&p, mul));
    Ok(GradedPair {
        cvl: GradedMatrix::from_dense(&unit, &pq, &one)?,
        evl: GradedMatrix::from_dense(&qp, &unit, &one)?,
        cvr: GradedMatrix::from_dense(&unit, &qp, &one)?,
        evr: GradedMatrix::from_dense(&pq, &unit, &one)?,
        group: group.clone(),
        g,
        p,
        q,
    })
}

impl GradedPair {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn p(&self) -> &GradedSpace {
        &self.p
    }

    pub fn q(&self) -> &GradedSpace {
        &self.q
    }

    pub fn assignment(&self) -> GradedAssignment<'_> {
        let mut a = GradedAssignment::new(self.group.table(), self.group.identity());
        a.objects.insert("P".into(), self.p.clone());
        a.objects.insert("Q".into(), self.q.clone());
        for (name, m) in [("cvl", &self.cvl), ("evl", &self.evl), ("cvr", &self.cvr), ("evr", &self.evr)] {
            a.morphisms.insert(name.into(), m.clone());
        }
        a
    }

    /// The four snake identities, evaluated blockwise in graded matrices.
    pub fn check(&self) -> Report {
        let mut rep = Report::new(format!("graded pair at {}", self.group.name(self.g)));
        let a = self.assignment();
        let (_, terms) = snake_terms();
        for (name, t, obj) in terms {
            match a.evaluate(&t) {
                Ok(m) => {
                    let ok = a.word(&obj).map(|w| *m.source() == w && m.is_identity());
                    rep.flag(name, ok == Ok(true), None);
                }
                Err(e) => {
                    rep.flag(name, false, Some(e.to_string()));
                }
            }
        }
        rep
    }

    /// The underlying pair of one-dimensional spaces.
    pub fn forget(&self) -> PivotalPair {
        PivotalPair::unit()
    }

    /// `X⊗P`, graded by `h·g`.
    pub fn source_space(&self, obj: &GradedObject) -> GradedSpace {
        obj.space().tensor(&self.p, self.group.table())
    }

    /// `P⊗X`, graded by `g·h`.
    pub fn target_space(&self, obj: &GradedObject) -> GradedSpace {
        self.p.tensor(&obj.space(), self.group.table())
    }

    /// Split a dense `σ : X⊗P → P⊗X`; entries between different grades are rejected.
    pub fn graded_sigma(&self, obj: &GradedObject, dense: &ExactMatrix) -> Result<GradedMatrix> {
        obj.check_in(&self.group)?;
        GradedMatrix::from_dense(&self.source_space(obj), &self.target_space(obj), dense)
    }

    /// `dim Hom(X⊗P, P⊗X)` in the graded category.
    pub fn graded_hom_dim(&self, obj: &GradedObject) -> usize {
        let (s, t) = (self.source_space(obj), self.target_space(obj));
        s.summands
            .iter()
            .flat_map(|a| t.summands.iter().map(move |b| (a, b)))
            .filter(|(a, b)| a.0 == b.0)
            .map(|(a, b)| a.1 * b.1)
            .sum()
    }

    /// Whether `X⊗P ≅ P⊗X` as graded spaces, by comparing dimensions grade by grade.
    pub fn admits_graded_iso(&self, obj: &GradedObject) -> bool {
        let by_grade = |s: &GradedSpace| {
            let mut m = BTreeMap::new();
            for &(k, d) in &s.summands {
                *m.entry(k).or_insert(0usize) += d;
            }
            m
        };
        by_grade(&self.source_space(obj)) == by_grade(&self.target_space(obj))
    }

    /// The permutation `σ` sending the copy of `V_h` to that of `V_{g⁻¹hg}`.
    pub fn orbit_sigma(&self, obj: &GradedObject) -> Result<GradedMatrix> {
        obj.check_in(&self.group)?;
        let (s, t) = (self.source_space(obj), self.target_space(obj));
        let index: BTreeMap<usize, usize> = obj.support().enumerate().map(|(i, h)| (h, i)).collect();
        let gi = self.group.inv(self.g);
        let mut sigma = GradedMatrix::zero(&s, &t);
        for (i, (&h, &m)) in obj.grades().iter().enumerate() {
            let target = self.group.mul(self.group.mul(gi, h), self.g);
            let j = match index.get(&target) {
                Some(&j) if obj.multiplicity(target) == m => j,
                _ => {
                    return Err(Error::GradeMismatch(format!(
                        "{} has no partner of grade {} with multiplicity {m}",
                        self.group.name(h),
                        self.group.name(target)
                    )))
                }
            };
            sigma.set_block(i, j, ExactMatrix::identity(m))?;
        }
        Ok(sigma)
    }
}

/// Check that `σ` is a graded isomorphism `X⊗P → P⊗X` whose induced `Q`-intertwining is inverse to it.
pub fn validate_graded_intertwiner(
    pair: &GradedPair,
    obj: &GradedObject,
    sigma: &GradedMatrix,
) -> Result<Report> {
    obj.check_in(pair.group())?;
    let (s, t) = (pair.source_space(obj), pair.target_space(obj));
    let sigma = sigma.reindex(&s, &t)?;
    let mut rep = Report::new(format!("graded object of dimension {}", obj.dim()));
    rep.flag("σ grade-preserving", true, None);
    let dense = sigma.to_dense();
    let Ok(inv) = dense.invert() else {
        rep.flag("σ invertible", false, None);
        return Ok(rep);
    };
    rep.flag("σ invertible", true, None);
    let inv_graded = GradedMatrix::from_dense(&t, &s, &inv);
    rep.flag(
        "σ⁻¹ grade-preserving",
        inv_graded.is_ok(),
        inv_graded.err().map(|e| e.to_string()),
    );
    rep.absorb("underlying", check_object(obj.dim(), &dense, &pair.forget()));
    Ok(rep)
}

/// Support closed under `h ↦ g·h·g⁻¹`, with multiplicity constant on each orbit.
pub fn orbit_support_check(group: &FiniteGroup, g: usize, obj: &GradedObject) -> bool {
    obj.grades()
        .iter()
        .all(|(&h, &m)| obj.multiplicity(group.conjugate(g, h)) == m)
}

/// An orbit-closed object together with its verified permutation `σ`.
#[derive(Clone, Debug)]
pub struct EnumeratedObject {
    pub object: GradedObject,
    /// Orbits used, with multiplicities.
    pub orbits: Vec<(Vec<usize>, usize)>,
    pub sigma: GradedMatrix,
    pub report: Report,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratedJson {
    pub grades: Vec<(String, usize)>,
    pub dim: usize,
    pub orbits: Vec<(Vec<String>, usize)>,
    /// Where `σ` sends each grade.
    pub sigma: Vec<(String, String)>,
    pub valid: bool,
}

impl EnumeratedObject {
    pub fn to_json(&self, group: &FiniteGroup) -> EnumeratedJson {
        let names = |o: &[usize]| o.iter().map(|&h| group.name(h).to_string()).collect();
        let support: Vec<usize> = self.object.support().collect();
        EnumeratedJson {
            grades: self.object.describe(group),
            dim: self.object.dim(),
            orbits: self.orbits.iter().map(|(o, m)| (names(o), *m)).collect(),
            sigma: self
                .sigma
                .blocks()
                .keys()
                .map(|&(i, j)| (group.name(support[i]).to_string(), group.name(support[j]).to_string()))
                .collect(),
            valid: self.report.passed,
        }
    }
}

fn orbit_multisets(sizes: &[usize], budget: usize) -> Vec<Vec<usize>> {
    let Some((&first, rest)) = sizes.split_first() else {
        return vec![vec![]];
    };
    let mut out = Vec::new();
    for m in 0..=budget / first {
        for mut tail in orbit_multisets(rest, budget - m * first) {
            tail.insert(0, m);
            out.push(tail);
        }
    }
    out
}

/// Every nonzero multiset of conjugation orbits with total dimension at most `max_dim`,
/// each with its orbit permutation validated; sorted by grades.
pub fn enumerate_supports(group: &FiniteGroup, g: usize, max_dim: usize) -> Result<Vec<EnumeratedObject>> {
    let pair = graded_pair(group, g)?;
    let orbits = group.orbits(g);
    let sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
    let choices: Vec<Vec<usize>> = orbit_multisets(&sizes, max_dim)
        .into_iter()
        .filter(|c| c.iter().any(|&m| m > 0))
        .collect();
    let results = par_map(&choices, |mults| -> Result<EnumeratedObject> {
        let object = GradedObject::new(
            orbits
                .iter()
                .zip(mults)
                .flat_map(|(o, &m)| o.iter().map(move |&h| (h, m))),
        );
        let sigma = pair.orbit_sigma(&object)?;
        let report = validate_graded_intertwiner(&pair, &object, &sigma)?;
        let used = orbits
            .iter()
            .zip(mults)
            .filter(|(_, &m)| m > 0)
            .map(|(o, &m)| (o.clone(), m))
            .collect();
        Ok(EnumeratedObject { object, orbits: used, sigma, report })
    });
    let mut out = results.into_iter().collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.object.cmp(&b.object));
    Ok(out)
}

/// Every grading of total dimension between 1 and `max_dim`.
pub fn all_objects(group: &FiniteGroup, max_dim: usize) -> Vec<GradedObject> {
    let ones = vec![1; group.order()];
    let mut out: Vec<GradedObject> = orbit_multisets(&ones, max_dim)
        .into_iter()
        .filter(|c| c.iter().any(|&m| m > 0))
        .map(|c| GradedObject::new(c.into_iter().enumerate()))
        .collect();
    out.sort();
    out
}

/// The orbit law at `g` up to `max_dim`, checked both ways against brute force.
pub fn support_law_report(group: &FiniteGroup, g: usize, max_dim: usize) -> Result<Report> {
    let pair = graded_pair(group, g)?;
    let mut rep = Report::new(format!("orbit law for g = {}, dim ≤ {max_dim}", group.name(g)));
    rep.absorb("pair", pair.check());
    let listed = enumerate_supports(group, g, max_dim)?;
    let bad: Vec<&EnumeratedObject> = listed
        .iter()
        .filter(|e| !e.report.passed || !orbit_support_check(group, g, &e.object))
        .collect();
    rep.flag(
        "enumerated objects valid and orbit-closed",
        bad.is_empty(),
        Some(format!("{} objects, {} bad", listed.len(), bad.len())),
    );
    let everything = all_objects(group, max_dim);
    let verdicts = par_map(&everything, |o| (pair.admits_graded_iso(o), orbit_support_check(group, g, o)));
    let disagree = verdicts.iter().filter(|(a, b)| a != b).count();
    rep.flag(
        "graded isomorphism exists iff orbit-closed",
        disagree == 0,
        Some(format!("{} gradings, {disagree} disagreements", everything.len())),
    );
    let closed: BTreeSet<&GradedObject> = everything
        .iter()
        .zip(&verdicts)
        .filter(|(_, v)| v.1)
        .map(|(o, _)| o)
        .collect();
    let found: BTreeSet<&GradedObject> = listed.iter().map(|e| &e.object).collect();
    rep.flag(
        "every orbit-closed grading enumerated",
        closed == found,
        Some(format!("{} orbit-closed, {} enumerated", closed.len(), found.len())),
    );
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Scalar;

    fn s3() -> FiniteGroup {
        FiniteGroup::symmetric3()
    }

    #[test]
    fn pairs_pass_snakes() {
        for group in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(6), s3()] {
            for g in 0..group.order() {
                let pair = graded_pair(&group, g).unwrap();
                assert!(pair.check().passed, "{:#?}", pair.check());
                assert_eq!(pair.q().summands[0].0, group.inv(g));
            }
        }
        let z2 = FiniteGroup::cyclic(2);
        assert_eq!(graded_pair(&z2, 1).unwrap().q().summands, vec![(1, 1)]);
        assert!(matches!(graded_pair(&z2, 2), Err(Error::ElementNotInGroup(_))));
    }

    #[test]
    fn commuting_grade_with_scalar_sigma() {
        let group = s3();
        let g = group.element("(123)").unwrap();
        let pair = graded_pair(&group, g).unwrap();
        let obj = GradedObject::new([(group.element("(132)").unwrap(), 1)]);
        let s = ExactMatrix::diagonal(&[Scalar::ratio(-7, 3)]);
        let sigma = pair.graded_sigma(&obj, &s).unwrap();
        assert!(validate_graded_intertwiner(&pair, &obj, &sigma).unwrap().passed);
        let zero = pair.graded_sigma(&obj, &ExactMatrix::zeros(1, 1)).unwrap();
        assert!(!validate_graded_intertwiner(&pair, &obj, &zero).unwrap().passed);
    }

    #[test]
    fn transposition_examples() {
        let group = s3();
        let e = |s| group.element(s).unwrap();
        let pair = graded_pair(&group, e("(12)")).unwrap();

        let single = GradedObject::new([(e("(13)"), 1)]);
        assert_eq!(pair.graded_hom_dim(&single), 0);
        assert!(!orbit_support_check(&group, e("(12)"), &single));
        assert!(matches!(
            pair.graded_sigma(&single, &ExactMatrix::identity(1)),
            Err(Error::GradeMismatch(_))
        ));
        let zero = GradedMatrix::zero(&pair.source_space(&single), &pair.target_space(&single));
        assert!(!validate_graded_intertwiner(&pair, &single, &zero).unwrap().passed);

        let both = GradedObject::new([(e("(13)"), 1), (e("(23)"), 1)]);
        assert!(orbit_support_check(&group, e("(12)"), &both));
        let perm = ExactMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let sigma = pair.graded_sigma(&both, &perm).unwrap();
        assert!(validate_graded_intertwiner(&pair, &both, &sigma).unwrap().passed);
        assert!(matches!(
            pair.graded_sigma(&both, &ExactMatrix::identity(2)),
            Err(Error::GradeMismatch(_))
        ));
        assert_eq!(pair.orbit_sigma(&both).unwrap(), sigma);
    }

    #[test]
    fn central_elements_allow_everything() {
        let group = FiniteGroup::cyclic(6);
        for g in 0..6 {
            for o in all_objects(&group, 3) {
                assert!(orbit_support_check(&group, g, &o));
            }
            assert_eq!(enumerate_supports(&group, g, 3).unwrap().len(), all_objects(&group, 3).len());
        }
    }

    #[test]
    fn three_cycle_enumeration() {
        let group = s3();
        let g = group.element("(123)").unwrap();
        let listed = enumerate_supports(&group, g, 3).unwrap();
        // Three fixed points with total multiplicity ≤ 3, or the transpositions once.
        assert_eq!(listed.len(), 20);
        for item in &listed {
            assert!(item.report.passed);
            assert!(orbit_support_check(&group, g, &item.object));
            assert!(item.orbits.iter().all(|(o, _)| [1, 2, 3].contains(&o.len())));
        }
        let mut sorted = listed.clone();
        sorted.sort_by(|a, b| a.object.cmp(&b.object));
        assert_eq!(
            sorted.iter().map(|x| &x.object).collect::<Vec<_>>(),
            listed.iter().map(|x| &x.object).collect::<Vec<_>>()
        );
    }

    #[test]
    fn orbit_law_small_groups() {
        for group in [FiniteGroup::cyclic(2), s3()] {
            for g in 0..group.order() {
                let rep = support_law_report(&group, g, 4).unwrap();
                assert!(rep.passed, "{rep:#?}");
            }
        }
    }
}
