use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::ncpoly::{NCPoly, TensorPoly, Word};
use super::presentation::NCPresentation;
use crate::error::{Error, Result};
use crate::exactnum::Scalar;

/// An oriented rule `lhs → rhs` with every word of `rhs` below `lhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: NCPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Confluence {
    /// Every overlap resolves, at any degree.
    Confluent,
    /// Overlaps up to the bound resolve; longer ones were not examined.
    LocallyConfluentToBound,
}

/// A degree-bounded rewriting system for the quotient algebra.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    generators: usize,
    bound: usize,
    rules: Vec<Rule>,
    index: HashMap<Word, usize>,
    lhs_lengths: BTreeSet<usize>,
    status: Confluence,
    unresolved_above: usize,
}

/// Lengths `k` of proper overlaps where the last `k` letters of `a` begin `b`.
fn overlaps(a: &Word, b: &Word) -> Vec<usize> {
    (1..a.len().min(b.len()))
        .filter(|&k| a.0[a.len() - k..] == b.0[..k])
        .collect()
}

impl RewriteSystem {
    fn empty(generators: usize, bound: usize) -> Self {
        RewriteSystem {
            generators,
            bound,
            rules: Vec::new(),
            index: HashMap::new(),
            lhs_lengths: BTreeSet::new(),
            status: Confluence::Confluent,
            unresolved_above: 0,
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn status(&self) -> Confluence {
        self.status
    }

    /// Number of overlaps longer than the bound that were left unexamined.
    pub fn unresolved_above_bound(&self) -> usize {
        self.unresolved_above
    }

    fn rebuild_index(&mut self) {
        self.index = self
            .rules
            .iter()
            .enumerate()
            .map(|(i, r)| (r.lhs.clone(), i))
            .collect();
        self.lhs_lengths = self.rules.iter().map(|r| r.lhs.len()).collect();
    }

    /// First rule match in `w`, as (position, rule index).
    fn find_match(&self, w: &Word) -> Option<(usize, usize)> {
        for pos in 0..w.len() {
            for &l in &self.lhs_lengths {
                if pos + l > w.len() {
                    break;
                }
                if let Some(&i) = self.index.get(&w.slice(pos..pos + l)) {
                    return Some((pos, i));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_match(w).is_none()
    }

    fn reduce(&self, p: &NCPoly) -> NCPoly {
        let mut work: BTreeMap<Word, Scalar> = p.terms().clone();
        let mut out = NCPoly::zero();
        while let Some((w, c)) = work.pop_last() {
            match self.find_match(&w) {
                None => out.add_term(c, w),
                Some((pos, i)) => {
                    let rule = &self.rules[i];
                    let (u, v) = (w.slice(0..pos), w.slice(pos + rule.lhs.len()..w.len()));
                    for (rw, rc) in rule.rhs.terms() {
                        let nw = u.concat(rw).concat(&v);
                        let entry = work.entry(nw.clone()).or_insert_with(Scalar::zero);
                        *entry += &(&c * rc);
                        if entry.is_zero() {
                            work.remove(&nw);
                        }
                    }
                }
            }
        }
        out
    }

    /// Rewrite to a fixpoint.
    pub fn normal_form(&self, p: &NCPoly) -> Result<NCPoly> {
        let deg = p.degree();
        if deg > self.bound {
            return Err(Error::DegreeExceeded {
                degree: deg,
                bound: self.bound,
            });
        }
        Ok(self.reduce(p))
    }

    pub fn normal_form_word(&self, w: &Word) -> Result<NCPoly> {
        self.normal_form(&NCPoly::word(w.clone()))
    }

    /// Reduce every tensor leg independently.
    pub fn normal_form_tensor(&self, t: &TensorPoly) -> Result<TensorPoly> {
        let legs = t.terms().keys().next().map_or(0, Vec::len);
        let mut out = t.clone();
        for k in 0..legs {
            let mut err = None;
            out = out.map_leg(k, |w| match self.normal_form_word(w) {
                Ok(p) => p,
                Err(e) => {
                    err = Some(e);
                    NCPoly::zero()
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
        Ok(out)
    }

    /// Normal words of length at most `max_len`, in term order.
    pub fn normal_words(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for g in 0..self.generators as u16 {
                    let mut v = w.0.clone();
                    v.push(g);
                    let len = v.len();
                    let blocked = self
                        .lhs_lengths
                        .iter()
                        .any(|&l| l <= len && self.index.contains_key(&Word(v[len - l..].to_vec())));
                    if !blocked {
                        next.push(Word(v));
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Number of normal words of each length `0..=max_len`.
    pub fn normal_word_counts(&self, max_len: usize) -> Vec<usize> {
        let mut counts = vec![0; max_len + 1];
        for w in self.normal_words(max_len) {
            counts[w.len()] += 1;
        }
        counts
    }

    /// Insert a polynomial known to vanish; returns false when it reduces to zero.
    fn insert(&mut self, p: &NCPoly, queue: &mut VecDeque<NCPoly>) -> Result<bool> {
        let r = self.reduce(p);
        let Some((lead, lc)) = r.leading() else {
            return Ok(false);
        };
        if lead.is_empty() {
            return Err(Error::NonTerminating(format!(
                "completion derived the nonzero constant {lc} = 0"
            )));
        }
        let lhs = lead.clone();
        let inv = lc.inverse()?;
        let mut rhs = r.scale(&-inv);
        rhs.add_term(Scalar::one(), lhs.clone());
        if rhs.terms().keys().any(|w| w >= &lhs) {
            return Err(Error::NonTerminating(format!("rule for {lhs:?} does not decrease")));
        }
        // Rules whose left side contains the new one are retired and re-queued.
        let (keep, retire): (Vec<Rule>, Vec<Rule>) =
            std::mem::take(&mut self.rules).into_iter().partition(|rl| rl.lhs.find(&lhs).is_none());
        for rl in retire {
            let mut back = rl.rhs.clone();
            back.add_term(-Scalar::one(), rl.lhs);
            queue.push_back(back);
        }
        self.rules = keep;
        self.rules.push(Rule { lhs, rhs });
        self.rebuild_index();
        let rules = self.rules.clone();
        for (i, rl) in rules.iter().enumerate() {
            self.rules[i].rhs = self.reduce(&rl.rhs);
        }
        Ok(true)
    }

    /// The S-polynomial of the overlap of `a` and `b` of length `k`.
    fn s_poly(a: &Rule, b: &Rule, k: usize) -> NCPoly {
        let head = a.lhs.slice(0..a.lhs.len() - k);
        let tail = b.lhs.slice(k..b.lhs.len());
        let left = a.rhs.wrap(&Word::empty(), &tail);
        let right = b.rhs.wrap(&head, &Word::empty());
        &left - &right
    }
}

/// Bounded noncommutative completion of the presentation's relations.
pub fn complete(pres: &NCPresentation, d: usize) -> Result<RewriteSystem> {
    if d < 2 {
        return Err(Error::DegreeExceeded { degree: 2, bound: d });
    }
    let mut rs = RewriteSystem::empty(pres.generator_count(), d);
    let mut queue: VecDeque<NCPoly> = pres.relations.iter().cloned().collect();
    let mut seen: BTreeSet<(Word, Word, usize)> = BTreeSet::new();
    loop {
        while let Some(p) = queue.pop_front() {
            rs.insert(&p, &mut queue)?;
        }
        let mut pending = Vec::new();
        for a in &rs.rules {
            for b in &rs.rules {
                for k in overlaps(&a.lhs, &b.lhs) {
                    if a.lhs.len() + b.lhs.len() - k > d {
                        continue;
                    }
                    if seen.insert((a.lhs.clone(), b.lhs.clone(), k)) {
                        pending.push(RewriteSystem::s_poly(a, b, k));
                    }
                }
            }
        }
        if pending.is_empty() {
            break;
        }
        for s in pending {
            if !rs.reduce(&s).is_zero() {
                queue.push_back(s);
            }
        }
        if queue.is_empty() {
            break;
        }
    }
    let mut above = 0;
    for a in &rs.rules {
        for b in &rs.rules {
            above += overlaps(&a.lhs, &b.lhs)
                .into_iter()
                .filter(|&k| a.lhs.len() + b.lhs.len() - k > d)
                .count();
        }
    }
    rs.unresolved_above = above;
    rs.status = if above == 0 {
        Confluence::Confluent
    } else {
        Confluence::LocallyConfluentToBound
    };
    Ok(rs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ExactMatrix;
    use crate::freehopf::presentation::build_presentation;

    fn scalar_system(q: i64, d: usize) -> RewriteSystem {
        let pres = build_presentation(1, &ExactMatrix::diagonal(&[Scalar::from_i64(q)])).unwrap();
        complete(&pres, d).unwrap()
    }

    #[test]
    fn laurent_rules() {
        let rs = scalar_system(1, 4);
        let lhs: BTreeSet<Word> = rs.rules().iter().map(|r| r.lhs.clone()).collect();
        assert_eq!(lhs, [Word(vec![0, 1]), Word(vec![1, 0])].into_iter().collect());
        assert!(rs.rules().iter().all(|r| r.rhs == NCPoly::one()));
        assert_eq!(rs.status(), Confluence::Confluent);
        let fe = NCPoly::word(Word(vec![0, 1]));
        assert_eq!(rs.normal_form(&fe).unwrap(), NCPoly::one());
        assert_eq!(rs.normal_form(&NCPoly::one()).unwrap(), NCPoly::one());
        let fef = NCPoly::word(Word(vec![0, 1, 0]));
        assert_eq!(rs.normal_form(&fef).unwrap(), NCPoly::word(Word::letter(0)));
        assert_eq!(rs.normal_word_counts(4), vec![1, 2, 2, 2, 2]);
    }

    #[test]
    fn scaled_rules() {
        let rs = scalar_system(3, 4);
        assert_eq!(rs.rules().len(), 2);
        for r in rs.rules() {
            assert_eq!(r.rhs, NCPoly::constant(Scalar::ratio(1, 3)));
        }
    }

    #[test]
    fn degree_bound_enforced() {
        let rs = scalar_system(1, 2);
        let long = NCPoly::word(Word(vec![0, 0, 0]));
        assert!(matches!(
            rs.normal_form(&long),
            Err(Error::DegreeExceeded { degree: 3, bound: 2 })
        ));
    }

    #[test]
    fn matrix_system_reduces_relations() {
        let pres = build_presentation(2, &ExactMatrix::identity(2)).unwrap();
        let rs = complete(&pres, 3).unwrap();
        for r in &pres.relations {
            assert!(rs.normal_form(r).unwrap().is_zero());
        }
        for rule in rs.rules() {
            assert!(rule.rhs.terms().keys().all(|w| w < &rule.lhs));
        }
    }
}
