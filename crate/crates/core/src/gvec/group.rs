use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Wire form of a group: element names and a multiplication table of indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    pub elements: Vec<String>,
    pub mul: Vec<Vec<usize>>,
}

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    identity: usize,
}

impl FiniteGroup {
    /// Validate a table: closure, associativity, a two-sided identity and inverses.
    pub fn from_table(names: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidGroup("no elements".into()));
        }
        if mul.len() != n || mul.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGroup(format!("table must be {n}x{n}")));
        }
        if let Some(bad) = mul.iter().flatten().find(|&&x| x >= n) {
            return Err(Error::InvalidGroup(format!("entry {bad} out of range")));
        }
        let mut seen = std::collections::BTreeSet::new();
        if let Some(dup) = names.iter().find(|s| !seen.insert(s.as_str())) {
            return Err(Error::InvalidGroup(format!("duplicate element name {dup}")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul[e][a] == a && mul[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        let inv = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| mul[a][b] == identity && mul[b][a] == identity)
                    .ok_or_else(|| Error::InvalidGroup(format!("{} has no inverse", names[a])))
            })
            .collect::<Result<Vec<_>>>()?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup { names, mul, inv, identity })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let t: GroupTable = serde_json::from_str(text)?;
        FiniteGroup::from_table(t.elements, t.mul)
    }

    pub fn to_table(&self) -> GroupTable {
        GroupTable {
            elements: self.names.clone(),
            mul: self.mul.clone(),
        }
    }

    /// `ℤ/n` with elements named `0..n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order zero");
        let names = (0..n).map(|i| i.to_string()).collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(names, mul).expect("cyclic table")
    }

    /// `S₃` in cycle notation; products compose left to right, so `(13)(12) = (132)`.
    pub fn symmetric3() -> Self {
        let perms: [([usize; 3], &str); 6] = [
            ([0, 1, 2], "e"),
            ([1, 0, 2], "(12)"),
            ([2, 1, 0], "(13)"),
            ([0, 2, 1], "(23)"),
            ([1, 2, 0], "(123)"),
            ([2, 0, 1], "(132)"),
        ];
        let index = |p: [usize; 3]| perms.iter().position(|q| q.0 == p).expect("closed");
        let mul = perms
            .iter()
            .map(|(a, _)| {
                perms
                    .iter()
                    .map(|(b, _)| index([b[a[0]], b[a[1]], b[a[2]]]))
                    .collect()
            })
            .collect();
        let names = perms.iter().map(|p| p.1.to_string()).collect();
        FiniteGroup::from_table(names, mul).expect("S3 table")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// Look an element up by name, or by index if the name is numeric and unused.
    pub fn element(&self, name: &str) -> Result<usize> {
        if let Some(i) = self.names.iter().position(|s| s == name) {
            return Ok(i);
        }
        match name.parse::<usize>() {
            Ok(i) if i < self.order() => Ok(i),
            _ => Err(Error::ElementNotInGroup(name.to_string())),
        }
    }

    pub fn check_element(&self, a: usize) -> Result<()> {
        if a < self.order() {
            Ok(())
        } else {
            Err(Error::ElementNotInGroup(format!("index {a} in a group of order {}", self.order())))
        }
    }

    /// `g·h·g⁻¹`.
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn is_central(&self, g: usize) -> bool {
        (0..self.order()).all(|h| self.mul(g, h) == self.mul(h, g))
    }

    /// The orbit of `h` under conjugation by powers of `g`, sorted.
    pub fn orbit(&self, g: usize, h: usize) -> Vec<usize> {
        let mut out = vec![h];
        let mut cur = self.conjugate(g, h);
        while cur != h {
            out.push(cur);
            cur = self.conjugate(g, cur);
        }
        out.sort_unstable();
        out
    }

    /// All conjugation orbits of `⟨g⟩`, ordered by smallest element.
    pub fn orbits(&self, g: usize) -> Vec<Vec<usize>> {
        let mut done = vec![false; self.order()];
        let mut out = Vec::new();
        for h in 0..self.order() {
            if !done[h] {
                let o = self.orbit(g, h);
                for &x in &o {
                    done[x] = true;
                }
                out.push(o);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_products() {
        let g = FiniteGroup::symmetric3();
        let e = |s| g.element(s).unwrap();
        assert_eq!(g.mul(e("(13)"), e("(12)")), e("(132)"));
        assert_eq!(g.mul(e("(12)"), e("(23)")), e("(132)"));
        assert_eq!(g.inv(e("(123)")), e("(132)"));
        assert!(!g.is_central(e("(12)")));
    }

    #[test]
    fn orbits_under_three_cycle() {
        let g = FiniteGroup::symmetric3();
        let c = g.element("(123)").unwrap();
        // Three-cycles commute with c, so they are fixed individually.
        let names: Vec<Vec<&str>> = g
            .orbits(c)
            .iter()
            .map(|o| o.iter().map(|&i| g.name(i)).collect())
            .collect();
        assert_eq!(
            names,
            vec![vec!["e"], vec!["(12)", "(13)", "(23)"], vec!["(123)"], vec!["(132)"]]
        );
        let sizes: Vec<usize> = g.orbits(g.element("(12)").unwrap()).iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 1, 2, 2]);
    }

    #[test]
    fn rejects_bad_tables() {
        let names = vec!["a".to_string(), "b".to_string()];
        let r = FiniteGroup::from_table(names.clone(), vec![vec![0, 1], vec![1, 1]]);
        assert!(matches!(r, Err(Error::InvalidGroup(_))));
        let r = FiniteGroup::from_table(names, vec![vec![0, 1]]);
        assert!(matches!(r, Err(Error::InvalidGroup(_))));
        assert!(FiniteGroup::from_json(r#"{"elements":["e"],"mul":[[0]]}"#).is_ok());
        assert!(matches!(FiniteGroup::from_json("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn json_round_trip() {
        let g = FiniteGroup::cyclic(6);
        let text = serde_json::to_string(&g.to_table()).unwrap();
        assert_eq!(FiniteGroup::from_json(&text).unwrap(), g);
        assert!(matches!(g.element("9"), Err(Error::ElementNotInGroup(_))));
    }
}
