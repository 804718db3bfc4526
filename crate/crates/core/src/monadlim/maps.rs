use std::collections::HashMap;
use std::sync::Arc;

use super::{truncate, SignWord, TruncatedT};
use crate::error::{Error, Result};
use crate::exactnum::{ExactMatrix, Scalar, SparseVec};
use crate::intertwine::Intertwiner;
use crate::pivpair::PivotalPair;
use crate::report::Report;

fn kron(fs: &[&ExactMatrix]) -> ExactMatrix {
    ExactMatrix::kron_all(fs)
}

fn unit_vec(i: usize) -> SparseVec {
    [(i, Scalar::one())].into_iter().collect()
}

/// Apply a dense matrix to a sparse carrier vector.
fn apply_dense(m: &ExactMatrix, v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (&j, s) in v {
        for i in 0..m.rows() {
            let e = m.get(i, j);
            if !e.is_zero() {
                let entry = out.entry(i).or_insert_with(Scalar::zero);
                *entry += &(e * s);
            }
        }
    }
    out.retain(|_, s| !s.is_zero());
    out
}

/// Iterate `plus : Q⊗X⊗P → X` and `minus : P⊗X⊗Q → X` along every word, giving
/// the map `⊕F_w(X) → X` as one row block per word, concatenated.
pub(crate) fn iterated_star(t: &TruncatedT, plus: &ExactMatrix, minus: &ExactMatrix) -> ExactMatrix {
    let n = t.n();
    let ip = ExactMatrix::identity(n);
    let mut blocks: HashMap<SignWord, ExactMatrix> = HashMap::new();
    let mut star = ExactMatrix::zeros(t.dim_x(), 0);
    for w in t.words() {
        let m = match w.0.split_first() {
            None => ExactMatrix::identity(t.dim_x()),
            Some((&s, rest)) => {
                let inner = &blocks[&SignWord(rest.to_vec())];
                let act = if s { plus } else { minus };
                act * &kron(&[&ip, inner, &ip])
            }
        };
        star = star.hstack(&m).expect("same row count");
        blocks.insert(w.clone(), m);
    }
    star
}

/// Restrict a map on the carrier to the quotient basis.
pub(crate) fn on_quotient(t: &TruncatedT, star: &ExactMatrix) -> ExactMatrix {
    ExactMatrix::from_fn(star.rows(), t.dim(), |i, j| star.get(i, t.complement()[j]).clone())
}

/// Whether a map on the carrier vanishes on the relation subspace.
pub(crate) fn kills_relations(t: &TruncatedT, star: &ExactMatrix) -> bool {
    t.relation_vectors().all(|r| apply_dense(star, r).is_empty())
}

impl TruncatedT {
    /// `ν = ψ₀ : X → T_{≤d}(X)`.
    pub fn nu(&self) -> ExactMatrix {
        let base = self.block_offset(&SignWord::empty()).expect("empty word");
        self.project_columns((0..self.dim_x()).map(|x| unit_vec(base + x)).collect())
    }

    /// `T₀ : T_{≤d}(𝟙) → 𝟙`, iterating `evl` on `+` and `evr` on `−`.
    pub fn t0(&self) -> Result<ExactMatrix> {
        if self.dim_x() != 1 {
            return Err(Error::ShapeMismatch("T₀ is defined on T(𝟙)".into()));
        }
        let p = self.pair();
        Ok(on_quotient(self, &iterated_star(self, &p.evl, &p.evr)))
    }

    /// The inclusion `T_{≤b}(X) → T_{≤d}(X)` for `b ≤ d`.
    pub fn inclusion_from(&self, lower: &TruncatedT) -> Result<ExactMatrix> {
        if lower.degree() > self.degree() || lower.dim_x() != self.dim_x() || lower.pair() != self.pair() {
            return Err(Error::ShapeMismatch("inclusion needs a lower truncation of the same X".into()));
        }
        Ok(self.project_columns(lower.complement().iter().map(|&c| unit_vec(c)).collect()))
    }

    /// `μ : T_{≤a}(T_{≤b}(X)) → T_{≤d}(X)` with `a + b ≤ d`, together with its source truncations.
    pub fn mu(&self, a: usize, b: usize) -> Result<MuMap> {
        if a + b > self.degree() {
            return Err(Error::DegreeExceeded {
                degree: a + b,
                bound: self.degree(),
            });
        }
        let inner = truncate(self.pair(), self.dim_x(), b)?;
        let outer = truncate(self.pair(), inner.dim(), a)?;
        let matrix = self.project_columns(outer.complement().iter().map(|&c| self.mu_star(&outer, &inner, c)).collect());
        Ok(MuMap { outer, inner, matrix })
    }

    /// Concatenate `ψ_v ∘ F_v(ψ_w)` at a single outer carrier coordinate.
    fn mu_star(&self, outer: &TruncatedT, inner: &TruncatedT, c: usize) -> SparseVec {
        self.mu_star_vec(outer, inner, &unit_vec(c))
    }

    /// `μ` applied to an arbitrary outer carrier vector.
    fn mu_star_vec(&self, outer: &TruncatedT, inner: &TruncatedT, v: &SparseVec) -> SparseVec {
        let n = self.n();
        let mut out = SparseVec::new();
        for (&c, s) in v {
            let (word, local) = outer.locate(c);
            let a = n.pow(word.len() as u32);
            let dy = outer.dim_x();
            let (ro, rest) = (local % a, local / a);
            let (y, lo) = (rest % dy, rest / dy);
            // Expand the inner class through its carrier representative.
            let rep = inner.complement()[y];
            let (w, inner_local) = inner.locate(rep);
            let b = n.pow(w.len() as u32);
            let dx = self.dim_x();
            let (ro2, rest2) = (inner_local % b, inner_local / b);
            let (x, lo2) = (rest2 % dx, rest2 / dx);
            let target = self.block_offset(&word.concat(w)).expect("word within bound");
            let k = target + ((lo * b + lo2) * dx + x) * (a * b) + ro2 * a + ro;
            let e = out.entry(k).or_insert_with(Scalar::zero);
            *e += s;
        }
        out.retain(|_, s| !s.is_zero());
        out
    }

    /// The nested cup `cvl_w`, indexed `r·N + l` with the `P_w` digits first.
    fn nested_cup(&self, w: &SignWord) -> Vec<Scalar> {
        let n = self.n();
        let p = self.pair();
        let mut cup = vec![Scalar::one()];
        let mut size = 1;
        for &s in w.0.iter().rev() {
            let c1 = if s { &p.cvl } else { &p.cvr };
            let mut next = vec![Scalar::zero(); size * size * n * n];
            for p1 in 0..n {
                for q1 in 0..n {
                    let e = c1.get(p1 * n + q1, 0);
                    if e.is_zero() {
                        continue;
                    }
                    for r in 0..size {
                        for l in 0..size {
                            let idx = (r * n + p1) * (size * n) + q1 * size + l;
                            next[idx] = e * &cup[r * size + l];
                        }
                    }
                }
            }
            cup = next;
            size *= n;
        }
        cup
    }

    /// `T₂` on one carrier coordinate of `T(X⊗Y)`, landing in `T(X)⊗T(Y)`.
    fn t2_star(&self, tx: &TruncatedT, ty: &TruncatedT, c: usize, cache: &mut ProjCache) -> SparseVec {
        let (w, local) = self.locate(c);
        let len = w.len();
        let big_n = self.n().pow(len as u32);
        let (dx, dy) = (tx.dim_x(), ty.dim_x());
        let (ro, rest) = (local % big_n, local / big_n);
        let (xy, lo) = (rest % (dx * dy), rest / (dx * dy));
        let (x, y) = (xy / dy, xy % dy);
        let (ox, oy) = (tx.block_offset(w).expect("word"), ty.block_offset(w).expect("word"));
        let cup = self.nested_cup(w);
        let mut out = SparseVec::new();
        for r in 0..big_n {
            for l in 0..big_n {
                let e = &cup[r * big_n + l];
                if e.is_zero() {
                    continue;
                }
                let i = ox + (lo * dx + x) * big_n + r;
                let j = oy + (l * dy + y) * big_n + ro;
                let pi = cache.get(tx, 0, i);
                let pj = cache.get(ty, 1, j);
                for (a, sa) in pi.iter() {
                    for (b, sb) in pj.iter() {
                        let entry = out.entry(a * ty.dim() + b).or_insert_with(Scalar::zero);
                        *entry += &(&(e * sa) * sb);
                    }
                }
            }
        }
        out.retain(|_, s| !s.is_zero());
        out
    }

    /// `T₂ : T_{≤d}(X⊗Y) → T_{≤d}(X)⊗T_{≤d}(Y)`; `self` must be the truncation at `X⊗Y`.
    pub fn comultiplication(&self, tx: &TruncatedT, ty: &TruncatedT) -> Result<ExactMatrix> {
        self.check_product(tx, ty)?;
        let mut cache = ProjCache::default();
        let cols: Vec<SparseVec> = self
            .complement()
            .iter()
            .map(|&c| self.t2_star(tx, ty, c, &mut cache))
            .collect();
        let mut m = ExactMatrix::zeros(tx.dim() * ty.dim(), cols.len());
        for (j, v) in cols.into_iter().enumerate() {
            for (i, s) in v {
                m.set(i, j, s);
            }
        }
        Ok(m)
    }

    /// Whether `T₂` vanishes on the relations of `T(X⊗Y)`.
    pub fn comultiplication_well_defined(&self, tx: &TruncatedT, ty: &TruncatedT) -> Result<bool> {
        self.check_product(tx, ty)?;
        let mut cache = ProjCache::default();
        for r in self.relation_vectors() {
            let mut acc = SparseVec::new();
            for (&c, s) in r {
                for (k, v) in self.t2_star(tx, ty, c, &mut cache) {
                    let e = acc.entry(k).or_insert_with(Scalar::zero);
                    *e += &(s * &v);
                }
            }
            if acc.values().any(|s| !s.is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_product(&self, tx: &TruncatedT, ty: &TruncatedT) -> Result<()> {
        if self.dim_x() != tx.dim_x() * ty.dim_x()
            || tx.degree() != self.degree()
            || ty.degree() != self.degree()
            || tx.pair() != self.pair()
            || ty.pair() != self.pair()
        {
            return Err(Error::ShapeMismatch("T₂ needs truncations at X, Y and X⊗Y of one degree".into()));
        }
        Ok(())
    }
}

/// Memoized projections of carrier unit vectors.
#[derive(Default)]
struct ProjCache {
    maps: [HashMap<usize, Vec<(usize, Scalar)>>; 2],
}

impl ProjCache {
    fn get(&mut self, t: &TruncatedT, slot: usize, i: usize) -> Vec<(usize, Scalar)> {
        self.maps[slot]
            .entry(i)
            .or_insert_with(|| t.project(unit_vec(i)).into_iter().collect())
            .clone()
    }
}

/// `μ` with the truncations it maps from.
#[derive(Clone, Debug)]
pub struct MuMap {
    pub outer: TruncatedT,
    pub inner: TruncatedT,
    pub matrix: ExactMatrix,
}

/// `T(f)` for `f : X → Y`, between truncations of equal degree.
pub fn apply_functor(src: &TruncatedT, tgt: &TruncatedT, f: &ExactMatrix) -> Result<ExactMatrix> {
    if f.shape() != (tgt.dim_x(), src.dim_x()) || src.degree() != tgt.degree() || src.pair() != tgt.pair() {
        return Err(Error::ShapeMismatch("T(f) needs f : X → Y and matching truncations".into()));
    }
    let n = src.n();
    let (dx, dy) = (src.dim_x(), tgt.dim_x());
    let cols = src
        .complement()
        .iter()
        .map(|&c| {
            let (w, local) = src.locate(c);
            let big_n = n.pow(w.len() as u32);
            let (ro, rest) = (local % big_n, local / big_n);
            let (x, lo) = (rest % dx, rest / dx);
            let base = tgt.block_offset(w).expect("same words");
            (0..dy)
                .filter(|&y| !f.get(y, x).is_zero())
                .map(|y| (base + (lo * dy + y) * big_n + ro, f.get(y, x).clone()))
                .collect()
        })
        .collect();
    Ok(tgt.project_columns(cols))
}

fn alpha_beta(obj: &Intertwiner) -> Result<(ExactMatrix, ExactMatrix)> {
    let p = obj.pair();
    let ix = ExactMatrix::identity(obj.dim_x());
    let iq = ExactMatrix::identity(p.dim_q());
    let alpha = &kron(&[&p.evl, &ix]) * &kron(&[&iq, obj.sigma()]);
    let beta = &kron(&[&ix, &p.evr]) * &kron(&[obj.sigma_inv()?, &iq]);
    Ok((alpha, beta))
}

fn check_counit_input(t: &TruncatedT, obj: &Intertwiner) -> Result<()> {
    if obj.dim_x() != t.dim_x() || obj.pair() != t.pair() {
        return Err(Error::InvalidObject("object does not match the truncation".into()));
    }
    let rep = obj.check();
    if let Some(c) = rep.failures().next() {
        return Err(Error::InvalidObject(c.name.clone()));
    }
    Ok(())
}

/// `θ : T_{≤d}(X) → X`, iterating `α_σ` on `+` and `β_σ` on `−`.
pub fn counit_action(t: &TruncatedT, obj: &Intertwiner) -> Result<ExactMatrix> {
    check_counit_input(t, obj)?;
    let (alpha, beta) = alpha_beta(obj)?;
    let star = iterated_star(t, &alpha, &beta);
    if !kills_relations(t, &star) {
        return Err(Error::InvalidObject("θ does not factor through the quotient".into()));
    }
    Ok(on_quotient(t, &star))
}

/// `θ` kills the relations and `θ∘ν = id`.
pub fn counit_report(t: &TruncatedT, obj: &Intertwiner) -> Result<Report> {
    check_counit_input(t, obj)?;
    let (alpha, beta) = alpha_beta(obj)?;
    let star = iterated_star(t, &alpha, &beta);
    let mut rep = Report::new(format!("counit θ, dimX={}, degree {}", t.dim_x(), t.degree()));
    rep.flag("θ kills relations", kills_relations(t, &star), None);
    rep.identity("θ∘ν = id", &(&on_quotient(t, &star) * &t.nu()));
    Ok(rep)
}

/// The structure maps at one truncation, with the checks they passed.
#[derive(Clone, Debug)]
pub struct StructureMaps {
    pub nu: ExactMatrix,
    pub t0: Option<ExactMatrix>,
    /// `T₂ : T(X⊗𝟙) → T(X)⊗T(𝟙)`.
    pub t2: ExactMatrix,
    /// `μ(a,b)` for every split `a + b = d`.
    pub mu: Vec<(usize, usize, ExactMatrix)>,
    pub report: Report,
}

/// Build `ν`, `T₀`, `T₂`, `μ` and check they are well defined with their unit and counit laws.
pub fn structure_maps(t: &TruncatedT) -> Result<StructureMaps> {
    let d = t.degree();
    let pair: &Arc<PivotalPair> = t.pair();
    let mut rep = Report::new(format!("structure maps, dimX={}, degree {d}", t.dim_x()));
    let nu = t.nu();
    let unit = truncate(pair, 1, d)?;
    let t0_unit = unit.t0()?;
    let t0 = (t.dim_x() == 1).then(|| t0_unit.clone());
    if let Some(t0) = &t0 {
        rep.identity("T₀∘ν = id", &(t0 * &nu));
    }

    rep.flag("T₂ well defined", t.comultiplication_well_defined(t, &unit)?, None);
    let t2 = t.comultiplication(t, &unit)?;
    let right_counit = &kron(&[&ExactMatrix::identity(t.dim()), &t0_unit]) * &t2;
    rep.identity("(id⊗T₀)∘T₂ = id", &right_counit);
    if t.dim_x() == 1 {
        let left_counit = &kron(&[&t0_unit, &ExactMatrix::identity(t.dim())]) * &t2;
        rep.identity("(T₀⊗id)∘T₂ = id", &left_counit);
    }

    let mut mus = Vec::new();
    for a in 0..=d {
        let b = d - a;
        let mu = t.mu(a, b)?;
        let ok = mu.outer.relation_vectors().all(|r| {
            let v = t.mu_star_vec(&mu.outer, &mu.inner, r);
            t.project(v).is_empty()
        });
        rep.flag(format!("μ({a},{b}) well defined"), ok, None);
        let incl_b = t.inclusion_from(&mu.inner)?;
        rep.equal(format!("μ({a},{b})∘ν = inclusion"), &(&mu.matrix * &mu.outer.nu()), &incl_b);
        let low = truncate(pair, t.dim_x(), a)?;
        let t_nu = apply_functor(&low, &mu.outer, &mu.inner.nu())?;
        rep.equal(
            format!("μ({a},{b})∘T(ν) = inclusion"),
            &(&mu.matrix * &t_nu),
            &t.inclusion_from(&low)?,
        );
        mus.push((a, b, mu.matrix));
    }
    Ok(StructureMaps {
        nu,
        t0,
        t2,
        mu: mus,
        report: rep,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intertwine::samples::random_object;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn column_of(dim: usize, v: &SparseVec) -> ExactMatrix {
        let mut c = ExactMatrix::zeros(dim, 1);
        for (&i, s) in v {
            c.set(i, 0, s.clone());
        }
        c
    }

    fn pair(q: ExactMatrix) -> Arc<PivotalPair> {
        Arc::new(PivotalPair::from_matrix(q.rows(), &q).unwrap())
    }

    #[test]
    fn nu_then_t0_is_identity() {
        let pp = pair(ExactMatrix::from_i64(&[&[2, 1], &[0, 1]]));
        let t = truncate(&pp, 1, 2).unwrap();
        assert!((&t.t0().unwrap() * &t.nu()).is_identity());
    }

    #[test]
    fn mu_concatenates_words() {
        let pp = pair(ExactMatrix::identity(1));
        let t = truncate(&pp, 1, 2).unwrap();
        let mu = t.mu(1, 1).unwrap();
        // ψ_+ applied to the class ψ_+ of the inner truncation.
        let inner_plus = mu.inner.project(unit_vec(mu.inner.block_offset(&SignWord(vec![true])).unwrap()));
        let (&y, _) = inner_plus.iter().next().unwrap();
        let outer_plus = mu.outer.block_offset(&SignWord(vec![true])).unwrap() + y;
        let got = t.project(t.mu_star(&mu.outer, &mu.inner, outer_plus));
        let want = t.project(unit_vec(t.block_offset(&SignWord(vec![true, true])).unwrap()));
        assert_eq!(got, want);
        assert!(matches!(t.mu(2, 1), Err(Error::DegreeExceeded { degree: 3, bound: 2 })));
    }

    #[test]
    fn structure_maps_pass() {
        for q in [ExactMatrix::identity(1), ExactMatrix::diagonal(&[Scalar::from_i64(3)])] {
            let pp = pair(q);
            for dx in 1..=2 {
                let t = truncate(&pp, dx, 2).unwrap();
                let sm = structure_maps(&t).unwrap();
                assert!(sm.report.passed, "{:#?}", sm.report);
            }
        }
        let pp = pair(ExactMatrix::from_i64(&[&[1, 1], &[0, 1]]));
        let t = truncate(&pp, 1, 2).unwrap();
        let sm = structure_maps(&t).unwrap();
        assert!(sm.report.passed, "{:#?}", sm.report);
    }

    #[test]
    fn comultiplication_on_two_factors() {
        let pp = pair(ExactMatrix::identity(1));
        let tx = truncate(&pp, 2, 2).unwrap();
        let ty = truncate(&pp, 1, 2).unwrap();
        let txy = truncate(&pp, 2, 2).unwrap();
        assert!(txy.comultiplication_well_defined(&tx, &ty).unwrap());
        let t2 = txy.comultiplication(&tx, &ty).unwrap();
        assert_eq!(t2.shape(), (tx.dim() * ty.dim(), txy.dim()));
    }

    #[test]
    fn scalar_counit() {
        let pp = pair(ExactMatrix::identity(1));
        let s = Scalar::from_i64(3);
        let obj = Intertwiner::new(1, ExactMatrix::diagonal(std::slice::from_ref(&s)), pp.clone()).unwrap();
        let t = truncate(&pp, 1, 2).unwrap();
        let theta = counit_action(&t, &obj).unwrap();
        let slot = |w: &str| {
            let v = t.project(unit_vec(t.block_offset(&SignWord::parse(w).unwrap()).unwrap()));
            &theta * &column_of(t.dim(), &v)
        };
        assert_eq!(slot("++").get(0, 0), &s.pow(2));
        assert_eq!(slot("--").get(0, 0), &s.pow(-2));
        let unit = Intertwiner::unit(pp.clone());
        assert_eq!(counit_action(&t, &unit).unwrap(), t.t0().unwrap());
    }

    #[test]
    fn random_counits() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for q in [ExactMatrix::identity(2), ExactMatrix::from_i64(&[&[1, 2], &[0, 3]])] {
            let pp = pair(q);
            for dim in 1..=2 {
                let obj = random_object(&mut rng, &pp, dim).unwrap();
                let t = truncate(&pp, dim, 2).unwrap();
                let rep = counit_report(&t, &obj).unwrap();
                assert!(rep.passed, "{rep:#?}");
            }
        }
    }
}
