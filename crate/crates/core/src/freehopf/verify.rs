use super::ncpoly::{NCPoly, TensorPoly, Word};
use super::presentation::{word_names, NCPresentation};
use super::rewrite::{complete, RewriteSystem};
use crate::error::Result;
use crate::exactnum::Scalar;
use crate::par::par_map;
use crate::report::Report;

/// Outcome of one axiom on one word: `None` when it holds.
type Outcome = Option<String>;

fn par_check<T: Sync, F>(words: &[T], f: F) -> Vec<Outcome>
where
    F: Fn(&T) -> Outcome + Sync,
{
    par_map(words, f)
}

fn summarize(rep: &mut Report, name: &str, n: usize, words: &[Word], outcomes: Vec<Outcome>) {
    let bad: Vec<String> = words
        .iter()
        .zip(outcomes)
        .filter_map(|(w, o)| o.map(|msg| format!("{}: {msg}", word_names(n, w).join("·"))))
        .collect();
    if bad.is_empty() {
        rep.flag(name, true, Some(format!("{} words", words.len())));
    } else {
        let shown = bad.iter().take(5).cloned().collect::<Vec<_>>().join("; ");
        rep.flag(name, false, Some(format!("{} failures: {shown}", bad.len())));
    }
}

fn tensor_eq(rs: &RewriteSystem, a: &TensorPoly, b: &TensorPoly) -> Outcome {
    let mut diff = a.clone();
    diff.add_scaled(&Scalar::from_i64(-1), b);
    match rs.normal_form_tensor(&diff) {
        Ok(r) if r.is_zero() => None,
        Ok(r) => Some(format!("{} surviving terms", r.terms().len())),
        Err(e) => Some(e.to_string()),
    }
}

fn poly_eq(rs: &RewriteSystem, a: &NCPoly, b: &NCPoly) -> Outcome {
    match rs.normal_form(&(a - b)) {
        Ok(r) if r.is_zero() => None,
        Ok(r) => Some(format!("{} surviving terms", r.terms().len())),
        Err(e) => Some(e.to_string()),
    }
}

/// `m(S⊗id)Δ(w)` computed letter by letter so every intermediate stays within the bound.
fn left_antipode(pres: &NCPresentation, rs: &RewriteSystem, w: &Word) -> Result<NCPoly> {
    let mut y = NCPoly::one();
    for &g in &w.0 {
        let mut next = NCPoly::zero();
        for (legs, c) in pres.delta[g as usize].terms() {
            let s = pres.antipode_word(&legs[0]);
            let t = &(&s * &y) * &NCPoly::word(legs[1].clone());
            next.add_scaled(c, &t);
        }
        y = rs.normal_form(&next)?;
    }
    Ok(y)
}

/// `m(id⊗S)Δ(w)`, built from the innermost letter outwards.
fn right_antipode(pres: &NCPresentation, rs: &RewriteSystem, w: &Word) -> Result<NCPoly> {
    let mut z = NCPoly::one();
    for &g in w.0.iter().rev() {
        let mut next = NCPoly::zero();
        for (legs, c) in pres.delta[g as usize].terms() {
            let s = pres.antipode_word(&legs[1]);
            let t = &(&NCPoly::word(legs[0].clone()) * &z) * &s;
            next.add_scaled(c, &t);
        }
        z = rs.normal_form(&next)?;
    }
    Ok(z)
}

/// Check the Hopf axioms exactly on relations and on every normal word within the bound.
pub fn verify_hopf(pres: &NCPresentation, d: usize) -> Result<Report> {
    let rs = complete(pres, d)?;
    verify_with(pres, &rs)
}

pub fn verify_with(pres: &NCPresentation, rs: &RewriteSystem) -> Result<Report> {
    let d = rs.bound();
    let n = pres.n;
    let mut rep = Report::new(format!("Hopf axioms, n={n}, degree {d}"));
    rep.flag(
        "rewriting",
        true,
        Some(format!(
            "{} rules, {:?}, {} overlaps above bound",
            rs.rules().len(),
            rs.status(),
            rs.unresolved_above_bound()
        )),
    );

    // (a) well-definedness on relations
    let mut delta_ok = true;
    let mut eps_ok = true;
    let mut s_ok = true;
    for r in &pres.relations {
        delta_ok &= rs.normal_form_tensor(&pres.delta_poly(r))?.is_zero();
        eps_ok &= pres.counit_poly(r).is_zero();
        s_ok &= rs.normal_form(&pres.antipode_poly(r))?.is_zero();
    }
    rep.flag("(a) delta kills relations", delta_ok, None);
    rep.flag("(a) counit kills relations", eps_ok, None);
    rep.flag("(a) antipode kills relations", s_ok, None);

    let words: Vec<Word> = rs.normal_words(d.saturating_sub(1));

    // (b) coassociativity and counit
    let coassoc = par_check(&words, |w| {
        let dw = pres.delta_word(w);
        let lhs = dw.expand_leg(0, |u| pres.delta_word(u));
        let rhs = dw.expand_leg(1, |u| pres.delta_word(u));
        tensor_eq(rs, &lhs, &rhs)
    });
    summarize(&mut rep, "(b) coassociativity", n, &words, coassoc);
    let counit = par_check(&words, |w| {
        let dw = pres.delta_word(w);
        let mut left = NCPoly::zero();
        let mut right = NCPoly::zero();
        for (legs, c) in dw.terms() {
            left.add_term(c * &pres.counit_word(&legs[0]), legs[1].clone());
            right.add_term(c * &pres.counit_word(&legs[1]), legs[0].clone());
        }
        let target = NCPoly::word(w.clone());
        poly_eq(rs, &left, &target).or_else(|| poly_eq(rs, &right, &target))
    });
    summarize(&mut rep, "(b) counit", n, &words, counit);

    // (c) multiplicativity on products of normal words
    let all = rs.normal_words(d);
    let pairs: Vec<(Word, Word)> = all
        .iter()
        .flat_map(|x| {
            all.iter()
                .filter(move |y| x.len() + y.len() <= d && !x.is_empty() && !y.is_empty())
                .map(move |y| (x.clone(), y.clone()))
        })
        .collect();
    let joined: Vec<Word> = pairs.iter().map(|(x, y)| x.concat(y)).collect();
    let mult = par_check(&pairs, |(x, y)| {
        let nf = match rs.normal_form_word(&x.concat(y)) {
            Ok(p) => p,
            Err(e) => return Some(e.to_string()),
        };
        let lhs = pres.delta_poly(&nf);
        let rhs = pres.delta_word(x).mul(&pres.delta_word(y));
        if let Some(m) = tensor_eq(rs, &lhs, &rhs) {
            return Some(format!("delta: {m}"));
        }
        if pres.counit_poly(&nf) != &pres.counit_word(x) * &pres.counit_word(y) {
            return Some("counit not multiplicative".into());
        }
        let s_lhs = pres.antipode_poly(&nf);
        let s_rhs = &pres.antipode_word(y) * &pres.antipode_word(x);
        poly_eq(rs, &s_lhs, &s_rhs).map(|m| format!("antipode: {m}"))
    });
    summarize(&mut rep, "(c) bialgebra compatibility", n, &joined, mult);

    // (d) antipode laws
    let anti = par_check(&words, |w| {
        let unit = NCPoly::constant(pres.counit_word(w));
        for (side, got) in [
            ("left", left_antipode(pres, rs, w)),
            ("right", right_antipode(pres, rs, w)),
        ] {
            match got {
                Ok(p) if p == unit => {}
                Ok(_) => return Some(format!("{side} law fails")),
                Err(e) => return Some(format!("{side} law: {e}")),
            }
        }
        None
    });
    summarize(&mut rep, "(d) antipode laws", n, &words, anti);

    // (e) involutive antipode for the identity matrix
    if pres.q_is_identity() {
        let inv = par_check(&words, |w| {
            let ss = pres.antipode_poly(&pres.antipode_word(w));
            poly_eq(rs, &ss, &NCPoly::word(w.clone()))
        });
        summarize(&mut rep, "(e) S∘S = id", n, &words, inv);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ExactMatrix;
    use crate::freehopf::presentation::build_presentation;

    fn run(n: usize, q: ExactMatrix, d: usize) -> Report {
        let pres = build_presentation(n, &q).unwrap();
        verify_hopf(&pres, d).unwrap()
    }

    #[test]
    fn scalar_cases_pass() {
        for q in [1, 2] {
            let rep = run(1, ExactMatrix::diagonal(&[Scalar::from_i64(q)]), 4);
            assert!(rep.passed, "{rep:#?}");
            assert_eq!(rep.checks.iter().any(|c| c.name.starts_with("(e)")), q == 1);
        }
        let rep = run(1, ExactMatrix::diagonal(&[Scalar::ratio(1, 3)]), 4);
        assert!(rep.passed, "{rep:#?}");
    }

    #[test]
    fn scalar_antipode_squares() {
        let pres = build_presentation(1, &ExactMatrix::diagonal(&[Scalar::from_i64(2)])).unwrap();
        let e = Word::letter(1);
        let s = pres.antipode_word(&e);
        assert_eq!(s, NCPoly::term(Scalar::from_i64(2), Word::letter(0)));
        assert_eq!(pres.antipode_poly(&s), NCPoly::word(e));
    }

    #[test]
    fn identity_two_by_two() {
        let rep = run(2, ExactMatrix::identity(2), 3);
        assert!(rep.passed, "{rep:#?}");
    }

    #[test]
    fn unipotent_two_by_two() {
        let rep = run(2, ExactMatrix::from_i64(&[&[1, 1], &[0, 1]]), 3);
        assert!(rep.passed, "{rep:#?}");
    }
}
