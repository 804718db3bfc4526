//! Command-line front end.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactnum::{ExactMatrix, Field, Scalar};
use crate::freehopf::{build_presentation, complete, verify_hopf, word_names};
use crate::gvec::{enumerate_supports, graded_pair, FiniteGroup};
use crate::intertwine::{
    diagram_check, dual_objects, duality_report, left_hom_with_inverse, right_hom_with_inverse,
    tensor_objects, DiagramIntertwiner, Intertwiner, ObjectJson, PivotalDiagram,
};
use crate::monadlim::{augmentation_check, compare_with_hopf, hopf_filtration_dim, truncate};
use crate::pivpair::{is_pivotal_morphism, left_transpose, right_transpose, PivotalPair};
use crate::report::Report;
use crate::suite::run_suite;

/// Exit code when every check passes.
pub const EXIT_OK: i32 = 0;
/// Exit code when a mathematical check fails.
pub const EXIT_FAILED: i32 = 1;
/// Exit code for malformed input or usage.
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "pivhopf", version, about = "Exact checks for pivotal pairs, intertwined objects and their Hopf monads")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Scalar field: `q` or `fp:<p>`.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    pub field: Field,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
}

fn parse_field(s: &str) -> std::result::Result<Field, String> {
    Field::parse(s).map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pivotal pairs.
    #[command(subcommand)]
    Pivotal(PivotalCmd),
    /// Objects intertwined with a pivotal pair.
    #[command(subcommand)]
    Cpq(CpqCmd),
    /// The matrix Hopf algebra of a pair.
    #[command(subcommand)]
    Hopf(HopfCmd),
    /// Truncations of the free monad.
    #[command(subcommand)]
    Monad(MonadCmd),
    /// Graded objects over a finite group.
    #[command(subcommand)]
    Gvec(GvecCmd),
    /// The full verification battery.
    #[command(subcommand)]
    Suite(SuiteCmd),
}

#[derive(Args, Debug, Clone)]
struct MatrixArgs {
    /// Size of the pair.
    #[arg(long)]
    n: Option<usize>,
    /// The matrix Q: a JSON file, `identity`, or `diag:a,b,...`.
    #[arg(long = "Q", default_value = "identity")]
    q: String,
}

#[derive(Subcommand, Debug)]
enum PivotalCmd {
    /// Check the snake identities of a pair given as JSON.
    Check { pair: PathBuf },
    /// Build the pair of a matrix Q and check it.
    FromMatrix(MatrixArgs),
    /// Left and right transposes of `f : P₁ → P₂`.
    Transpose {
        source: PathBuf,
        target: PathBuf,
        /// The map as a JSON matrix.
        #[arg(long)]
        map: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum CpqCmd {
    Check { object: PathBuf },
    Tensor { a: PathBuf, b: PathBuf },
    HomLeft { a: PathBuf, b: PathBuf },
    HomRight { a: PathBuf, b: PathBuf },
    Dual { object: PathBuf },
    /// Check an object over a diagram of pairs.
    Diagram { diagram: PathBuf, object: PathBuf },
}

#[derive(Subcommand, Debug)]
enum HopfCmd {
    /// Presentation and bounded rewriting system.
    Build {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Verify the Hopf algebra axioms up to a degree.
    Verify {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Export the presentation.
    Export {
        #[command(flatten)]
        matrix: MatrixArgs,
    },
}

#[derive(Subcommand, Debug)]
enum MonadCmd {
    Truncate {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long = "dimX", default_value_t = 1)]
        dim_x: usize,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    Augment {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long = "dimX", default_value_t = 1)]
        dim_x: usize,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
}

#[derive(Subcommand, Debug)]
enum GvecCmd {
    Enumerate {
        /// A group table JSON file, or one of `Z<n>` and `S3`.
        #[arg(long)]
        group: String,
        #[arg(long)]
        g: String,
        #[arg(long = "max-dim", default_value_t = 3)]
        max_dim: usize,
    },
}

#[derive(Subcommand, Debug)]
enum SuiteCmd {
    Run,
}

/// Parse `argv` (including the program name) and run; returns the exit code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    dispatch_to(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`dispatch`] with explicit output streams.
pub fn dispatch_to<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match run(&cli) {
        Ok((value, passed)) => {
            let text = match serde_json::to_string_pretty(&value) {
                Ok(t) => t,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    return EXIT_FAILED;
                }
            };
            let written = match &cli.run.json {
                Some(path) => fs::write(path, format!("{text}\n")).map_err(|e| e.to_string()),
                None => writeln!(out, "{text}").map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: cannot write report: {e}");
                return EXIT_INPUT;
            }
            if passed {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_input_error() {
                EXIT_INPUT
            } else {
                EXIT_FAILED
            }
        }
    }
}

type Outcome = Result<(serde_json::Value, bool)>;

fn emit<T: Serialize>(value: &T, passed: bool) -> Outcome {
    Ok((serde_json::to_value(value)?, passed))
}

fn report(rep: &Report) -> Outcome {
    emit(rep, rep.passed)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&read(path)?)?)
}

fn embed_pair(pp: &PivotalPair, field: Field) -> Result<PivotalPair> {
    PivotalPair::new(
        pp.dim_p(),
        pp.dim_q(),
        pp.cvl.embed(field)?,
        pp.evl.embed(field)?,
        pp.cvr.embed(field)?,
        pp.evr.embed(field)?,
    )
}

fn load_pair(path: &Path, field: Field) -> Result<PivotalPair> {
    embed_pair(&read_json(path)?, field)
}

fn load_object(path: &Path, field: Field) -> Result<Intertwiner> {
    let mut o: ObjectJson = read_json(path)?;
    o.sigma = o.sigma.embed(field)?;
    o.q = o.q.map(|q| q.embed(field)).transpose()?;
    o.pair = o.pair.map(|p| embed_pair(&p, field)).transpose()?;
    o.build()
}

/// Resolve `--Q` together with an optional `--n`.
pub fn parse_matrix_spec(spec: &str, n: Option<usize>, field: Field) -> Result<ExactMatrix> {
    let q = if spec == "identity" {
        ExactMatrix::identity(n.unwrap_or(1))
    } else if let Some(list) = spec.strip_prefix("diag:") {
        let entries = list
            .split(',')
            .map(|s| Scalar::parse(s.trim()))
            .collect::<Result<Vec<_>>>()?;
        ExactMatrix::diagonal(&entries)
    } else {
        read_json(Path::new(spec))?
    };
    if let Some(n) = n {
        if q.shape() != (n, n) {
            return Err(Error::ShapeMismatch(format!(
                "Q is {}x{} but --n is {n}",
                q.rows(),
                q.cols()
            )));
        }
    }
    if !q.is_square() {
        return Err(Error::ShapeMismatch("Q must be square".into()));
    }
    let q = q.embed(field)?;
    if q.invert().is_err() {
        return Err(Error::Parse("Q must be invertible".into()));
    }
    Ok(q)
}

fn load_group(spec: &str) -> Result<FiniteGroup> {
    match spec {
        "S3" => Ok(FiniteGroup::symmetric3()),
        _ => match spec.strip_prefix('Z').and_then(|k| k.parse::<usize>().ok()) {
            Some(k) if k > 0 => Ok(FiniteGroup::cyclic(k)),
            _ => FiniteGroup::from_json(&read(Path::new(spec))?),
        },
    }
}

fn object_output(obj: &Intertwiner, rep: &Report) -> Outcome {
    emit(&json!({ "object": ObjectJson::from(obj), "report": rep }), rep.passed)
}

fn hom_output(result: (Intertwiner, ExactMatrix)) -> Outcome {
    let (h, inv) = result;
    let mut rep = h.check();
    rep.identity("σ∘σ⁻¹ (displayed)", &(h.sigma() * &inv));
    rep.identity("σ⁻¹∘σ (displayed)", &(&inv * h.sigma()));
    object_output(&h, &rep)
}

fn run(cli: &Cli) -> Outcome {
    let field = cli.run.field;
    match &cli.command {
        Command::Pivotal(cmd) => match cmd {
            PivotalCmd::Check { pair } => report(&load_pair(pair, field)?.check()),
            PivotalCmd::FromMatrix(m) => {
                let q = parse_matrix_spec(&m.q, m.n, field)?;
                let pp = PivotalPair::from_matrix(q.rows(), &q)?;
                let rep = pp.check();
                emit(&json!({ "pair": pp, "report": rep }), rep.passed)
            }
            PivotalCmd::Transpose { source, target, map } => {
                let (p1, p2) = (load_pair(source, field)?, load_pair(target, field)?);
                let f: ExactMatrix = read_json(map)?;
                let f = f.embed(field)?;
                emit(
                    &json!({
                        "left": left_transpose(&f, &p1, &p2)?,
                        "right": right_transpose(&f, &p1, &p2)?,
                        "pivotal": is_pivotal_morphism(&f, &p1, &p2)?,
                    }),
                    true,
                )
            }
        },
        Command::Cpq(cmd) => match cmd {
            CpqCmd::Check { object } => report(&load_object(object, field)?.check()),
            CpqCmd::Tensor { a, b } => {
                let t = tensor_objects(&load_object(a, field)?, &load_object(b, field)?)?;
                object_output(&t, &t.check())
            }
            CpqCmd::HomLeft { a, b } => {
                hom_output(left_hom_with_inverse(&load_object(a, field)?, &load_object(b, field)?)?)
            }
            CpqCmd::HomRight { a, b } => {
                hom_output(right_hom_with_inverse(&load_object(a, field)?, &load_object(b, field)?)?)
            }
            CpqCmd::Dual { object } => {
                let a = load_object(object, field)?;
                let (l, r) = dual_objects(&a)?;
                let rep = duality_report(&a)?;
                emit(
                    &json!({
                        "left": ObjectJson::from(&l),
                        "right": ObjectJson::from(&r),
                        "report": rep,
                    }),
                    rep.passed,
                )
            }
            CpqCmd::Diagram { diagram, object } => {
                let d: PivotalDiagram = read_json(diagram)?;
                let o: DiagramIntertwiner = read_json(object)?;
                report(&diagram_check(&d, &o)?)
            }
        },
        Command::Hopf(cmd) => match cmd {
            HopfCmd::Build { matrix, degree } => {
                let q = parse_matrix_spec(&matrix.q, matrix.n, field)?;
                let pres = build_presentation(q.rows(), &q)?;
                let rs = complete(&pres, *degree)?;
                let n = pres.n;
                let rules: Vec<_> = rs
                    .rules()
                    .iter()
                    .map(|r| {
                        let rhs: Vec<(String, Vec<String>)> = r
                            .rhs
                            .terms()
                            .iter()
                            .map(|(w, c)| (c.to_string(), word_names(n, w)))
                            .collect();
                        json!({ "lhs": word_names(n, &r.lhs), "rhs": rhs })
                    })
                    .collect();
                emit(
                    &json!({
                        "presentation": pres.to_json(),
                        "degree": degree,
                        "status": rs.status(),
                        "unresolved_above_bound": rs.unresolved_above_bound(),
                        "normal_words_per_degree": rs.normal_word_counts(*degree),
                        "rules": rules,
                    }),
                    true,
                )
            }
            HopfCmd::Verify { matrix, degree } => {
                let q = parse_matrix_spec(&matrix.q, matrix.n, field)?;
                report(&verify_hopf(&build_presentation(q.rows(), &q)?, *degree)?)
            }
            HopfCmd::Export { matrix } => {
                let q = parse_matrix_spec(&matrix.q, matrix.n, field)?;
                emit(&build_presentation(q.rows(), &q)?.to_json(), true)
            }
        },
        Command::Monad(cmd) => match cmd {
            MonadCmd::Truncate { matrix, dim_x, degree } => {
                let q = parse_matrix_spec(&matrix.q, matrix.n, field)?;
                let pp = Arc::new(PivotalPair::from_matrix(q.rows(), &q)?);
                let t = truncate(&pp, *dim_x, *degree)?;
                let pres = build_presentation(q.rows(), &q)?;
                let rep = compare_with_hopf(&t, &pres);
                let (normal_forms, oracle) = hopf_filtration_dim(&pres, *degree);
                let words: Vec<_> = t
                    .block_table()
                    .into_iter()
                    .map(|(w, d)| json!({ "word": w, "dim": d }))
                    .collect();
                emit(
                    &json!({
                        "n": t.n(),
                        "dimX": t.dim_x(),
                        "degree": t.degree(),
                        "words": words,
                        "carrier_dim": t.total_dim(),
                        "relation_instances": t.relation_instances(),
                        "relation_rank": t.relation_rank(),
                        "quotient_dim": t.dim(),
                        "oracle": {
                            "normal_forms": normal_forms,
                            "linear_algebra": oracle,
                            "expected": t.dim_x() * oracle,
                        },
                        "report": rep,
                    }),
                    rep.passed,
                )
            }
            MonadCmd::Augment { matrix, dim_x, degree } => {
                let q = parse_matrix_spec(&matrix.q, matrix.n, field)?;
                let pp = Arc::new(PivotalPair::from_matrix(q.rows(), &q)?);
                report(&augmentation_check(&truncate(&pp, *dim_x, *degree)?)?)
            }
        },
        Command::Gvec(GvecCmd::Enumerate { group, g, max_dim }) => {
            let group = load_group(group)?;
            let g = group.element(g)?;
            let pair = graded_pair(&group, g)?;
            let snakes = pair.check();
            let listed = enumerate_supports(&group, g, *max_dim)?;
            let passed = snakes.passed && listed.iter().all(|e| e.report.passed);
            let objects: Vec<_> = listed.iter().map(|e| e.to_json(&group)).collect();
            let orbits: Vec<Vec<&str>> = group
                .orbits(g)
                .iter()
                .map(|o| o.iter().map(|&h| group.name(h)).collect())
                .collect();
            emit(
                &json!({
                    "group": group.to_table(),
                    "g": group.name(g),
                    "max_dim": max_dim,
                    "pair": snakes,
                    "orbits": orbits,
                    "objects": objects,
                }),
                passed,
            )
        }
        Command::Suite(SuiteCmd::Run) => {
            let rep = run_suite(cli.run.seed);
            emit(&rep, rep.passed)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = dispatch_to(std::iter::once("pivhopf").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn matrix_specs() {
        let f = Field::Rational;
        assert_eq!(parse_matrix_spec("identity", Some(3), f).unwrap(), ExactMatrix::identity(3));
        let d = parse_matrix_spec("diag:2,1/3", None, f).unwrap();
        assert_eq!(d.get(1, 1), &Scalar::ratio(1, 3));
        assert!(matches!(parse_matrix_spec("diag:2,3", Some(3), f), Err(Error::ShapeMismatch(_))));
        assert!(parse_matrix_spec("diag:0", None, f).is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_INPUT);
        assert_eq!(run_args(&["hopf", "verify", "--Q", "diag:1,x"]).0, EXIT_INPUT);
        assert_eq!(run_args(&["--field", "fp:4", "hopf", "export"]).0, EXIT_INPUT);
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn hopf_verify_small() {
        let (code, out, _) = run_args(&["hopf", "verify", "--n", "1", "--Q", "identity", "--degree", "3"]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["passed"], json!(true));
    }

    #[test]
    fn gvec_builtin_groups() {
        let (code, out, _) = run_args(&["gvec", "enumerate", "--group", "S3", "--g", "(12)", "--max-dim", "2"]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["orbits"].as_array().unwrap().len(), 4);
        assert_eq!(run_args(&["gvec", "enumerate", "--group", "S3", "--g", "(14)"]).0, EXIT_INPUT);
    }
}
