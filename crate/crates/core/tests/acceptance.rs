use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use pivhopf::suite::{run_criterion, title, CRITERIA};

const SEED: u64 = 7;

fn limit(id: u8) -> Duration {
    Duration::from_secs(match id {
        1 | 2 => 5,
        3 | 7 => 60,
        4 => 120,
        5 => 300,
        6 => 30,
        8 => 10,
        _ => 600,
    })
}

fn line(id: u8, passed: bool, detail: &str) -> bool {
    let verdict = if passed { "PASS" } else { "FAIL" };
    println!("criterion {id} ({}): {verdict} {detail}", title(id));
    passed
}

fn determinism() -> (bool, String) {
    let exe = env!("CARGO_BIN_EXE_pivhopf");
    let run = || Command::new(exe).args(["suite", "run", "--seed", "7"]).output();
    match (run(), run()) {
        (Ok(a), Ok(b)) => {
            let same = a.stdout == b.stdout;
            let ok = same && a.status.success() && b.status.success() && !a.stdout.is_empty();
            let json = serde_json::from_slice::<serde_json::Value>(&a.stdout).is_ok();
            (ok && json, format!("({} bytes, identical: {same}, valid JSON: {json})", a.stdout.len()))
        }
        (Err(e), _) | (_, Err(e)) => (false, format!("({e})")),
    }
}

fn main() -> ExitCode {
    let mut all = true;
    for id in CRITERIA {
        let start = Instant::now();
        let rep = run_criterion(id, SEED);
        let took = start.elapsed();
        let in_time = took < limit(id);
        let failures: Vec<&str> = rep
            .report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .take(3)
            .map(|c| c.name.as_str())
            .collect();
        let detail = format!(
            "({} cases, {:.2}s of {}s){}",
            rep.cases,
            took.as_secs_f64(),
            limit(id).as_secs(),
            if failures.is_empty() { String::new() } else { format!(" failing: {}", failures.join("; ")) }
        );
        all &= line(id, rep.passed && in_time, &detail);
    }
    let (ok, detail) = determinism();
    all &= line(9, ok, &detail);
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
