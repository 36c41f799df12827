//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p fibrep-cli --test acceptance`.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use fibrep::verify::{self, Claim, Options, VerificationReport};

struct Criterion {
    number: u32,
    title: &'static str,
    claim: Claim,
    /// Check-name prefixes within the claim group that belong to this criterion.
    checks: &'static [&'static str],
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        number: 1,
        title: "normalization DFA",
        claim: Claim::Automata,
        checks: &["normalization-"],
    },
    Criterion {
        number: 2,
        title: "path-count extraction",
        claim: Claim::Automata,
        checks: &["rep-"],
    },
    Criterion {
        number: 3,
        title: "oracle agreement",
        claim: Claim::Robbins,
        checks: &["r(8)", "a(0..4)", "oracle-"],
    },
    Criterion {
        number: 4,
        title: "minimization",
        claim: Claim::Robbins,
        checks: &["minimized-rank", "fixture-equivalence"],
    },
    Criterion {
        number: 5,
        title: "boundedness",
        claim: Claim::Robbins,
        checks: &["orbit-size", "semigroup-size", "outputs"],
    },
    Criterion {
        number: 6,
        title: "output automaton and synchronization",
        claim: Claim::Robbins,
        checks: &["dfao-faithful", "synchronizing-block"],
    },
    Criterion {
        number: 7,
        title: "minimal polynomials and values at F_n",
        claim: Claim::Theorem1,
        checks: &[""],
    },
    Criterion {
        number: 8,
        title: "mod 3 differences",
        claim: Claim::Mod3,
        checks: &[""],
    },
    Criterion {
        number: 9,
        title: "mod 4 difference",
        claim: Claim::Mod4,
        checks: &[""],
    },
    Criterion {
        number: 10,
        title: "r(F_n^2 - 1) = F_n",
        claim: Claim::Stockmeyer,
        checks: &[""],
    },
];

fn select<'a>(reports: &'a [VerificationReport], c: &Criterion) -> Vec<&'a VerificationReport> {
    let group = format!("{}.", c.claim.id());
    reports
        .iter()
        .filter(|r| {
            r.claim
                .strip_prefix(&group)
                .is_some_and(|name| c.checks.iter().any(|p| name.starts_with(p)))
        })
        .collect()
}

fn print_line(number: u32, title: &str, passed: bool, detail: &str) {
    let status = if passed { "PASS" } else { "FAIL" };
    println!("[{status}] criterion {number}: {title}: {detail}");
}

fn run_fibrep(args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_fibrep"))
        .args(args)
        .output()
        .map_err(|e| format!("cannot run fibrep: {e}"))?;
    if out.status.success() {
        Ok(())
    } else {
        Err(format!(
            "fibrep {} failed: {}",
            args.join(" "),
            String::from_utf8_lossy(&out.stderr).trim()
        ))
    }
}

fn artifacts(dir: &Path) -> Result<Vec<(String, Vec<u8>)>, String> {
    let dir_s = dir.to_str().ok_or("non-UTF-8 temp path")?;
    for target in ["berstel", "even", "mod3", "mod4"] {
        run_fibrep(&["build", target, "--out", dir_s])?;
    }
    let a = dir.join("a.json");
    run_fibrep(&["derive", "a", "--out", a.to_str().unwrap()])?;
    run_fibrep(&[
        "minimize",
        a.to_str().unwrap(),
        "--out",
        dir.join("a.min.json").to_str().unwrap(),
    ])?;
    run_fibrep(&[
        "minimize",
        dir.join("mod3.linrep.json").to_str().unwrap(),
        "--out",
        dir.join("mod3.min.json").to_str().unwrap(),
    ])?;
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .map_err(|e| e.to_string())?
        .map(|entry| {
            let entry = entry.map_err(|e| e.to_string())?;
            let bytes = std::fs::read(entry.path()).map_err(|e| e.to_string())?;
            Ok((entry.file_name().to_string_lossy().into_owned(), bytes))
        })
        .collect::<Result<_, String>>()?;
    files.sort();
    Ok(files)
}

fn determinism() -> (bool, String) {
    let result = (|| {
        let first = tempfile::tempdir().map_err(|e| e.to_string())?;
        let second = tempfile::tempdir().map_err(|e| e.to_string())?;
        let a = artifacts(first.path())?;
        let b = artifacts(second.path())?;
        if a.is_empty() {
            return Err("no artifacts produced".to_string());
        }
        let differing: Vec<&str> = a
            .iter()
            .zip(&b)
            .filter(|(x, y)| x != y)
            .map(|(x, _)| x.0.as_str())
            .collect();
        if a.len() != b.len() || !differing.is_empty() {
            return Err(format!("artifacts differ between runs: {differing:?}"));
        }
        Ok(format!(
            "{} artifact files byte-identical across two runs",
            a.len()
        ))
    })();
    match result {
        Ok(detail) => (true, detail),
        Err(detail) => (false, detail),
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let opts = Options::default();
    let mut reports = Vec::new();
    for claim in Claim::ALL {
        let claim_opts = match claim {
            Claim::Mod3 => Options {
                max_n: 5000,
                ..opts
            },
            _ => opts,
        };
        reports.extend(verify::run(claim, &claim_opts));
    }

    let mut failures = 0;
    for c in CRITERIA {
        let selected = select(&reports, c);
        let passed = !selected.is_empty() && selected.iter().all(|r| r.passed);
        let detail = if selected.is_empty() {
            "no checks ran".to_string()
        } else {
            let bad: Vec<String> = selected
                .iter()
                .filter(|r| !r.passed)
                .map(|r| {
                    format!(
                        "{} (observed {}; expected {})",
                        r.claim, r.observed, r.expected
                    )
                })
                .collect();
            if bad.is_empty() {
                format!("{} checks", selected.len())
            } else {
                bad.join("; ")
            }
        };
        if !passed {
            failures += 1;
        }
        print_line(c.number, c.title, passed, &detail);
    }

    let (passed, detail) = determinism();
    if !passed {
        failures += 1;
    }
    print_line(11, "determinism", passed, &detail);

    println!(
        "{} of {} criteria passed in {:.1} s",
        CRITERIA.len() + 1 - failures,
        CRITERIA.len() + 1,
        start.elapsed().as_secs_f64()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
