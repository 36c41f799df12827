use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use fibrep::constructions::{self, GradedRep};
use fibrep::fibnum::BitString;
use fibrep::fixtures;
use fibrep::linrep::LinRep;
use fibrep::num_bigint::BigUint;
use fibrep::pairdfa::PairDfa;
use fibrep::semigroup::{build_dfao, orbit_closure, SemigroupError};
use fibrep::verify::{self, Claim, Options};

use crate::{BuildTarget, ClaimArg, DeriveTarget, FixtureName};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input.
    Input(String),
    /// A mathematical check failed or a closure did not terminate.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Failure(m) => f.write_str(m),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)
            .map_err(|e| CliError::Input(format!("cannot create {}: {e}", parent.display())))?;
    }
    fs::write(path, contents)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn read_rep(path: &Path) -> Result<LinRep> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    LinRep::from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn build_dfa(target: BuildTarget) -> PairDfa {
    match target {
        BuildTarget::Berstel => constructions::normalization_dfa(),
        BuildTarget::Even => constructions::counted_normalization_dfa(2, 0),
        BuildTarget::Mod3 => constructions::counted_normalization_dfa(3, 0),
        BuildTarget::Mod4 => constructions::counted_normalization_dfa(4, 0),
    }
}

fn target_name(target: BuildTarget) -> &'static str {
    match target {
        BuildTarget::Berstel => "berstel",
        BuildTarget::Even => "even",
        BuildTarget::Mod3 => "mod3",
        BuildTarget::Mod4 => "mod4",
    }
}

pub fn build(target: BuildTarget, out: &Path) -> Result<()> {
    let name = target_name(target);
    let dfa = build_dfa(target);
    let rep = LinRep::from_dfa(&dfa);
    write_file(&out.join(format!("{name}.dfa.json")), &dfa.to_json())?;
    write_file(&out.join(format!("{name}.dfa.dot")), &dfa.to_dot(name))?;
    write_file(&out.join(format!("{name}.linrep.json")), &rep.to_json())?;
    println!("{name}: {} states, rank {}", dfa.state_count(), rep.rank());
    Ok(())
}

pub fn derive(target: DeriveTarget, out: &Path) -> Result<()> {
    let rep = match target {
        DeriveTarget::A => constructions::rep_a_unminimized(),
        DeriveTarget::Mod3Zero => GradedRep::new(3).difference(0, 1),
        DeriveTarget::Mod3One => GradedRep::new(3).difference(1, 2),
        DeriveTarget::Mod3Two => GradedRep::new(3).difference(2, 0),
        DeriveTarget::D => GradedRep::new(4).difference(0, 2),
    };
    write_file(out, &rep.to_json())?;
    println!("rank {}", rep.rank());
    Ok(())
}

pub fn fixture(name: FixtureName, out: &Path) -> Result<()> {
    let text = match name {
        FixtureName::R => fixtures::REP_R_JSON,
        FixtureName::Re => fixtures::REP_RE_JSON,
        FixtureName::A => fixtures::REP_A_JSON,
        FixtureName::D => fixtures::REP_D_JSON,
    };
    write_file(out, text)
}

pub fn eval(rep: &Path, n: Option<&str>, range: Option<u64>) -> Result<()> {
    let rep = read_rep(rep)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let io_err = |e: io::Error| CliError::Input(e.to_string());
    match (n, range) {
        (_, Some(limit)) => {
            writeln!(out, "n,value").map_err(io_err)?;
            for n in 0..=limit {
                writeln!(out, "{n},{}", rep.evaluate_at_u64(n)).map_err(io_err)?;
            }
        }
        (Some(n), None) => {
            let n: BigUint = n
                .parse()
                .map_err(|_| CliError::Input(format!("not a nonnegative integer: {n:?}")))?;
            writeln!(out, "{}", rep.evaluate_at(&n)).map_err(io_err)?;
        }
        (None, None) => return Err(CliError::Input("give n or --range N".into())),
    }
    Ok(())
}

pub fn minimize(rep: &Path, out: &Path) -> Result<()> {
    let rep = read_rep(rep)?;
    let min = rep.minimize();
    write_file(out, &min.to_json())?;
    println!("rank {} -> {}", rep.rank(), min.rank());
    Ok(())
}

pub fn dfao(rep: &Path, out: Option<&Path>, check_sync: Option<&str>, cap: usize) -> Result<()> {
    let rep = read_rep(rep)?;
    let orbit = orbit_closure(&rep, cap).map_err(|e| match e {
        SemigroupError::CapExceeded(_) => CliError::Failure(format!(
            "orbit closure did not terminate: {e}; boundedness is not certified"
        )),
        other => CliError::Input(other.to_string()),
    })?;
    let automaton = build_dfao(&orbit, rep.w()).map_err(|e| CliError::Failure(e.to_string()))?;
    println!("{} states", automaton.state_count());
    if let Some(path) = out {
        write_file(path, &automaton.to_json())?;
        write_file(&path.with_extension("dot"), &automaton.to_dot("dfao"))?;
    }
    if let Some(word) = check_sync {
        let word: BitString = word
            .parse()
            .map_err(|e| CliError::Input(format!("bad synchronizing word: {e}")))?;
        match automaton.synchronizing_check(&word) {
            Some(state) => println!(
                "synchronizing: every state goes to state {state} (output {})",
                automaton.output(state)
            ),
            None => println!("not synchronizing"),
        }
    }
    Ok(())
}

pub fn verify(
    claim: ClaimArg,
    max_n: u64,
    cap: usize,
    semigroup_cap: usize,
    json: bool,
) -> Result<()> {
    let opts = Options {
        max_n,
        orbit_cap: cap,
        semigroup_cap,
    };
    let claims: Vec<Claim> = match claim {
        ClaimArg::All => Claim::ALL.to_vec(),
        ClaimArg::Automata => vec![Claim::Automata],
        ClaimArg::Robbins => vec![Claim::Robbins],
        ClaimArg::Theorem1 => vec![Claim::Theorem1],
        ClaimArg::Mod3 => vec![Claim::Mod3],
        ClaimArg::Mod4 => vec![Claim::Mod4],
        ClaimArg::Stockmeyer => vec![Claim::Stockmeyer],
    };
    let reports: Vec<_> = claims
        .into_iter()
        .flat_map(|c| verify::run(c, &opts))
        .collect();
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&reports).expect("reports serialize")
        );
    } else {
        for r in &reports {
            println!("{r}");
        }
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        return Err(CliError::Failure(format!(
            "{failed} of {} checks failed",
            reports.len()
        )));
    }
    if !json {
        println!("all {} checks passed", reports.len());
    }
    Ok(())
}

pub fn oracle(limit: u64, out: Option<&Path>) -> Result<()> {
    let fail = |e: fibrep::oracle::OracleError| CliError::Input(e.to_string());
    match out {
        Some(path) => {
            let mut buf = Vec::new();
            fibrep::oracle::write_csv(limit, &mut buf).map_err(fail)?;
            write_file(path, &String::from_utf8(buf).expect("csv is ASCII"))
        }
        None => fibrep::oracle::write_csv(limit, io::stdout().lock()).map_err(fail),
    }
}
