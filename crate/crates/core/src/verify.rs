//! Executable checks of the theorems this crate reproduces.
//!
//! Each claim group runs a list of exact checks and yields one
//! [`VerificationReport`] per check. A check passes only on exact equality of
//! observed and expected values.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::constructions::{self, GradedRep};
use crate::fibnum::{fib, to_canonical, to_canonical_u64, value_of, BitString};
use crate::fixtures;
use crate::linrep::{minimal_polynomial, q, Matrix, Polynomial, Q};
use crate::oracle;
use crate::pairdfa::{PairDfa, PairSymbol};
use crate::semigroup::{
    attained_outputs, build_dfao, matrix_semigroup_size, orbit_closure, DEFAULT_ORBIT_CAP,
    DEFAULT_SEMIGROUP_CAP,
};

/// Block whose occurrence sends the `a(n)` automaton to a zero-output sink.
pub const SYNCHRONIZING_BLOCK: &str = "01001001";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Claim {
    Automata,
    Robbins,
    Theorem1,
    Mod3,
    Mod4,
    Stockmeyer,
}

impl Claim {
    pub const ALL: [Claim; 6] = [
        Claim::Automata,
        Claim::Robbins,
        Claim::Theorem1,
        Claim::Mod3,
        Claim::Mod4,
        Claim::Stockmeyer,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::Automata => "automata",
            Claim::Robbins => "robbins",
            Claim::Theorem1 => "theorem1",
            Claim::Mod3 => "mod3",
            Claim::Mod4 => "mod4",
            Claim::Stockmeyer => "stockmeyer",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| format!("unknown claim {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    /// Upper end of the oracle comparison ranges.
    pub max_n: u64,
    pub orbit_cap: usize,
    pub semigroup_cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            max_n: 10_000,
            orbit_cap: DEFAULT_ORBIT_CAP,
            semigroup_cap: DEFAULT_SEMIGROUP_CAP,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub passed: bool,
    pub observed: String,
    pub expected: String,
    #[serde(serialize_with = "millis")]
    pub elapsed: Duration,
}

fn millis<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1000.0)
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "[{status}] {}: observed {}; expected {} ({:.1} ms)",
            self.claim,
            self.observed,
            self.expected,
            self.elapsed.as_secs_f64() * 1000.0
        )
    }
}

/// Collects checks for one claim group.
struct Recorder {
    prefix: &'static str,
    reports: Vec<VerificationReport>,
}

impl Recorder {
    fn new(claim: Claim) -> Self {
        Self {
            prefix: claim.id(),
            reports: Vec::new(),
        }
    }

    /// Times `check`, which returns `(observed, expected)` renderings; the
    /// check passes iff they are equal.
    fn check<F>(&mut self, name: &str, check: F)
    where
        F: FnOnce() -> (String, String),
    {
        let start = Instant::now();
        let (observed, expected) = check();
        self.reports.push(VerificationReport {
            claim: format!("{}.{name}", self.prefix),
            passed: observed == expected,
            observed,
            expected,
            elapsed: start.elapsed(),
        });
    }
}

pub fn run(claim: Claim, opts: &Options) -> Vec<VerificationReport> {
    match claim {
        Claim::Automata => automata(),
        Claim::Robbins => robbins(opts),
        Claim::Theorem1 => theorem1(),
        Claim::Mod3 => mod3(opts),
        Claim::Mod4 => mod4(),
        Claim::Stockmeyer => stockmeyer(),
    }
}

pub fn run_all(opts: &Options) -> Vec<VerificationReport> {
    Claim::ALL.into_iter().flat_map(|c| run(c, opts)).collect()
}

fn show_set(set: &BTreeSet<Q>) -> String {
    let items: Vec<String> = set.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn int_set(values: &[i64]) -> BTreeSet<Q> {
    values.iter().map(|&v| q(v)).collect()
}

/// First `n` in `0..=max_n` where `f(n) != g(n)`, rendered for a report.
fn first_mismatch<F, G>(max_n: u64, f: F, g: G) -> String
where
    F: Fn(u64) -> Q,
    G: Fn(u64) -> Q,
{
    (0..=max_n)
        .find_map(|n| {
            let (a, b) = (f(n), g(n));
            (a != b).then(|| format!("mismatch at n = {n}: {a} vs {b}"))
        })
        .unwrap_or_else(|| format!("agree for n <= {max_n}"))
}

fn big_q(x: &BigUint) -> Q {
    Q::from_integer(BigInt::from(x.clone()))
}

/// Exhaustive comparison of the normalization automaton with the defining
/// condition on all pair words of length `<= max_len`. Returns the number of
/// disagreements and the number of words checked.
pub fn normalization_disagreements(m: &PairDfa, max_len: usize) -> (usize, usize) {
    let mut bad = 0;
    let mut total = 0;
    for len in 0..=max_len {
        let words: Vec<BitString> = BitString::all_of_length(len).collect();
        let values: Vec<BigUint> = words.iter().map(value_of).collect();
        let no_11: Vec<bool> = words
            .iter()
            .map(|y| !y.digits().windows(2).any(|p| p == [1, 1]))
            .collect();
        for (xi, x) in words.iter().enumerate() {
            for (yi, y) in words.iter().enumerate() {
                let word: Vec<PairSymbol> = x
                    .digits()
                    .iter()
                    .zip(y.digits())
                    .map(|(&a, &b)| PairSymbol::new(a == 1, b == 1))
                    .collect();
                let expected = no_11[yi] && values[xi] == values[yi];
                total += 1;
                if m.accepts(&word) != expected {
                    bad += 1;
                }
            }
        }
    }
    (bad, total)
}

fn automata() -> Vec<VerificationReport> {
    let mut rec = Recorder::new(Claim::Automata);
    let m = constructions::normalization_dfa();
    rec.check("normalization-states", || {
        (m.state_count().to_string(), "4".into())
    });
    rec.check("normalization-exhaustive-len10", || {
        let (bad, total) = normalization_disagreements(&m, 10);
        (
            format!("{bad} disagreements in {total} words"),
            format!("0 disagreements in {total} words"),
        )
    });
    let perms = fixtures::state_permutations();
    rec.check("rep-r-matches-fixture", || {
        let built = constructions::rep_r();
        let fixture = fixtures::rep_r();
        (
            format!(
                "rank {}, equivalent {}, permuted-equal {}",
                built.rank(),
                built.equivalent(&fixture),
                built.permuted(&perms.r) == fixture
            ),
            "rank 4, equivalent true, permuted-equal true".into(),
        )
    });
    rec.check("rep-re-matches-fixture", || {
        let built = constructions::rep_re();
        let fixture = fixtures::rep_re();
        (
            format!(
                "rank {}, equivalent {}, permuted-equal {}",
                built.rank(),
                built.equivalent(&fixture),
                built.permuted(&perms.re) == fixture
            ),
            "rank 8, equivalent true, permuted-equal true".into(),
        )
    });
    rec.reports
}

fn robbins(opts: &Options) -> Vec<VerificationReport> {
    let mut rec = Recorder::new(Claim::Robbins);
    let max_n = opts.max_n;
    let (r, re) = (constructions::rep_r(), constructions::rep_re());
    let combined = constructions::rep_a_unminimized();
    let a = combined.minimize();
    rec.check("r(8)", || (r.evaluate_at_u64(8).to_string(), "3".into()));
    rec.check("a(0..4)", || {
        let vals: Vec<String> = (0..=4).map(|n| a.evaluate_at_u64(n).to_string()).collect();
        (vals.join(", "), "1, -1, -1, 0, 1".into())
    });
    let table = oracle::expand(max_n, 2).expect("modulus 2");
    let a_oracle = oracle::a_of(max_n);
    rec.check("oracle-r", || {
        (
            first_mismatch(max_n, |n| r.evaluate_at_u64(n), |n| big_q(&table.total(n))),
            format!("agree for n <= {max_n}"),
        )
    });
    rec.check("oracle-re", || {
        (
            first_mismatch(
                max_n,
                |n| re.evaluate_at_u64(n),
                |n| big_q(table.count(n, 0)),
            ),
            format!("agree for n <= {max_n}"),
        )
    });
    rec.check("oracle-a", || {
        (
            first_mismatch(
                max_n,
                |n| a.evaluate_at_u64(n),
                |n| Q::from_integer(a_oracle[n as usize].clone()),
            ),
            format!("agree for n <= {max_n}"),
        )
    });
    rec.check("minimized-rank", || {
        (
            format!("{} -> {}", combined.rank(), a.rank()),
            "12 -> 4".into(),
        )
    });
    rec.check("fixture-equivalence", || {
        (a.equivalent(&fixtures::rep_a()).to_string(), "true".into())
    });
    let orbit = orbit_closure(&a, opts.orbit_cap);
    rec.check("orbit-size", || match &orbit {
        Ok(o) => (o.len().to_string(), "15".into()),
        Err(e) => (e.to_string(), "15".into()),
    });
    rec.check("semigroup-size", || {
        match matrix_semigroup_size(&a, opts.semigroup_cap) {
            Ok(n) => (n.to_string(), "207".into()),
            Err(e) => (e.to_string(), "207".into()),
        }
    });
    let Ok(orbit) = orbit else { return rec.reports };
    rec.check("outputs", || {
        let outs = attained_outputs(&orbit, a.w()).expect("orbit matches rank");
        (show_set(&outs), show_set(&int_set(&[-1, 0, 1])))
    });
    let dfao = build_dfao(&orbit, a.w()).expect("integral outputs");
    rec.check("dfao-faithful", || {
        (
            first_mismatch(
                max_n,
                |n| Q::from_integer(dfao.value_at(n).clone()),
                |n| Q::from_integer(a_oracle[n as usize].clone()),
            ),
            format!("agree for n <= {max_n}"),
        )
    });
    rec.check("synchronizing-block", || {
        let word: BitString = SYNCHRONIZING_BLOCK.parse().expect("binary literal");
        let observed = match dfao.synchronizing_check(&word) {
            Some(s) => format!("synchronizes to a state with output {}", dfao.output(s)),
            None => "not synchronizing".into(),
        };
        (observed, "synchronizes to a state with output 0".into())
    });
    rec.reports
}

/// `F_n − 1` written as in the closed form: `(10)^{n/2−1}` for even `n`,
/// `(10)^{(n−3)/2} 1` for odd `n ≥ 3`, and the empty word for `n = 1`.
pub fn fib_minus_one_word(n: usize) -> BitString {
    let ten: BitString = "10".parse().expect("binary literal");
    match n {
        0 | 1 => BitString::empty(),
        n if n % 2 == 0 => ten.repeat(n / 2 - 1),
        n => ten
            .repeat((n - 3) / 2)
            .concat(&"1".parse().expect("binary literal")),
    }
}

fn theorem1() -> Vec<VerificationReport> {
    let mut rec = Recorder::new(Claim::Theorem1);
    let (r, re, a) = (
        constructions::rep_r(),
        constructions::rep_re(),
        constructions::rep_a(),
    );
    let p_r = Polynomial::from_ints(&[0, 1, -1, -1, 1]);
    let p_re = Polynomial::product(&[
        Polynomial::x(),
        Polynomial::linear(-1),
        Polynomial::from_ints(&[1, 0, 1]),
        Polynomial::linear(1),
        Polynomial::linear(1),
    ]);
    rec.check("minpoly-mu0", || {
        (minimal_polynomial(r.mu(0)).to_string(), p_r.to_string())
    });
    rec.check("minpoly-mu0-even", || {
        (minimal_polynomial(re.mu(0)).to_string(), p_re.to_string())
    });
    let one: BitString = "1".parse().expect("binary literal");
    rec.check("recurrences", || {
        let ok_r = r
            .check_recurrence(&p_r, &one, false, 60)
            .expect("nonzero polynomial");
        let ok_re = re
            .check_recurrence(&p_re, &one, false, 60)
            .expect("nonzero polynomial");
        (
            format!("r: {ok_r}, r_e: {ok_re}"),
            "r: true, r_e: true".into(),
        )
    });
    let canonical_fib = |n: usize| to_canonical(&fib(n));
    rec.check("r(F_n)=floor(n/2)", || {
        let bad: Vec<usize> = (2..=60)
            .filter(|&n| r.evaluate(&canonical_fib(n)) != q(n as i64 / 2))
            .collect();
        (format!("failures at {bad:?}"), "failures at []".into())
    });
    rec.check("r_e(F_n)=floor(n/4)", || {
        let bad: Vec<usize> = (1..=60)
            .filter(|&n| re.evaluate(&canonical_fib(n)) != q(n as i64 / 4))
            .collect();
        (format!("failures at {bad:?}"), "failures at []".into())
    });
    rec.check("a(F_n-1)", || {
        let bad: Vec<usize> = (1..=40)
            .filter(|&n| {
                let expected = if matches!(n % 4, 1 | 2) { q(1) } else { q(-1) };
                let word = fib_minus_one_word(n);
                let canonical = to_canonical(&(fib(n) - 1u32));
                word != canonical || a.evaluate(&word) != expected
            })
            .collect();
        (format!("failures at {bad:?}"), "failures at []".into())
    });
    rec.reports
}

fn mod3(opts: &Options) -> Vec<VerificationReport> {
    let mut rec = Recorder::new(Claim::Mod3);
    let max_n = opts.max_n;
    let graded = GradedRep::new(3);
    let table = oracle::expand(max_n, 3).expect("modulus 3");
    for i in 0..3 {
        let j = (i + 1) % 3;
        let rep = graded.difference(i, j).minimize();
        let label = format!("r3_{i}-r3_{j}");
        let orbit = orbit_closure(&rep, opts.orbit_cap);
        rec.check(&format!("{label}.orbit-size"), || match &orbit {
            Ok(o) => (o.len().to_string(), "61".into()),
            Err(e) => (e.to_string(), "61".into()),
        });
        rec.check(&format!("{label}.outputs-bounded"), || match &orbit {
            Ok(o) => {
                let outs = attained_outputs(o, rep.w()).expect("orbit matches rank");
                let bounded = outs.is_subset(&int_set(&[-1, 0, 1]));
                (
                    format!("{} within {{-1, 0, 1}}: {bounded}", show_set(&outs)),
                    format!("{} within {{-1, 0, 1}}: true", show_set(&outs)),
                )
            }
            Err(e) => (e.to_string(), "finite orbit".into()),
        });
        rec.check(&format!("{label}.oracle"), || {
            let oracle_diff = |n: u64| {
                Q::from_integer(
                    BigInt::from(table.count(n, i).clone())
                        - BigInt::from(table.count(n, j).clone()),
                )
            };
            (
                first_mismatch(max_n, |n| rep.evaluate_at_u64(n), oracle_diff),
                format!("agree for n <= {max_n}"),
            )
        });
    }
    rec.reports
}

/// `(100)^reps · 1`.
pub fn hundred_block_word(reps: usize) -> BitString {
    let block: BitString = "100".parse().expect("binary literal");
    block
        .repeat(reps)
        .concat(&"1".parse().expect("binary literal"))
}

/// The claimed closed form of `μ((100)^{8k+5} 1)` for the transcribed `d(n)`
/// representation, with the unreadable entry in row 4 taken as 0.
pub fn d_block_matrix(k: u32) -> Matrix {
    let c = BigInt::from(16).pow(k);
    let s = |m: i64| Q::from_integer(&c * m);
    let mut out = Matrix::zeros(8, 8);
    out[(0, 6)] = s(-4);
    out[(2, 1)] = s(4);
    out[(2, 6)] = s(4);
    out[(3, 1)] = s(8);
    out[(3, 6)] = s(8);
    out[(5, 1)] = s(4);
    out[(5, 6)] = s(4);
    out
}

fn mod4() -> Vec<VerificationReport> {
    let mut rec = Recorder::new(Claim::Mod4);
    let d = constructions::rep_d();
    let fixture = fixtures::rep_d();
    rec.check("minimized-rank", || (d.rank().to_string(), "8".into()));
    rec.check("fixture-equivalence", || {
        (d.equivalent(&fixture).to_string(), "true".into())
    });
    let sixteen = |k: u32| -> BigInt { BigInt::from(16).pow(k) };
    rec.check("d([(100)^(8k+1)1])=-16^k", || {
        let observed: Vec<String> = (0..4)
            .map(|k| {
                d.evaluate_at(&value_of(&hundred_block_word(8 * k + 1)))
                    .to_string()
            })
            .collect();
        let expected: Vec<String> = (0..4u32).map(|k| (-sixteen(k)).to_string()).collect();
        (observed.join(", "), expected.join(", "))
    });
    rec.check("d([(100)^(8k+5)1])=4*16^k", || {
        let observed: Vec<String> = (0..4)
            .map(|k| {
                d.evaluate_at(&value_of(&hundred_block_word(8 * k + 5)))
                    .to_string()
            })
            .collect();
        let expected: Vec<String> = (0..4u32)
            .map(|k| (sixteen(k) * BigInt::from(4)).to_string())
            .collect();
        (observed.join(", "), expected.join(", "))
    });
    rec.check("oracle-k0", || {
        let n1 = value_of(&hundred_block_word(1)).to_u64().expect("small");
        let n5 = value_of(&hundred_block_word(5)).to_u64().expect("small");
        let observed = format!(
            "oracle d({n1}) = {}, d({n5}) = {}; representation d({n1}) = {}, d({n5}) = {}",
            oracle::d_of(n1).expect("within guard"),
            oracle::d_of(n5).expect("within guard"),
            d.evaluate_at_u64(n1),
            d.evaluate_at_u64(n5),
        );
        let expected =
            format!("oracle d({n1}) = -1, d({n5}) = 4; representation d({n1}) = -1, d({n5}) = 4");
        (observed, expected)
    });
    rec.check("block-matrix-sandwich", || {
        let observed: Vec<String> = (0..4)
            .map(|k| {
                d.sandwich(&d.matrix_of_word(&hundred_block_word(8 * k + 5)))
                    .to_string()
            })
            .collect();
        let expected: Vec<String> = (0..4u32)
            .map(|k| (sixteen(k) * BigInt::from(4)).to_string())
            .collect();
        (observed.join(", "), expected.join(", "))
    });
    rec.check("fixture-block-matrix", || {
        let bad: Vec<u32> = (0..4u32)
            .filter(|&k| {
                fixture.matrix_of_word(&hundred_block_word(8 * k as usize + 5)) != d_block_matrix(k)
            })
            .collect();
        (
            format!("mismatches at k = {bad:?}"),
            "mismatches at k = []".into(),
        )
    });
    rec.reports
}

fn stockmeyer() -> Vec<VerificationReport> {
    let mut rec = Recorder::new(Claim::Stockmeyer);
    let r = constructions::rep_r();
    rec.check("r(F_n^2-1)=F_n", || {
        let bad: Vec<usize> = (2..=20)
            .filter(|&n| {
                let f = fib(n);
                r.evaluate_at(&(&f * &f - 1u32)) != big_q(&f)
            })
            .collect();
        (format!("failures at {bad:?}"), "failures at []".into())
    });
    rec.check("oracle", || {
        let top = fib(12).to_u64().expect("small");
        let table = oracle::expand(top * top, 1).expect("modulus 1");
        let bad: Vec<usize> = (2..=12)
            .filter(|&n| {
                let f = fib(n).to_u64().expect("small");
                let m = f * f - 1;
                table.total(m) != BigUint::from(f)
                    || r.evaluate(&to_canonical_u64(m)) != q(f as i64)
            })
            .collect();
        (format!("failures at {bad:?}"), "failures at []".into())
    });
    rec.reports
}

/// True iff every report passed.
pub fn all_passed(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| r.passed)
}
