//! Semigroup closure of linear representations.
//!
//! Breadth-first enumeration of the row vectors `v μ(x)` (the orbit) or of the
//! matrices `μ(x)` is a semi-decision procedure: when it terminates the set is
//! finite and the represented function takes finitely many values, which
//! certifies boundedness. When it does not terminate within the cap we report
//! [`SemigroupError::CapExceeded`] and certify nothing.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use indexmap::IndexSet;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fibnum::{to_canonical, BitString};
use crate::linrep::{dot, LinRep, Matrix, Q};

pub const DEFAULT_ORBIT_CAP: usize = 10_000;
pub const DEFAULT_SEMIGROUP_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error(
        "more than {0} distinct elements; the closure may be infinite (raise the cap to tell)"
    )]
    CapExceeded(usize),
    #[error("cap must be at least 1")]
    ZeroCap,
    #[error("dimension mismatch: vectors have length {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("state {state} has non-integral output {value}")]
    NonIntegerOutput { state: usize, value: String },
    #[error("invalid DFAO JSON: {0}")]
    Json(String),
}

/// The finite set `{ v μ(x) }` with its transition structure. Index 0 is `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorOrbit {
    vectors: Vec<Vec<Q>>,
    transitions: Vec<[usize; 2]>,
}

impl VectorOrbit {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Q>] {
        &self.vectors
    }

    pub fn root(&self) -> &[Q] {
        &self.vectors[0]
    }

    /// Index of `vectors[i] · μ(digit)`.
    pub fn next(&self, i: usize, digit: u8) -> usize {
        self.transitions[i][usize::from(digit)]
    }

    pub fn dimension(&self) -> usize {
        self.vectors[0].len()
    }
}

/// Breadth-first closure of `v` under right multiplication by `μ(0)`, `μ(1)`.
pub fn orbit_closure(r: &LinRep, cap: usize) -> Result<VectorOrbit, SemigroupError> {
    if cap == 0 {
        return Err(SemigroupError::ZeroCap);
    }
    let mut seen: IndexSet<Vec<Q>> = IndexSet::new();
    seen.insert(r.v().to_vec());
    let mut transitions = Vec::new();
    let mut head = 0;
    while head < seen.len() {
        let u = seen[head].clone();
        let mut row = [0; 2];
        for (d, slot) in row.iter_mut().enumerate() {
            let next = r.mu(d as u8).left_apply(&u);
            let (idx, fresh) = seen.insert_full(next);
            if fresh && seen.len() > cap {
                return Err(SemigroupError::CapExceeded(cap));
            }
            *slot = idx;
        }
        transitions.push(row);
        head += 1;
    }
    Ok(VectorOrbit {
        vectors: seen.into_iter().collect(),
        transitions,
    })
}

/// Size of the semigroup generated by `μ(0)` and `μ(1)`, nonempty products only.
pub fn matrix_semigroup_size(r: &LinRep, cap: usize) -> Result<usize, SemigroupError> {
    if cap == 0 {
        return Err(SemigroupError::ZeroCap);
    }
    let gens = [r.mu(0), r.mu(1)];
    let mut seen: IndexSet<Matrix> = IndexSet::new();
    for g in gens {
        seen.insert(g.clone());
    }
    if seen.len() > cap {
        return Err(SemigroupError::CapExceeded(cap));
    }
    let mut head = 0;
    while head < seen.len() {
        let m = seen[head].clone();
        for g in gens {
            if seen.insert(m.mul(g)) && seen.len() > cap {
                return Err(SemigroupError::CapExceeded(cap));
            }
        }
        head += 1;
    }
    Ok(seen.len())
}

/// `{ u · w : u ∈ orbit }`.
pub fn attained_outputs(o: &VectorOrbit, w: &[Q]) -> Result<BTreeSet<Q>, SemigroupError> {
    check_dimension(o, w)?;
    Ok(o.vectors.iter().map(|u| dot(u, w)).collect())
}

fn check_dimension(o: &VectorOrbit, w: &[Q]) -> Result<(), SemigroupError> {
    if o.dimension() != w.len() {
        return Err(SemigroupError::Dimension {
            expected: o.dimension(),
            got: w.len(),
        });
    }
    Ok(())
}

/// Deterministic automaton with output over `{0, 1}`; state 0 is initial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfao {
    transitions: Vec<[usize; 2]>,
    output: Vec<BigInt>,
}

/// One state per orbit vector, in orbit order; the output of `u` is `u · w`.
pub fn build_dfao(o: &VectorOrbit, w: &[Q]) -> Result<Dfao, SemigroupError> {
    check_dimension(o, w)?;
    let output = o
        .vectors
        .iter()
        .enumerate()
        .map(|(state, u)| {
            let value = dot(u, w);
            if value.denom().is_one() {
                Ok(value.numer().clone())
            } else {
                Err(SemigroupError::NonIntegerOutput {
                    state,
                    value: value.to_string(),
                })
            }
        })
        .collect::<Result<_, _>>()?;
    Ok(Dfao {
        transitions: o.transitions.clone(),
        output,
    })
}

impl Dfao {
    pub fn new(transitions: Vec<[usize; 2]>, output: Vec<BigInt>) -> Result<Self, SemigroupError> {
        let n = transitions.len();
        if n == 0 || output.len() != n {
            return Err(SemigroupError::Json(format!(
                "{n} states but {} outputs",
                output.len()
            )));
        }
        if transitions.iter().flatten().any(|&t| t >= n) {
            return Err(SemigroupError::Json(
                "transition target out of range".into(),
            ));
        }
        Ok(Self {
            transitions,
            output,
        })
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn output(&self, state: usize) -> &BigInt {
        &self.output[state]
    }

    pub fn step(&self, state: usize, digit: u8) -> usize {
        self.transitions[state][usize::from(digit)]
    }

    pub fn run_from(&self, state: usize, word: &BitString) -> usize {
        word.digits().iter().fold(state, |s, &d| self.step(s, d))
    }

    pub fn run(&self, word: &BitString) -> usize {
        self.run_from(0, word)
    }

    /// Output after reading the canonical representation of `n`.
    pub fn value_at(&self, n: u64) -> &BigInt {
        self.output(self.run(&to_canonical(&n.into())))
    }

    /// The common state reached from every state on `word`, if there is one.
    pub fn synchronizing_check(&self, word: &BitString) -> Option<usize> {
        let target = self.run_from(0, word);
        (1..self.state_count())
            .all(|s| self.run_from(s, word) == target)
            .then_some(target)
    }

    pub fn to_json(&self) -> String {
        let doc = DfaoJson {
            states: self.state_count(),
            initial: 0,
            delta: self
                .transitions
                .iter()
                .enumerate()
                .flat_map(|(s, row)| [(s, 0, row[0]), (s, 1, row[1])])
                .collect(),
            output: self
                .output
                .iter()
                .map(|o| match o.to_i64() {
                    Some(i) => serde_json::Value::from(i),
                    None => serde_json::Value::from(o.to_string()),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("dfao serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, SemigroupError> {
        let doc: DfaoJson =
            serde_json::from_str(text).map_err(|e| SemigroupError::Json(e.to_string()))?;
        if doc.initial != 0 {
            return Err(SemigroupError::Json("initial state must be 0".into()));
        }
        let mut transitions = vec![[usize::MAX; 2]; doc.states];
        for (s, d, t) in doc.delta {
            let slot = transitions
                .get_mut(s)
                .and_then(|row| row.get_mut(usize::from(d)))
                .ok_or_else(|| SemigroupError::Json(format!("bad transition ({s}, {d})")))?;
            *slot = t;
        }
        if transitions.iter().flatten().any(|&t| t == usize::MAX) {
            return Err(SemigroupError::Json("transition map is not total".into()));
        }
        let output = doc
            .output
            .iter()
            .map(|o| match o {
                serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
                serde_json::Value::String(s) => s.parse().ok(),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| SemigroupError::Json("outputs must be integers".into()))?;
        Dfao::new(transitions, output)
    }

    /// Graphviz rendering with `state/output` labels.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "digraph {name} {{").unwrap();
        writeln!(out, "  rankdir=LR;").unwrap();
        writeln!(out, "  __start [shape=point];").unwrap();
        for (s, o) in self.output.iter().enumerate() {
            writeln!(out, "  {s} [shape=circle, label=\"{s}/{o}\"];").unwrap();
        }
        writeln!(out, "  __start -> 0;").unwrap();
        for (s, row) in self.transitions.iter().enumerate() {
            if row[0] == row[1] {
                writeln!(out, "  {s} -> {} [label=\"0, 1\"];", row[0]).unwrap();
            } else {
                writeln!(out, "  {s} -> {} [label=\"0\"];", row[0]).unwrap();
                writeln!(out, "  {s} -> {} [label=\"1\"];", row[1]).unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize, Deserialize)]
struct DfaoJson {
    states: usize,
    initial: usize,
    delta: Vec<(usize, u8, usize)>,
    output: Vec<serde_json::Value>,
}
