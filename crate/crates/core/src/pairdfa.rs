//! Deterministic automata over the pair alphabet `{0,1} × {0,1}`.
//!
//! A word over pairs spells two binary words of equal length, `x` in the first
//! components and `y` in the second. The central automaton here recognises the
//! graph of Fibonacci normalization: `x × y` is accepted iff `y` has no two
//! adjacent 1s and `[x]_F = [y]_F`.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fibnum::BitString;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairDfaError {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(usize),
    #[error("residue {residue} is not below modulus {modulus}")]
    InvalidResidue { modulus: usize, residue: usize },
    #[error("normalization state exploration exceeded {0} states")]
    ExplorationCapExceeded(usize),
    #[error("words have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("malformed automaton: {0}")]
    Malformed(String),
    #[error("invalid automaton JSON: {0}")]
    Json(String),
}

/// One letter `[first, second]` of the pair alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairSymbol {
    pub first: bool,
    pub second: bool,
}

impl PairSymbol {
    /// The alphabet in canonical order `[0,0] < [0,1] < [1,0] < [1,1]`.
    pub const ALL: [PairSymbol; 4] = [
        PairSymbol::new(false, false),
        PairSymbol::new(false, true),
        PairSymbol::new(true, false),
        PairSymbol::new(true, true),
    ];

    pub const fn new(first: bool, second: bool) -> Self {
        Self { first, second }
    }

    pub fn index(self) -> usize {
        2 * usize::from(self.first) + usize::from(self.second)
    }

    pub fn from_index(i: usize) -> Self {
        Self::ALL[i]
    }

    /// Two-character label such as `"10"` (first digit, then second).
    pub fn label(self) -> String {
        format!("{}{}", u8::from(self.first), u8::from(self.second))
    }

    pub fn from_label(s: &str) -> Option<Self> {
        match s {
            "00" => Some(Self::ALL[0]),
            "01" => Some(Self::ALL[1]),
            "10" => Some(Self::ALL[2]),
            "11" => Some(Self::ALL[3]),
            _ => None,
        }
    }
}

/// Zip two equal-length binary words into `x × y`.
pub fn pair_word(x: &BitString, y: &BitString) -> Result<Vec<PairSymbol>, PairDfaError> {
    if x.len() != y.len() {
        return Err(PairDfaError::LengthMismatch(x.len(), y.len()));
    }
    Ok(x.digits()
        .iter()
        .zip(y.digits())
        .map(|(&a, &b)| PairSymbol::new(a == 1, b == 1))
        .collect())
}

/// A deterministic, possibly partial, automaton over [`PairSymbol`]s.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairDfa {
    transitions: Vec<[Option<usize>; 4]>,
    initial: usize,
    accepting: Vec<bool>,
}

impl PairDfa {
    pub fn new(
        transitions: Vec<[Option<usize>; 4]>,
        initial: usize,
        accepting: Vec<bool>,
    ) -> Result<Self, PairDfaError> {
        let n = transitions.len();
        if n == 0 {
            return Err(PairDfaError::Malformed("automaton has no states".into()));
        }
        if accepting.len() != n {
            return Err(PairDfaError::Malformed(format!(
                "{} acceptance flags for {n} states",
                accepting.len()
            )));
        }
        if initial >= n {
            return Err(PairDfaError::Malformed(format!(
                "initial state {initial} out of range"
            )));
        }
        if let Some(bad) = transitions.iter().flatten().flatten().find(|&&t| t >= n) {
            return Err(PairDfaError::Malformed(format!(
                "transition target {bad} out of range"
            )));
        }
        Ok(Self {
            transitions,
            initial,
            accepting,
        })
    }

    /// Same transitions with a new set of accepting states.
    pub fn with_accepting(&self, accepting: Vec<bool>) -> Result<PairDfa, PairDfaError> {
        PairDfa::new(self.transitions.clone(), self.initial, accepting)
    }

    /// The one-state automaton with the empty language.
    pub fn empty_language() -> Self {
        Self {
            transitions: vec![[None; 4]],
            initial: 0,
            accepting: vec![false],
        }
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = usize> + '_ {
        self.accepting
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(i, _)| i)
    }

    pub fn transition(&self, state: usize, symbol: PairSymbol) -> Option<usize> {
        self.transitions[state][symbol.index()]
    }

    pub fn accepts(&self, word: &[PairSymbol]) -> bool {
        let mut state = self.initial;
        for &sym in word {
            match self.transition(state, sym) {
                Some(next) => state = next,
                None => return false,
            }
        }
        self.accepting[state]
    }

    pub fn accepts_pair(&self, x: &BitString, y: &BitString) -> Result<bool, PairDfaError> {
        Ok(self.accepts(&pair_word(x, y)?))
    }

    /// True when the language is empty.
    pub fn is_empty(&self) -> bool {
        !self
            .reachable()
            .iter()
            .zip(&self.accepting)
            .any(|(&r, &a)| r && a)
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        seen[self.initial] = true;
        let mut stack = vec![self.initial];
        while let Some(s) = stack.pop() {
            for t in self.transitions[s].iter().flatten() {
                if !seen[*t] {
                    seen[*t] = true;
                    stack.push(*t);
                }
            }
        }
        seen
    }

    fn coreachable(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut preds = vec![Vec::new(); n];
        for (s, row) in self.transitions.iter().enumerate() {
            for t in row.iter().flatten() {
                preds[*t].push(s);
            }
        }
        let mut seen = self.accepting.clone();
        let mut stack: Vec<usize> = self.accepting_states().collect();
        while let Some(s) = stack.pop() {
            for &p in &preds[s] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Removes states that are unreachable or cannot reach acceptance, then
    /// renumbers in canonical breadth-first order.
    pub fn trim(&self) -> PairDfa {
        let reach = self.reachable();
        let coreach = self.coreachable();
        let live: Vec<bool> = reach.iter().zip(&coreach).map(|(&a, &b)| a && b).collect();
        if !live[self.initial] {
            return Self::empty_language();
        }
        let transitions = self
            .transitions
            .iter()
            .map(|row| row.map(|t| t.filter(|&t| live[t])))
            .collect();
        let pruned = PairDfa {
            transitions,
            initial: self.initial,
            accepting: self.accepting.clone(),
        };
        pruned.renumber_bfs().0
    }

    /// Renumbers reachable states in BFS order from the initial state with
    /// symbols in canonical order. Returns the old id of each new state.
    fn renumber_bfs(&self) -> (PairDfa, Vec<usize>) {
        let mut new_id = vec![usize::MAX; self.state_count()];
        let mut order = vec![self.initial];
        new_id[self.initial] = 0;
        let mut head = 0;
        while head < order.len() {
            let s = order[head];
            head += 1;
            for t in self.transitions[s].iter().flatten() {
                if new_id[*t] == usize::MAX {
                    new_id[*t] = order.len();
                    order.push(*t);
                }
            }
        }
        let transitions = order
            .iter()
            .map(|&old| self.transitions[old].map(|t| t.map(|t| new_id[t])))
            .collect();
        let accepting = order.iter().map(|&old| self.accepting[old]).collect();
        (
            PairDfa {
                transitions,
                initial: 0,
                accepting,
            },
            order,
        )
    }

    /// Serializes to the JSON interchange format.
    pub fn to_json(&self) -> String {
        let doc = PairDfaJson {
            states: self.state_count(),
            initial: self.initial,
            accepting: self.accepting_states().collect(),
            transitions: self
                .transitions
                .iter()
                .enumerate()
                .flat_map(|(s, row)| {
                    row.iter().enumerate().filter_map(move |(i, t)| {
                        t.map(|t| (s, PairSymbol::from_index(i).label(), t))
                    })
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("automaton serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, PairDfaError> {
        let doc: PairDfaJson =
            serde_json::from_str(text).map_err(|e| PairDfaError::Json(e.to_string()))?;
        let mut transitions = vec![[None; 4]; doc.states];
        for (from, label, to) in doc.transitions {
            let sym = PairSymbol::from_label(&label)
                .ok_or_else(|| PairDfaError::Malformed(format!("bad symbol label {label:?}")))?;
            let slot = transitions.get_mut(from).ok_or_else(|| {
                PairDfaError::Malformed(format!("source state {from} out of range"))
            })?;
            if slot[sym.index()].replace(to).is_some() {
                return Err(PairDfaError::Malformed(format!(
                    "two transitions from state {from} on {label}"
                )));
            }
        }
        let mut accepting = vec![false; doc.states];
        for a in doc.accepting {
            *accepting.get_mut(a).ok_or_else(|| {
                PairDfaError::Malformed(format!("accepting state {a} out of range"))
            })? = true;
        }
        PairDfa::new(transitions, doc.initial, accepting)
    }

    /// Graphviz rendering; accepting states are double circles and parallel
    /// edges are merged into one comma-separated label.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "digraph {name} {{").unwrap();
        writeln!(out, "  rankdir=LR;").unwrap();
        writeln!(out, "  __start [shape=point];").unwrap();
        for s in 0..self.state_count() {
            let shape = if self.accepting[s] {
                "doublecircle"
            } else {
                "circle"
            };
            writeln!(out, "  {s} [shape={shape}];").unwrap();
        }
        writeln!(out, "  __start -> {};", self.initial).unwrap();
        for (s, row) in self.transitions.iter().enumerate() {
            let mut edges: Vec<(usize, Vec<String>)> = Vec::new();
            for (i, t) in row.iter().enumerate() {
                let Some(t) = *t else { continue };
                let sym = PairSymbol::from_index(i);
                let label = format!("[{},{}]", u8::from(sym.first), u8::from(sym.second));
                match edges.iter_mut().find(|(target, _)| *target == t) {
                    Some((_, labels)) => labels.push(label),
                    None => edges.push((t, vec![label])),
                }
            }
            for (t, labels) in edges {
                writeln!(out, "  {s} -> {t} [label=\"{}\"];", labels.join(", ")).unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize, Deserialize)]
struct PairDfaJson {
    states: usize,
    initial: usize,
    accepting: Vec<usize>,
    transitions: Vec<(usize, String, usize)>,
}

/// Default half-width of the `(α, β)` window explored by
/// [`build_normalization_dfa`]. States outside it cannot return to `α = 0`.
pub const NORMALIZATION_WINDOW: i64 = 3;

const NORMALIZATION_STATE_CAP: usize = 10_000;

/// The minimal automaton accepting `x × y` iff `y ∈ 0*C_F` and `[x]_F = [y]_F`.
pub fn build_normalization_dfa() -> Result<PairDfa, PairDfaError> {
    build_normalization_dfa_with_window(NORMALIZATION_WINDOW)
}

/// As [`build_normalization_dfa`], exploring difference states with
/// `|α|, |β| ≤ window`.
///
/// After reading a prefix of length `m` the state is
/// `α = Σ (x_j − y_j) F_{m−j+2}` and `β = Σ (x_j − y_j) F_{m−j+1}`; reading a
/// pair with digit difference `Δ` moves to `(α + β + Δ, α + Δ)`. The word is
/// accepted when `α = 0`. The value-equality automaton is intersected with the
/// no-adjacent-1s checker on `y`, trimmed and minimized.
pub fn build_normalization_dfa_with_window(window: i64) -> Result<PairDfa, PairDfaError> {
    let mut ids: HashMap<(i64, i64), usize> = HashMap::new();
    let mut states = vec![(0i64, 0i64)];
    ids.insert((0, 0), 0);
    let mut transitions: Vec<[Option<usize>; 4]> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        let (alpha, beta) = states[s];
        let mut row = [None; 4];
        for sym in PairSymbol::ALL {
            let delta = i64::from(sym.first) - i64::from(sym.second);
            let next = (alpha + beta + delta, alpha + delta);
            if next.0.abs() > window || next.1.abs() > window {
                continue;
            }
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    let id = states.len();
                    if id >= NORMALIZATION_STATE_CAP {
                        return Err(PairDfaError::ExplorationCapExceeded(
                            NORMALIZATION_STATE_CAP,
                        ));
                    }
                    states.push(next);
                    ids.insert(next, id);
                    queue.push_back(id);
                    id
                }
            };
            row[sym.index()] = Some(id);
        }
        if transitions.len() <= s {
            transitions.resize(s + 1, [None; 4]);
        }
        transitions[s] = row;
    }
    transitions.resize(states.len(), [None; 4]);
    let accepting = states.iter().map(|&(alpha, _)| alpha == 0).collect();
    let equal_value = PairDfa::new(transitions, 0, accepting)?;
    Ok(minimize_dfa(&product(
        &equal_value,
        &no_adjacent_ones_second(),
    )))
}

/// Accepts `x × y` iff `y` has no factor `11` (that is, `y ∈ 0*C_F`).
pub fn no_adjacent_ones_second() -> PairDfa {
    // State 0: last y digit was 0 (or nothing read). State 1: last y digit was 1.
    let mut transitions = vec![[None; 4]; 2];
    for sym in PairSymbol::ALL {
        transitions[0][sym.index()] = Some(usize::from(sym.second));
        if !sym.second {
            transitions[1][sym.index()] = Some(0);
        }
    }
    PairDfa {
        transitions,
        initial: 0,
        accepting: vec![true, true],
    }
}

/// Complete `m`-state counter accepting `x × y` iff the number of 1s in `x`
/// is congruent to `residue` modulo `m`.
pub fn count_ones_dfa(m: usize, residue: usize) -> Result<PairDfa, PairDfaError> {
    if m < 2 {
        return Err(PairDfaError::InvalidModulus(m));
    }
    if residue >= m {
        return Err(PairDfaError::InvalidResidue {
            modulus: m,
            residue,
        });
    }
    let transitions = (0..m)
        .map(|s| PairSymbol::ALL.map(|sym| Some((s + usize::from(sym.first)) % m)))
        .collect();
    let accepting = (0..m).map(|s| s == residue).collect();
    Ok(PairDfa {
        transitions,
        initial: 0,
        accepting,
    })
}

/// Trim cross product, with the `(a, b)` state pair behind each product state.
///
/// States are kept when they can reach a pair accepted by both automata.
pub fn product_with_labels(a: &PairDfa, b: &PairDfa) -> (PairDfa, Vec<(usize, usize)>) {
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pairs = vec![(a.initial, b.initial)];
    ids.insert(pairs[0], 0);
    let mut transitions = Vec::new();
    let mut head = 0;
    while head < pairs.len() {
        let (p, q) = pairs[head];
        head += 1;
        let mut row = [None; 4];
        for sym in PairSymbol::ALL {
            if let (Some(p2), Some(q2)) = (a.transition(p, sym), b.transition(q, sym)) {
                let next = (p2, q2);
                let id = *ids.entry(next).or_insert_with(|| {
                    pairs.push(next);
                    pairs.len() - 1
                });
                row[sym.index()] = Some(id);
            }
        }
        transitions.push(row);
    }
    let accepting = pairs
        .iter()
        .map(|&(p, q)| a.accepting[p] && b.accepting[q])
        .collect();
    let full = PairDfa {
        transitions,
        initial: 0,
        accepting,
    };
    let reach = full.reachable();
    let coreach = full.coreachable();
    if !(reach[0] && coreach[0]) {
        return (PairDfa::empty_language(), vec![(a.initial, b.initial)]);
    }
    let transitions = full
        .transitions
        .iter()
        .map(|row| row.map(|t| t.filter(|&t| coreach[t])))
        .collect();
    let pruned = PairDfa {
        transitions,
        initial: 0,
        accepting: full.accepting,
    };
    let (dfa, order) = pruned.renumber_bfs();
    let labels = order.iter().map(|&old| pairs[old]).collect();
    (dfa, labels)
}

/// Trim cross product accepting the intersection of both languages.
pub fn product(a: &PairDfa, b: &PairDfa) -> PairDfa {
    product_with_labels(a, b).0
}

/// Minimal trim automaton for the same language, canonically numbered.
///
/// Moore partition refinement on the trimmed automaton, where a missing
/// transition is treated as going to an implicit dead class.
pub fn minimize_dfa(d: &PairDfa) -> PairDfa {
    let trimmed = d.trim();
    if trimmed.is_empty() {
        return PairDfa::empty_language();
    }
    let n = trimmed.state_count();
    let mut class: Vec<usize> = trimmed.accepting.iter().map(|&a| usize::from(a)).collect();
    let mut class_count = 0;
    loop {
        let mut signatures: HashMap<(usize, [Option<usize>; 4]), usize> = HashMap::new();
        let mut next = vec![0; n];
        for s in 0..n {
            let sig = (
                class[s],
                trimmed.transitions[s].map(|t| t.map(|t| class[t])),
            );
            let fresh = signatures.len();
            next[s] = *signatures.entry(sig).or_insert(fresh);
        }
        let count = signatures.len();
        class = next;
        if count == class_count {
            break;
        }
        class_count = count;
    }
    let mut transitions = vec![[None; 4]; class_count];
    let mut accepting = vec![false; class_count];
    for s in 0..n {
        transitions[class[s]] = trimmed.transitions[s].map(|t| t.map(|t| class[t]));
        accepting[class[s]] = trimmed.accepting[s];
    }
    PairDfa {
        transitions,
        initial: class[trimmed.initial],
        accepting,
    }
    .renumber_bfs()
    .0
}
