//! The concrete automata and representations studied by this crate, built
//! from scratch: `r(n)`, `r_e(n)`, `a(n)`, the mod-3 differences and `d(n)`.

use crate::linrep::{q, LinRep, Q};
use crate::pairdfa::{
    build_normalization_dfa, count_ones_dfa, minimize_dfa, product, product_with_labels, PairDfa,
};

pub fn normalization_dfa() -> PairDfa {
    build_normalization_dfa().expect("normalization window is large enough")
}

/// Minimal automaton for normalization restricted to `#1s(x) ≡ residue (mod m)`.
pub fn counted_normalization_dfa(m: usize, residue: usize) -> PairDfa {
    let counter = count_ones_dfa(m, residue).expect("valid modulus and residue");
    minimize_dfa(&product(&normalization_dfa(), &counter))
}

/// `r(n)`: Fibonacci partitions of `n`.
pub fn rep_r() -> LinRep {
    LinRep::from_dfa(&normalization_dfa())
}

/// `r_e(n)`: partitions with an even number of parts.
pub fn rep_re() -> LinRep {
    LinRep::from_dfa(&counted_normalization_dfa(2, 0))
}

/// `2 r_e − r` as a rank-12 direct sum.
pub fn rep_a_unminimized() -> LinRep {
    LinRep::combine(&[q(2), q(-1)], &[rep_re(), rep_r()]).expect("two coefficients, two reps")
}

/// `a(n)`, minimized.
pub fn rep_a() -> LinRep {
    rep_a_unminimized().minimize()
}

/// Path-count representation of normalization tracked by `#1s(x) mod m`,
/// together with the final vectors selecting each residue class.
pub struct GradedRep {
    pub base: LinRep,
    /// `finals[i]` marks the accepting states whose 1s count is `≡ i`.
    pub finals: Vec<Vec<Q>>,
}

impl GradedRep {
    pub fn new(m: usize) -> GradedRep {
        let normal = normalization_dfa();
        let counter = count_ones_dfa(m, 0).expect("valid modulus");
        let counter = counter
            .with_accepting(vec![true; m])
            .expect("one flag per counter state");
        let (dfa, labels) = product_with_labels(&normal, &counter);
        let base = LinRep::from_dfa(&dfa);
        let finals = (0..m)
            .map(|i| {
                labels
                    .iter()
                    .map(|&(p, c)| q(i64::from(normal.is_accepting(p) && c == i)))
                    .collect()
            })
            .collect();
        GradedRep { base, finals }
    }

    pub fn modulus(&self) -> usize {
        self.finals.len()
    }

    /// `r_{m,i}(n)`.
    pub fn residue(&self, i: usize) -> LinRep {
        self.base
            .with_final(self.finals[i].clone())
            .expect("final vector matches rank")
    }

    /// `r_{m,i}(n) − r_{m,j}(n)`, unminimized.
    pub fn difference(&self, i: usize, j: usize) -> LinRep {
        let w = self.finals[i]
            .iter()
            .zip(&self.finals[j])
            .map(|(a, b)| a - b)
            .collect();
        self.base.with_final(w).expect("final vector matches rank")
    }
}

/// `r_{3,i}(n) − r_{3,i+1}(n)`, minimized, for `i` in `0..3`.
pub fn rep_mod3_difference(i: usize) -> LinRep {
    GradedRep::new(3).difference(i % 3, (i + 1) % 3).minimize()
}

/// `d(n) = r_{4,0}(n) − r_{4,2}(n)`, minimized.
pub fn rep_d() -> LinRep {
    GradedRep::new(4).difference(0, 2).minimize()
}
