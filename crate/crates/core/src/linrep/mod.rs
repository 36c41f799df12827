//! Linear representations `(v, μ, w)` over exact rationals.
//!
//! A representation of rank `k` maps a binary word `x_1 ⋯ x_t` to
//! `v · μ(x_1) ⋯ μ(x_t) · w`, where `v` is a row vector, `w` a column vector and
//! `μ(0)`, `μ(1)` are `k × k` matrices. Rank 0 is allowed and represents the
//! zero function.

mod json;
pub mod matrix;
pub mod poly;

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::fibnum::{to_canonical, BitString};
use crate::pairdfa::{PairDfa, PairSymbol};

pub use matrix::{dot, ints, q, Matrix, RowSpaceBasis, Q};
pub use poly::{minimal_polynomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinRepError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("cannot combine an empty list of representations")]
    EmptyCombination,
    #[error("{coeffs} coefficients for {reps} representations")]
    LengthMismatch { coeffs: usize, reps: usize },
    #[error("recurrence polynomial is zero")]
    ZeroPolynomial,
    #[error("invalid scalar {0:?}")]
    BadScalar(String),
    #[error("invalid representation JSON: {0}")]
    Json(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinRep {
    v: Vec<Q>,
    mu: [Matrix; 2],
    w: Vec<Q>,
}

impl std::fmt::Debug for LinRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_json())
    }
}

impl LinRep {
    pub fn new(v: Vec<Q>, mu0: Matrix, mu1: Matrix, w: Vec<Q>) -> Result<Self, LinRepError> {
        let k = v.len();
        for (name, m) in [("mu0", &mu0), ("mu1", &mu1)] {
            if m.rows() != k || m.cols() != k {
                return Err(LinRepError::Dimension(format!(
                    "{name} is {}x{}, rank is {k}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        if w.len() != k {
            return Err(LinRepError::Dimension(format!(
                "w has length {}, rank is {k}",
                w.len()
            )));
        }
        Ok(Self {
            v,
            mu: [mu0, mu1],
            w,
        })
    }

    /// Integer convenience constructor for fixtures and tests.
    pub fn from_ints(
        v: &[i64],
        mu0: &[&[i64]],
        mu1: &[&[i64]],
        w: &[i64],
    ) -> Result<Self, LinRepError> {
        Self::new(
            ints(v),
            Matrix::from_int_rows(mu0),
            Matrix::from_int_rows(mu1),
            ints(w),
        )
    }

    pub fn rank(&self) -> usize {
        self.v.len()
    }

    pub fn v(&self) -> &[Q] {
        &self.v
    }

    pub fn w(&self) -> &[Q] {
        &self.w
    }

    pub fn mu(&self, digit: u8) -> &Matrix {
        &self.mu[usize::from(digit)]
    }

    /// Path-count representation of a pair automaton, indexed by the second
    /// component: `μ(a)[i][j]` counts symbols `[x, a]` leading from `i` to `j`.
    ///
    /// For a deterministic automaton, `v μ(y) w` is the number of words `x`
    /// with `x × y` accepted.
    pub fn from_dfa(d: &PairDfa) -> LinRep {
        let k = d.state_count();
        let mut mu = [Matrix::zeros(k, k), Matrix::zeros(k, k)];
        for s in 0..k {
            for sym in PairSymbol::ALL {
                if let Some(t) = d.transition(s, sym) {
                    mu[usize::from(sym.second)][(s, t)] += q(1);
                }
            }
        }
        let mut v = vec![Q::zero(); k];
        v[d.initial()] = q(1);
        let w = (0..k).map(|s| q(i64::from(d.is_accepting(s)))).collect();
        let [mu0, mu1] = mu;
        LinRep {
            v,
            mu: [mu0, mu1],
            w,
        }
    }

    /// `v μ(x) w`, propagating the row vector left to right.
    pub fn evaluate(&self, x: &BitString) -> Q {
        dot(&self.row_after(&self.v, x), &self.w)
    }

    /// `u μ(x)`.
    pub fn row_after(&self, u: &[Q], x: &BitString) -> Vec<Q> {
        x.digits()
            .iter()
            .fold(u.to_vec(), |acc, &d| self.mu(d).left_apply(&acc))
    }

    /// Value at `n`, reading its canonical Fibonacci representation.
    pub fn evaluate_at(&self, n: &BigUint) -> Q {
        self.evaluate(&to_canonical(n))
    }

    pub fn evaluate_at_u64(&self, n: u64) -> Q {
        self.evaluate_at(&BigUint::from(n))
    }

    /// The product `μ(x_1) ⋯ μ(x_t)`.
    pub fn matrix_of_word(&self, x: &BitString) -> Matrix {
        x.digits()
            .iter()
            .fold(Matrix::identity(self.rank()), |acc, &d| acc.mul(self.mu(d)))
    }

    /// `v · m · w`.
    pub fn sandwich(&self, m: &Matrix) -> Q {
        dot(&m.left_apply(&self.v), &self.w)
    }

    /// Direct sum scaled blockwise: evaluates to `Σ coeffs[i] · reps[i]`.
    pub fn combine(coeffs: &[Q], reps: &[LinRep]) -> Result<LinRep, LinRepError> {
        if coeffs.len() != reps.len() {
            return Err(LinRepError::LengthMismatch {
                coeffs: coeffs.len(),
                reps: reps.len(),
            });
        }
        if reps.is_empty() {
            return Err(LinRepError::EmptyCombination);
        }
        let v = coeffs
            .iter()
            .zip(reps)
            .flat_map(|(c, r)| r.v.iter().map(move |x| c * x))
            .collect();
        let mu = [0, 1]
            .map(|a| Matrix::block_diagonal(&reps.iter().map(|r| &r.mu[a]).collect::<Vec<_>>()));
        let w = reps.iter().flat_map(|r| r.w.iter().cloned()).collect();
        let [mu0, mu1] = mu;
        Ok(LinRep {
            v,
            mu: [mu0, mu1],
            w,
        })
    }

    /// Same `v` and `μ` with a new final vector.
    pub fn with_final(&self, w: Vec<Q>) -> Result<LinRep, LinRepError> {
        if w.len() != self.rank() {
            return Err(LinRepError::Dimension(format!(
                "final vector has length {}, rank is {}",
                w.len(),
                self.rank()
            )));
        }
        Ok(LinRep {
            v: self.v.clone(),
            mu: self.mu.clone(),
            w,
        })
    }

    /// The representation of `x ↦ f(reverse(x))`: `(wᵀ, μᵀ, vᵀ)`.
    pub fn transpose(&self) -> LinRep {
        LinRep {
            v: self.w.clone(),
            mu: [self.mu[0].transpose(), self.mu[1].transpose()],
            w: self.v.clone(),
        }
    }

    /// Restricts to the span of the reachable row vectors `v μ(x)`.
    ///
    /// Words are explored breadth first, shorter first and `0` before `1`;
    /// a vector is kept when it is independent of those already kept, and
    /// only kept vectors are extended.
    pub fn left_reduce(&self) -> LinRep {
        let k = self.rank();
        let mut basis = RowSpaceBasis::new(k);
        let mut queue = VecDeque::from([self.v.clone()]);
        while let Some(u) = queue.pop_front() {
            if basis.insert(u.clone()).is_some() {
                queue.push_back(self.mu[0].left_apply(&u));
                queue.push_back(self.mu[1].left_apply(&u));
            }
        }
        let coords = |u: &[Q]| {
            basis
                .coordinates(u)
                .expect("row space is closed under the morphism")
        };
        let n = basis.len();
        let v = if n == 0 { Vec::new() } else { coords(&self.v) };
        let mu = [0, 1].map(|a| {
            Matrix::from_rows(
                basis
                    .vectors()
                    .iter()
                    .map(|b| coords(&self.mu[a].left_apply(b)))
                    .collect(),
            )
        });
        let w = basis.vectors().iter().map(|b| dot(b, &self.w)).collect();
        let [mu0, mu1] = mu;
        LinRep {
            v,
            mu: [mu0, mu1],
            w,
        }
    }

    /// Equivalent representation of least rank: left reduction followed by
    /// the same reduction on the transposed representation.
    pub fn minimize(&self) -> LinRep {
        self.left_reduce().transpose().left_reduce().transpose()
    }

    /// True iff both representations evaluate identically on every word.
    pub fn equivalent(&self, other: &LinRep) -> bool {
        LinRep::combine(&[q(1), q(-1)], &[self.clone(), other.clone()])
            .expect("two coefficients for two representations")
            .minimize()
            .rank()
            == 0
    }

    /// True iff `s(t) = f(seed · tail^t)` satisfies the linear recurrence with
    /// characteristic polynomial `p` for every window inside `0..=range`.
    pub fn check_recurrence(
        &self,
        p: &Polynomial,
        seed: &BitString,
        tail: bool,
        range: usize,
    ) -> Result<bool, LinRepError> {
        let deg = p.degree().ok_or(LinRepError::ZeroPolynomial)?;
        let values = self.tail_sequence(seed, tail, range + 1);
        Ok((0..values.len().saturating_sub(deg)).all(|t| {
            p.coeffs()
                .iter()
                .enumerate()
                .fold(Q::zero(), |acc, (i, c)| acc + c * &values[t + i])
                .is_zero()
        }))
    }

    /// `f(seed · tail^t)` for `t = 0..count`.
    pub fn tail_sequence(&self, seed: &BitString, tail: bool, count: usize) -> Vec<Q> {
        let step = self.mu(u8::from(tail));
        let mut row = self.row_after(&self.v, seed);
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            out.push(dot(&row, &self.w));
            row = step.left_apply(&row);
        }
        out
    }

    /// Conjugates by a state permutation: state `i` of the result is state
    /// `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> LinRep {
        LinRep {
            v: perm.iter().map(|&p| self.v[p].clone()).collect(),
            mu: [self.mu[0].permuted(perm), self.mu[1].permuted(perm)],
            w: perm.iter().map(|&p| self.w[p].clone()).collect(),
        }
    }

    /// A state permutation making `self` entrywise equal to `target`, if one
    /// exists. Exhaustive search with pruning; intended for small ranks.
    pub fn find_permutation_to(&self, target: &LinRep) -> Option<Vec<usize>> {
        let k = self.rank();
        if target.rank() != k {
            return None;
        }
        let mut perm = Vec::with_capacity(k);
        let mut used = vec![false; k];
        self.extend_permutation(target, &mut perm, &mut used)
            .then_some(perm)
    }

    fn extend_permutation(
        &self,
        target: &LinRep,
        perm: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let i = perm.len();
        if i == self.rank() {
            return true;
        }
        for cand in 0..self.rank() {
            if used[cand] || self.v[cand] != target.v[i] || self.w[cand] != target.w[i] {
                continue;
            }
            perm.push(cand);
            let consistent = (0..=i).all(|j| {
                (0..2).all(|a| {
                    self.mu[a][(perm[i], perm[j])] == target.mu[a][(i, j)]
                        && self.mu[a][(perm[j], perm[i])] == target.mu[a][(j, i)]
                })
            });
            if consistent {
                used[cand] = true;
                if self.extend_permutation(target, perm, used) {
                    return true;
                }
                used[cand] = false;
            }
            perm.pop();
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairdfa::{build_normalization_dfa, count_ones_dfa, minimize_dfa, product};

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn rep_r() -> LinRep {
        LinRep::from_dfa(&build_normalization_dfa().unwrap())
    }

    fn rep_re() -> LinRep {
        let m = build_normalization_dfa().unwrap();
        LinRep::from_dfa(&minimize_dfa(&product(&m, &count_ones_dfa(2, 0).unwrap())))
    }

    #[test]
    fn evaluation_examples() {
        let r = rep_r();
        assert_eq!(r.rank(), 4);
        assert_eq!(r.evaluate(&bs("10000")), q(3));
        assert_eq!(r.evaluate_at_u64(8), q(3));
        assert_eq!(r.evaluate_at_u64(0), q(1));
        assert_eq!(r.evaluate(&BitString::empty()), dot(r.v(), r.w()));
        assert_eq!(rep_re().evaluate(&bs("10000")), q(1));
    }

    #[test]
    fn empty_language_evaluates_to_zero() {
        let r = LinRep::from_dfa(&crate::pairdfa::PairDfa::empty_language());
        assert_eq!(r.rank(), 1);
        for len in 0..6 {
            for x in BitString::all_of_length(len) {
                assert!(r.evaluate(&x).is_zero());
            }
        }
        assert_eq!(r.minimize().rank(), 0);
    }

    #[test]
    fn combine_examples() {
        let (r, re) = (rep_r(), rep_re());
        let a = LinRep::combine(&[q(2), q(-1)], &[re.clone(), r.clone()]).unwrap();
        assert_eq!(a.rank(), 12);
        assert_eq!(a.evaluate_at_u64(4), q(1));
        assert!(LinRep::combine(&[q(1)], std::slice::from_ref(&r))
            .unwrap()
            .equivalent(&r));
        let zero = LinRep::combine(&[q(1), q(-1)], &[r.clone(), r.clone()]).unwrap();
        assert_eq!(zero.minimize().rank(), 0);
        assert_eq!(
            LinRep::combine(&[q(1)], &[r.clone(), r.clone()]),
            Err(LinRepError::LengthMismatch { coeffs: 1, reps: 2 })
        );
        assert_eq!(
            LinRep::combine(&[], &[]),
            Err(LinRepError::EmptyCombination)
        );
    }

    #[test]
    fn with_final_examples() {
        let r = rep_r();
        assert_eq!(r.with_final(r.w().to_vec()).unwrap(), r);
        let zero = r.with_final(vec![Q::zero(); 4]).unwrap();
        assert_eq!(zero.minimize().rank(), 0);
        assert!(matches!(
            r.with_final(vec![q(1)]),
            Err(LinRepError::Dimension(_))
        ));
    }

    #[test]
    fn minimize_keeps_values_and_never_grows() {
        let (r, re) = (rep_r(), rep_re());
        let a = LinRep::combine(&[q(2), q(-1)], &[re.clone(), r.clone()]).unwrap();
        for rep in [&r, &re, &a] {
            let m = rep.minimize();
            assert!(m.rank() <= rep.rank());
            for len in 0..=12 {
                for x in BitString::all_of_length(len) {
                    assert_eq!(m.evaluate(&x), rep.evaluate(&x), "{x}");
                }
            }
            assert_eq!(m.minimize().rank(), m.rank());
        }
        assert_eq!(a.minimize().rank(), 4);
    }

    #[test]
    fn minimize_is_deterministic() {
        let a = LinRep::combine(&[q(2), q(-1)], &[rep_re(), rep_r()]).unwrap();
        assert_eq!(a.minimize(), a.minimize());
    }

    #[test]
    fn equivalence() {
        let (r, re) = (rep_r(), rep_re());
        assert!(r.equivalent(&r));
        assert!(!r.equivalent(&re));
        // A change of basis is equivalent.
        let perm = [2, 0, 3, 1];
        assert!(r.permuted(&perm).equivalent(&r));
        assert_eq!(
            r.permuted(&perm)
                .find_permutation_to(&r)
                .map(|p| r.permuted(&perm).permuted(&p)),
            Some(r.clone())
        );
    }

    #[test]
    fn matrix_of_word_and_sandwich() {
        let r = rep_r();
        assert_eq!(r.matrix_of_word(&BitString::empty()), Matrix::identity(4));
        for n in 0..200u64 {
            let x = crate::fibnum::to_canonical_u64(n);
            assert_eq!(r.sandwich(&r.matrix_of_word(&x)), r.evaluate(&x));
        }
    }

    #[test]
    fn recurrence_on_powers_of_mu0() {
        let r = rep_r();
        let p = minimal_polynomial(r.mu(0));
        assert_eq!(p, Polynomial::from_ints(&[0, 1, -1, -1, 1]));
        assert!(r.check_recurrence(&p, &bs("1"), false, 60).unwrap());
        // X - 1 does not annihilate the growing sequence.
        assert!(!r
            .check_recurrence(&Polynomial::linear(1), &bs("1"), false, 60)
            .unwrap());
        let zero = r.with_final(vec![Q::zero(); 4]).unwrap();
        assert!(zero
            .check_recurrence(&Polynomial::linear(1), &BitString::empty(), false, 10)
            .unwrap());
        assert_eq!(
            r.check_recurrence(&Polynomial::new(vec![]), &bs("1"), false, 5),
            Err(LinRepError::ZeroPolynomial)
        );
    }

    #[test]
    fn dimension_validation() {
        assert!(matches!(
            LinRep::from_ints(&[1, 0], &[&[1]], &[&[1]], &[1]),
            Err(LinRepError::Dimension(_))
        ));
    }
}
