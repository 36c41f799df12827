//! Brute-force ground truth for Fibonacci partitions.
//!
//! Everything here works directly with the parts `F_2, F_3, …` and truncated
//! power series, never with numeration strings or automata, so agreement with
//! the automaton side is independent evidence.

use std::io;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::fibnum::fib;

/// Largest `n` accepted by [`partitions_of`] and [`d_of`].
pub const ENUMERATION_GUARD: u64 = 1_000_000;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("{0} exceeds the enumeration guard {ENUMERATION_GUARD}")]
    TooLarge(u64),
    #[error("grading modulus must be at least 1")]
    ZeroModulus,
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Distinct Fibonacci parts `F_2 = 1, F_3 = 2, F_4 = 3, …` not exceeding `limit`.
pub fn fibonacci_parts(limit: u64) -> Vec<u64> {
    (2..)
        .map(|i| fib(i).to_u64().expect("parts below the guard fit in u64"))
        .take_while(|&f| f <= limit)
        .collect()
}

/// Coefficients of `∏ (1 + g·X^{F_i})` up to degree `limit`, graded by part
/// count modulo `modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesTable {
    limit: u64,
    modulus: usize,
    table: Vec<Vec<BigUint>>,
}

impl SeriesTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// Number of partitions of `n` whose part count is `≡ residue`.
    pub fn count(&self, n: u64, residue: usize) -> &BigUint {
        &self.table[n as usize][residue]
    }

    pub fn graded(&self, n: u64) -> &[BigUint] {
        &self.table[n as usize]
    }

    /// `r(n)`, all partitions regardless of part count.
    pub fn total(&self, n: u64) -> BigUint {
        self.table[n as usize].iter().sum()
    }
}

/// Expands the truncated product, applying factors in increasing order.
pub fn expand(limit: u64, modulus: usize) -> Result<SeriesTable, OracleError> {
    expand_with_parts(limit, modulus, &fibonacci_parts(limit))
}

/// Expands the truncated product over the given parts, in the given order.
pub fn expand_with_parts(
    limit: u64,
    modulus: usize,
    parts: &[u64],
) -> Result<SeriesTable, OracleError> {
    if modulus == 0 {
        return Err(OracleError::ZeroModulus);
    }
    let n = limit as usize;
    let mut table = vec![vec![BigUint::zero(); modulus]; n + 1];
    table[0][0] = BigUint::from(1u32);
    for &part in parts {
        let part = part as usize;
        // Descending degrees so each factor is used at most once.
        for deg in (part..=n).rev() {
            let (lo, hi) = table.split_at_mut(deg);
            let src = &lo[deg - part];
            let dst = &mut hi[0];
            for j in 0..modulus {
                if !src[j].is_zero() {
                    dst[(j + 1) % modulus] += &src[j];
                }
            }
        }
    }
    Ok(SeriesTable {
        limit,
        modulus,
        table,
    })
}

/// Coefficients `a(0..=limit)` of `∏ (1 − X^{F_i})`.
///
/// Computed twice, as a signed product and as `r_e − r_o` from the parity
/// grading; panics if the two disagree.
pub fn a_of(limit: u64) -> Vec<BigInt> {
    let direct = signed_product(limit);
    let graded = expand(limit, 2).expect("modulus 2 is valid");
    for (n, a) in direct.iter().enumerate() {
        let even = BigInt::from(graded.count(n as u64, 0).clone());
        let odd = BigInt::from(graded.count(n as u64, 1).clone());
        assert_eq!(
            *a,
            even - odd,
            "signed product and parity grading disagree at {n}"
        );
    }
    direct
}

fn signed_product(limit: u64) -> Vec<BigInt> {
    let n = limit as usize;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[0] = BigInt::from(1);
    for part in fibonacci_parts(limit) {
        let part = part as usize;
        for deg in (part..=n).rev() {
            let sub = coeffs[deg - part].clone();
            coeffs[deg] -= sub;
        }
    }
    coeffs
}

/// All partitions of `n` into distinct parts from `F_2, F_3, …`, each listed
/// with parts in decreasing order.
pub fn partitions_of(n: u64) -> Result<Vec<Vec<u64>>, OracleError> {
    if n > ENUMERATION_GUARD {
        return Err(OracleError::TooLarge(n));
    }
    let parts = fibonacci_parts(n);
    // prefix[i] = sum of parts[0..i], the most that smaller parts can supply.
    let prefix: Vec<u64> = std::iter::once(0)
        .chain(parts.iter().scan(0, |acc, &p| {
            *acc += p;
            Some(*acc)
        }))
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    search(&parts, &prefix, parts.len(), n, &mut current, &mut out);
    Ok(out)
}

fn search(
    parts: &[u64],
    prefix: &[u64],
    upto: usize,
    rest: u64,
    current: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    if rest == 0 {
        out.push(current.clone());
        return;
    }
    if prefix[upto] < rest {
        return;
    }
    for i in (0..upto).rev() {
        if parts[i] <= rest {
            current.push(parts[i]);
            search(parts, prefix, i, rest - parts[i], current, out);
            current.pop();
        }
        if prefix[i] < rest {
            break;
        }
    }
}

/// `r_{4,0}(n) − r_{4,2}(n)`.
pub fn d_of(n: u64) -> Result<BigInt, OracleError> {
    if n > ENUMERATION_GUARD {
        return Err(OracleError::TooLarge(n));
    }
    let t = expand(n, 4)?;
    Ok(BigInt::from(t.count(n, 0).clone()) - BigInt::from(t.count(n, 2).clone()))
}

/// Writes `n, r, r_e, r_o, a` and the mod-3 and mod-4 graded counts for
/// `0 ≤ n ≤ limit` as CSV.
pub fn write_csv<W: io::Write>(limit: u64, out: W) -> Result<(), OracleError> {
    let by2 = expand(limit, 2)?;
    let by3 = expand(limit, 3)?;
    let by4 = expand(limit, 4)?;
    let a = a_of(limit);
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record([
        "n", "r", "r_e", "r_o", "a", "r3_0", "r3_1", "r3_2", "r4_0", "r4_1", "r4_2", "r4_3",
    ])?;
    for n in 0..=limit {
        let mut row = vec![
            n.to_string(),
            by2.total(n).to_string(),
            by2.count(n, 0).to_string(),
            by2.count(n, 1).to_string(),
            a[n as usize].to_string(),
        ];
        row.extend(by3.graded(n).iter().map(ToString::to_string));
        row.extend(by4.graded(n).iter().map(ToString::to_string));
        writer.write_record(&row)?;
    }
    writer.flush()?;
    Ok(())
}
