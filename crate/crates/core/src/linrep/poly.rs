use std::fmt;

use num_traits::{One, Signed, Zero};

use super::matrix::{q, Matrix, RowSpaceBasis, Q};

/// Univariate polynomial over the rationals, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Q>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| q(c)).collect())
    }

    /// `X - root`.
    pub fn linear(root: i64) -> Self {
        Self::from_ints(&[-root, 1])
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::new(Vec::new());
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn product(factors: &[Polynomial]) -> Polynomial {
        factors
            .iter()
            .fold(Polynomial::from_ints(&[1]), |acc, f| acc.mul(f))
    }

    /// `p(A)` by Horner's rule.
    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        assert!(a.is_square());
        let n = a.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a).add(&Matrix::identity(n).scale(c));
        }
        acc
    }

    /// Remainder of division by `divisor`.
    pub fn rem(&self, divisor: &Polynomial) -> Polynomial {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let f = r.last().unwrap() / &lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                r[shift + i] -= &f * c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Polynomial::new(r)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let mono = match deg {
                0 => String::new(),
                1 => "X".to_string(),
                d => format!("X^{d}"),
            };
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// The monic polynomial of least degree annihilating `a`, found as the first
/// linear dependence among the flattened powers `I, A, A², …`.
///
/// Panics if `a` is not square.
pub fn minimal_polynomial(a: &Matrix) -> Polynomial {
    assert!(a.is_square(), "minimal polynomial of a non-square matrix");
    let n = a.rows();
    let mut basis = RowSpaceBasis::new(n * n);
    let mut power = Matrix::identity(n);
    loop {
        let flat = power.entries().to_vec();
        if let Some(coords) = basis.coordinates(&flat) {
            // A^d = Σ c_i A^i, so the polynomial is X^d - Σ c_i X^i.
            let mut coeffs: Vec<Q> = coords.into_iter().map(|c| -c).collect();
            coeffs.push(Q::one());
            return Polynomial::new(coeffs);
        }
        basis.insert(flat);
        power = power.mul(a);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_linear_minimal_polynomial() {
        assert_eq!(
            minimal_polynomial(&Matrix::identity(2)),
            Polynomial::from_ints(&[-1, 1])
        );
    }

    #[test]
    fn nilpotent_and_diagonal() {
        let n = Matrix::from_int_rows(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(minimal_polynomial(&n), Polynomial::from_ints(&[0, 0, 0, 1]));
        let d = Matrix::from_int_rows(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 2]]);
        assert_eq!(
            minimal_polynomial(&d),
            Polynomial::product(&[Polynomial::linear(2), Polynomial::linear(3)])
        );
        let zero = Matrix::zeros(2, 2);
        assert_eq!(minimal_polynomial(&zero), Polynomial::x());
    }

    #[test]
    fn display_and_products() {
        let p = Polynomial::product(&[
            Polynomial::x(),
            Polynomial::linear(-1),
            Polynomial::linear(1),
            Polynomial::linear(1),
        ]);
        assert_eq!(p, Polynomial::from_ints(&[0, 1, -1, -1, 1]));
        assert_eq!(p.to_string(), "X^4 - X^3 - X^2 + X");
        assert_eq!(Polynomial::from_ints(&[-3, 0, 2]).to_string(), "2*X^2 - 3");
        assert_eq!(Polynomial::new(vec![]).to_string(), "0");
        assert_eq!(Polynomial::from_ints(&[0, 0]), Polynomial::new(vec![]));
    }

    #[test]
    fn remainder() {
        let p = Polynomial::from_ints(&[0, 1, -1, -1, 1]);
        assert!(p.rem(&Polynomial::linear(1)).is_zero());
        assert_eq!(p.rem(&Polynomial::linear(2)), Polynomial::from_ints(&[6]));
    }
}
