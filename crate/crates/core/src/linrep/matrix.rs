//! Dense matrices and row-space bookkeeping over exact rationals.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn ints(values: &[i64]) -> Vec<Q> {
    values.iter().map(|&v| q(v)).collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| ints(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Q] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, u: &[Q]) -> Vec<Q> {
        assert_eq!(u.len(), self.rows, "vector-matrix dimension mismatch");
        let mut out = vec![Q::zero(); self.cols];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let m = &self[(i, j)];
                if !m.is_zero() {
                    *o += ui * m;
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn right_apply(&self, u: &[Q]) -> Vec<Q> {
        assert_eq!(u.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), u)).collect()
    }

    pub fn scale(&self, c: &Q) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn block_diagonal(blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Applies the same permutation to rows and columns: entry `(i, j)` of the
    /// result is entry `(perm[i], perm[j])` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Matrix {
        assert!(self.is_square() && perm.len() == self.rows);
        let mut out = Matrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(perm[i], perm[j])].clone();
            }
        }
        out
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Q;

    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

struct EchelonRow {
    pivot: usize,
    /// Reduced vector, pivot entry normalized to 1.
    row: Vec<Q>,
    /// `row` as a combination of the inserted basis vectors.
    combo: Vec<Q>,
}

/// Incrementally built basis of a space of row vectors.
///
/// Keeps the inserted vectors verbatim, together with an echelon form used to
/// test membership and to express vectors in the inserted basis. Pivots are
/// chosen as the first nonzero column of the reduced vector.
pub struct RowSpaceBasis {
    dim: usize,
    vectors: Vec<Vec<Q>>,
    echelon: Vec<EchelonRow>,
}

impl RowSpaceBasis {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            vectors: Vec::new(),
            echelon: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Q>] {
        &self.vectors
    }

    /// Subtracts echelon rows from `u`; returns the residue and the
    /// coefficients (over the inserted vectors) of what was subtracted.
    fn reduce(&self, u: &[Q]) -> (Vec<Q>, Vec<Q>) {
        assert_eq!(u.len(), self.dim, "vector has wrong dimension");
        let mut residue = u.to_vec();
        let mut coeffs = vec![Q::zero(); self.vectors.len()];
        for e in &self.echelon {
            if residue[e.pivot].is_zero() {
                continue;
            }
            let f = residue[e.pivot].clone();
            for (r, x) in residue.iter_mut().zip(&e.row).skip(e.pivot) {
                if !x.is_zero() {
                    *r -= &f * x;
                }
            }
            for (c, x) in coeffs.iter_mut().zip(&e.combo) {
                if !x.is_zero() {
                    *c += &f * x;
                }
            }
        }
        (residue, coeffs)
    }

    /// Coordinates of `u` over the inserted vectors, if `u` is in their span.
    pub fn coordinates(&self, u: &[Q]) -> Option<Vec<Q>> {
        let (residue, coeffs) = self.reduce(u);
        residue.iter().all(Zero::is_zero).then_some(coeffs)
    }

    /// Inserts `u` if it is independent of the current vectors. Returns its
    /// index when inserted.
    pub fn insert(&mut self, u: Vec<Q>) -> Option<usize> {
        let (mut residue, coeffs) = self.reduce(&u);
        let pivot = residue.iter().position(|x| !x.is_zero())?;
        // residue = u - Σ coeffs_i b_i, and u becomes the new basis vector.
        let mut combo: Vec<Q> = coeffs.into_iter().map(|c| -c).collect();
        combo.push(Q::one());
        let inv = residue[pivot].recip();
        for x in residue.iter_mut() {
            *x *= &inv;
        }
        for c in combo.iter_mut() {
            *c *= &inv;
        }
        // Keep earlier rows' combos the same length as the basis.
        for e in self.echelon.iter_mut() {
            e.combo.push(Q::zero());
        }
        self.echelon.push(EchelonRow {
            pivot,
            row: residue,
            combo,
        });
        self.vectors.push(u);
        Some(self.vectors.len() - 1)
    }
}

/// Rank of a list of vectors of equal dimension.
pub fn rank_of(vectors: &[Vec<Q>], dim: usize) -> usize {
    let mut basis = RowSpaceBasis::new(dim);
    for v in vectors {
        basis.insert(v.clone());
    }
    basis.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_reconstruct_vectors() {
        let mut b = RowSpaceBasis::new(3);
        assert_eq!(b.insert(ints(&[0, 2, 4])), Some(0));
        assert_eq!(b.insert(ints(&[1, 1, 0])), Some(1));
        assert_eq!(b.insert(ints(&[1, 2, 2])), None);
        let target = ints(&[3, 7, 8]);
        let c = b.coordinates(&target).unwrap();
        let rebuilt: Vec<Q> = (0..3)
            .map(|j| {
                c.iter()
                    .zip(b.vectors())
                    .fold(Q::zero(), |acc, (ci, v)| acc + ci * &v[j])
            })
            .collect();
        assert_eq!(rebuilt, target);
        assert_eq!(b.coordinates(&ints(&[0, 0, 1])), None);
        assert_eq!(b.insert(ints(&[0, 0, 1])), Some(2));
        assert!(b.coordinates(&ints(&[5, -1, 7])).is_some());
    }

    #[test]
    fn zero_vector_never_inserted() {
        let mut b = RowSpaceBasis::new(2);
        assert_eq!(b.insert(ints(&[0, 0])), None);
        assert!(b.is_empty());
        assert_eq!(b.coordinates(&ints(&[0, 0])), Some(vec![]));
    }

    #[test]
    fn products_and_transpose() {
        let a = Matrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        let b = Matrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b), Matrix::from_int_rows(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose(), Matrix::from_int_rows(&[&[1, 3], &[2, 4]]));
        assert_eq!(a.left_apply(&ints(&[1, 1])), ints(&[4, 6]));
        assert_eq!(a.right_apply(&ints(&[1, 1])), ints(&[3, 7]));
        assert_eq!(a.pow(3), a.mul(&a).mul(&a));
        assert_eq!(a.pow(0), Matrix::identity(2));
        let d = Matrix::block_diagonal(&[&a, &Matrix::identity(1)]);
        assert_eq!(d.rows(), 3);
        assert_eq!(d[(2, 2)], q(1));
        assert_eq!(d[(0, 2)], q(0));
    }

    #[test]
    fn rank_counts_independent_rows() {
        let rows = vec![ints(&[1, 2, 3]), ints(&[2, 4, 6]), ints(&[0, 1, 1])];
        assert_eq!(rank_of(&rows, 3), 2);
    }
}
