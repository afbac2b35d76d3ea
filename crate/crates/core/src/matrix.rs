//! Dense matrices over an exact field, with elimination-based rank, kernel
//! and preimage computations.
//!
//! Over Q, `rref` first clears denominators row-wise and runs a fraction-free
//! (Bareiss) forward pass so intermediate entries stay integral and of bounded
//! size; a final normalization pass with exact division produces the unique
//! reduced row echelon form. Over GF(p) a plain Gauss-Jordan pass is used.

use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Dense rows x cols matrix; all entries share one field tag, dimensions are
/// fixed at construction. Zero-row and zero-column matrices are legal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Scalar>,
}

/// Result of reduced row echelon elimination.
#[derive(Debug, Clone)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                assert_eq!(v.field(), field, "entry field differs from matrix field");
                entries.push(v);
            }
        }
        Matrix {
            rows,
            cols,
            field,
            entries,
        }
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for row in &rows {
            if row.len() != n_cols {
                return Err(Error::ShapeMismatch {
                    left_rows: n_rows,
                    left_cols: n_cols,
                    right_rows: n_rows,
                    right_cols: row.len(),
                });
            }
            for v in row {
                if v.field() != field {
                    return Err(Error::FieldMismatch {
                        left: field,
                        right: v.field(),
                    });
                }
                entries.push(v.clone());
            }
        }
        Ok(Matrix {
            rows: n_rows,
            cols: n_cols,
            field,
            entries,
        })
    }

    /// Build from integer literals; handy for fixed test matrices and the
    /// example generators.
    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Self {
        let n_cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(field, rows.len(), n_cols, |i, j| field.from_i64(rows[i][j]))
    }

    /// m x d matrix whose columns are the given vectors of length m.
    pub fn from_columns(field: Field, m: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        for c in columns {
            if c.len() != m {
                return Err(Error::AmbientMismatch {
                    left: m,
                    right: c.len(),
                });
            }
        }
        Ok(Self::from_fn(field, m, columns.len(), |i, j| {
            columns[j][i].clone()
        }))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(
            v.field(),
            self.field,
            "entry field differs from matrix field"
        );
        self.entries[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    fn check_same_shape(&self, rhs: &Matrix) -> Result<()> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: rhs.field,
            });
        }
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: rhs.rows,
                right_cols: rhs.cols,
            });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_same_shape(rhs)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_same_shape(rhs)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        assert_eq!(c.field(), self.field);
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: rhs.field,
            });
        }
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: rhs.rows,
                right_cols: rhs.cols,
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = self.field.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * rhs.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::AmbientMismatch {
                left: self.cols,
                right: v.len(),
            });
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = self.field.zero();
            for (k, value) in v.iter().enumerate() {
                let a = self.get(i, k);
                if a.is_zero() || value.is_zero() {
                    continue;
                }
                acc = &acc + &(a * value);
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Matrix power by repeated squaring; A^0 is the identity.
    pub fn pow(&self, mut e: usize) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    /// Horizontal concatenation [self | rhs].
    pub fn hstack(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: rhs.field,
            });
        }
        if self.rows != rhs.rows {
            return Err(Error::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: rhs.rows,
                right_cols: rhs.cols,
            });
        }
        Ok(Matrix::from_fn(
            self.field,
            self.rows,
            self.cols + rhs.cols,
            |i, j| {
                if j < self.cols {
                    self.get(i, j).clone()
                } else {
                    rhs.get(i, j - self.cols).clone()
                }
            },
        ))
    }

    /// Block diagonal sum of square or rectangular blocks.
    pub fn direct_sum(blocks: &[Matrix]) -> Matrix {
        let field = blocks.first().map_or(Field::Q, Matrix::field);
        let rows = blocks.iter().map(Matrix::rows).sum();
        let cols = blocks.iter().map(Matrix::cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut ro = 0;
        let mut co = 0;
        for b in blocks {
            assert_eq!(b.field(), field, "direct sum blocks share one field");
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(ro + i, co + j, b.get(i, j).clone());
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        let mut acc = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    /// Unique reduced row echelon form with rank and pivot columns.
    pub fn rref(&self) -> Rref {
        match self.field {
            Field::Q => self.rref_bareiss(),
            Field::Gf(_) => self.rref_gauss(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Fraction-free forward pass (division by the previous pivot is always
    /// exact over integer entries) followed by exact normalization.
    fn rref_bareiss(&self) -> Rref {
        let mut a = self.clone();
        // Clear denominators row by row; row scaling leaves the RREF unchanged.
        for i in 0..a.rows {
            let mut lcm = num_bigint::BigInt::one();
            for j in 0..a.cols {
                if let Scalar::Q(r) = a.get(i, j) {
                    lcm = lcm.lcm(r.denom());
                }
            }
            if !lcm.is_one() {
                let factor = Scalar::Q(BigRational::from_integer(lcm));
                for j in 0..a.cols {
                    let v = a.get(i, j) * &factor;
                    a.set(i, j, v);
                }
            }
        }

        let mut pivots = Vec::new();
        let mut prev = a.field.one();
        let mut r = 0;
        for c in 0..a.cols {
            if r >= a.rows {
                break;
            }
            let Some(pr) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                a.swap_rows(pr, r);
            }
            let pivot = a.get(r, c).clone();
            for i in r + 1..a.rows {
                let lead = a.get(i, c).clone();
                for j in c + 1..a.cols {
                    let v = &(&(&pivot * a.get(i, j)) - &(&lead * a.get(r, j))) / &prev;
                    a.set(i, j, v);
                }
                a.set(i, c, a.field.zero());
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
        }

        Self::normalize_echelon(&mut a, &pivots);
        Rref {
            rank: pivots.len(),
            pivots,
            reduced: a,
        }
    }

    fn rref_gauss(&self) -> Rref {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r >= a.rows {
                break;
            }
            let Some(pr) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                a.swap_rows(pr, r);
            }
            let inv = a.get(r, c).inv();
            for j in c..a.cols {
                let v = a.get(r, j) * &inv;
                a.set(r, j, v);
            }
            for i in r + 1..a.rows {
                if a.get(i, c).is_zero() {
                    continue;
                }
                let lead = a.get(i, c).clone();
                for j in c..a.cols {
                    let v = a.get(i, j) - &(&lead * a.get(r, j));
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Self::normalize_echelon(&mut a, &pivots);
        Rref {
            rank: pivots.len(),
            pivots,
            reduced: a,
        }
    }

    /// Scale pivot rows to leading one and eliminate above each pivot.
    fn normalize_echelon(a: &mut Matrix, pivots: &[usize]) {
        for (r, &c) in pivots.iter().enumerate().rev() {
            let inv = a.get(r, c).inv();
            if !inv.is_one() {
                for j in c..a.cols {
                    let v = a.get(r, j) * &inv;
                    a.set(r, j, v);
                }
            }
            for i in 0..r {
                if a.get(i, c).is_zero() {
                    continue;
                }
                let lead = a.get(i, c).clone();
                for j in c..a.cols {
                    let v = a.get(i, j) - &(&lead * a.get(r, j));
                    a.set(i, j, v);
                }
            }
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.entries.swap(i * self.cols + k, j * self.cols + k);
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

pub fn format_vector(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(Scalar::to_string).collect();
    parts.join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_identity_is_fixed_point() {
        let id = Matrix::identity(Field::Q, 3);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_proportional_rows() {
        let m = Matrix::from_i64_rows(Field::Q, &[&[2, 4], &[1, 2]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(
            r.reduced,
            Matrix::from_i64_rows(Field::Q, &[&[1, 2], &[0, 0]])
        );
    }

    #[test]
    fn rref_handles_rational_entries() {
        let f = Field::Q;
        let m = Matrix::from_rows(
            f,
            vec![
                vec![f.parse("1/2").unwrap(), f.parse("1/3").unwrap()],
                vec![f.parse("3").unwrap(), f.parse("2").unwrap()],
            ],
        )
        .unwrap();
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(
            r.reduced.get(0, 1),
            &f.parse("2/3").unwrap(),
            "pivot row must be normalized exactly"
        );
    }

    #[test]
    fn rref_empty_matrix() {
        let m = Matrix::zeros(Field::Q, 0, 0);
        assert_eq!(m.rref().rank, 0);
        let m = Matrix::zeros(Field::Gf(5), 0, 3);
        assert_eq!(m.rref().rank, 0);
        let m = Matrix::zeros(Field::Q, 3, 0);
        assert_eq!(m.rref().rank, 0);
    }

    #[test]
    fn gf_rank_matches_hand_value() {
        // Over GF(2) the all-ones 2x2 matrix has rank 1.
        let m = Matrix::from_i64_rows(Field::Gf(2), &[&[1, 1], &[1, 1]]);
        assert_eq!(m.rank(), 1);
        // [[1,1],[1,2]] is invertible mod 3 (det = 1).
        let m = Matrix::from_i64_rows(Field::Gf(3), &[&[1, 1], &[1, 2]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn pow_and_mul() {
        let a = Matrix::from_i64_rows(Field::Q, &[&[0, 1], &[0, 0]]);
        assert!(a.pow(2).unwrap().is_zero());
        assert_eq!(a.pow(0).unwrap(), Matrix::identity(Field::Q, 2));
        let b = Matrix::from_i64_rows(Field::Q, &[&[1, 2], &[3, 4]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, Matrix::from_i64_rows(Field::Q, &[&[3, 4], &[0, 0]]));
    }

    #[test]
    fn shape_and_field_errors() {
        let a = Matrix::identity(Field::Q, 2);
        let b = Matrix::identity(Field::Q, 3);
        assert!(matches!(a.mul(&b), Err(Error::ShapeMismatch { .. })));
        let c = Matrix::identity(Field::Gf(5), 2);
        assert!(matches!(a.add(&c), Err(Error::FieldMismatch { .. })));
    }
}
