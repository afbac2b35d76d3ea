//! Subspaces of K^m in a canonical basis, and the lattice operations on them.
//!
//! A subspace is stored as an m x d basis matrix in reduced column-echelon
//! form (the transpose of the RREF of the spanning rows, pivots on the
//! earliest possible rows). The echelon form is the unique representative of
//! the span, so subspace equality is plain entry-wise equality.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    field: Field,
    basis: Matrix, // m x d, reduced column-echelon form
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            ambient,
            field,
            basis: Matrix::zeros(field, ambient, 0),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace {
            ambient,
            field,
            basis: Matrix::identity(field, ambient),
        }
    }

    /// Canonicalize the span of arbitrary vectors.
    pub fn from_span(field: Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::AmbientMismatch {
                    left: ambient,
                    right: v.len(),
                });
            }
        }
        if vectors.is_empty() {
            return Ok(Self::zero(field, ambient));
        }
        let rows = Matrix::from_rows(field, vectors.to_vec())?;
        Ok(Self::from_row_span(&rows))
    }

    /// Canonicalize the span of the columns of a matrix.
    pub fn from_column_span(m: &Matrix) -> Self {
        Self::from_row_span(&m.transpose())
    }

    fn from_row_span(rows: &Matrix) -> Self {
        let ambient = rows.cols();
        let field = rows.field();
        let r = rows.rref();
        let basis = Matrix::from_fn(field, ambient, r.rank, |i, j| r.reduced.get(j, i).clone());
        Subspace {
            ambient,
            field,
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// The canonical m x d basis matrix.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|j| self.basis.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    pub fn contains(&self, x: &[Scalar]) -> Result<bool> {
        if x.len() != self.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: x.len(),
            });
        }
        // Reduce x against the canonical basis: subtract the unique candidate
        // combination, then check the residual vanishes.
        let mut residual: Vec<Scalar> = x.to_vec();
        for j in 0..self.dim() {
            let pivot_row = (0..self.ambient)
                .find(|&i| !self.basis.get(i, j).is_zero())
                .expect("canonical basis has no zero columns");
            let coeff = residual[pivot_row].clone();
            if coeff.is_zero() {
                continue;
            }
            for (i, r) in residual.iter_mut().enumerate() {
                let b = self.basis.get(i, j);
                if !b.is_zero() {
                    *r = &*r - &(&coeff * b);
                }
            }
        }
        Ok(residual.iter().all(Scalar::is_zero))
    }

    pub fn is_contained_in(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        for j in 0..self.dim() {
            if !other.contains(&self.basis.column(j))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let stacked = self.basis.hstack(&other.basis)?;
        Ok(Subspace::from_column_span(&stacked))
    }

    /// U cap W via the kernel of [U | -W]: a relation U a = W b yields the
    /// intersection vector U a.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field, self.ambient));
        }
        let stacked = self.basis.hstack(&other.basis.neg())?;
        let rel = kernel_basis(&stacked);
        let d1 = self.dim();
        let mut vectors = Vec::with_capacity(rel.dim());
        for j in 0..rel.dim() {
            let coeffs = rel.basis().column(j);
            let mut v = vec![self.field.zero(); self.ambient];
            for (c, coeff) in coeffs.iter().take(d1).enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                for (i, out) in v.iter_mut().enumerate() {
                    let b = self.basis.get(i, c);
                    if !b.is_zero() {
                        *out = &*out + &(coeff * b);
                    }
                }
            }
            vectors.push(v);
        }
        Subspace::from_span(self.field, self.ambient, &vectors)
    }

    /// dim(U / W) for nested subspaces W subseteq U.
    pub fn quotient_dim(&self, inner: &Subspace) -> Result<usize> {
        self.check_compatible(inner)?;
        if !inner.is_contained_in(self)? {
            return Err(Error::NotNested);
        }
        Ok(self.dim() - inner.dim())
    }
}

/// The kernel {x : A x = 0} in canonical form; dim = cols(A) - rank(A).
pub fn kernel_basis(a: &Matrix) -> Subspace {
    let n = a.cols();
    let field = a.field();
    let r = a.rref();
    let pivot_set: Vec<Option<usize>> = {
        let mut map = vec![None; n];
        for (row, &col) in r.pivots.iter().enumerate() {
            map[col] = Some(row);
        }
        map
    };
    let mut vectors = Vec::with_capacity(n - r.rank);
    for free in 0..n {
        if pivot_set[free].is_some() {
            continue;
        }
        let mut v = vec![field.zero(); n];
        v[free] = field.one();
        for (col, row) in pivot_set.iter().enumerate() {
            if let Some(row) = row {
                v[col] = -r.reduced.get(*row, free);
            }
        }
        vectors.push(v);
    }
    Subspace::from_span(field, n, &vectors).expect("kernel vectors have ambient length")
}

/// The preimage {x : A x in W}; contains ker A and is monotone in W.
pub fn preimage(a: &Matrix, w: &Subspace) -> Result<Subspace> {
    if w.ambient() != a.rows() {
        return Err(Error::AmbientMismatch {
            left: a.rows(),
            right: w.ambient(),
        });
    }
    if w.field() != a.field() {
        return Err(Error::FieldMismatch {
            left: a.field(),
            right: w.field(),
        });
    }
    if w.is_zero() {
        return Ok(kernel_basis(a));
    }
    // A x = W y has a solution y exactly when x is in the preimage, so take
    // the x-block of ker [A | -W].
    let stacked = a.hstack(&w.basis().neg())?;
    let rel = kernel_basis(&stacked);
    let n = a.cols();
    let vectors: Vec<Vec<Scalar>> = (0..rel.dim())
        .map(|j| rel.basis().column(j)[..n].to_vec())
        .collect();
    Subspace::from_span(a.field(), n, &vectors)
}
