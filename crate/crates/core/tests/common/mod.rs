//! Brute-force oracles shared by the integration tests. Everything here is
//! deliberately independent of the elimination and preimage machinery it
//! cross-checks: ranks come from minor expansion, characteristic polynomials
//! from cofactor recursion, and GF(2) subspaces from exhaustive enumeration.

// Each integration test target compiles this module separately and uses a
// different subset of it.
#![allow(dead_code)]

use weyr_core::{Field, Matrix, Scalar};

/// Determinant by cofactor expansion along the first row. Exponential; only
/// for small oracle matrices.
pub fn cofactor_det(a: &Matrix) -> Scalar {
    let n = a.rows();
    assert_eq!(n, a.cols());
    let field = a.field();
    if n == 0 {
        return field.one();
    }
    if n == 1 {
        return a.get(0, 0).clone();
    }
    let mut acc = field.zero();
    for j in 0..n {
        let c = a.get(0, j);
        if c.is_zero() {
            continue;
        }
        let minor = Matrix::from_fn(field, n - 1, n - 1, |r, s| {
            a.get(r + 1, if s < j { s } else { s + 1 }).clone()
        });
        let term = c * &cofactor_det(&minor);
        acc = if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// Rank as the largest r with a nonsingular r x r submatrix, determinants by
/// minor expansion.
pub fn minor_rank(a: &Matrix) -> usize {
    let rows = a.rows();
    let cols = a.cols();
    let field = a.field();
    for r in (1..=rows.min(cols)).rev() {
        for row_set in subsets(rows, r) {
            for col_set in subsets(cols, r) {
                let sub =
                    Matrix::from_fn(field, r, r, |i, j| a.get(row_set[i], col_set[j]).clone());
                if !cofactor_det(&sub).is_zero() {
                    return r;
                }
            }
        }
    }
    0
}

/// A nonzero r x r minor on the given rows/cols, if one exists.
pub fn witness_minor(a: &Matrix, r: usize) -> Option<Scalar> {
    let field = a.field();
    for row_set in subsets(a.rows(), r) {
        for col_set in subsets(a.cols(), r) {
            let sub = Matrix::from_fn(field, r, r, |i, j| a.get(row_set[i], col_set[j]).clone());
            let det = cofactor_det(&sub);
            if !det.is_zero() {
                return Some(det);
            }
        }
    }
    None
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(r);
    fn rec(start: usize, n: usize, r: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == r {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, r, current, out);
            current.pop();
        }
    }
    rec(0, n, r, &mut current, &mut out);
    out
}

/// Characteristic polynomial det(lambda I - A) over Q by symbolic cofactor
/// recursion on polynomials with rational coefficients (ascending).
pub fn cofactor_char_poly(a: &Matrix) -> Vec<Scalar> {
    assert_eq!(a.field(), Field::Q);
    let n = a.rows();
    // Entries of lambda I - A as degree <= 1 polynomials.
    let entries: Vec<Vec<Vec<Scalar>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c0 = -a.get(i, j);
                    let c1 = if i == j {
                        Field::Q.one()
                    } else {
                        Field::Q.zero()
                    };
                    vec![c0, c1]
                })
                .collect()
        })
        .collect();
    poly_det(&entries)
}

fn poly_det(m: &[Vec<Vec<Scalar>>]) -> Vec<Scalar> {
    let n = m.len();
    if n == 0 {
        return vec![Field::Q.one()];
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = vec![Field::Q.zero()];
    for j in 0..n {
        let minor: Vec<Vec<Vec<Scalar>>> = (1..n)
            .map(|r| {
                (0..n)
                    .filter(|&s| s != j)
                    .map(|s| m[r][s].clone())
                    .collect()
            })
            .collect();
        let term = poly_mul(&m[0][j], &poly_det(&minor));
        acc = if j % 2 == 0 {
            poly_add(&acc, &term)
        } else {
            poly_sub(&acc, &term)
        };
    }
    acc
}

pub fn poly_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let field = Field::Q;
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(|| field.zero());
            let y = b.get(i).cloned().unwrap_or_else(|| field.zero());
            &x + &y
        })
        .collect()
}

pub fn poly_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let neg: Vec<Scalar> = b.iter().map(|x| -x).collect();
    poly_add(a, &neg)
}

pub fn poly_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let field = Field::Q;
    if a.is_empty() || b.is_empty() {
        return vec![field.zero()];
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Every vector of GF(2)^m, for exhaustive checks.
pub fn all_gf2_vectors(m: usize) -> Vec<Vec<Scalar>> {
    let field = Field::Gf(2);
    (0..(1u32 << m))
        .map(|bits| {
            (0..m)
                .map(|i| field.from_i64(((bits >> i) & 1) as i64))
                .collect()
        })
        .collect()
}

/// Deterministic small integer matrix from a seed, entries in [-bound, bound].
pub fn seeded_matrix(field: Field, rows: usize, cols: usize, seed: u64, bound: i64) -> Matrix {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    Matrix::from_fn(field, rows, cols, |_, _| {
        field.from_i64(rng.random_range(-bound..=bound))
    })
}

/// A seeded invertible matrix over Q, by rejection.
pub fn seeded_invertible(m: usize, seed: u64, bound: i64) -> Matrix {
    let mut s = seed;
    loop {
        let cand = seeded_matrix(Field::Q, m, m, s, bound);
        if cand.rank() == m {
            return cand;
        }
        s = s.wrapping_add(0x9e37_79b9_7f4a_7c15);
    }
}
