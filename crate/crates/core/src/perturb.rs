//! Finite-rank perturbation models: factored rank-k perturbations, the common
//! subspace on which two operators agree, restriction chains of partial
//! operators, and the explicit example families with known sharp behaviour.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jordan::{weyr, PartialOperator};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};
use crate::subspace::Subspace;

/// A factored perturbation T = S + U V with rank(U V) <= k. The nominal
/// factor width is recorded, but every bound uses rank(S - T) instead.
#[derive(Debug, Clone)]
pub struct PerturbationSpec {
    pub rank_bound: usize,
    pub left: Matrix,  // m x k
    pub right: Matrix, // k x m
    pub seed: Option<u64>,
    pub entry_bound: i64,
}

impl PerturbationSpec {
    /// The perturbation matrix U V.
    pub fn perturbation(&self) -> Matrix {
        self.left.mul(&self.right).expect("factor shapes agree")
    }

    pub fn apply_to(&self, s: &Matrix) -> Result<Matrix> {
        s.add(&self.perturbation())
    }

    /// rank(U V); at most the factor width.
    pub fn effective_rank(&self) -> usize {
        self.perturbation().rank()
    }
}

/// Draw U (m x k) and V (k x m) with uniform integer entries in [-bound,
/// bound] from a seeded deterministic generator. Equal seeds give equal
/// specs.
pub fn random_perturbation(
    field: Field,
    m: usize,
    k: usize,
    seed: u64,
    bound: i64,
) -> PerturbationSpec {
    assert!(k <= m, "rank bound above dimension");
    assert!(bound >= 1, "entry bound must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |rows: usize, cols: usize| {
        Matrix::from_fn(field, rows, cols, |_, _| {
            field.from_i64(rng.random_range(-bound..=bound))
        })
    };
    let left = draw(m, k);
    let right = draw(k, m);
    PerturbationSpec {
        rank_bound: k,
        left,
        right,
        seed: Some(seed),
        entry_bound: bound,
    }
}

/// The maximal common subspace of two total operators, with completions of
/// its basis to the whole space.
#[derive(Debug, Clone)]
pub struct CommonDomainModel {
    /// M = ker(S - T): the largest subspace on which S and T agree.
    pub common: Subspace,
    /// Standard basis vectors extending M to K^m, chosen greedily leftmost.
    pub completions_s: Vec<Vec<Scalar>>,
    /// Completions for T; offset into M so that the two completion spans
    /// intersect trivially whenever dimensions permit.
    pub completions_t: Vec<Vec<Scalar>>,
    pub codim_s: usize,
    pub codim_t: usize,
    /// Whether span(completions_s) cap span(completions_t) = {0} holds. This
    /// is impossible when codim M exceeds dim M, and is then reported false.
    pub normalized: bool,
}

/// Extract the common-subspace model for total operators: M = ker(S - T),
/// codimension rank(S - T) on both sides.
pub fn common_subspace(s: &Matrix, t: &Matrix) -> Result<CommonDomainModel> {
    let diff = s.sub(t)?;
    if !diff.is_square() {
        return Err(Error::NotSquare {
            rows: diff.rows(),
            cols: diff.cols(),
        });
    }
    let m = diff.rows();
    let common = crate::subspace::kernel_basis(&diff);
    let k = m - common.dim();
    let completions_s = greedy_standard_completions(&common, k)?;
    // Offsetting each completion by a distinct basis vector of M keeps the
    // two transversal spans disjoint; possible only while k <= dim M.
    let (completions_t, normalized) = if k == 0 {
        (Vec::new(), true)
    } else if k <= common.dim() {
        let mut out = Vec::with_capacity(k);
        for (i, x) in completions_s.iter().enumerate() {
            let b = common.basis().column(i);
            let y: Vec<Scalar> = x.iter().zip(&b).map(|(a, w)| a + w).collect();
            out.push(y);
        }
        (out, true)
    } else {
        (completions_s.clone(), false)
    };
    Ok(CommonDomainModel {
        common,
        completions_s,
        completions_t,
        codim_s: k,
        codim_t: k,
        normalized,
    })
}

/// Standard basis vectors e_i extending `base` to the full space, leftmost
/// index first.
fn greedy_standard_completions(base: &Subspace, count: usize) -> Result<Vec<Vec<Scalar>>> {
    let m = base.ambient();
    let field = base.field();
    let mut chosen: Vec<Vec<Scalar>> = Vec::with_capacity(count);
    let mut span = base.clone();
    for i in 0..m {
        if chosen.len() == count {
            break;
        }
        let mut e = vec![field.zero(); m];
        e[i] = field.one();
        if span.contains(&e)? {
            continue;
        }
        span = span.sum(&Subspace::from_span(field, m, &[e.clone()])?)?;
        chosen.push(e);
    }
    debug_assert_eq!(chosen.len(), count, "completions span the complement");
    Ok(chosen)
}

/// The restrictions S_p of A to M + span{x_1, ..., x_p} for p = 1..k.
/// Completions must be independent modulo M.
pub fn restriction_chain(
    a: &Matrix,
    m_subspace: &Subspace,
    completions: &[Vec<Scalar>],
) -> Result<Vec<PartialOperator>> {
    let field = a.field();
    let ambient = a.rows();
    let mut domain = m_subspace.clone();
    let mut chain = Vec::with_capacity(completions.len());
    for (i, x) in completions.iter().enumerate() {
        if domain.contains(x)? {
            return Err(Error::DependentCompletions { index: i });
        }
        domain = domain.sum(&Subspace::from_span(
            field,
            ambient,
            std::slice::from_ref(x),
        )?)?;
        chain.push(PartialOperator::new(a.clone(), domain.clone())?);
    }
    Ok(chain)
}

/// One consecutive-pair record of the restriction interlacing check: the
/// quotient dimension of the smaller restriction is squeezed between
/// q_n(S_p) - 1 and q_n(S_p).
#[derive(Debug, Clone, Serialize)]
pub struct InterlacingRecord {
    pub pair: usize,
    pub n: usize,
    pub q_smaller: usize,
    pub q_larger: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct InterlacingReport {
    pub lambda: Scalar,
    pub n_cap: usize,
    pub records: Vec<InterlacingRecord>,
    pub violations: usize,
}

impl InterlacingReport {
    pub fn ok(&self) -> bool {
        self.violations == 0
    }
}

/// Verify, for each consecutive pair (S_{p-1}, S_p) of a restriction chain
/// and each n up to the cap,
/// q_n(S_p) - 1 <= q_n(S_{p-1}) <= q_n(S_p).
pub fn check_restriction_interlacing(
    chain: &[PartialOperator],
    lambda: &Scalar,
    n_cap: usize,
) -> InterlacingReport {
    let mut records = Vec::new();
    let mut violations = 0;
    for pair in 1..chain.len() {
        let smaller = &chain[pair - 1];
        let larger = &chain[pair];
        let w_small = weyr(smaller, lambda, n_cap + 1);
        let w_large = weyr(larger, lambda, n_cap + 1);
        for n in 0..n_cap {
            let q_smaller = w_small.increment(n);
            let q_larger = w_large.increment(n);
            let pass = q_larger.saturating_sub(1) <= q_smaller && q_smaller <= q_larger;
            if !pass {
                violations += 1;
            }
            records.push(InterlacingRecord {
                pair,
                n,
                q_smaller,
                q_larger,
                pass,
            });
        }
    }
    InterlacingReport {
        lambda: lambda.clone(),
        n_cap,
        records,
        violations,
    }
}

/// The m x m upper shift block: e_{j+1} -> e_j, nilpotent with one chain of
/// length m.
pub fn upper_shift_block(field: Field, m: usize) -> Matrix {
    Matrix::from_fn(field, m, m, |i, j| {
        if j == i + 1 {
            field.one()
        } else {
            field.zero()
        }
    })
}

/// The m x m cyclic companion block: the upper shift plus a 1 in the bottom
/// left corner; invertible, kernel powers all trivial.
pub fn cyclic_block(field: Field, m: usize) -> Matrix {
    Matrix::from_fn(field, m, m, |i, j| {
        if j == i + 1 || (i == m - 1 && j == 0) {
            field.one()
        } else {
            field.zero()
        }
    })
}

/// The sharp pair: k copies of the upper shift against k copies of the
/// cyclic block. The difference has rank exactly k and the quotient gap
/// attains the bound at every level below m.
pub fn sharp_example(field: Field, m: usize, k: usize) -> (Matrix, Matrix) {
    assert!(m >= 2, "blocks need dimension at least 2");
    assert!(k >= 1, "at least one block");
    let a_blocks: Vec<Matrix> = (0..k).map(|_| upper_shift_block(field, m)).collect();
    let b_blocks: Vec<Matrix> = (0..k).map(|_| cyclic_block(field, m)).collect();
    (Matrix::direct_sum(&a_blocks), Matrix::direct_sum(&b_blocks))
}

/// Finite 2N x 2N truncation of the paired shifts on l^2 x l^2:
/// S(x, y) = ((y_1, x_1, ..., x_{N-1}), (y_2, ..., y_N, 0)) and T replaces
/// the leading y_1 with 0. The difference has rank one for every N; the
/// kernel powers of T grow with the truncation size while those of S stay
/// small (boundary effects only).
pub fn truncated_shift_example(field: Field, n: usize) -> (Matrix, Matrix) {
    assert!(n >= 2, "truncation needs at least two coordinates");
    let dim = 2 * n;
    let build = |with_coupling: bool| {
        Matrix::from_fn(field, dim, dim, |i, j| {
            let hit = if i == 0 {
                // First x-output: y_1 for S, dropped for T.
                with_coupling && j == n
            } else if i < n {
                // x_{i+1} <- x_i.
                j == i - 1
            } else if i < dim - 1 {
                // y_i <- y_{i+1}.
                j == i + 1
            } else {
                false
            };
            if hit {
                field.one()
            } else {
                field.zero()
            }
        })
    };
    (build(true), build(false))
}
