//! Constructive chain transfer for rank-one perturbations.
//!
//! Given total operators S, T with rank(S - T) = 1 and chain tops of T whose
//! classes are independent in ker T^{n+1} / ker T^n, this builds vectors in
//! ker S^{n+1} whose classes stay independent modulo ker S^n. The membership
//! corrections use the codimension-one structure of M = ker(S - T): a single
//! linear functional (any nonzero row of S - T) measures the defect of
//! membership in M, so every correction coefficient is one exact division.
//!
//! When every chain vector already lies in M the chains of T are chains of S
//! verbatim and are returned unchanged; otherwise the construction branches
//! on how deep the first defect sits (at the top, one below it, or lower).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jordan::independent_mod;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::subspace::{kernel_basis, preimage, Subspace};

/// Which branch of the construction ran.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConstructCase {
    /// All chain vectors lie in M; the chains transfer verbatim.
    Mchain,
    /// First defect at the top level (h = n).
    CaseI,
    /// First defect one below the top (h = n - 1).
    CaseII,
    /// First defect at depth h <= n - 2.
    CaseIII,
}

/// Machine-checked evidence for the output classes.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    /// Every output z satisfies S^{n+1} z = 0.
    pub outputs_in_kernel: bool,
    /// The images S^n z are linearly independent, hence the classes
    /// z + ker S^n are independent.
    pub images_independent: bool,
    /// Quotient dimension of ker S^{n+1} over ker S^n, for context.
    pub quotient_dim_s: usize,
}

impl Certificate {
    pub fn verified(&self) -> bool {
        self.outputs_in_kernel && self.images_independent
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstructOutcome {
    pub case: ConstructCase,
    pub n: usize,
    /// Depth of the first membership defect; absent in the Mchain case.
    pub h: Option<usize>,
    /// Original index of the chain swapped into the pivot slot.
    pub pivot_index: Option<usize>,
    pub inputs: usize,
    pub zs: Vec<Vec<Scalar>>,
    pub certificate: Certificate,
}

/// Evaluate the membership functional: x is in M exactly when phi(x) = 0.
fn defect(phi: &[Scalar], x: &[Scalar]) -> Scalar {
    let field = phi[0].field();
    let mut acc = field.zero();
    for (c, v) in phi.iter().zip(x) {
        if !c.is_zero() && !v.is_zero() {
            acc = &acc + &(c * v);
        }
    }
    acc
}

fn combine(x: &[Scalar], alpha: &Scalar, pivot: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(pivot).map(|(a, b)| a - &(alpha * b)).collect()
}

/// Transfer `tops.len()` independent chain classes of T at `lambda` into
/// `tops.len() - 1` certified classes of S (all of them in the Mchain case).
pub fn proof_construct_rank_one(
    s: &Matrix,
    t: &Matrix,
    lambda: &Scalar,
    n: usize,
    tops: &[Vec<Scalar>],
) -> Result<ConstructOutcome> {
    let diff = s.sub(t)?;
    if !diff.is_square() {
        return Err(Error::NotSquare {
            rows: diff.rows(),
            cols: diff.cols(),
        });
    }
    let rank = diff.rank();
    if rank != 1 {
        return Err(Error::RankNotOne { actual: rank });
    }
    let m_dim = s.rows();
    let field = s.field();
    let shift = Matrix::identity(field, m_dim).scale(lambda);
    let bs = s.sub(&shift).expect("same shape");
    let bt = t.sub(&shift).expect("same shape");

    // M = ker(S - T) has codimension one, so membership in M is the vanishing
    // of a single functional: any nonzero row of the difference.
    let phi_row = (0..m_dim)
        .find(|&i| (0..m_dim).any(|j| !diff.get(i, j).is_zero()))
        .expect("rank one difference has a nonzero row");
    let phi: Vec<Scalar> = (0..m_dim).map(|j| diff.get(phi_row, j).clone()).collect();

    // Kernel powers of T up to n+1 for input validation.
    let mut kt = Subspace::zero(field, m_dim);
    let mut kt_chain = vec![kt.clone()];
    for _ in 0..=n {
        kt = preimage(&bt, &kt).expect("ambient ok");
        kt_chain.push(kt.clone());
    }
    for (i, top) in tops.iter().enumerate() {
        if top.len() != m_dim {
            return Err(Error::AmbientMismatch {
                left: m_dim,
                right: top.len(),
            });
        }
        if !kt_chain[n + 1].contains(top).expect("ambient ok") {
            return Err(Error::TopOutsideKernel { index: i });
        }
    }
    if !independent_mod(&kt_chain[n], tops) {
        return Err(Error::DependentClasses);
    }

    // Chains of T downward from each top: chains[k][j] = T^{n-j} top_k.
    let mut chains: Vec<Vec<Vec<Scalar>>> = Vec::with_capacity(tops.len());
    for top in tops {
        let mut chain = vec![top.clone()];
        for _ in 0..n {
            let down = bt.mul_vec(chain.last().unwrap()).expect("ambient ok");
            chain.push(down);
        }
        chain.reverse(); // chain[j] = T^{n-j} top
        chains.push(chain);
    }

    let in_m = |x: &[Scalar]| defect(&phi, x).is_zero();

    // First level carrying a membership defect.
    let h = (0..=n).find(|&j| chains.iter().any(|c| !in_m(&c[j])));
    let Some(h) = h else {
        // Every vector lies in M: the chains are chains of S verbatim.
        let zs: Vec<Vec<Scalar>> = tops.to_vec();
        let certificate = certify(&bs, n, &zs);
        return Ok(ConstructOutcome {
            case: ConstructCase::Mchain,
            n,
            h: None,
            pivot_index: None,
            inputs: tops.len(),
            zs,
            certificate,
        });
    };

    // Deterministic pivot: the first chain with a defect at level h, swapped
    // to the last slot.
    let pivot_index = chains
        .iter()
        .position(|c| !in_m(&c[h]))
        .expect("h was chosen as a defect level");
    let last = chains.len() - 1;
    chains.swap(pivot_index, last);
    let pivot = chains[last].clone();
    let phi_pivot = defect(&phi, &pivot[h]);
    debug_assert!(!phi_pivot.is_zero());

    let case = if h == n {
        ConstructCase::CaseI
    } else if h + 1 == n {
        ConstructCase::CaseII
    } else {
        ConstructCase::CaseIII
    };

    let mut zs = Vec::with_capacity(chains.len() - 1);
    for chain in &chains[..last] {
        let z = if h == n {
            // Correct the tops directly against the pivot top.
            let alpha = &defect(&phi, &chain[n]) / &phi_pivot;
            combine(&chain[n], &alpha, &pivot[n])
        } else {
            // alphas[j - h] is the correction applied at depth j.
            let alpha_h = &defect(&phi, &chain[h]) / &phi_pivot;
            debug_assert!(in_m(&combine(&chain[h], &alpha_h, &pivot[h])));
            let mut alphas = vec![alpha_h.clone()];
            let mut w = combine(&chain[h + 1], &alpha_h, &pivot[h + 1]);
            for j in h + 1..n {
                let alpha_j = &defect(&phi, &w) / &phi_pivot;
                debug_assert!(in_m(&combine(&w, &alpha_j, &pivot[h])));
                alphas.push(alpha_j);
                // w_{j+1} = x_{j+1} - sum_i alpha_{h+i} pivot_{j-i+1}.
                let mut next = chain[j + 1].clone();
                for (i, alpha) in alphas.iter().enumerate() {
                    if alpha.is_zero() {
                        continue;
                    }
                    next = combine(&next, alpha, &pivot[j - i + 1]);
                }
                w = next;
            }
            let alpha_n = &defect(&phi, &w) / &phi_pivot;
            combine(&w, &alpha_n, &pivot[h])
        };
        debug_assert!(in_m(&z), "constructed vector must land in M");
        debug_assert!(
            kt_chain[n + 1].contains(&z).expect("ambient ok"),
            "constructed vector stays in ker T^{{n+1}}"
        );
        zs.push(z);
    }

    let certificate = certify(&bs, n, &zs);
    Ok(ConstructOutcome {
        case,
        n,
        h: Some(h),
        pivot_index: Some(pivot_index),
        inputs: tops.len(),
        zs,
        certificate,
    })
}

/// Direct verification: S^{n+1} z = 0 for every output, and the images S^n z
/// are linearly independent.
fn certify(bs: &Matrix, n: usize, zs: &[Vec<Scalar>]) -> Certificate {
    let field = bs.field();
    let m_dim = bs.rows();
    let pow_n = bs.pow(n).expect("square");
    let pow_n1 = pow_n.mul(bs).expect("square");
    let outputs_in_kernel = zs.iter().all(|z| {
        pow_n1
            .mul_vec(z)
            .expect("ambient ok")
            .iter()
            .all(Scalar::is_zero)
    });
    let images: Vec<Vec<Scalar>> = zs
        .iter()
        .map(|z| pow_n.mul_vec(z).expect("ambient ok"))
        .collect();
    let images_independent = if images.is_empty() {
        true
    } else {
        let mat = Matrix::from_columns(field, m_dim, &images).expect("ambient ok");
        mat.rank() == images.len()
    };
    let ks_n = kernel_basis(&pow_n);
    let ks_n1 = kernel_basis(&pow_n1);
    Certificate {
        outputs_in_kernel,
        images_independent,
        quotient_dim_s: ks_n1.dim() - ks_n.dim(),
    }
}
