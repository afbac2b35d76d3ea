//! Jordan structure of total and domain-restricted operators: kernel powers,
//! Weyr and Segre characteristics, explicit Jordan chains and their verifier.
//!
//! A partial operator is a square matrix together with a domain subspace; a
//! kernel power of a partial operator requires every intermediate iterate to
//! stay inside the domain, which is exactly the recursion
//! K_1 = D cap ker(A - lambda), K_{j+1} = D cap (A - lambda)^{-1}(K_j).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{format_vector, Matrix};
use crate::scalar::Scalar;
use crate::subspace::{preimage, Subspace};

/// A matrix action restricted to a domain subspace. A total operator is the
/// special case where the domain is all of K^m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialOperator {
    matrix: Matrix,
    domain: Subspace,
}

impl PartialOperator {
    pub fn total(matrix: Matrix) -> Self {
        assert!(matrix.is_square(), "operators act on K^m");
        let domain = Subspace::full(matrix.field(), matrix.rows());
        PartialOperator { matrix, domain }
    }

    pub fn new(matrix: Matrix, domain: Subspace) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if domain.ambient() != matrix.rows() {
            return Err(Error::AmbientMismatch {
                left: matrix.rows(),
                right: domain.ambient(),
            });
        }
        if domain.field() != matrix.field() {
            return Err(Error::FieldMismatch {
                left: matrix.field(),
                right: domain.field(),
            });
        }
        Ok(PartialOperator { matrix, domain })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn domain(&self) -> &Subspace {
        &self.domain
    }

    pub fn ambient(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_total(&self) -> bool {
        self.domain.dim() == self.ambient()
    }

    /// Apply the operator; defined only on the domain.
    pub fn apply(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if !self.domain.contains(x)? {
            return Err(Error::DomainViolation {
                vector: format_vector(x),
            });
        }
        self.matrix.mul_vec(x)
    }

    fn shifted(&self, lambda: &Scalar) -> Matrix {
        shifted_matrix(&self.matrix, lambda)
    }
}

fn shifted_matrix(a: &Matrix, lambda: &Scalar) -> Matrix {
    assert_eq!(a.field(), lambda.field(), "shift in the matrix field");
    a.sub(&Matrix::identity(a.field(), a.rows()).scale(lambda))
        .expect("same shape")
}

/// ker (P - lambda)^n in the partial-operator sense. For a total operator
/// this is the nullspace of (A - lambda I)^n.
pub fn kernel_power(op: &PartialOperator, lambda: &Scalar, n: usize) -> Subspace {
    let b = op.shifted(lambda);
    let mut k = Subspace::zero(op.matrix.field(), op.ambient());
    for _ in 0..n {
        let pre = preimage(&b, &k).expect("compatible ambient dims");
        let next = op.domain.intersect(&pre).expect("compatible ambient dims");
        if next == k {
            // The recursion is memoryless, so a fixed point is final.
            return next;
        }
        k = next;
    }
    k
}

/// The sequence of kernel-power dimensions w_n = dim ker (P - lambda)^n,
/// n = 1, 2, ...; for total operators it is non-decreasing with concave
/// increments and becomes constant after at most m steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeyrCharacteristic {
    pub lambda: Scalar,
    pub dims: Vec<usize>,
    pub stabilized: bool,
}

impl WeyrCharacteristic {
    /// w_n with w_0 = 0; indices past the computed range return the
    /// stabilized value.
    pub fn dim_at(&self, n: usize) -> usize {
        if n == 0 {
            return 0;
        }
        if n <= self.dims.len() {
            self.dims[n - 1]
        } else {
            debug_assert!(self.stabilized, "dim_at past an unstabilized sequence");
            *self.dims.last().unwrap_or(&0)
        }
    }

    /// Quotient dimensions q_n = w_{n+1} - w_n for n = 0, 1, ...
    pub fn increment(&self, n: usize) -> usize {
        self.dim_at(n + 1) - self.dim_at(n)
    }

    /// Smallest p with w_p = w_{p+1} (the maximal chain length).
    pub fn stabilization_index(&self) -> Option<usize> {
        if !self.stabilized {
            return None;
        }
        if self.dims.is_empty() || self.dims[0] == 0 {
            return Some(0);
        }
        let mut p = self.dims.len();
        while p >= 2 && self.dims[p - 1] == self.dims[p - 2] {
            p -= 1;
        }
        Some(p)
    }
}

/// Kernel-power dimensions via the preimage iteration, stopping at
/// stabilization or after `n_max` steps.
pub fn weyr(op: &PartialOperator, lambda: &Scalar, n_max: usize) -> WeyrCharacteristic {
    assert!(n_max >= 1, "weyr needs at least one power");
    let b = op.shifted(lambda);
    let mut dims = Vec::new();
    let mut k = Subspace::zero(op.matrix.field(), op.ambient());
    let mut stabilized = false;
    for _ in 1..=n_max {
        let pre = preimage(&b, &k).expect("compatible ambient dims");
        let next = op.domain.intersect(&pre).expect("compatible ambient dims");
        if next == k {
            stabilized = true;
            break;
        }
        dims.push(next.dim());
        k = next;
    }
    if !stabilized && dims.len() == n_max {
        // One cheap extra step decides stabilization at the cap.
        let pre = preimage(&b, &k).expect("compatible ambient dims");
        let next = op.domain.intersect(&pre).expect("compatible ambient dims");
        stabilized = next == k;
    }
    if dims.is_empty() {
        dims.push(k.dim());
    }
    WeyrCharacteristic {
        lambda: lambda.clone(),
        dims,
        stabilized,
    }
}

/// Independent cross-check for total operators: w_n = m - rank((A-lambda)^n)
/// by explicit matrix powers, no subspace machinery involved.
pub fn weyr_oracle(a: &Matrix, lambda: &Scalar, n_max: usize) -> WeyrCharacteristic {
    assert!(a.is_square(), "total operators only");
    assert!(n_max >= 1);
    let m = a.rows();
    let b = shifted_matrix(a, lambda);
    let mut dims = Vec::new();
    let mut power = Matrix::identity(a.field(), m);
    let mut stabilized = false;
    for _ in 1..=n_max {
        power = power.mul(&b).expect("square product");
        let w = m - power.rank();
        if dims.last() == Some(&w) {
            stabilized = true;
            break;
        }
        dims.push(w);
    }
    if !stabilized {
        let next = m - power.mul(&b).expect("square product").rank();
        stabilized = dims.last() == Some(&next);
    }
    WeyrCharacteristic {
        lambda: lambda.clone(),
        dims,
        stabilized,
    }
}

/// The partition of Jordan chain lengths at lambda; conjugate to the Weyr
/// increment sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SegreCharacteristic {
    pub lambda: Scalar,
    pub parts: Vec<usize>,
}

impl SegreCharacteristic {
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }
}

/// Conjugate the Weyr increments of `op` at `lambda` into chain lengths.
///
/// The kernel-power sequence must stabilize within the ambient dimension
/// (guaranteed for total operators); otherwise the result would be a
/// truncation and an error is returned.
pub fn segre(op: &PartialOperator, lambda: &Scalar) -> Result<SegreCharacteristic> {
    let cap = op.ambient().max(1);
    let w = weyr(op, lambda, cap);
    if !w.stabilized {
        return Err(Error::Truncated { cap });
    }
    Ok(SegreCharacteristic {
        lambda: lambda.clone(),
        parts: conjugate_increments(&w),
    })
}

fn conjugate_increments(w: &WeyrCharacteristic) -> Vec<usize> {
    let steps = w.dims.len();
    let first = w.increment(0);
    let mut parts = Vec::new();
    for j in 1..=first {
        let count = (0..steps).filter(|&n| w.increment(n) >= j).count();
        if count > 0 {
            parts.push(count);
        }
    }
    parts
}

/// A maximal independent set of Jordan chains at one eigenvalue. Each chain
/// is ordered from the kernel vector x_0 up to the top.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JordanChainSet {
    pub lambda: Scalar,
    pub chains: Vec<Vec<Vec<Scalar>>>,
}

impl JordanChainSet {
    /// Chain lengths, longest first.
    pub fn lengths(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.chains.iter().map(Vec::len).collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Vectors at position n (zero-based) of every chain long enough to have
    /// one; their classes span ker^{n+1} modulo ker^n.
    pub fn level_vectors(&self, n: usize) -> Vec<Vec<Scalar>> {
        self.chains
            .iter()
            .filter(|c| c.len() > n)
            .map(|c| c[n].clone())
            .collect()
    }
}

/// Extract a maximal set of Jordan chains of a total operator at `lambda`.
///
/// Works down from the top kernel power: at each level the vectors carried
/// down from longer chains are completed to a transversal of
/// ker^j / ker^{j-1} using the canonical basis columns of ker^j in order
/// (leftmost pivot first), which makes the output deterministic.
pub fn jordan_chains(a: &Matrix, lambda: &Scalar) -> JordanChainSet {
    assert!(a.is_square(), "total operators only");
    let m = a.rows();
    let field = a.field();
    let b = shifted_matrix(a, lambda);

    // Kernel powers up to stabilization.
    let mut powers: Vec<Subspace> = vec![Subspace::zero(field, m)];
    loop {
        let prev = powers.last().unwrap();
        let next = preimage(&b, prev).expect("compatible ambient dims");
        if &next == prev {
            break;
        }
        powers.push(next);
    }
    let q = powers.len() - 1;
    if q == 0 {
        return JordanChainSet {
            lambda: lambda.clone(),
            chains: Vec::new(),
        };
    }

    let mut chains: Vec<Vec<Vec<Scalar>>> = Vec::new();
    // Tops living at the current level j (dimension within ker^j mod
    // ker^{j-1}), paired with the index of the chain they extend.
    let mut carried: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for j in (1..=q).rev() {
        let below = &powers[j - 1];
        let here = &powers[j];
        // Span of ker^{j-1} plus everything carried down from level j+1.
        let mut spanning: Vec<Vec<Scalar>> = below.basis_vectors();
        let mut next_carried: Vec<(usize, Vec<Scalar>)> = Vec::new();
        for (chain_idx, v) in carried {
            spanning.push(v.clone());
            chains[chain_idx].push(v.clone());
            next_carried.push((chain_idx, v));
        }
        let mut span = Subspace::from_span(field, m, &spanning).expect("ambient ok");
        // New chains of length j start at canonical basis columns of ker^j
        // that are independent of the span so far.
        for cand in here.basis_vectors() {
            if span.dim() == here.dim() {
                break;
            }
            if span.contains(&cand).expect("ambient ok") {
                continue;
            }
            spanning.push(cand.clone());
            span = Subspace::from_span(field, m, &spanning).expect("ambient ok");
            chains.push(vec![cand.clone()]);
            next_carried.push((chains.len() - 1, cand));
        }
        debug_assert_eq!(span.dim(), here.dim(), "level completed");
        // Map every top down one level for the next round.
        carried = next_carried
            .into_iter()
            .map(|(idx, v)| (idx, b.mul_vec(&v).expect("ambient ok")))
            .collect();
    }
    // Chains were built top-down; store them kernel-vector-first.
    for chain in &mut chains {
        chain.reverse();
    }
    JordanChainSet {
        lambda: lambda.clone(),
        chains,
    }
}

/// Why a chain set failed verification; carries the witness data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ChainViolation {
    EmptyChain {
        chain: usize,
    },
    DimensionMismatch {
        chain: usize,
        position: usize,
    },
    ZeroVector {
        chain: usize,
        position: usize,
    },
    ChainRelation {
        chain: usize,
        position: usize,
        witness: Vec<Scalar>,
    },
    IndependenceViolated {
        level: usize,
    },
}

impl std::fmt::Display for ChainViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChainViolation::EmptyChain { chain } => write!(f, "chain {chain} is empty"),
            ChainViolation::DimensionMismatch { chain, position } => {
                write!(f, "chain {chain} vector {position} has the wrong dimension")
            }
            ChainViolation::ZeroVector { chain, position } => {
                write!(f, "chain {chain} vector {position} is zero")
            }
            ChainViolation::ChainRelation {
                chain, position, ..
            } => {
                write!(
                    f,
                    "chain relation violated at chain {chain}, position {position}"
                )
            }
            ChainViolation::IndependenceViolated { level } => {
                write!(f, "independence violated at level {level}")
            }
        }
    }
}

/// Outcome of `chain_verify`: diagnostics, not exceptions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainCheck {
    pub ok: bool,
    pub violation: Option<ChainViolation>,
}

impl ChainCheck {
    fn pass() -> Self {
        ChainCheck {
            ok: true,
            violation: None,
        }
    }

    fn fail(violation: ChainViolation) -> Self {
        ChainCheck {
            ok: false,
            violation: Some(violation),
        }
    }
}

/// Check every chain relation and the independence of level-n tops modulo
/// ker (A - lambda)^n for every n; reports the first violated condition.
pub fn chain_verify(a: &Matrix, lambda: &Scalar, set: &JordanChainSet) -> ChainCheck {
    let m = a.rows();
    let b = shifted_matrix(a, lambda);
    for (ci, chain) in set.chains.iter().enumerate() {
        if chain.is_empty() {
            return ChainCheck::fail(ChainViolation::EmptyChain { chain: ci });
        }
        for (pi, v) in chain.iter().enumerate() {
            if v.len() != m {
                return ChainCheck::fail(ChainViolation::DimensionMismatch {
                    chain: ci,
                    position: pi,
                });
            }
            if v.iter().all(Scalar::is_zero) {
                return ChainCheck::fail(ChainViolation::ZeroVector {
                    chain: ci,
                    position: pi,
                });
            }
            let image = b.mul_vec(v).expect("dimension checked");
            let expected_zero: bool = pi == 0;
            let ok = if expected_zero {
                image.iter().all(Scalar::is_zero)
            } else {
                image == chain[pi - 1]
            };
            if !ok {
                return ChainCheck::fail(ChainViolation::ChainRelation {
                    chain: ci,
                    position: pi,
                    witness: image,
                });
            }
        }
    }
    // Tops of chains of length >= n+1 must be independent modulo ker B^n.
    let max_len = set.chains.iter().map(Vec::len).max().unwrap_or(0);
    let mut kernel_power_n = Subspace::zero(a.field(), m);
    for n in 0..max_len {
        if n > 0 {
            kernel_power_n = preimage(&b, &kernel_power_n).expect("ambient ok");
        }
        let tops: Vec<Vec<Scalar>> = set
            .chains
            .iter()
            .filter(|c| c.len() > n)
            .map(|c| c.last().unwrap().clone())
            .collect();
        if !independent_mod(&kernel_power_n, &tops) {
            return ChainCheck::fail(ChainViolation::IndependenceViolated { level: n });
        }
    }
    ChainCheck::pass()
}

/// True when the classes of `vectors` are linearly independent modulo `sub`.
pub fn independent_mod(sub: &Subspace, vectors: &[Vec<Scalar>]) -> bool {
    if vectors.is_empty() {
        return true;
    }
    let field = sub.field();
    let m = sub.ambient();
    let vec_mat = match Matrix::from_columns(field, m, vectors) {
        Ok(v) => v,
        Err(_) => return false,
    };
    let stacked = sub.basis().hstack(&vec_mat).expect("same ambient");
    stacked.rank() == sub.dim() + vectors.len()
}

/// The stabilized kernel power: the span of all Jordan chains at lambda.
pub fn root_subspace(a: &Matrix, lambda: &Scalar) -> Subspace {
    assert!(a.is_square(), "total operators only");
    let b = shifted_matrix(a, lambda);
    let mut k = Subspace::zero(a.field(), a.rows());
    loop {
        let next = preimage(&b, &k).expect("ambient ok");
        if next == k {
            return k;
        }
        k = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn q() -> Field {
        Field::Q
    }

    fn upper_shift(field: Field, m: usize) -> Matrix {
        Matrix::from_fn(field, m, m, |i, j| {
            if j == i + 1 {
                field.one()
            } else {
                field.zero()
            }
        })
    }

    fn cyclic(field: Field, m: usize) -> Matrix {
        Matrix::from_fn(field, m, m, |i, j| {
            if j == i + 1 || (i == m - 1 && j == 0) {
                field.one()
            } else {
                field.zero()
            }
        })
    }

    fn e(field: Field, m: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![field.zero(); m];
        v[i] = field.one();
        v
    }

    #[test]
    fn apply_respects_domain() {
        let f = q();
        let a = upper_shift(f, 3);
        let dom = Subspace::from_span(f, 3, &[e(f, 3, 1), e(f, 3, 2)]).unwrap();
        let op = PartialOperator::new(a, dom).unwrap();
        // e_2 is in the domain and maps to e_1.
        assert_eq!(op.apply(&e(f, 3, 1)).unwrap(), e(f, 3, 0));
        assert!(matches!(
            op.apply(&e(f, 3, 0)),
            Err(Error::DomainViolation { .. })
        ));
    }

    #[test]
    fn total_apply_is_plain_multiplication() {
        let f = q();
        let a = Matrix::from_i64_rows(f, &[&[1, 2], &[3, 4]]);
        let op = PartialOperator::total(a.clone());
        let x = vec![f.from_i64(1), f.from_i64(1)];
        assert_eq!(op.apply(&x).unwrap(), a.mul_vec(&x).unwrap());
    }

    #[test]
    fn shift_kernel_powers_grow_one_axis_at_a_time() {
        let f = q();
        let op = PartialOperator::total(upper_shift(f, 5));
        let zero = f.zero();
        for j in 1..=5 {
            let k = kernel_power(&op, &zero, j);
            let expected =
                Subspace::from_span(f, 5, &(0..j).map(|i| e(f, 5, i)).collect::<Vec<_>>()).unwrap();
            assert_eq!(k, expected);
        }
    }

    #[test]
    fn cyclic_kernel_powers_are_trivial() {
        let f = q();
        let op = PartialOperator::total(cyclic(f, 5));
        let zero = f.zero();
        for j in [1, 3, 7] {
            assert!(kernel_power(&op, &zero, j).is_zero());
        }
    }

    #[test]
    fn zeroth_kernel_power_is_zero_space() {
        let f = q();
        let op = PartialOperator::total(upper_shift(f, 4));
        assert!(kernel_power(&op, &f.zero(), 0).is_zero());
    }

    #[test]
    fn restricted_domain_blocks_kernel_growth() {
        // Upper shift on K^3 with domain span{e_1, e_3}: e_2 is missing, so
        // the kernel chain freezes at span{e_1}.
        let f = q();
        let dom = Subspace::from_span(f, 3, &[e(f, 3, 0), e(f, 3, 2)]).unwrap();
        let op = PartialOperator::new(upper_shift(f, 3), dom).unwrap();
        let zero = f.zero();
        let k1 = kernel_power(&op, &zero, 1);
        let k2 = kernel_power(&op, &zero, 2);
        let expected = Subspace::from_span(f, 3, &[e(f, 3, 0)]).unwrap();
        assert_eq!(k1, expected);
        assert_eq!(k2, expected);
    }

    #[test]
    fn weyr_of_shift_counts_up() {
        let f = q();
        let op = PartialOperator::total(upper_shift(f, 5));
        let w = weyr(&op, &f.zero(), 5);
        assert_eq!(w.dims, vec![1, 2, 3, 4, 5]);
        assert!(w.stabilized);
        assert_eq!(w.stabilization_index(), Some(5));
    }

    #[test]
    fn weyr_of_identity_at_its_eigenvalue() {
        let f = q();
        let op = PartialOperator::total(Matrix::identity(f, 3));
        let w = weyr(&op, &f.one(), 6);
        assert_eq!(w.dims, vec![3]);
        assert!(w.stabilized);
        assert_eq!(w.dim_at(4), 3);
        assert_eq!(w.stabilization_index(), Some(1));
    }

    #[test]
    fn weyr_matches_oracle_on_block_nilpotent() {
        // Blocks of sizes 3, 2, 1: Weyr sequence (3, 5, 6).
        let f = q();
        let a = Matrix::direct_sum(&[upper_shift(f, 3), upper_shift(f, 2), upper_shift(f, 1)]);
        let op = PartialOperator::total(a.clone());
        let w = weyr(&op, &f.zero(), 6);
        assert_eq!(w.dims, vec![3, 5, 6]);
        let o = weyr_oracle(&a, &f.zero(), 6);
        assert_eq!(w.dims, o.dims);
        assert_eq!(w.stabilized, o.stabilized);
    }

    #[test]
    fn segre_conjugates_weyr() {
        let f = q();
        let a = Matrix::direct_sum(&[upper_shift(f, 3), upper_shift(f, 2), upper_shift(f, 1)]);
        let s = segre(&PartialOperator::total(a), &f.zero()).unwrap();
        assert_eq!(s.parts, vec![3, 2, 1]);

        let shift = PartialOperator::total(upper_shift(f, 5));
        assert_eq!(segre(&shift, &f.zero()).unwrap().parts, vec![5]);

        let id = PartialOperator::total(Matrix::identity(f, 3));
        assert!(segre(&id, &f.zero()).unwrap().parts.is_empty());
    }

    #[test]
    fn chains_of_shift_form_the_standard_chain() {
        let f = q();
        let a = upper_shift(f, 4);
        let set = jordan_chains(&a, &f.zero());
        assert_eq!(set.chains.len(), 1);
        let chain = &set.chains[0];
        assert_eq!(chain.len(), 4);
        for (i, v) in chain.iter().enumerate() {
            assert_eq!(v, &e(f, 4, i));
        }
        assert!(chain_verify(&a, &f.zero(), &set).ok);
    }

    #[test]
    fn chains_at_non_eigenvalue_are_empty() {
        let f = q();
        let set = jordan_chains(&Matrix::identity(f, 3), &f.zero());
        assert!(set.chains.is_empty());
        assert!(chain_verify(&Matrix::identity(f, 3), &f.zero(), &set).ok);
    }

    #[test]
    fn chain_verify_detects_broken_relation() {
        let f = q();
        let a = upper_shift(f, 4);
        let mut set = jordan_chains(&a, &f.zero());
        set.chains[0][2] = vec![f.zero(); 4];
        let check = chain_verify(&a, &f.zero(), &set);
        assert!(!check.ok);
        assert!(matches!(
            check.violation,
            Some(ChainViolation::ZeroVector { .. })
        ));

        let mut set = jordan_chains(&a, &f.zero());
        set.chains[0][2] = e(f, 4, 0);
        let check = chain_verify(&a, &f.zero(), &set);
        assert!(matches!(
            check.violation,
            Some(ChainViolation::ChainRelation { .. })
        ));
    }

    #[test]
    fn chain_verify_detects_duplicated_chain() {
        let f = q();
        let a = Matrix::direct_sum(&[upper_shift(f, 2), upper_shift(f, 2)]);
        let mut set = jordan_chains(&a, &f.zero());
        assert_eq!(set.chains.len(), 2);
        set.chains[1] = set.chains[0].clone();
        let check = chain_verify(&a, &f.zero(), &set);
        assert!(matches!(
            check.violation,
            Some(ChainViolation::IndependenceViolated { .. })
        ));
    }

    #[test]
    fn root_subspace_dims() {
        let f = q();
        assert_eq!(root_subspace(&upper_shift(f, 5), &f.zero()).dim(), 5);
        assert!(root_subspace(&cyclic(f, 5), &f.zero()).is_zero());
        let d = Matrix::from_i64_rows(f, &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 7]]);
        let r = root_subspace(&d, &f.zero());
        assert_eq!(r.dim(), 2);
        assert!(r.contains(&e(f, 3, 0)).unwrap());
        assert!(r.contains(&e(f, 3, 1)).unwrap());
    }
}
