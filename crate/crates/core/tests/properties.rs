//! Property-based invariants over randomly generated exact matrices and
//! subspaces, in both coefficient fields.

mod common;

use proptest::prelude::*;

use weyr_core::bounds::check_main_bounds;
use weyr_core::jordan::{
    chain_verify, jordan_chains, kernel_power, root_subspace, segre, weyr, weyr_oracle,
    JordanChainSet, PartialOperator,
};
use weyr_core::perturb::{common_subspace, random_perturbation, restriction_chain};
use weyr_core::{kernel_basis, Field, Matrix, Scalar, Subspace};

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Q), Just(Field::Gf(2)), Just(Field::Gf(5))]
}

fn matrix_strategy(
    rows: impl Strategy<Value = usize> + Clone,
    cols: impl Strategy<Value = usize> + Clone,
) -> impl Strategy<Value = Matrix> {
    (field_strategy(), rows, cols).prop_flat_map(|(field, r, c)| {
        proptest::collection::vec(-4i64..=4, r * c).prop_map(move |entries| {
            Matrix::from_fn(field, r, c, |i, j| field.from_i64(entries[i * c + j]))
        })
    })
}

fn square_strategy(max: usize) -> impl Strategy<Value = Matrix> {
    (field_strategy(), 1usize..=max).prop_flat_map(|(field, m)| {
        proptest::collection::vec(-4i64..=4, m * m).prop_map(move |entries| {
            Matrix::from_fn(field, m, m, |i, j| field.from_i64(entries[i * m + j]))
        })
    })
}

/// A matrix together with extra integer data reused as vectors.
fn vectors_strategy(ambient: usize, count: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-4i64..=4, ambient), count)
}

fn to_vec(field: Field, raw: &[i64]) -> Vec<Scalar> {
    raw.iter().map(|&v| field.from_i64(v)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rref_is_idempotent(a in matrix_strategy(0usize..=6, 0usize..=6)) {
        let first = a.rref();
        let second = first.reduced.rref();
        prop_assert_eq!(&second.reduced, &first.reduced);
        prop_assert_eq!(second.rank, first.rank);
        prop_assert_eq!(second.pivots, first.pivots);
    }

    #[test]
    fn kernel_vectors_annihilate_and_count(a in matrix_strategy(1usize..=6, 1usize..=6)) {
        let k = kernel_basis(&a);
        prop_assert_eq!(a.rank() + k.dim(), a.cols());
        for j in 0..k.dim() {
            let x = k.basis().column(j);
            let image = a.mul_vec(&x).unwrap();
            prop_assert!(image.iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn subspace_lattice_laws(
        a in matrix_strategy(2usize..=8, 1usize..=3),
    ) {
        // Three random subspaces of the same ambient space, from column spans
        // of seeded slices.
        let field = a.field();
        let m = a.rows();
        let u = Subspace::from_column_span(&a);
        let w = Subspace::from_column_span(&a.transpose().rref().reduced.transpose());
        let z = Subspace::zero(field, m);
        let full = Subspace::full(field, m);

        // Commutativity and idempotence.
        prop_assert_eq!(u.sum(&w).unwrap(), w.sum(&u).unwrap());
        prop_assert_eq!(u.intersect(&w).unwrap(), w.intersect(&u).unwrap());
        prop_assert_eq!(u.sum(&u).unwrap(), u.clone());
        prop_assert_eq!(u.intersect(&u).unwrap(), u.clone());

        // Neutral elements.
        prop_assert_eq!(u.sum(&z).unwrap(), u.clone());
        prop_assert_eq!(u.intersect(&full).unwrap(), u.clone());

        // Dimension formula.
        let s = u.sum(&w).unwrap();
        let i = u.intersect(&w).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(i.is_contained_in(&u).unwrap());
        prop_assert!(u.is_contained_in(&s).unwrap());
    }

    #[test]
    fn lattice_associativity(
        a in matrix_strategy(2usize..=6, 1usize..=2),
        raw in vectors_strategy(6, 2),
    ) {
        let field = a.field();
        let m = a.rows();
        let u = Subspace::from_column_span(&a);
        let w = Subspace::from_span(field, m, &[to_vec(field, &raw[0][..m])]).unwrap();
        let v = Subspace::from_span(field, m, &[to_vec(field, &raw[1][..m])]).unwrap();
        prop_assert_eq!(
            u.sum(&w).unwrap().sum(&v).unwrap(),
            u.sum(&w.sum(&v).unwrap()).unwrap()
        );
        prop_assert_eq!(
            u.intersect(&w).unwrap().intersect(&v).unwrap(),
            u.intersect(&w.intersect(&v).unwrap()).unwrap()
        );
    }

    #[test]
    fn quotient_of_one_vector_extension(
        a in matrix_strategy(2usize..=7, 1usize..=3),
        raw in vectors_strategy(7, 1),
    ) {
        let field = a.field();
        let m = a.rows();
        let w = Subspace::from_column_span(&a);
        let v = to_vec(field, &raw[0][..m]);
        let extended = w
            .sum(&Subspace::from_span(field, m, std::slice::from_ref(&v)).unwrap())
            .unwrap();
        let expected = usize::from(!w.contains(&v).unwrap() && !v.iter().all(Scalar::is_zero));
        prop_assert_eq!(extended.quotient_dim(&w).unwrap(), expected);
    }

    #[test]
    fn preimage_contains_kernel_and_is_monotone(
        a in matrix_strategy(1usize..=5, 1usize..=5),
        raw in vectors_strategy(5, 2),
    ) {
        let field = a.field();
        let rows = a.rows();
        let w_small = Subspace::from_span(field, rows, &[to_vec(field, &raw[0][..rows])]).unwrap();
        let w_big = w_small
            .sum(&Subspace::from_span(field, rows, &[to_vec(field, &raw[1][..rows])]).unwrap())
            .unwrap();
        let pre_small = weyr_core::preimage(&a, &w_small).unwrap();
        let pre_big = weyr_core::preimage(&a, &w_big).unwrap();
        prop_assert!(kernel_basis(&a).is_contained_in(&pre_small).unwrap());
        prop_assert!(pre_small.is_contained_in(&pre_big).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weyr_agrees_with_rank_oracle(a in square_strategy(6)) {
        let field = a.field();
        let m = a.rows();
        let lambdas: Vec<Scalar> = match field {
            Field::Q => vec![field.zero(), field.one()],
            Field::Gf(p) => (0..p.min(3)).map(|v| field.from_i64(v as i64)).collect(),
        };
        for lambda in lambdas {
            let fast = weyr(&PartialOperator::total(a.clone()), &lambda, m);
            let slow = weyr_oracle(&a, &lambda, m);
            prop_assert_eq!(&fast.dims, &slow.dims);
            prop_assert_eq!(fast.stabilized, slow.stabilized);
        }
    }

    #[test]
    fn weyr_is_monotone_with_concave_increments(a in square_strategy(6)) {
        let field = a.field();
        let m = a.rows();
        let w = weyr(&PartialOperator::total(a.clone()), &field.zero(), m);
        prop_assert!(w.stabilized, "total operators stabilize within m");
        let mut prev_dim = 0;
        let mut prev_inc = usize::MAX;
        for n in 0..w.dims.len() {
            let dim = w.dim_at(n + 1);
            let inc = dim - prev_dim;
            prop_assert!(dim >= prev_dim);
            prop_assert!(inc <= prev_inc, "increments are non-increasing");
            prev_dim = dim;
            prev_inc = inc;
        }
    }

    #[test]
    fn segre_conjugacy_and_chain_duality(a in square_strategy(6)) {
        let field = a.field();
        let m = a.rows();
        let zero = field.zero();
        let op = PartialOperator::total(a.clone());
        let w = weyr(&op, &zero, m);
        let seg = segre(&op, &zero).unwrap();
        // Sum of parts is the root subspace dimension.
        prop_assert_eq!(seg.total(), root_subspace(&a, &zero).dim());
        // Conjugacy against the increments, both ways: the number of parts of
        // size >= j is the (j-1)-st increment, and the i-th part counts the
        // increments of size > i.
        for j in 1..=seg.parts.first().copied().unwrap_or(0) {
            let part_count = seg.parts.iter().filter(|&&p| p >= j).count();
            prop_assert_eq!(part_count, w.increment(j - 1));
        }
        for (i, &part) in seg.parts.iter().enumerate() {
            let count = (0..m).filter(|&n| w.increment(n) > i).count();
            prop_assert_eq!(part, count);
        }
        // Chains realize the quotient dimensions.
        let chains = jordan_chains(&a, &zero);
        prop_assert!(chain_verify(&a, &zero, &chains).ok);
        for n in 0..m {
            let long = chains.chains.iter().filter(|c| c.len() > n).count();
            prop_assert_eq!(long, w.increment(n), "level {}", n);
        }
        let mut lengths = chains.lengths();
        lengths.sort_unstable_by(|x, y| y.cmp(x));
        prop_assert_eq!(lengths, seg.parts.clone());
    }

    #[test]
    fn total_partial_operator_matches_nullspaces(a in square_strategy(5)) {
        let field = a.field();
        let m = a.rows();
        let op = PartialOperator::total(a.clone());
        let zero = field.zero();
        for n in 0..=m {
            let viaiter = kernel_power(&op, &zero, n);
            let direct = kernel_basis(&a.pow(n).unwrap());
            prop_assert_eq!(viaiter, direct, "power {}", n);
        }
    }

    #[test]
    fn perturbation_rank_is_bounded(
        a in square_strategy(6),
        k in 0usize..=3,
        seed in 0u64..1000,
    ) {
        let m = a.rows();
        let k = k.min(m);
        let spec = random_perturbation(a.field(), m, k, seed, 3);
        let t = spec.apply_to(&a).unwrap();
        prop_assert!(a.sub(&t).unwrap().rank() <= k);
        prop_assert_eq!(a.sub(&t).unwrap().rank(), spec.effective_rank());
    }

    #[test]
    fn common_subspace_postconditions(
        a in square_strategy(6),
        k in 0usize..=2,
        seed in 0u64..1000,
    ) {
        let m = a.rows();
        let spec = random_perturbation(a.field(), m, k.min(m), seed, 3);
        let t = spec.apply_to(&a).unwrap();
        let model = common_subspace(&a, &t).unwrap();
        let rank = a.sub(&t).unwrap().rank();
        prop_assert_eq!(model.codim_s, rank);
        prop_assert_eq!(model.common.dim(), m - rank);
        // S and T agree on every basis vector of M.
        for v in model.common.basis_vectors() {
            prop_assert_eq!(a.mul_vec(&v).unwrap(), t.mul_vec(&v).unwrap());
        }
        // Restriction domains grow one dimension at a time.
        let chain = restriction_chain(&a, &model.common, &model.completions_s).unwrap();
        for (i, op) in chain.iter().enumerate() {
            prop_assert_eq!(op.domain().dim(), model.common.dim() + i + 1);
        }
    }

    #[test]
    fn main_bounds_hold_and_are_symmetric(
        a in square_strategy(6),
        k in 0usize..=3,
        seed in 0u64..1000,
    ) {
        let field = a.field();
        let m = a.rows();
        let spec = random_perturbation(field, m, k.min(m), seed, 3);
        let t = spec.apply_to(&a).unwrap();
        let fwd = check_main_bounds(&a, &t, &field.zero(), m).unwrap();
        prop_assert!(fwd.all_pass, "theorem bound violated");
        let bwd = check_main_bounds(&t, &a, &field.zero(), m).unwrap();
        for (x, y) in fwd.rows.iter().zip(bwd.rows.iter()) {
            prop_assert_eq!(x.gap_i, y.gap_i);
            prop_assert_eq!(x.gap_ii, y.gap_ii);
        }
    }

    #[test]
    fn chains_of_t_inside_m_are_chains_of_s(
        a in square_strategy(5),
        seed in 0u64..1000,
    ) {
        // Lemma "a chain of T inside the common subspace is a chain of S".
        let field = a.field();
        let m = a.rows();
        let spec = random_perturbation(field, m, 1.min(m), seed, 3);
        let t = spec.apply_to(&a).unwrap();
        let diff = a.sub(&t).unwrap();
        if diff.is_zero() {
            return Ok(());
        }
        let m_space = kernel_basis(&diff);
        let chains_t = jordan_chains(&t, &field.zero());
        let inside: Vec<Vec<Vec<Scalar>>> = chains_t
            .chains
            .iter()
            .filter(|chain| {
                chain
                    .iter()
                    .all(|v| m_space.contains(v).unwrap())
            })
            .cloned()
            .collect();
        if inside.is_empty() {
            return Ok(());
        }
        let subset = JordanChainSet {
            lambda: field.zero(),
            chains: inside,
        };
        prop_assert!(chain_verify(&a, &field.zero(), &subset).ok);
    }
}
