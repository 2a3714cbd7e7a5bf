mod common;

use fna::counting::{
    count_connected, count_connected_recursive, count_forests_layered, count_forests_memo, count_forests_oracle,
    weighted_sum, CountingProblem, MemoMode, MemoStore, Property, WeightVector,
};
use fna::graph::EdgeSet;
use num_rational::BigRational;
use proptest::prelude::*;

use common::{brute_count, random_problem, rng};

#[test]
fn strategies_agree_on_random_problems() {
    let mut r = rng(7);
    let exact = MemoStore::unbounded();
    let index = MemoStore::with_capacity(4096);
    for _ in 0..1500 {
        let p = random_problem(&mut r, 8, 12);
        let expected = brute_count(&p, Property::Forest);
        assert_eq!(count_forests_oracle(&p).unwrap().get(), expected, "{p:?}");
        assert_eq!(count_forests_layered(&p).unwrap().get(), expected, "{p:?}");
        assert_eq!(count_forests_memo(&p, MemoMode::Exact, &exact).unwrap().get(), expected, "{p:?}");
        assert_eq!(count_forests_memo(&p, MemoMode::Index, &index).unwrap().get(), expected, "{p:?}");
    }
}

#[test]
fn connected_strategies_agree() {
    let mut r = rng(8);
    for _ in 0..800 {
        let p = random_problem(&mut r, 7, 12);
        let expected = brute_count(&p, Property::Connected);
        assert_eq!(count_connected(&p).unwrap().get(), expected, "{p:?}");
        assert_eq!(count_connected_recursive(&p).unwrap().get(), expected, "{p:?}");
    }
}

#[test]
fn known_totals() {
    for (n, forests) in [(3, 7), (4, 38), (5, 291), (6, 2932)] {
        let p = CountingProblem::unconstrained(EdgeSet::complete(n));
        assert_eq!(brute_count(&p, Property::Forest), forests);
        assert_eq!(count_forests_memo(&p, MemoMode::Index, &MemoStore::unbounded()).unwrap().get(), forests);
    }
    for (n, connected) in [(3, 4), (4, 38), (5, 728)] {
        let p = CountingProblem::unconstrained(EdgeSet::complete(n));
        assert_eq!(brute_count(&p, Property::Connected), connected);
        assert_eq!(count_connected(&p).unwrap().get(), connected);
    }
}

#[test]
fn weighted_sum_at_unit_weight_is_a_count() {
    let mut r = rng(9);
    let one = WeightVector::uniform(BigRational::from_integer(1.into())).unwrap();
    for _ in 0..300 {
        let p = random_problem(&mut r, 6, 10);
        for property in [Property::Forest, Property::Connected] {
            let w = weighted_sum(&p, property, &one).unwrap();
            assert_eq!(w, BigRational::from_integer(brute_count(&p, property).into()));
        }
    }
}

/// A problem from a seed, for use inside proptest strategies.
fn problem_strategy() -> impl Strategy<Value = CountingProblem> {
    (3usize..=7, any::<u64>(), any::<u64>()).prop_map(|(n, bits, split)| {
        let m = n * (n - 1) / 2;
        let mask = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        // Keep at most 14 edges so enumeration stays quick.
        let mut edges = EdgeSet::from_bits(n, bits & mask).unwrap();
        while edges.len() > 14 {
            let r = edges.ranks().next().unwrap();
            edges = edges.without_rank(r);
        }
        let (mut x, mut y) = (EdgeSet::empty(n), EdgeSet::empty(n));
        for (i, r) in edges.ranks().enumerate() {
            match split >> (2 * i) & 3 {
                0 => x = x.with_rank(r),
                1 => y = y.with_rank(r),
                _ => {}
            }
        }
        CountingProblem::new(edges, x, y).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn memo_modes_match_oracle(p in problem_strategy()) {
        let store = MemoStore::unbounded();
        let oracle = count_forests_oracle(&p).unwrap();
        prop_assert_eq!(count_forests_memo(&p, MemoMode::Exact, &store).unwrap(), oracle);
        prop_assert_eq!(count_forests_memo(&p, MemoMode::Index, &store).unwrap(), oracle);
    }

    #[test]
    fn deletion_contraction_split(p in problem_strategy()) {
        // Any free edge splits the count into "contains it" and "avoids it".
        if let Some(r) = p.free().ranks().next() {
            let with = CountingProblem::new(p.edges(), p.contain().with_rank(r), p.avoid()).unwrap();
            let without = CountingProblem::new(p.edges(), p.contain(), p.avoid().with_rank(r)).unwrap();
            for property in [Property::Forest, Property::Connected] {
                let total = fna::counting::count(&p, property, MemoMode::Exact, &MemoStore::unbounded()).unwrap();
                let a = fna::counting::count(&with, property, MemoMode::Exact, &MemoStore::unbounded()).unwrap();
                let b = fna::counting::count(&without, property, MemoMode::Exact, &MemoStore::unbounded()).unwrap();
                prop_assert_eq!(total.get(), a.get() + b.get());
            }
        }
    }

    #[test]
    fn relabelling_preserves_counts(p in problem_strategy(), seed in any::<u64>()) {
        let image = common::random_image(&mut rng(seed), p.n());
        let q = p.relabel(&image);
        prop_assert_eq!(count_forests_oracle(&p).unwrap(), count_forests_oracle(&q).unwrap());
        prop_assert_eq!(count_connected(&p).unwrap(), count_connected(&q).unwrap());
    }

    #[test]
    fn downward_closure(bits in any::<u64>(), drop in any::<u64>()) {
        let n = 7;
        let e = EdgeSet::from_bits(n, bits & ((1 << 21) - 1)).unwrap();
        let sub = EdgeSet::from_bits(n, e.bits() & drop).unwrap();
        if e.is_forest() {
            prop_assert!(sub.is_forest());
        }
        prop_assert_eq!(e.is_forest() && e.is_connected(), e.len() == n - 1 && e.components().count() == 1);
    }
}
