//! Randomised invariants.

mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use asphere::curvature::region_curvature;
use asphere::star_graph::StarGraph;
use asphere::theory::CoefficientTheory;
use asphere::weight::{check_weight_test, WeightFunction};
use asphere::word::{Alphabet, MixedWord, Symbol};
use asphere::Rational;
use common::{print_tokens, reduce_in_order, reduce_leftmost, Tok};

fn tok() -> impl Strategy<Value = Tok> {
    (prop::sample::select(vec!['a', 'b', 'c', 'd', 't', 'x']), prop::bool::ANY)
        .prop_map(|(c, neg)| (c, if neg { -1 } else { 1 }))
}

fn word(max: usize) -> impl Strategy<Value = Vec<Tok>> {
    prop::collection::vec(tok(), 0..=max)
}

fn parse(w: &[Tok]) -> MixedWord {
    Alphabet::with_stable(&['t', 'x', 'u']).parse(&print_tokens(w)).unwrap()
}

fn relator() -> impl Strategy<Value = MixedWord> {
    word(14).prop_filter_map("needs a stable letter", |w| {
        let r = parse(&w).into_cyclic().reduce();
        (r.equation_length() > 0).then_some(r)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn free_reduction_is_idempotent_and_confluent(w in word(30), seed in any::<u64>()) {
        let lib = parse(&w).reduce();
        prop_assert_eq!(lib.reduce(), lib.clone());
        let left = reduce_leftmost(&w);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let random = reduce_in_order(&w, |n| rng.gen_range(0..n));
        prop_assert_eq!(&left, &random);
        prop_assert_eq!(lib.to_string(), print_tokens(&left));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn theory_reduction_drops_trivial_letters(w in word(30)) {
        let th = CoefficientTheory::base().close();
        let lib = parse(&w).free_reduce(&th);
        prop_assert_eq!(lib.free_reduce(&th), lib.clone());
        let no_b: Vec<Tok> = w.iter().copied().filter(|t| t.0 != 'b').collect();
        prop_assert_eq!(lib.to_string(), print_tokens(&reduce_leftmost(&no_b)));
    }

    #[test]
    fn substituting_u_times_a_coefficient_keeps_length(r in relator(), g in prop::sample::select(vec!["a", "c^-1", "d"])) {
        prop_assume!(r.stable_letters().any(|s| s.name == Symbol('t')));
        let rep = Alphabet::with_stable(&['u']).parse(&format!("u {g}")).unwrap();
        let out = r.apply_substitution(Symbol('t'), &rep).unwrap();
        prop_assert_eq!(out.equation_length(), r.equation_length());
    }

    #[test]
    fn inversion_respects_cyclic_orbits(r in relator()) {
        prop_assert_eq!(r.inverse().inverse(), r.clone());
        let orbit = r.cyclic_forms();
        prop_assert_eq!(&r.inverse().cyclic_forms(), &orbit);
        for f in &orbit {
            prop_assert!(f.cyclically_equal(&r));
            prop_assert_eq!(&f.cyclic_forms(), &orbit);
        }
    }

    #[test]
    fn edge_count_is_equation_length(rs in prop::collection::vec(relator(), 1..4)) {
        let g = StarGraph::build(&rs).unwrap();
        let total: usize = rs.iter().map(|r| r.equation_length()).sum();
        prop_assert_eq!(g.edges().len(), total);
    }

    #[test]
    fn reversed_cycles_have_inverse_labels(rs in prop::collection::vec(relator(), 1..3)) {
        let g = StarGraph::build(&rs).unwrap();
        for c in g.enumerate_cycles(3) {
            let rev: Vec<_> = c.steps.iter().rev().map(|t| t.inverse()).collect();
            prop_assert!(g.is_reduced_cycle(&rev));
            prop_assert_eq!(g.path_label(&rev).reduced(), c.label.inverse().reduced());
        }
    }

    #[test]
    fn weight_verdict_survives_mirroring_and_relabelling(
        rs in prop::collection::vec(relator(), 1..3),
        seed in any::<u64>(),
    ) {
        let g = StarGraph::build(&rs).unwrap();
        let grid = [Rational::from_integer(0), Rational::new(1, 2), Rational::from_integer(1)];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut theta = WeightFunction::new();
        for e in g.edges() {
            theta.set(e.id, grid[rng.gen_range(0..3)]);
        }
        let th = CoefficientTheory::base().close();
        let v = check_weight_test(&g, &theta, &th, 4).unwrap().verdict;
        prop_assert_eq!(check_weight_test(&g.mirrored(), &theta, &th, 4).unwrap().verdict, v);

        let reversed: Vec<MixedWord> = rs.iter().rev().cloned().collect();
        let h = StarGraph::build(&reversed).unwrap();
        let n = rs.len();
        let mut moved = WeightFunction::new();
        for e in h.edges() {
            let orig = g.relator_edges()[n - 1 - e.relator][e.position];
            moved.set(e.id, theta.get(orig).unwrap());
        }
        prop_assert_eq!(check_weight_test(&h, &moved, &th, 4).unwrap().verdict, v);
    }

    #[test]
    fn curvature_is_symmetric(d in prop::collection::vec(2u32..8, 1..12), seed in any::<u64>()) {
        let mut shuffled = d.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, rng.gen_range(0..=i));
        }
        prop_assert_eq!(region_curvature(&d).unwrap(), region_curvature(&shuffled).unwrap());
    }

    #[test]
    fn lowering_a_degree_raises_curvature(d in prop::collection::vec(3u32..9, 1..12), i in any::<prop::sample::Index>()) {
        let k = i.index(d.len());
        let mut lower = d.clone();
        lower[k] -= 1;
        prop_assert!(region_curvature(&lower).unwrap().value() > region_curvature(&d).unwrap().value());
    }
}
