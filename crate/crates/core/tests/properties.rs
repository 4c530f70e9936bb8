//! Cross-cutting properties of the exact kernel and the layers above it.

use proptest::prelude::*;

use lieinvar_core::coadjoint::{commutator_matrix, commutator_rank, infinitesimal_generators};
use lieinvar_core::engine::{find_invariants, verify_invariant, FindOptions};
use lieinvar_core::lie::{sl2_semidirect, LieAlgebra};
use lieinvar_core::linalg;
use lieinvar_core::poly::{parse_polynomial, Context, Monomial, Polynomial};
use lieinvar_core::rational::{rat, Rational};
use lieinvar_core::rng::SplitMix64;

fn ctx3() -> Context {
    Context::new(vec!["x", "y", "h"]).unwrap()
}

/// Random sparse polynomial in three variables: up to five terms, exponents
/// at most three, integer coefficients in [-9, 9].
fn arb_poly() -> impl Strategy<Value = Polynomial> {
    let term = (any::<[u8; 3]>(), -9i64..=9).prop_map(|(exps, coeff)| {
        let exps: Vec<u32> = exps.iter().map(|&e| (e % 4) as u32).collect();
        (Monomial::new(exps), coeff)
    });
    proptest::collection::vec(term, 0..5).prop_map(|terms| {
        let ctx = ctx3();
        let mut p = Polynomial::zero(&ctx);
        for (mono, coeff) in terms {
            p = p.add(&Polynomial::from_term(&ctx, mono, rat(coeff)));
        }
        p
    })
}

/// Random homogeneous polynomial of the given degree.
fn arb_homogeneous(degree: u32) -> impl Strategy<Value = Polynomial> {
    let term = (0..=degree, 0..=degree, -9i64..=9).prop_filter_map("degree split", move |(a, b, c)| {
        (a + b <= degree).then(|| (Monomial::new(vec![a, b, degree - a - b]), c))
    });
    proptest::collection::vec(term, 1..5).prop_map(|terms| {
        let ctx = ctx3();
        let mut p = Polynomial::zero(&ctx);
        for (mono, coeff) in terms {
            p = p.add(&Polynomial::from_term(&ctx, mono, rat(coeff)));
        }
        p
    })
}

proptest! {
    #[test]
    fn ring_distributivity(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        let lhs = p.add(&q).mul(&r);
        let rhs = p.mul(&r).add(&q.mul(&r));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_is_linear_and_leibniz(p in arb_poly(), q in arb_poly()) {
        for var in 0..3 {
            let sum_rule = p.add(&q).diff(var);
            prop_assert_eq!(sum_rule, p.diff(var).add(&q.diff(var)));
            let product_rule = p.mul(&q).diff(var);
            let expected = p.diff(var).mul(&q).add(&p.mul(&q.diff(var)));
            prop_assert_eq!(product_rule, expected);
        }
    }

    #[test]
    fn derivative_drops_one_degree(p in arb_poly()) {
        for var in 0..3 {
            let d = p.diff(var);
            if !d.is_zero() {
                // Differentiated variable's exponent drops by exactly one on
                // every term that survives.
                let max_before = p
                    .terms()
                    .map(|(m, _)| m.exponents()[var])
                    .max()
                    .unwrap_or(0);
                let max_after = d.terms().map(|(m, _)| m.exponents()[var]).max().unwrap_or(0);
                prop_assert_eq!(max_after + 1, max_before);
            }
        }
    }

    #[test]
    fn text_round_trip(p in arb_poly()) {
        let text = p.to_string();
        let back = parse_polynomial(p.context(), &text).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(p in arb_poly(), q in arb_poly(), seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let point = rng.rational_point(3);
        let lhs = p.mul(&q).eval(&point);
        let rhs = p.eval(&point) * q.eval(&point);
        prop_assert_eq!(lhs, rhs);
        let lhs = p.add(&q).eval(&point);
        let rhs = p.eval(&point) + q.eval(&point);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn generators_preserve_homogeneous_degree(f in arb_homogeneous(3)) {
        // Linear coefficients times one differentiation: degree D -> D or 0.
        let algebra = lieinvar_core::lie::sl2();
        for g in infinitesimal_generators(&algebra) {
            let image = g.apply(&f);
            if !image.is_zero() {
                prop_assert!(image.is_homogeneous());
                prop_assert_eq!(image.total_degree(), 3);
            }
        }
    }
}

#[test]
fn symbolic_rank_matches_rational_rank_on_constant_matrices() {
    let ctx = ctx3();
    let mut rng = SplitMix64::new(2024);
    for round in 0..200 {
        let rows = 1 + (rng.next_u64() % 4) as usize;
        let cols = 1 + (rng.next_u64() % 4) as usize;
        let matrix: Vec<Vec<Rational>> = (0..rows)
            .map(|_| (0..cols).map(|_| rat(rng.int_in(-3, 3))).collect())
            .collect();
        let embedded = linalg::constant_matrix(&matrix, &ctx);
        assert_eq!(
            linalg::generic_rank_symbolic(&embedded, &ctx),
            linalg::rank(&matrix),
            "round {round}"
        );
    }
}

#[test]
fn rank_at_random_points_bounds_generic_rank() {
    for m in 0..=5u32 {
        let l = sl2_semidirect(m);
        let matrix = commutator_matrix(&l);
        let generic = commutator_rank(&l);
        let mut rng = SplitMix64::new(31 + m as u64);
        let mut attained = false;
        for _ in 0..20 {
            let point = rng.rational_point(l.dim());
            let rank_here = linalg::rank(&matrix.eval(&point));
            assert!(rank_here <= generic, "weight {m}");
            attained |= rank_here == generic;
        }
        assert!(attained, "weight {m}: generic rank not observed in 20 draws");
    }
}

#[test]
fn commutator_matrices_are_antisymmetric() {
    let mut fixtures: Vec<LieAlgebra> = (0..=6).map(sl2_semidirect).collect();
    fixtures.push(lieinvar_core::lie::sl2());
    fixtures.push(LieAlgebra::abelian(vec!["a".into(), "b".into(), "c".into()]).unwrap());
    for l in &fixtures {
        let matrix = commutator_matrix(l);
        for i in 0..l.dim() {
            assert!(matrix.entry(i, i).is_zero());
            for j in 0..l.dim() {
                assert_eq!(matrix.entry(i, j), &matrix.entry(j, i).neg());
            }
        }
    }
}

#[test]
fn found_invariants_always_verify() {
    for m in 0..=4u32 {
        let l = sl2_semidirect(m);
        let degree = if m == 3 { 4 } else { 3 };
        let set = find_invariants(&l, &FindOptions::new(degree));
        assert!(!set.is_empty(), "weight {m}");
        for p in set.polys() {
            assert!(verify_invariant(&l, p), "weight {m}: {p}");
        }
    }
}

#[test]
fn jacobi_holds_for_a_seeded_sample_of_builds() {
    let mut rng = SplitMix64::new(9);
    for _ in 0..50 {
        let m = (rng.next_u64() % 11) as u32;
        assert!(sl2_semidirect(m).jacobi_report().ok, "weight {m}");
    }
}
