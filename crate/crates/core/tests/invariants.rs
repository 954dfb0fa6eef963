use std::cmp::Ordering;

use exactgrp::circle::{cocycle_identity_check, euler_cocycle, random_lift, rotation_number};
use exactgrp::freegroup::{Letter, Quasimorphism, ReducedWord};
use exactgrp::heisenberg::HeisOrder;
use exactgrp::matred::euclid::reconstruct as euclid_reconstruct;
use exactgrp::matred::bounded::replay;
use exactgrp::matred::{bounded_reduce, euclid_reduce, pinv_from_int, random_sl2z, PInvScalar, RowOp};
use exactgrp::{CircleLift, Heis, Rational};
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = ReducedWord> {
    prop::collection::vec((0..rank, any::<bool>()), 0..=max_len)
        .prop_map(move |ls| ReducedWord::reduce(rank, &ls.into_iter().map(|(g, i)| Letter::new(g, i)).collect::<Vec<_>>()).unwrap())
}

fn heis() -> impl Strategy<Value = Heis> {
    (-40i64..40, -40i64..40, -200i64..200).prop_map(|(a, b, c)| Heis::from_i64(a, b, c))
}

fn lift() -> impl Strategy<Value = CircleLift> {
    (any::<u64>(), 1usize..5).prop_map(|(seed, m)| random_lift(&mut ChaCha8Rng::seed_from_u64(seed), m, 24))
}

fn point() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..30).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn order() -> impl Strategy<Value = HeisOrder> {
    (0..16usize).prop_map(|i| HeisOrder::all()[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn word_product_is_associative(x in word(2, 10), y in word(2, 10), z in word(2, 10)) {
        let left = x.multiply(&y).unwrap().multiply(&z).unwrap();
        let right = x.multiply(&y.multiply(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn word_inverse_cancels(x in word(3, 12)) {
        prop_assert!(x.multiply(&x.invert()).unwrap().is_identity());
        prop_assert_eq!(x.invert().invert(), x.clone());
        prop_assert_eq!(ReducedWord::parse(3, &x.to_string()).unwrap(), x);
    }

    #[test]
    fn reducing_a_concatenation_is_the_product(x in word(2, 10), y in word(2, 10)) {
        let mut ls = x.letters();
        ls.extend(y.letters());
        let xy = x.multiply(&y).unwrap();
        prop_assert_eq!(ReducedWord::reduce(2, &ls).unwrap(), xy.clone());
        prop_assert!(xy.len() <= x.len() + y.len());
        prop_assert!(xy.letters().windows(2).all(|w| w[1] != w[0].inv()));
    }

    #[test]
    fn brooks_defect_at_most_one(p in word(2, 4), x in word(2, 14), y in word(2, 14)) {
        prop_assume!(!p.is_identity());
        let phi = Quasimorphism::brooks(p).unwrap();
        let d = phi.eval(&x.multiply(&y).unwrap()) - phi.eval(&x) - phi.eval(&y);
        prop_assert!(d.abs() <= 1, "defect {}", d);
    }

    #[test]
    fn homomorphism_count_is_additive(x in word(2, 14), y in word(2, 14)) {
        for g in 0..2 {
            let phi = Quasimorphism::hom(g);
            prop_assert_eq!(phi.eval(&x.multiply(&y).unwrap()), phi.eval(&x) + phi.eval(&y));
        }
    }

    #[test]
    fn heisenberg_group_laws(g in heis(), h in heis(), k in heis()) {
        prop_assert_eq!(g.mul(&h).mul(&k), g.mul(&h.mul(&k)));
        prop_assert!(g.mul(&g.inv()).is_identity());
        prop_assert!(Heis::z().commutator(&g).is_identity());
        prop_assert_eq!(g.mul(&h).to_matrix(), g.to_matrix().mul_ref(&h.to_matrix()));
        prop_assert_eq!(Heis::parse(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn heisenberg_orders_are_left_invariant_and_total(o in order(), g in heis(), h in heis(), k in heis()) {
        let c = o.compare(&g, &h);
        prop_assert_eq!(c == Ordering::Equal, g == h);
        prop_assert_eq!(o.compare(&h, &g), c.reverse());
        prop_assert_eq!(o.compare(&k.mul(&g), &k.mul(&h)), c);
        if o.is_positive(&g) && o.is_positive(&h) {
            prop_assert!(o.is_positive(&g.mul(&h)));
        }
    }

    #[test]
    fn circle_compose_matches_pointwise(f in lift(), g in lift(), t in point()) {
        let fg = f.compose(&g);
        prop_assert!(fg.check_invariants());
        prop_assert_eq!(fg.eval(&t), f.eval(&g.eval(&t)));
        prop_assert_eq!(f.eval(&(&t + Rational::one())), f.eval(&t) + Rational::one());
    }

    #[test]
    fn circle_compose_is_associative(f in lift(), g in lift(), h in lift()) {
        prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
    }

    #[test]
    fn circle_inverse(f in lift(), t in point()) {
        prop_assert!(f.compose(&f.inverse()).is_identity());
        prop_assert!(f.inverse().compose(&f).is_identity());
        prop_assert_eq!(f.inverse().eval(&f.eval(&t)), t);
    }

    #[test]
    fn normalized_cocycle_is_zero_or_one(f in lift(), g in lift(), h in lift()) {
        let (f, g, h) = (f.normalize(), g.normalize(), h.normalize());
        let c = euler_cocycle(&f, &g).unwrap();
        prop_assert!(c == 0 || c == 1);
        prop_assert_eq!(cocycle_identity_check(&f, &g, &h).unwrap().value, 0);
    }

    #[test]
    fn rotation_number_is_a_conjugacy_invariant(h in lift(), q in 1i64..7, p in 0i64..7) {
        let alpha = Rational::new(p.into(), q.into());
        let r = CircleLift::rotation(alpha.clone());
        let conj = h.compose(&r).compose(&h.inverse());
        let rep = rotation_number(&conj, 60, 6).unwrap();
        let exact: Rational = rep.exact.expect("periodic").parse().unwrap();
        prop_assert_eq!(exact, alpha);
    }

    #[test]
    fn row_ops_are_invertible(num in -30i64..30, e in 0u32..4, p in prop::sample::select(vec![2u64, 3, 5]), seed in any::<u64>(), dst in 0usize..2) {
        let m = pinv_from_int(&random_sl2z(&mut ChaCha8Rng::seed_from_u64(seed), 4, 3), p).unwrap();
        let op = RowOp::new(1 - dst, dst, PInvScalar::new(BigInt::from(num), e, p));
        let moved = m.apply(&op);
        prop_assert!(moved.det().is_one());
        prop_assert_eq!(moved.apply(&op.inverse()), m);
    }

    #[test]
    fn reductions_rebuild_their_input(seed in any::<u64>(), factors in 1usize..8) {
        let m = random_sl2z(&mut ChaCha8Rng::seed_from_u64(seed), factors, 5);
        let steps = euclid_reduce(&m).unwrap();
        let ops: Vec<_> = steps.iter().map(|s| s.op.clone()).collect();
        prop_assert_eq!(euclid_reconstruct(&ops), m.clone());

        let pm = pinv_from_int(&m, 2).unwrap();
        let r = bounded_reduce(&pm, 10_000).unwrap();
        prop_assert!(r.steps.len() <= 5);
        let trail = replay(&pm, &r.ops());
        prop_assert!(trail.last().map_or(pm.is_identity(), |x| x.is_identity()));
        prop_assert_eq!(exactgrp::matred::bounded::reconstruct(2, &r.ops()), pm);
    }
}
