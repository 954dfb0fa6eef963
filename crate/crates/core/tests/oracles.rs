//! Library results against independent closed forms and brute-force counts.

use exactgrp::amenability::{folner_box, growth_obstruction, GrowthBackend};
use exactgrp::circle::{euler_cocycle, random_lift, rotation_number};
use exactgrp::freegroup::{ball, ball_size};
use exactgrp::group::{FreeAbelian, FreeGroup, Heisenberg, IntMatrixGroup, ZVec};
use exactgrp::matred::{euclid_reduce, fib_power, power_list, primitive_root_check};
use exactgrp::orders::{cone_search, ConeOutcome, ConeSearchConfig};
use exactgrp::{BigIntMat, CircleLift, Heis, Rational};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Piecewise-linear evaluation straight from the breakpoint table.
fn pl_eval(f: &CircleLift, x: &Rational) -> Rational {
    let n = x.floor();
    let y = x - &n;
    let mut pts: Vec<(Rational, Rational)> = f.points().to_vec();
    let (t0, v0) = pts[0].clone();
    let one = Rational::from_integer(1.into());
    pts.push((t0 + &one, v0 + &one));
    let w = pts.windows(2).find(|w| w[0].0 <= y && y < w[1].0).expect("covers [0,1)");
    let ((ta, va), (tb, vb)) = (&w[0], &w[1]);
    va + (vb - va) * (&y - ta) / (tb - ta) + n
}

#[test]
fn cocycle_is_the_integer_part_of_the_composite_at_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let zero = Rational::from_integer(0.into());
    for _ in 0..300 {
        let g: CircleLift = random_lift::<BigInt, _>(&mut rng, 4, 30).normalize();
        let h: CircleLift = random_lift::<BigInt, _>(&mut rng, 3, 30).normalize();
        let oracle = pl_eval(&g, &pl_eval(&h, &zero)).floor().to_integer().to_i64().unwrap();
        assert_eq!(euler_cocycle(&g, &h).unwrap(), oracle);
    }
}

#[test]
fn folner_cube_side_is_just_above_one_over_epsilon() {
    // #([0,n)^d ∩ (e_i + [0,n)^d)) = (n − 1) n^(d−1), which beats (1 − ε) n^d iff n > 1/ε
    for d in 1..=3 {
        let s: Vec<ZVec> = (0..d).map(|i| ZVec::unit(d, i)).collect();
        for (num, den) in [(1, 10), (1, 3), (2, 7), (1, 1), (1, 2)] {
            let eps = Rational::new(num.into(), den.into());
            let expect = (den / num) + 1;
            assert_eq!(folner_box(d, &s, &eps, 1000).unwrap().n, expect, "d={d} eps={eps}");
        }
    }
    // a longer test vector needs a proportionally longer side
    let eps = Rational::new(1.into(), 10.into());
    assert_eq!(folner_box(1, &[ZVec(vec![3])], &eps, 1000).unwrap().n, 31);
}

#[test]
fn ball_sizes_match_closed_forms() {
    for k in 1..=3usize {
        for r in 0..=5usize {
            let expect: u128 = if k == 1 { 2 * r as u128 + 1 } else { 1 + (k as u128) * ((2 * k as u128 - 1).pow(r as u32) - 1) / (k as u128 - 1) };
            assert_eq!(ball_size(k, r), expect);
            assert_eq!(ball(k, r, usize::MAX).unwrap().len() as u128, expect);
        }
    }
    let g = growth_obstruction(GrowthBackend::Abelian(2), 6).unwrap();
    let z2: Vec<usize> = (0..=12).map(|r| 2 * r * r + 2 * r + 1).collect();
    assert_eq!(g.sizes, z2);
    let f = growth_obstruction(GrowthBackend::Free(2), 6).unwrap();
    assert_eq!(f.sizes, [1, 5, 17, 53, 161, 485, 1457]);
}

#[test]
fn primitive_roots_agree_with_listing_powers() {
    for q in (3u64..400).filter(|&q| exactgrp::matred::is_prime(q)) {
        for r in 2i64..12 {
            if r as u64 % q == 0 {
                continue;
            }
            let r = BigInt::from(r);
            let listed = power_list(&r, q).unwrap();
            assert_eq!(primitive_root_check(&r, q).unwrap(), listed.len() as u64 == q - 1, "{r} mod {q}");
        }
    }
}

#[test]
fn euclid_counts_on_fibonacci_powers() {
    // the first column of [[2,1],[1,1]]^n is (F(2n+1), F(2n)); each quotient
    // step of the Euclidean algorithm on consecutive Fibonacci numbers is 1
    for n in 1..=12u32 {
        let m = fib_power::<BigInt>(n);
        let steps = euclid_reduce(&m).unwrap();
        assert_eq!(steps.len(), 2 * n as usize + 1, "n = {n}");
    }
}

#[test]
fn rotation_interval_brackets_the_average_displacement() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let f: CircleLift = random_lift::<BigInt, _>(&mut rng, 3, 20);
        let r = rotation_number(&f, 40, 4).unwrap();
        let lo: Rational = r.lo.parse().unwrap();
        let hi: Rational = r.hi.parse().unwrap();
        let mut x = Rational::from_integer(0.into());
        for _ in 0..400 {
            x = f.eval(&x);
        }
        let avg = x / Rational::from_integer(400.into());
        // f^n(0)/n is within 1/n of the rotation number
        let slack = Rational::new(1.into(), 400.into());
        assert!(&lo - &slack <= avg && avg <= &hi + &slack, "{avg} outside [{lo}, {hi}]");
        if let Some(e) = &r.exact {
            let e: Rational = e.parse().unwrap();
            assert!(lo <= e && e <= hi);
        }
    }
}

#[test]
fn cone_search_on_known_groups() {
    let cfg = ConeSearchConfig::new(2);
    let free = FreeGroup { rank: 2 };
    let gens = [exactgrp::freegroup::ReducedWord::generator(2, 0).unwrap(), exactgrp::freegroup::ReducedWord::generator(2, 1).unwrap()];
    assert!(matches!(cone_search(&free, &gens, cfg).unwrap(), ConeOutcome::OrderableUpToRadius { .. }));
    let z2 = FreeAbelian { dim: 2 };
    assert!(matches!(cone_search(&z2, &[ZVec::unit(2, 0), ZVec::unit(2, 1)], cfg).unwrap(), ConeOutcome::OrderableUpToRadius { .. }));
    assert!(matches!(cone_search(&Heisenberg, &[Heis::x(), Heis::y()], cfg).unwrap(), ConeOutcome::OrderableUpToRadius { .. }));
    // a rotation of order four has no left order
    let r = BigIntMat::from_i64_rows(&[&[0, -1], &[1, 0]]).unwrap();
    let grp = IntMatrixGroup::new(2, vec![r.clone()]).unwrap();
    assert!(matches!(cone_search(&grp, &[r], cfg).unwrap(), ConeOutcome::NotLeftOrderable { .. }));
}
