//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use exactgrp::amenability::{build_paradoxical_f2, build_ponzi_free, folner_box};
use exactgrp::circle::{cocycle_sweep, fixed_point_from_primitive, primitive_at, random_lift_fixing_zero, rotation_number, FixedPointVerdict};
use exactgrp::freegroup::{ball, Letter, Quasimorphism, ReducedWord};
use exactgrp::group::ZVec;
use exactgrp::heisenberg::{verify_identities, HeisOrder};
use exactgrp::matred::{
    bounded_reduce, carter_keller_bound, diag_conjugation, diag_power, euclid_reduce, fib_power, pinv_from_int, power_list, primitive_root_check,
    random_sl2z, PInvMat2, PInvScalar, Unipotent,
};
use exactgrp::orders::sl3::elementary;
use exactgrp::orders::{check_trace, sl3_contradiction, verify_heis_triples, LlFact};
use exactgrp::{CircleLift, Heis, IntMat, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

// 1
fn euclid_example() -> Outcome {
    let m = IntMat::from_i64_rows(&[&[13, 31], &[5, 12]]).map_err(e2s)?;
    let steps = euclid_reduce(&m).map_err(e2s)?;
    let expected: Vec<Vec<Vec<i64>>> = vec![
        vec![vec![3, 7], vec![5, 12]],
        vec![vec![3, 7], vec![2, 5]],
        vec![vec![1, 2], vec![2, 5]],
        vec![vec![1, 2], vec![0, 1]],
        vec![vec![1, 0], vec![0, 1]],
    ];
    let got: Vec<Vec<Vec<i64>>> = steps.iter().map(|s| s.intermediate.rows()).collect();
    ensure(got == expected, || format!("intermediates {got:?}"))?;
    // each op, applied by hand to the previous matrix, gives the next one
    let mut cur = m.rows();
    for s in &steps {
        let (src, dst, k) = (s.op.src, s.op.dst, s.op.coeff);
        for j in 0..2 {
            cur[dst][j] += k * cur[src][j];
        }
        ensure(cur == s.intermediate.rows(), || format!("step {} does not follow from its op", s.step))?;
    }
    Ok("5 intermediates match exactly".into())
}

// 2
fn brooks_values() -> Outcome {
    let w = ReducedWord::parse(2, "a^2 b a^3 b^2 a b^-3 a^-7 b^2").map_err(e2s)?;
    let a = Quasimorphism::parse(2, "hom:a").map_err(e2s)?.eval(&w);
    let ab = Quasimorphism::parse(2, "brooks:ab").map_err(e2s)?.eval(&w);
    ensure(a == -1 && ab == 1, || format!("phi_a = {a}, phi_ab = {ab}"))?;
    Ok(format!("phi_a = {a}, phi_ab = {ab}"))
}

/// Signed count of greedy disjoint occurrences of `pat` in `x`, minus those of its inverse.
fn brooks_oracle(pat: &[Letter], x: &[Letter]) -> i64 {
    let count = |p: &[Letter]| {
        let (mut i, mut c) = (0, 0);
        while i + p.len() <= x.len() {
            if &x[i..i + p.len()] == p {
                c += 1;
                i += p.len();
            } else {
                i += 1;
            }
        }
        c
    };
    let inv: Vec<Letter> = pat.iter().rev().map(|l| l.inv()).collect();
    count(pat) - count(&inv)
}

// 3
fn defect_bound() -> Outcome {
    let words = ball(2, 4, usize::MAX).map_err(e2s)?;
    let mut pairs = 0usize;
    for pat in ["a", "b", "ab", "a^2", "b a^-1"] {
        let pw = ReducedWord::parse(2, pat).map_err(e2s)?;
        let pl = pw.letters();
        let phi = Quasimorphism::brooks(pw).map_err(e2s)?;
        let vals: Vec<i64> = words.iter().map(|w| brooks_oracle(&pl, &w.letters())).collect();
        for (x, &fx) in words.iter().zip(&vals) {
            for (y, &fy) in words.iter().zip(&vals) {
                let xy = x.multiply(y).map_err(e2s)?;
                let fxy = brooks_oracle(&pl, &xy.letters());
                ensure(phi.eval(&xy) == fxy, || format!("library and oracle differ on {xy} for {pat}"))?;
                let d = fxy - fx - fy;
                ensure(d.abs() <= 1, || format!("defect {d} for {pat} at ({x}, {y})"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs over 5 patterns, zero violations"))
}

type M3 = [[i64; 3]; 3];

fn m3_mul(a: &M3, b: &M3) -> M3 {
    let mut c = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn m3_pow(a: &M3, n: i64) -> M3 {
    // inverse of a unitriangular matrix
    let inv = [[1, -a[0][1], a[0][1] * a[1][2] - a[0][2]], [0, 1, -a[1][2]], [0, 0, 1]];
    let base = if n < 0 { inv } else { *a };
    let mut r = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for _ in 0..n.abs() {
        r = m3_mul(&r, &base);
    }
    r
}

fn heis_m3(g: &Heis) -> M3 {
    let m = g.to_matrix();
    let mut out = [[0; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = *m.get(i, j);
        }
    }
    out
}

// 4
fn heisenberg_identities() -> Outcome {
    let r = verify_identities(10, 20, 5);
    ensure(r.passed(), || format!("failures: {:?}", r.failures))?;
    ensure(r.central, || "z not central".into())?;
    ensure(r.matrix_pairs == 1331 * 1331, || format!("{} matrix pairs", r.matrix_pairs))?;
    let (x, y, z) = ([[1, 1, 0], [0, 1, 0], [0, 0, 1]], [[1, 0, 0], [0, 1, 1], [0, 0, 1]], [[1, 0, 1], [0, 1, 0], [0, 0, 1]]);
    ensure(heis_m3(&Heis::x()) == x && heis_m3(&Heis::y()) == y && heis_m3(&Heis::z()) == z, || "generator matrices".into())?;
    for k in -10..=10 {
        for l in -10..=10 {
            let lhs = m3_mul(&m3_pow(&x, k), &m3_pow(&y, l));
            let rhs = m3_mul(&m3_mul(&m3_pow(&y, l), &m3_pow(&x, k)), &m3_pow(&z, k * l));
            ensure(lhs == rhs, || format!("matrix oracle: commutation fails at ({k}, {l})"))?;
            let normal = Heis::x().pow(k).mul(&Heis::y().pow(l));
            ensure(heis_m3(&normal) == lhs, || format!("normal form differs at ({k}, {l})"))?;
        }
    }
    for n in 0..=20 {
        let w = Heis::power_word(n);
        let expected = m3_pow(&z, -n * n);
        ensure(heis_m3(&w) == expected, || format!("power word at n = {n}"))?;
    }
    Ok(format!(
        "{} commutation cases, {} power words, {} matrix pairs, matrix oracle agrees",
        r.commutation_cases, r.power_word_cases, r.matrix_pairs
    ))
}

// 5
fn lemma_sweep() -> Outcome {
    let orders = HeisOrder::all();
    ensure(orders.len() == 16, || format!("{} orders", orders.len()))?;
    let (x, y, z) = (Heis::x(), Heis::y(), Heis::z());
    let sample = [x.clone(), y.clone(), z.clone(), x.inv(), y.inv(), z.inv(), x.mul(&y), x.mul(&z.pow(3)), y.pow(2).mul(&z.inv()), z.pow(5)];
    let mut counts = [0usize; 3];
    for o in &orders {
        let v = o.verify_lemma().map_err(|e| format!("{o}: {e}"))?;
        counts[v as usize] += 1;
        for g in &sample {
            for h in &sample {
                ensure(o.archimedean_lt(g, h) == o.archimedean_lt_sampled(g, h, 100), || format!("{o}: ≪ disagrees on ({g}, {h})"))?;
            }
        }
    }
    Ok(format!("16 orders: z<<x only {}, z<<y only {}, both {}; sampled check agrees at N = 100", counts[0], counts[1], counts[2]))
}

// 6
fn sl3_engine() -> Outcome {
    let ts = verify_heis_triples().map_err(e2s)?;
    ensure(ts.len() == 6 && ts.iter().all(|t| t.central), || "triples".into())?;
    for t in &ts {
        let c = elementary(t.x).commutator(&elementary(t.y)).map_err(e2s)?;
        let ez = elementary(t.z);
        let want = if t.sign > 0 { ez } else { ez.inverse().map_err(e2s)? };
        ensure(c == want, || format!("[<{}>, <{}>] is not <{}>^{}", t.x, t.y, t.z, t.sign))?;
    }
    let mut lines = Vec::new();
    for (l, r) in [(2, 1), (2, 3)] {
        let initial = LlFact::new(l, r).map_err(e2s)?;
        let trace = sl3_contradiction(initial).map_err(e2s)?;
        let check = check_trace(&trace).map_err(e2s)?;
        ensure(trace.lemma_applications() == 6 && check.lemma_applications == 6, || format!("{initial}: {} lemma applications", trace.lemma_applications()))?;
        ensure(check.contradiction.is_some(), || format!("{initial}: checker found no contradiction"))?;
        lines.push(format!("{initial} -> {}", check.contradiction.unwrap()));
    }
    Ok(format!("six triples verified; {} in 6 lemma applications each; traces replay", lines.join(", ")))
}

// 7
fn bounded_reduction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut max_ops, mut fallbacks) = (0, 0);
    for i in 0..100 {
        let m = random_sl2z(&mut rng, 6, 4);
        let pm = pinv_from_int(&m, 2).map_err(e2s)?;
        let r = bounded_reduce(&pm, 10_000).map_err(|e| format!("sample {i}: {e}"))?;
        ensure(r.steps.len() <= 5, || format!("sample {i}: {} ops", r.steps.len()))?;
        ensure(r.steps.iter().all(|s| s.intermediate.det().is_one()), || format!("sample {i}: determinant drifts"))?;
        ensure(r.steps.last().map_or(pm.is_identity(), |s| s.intermediate.is_identity()), || format!("sample {i}: does not end at I"))?;
        max_ops = max_ops.max(r.steps.len());
        fallbacks += r.path.used_fallback() as usize;
    }
    let powers = power_list(&BigInt::from(3), 7).map_err(e2s)?;
    ensure(powers == [3, 2, 6, 4, 5, 1], || format!("powers of 3 mod 7: {powers:?}"))?;
    ensure(primitive_root_check(&BigInt::from(3), 7).map_err(e2s)?, || "3 not primitive mod 7".into())?;
    let counts: Vec<usize> = (1..=12).map(|n| euclid_reduce(&fib_power::<BigInt>(n)).map(|s| s.len())).collect::<Result<_, _>>().map_err(e2s)?;
    ensure(counts.windows(2).all(|w| w[0] < w[1]), || format!("euclid counts {counts:?}"))?;
    Ok(format!("100 samples in <= {max_ops} ops ({fallbacks} via unit-residue pivot); 3 mod 7: {powers:?}; euclid counts {counts:?}"))
}

type R2 = [[Rational; 2]; 2];

fn r2_mul(a: &R2, b: &R2) -> R2 {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

// 8
fn diag_conjugation_identity() -> Outcome {
    let mut cases = 0;
    for p in [2u64, 3, 5] {
        for n in 0..=6i64 {
            for u in [1i64, -1, 3, -3] {
                let pn = Rational::from_integer(BigInt::from(p).pow(n as u32));
                let (o, z) = (Rational::one(), Rational::zero());
                let d = [[pn.clone(), z.clone()], [z.clone(), pn.recip()]];
                let d_inv = [[pn.recip(), z.clone()], [z.clone(), pn.clone()]];
                let ur = Rational::from_integer(u.into());
                for kind in [Unipotent::Upper, Unipotent::Lower] {
                    let e = match kind {
                        Unipotent::Upper => [[o.clone(), ur.clone()], [z.clone(), o.clone()]],
                        Unipotent::Lower => [[o.clone(), z.clone()], [ur.clone(), o.clone()]],
                    };
                    let oracle = r2_mul(&r2_mul(&d, &e), &d_inv);
                    let closed = diag_conjugation(&PInvScalar::from_int(u, p), n, kind);
                    let (one, zero, us) = (PInvScalar::one(p), PInvScalar::zero(p), PInvScalar::from_int(u, p));
                    let unip = match kind {
                        Unipotent::Upper => PInvMat2::new(one.clone(), us, zero, one),
                        Unipotent::Lower => PInvMat2::new(one.clone(), zero, us, one),
                    }
                    .map_err(e2s)?;
                    let product = diag_power(p, n).mul(&unip).mul(&diag_power(p, -n));
                    ensure(product == closed, || format!("triple product differs at p = {p}, n = {n}, u = {u}"))?;
                    let rows = closed.rows();
                    let got: Vec<Rational> = rows.iter().flatten().map(|x| x.to_rational()).collect();
                    let want: Vec<Rational> = oracle.iter().flatten().cloned().collect();
                    ensure(got == want, || format!("p = {p}, n = {n}, u = {u}, {kind:?}: {got:?} vs {want:?}"))?;
                    if kind == Unipotent::Upper {
                        let expected = &pn * &pn * &ur;
                        ensure(oracle[0][1] == expected, || format!("p^2n u at p = {p}, n = {n}"))?;
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} conjugations match the triple-product oracle"))
}

// 9
fn amenability() -> Outcome {
    let s = [ZVec::unit(2, 0), ZVec::unit(2, 1)];
    let b = folner_box(2, &s, &q(1, 10), 10_000).map_err(e2s)?;
    ensure(b.n == 11 && b.report.passed, || format!("n = {}", b.n))?;
    // brute-force overlap count on [0,n)^2 shifted by e1
    let passes = |n: i64| {
        let inside = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, _)| i + 1 < n).count() as i64;
        10 * inside > 9 * n * n
    };
    ensure(!passes(10) && passes(11), || "oracle disagrees on the threshold".into())?;

    let r = build_ponzi_free(2, 6).map_err(e2s)?;
    ensure(r.wealth_identity == 5 && r.wealth_interior == [3], || format!("wealth {} at e, {:?} inside", r.wealth_identity, r.wealth_interior))?;
    ensure(r.conserved && r.total_wealth == r.ball_size && r.passed, || "wealth not conserved".into())?;
    // oracle: every nonidentity word hands its dollar to its prefix, e keeps its own
    let words = ball(2, 6, usize::MAX).map_err(e2s)?;
    let mut wealth = std::collections::HashMap::<ReducedWord, usize>::new();
    for w in &words {
        *wealth.entry(if w.is_identity() { w.clone() } else { w.drop_last() }).or_default() += 1;
    }
    let e = ReducedWord::identity(2);
    ensure(wealth[&e] == 5, || "oracle wealth at e".into())?;
    ensure(words.iter().filter(|w| !w.is_identity() && w.len() < 6).all(|w| wealth[w] == 3), || "oracle interior wealth".into())?;
    ensure(wealth.values().sum::<usize>() == words.len(), || "oracle conservation".into())?;

    let (_, p) = build_paradoxical_f2(4).map_err(e2s)?;
    ensure(p.passed && p.ball_size == 161, || format!("{p:?}"))?;
    Ok(format!("Følner n = {}, Ponzi f1 = {} inside / {} at e over {} words, paradox on {} words", b.n, r.wealth_interior[0], r.wealth_identity, r.ball_size, p.ball_size))
}

fn fixes_on_circle(f: &CircleLift, p: &Rational) -> bool {
    (f.eval(p) - p).is_integer()
}

// 10
fn circle() -> Outcome {
    let sweep = cocycle_sweep(10, 1000, 1000, 4, 24).map_err(e2s)?;
    ensure(sweep.passed && sweep.zeros + sweep.ones == 1000 && sweep.identity_failures == 0, || format!("{sweep:?}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut fixed = 0;
    for _ in 0..8 {
        let p = q(rng.gen_range(0..36), 36);
        let gens: Vec<CircleLift> = (0..2)
            .map(|_| {
                let f: CircleLift = random_lift_fixing_zero(&mut rng, 3, 12);
                let rp = CircleLift::rotation(p.clone());
                rp.compose(&f).compose(&rp.inverse())
            })
            .collect();
        let phi = primitive_at(&gens, &p, 6).map_err(e2s)?;
        let r = fixed_point_from_primitive(&gens, |w| phi[w], 6).map_err(e2s)?;
        let FixedPointVerdict::Fixed { point, .. } = &r.verdict else {
            return Err(format!("family with fixed point {p}: {:?}", r.verdict));
        };
        let pt: Rational = point.parse().map_err(|_| format!("bad point {point}"))?;
        ensure(gens.iter().all(|g| fixes_on_circle(g, &pt)), || format!("{pt} is not fixed"))?;
        fixed += 1;
    }
    let r3 = CircleLift::rotation(q(1, 3));
    let r = fixed_point_from_primitive(&[r3], |w| w.syllables().iter().map(|&(_, e)| e).sum::<i64>().div_euclid(3), 6).map_err(e2s)?;
    ensure(matches!(r.verdict, FixedPointVerdict::NoFixedPoint { .. }), || format!("r_1/3: {:?}", r.verdict))?;

    let mut rotations = 0;
    for den in 1..=12i64 {
        for num in (0..den).filter(|n| n.gcd(&den) == 1) {
            let rep = rotation_number(&CircleLift::rotation(q(num, den)), 100, 12).map_err(e2s)?;
            let exact: Option<Rational> = rep.exact.as_deref().and_then(|s| s.parse().ok());
            ensure(exact == Some(q(num, den)) && rep.orbit.len() == den as usize, || format!("r_{num}/{den}: {rep:?}"))?;
            rotations += 1;
        }
    }
    Ok(format!(
        "cocycle {} zeros / {} ones, 1000 identities; {fixed} fixed-point families; r_1/3 negative; {rotations} rotations exact",
        sweep.zeros, sweep.ones
    ))
}

// 11
fn carter_keller() -> Outcome {
    let n = 3u64;
    let b = carter_keller_bound(n);
    ensure(b == (3 * n * n - n) / 2 + 36 && b == 48, || format!("bound {b}"))?;
    Ok(format!("n = 3: {b}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("euclid worked example", euclid_example),
        ("Brooks worked values", brooks_values),
        ("Brooks defect bound on ball(2,4)^2", defect_bound),
        ("Heisenberg identities", heisenberg_identities),
        ("lexicographic orders on H", lemma_sweep),
        ("SL(3,Z) derivation engine", sl3_engine),
        ("bounded reduction over Z[1/2]", bounded_reduction),
        ("diagonal conjugation", diag_conjugation_identity),
        ("amenability witnesses", amenability),
        ("circle: Euler cocycle, fixed points, rotation", circle),
        ("Carter-Keller constant", carter_keller),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
