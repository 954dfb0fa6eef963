use num_rational::Ratio;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::lift::{random_lift, PlCircleLift};
use crate::error::{Error, Result};
use crate::scalar::IntScalar;

const SAMPLE_POINTS: i64 = 10;

/// The lift `f + n` (n an integer) with `p ≤ f(p) + n < p + 1`.
pub fn normalize_at<T: IntScalar>(f: &PlCircleLift<T>, p: &Ratio<T>) -> PlCircleLift<T> {
    let d = f.eval(p) - p;
    f.shift(&-d.floor())
}

fn to_i64<T: IntScalar>(x: &Ratio<T>) -> Result<i64> {
    x.to_integer().to_i64().ok_or_else(|| Error::Violation(format!("cocycle value {x} does not fit in i64")))
}

/// Euler cocycle of two lifts based at `p`: `g(h(t)) − N(g∘h)(t)` where `N`
/// normalizes at `p`. The difference is checked to be the same integer at
/// ten points of `[0, 1)`.
pub fn euler_cocycle_at<T: IntScalar>(g: &PlCircleLift<T>, h: &PlCircleLift<T>, p: &Ratio<T>) -> Result<i64> {
    for (name, f) in [("g", g), ("h", h)] {
        if normalize_at(f, p) != *f {
            return Err(Error::Precondition(format!("{name} = {f} is not normalized at {p}")));
        }
    }
    let gh = normalize_at(&g.compose(h), p);
    let c = g.eval(&h.eval(p)) - gh.eval(p);
    if !c.is_integer() {
        return Err(Error::Violation(format!("cocycle value {c} is not an integer")));
    }
    let den = T::lit(SAMPLE_POINTS);
    for j in 0..SAMPLE_POINTS {
        let t = Ratio::new(T::lit(j), den.clone());
        let ct = g.eval(&h.eval(&t)) - gh.eval(&t);
        if ct != c {
            return Err(Error::Violation(format!("cocycle depends on t: {c} at {p}, {ct} at {t}")));
        }
    }
    to_i64(&c)
}

/// `c(g, h) = g(h(0)) − normalize(g∘h)(0)` for normalized lifts; always 0 or 1.
pub fn euler_cocycle<T: IntScalar>(g: &PlCircleLift<T>, h: &PlCircleLift<T>) -> Result<i64> {
    euler_cocycle_at(g, h, &Ratio::zero())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CocycleIdentity {
    pub c_hk: i64,
    pub c_gh_k: i64,
    pub c_g_hk: i64,
    pub c_gh: i64,
    /// `c(h,k) − c(gh,k) + c(g,hk) − c(g,h)`.
    pub value: i64,
}

/// Evaluates the four-term coboundary of the Euler cocycle on a triple of
/// normalized lifts. A nonzero value is returned as a violation.
pub fn cocycle_identity_check<T: IntScalar>(g: &PlCircleLift<T>, h: &PlCircleLift<T>, k: &PlCircleLift<T>) -> Result<CocycleIdentity> {
    let gh = g.compose(h).normalize();
    let hk = h.compose(k).normalize();
    let c_hk = euler_cocycle(h, k)?;
    let c_gh_k = euler_cocycle(&gh, k)?;
    let c_g_hk = euler_cocycle(g, &hk)?;
    let c_gh = euler_cocycle(g, h)?;
    let value = c_hk - c_gh_k + c_g_hk - c_gh;
    if value != 0 {
        return Err(Error::Violation(format!("coboundary is {value} on ({g}, {h}, {k})")));
    }
    Ok(CocycleIdentity { c_hk, c_gh_k, c_g_hk, c_gh, value })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CocycleSweep {
    pub seed: u64,
    pub pairs: usize,
    pub zeros: usize,
    pub ones: usize,
    pub triples: usize,
    pub identity_failures: usize,
    pub passed: bool,
}

/// Seeded sweep over random normalized PL lifts: the cocycle on `pairs`
/// pairs (must land in {0, 1}) and the four-term identity on `triples`.
pub fn cocycle_sweep(seed: u64, pairs: usize, triples: usize, breakpoints: usize, den: i64) -> Result<CocycleSweep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || random_lift::<i64, _>(&mut rng, breakpoints, den).normalize();
    let (mut zeros, mut ones) = (0, 0);
    for _ in 0..pairs {
        let (g, h) = (draw(), draw());
        match euler_cocycle(&g, &h)? {
            0 => zeros += 1,
            1 => ones += 1,
            c => return Err(Error::Violation(format!("normalized cocycle {c} on ({g}, {h})"))),
        }
    }
    let mut identity_failures = 0;
    for _ in 0..triples {
        let (g, h, k) = (draw(), draw(), draw());
        match cocycle_identity_check(&g, &h, &k) {
            Ok(_) => {}
            Err(Error::Violation(_)) => identity_failures += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(CocycleSweep { seed, pairs, zeros, ones, triples, identity_failures, passed: identity_failures == 0 })
}
