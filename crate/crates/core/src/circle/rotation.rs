use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use super::fixpoint::fixed_points;
use super::lift::PlCircleLift;
use crate::error::{Error, Result};
use crate::scalar::IntScalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RotationReport {
    pub iterations: u32,
    /// `[lo, hi]` of width `1/N` containing the rotation number.
    pub lo: String,
    pub hi: String,
    pub exact: Option<String>,
    pub period: Option<u32>,
    /// A periodic orbit on `[0, 1)`, sorted.
    pub orbit: Vec<String>,
}

/// Bounds the rotation number of `f` from `f^N(0)`, then searches for a
/// periodic orbit `f^q(t) = t + p` with `q ≤ max_period`; when one exists
/// the rotation number is exactly `p/q`.
///
/// With `m = ⌊f^N(0)⌋` the rotation number lies in `[m/N, (m+1)/N]`: if
/// `f^N(t) − t − m` has no zero it is positive everywhere, so iterating
/// gives `f^{kN}(0) > km`, and likewise from above.
pub fn rotation_number<T: IntScalar>(f: &PlCircleLift<T>, iterations: u32, max_period: u32) -> Result<RotationReport> {
    if iterations == 0 {
        return Err(Error::Precondition("need at least one iteration".into()));
    }
    let zero = Ratio::<T>::zero();
    let mut x = zero.clone();
    for _ in 0..iterations {
        x = f.eval(&x);
    }
    let m = x.floor();
    let n = Ratio::from_integer(T::lit(iterations as i64));
    let lo = &m / &n;
    let hi = (&m + Ratio::one()) / &n;

    let mut fq = PlCircleLift::identity();
    for q in 1..=max_period {
        fq = f.compose(&fq);
        let base = fq.eval(&zero).floor();
        for p in [base.clone(), base + Ratio::one()] {
            let shifted = fq.shift(&-&p);
            let Some((s, _)) = fixed_points(&shifted).into_iter().next() else { continue };
            let mut orbit = Vec::with_capacity(q as usize);
            let mut t = s;
            for _ in 0..q {
                orbit.push(&t - t.floor());
                t = f.eval(&t);
            }
            orbit.sort();
            return Ok(RotationReport {
                iterations,
                lo: lo.to_string(),
                hi: hi.to_string(),
                exact: Some((&p / Ratio::from_integer(T::lit(q as i64))).to_string()),
                period: Some(q),
                orbit: orbit.iter().map(|t| t.to_string()).collect(),
            });
        }
    }
    Ok(RotationReport { iterations, lo: lo.to_string(), hi: hi.to_string(), exact: None, period: None, orbit: Vec::new() })
}
