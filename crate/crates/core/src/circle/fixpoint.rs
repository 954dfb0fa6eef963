use std::collections::HashMap;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::euler::euler_cocycle;
use super::lift::PlCircleLift;
use crate::error::{Error, Result};
use crate::freegroup::{ball, ReducedWord};
use crate::scalar::IntScalar;

/// Closed interval `[lo, hi]` of `[0, 1)`; `lo == hi` for an isolated point.
pub type FixInterval<T> = (Ratio<T>, Ratio<T>);

/// Fixed points of the lift in `[0, 1)`, as sorted disjoint closed intervals.
///
/// `F(t) − t` is linear on each segment, so its zeros are a point or the
/// whole segment. A zero at `1` is the zero at `0` again.
pub fn fixed_points<T: IntScalar>(f: &PlCircleLift<T>) -> Vec<FixInterval<T>> {
    let one = Ratio::<T>::one();
    let mut out: Vec<FixInterval<T>> = Vec::new();
    for i in 0..f.segments() {
        let ((t0, v0), (t1, v1)) = f.segment(i);
        let d0 = &v0 - &t0;
        let d1 = &v1 - &t1;
        if d0.is_zero() && d1.is_zero() {
            out.push((t0, t1));
        } else if d0.is_zero() || d1.is_zero() || d0.is_positive() != d1.is_positive() {
            let t = &t0 + (&t1 - &t0) * &d0 / (&d0 - &d1);
            out.push((t.clone(), t));
        }
    }
    // a point zero at 1 is the one at 0
    let mut folded = Vec::new();
    for (lo, hi) in out {
        if lo == one {
            folded.push((Ratio::zero(), Ratio::zero()));
        } else {
            folded.push((lo, hi));
        }
    }
    merge(folded)
}

fn merge<T: IntScalar>(mut xs: Vec<FixInterval<T>>) -> Vec<FixInterval<T>> {
    xs.sort();
    let mut out: Vec<FixInterval<T>> = Vec::new();
    for (lo, hi) in xs {
        match out.last_mut() {
            Some(last) if lo <= last.1 => {
                if hi > last.1 {
                    last.1 = hi;
                }
            }
            _ => out.push((lo, hi)),
        }
    }
    out
}

/// Intersection of two sorted disjoint interval lists.
pub fn intersect<T: IntScalar>(a: &[FixInterval<T>], b: &[FixInterval<T>]) -> Vec<FixInterval<T>> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let lo = std::cmp::max(&a[i].0, &b[j].0).clone();
        let hi = std::cmp::min(&a[i].1, &b[j].1).clone();
        if lo <= hi {
            out.push((lo, hi));
        }
        if a[i].1 < b[j].1 {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}

/// Points of `[0, 1)` fixed by every lift.
pub fn common_fixed_points<T: IntScalar>(fs: &[PlCircleLift<T>]) -> Vec<FixInterval<T>> {
    let mut acc = vec![(Ratio::zero(), Ratio::one())];
    for f in fs {
        acc = intersect(&acc, &fixed_points(f));
    }
    acc
}

/// Normalized lifts of every word in the ball of radius `r`, built from the
/// parent word so each needs one composition.
pub fn word_lifts<T: IntScalar>(gens: &[PlCircleLift<T>], r: usize) -> Result<Vec<(ReducedWord, PlCircleLift<T>)>> {
    let k = gens.len();
    if k == 0 {
        return Err(Error::Precondition("need at least one generator".into()));
    }
    let letters: Vec<PlCircleLift<T>> = gens.iter().flat_map(|g| [g.normalize(), g.inverse().normalize()]).collect();
    let words = ball(k, r, usize::MAX)?;
    let mut lifts: HashMap<ReducedWord, PlCircleLift<T>> = HashMap::with_capacity(words.len());
    let mut out = Vec::with_capacity(words.len());
    for w in words {
        let f = match w.last_letter() {
            None => PlCircleLift::identity(),
            Some(l) => {
                let parent = &lifts[&w.drop_last()];
                parent.compose(&letters[l.index()]).normalize()
            }
        };
        lifts.insert(w.clone(), f.clone());
        out.push((w, f));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FixedPointVerdict {
    /// Exactly invariant under every sampled adjusted lift.
    Fixed { point: String, lifted: String, sampled_sup: String, sup_attained: bool },
    /// The adjusted generators share no fixed point, so the orbit of 0 is unbounded.
    NoFixedPoint { sampled_sup: String },
    /// `c(x, y) ≠ φ(xy) − φ(x) − φ(y)` on a sampled pair.
    PrimitiveMismatch { x: String, y: String, cocycle: i64, coboundary: i64 },
    /// `|ĝ(0)| > 1 + max|φ|` for a sampled word.
    BoundViolation { word: String, value: String, bound: i64 },
}

impl FixedPointVerdict {
    pub fn is_fixed(&self) -> bool {
        matches!(self, FixedPointVerdict::Fixed { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPointReport {
    /// Certificates cover words of length at most this.
    pub radius: usize,
    pub words: usize,
    pub pairs_checked: usize,
    pub phi_max: i64,
    #[serde(flatten)]
    pub verdict: FixedPointVerdict,
}

/// From a candidate primitive `φ` of the Euler cocycle, builds the adjusted
/// lifts `ĝ = g̃ + φ(g)` on the ball of radius `radius` and locates the
/// supremum of the orbit of 0.
///
/// The primitive is checked on all pairs from the ball of half the radius.
/// The supremum of the full orbit is the least common fixed point `≥ 0` of
/// the adjusted generators, found exactly from the PL data; it is then
/// checked to be fixed by every sampled adjusted lift.
pub fn fixed_point_from_primitive<T, F>(gens: &[PlCircleLift<T>], phi: F, radius: usize) -> Result<FixedPointReport>
where
    T: IntScalar,
    F: Fn(&ReducedWord) -> i64,
{
    let lifts = word_lifts(gens, radius)?;
    let index: HashMap<&ReducedWord, usize> = lifts.iter().enumerate().map(|(i, (w, _))| (w, i)).collect();
    let phis: Vec<i64> = lifts.iter().map(|(w, _)| phi(w)).collect();
    let phi_max = phis.iter().map(|x| x.abs()).max().unwrap_or(0);
    let report = |pairs_checked, verdict| FixedPointReport { radius, words: lifts.len(), pairs_checked, phi_max, verdict };

    let half = lifts.iter().take_while(|(w, _)| w.len() <= radius / 2).count();
    let mut pairs_checked = 0;
    for i in 0..half {
        for j in 0..half {
            let (x, fx) = &lifts[i];
            let (y, fy) = &lifts[j];
            let xy = x.multiply(y)?;
            let c = euler_cocycle(fx, fy)?;
            let d = phis[index[&xy]] - phis[i] - phis[j];
            pairs_checked += 1;
            if c != d {
                let v = FixedPointVerdict::PrimitiveMismatch { x: x.to_string(), y: y.to_string(), cocycle: c, coboundary: d };
                return Ok(report(pairs_checked, v));
            }
        }
    }

    let adjusted: Vec<PlCircleLift<T>> = lifts.iter().zip(&phis).map(|((_, f), &n)| f.shift(&Ratio::from_integer(T::lit(n)))).collect();
    let bound = 1 + phi_max;
    let mut sampled_sup = Ratio::<T>::zero();
    for ((w, _), g) in lifts.iter().zip(&adjusted) {
        let v = g.eval(&Ratio::zero());
        if v.abs() > Ratio::from_integer(T::lit(bound)) {
            let v = FixedPointVerdict::BoundViolation { word: w.to_string(), value: v.to_string(), bound };
            return Ok(report(pairs_checked, v));
        }
        if v > sampled_sup {
            sampled_sup = v;
        }
    }

    let gen_lifts: Vec<PlCircleLift<T>> = (0..gens.len())
        .map(|i| {
            let w = ReducedWord::generator(gens.len(), i).expect("in range");
            adjusted[index[&w]].clone()
        })
        .collect();
    let fix = common_fixed_points(&gen_lifts);
    let Some((p, _)) = fix.first().cloned() else {
        return Ok(report(pairs_checked, FixedPointVerdict::NoFixedPoint { sampled_sup: sampled_sup.to_string() }));
    };
    // the common fixed set is invariant under integer translation, so the
    // least point ≥ 0 lies in [0, 1)
    for ((w, _), g) in lifts.iter().zip(&adjusted) {
        if g.eval(&p) != p {
            return Err(Error::Violation(format!("{p} is fixed by the generators but moved by {w}")));
        }
    }
    if sampled_sup > p {
        return Err(Error::Violation(format!("sampled orbit reaches {sampled_sup}, beyond the fixed point {p}")));
    }
    let v = FixedPointVerdict::Fixed {
        point: (&p - p.floor()).to_string(),
        lifted: p.to_string(),
        sup_attained: sampled_sup == p,
        sampled_sup: sampled_sup.to_string(),
    };
    Ok(report(pairs_checked, v))
}

/// A primitive for generators sharing the fixed point `p`: `φ(w)` is the
/// integer part of `L_w(0)`, where `L_w` is the lift of `w` fixing `p`.
pub fn primitive_at<T: IntScalar>(gens: &[PlCircleLift<T>], p: &Ratio<T>, radius: usize) -> Result<HashMap<ReducedWord, i64>> {
    for g in gens {
        if !(g.eval(p) - p).is_integer() {
            return Err(Error::Precondition(format!("{p} is not fixed by {g} on the circle")));
        }
    }
    word_lifts(gens, radius)?
        .into_iter()
        .map(|(w, f)| {
            let based = f.shift(&(p - f.eval(p)));
            let n = based.eval(&Ratio::zero()).floor().to_integer();
            let n = n.to_i64().ok_or_else(|| Error::Violation(format!("primitive value {n} overflows")))?;
            Ok((w, n))
        })
        .collect()
}
