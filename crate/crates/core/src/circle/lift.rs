use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::IntScalar;

/// Degree-one lift `f: R → R` of a piecewise-linear circle homeomorphism.
///
/// Stored as the breakpoints `0 = t₀ < t₁ < … < t_{m−1} < 1` and the values
/// `f(tᵢ)`; `f` is linear between consecutive breakpoints, the last segment
/// ending at `(1, f(0) + 1)`, and `f(t + 1) = f(t) + 1`. The form is
/// canonical: `0` is always a breakpoint and no other breakpoint sits inside
/// a straight segment, so equal maps compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlCircleLift<T: IntScalar> {
    pts: Vec<(Ratio<T>, Ratio<T>)>,
}

fn frac<T: IntScalar>(x: &Ratio<T>) -> Ratio<T> {
    x - x.floor()
}

impl<T: IntScalar> PlCircleLift<T> {
    /// Builds a lift from breakpoints in `[0, 1)` and their values. Values
    /// must increase strictly, and stay below `values[0] + 1`.
    pub fn new(breakpoints: Vec<Ratio<T>>, values: Vec<Ratio<T>>) -> Result<Self> {
        if breakpoints.is_empty() || breakpoints.len() != values.len() {
            return Err(Error::Parse("need the same positive number of breakpoints and values".into()));
        }
        let (zero, one) = (Ratio::<T>::zero(), Ratio::<T>::one());
        if breakpoints.iter().any(|t| *t < zero || *t >= one) {
            return Err(Error::NotMonotone("breakpoints must lie in [0, 1)".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotMonotone("breakpoints must increase strictly".into()));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) || *values.last().expect("nonempty") >= &values[0] + &one {
            return Err(Error::NotMonotone(format!("values {} are not strictly increasing mod 1", join(&values))));
        }
        Ok(Self::from_sorted(breakpoints.into_iter().zip(values).collect()))
    }

    /// Canonicalizes points already known to describe a monotone lift.
    fn from_sorted(mut pts: Vec<(Ratio<T>, Ratio<T>)>) -> Self {
        if !pts[0].0.is_zero() {
            let raw = Self { pts: pts.clone() };
            let v0 = raw.eval(&Ratio::zero());
            pts.insert(0, (Ratio::zero(), v0));
        }
        let one = Ratio::<T>::one();
        let m = pts.len();
        let mut keep = vec![true; m];
        for i in 1..m {
            let (t0, v0) = &pts[i - 1];
            let (t1, v1) = &pts[i];
            let (t2, v2) = if i + 1 < m { (pts[i + 1].0.clone(), pts[i + 1].1.clone()) } else { (one.clone(), &pts[0].1 + &one) };
            if (v1 - v0) * (&t2 - t1) == (&v2 - v1) * (t1 - t0) {
                keep[i] = false;
            }
        }
        let mut i = 0;
        pts.retain(|_| {
            i += 1;
            keep[i - 1]
        });
        Self { pts }
    }

    pub fn identity() -> Self {
        Self::rotation(Ratio::zero())
    }

    /// `t ↦ t + α`.
    pub fn rotation(alpha: Ratio<T>) -> Self {
        Self { pts: vec![(Ratio::zero(), alpha)] }
    }

    pub fn breakpoints(&self) -> Vec<Ratio<T>> {
        self.pts.iter().map(|p| p.0.clone()).collect()
    }

    pub fn values(&self) -> Vec<Ratio<T>> {
        self.pts.iter().map(|p| p.1.clone()).collect()
    }

    /// `(tᵢ, f(tᵢ))` for the breakpoints in `[0, 1)`.
    pub fn points(&self) -> &[(Ratio<T>, Ratio<T>)] {
        &self.pts
    }

    /// Translation amount when the lift is a rotation.
    pub fn as_rotation(&self) -> Option<&Ratio<T>> {
        (self.pts.len() == 1).then(|| &self.pts[0].1)
    }

    pub fn is_identity(&self) -> bool {
        self.as_rotation().is_some_and(|a| a.is_zero())
    }

    /// The straight segment of the lift over `[tᵢ, tᵢ₊₁]`, for `i` in
    /// `0..m`; the last one ends at `(1, f(0) + 1)`.
    pub fn segment(&self, i: usize) -> ((Ratio<T>, Ratio<T>), (Ratio<T>, Ratio<T>)) {
        let one = Ratio::<T>::one();
        let a = self.pts[i].clone();
        let b = if i + 1 < self.pts.len() { self.pts[i + 1].clone() } else { (one.clone(), &self.pts[0].1 + &one) };
        (a, b)
    }

    pub fn segments(&self) -> usize {
        self.pts.len()
    }

    pub fn eval(&self, x: &Ratio<T>) -> Ratio<T> {
        let n = x.floor();
        let y = x - &n;
        // pts[0].0 may be > 0 only transiently, inside from_sorted
        let m = self.pts.len();
        let one = Ratio::<T>::one();
        let i = self.pts.partition_point(|p| p.0 <= y);
        let ((t0, v0), (t1, v1)) = if i == 0 {
            let (tl, vl) = &self.pts[m - 1];
            ((tl - &one, vl - &one), self.pts[0].clone())
        } else if i < m {
            (self.pts[i - 1].clone(), self.pts[i].clone())
        } else {
            (self.pts[m - 1].clone(), (&self.pts[0].0 + &one, &self.pts[0].1 + &one))
        };
        let v = if y == t0 { v0 } else { &v0 + (&v1 - &v0) * (&y - &t0) / (&t1 - &t0) };
        v + n
    }

    /// `t ↦ f(t) + n`.
    pub fn shift(&self, n: &Ratio<T>) -> Self {
        Self { pts: self.pts.iter().map(|(t, v)| (t.clone(), v + n)).collect() }
    }

    /// `self ∘ g`: first `g`, then `self`.
    pub fn compose(&self, g: &Self) -> Self {
        let g_inv = g.inverse();
        let mut ts: Vec<Ratio<T>> = g.pts.iter().map(|p| p.0.clone()).collect();
        ts.extend(self.pts.iter().map(|(s, _)| frac(&g_inv.eval(s))));
        ts.sort();
        ts.dedup();
        let pts = ts.into_iter().map(|t| {
            let v = self.eval(&g.eval(&t));
            (t, v)
        });
        Self::from_sorted(pts.collect())
    }

    pub fn inverse(&self) -> Self {
        let mut pts: Vec<(Ratio<T>, Ratio<T>)> = self
            .pts
            .iter()
            .map(|(t, v)| {
                let n = v.floor();
                (v - &n, t - &n)
            })
            .collect();
        pts.sort();
        Self::from_sorted(pts)
    }

    /// `f^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity();
        for _ in 0..n.unsigned_abs() {
            acc = base.compose(&acc);
        }
        acc
    }

    /// The integer shift with `0 ≤ f(0) < 1`.
    pub fn normalize(&self) -> Self {
        let f0 = self.eval(&Ratio::zero());
        self.shift(&-f0.floor())
    }

    pub fn is_normalized(&self) -> bool {
        let f0 = &self.pts[0].1;
        !(*f0 < Ratio::zero()) && *f0 < Ratio::one()
    }

    /// Degree-one and monotonicity at the stored breakpoints.
    pub fn check_invariants(&self) -> bool {
        let one = Ratio::<T>::one();
        self.pts[0].0.is_zero()
            && self.pts.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1)
            && self.pts.last().expect("nonempty").1 < &self.pts[0].1 + &one
            && self.pts.iter().all(|(t, v)| self.eval(&(t + &one)) == v + &one)
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

impl<T: IntScalar> fmt::Display for PlCircleLift<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rotation() {
            Some(a) => write!(f, "rot({a})"),
            None => {
                write!(f, "pl[")?;
                for (i, (t, v)) in self.pts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{t}->{v}")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// `{"breakpoints": [...], "values": [...]}` with rationals as strings.
impl<T: IntScalar> Serialize for PlCircleLift<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let strs = |v: Vec<Ratio<T>>| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let mut st = s.serialize_struct("PlCircleLift", 2)?;
        st.serialize_field("breakpoints", &strs(self.breakpoints()))?;
        st.serialize_field("values", &strs(self.values()))?;
        st.end()
    }
}

/// Parses `"p/q"`, `"n"` (or a JSON integer) as an exact rational.
pub fn parse_ratio<T: IntScalar>(v: &serde_json::Value) -> Result<Ratio<T>> {
    let bad = || Error::Parse(format!("expected a rational, got {v}"));
    let s = match v {
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Number(n) if n.is_i64() => n.to_string(),
        _ => return Err(bad()),
    };
    let parse_int = |x: &str| x.trim().parse::<i64>().map(T::lit).map_err(|_| bad());
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Ratio::new(parse_int(n)?, d))
        }
        None => Ok(Ratio::from_integer(parse_int(&s)?)),
    }
}

/// Parses a map literal: `{"breakpoints": [..], "values": [..]}` or `{"rot": "p/q"}`.
pub fn parse_lift<T: IntScalar>(v: &serde_json::Value) -> Result<PlCircleLift<T>> {
    if let Some(r) = v.get("rot") {
        return Ok(PlCircleLift::rotation(parse_ratio(r)?));
    }
    let list = |key: &str| -> Result<Vec<Ratio<T>>> {
        v.get(key)
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Parse(format!("map literal needs a \"{key}\" array")))?
            .iter()
            .map(parse_ratio)
            .collect()
    };
    PlCircleLift::new(list("breakpoints")?, list("values")?)
}

fn distinct_sorted<T: IntScalar, R: Rng>(rng: &mut R, m: usize, lo: i64, den: i64) -> Vec<Ratio<T>> {
    let mut picks: Vec<i64> = Vec::with_capacity(m);
    while picks.len() < m {
        let k = rng.gen_range(lo..den);
        if !picks.contains(&k) {
            picks.push(k);
        }
    }
    picks.sort_unstable();
    picks.into_iter().map(|k| Ratio::new(T::lit(k), T::lit(den))).collect()
}

/// Random lift with `m` breakpoints on the grid `1/den`, values on the same
/// grid plus a random offset in `[0, 1)`.
pub fn random_lift<T: IntScalar, R: Rng>(rng: &mut R, m: usize, den: i64) -> PlCircleLift<T> {
    assert!(m >= 1 && den >= m as i64);
    let ts = distinct_sorted(rng, m, 0, den);
    let ws: Vec<Ratio<T>> = distinct_sorted(rng, m, 0, den);
    let offset = Ratio::new(T::lit(rng.gen_range(0..den)), T::lit(den));
    let vs = ws.into_iter().map(|w| w + &offset).collect();
    PlCircleLift::new(ts, vs).expect("monotone by construction")
}

/// Random lift fixing `0`: the other `m − 1` breakpoints and their values
/// are drawn from `(0, 1)` on the grid `1/den`.
pub fn random_lift_fixing_zero<T: IntScalar, R: Rng>(rng: &mut R, m: usize, den: i64) -> PlCircleLift<T> {
    assert!(m >= 1 && den > m as i64);
    let mut ts = vec![Ratio::zero()];
    ts.extend(distinct_sorted(rng, m - 1, 1, den));
    let mut vs = vec![Ratio::zero()];
    vs.extend(distinct_sorted(rng, m - 1, 1, den));
    PlCircleLift::new(ts, vs).expect("monotone by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CircleLift;
    use num_bigint::BigInt;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type Q = Ratio<BigInt>;

    fn q(n: i64, d: i64) -> Q {
        Ratio::new(n.into(), d.into())
    }

    fn three_break() -> CircleLift {
        CircleLift::new(vec![q(0, 1), q(1, 3), q(1, 2)], vec![q(1, 10), q(1, 5), q(4, 5)]).unwrap()
    }

    #[test]
    fn rotations_add() {
        let r = CircleLift::rotation(q(1, 3));
        assert_eq!(r.compose(&r), CircleLift::rotation(q(2, 3)));
        assert_eq!(CircleLift::rotation(q(7, 3)).normalize(), CircleLift::rotation(q(1, 3)));
        assert_eq!(CircleLift::rotation(q(-1, 4)).normalize(), CircleLift::rotation(q(3, 4)));
    }

    #[test]
    fn inverse_cancels() {
        let f = three_break();
        assert!(f.compose(&f.inverse()).is_identity());
        assert!(f.inverse().compose(&f).is_identity());
        assert_eq!(f.compose(&CircleLift::identity()), f);
        for k in -50..50 {
            let x = q(k, 37);
            assert_eq!(f.inverse().eval(&f.eval(&x)), x);
        }
    }

    #[test]
    fn construction_rejects_non_monotone() {
        assert!(CircleLift::new(vec![q(0, 1), q(1, 2)], vec![q(1, 2), q(1, 4)]).is_err());
        assert!(CircleLift::new(vec![q(0, 1), q(1, 2)], vec![q(0, 1), q(1, 1)]).is_err());
        assert!(CircleLift::new(vec![q(1, 2), q(1, 2)], vec![q(0, 1), q(1, 3)]).is_err());
        assert!(CircleLift::new(vec![q(1, 1)], vec![q(0, 1)]).is_err());
    }

    #[test]
    fn canonical_form_drops_straight_points() {
        let f = CircleLift::new(vec![q(1, 4), q(1, 2)], vec![q(1, 4), q(1, 2)]).unwrap();
        assert!(f.is_identity());
        assert_eq!(three_break().breakpoints().len(), 3);
    }

    #[test]
    fn random_lifts_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let f: CircleLift = random_lift(&mut rng, 4, 12);
            let g: CircleLift = random_lift_fixing_zero(&mut rng, 3, 10);
            assert!(f.check_invariants() && g.check_invariants());
            assert!(g.eval(&q(0, 1)).is_zero());
            assert!(f.compose(&g).check_invariants());
        }
    }

    #[test]
    fn json_literals() {
        let v: serde_json::Value = serde_json::from_str(r#"{"breakpoints": ["0", "1/2"], "values": ["1/4", "1/2"]}"#).unwrap();
        let f: CircleLift = parse_lift(&v).unwrap();
        assert_eq!(f.eval(&q(1, 4)), q(3, 8));
        let r: CircleLift = parse_lift(&serde_json::json!({"rot": "2/3"})).unwrap();
        assert_eq!(r, CircleLift::rotation(q(2, 3)));
        assert!(parse_lift::<BigInt>(&serde_json::json!({"rot": "1/0"})).is_err());
        assert!(parse_lift::<BigInt>(&serde_json::json!({"values": []})).is_err());
    }
}
