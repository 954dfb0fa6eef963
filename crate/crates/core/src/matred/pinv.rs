use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::Rational;

/// An element `num / p^pexp` of `Z[1/p]`.
///
/// Canonical: when `pexp > 0`, `p` does not divide `num`; zero is `0/p^0`.
/// Equality and hashing are therefore structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PInvScalar {
    num: BigInt,
    pexp: u32,
    p: u64,
}

impl PInvScalar {
    pub fn new(num: BigInt, pexp: u32, p: u64) -> Self {
        assert!(p >= 2, "p must be at least 2");
        let mut s = Self { num, pexp, p };
        s.canonicalize();
        s
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.pexp = 0;
            return;
        }
        let (k, rest) = split_p(&self.num, self.p, self.pexp as u64);
        self.num = rest;
        self.pexp -= k as u32;
    }

    pub fn from_int(v: impl Into<BigInt>, p: u64) -> Self {
        Self::new(v.into(), 0, p)
    }

    pub fn zero(p: u64) -> Self {
        Self::from_int(0, p)
    }

    pub fn one(p: u64) -> Self {
        Self::from_int(1, p)
    }

    /// `p^k` for any integer `k`.
    pub fn p_power(p: u64, k: i64) -> Self {
        let mag = num_traits::pow(BigInt::from(p), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::new(mag, 0, p)
        } else {
            Self::new(BigInt::one(), k.unsigned_abs() as u32, p)
        }
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn pexp(&self) -> u32 {
        self.pexp
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.pexp == 0 && self.num.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.pexp == 0
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.num.clone())
    }

    /// Units of `Z[1/p]` are exactly `±p^k`.
    pub fn is_unit(&self) -> bool {
        !self.num.is_zero() && split_p(&self.num, self.p, u64::MAX).1.abs().is_one()
    }

    pub fn inv_unit(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::Precondition(format!("{self} is not a unit of Z[1/{}]", self.p)));
        }
        let k = split_p(&self.num, self.p, u64::MAX).0 as i64 - self.pexp as i64;
        let inv = Self::p_power(self.p, -k);
        Ok(if self.num.is_negative() { -&inv } else { inv })
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.num.clone(), num_traits::pow(BigInt::from(self.p), self.pexp as usize))
    }

    fn same_ring(&self, o: &Self) {
        assert_eq!(self.p, o.p, "mixing Z[1/{}] and Z[1/{}]", self.p, o.p);
    }

    fn scaled_num(&self, e: u32) -> BigInt {
        &self.num * num_traits::pow(BigInt::from(self.p), (e - self.pexp) as usize)
    }

    /// Parses `n`, `n/p`, `n/p^k` or `n/m` with `m` a power of `p`.
    pub fn parse(s: &str, p: u64) -> Result<Self> {
        let bad = || Error::Parse(format!("bad Z[1/{p}] scalar {s:?}"));
        let s = s.trim();
        let (n, den) = match s.split_once('/') {
            None => (s, None),
            Some((n, d)) => (n, Some(d.trim())),
        };
        let num: BigInt = n.trim().parse().map_err(|_| bad())?;
        let Some(den) = den else { return Ok(Self::from_int(num, p)) };
        let pexp = match den.split_once('^') {
            Some((base, k)) => {
                if base.trim().parse::<u64>().map_err(|_| bad())? != p {
                    return Err(bad());
                }
                k.trim().parse::<u32>().map_err(|_| bad())?
            }
            None => {
                let mut m: BigInt = den.parse().map_err(|_| bad())?;
                let pb = BigInt::from(p);
                let mut k = 0;
                while m > BigInt::one() && (&m % &pb).is_zero() {
                    m /= &pb;
                    k += 1;
                }
                if !m.is_one() {
                    return Err(bad());
                }
                k
            }
        };
        Ok(Self::new(num, pexp, p))
    }
}

impl fmt::Display for PInvScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pexp {
            0 => write!(f, "{}", self.num),
            1 => write!(f, "{}/{}", self.num, self.p),
            k => write!(f, "{}/{}^{}", self.num, self.p, k),
        }
    }
}

impl Serialize for PInvScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match (self.pexp, self.num.to_i64()) {
            (0, Some(v)) => s.serialize_i64(v),
            _ => s.collect_str(self),
        }
    }
}

impl Add for &PInvScalar {
    type Output = PInvScalar;

    fn add(self, o: &PInvScalar) -> PInvScalar {
        self.same_ring(o);
        let e = self.pexp.max(o.pexp);
        PInvScalar::new(self.scaled_num(e) + o.scaled_num(e), e, self.p)
    }
}

impl Sub for &PInvScalar {
    type Output = PInvScalar;

    fn sub(self, o: &PInvScalar) -> PInvScalar {
        self + &(-o)
    }
}

impl Mul for &PInvScalar {
    type Output = PInvScalar;

    fn mul(self, o: &PInvScalar) -> PInvScalar {
        self.same_ring(o);
        PInvScalar::new(&self.num * &o.num, self.pexp + o.pexp, self.p)
    }
}

impl Neg for &PInvScalar {
    type Output = PInvScalar;

    fn neg(self) -> PInvScalar {
        PInvScalar { num: -&self.num, pexp: self.pexp, p: self.p }
    }
}

/// `(k, n / p^k)` for the largest `k ≤ max` with `p^k | n` (`n ≠ 0`).
/// Divides by `p^(2^i)` for decreasing `i`, so huge valuations stay cheap.
fn split_p(n: &BigInt, p: u64, max: u64) -> (u64, BigInt) {
    if n.is_zero() || max == 0 {
        return (0, n.clone());
    }
    if p == 2 {
        let k = n.trailing_zeros().unwrap_or(0).min(max);
        return (k, n >> k as usize);
    }
    let mut pows = vec![(BigInt::from(p), 1u64)];
    loop {
        let (pw, e) = pows.last().expect("nonempty");
        if 2 * e > max || 2 * pw.bits() > n.bits() + 1 {
            break;
        }
        let next = (pw * pw, 2 * e);
        pows.push(next);
    }
    let (mut k, mut rest) = (0, n.clone());
    for (pw, e) in pows.iter().rev() {
        while k + e <= max {
            let (q, r) = rest.div_rem(pw);
            if !r.is_zero() {
                break;
            }
            rest = q;
            k += e;
        }
    }
    (k, rest)
}

/// `[[a, c], [b, d]]` over `Z[1/p]` with determinant one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PInvMat2 {
    a: PInvScalar,
    c: PInvScalar,
    b: PInvScalar,
    d: PInvScalar,
}

impl PInvMat2 {
    /// Entries in display order `[[a, c], [b, d]]`.
    pub fn new(a: PInvScalar, c: PInvScalar, b: PInvScalar, d: PInvScalar) -> Result<Self> {
        let p = a.p;
        if [&c, &b, &d].iter().any(|x| x.p != p) {
            return Err(Error::Precondition("entries from different rings".into()));
        }
        let m = Self { a, c, b, d };
        let det = m.det();
        if !det.is_one() {
            return Err(Error::Determinant(det.to_string()));
        }
        Ok(m)
    }

    pub fn from_int_rows(rows: [[i64; 2]; 2], p: u64) -> Result<Self> {
        let s = |v: i64| PInvScalar::from_int(v, p);
        Self::new(s(rows[0][0]), s(rows[0][1]), s(rows[1][0]), s(rows[1][1]))
    }

    pub fn identity(p: u64) -> Self {
        Self { a: PInvScalar::one(p), c: PInvScalar::zero(p), b: PInvScalar::zero(p), d: PInvScalar::one(p) }
    }

    pub fn prime(&self) -> u64 {
        self.a.p
    }

    pub fn a(&self) -> &PInvScalar {
        &self.a
    }

    pub fn b(&self) -> &PInvScalar {
        &self.b
    }

    pub fn c(&self) -> &PInvScalar {
        &self.c
    }

    pub fn d(&self) -> &PInvScalar {
        &self.d
    }

    pub fn rows(&self) -> [[&PInvScalar; 2]; 2] {
        [[&self.a, &self.c], [&self.b, &self.d]]
    }

    pub fn det(&self) -> PInvScalar {
        &(&self.a * &self.d) - &(&self.c * &self.b)
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.d.is_one() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        [&self.a, &self.b, &self.c, &self.d].iter().all(|x| x.is_integer())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let dot = |x: &PInvScalar, y: &PInvScalar, z: &PInvScalar, w: &PInvScalar| &(x * y) + &(z * w);
        Self {
            a: dot(&self.a, &o.a, &self.c, &o.b),
            c: dot(&self.a, &o.c, &self.c, &o.d),
            b: dot(&self.b, &o.a, &self.d, &o.b),
            d: dot(&self.b, &o.c, &self.d, &o.d),
        }
    }

    /// `row[dst] += coeff · row[src]`.
    pub fn apply(&self, op: &RowOp<PInvScalar>) -> Self {
        let mut m = self.clone();
        if op.dst == 0 {
            m.a = &self.a + &(&op.coeff * &self.b);
            m.c = &self.c + &(&op.coeff * &self.d);
        } else {
            m.b = &self.b + &(&op.coeff * &self.a);
            m.d = &self.d + &(&op.coeff * &self.c);
        }
        m
    }
}

impl fmt::Display for PInvMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.c, self.b, self.d)
    }
}

impl Serialize for PInvMat2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [[&self.a, &self.c], [&self.b, &self.d]].serialize(s)
    }
}

/// Adds `coeff` times row `src` to row `dst` (rows 0-indexed).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RowOp<C> {
    pub src: usize,
    pub dst: usize,
    pub coeff: C,
}

impl<C: Clone> RowOp<C> {
    pub fn new(src: usize, dst: usize, coeff: C) -> Self {
        assert!(src != dst && src < 2 && dst < 2, "row op needs two distinct rows of a 2x2 matrix");
        Self { src, dst, coeff }
    }

    pub fn inverse(&self) -> Self
    where
        for<'a> &'a C: Neg<Output = C>,
    {
        Self { src: self.src, dst: self.dst, coeff: -&self.coeff }
    }
}

impl<C: fmt::Display> fmt::Display for RowOp<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{} += ({})·R{}", self.dst + 1, self.coeff, self.src + 1)
    }
}

impl<C: fmt::Display> Serialize for RowOp<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RowOp", 3)?;
        st.serialize_field("dst", &(self.dst + 1))?;
        st.serialize_field("src", &(self.src + 1))?;
        st.serialize_field("coeff", &self.coeff.to_string())?;
        st.end()
    }
}

/// Parses `[[a, c], [b, d]]` whose entries are JSON integers or scalar strings.
pub fn parse_pinv_matrix(v: &serde_json::Value, p: u64) -> Result<PInvMat2> {
    let e = parse_entries(v)?;
    let s = |i: usize| PInvScalar::parse(&e[i], p);
    PInvMat2::new(s(0)?, s(1)?, s(2)?, s(3)?)
}

/// Flattened `2×2` entries as strings, row-major.
pub(crate) fn parse_entries(v: &serde_json::Value) -> Result<Vec<String>> {
    let bad = || Error::Parse(format!("expected a 2x2 matrix, got {v}"));
    let rows = v.as_array().ok_or_else(bad)?;
    if rows.len() != 2 {
        return Err(bad());
    }
    let mut out = Vec::with_capacity(4);
    for r in rows {
        let r = r.as_array().ok_or_else(bad)?;
        if r.len() != 2 {
            return Err(bad());
        }
        for x in r {
            out.push(match x {
                serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
                serde_json::Value::String(s) => s.clone(),
                _ => return Err(bad()),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> PInvScalar {
        PInvScalar::parse(x, 2).unwrap()
    }

    #[test]
    fn valuation_matches_repeated_division() {
        for p in [2u64, 3, 5, 7] {
            for e in [0u32, 1, 2, 5, 17, 40, 130] {
                for unit in [1i64, -1, 2, 11, -26] {
                    let n = BigInt::from(unit) * num_traits::pow(BigInt::from(p), e as usize);
                    for max in [0u64, 3, 64, u64::MAX] {
                        let (mut k, mut rest) = (0, n.clone());
                        while k < max && (&rest % p).is_zero() {
                            rest /= p;
                            k += 1;
                        }
                        assert_eq!(split_p(&n, p, max), (k, rest), "{n} p={p} max={max}");
                    }
                }
            }
        }
        let big = PInvScalar::new(BigInt::from(3).pow(5000u32), 4000, 3);
        assert_eq!(big.pexp(), 0);
        assert!(big.is_unit());
        assert!((&big * &big.inv_unit().unwrap()).is_one());
    }

    #[test]
    fn canonical_form() {
        assert_eq!(s("4/2^2"), s("1"));
        assert_eq!(s("6/4"), s("3/2"));
        assert_eq!(s("0/2^5").pexp(), 0);
        assert_eq!(s("3/8").to_string(), "3/2^3");
        assert!(PInvScalar::parse("1/3", 2).is_err());
        assert!(PInvScalar::parse("1/3^2", 2).is_err());
    }

    #[test]
    fn units() {
        assert!(s("-8").is_unit());
        assert!(s("1/4").is_unit());
        assert!(!s("3").is_unit());
        assert_eq!(s("-1/8").inv_unit().unwrap(), s("-8"));
        assert_eq!(&s("3/4") * &s("1/4").inv_unit().unwrap(), s("3"));
    }

    #[test]
    fn row_op_preserves_det() {
        let m = PInvMat2::from_int_rows([[13, 31], [5, 12]], 2).unwrap();
        let op = RowOp::new(1, 0, s("-5/2^3"));
        let n = m.apply(&op);
        assert!(n.det().is_one());
        assert_eq!(n.apply(&op.inverse()), m);
    }

    #[test]
    fn parse_matrix_json() {
        let v: serde_json::Value = serde_json::from_str(r#"[[1, "3/2"], [0, 1]]"#).unwrap();
        let m = parse_pinv_matrix(&v, 2).unwrap();
        assert_eq!(m.c(), &s("3/2"));
        let bad: serde_json::Value = serde_json::from_str("[[2,0],[0,1]]").unwrap();
        assert!(matches!(parse_pinv_matrix(&bad, 2), Err(Error::Determinant(_))));
    }
}
