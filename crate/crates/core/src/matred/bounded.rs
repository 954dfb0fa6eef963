use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;

use super::artin::{artin_instance, discrete_log, is_prime, unit_log};
use super::euclid::{euclid_reduce, ReductionStep};
use super::pinv::{PInvMat2, PInvScalar, RowOp};
use crate::error::{Error, Result};
use crate::BigIntMat;

pub type PInvStep = ReductionStep<PInvScalar, PInvMat2>;

/// Which branch of [`bounded_reduce`] ran.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundedPath {
    Identity,
    /// `b = 0`, `a = d = 1`: one op clears `c`.
    Unipotent,
    /// `b = 0`, `a = d = −1`: four integer ops.
    NegativeUnipotent,
    /// Step 1 found a prime `q = a + k·b` with `p` primitive mod `q`.
    FiveStep { q: u64, k: i64, ell: u64 },
    /// No such prime within the cap; step 1 settled for a pivot
    /// `n = a + k·b` with `b ≡ sign·p^ℓ (mod n)`, which is all step 2 needs.
    FiveStepUnitResidue {
        #[serde(serialize_with = "crate::scalar::serialize_int")]
        pivot: BigInt,
        k: i64,
        ell: u64,
        sign: i8,
    },
}

impl BoundedPath {
    pub fn used_fallback(&self) -> bool {
        matches!(self, Self::FiveStepUnitResidue { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundedReport {
    pub p: u64,
    pub path: BoundedPath,
    pub steps: Vec<PInvStep>,
}

impl BoundedReport {
    pub fn ops(&self) -> Vec<RowOp<PInvScalar>> {
        self.steps.iter().map(|s| s.op.clone()).collect()
    }
}

struct Tracer {
    cur: PInvMat2,
    steps: Vec<PInvStep>,
}

impl Tracer {
    fn push(&mut self, src: usize, dst: usize, coeff: PInvScalar) -> Result<()> {
        let op = RowOp::new(src, dst, coeff);
        self.cur = self.cur.apply(&op);
        let det = self.cur.det();
        if !det.is_one() {
            return Err(Error::Violation(format!("determinant {det} after {op}")));
        }
        self.steps.push(ReductionStep { step: self.steps.len() + 1, op, intermediate: self.cur.clone() });
        Ok(())
    }
}

/// Step-1 choice: new top-left entry `pivot = a + k·b` and a unit
/// `sign·p^ℓ ≡ b (mod pivot)`.
struct Pivot {
    pivot: BigInt,
    k: i64,
    ell: u64,
    sign: i8,
}

/// Smallest `|k| < cap` (positive first) with `b ≡ ±p^ℓ (mod a + k·b)` for
/// some `ℓ ≥ 0`.
fn unit_residue_pivot(a: &BigInt, b: &BigInt, p: u64, cap: u64) -> Result<Pivot> {
    for j in 0..cap as i64 {
        for k in if j == 0 { vec![0] } else { vec![j, -j] } {
            let n = a + b * BigInt::from(k);
            if n.is_zero() {
                continue;
            }
            let Some(m) = n.abs().to_u64() else { continue };
            let t = b.mod_floor(&BigInt::from(m)).to_u64().expect("residue");
            let plus = unit_log(p, t, m);
            let minus = unit_log(p, (m - t) % m, m);
            let hit = match (plus, minus) {
                (Some(l), Some(r)) if r < l => Some((r, -1)),
                (Some(l), _) => Some((l, 1)),
                (None, Some(r)) => Some((r, -1)),
                (None, None) => None,
            };
            if let Some((ell, sign)) = hit {
                return Ok(Pivot { pivot: n, k, ell, sign });
            }
        }
    }
    Err(Error::NotFoundWithinCap { cap })
}

/// Reduces an integer matrix of `SL(2, Z[1/p])` to the identity in at most
/// five row operations:
///
/// 1. `R1 += k·R2` so that `q = a + k·b` is a prime with `p` primitive mod `q`;
/// 2. `R2 += k'·R1` so that the bottom-left entry becomes `p^ℓ ≡ b (mod q)`;
/// 3. `R1 −= (q−1)p^{−ℓ}·R2`, making the top-left entry `1`;
/// 4. `R2 −= p^ℓ·R1`;
/// 5. `R1 −= c·R2`.
///
/// All five ops are emitted even when a coefficient happens to be zero.
/// Matrices with `b = 0` take a short path.
///
/// Some progressions contain no such prime at all: when `5 | b` and
/// `a ≡ 1 (mod 5)`, say, `5` is a square modulo every term. Unless
/// `strict`, such inputs fall back to any pivot `n = a + k·b` with
/// `b ≡ ±p^ℓ (mod n)`, which keeps the count at five.
pub fn bounded_reduce_with(m: &PInvMat2, cap: u64, strict: bool) -> Result<BoundedReport> {
    let p = m.prime();
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if !m.is_integer() {
        return Err(Error::Precondition(format!("entries of {m} must be integers")));
    }
    let mut t = Tracer { cur: m.clone(), steps: Vec::new() };
    let s = |v: BigInt| PInvScalar::from_int(v, p);
    let path = if m.is_identity() {
        BoundedPath::Identity
    } else if m.b().is_zero() && m.a().is_one() {
        t.push(1, 0, -m.c())?;
        BoundedPath::Unipotent
    } else if m.b().is_zero() {
        let c = m.c().to_integer().expect("integer");
        t.push(0, 1, s((-1).into()))?;
        t.push(1, 0, s(2.into()))?;
        t.push(0, 1, s((-1).into()))?;
        t.push(1, 0, s(c + 2))?;
        BoundedPath::NegativeUnipotent
    } else {
        let (a, b) = (m.a().to_integer().expect("integer"), m.b().to_integer().expect("integer"));
        let (piv, path) = match artin_instance(&a, &b, &BigInt::from(p), cap) {
            Ok(hit) => {
                let ell = discrete_log(&BigInt::from(p), &b, hit.q)?
                    .ok_or_else(|| Error::Violation(format!("{p} has no logarithm of {b} mod {}", hit.q)))?;
                let piv = Pivot { pivot: BigInt::from(hit.q), k: hit.k, ell, sign: 1 };
                (piv, BoundedPath::FiveStep { q: hit.q, k: hit.k, ell })
            }
            Err(Error::NotFoundWithinCap { .. }) if !strict => {
                let piv = unit_residue_pivot(&a, &b, p, cap)?;
                let path = BoundedPath::FiveStepUnitResidue { pivot: piv.pivot.clone(), k: piv.k, ell: piv.ell, sign: piv.sign };
                (piv, path)
            }
            Err(e) => return Err(e),
        };
        t.push(1, 0, s(piv.k.into()))?;
        let unit = BigInt::from(piv.sign) * num_traits::pow(BigInt::from(p), piv.ell as usize);
        let (k2, rem) = (&unit - &b).div_rem(&piv.pivot);
        debug_assert!(rem.is_zero());
        t.push(0, 1, s(k2))?;
        let unit_inv = s(unit.clone()).inv_unit()?;
        t.push(1, 0, &s(BigInt::from(1) - &piv.pivot) * &unit_inv)?;
        t.push(0, 1, s(-unit))?;
        let c = t.cur.c().clone();
        t.push(1, 0, -&c)?;
        path
    };
    if !t.cur.is_identity() {
        return Err(Error::Violation(format!("reduction ended at {}", t.cur)));
    }
    Ok(BoundedReport { p, path, steps: t.steps })
}

/// [`bounded_reduce_with`] with the unit-residue fallback enabled.
pub fn bounded_reduce(m: &PInvMat2, cap: u64) -> Result<BoundedReport> {
    bounded_reduce_with(m, cap, false)
}

/// Replays `ops` from `m`, returning every intermediate.
pub fn replay(m: &PInvMat2, ops: &[RowOp<PInvScalar>]) -> Vec<PInvMat2> {
    let mut cur = m.clone();
    ops.iter()
        .map(|op| {
            cur = cur.apply(op);
            cur.clone()
        })
        .collect()
}

/// Rebuilds the input of a reduction from its ops: inverse ops in reverse
/// order applied to the identity.
pub fn reconstruct(p: u64, ops: &[RowOp<PInvScalar>]) -> PInvMat2 {
    ops.iter().rev().fold(PInvMat2::identity(p), |acc, op| acc.apply(&op.inverse()))
}

pub fn pinv_from_int(m: &BigIntMat, p: u64) -> Result<PInvMat2> {
    if m.dim() != 2 {
        return Err(Error::Precondition("expected a 2x2 matrix".into()));
    }
    let s = |i, j| PInvScalar::from_int(m.get(i, j).clone(), p);
    PInvMat2::new(s(0, 0), s(0, 1), s(1, 0), s(1, 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Unipotent {
    Upper,
    Lower,
}

/// `p̄ⁿ · E · p̄⁻ⁿ` for `p̄ = diag(p, 1/p)` and `E` the unipotent with entry
/// `u`, in closed form: the upper entry scales by `p^{2n}`, the lower by
/// `p^{−2n}`.
pub fn diag_conjugation(u: &PInvScalar, n: i64, kind: Unipotent) -> PInvMat2 {
    let p = u.prime();
    let (one, zero) = (PInvScalar::one(p), PInvScalar::zero(p));
    match kind {
        Unipotent::Upper => {
            let x = &PInvScalar::p_power(p, 2 * n) * u;
            PInvMat2::new(one.clone(), x, zero, one).expect("unipotent")
        }
        Unipotent::Lower => {
            let x = &PInvScalar::p_power(p, -2 * n) * u;
            PInvMat2::new(one.clone(), zero, x, one).expect("unipotent")
        }
    }
}

/// `diag(p^n, p^{−n})`.
pub fn diag_power(p: u64, n: i64) -> PInvMat2 {
    let z = PInvScalar::zero(p);
    PInvMat2::new(PInvScalar::p_power(p, n), z.clone(), z, PInvScalar::p_power(p, -n)).expect("unit diagonal")
}

/// Product of `factors` elementary matrices, alternating upper and lower,
/// with nonzero coefficients in `[-max_coeff, max_coeff]`.
pub fn random_sl2z<R: Rng>(rng: &mut R, factors: usize, max_coeff: i64) -> BigIntMat {
    assert!(max_coeff >= 1);
    let mut m = BigIntMat::identity(2);
    let start_upper = rng.gen_bool(0.5);
    for i in 0..factors {
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-max_coeff..=max_coeff);
        }
        let (r, col) = if (i % 2 == 0) == start_upper { (0, 1) } else { (1, 0) };
        m = m.mul_ref(&BigIntMat::elementary(2, r, col, c.into()));
    }
    m
}

/// `½(3n² − n) + 36`, the elementary-operation bound quoted for `SL(n, Z)`.
pub fn carter_keller_bound(n: u64) -> u64 {
    (3 * n * n - n) / 2 + 36
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordLengthReport {
    pub p: u64,
    pub samples: usize,
    pub euclid_counts: Vec<usize>,
    pub euclid_max: usize,
    /// `None` where the prime search hit its cap.
    pub bounded_counts: Vec<Option<usize>>,
    pub bounded_max: usize,
    pub not_found: usize,
    /// Reductions that needed the unit-residue pivot.
    pub fallbacks: usize,
    pub carter_keller_n3: u64,
}

/// Euclidean op counts next to bounded op counts over `Z[1/p]`.
pub fn elementary_word_length_stats(samples: &[BigIntMat], p: u64, cap: u64) -> Result<WordLengthReport> {
    let mut fallbacks = 0;
    let mut euclid_counts = Vec::with_capacity(samples.len());
    let mut bounded_counts = Vec::with_capacity(samples.len());
    for m in samples {
        euclid_counts.push(euclid_reduce(m)?.len());
        match bounded_reduce(&pinv_from_int(m, p)?, cap) {
            Ok(r) => {
                fallbacks += usize::from(r.path.used_fallback());
                bounded_counts.push(Some(r.steps.len()))
            }
            Err(Error::NotFoundWithinCap { .. }) => bounded_counts.push(None),
            Err(e) => return Err(e),
        }
    }
    Ok(WordLengthReport {
        p,
        samples: samples.len(),
        euclid_max: euclid_counts.iter().copied().max().unwrap_or(0),
        bounded_max: bounded_counts.iter().flatten().copied().max().unwrap_or(0),
        not_found: bounded_counts.iter().filter(|c| c.is_none()).count(),
        fallbacks,
        euclid_counts,
        bounded_counts,
        carter_keller_n3: carter_keller_bound(3),
    })
}
