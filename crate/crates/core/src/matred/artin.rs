use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

fn residue(r: &BigInt, q: u64) -> u64 {
    r.mod_floor(&BigInt::from(q)).to_u64().expect("residue fits")
}

fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn check_args(r: &BigInt, q: u64) -> Result<u64> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q.to_string()));
    }
    let x = residue(r, q);
    if x == 0 {
        return Err(Error::Precondition(format!("{q} divides {r}")));
    }
    Ok(x)
}

/// `r, r², …` mod `q` up to the first power equal to one.
pub fn power_list(r: &BigInt, q: u64) -> Result<Vec<u64>> {
    let x = check_args(r, q)?;
    let mut out = vec![x];
    let mut cur = x;
    while cur != 1 {
        cur = mul_mod(cur, x, q);
        out.push(cur);
    }
    Ok(out)
}

/// Multiplicative order of `r` mod the prime `q`, from the factors of `q − 1`.
pub fn multiplicative_order(r: &BigInt, q: u64) -> Result<u64> {
    let x = check_args(r, q)?;
    let mut ord = q - 1;
    for f in prime_factors(q - 1) {
        while ord % f == 0 && pow_mod(x, ord / f, q) == 1 {
            ord /= f;
        }
    }
    Ok(ord)
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Whether the powers of `r` exhaust the nonzero residues mod the prime `q`:
/// `r^((q−1)/f) ≢ 1` for every prime `f | q − 1`.
pub fn primitive_root_check(r: &BigInt, q: u64) -> Result<bool> {
    let x = check_args(r, q)?;
    Ok(prime_factors(q - 1).into_iter().all(|f| pow_mod(x, (q - 1) / f, q) != 1))
}

fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    e.gcd.is_one().then(|| e.x.mod_floor(&(m as i128)) as u64)
}

/// Smallest `ℓ ≥ 0` with `r^ℓ ≡ t (mod m)`, by baby-step giant-step. When
/// `r` is not a unit mod `m` only `ℓ = 0` is tried, which is enough for
/// units `t`.
pub fn unit_log(r: u64, t: u64, m: u64) -> Option<u64> {
    let (r, t) = (r % m, t % m);
    if t == 1 % m {
        return Some(0);
    }
    let r_inv = inv_mod(r, m)?;
    let s = ((m as f64).sqrt() as u64 + 1).max(1);
    let mut baby = std::collections::HashMap::with_capacity(s as usize);
    let mut cur = 1 % m;
    for j in 0..s {
        baby.entry(cur).or_insert(j);
        cur = mul_mod(cur, r, m);
    }
    let giant = pow_mod(r_inv, s, m);
    let mut g = t;
    for i in 0..=s {
        if let Some(&j) = baby.get(&g) {
            return Some(i * s + j);
        }
        g = mul_mod(g, giant, m);
    }
    None
}

/// Smallest `ℓ ≥ 1` with `r^ℓ ≡ target (mod q)`.
pub fn discrete_log(r: &BigInt, target: &BigInt, q: u64) -> Result<Option<u64>> {
    let x = check_args(r, q)?;
    let t = residue(target, q);
    if t == 1 % q {
        return multiplicative_order(r, q).map(Some);
    }
    Ok(unit_log(x, t, q))
}

/// Whether `r = s^m` for some integers `s` and `m ≥ 2`. `0` and `±1` count.
pub fn is_perfect_power(r: &BigInt) -> bool {
    let n = r.abs();
    if n <= BigInt::from(1) {
        return true;
    }
    let bits = n.bits() as u32;
    (2..=bits.max(2)).any(|m| {
        if r.is_negative() && m % 2 == 0 {
            return false;
        }
        let s = n.nth_root(m);
        num_traits::pow(s, m as usize) == n
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArtinHit {
    pub q: u64,
    /// `q = a + k·b`.
    pub k: i64,
    pub candidates_tried: u64,
}

/// Searches the progression `a + k·b` for a positive prime `q` with `r` a
/// primitive root mod `q`, for `k = 0, 1, …, cap − 1`. Whenever `a + k·b ≤ 1`
/// the mirrored value `a − k·b` is tried as well.
pub fn artin_instance(a: &BigInt, b: &BigInt, r: &BigInt, cap: u64) -> Result<ArtinHit> {
    if *r == BigInt::from(-1) || is_perfect_power(r) {
        return Err(Error::PerfectPower(r.to_string()));
    }
    if !a.gcd(b).is_one() {
        return Err(Error::Precondition(format!("gcd({a}, {b}) != 1")));
    }
    let one = BigInt::one();
    let mut tried = 0;
    for j in 0..cap {
        let k = j as i64;
        let up = a + b * BigInt::from(k);
        let mut cands = vec![(k, up.clone())];
        if up <= one && j > 0 {
            cands.push((-k, a - b * BigInt::from(k)));
        }
        for (k, cand) in cands {
            tried += 1;
            let Some(q) = cand.to_u64() else { continue };
            if !is_prime(q) || residue(r, q) == 0 {
                continue;
            }
            if primitive_root_check(r, q)? {
                return Ok(ArtinHit { q, k, candidates_tried: tried });
            }
        }
    }
    Err(Error::NotFoundWithinCap { cap })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
    }

    #[test]
    fn three_mod_seven() {
        assert_eq!(power_list(&bi(3), 7).unwrap(), [3, 2, 6, 4, 5, 1]);
        assert!(primitive_root_check(&bi(3), 7).unwrap());
        assert!(primitive_root_check(&bi(2), 13).unwrap());
        assert!(!primitive_root_check(&bi(1), 11).unwrap());
        assert!(!primitive_root_check(&bi(2), 7).unwrap());
    }

    #[test]
    fn fast_check_matches_order() {
        for q in (2..300).filter(|&q| is_prime(q)) {
            for r in 1..40i64 {
                if r as u64 % q == 0 {
                    continue;
                }
                let r = bi(r);
                assert_eq!(primitive_root_check(&r, q).unwrap(), multiplicative_order(&r, q).unwrap() == q - 1, "{r} mod {q}");
            }
        }
    }

    #[test]
    fn primitive_root_errors() {
        assert!(matches!(primitive_root_check(&bi(3), 9), Err(Error::NotPrime(_))));
        assert!(primitive_root_check(&bi(14), 7).is_err());
    }

    #[test]
    fn perfect_powers() {
        for r in [0, 1, -1, 4, 8, -8, 27, 1 << 20, -32] {
            assert!(is_perfect_power(&bi(r)), "{r}");
        }
        for r in [2, 3, -2, -4, 6, 12, -12] {
            assert!(!is_perfect_power(&bi(r)), "{r}");
        }
    }

    #[test]
    fn artin_search() {
        assert_eq!(artin_instance(&bi(13), &bi(5), &bi(2), 100).unwrap().q, 13);
        assert!(matches!(artin_instance(&bi(13), &bi(5), &bi(4), 100), Err(Error::PerfectPower(_))));
        assert!(matches!(artin_instance(&bi(13), &bi(5), &bi(-1), 100), Err(Error::PerfectPower(_))));
        assert!(artin_instance(&bi(4), &bi(6), &bi(2), 100).is_err());
        assert!(matches!(artin_instance(&bi(8), &bi(1), &bi(2), 1), Err(Error::NotFoundWithinCap { cap: 1 })));
    }

    #[test]
    fn negative_progression_is_reached() {
        // a + k·b ≤ 1 for every k ≥ 0, so only negative k can help
        let hit = artin_instance(&bi(-7), &bi(-3), &bi(2), 50).unwrap();
        assert!(hit.k < 0);
        assert_eq!(BigInt::from(hit.q), bi(-7) + bi(-3) * bi(hit.k));
    }

    #[test]
    fn unit_log_matches_a_scan() {
        for m in 1..200u64 {
            for r in [2u64, 3, 5] {
                for t in 0..m {
                    let mut cur = 1 % m;
                    let mut scan = None;
                    for l in 0..2 * m + 2 {
                        if cur == t {
                            scan = Some(l);
                            break;
                        }
                        cur = cur * r % m;
                    }
                    if m % r == 0 && t != 1 % m {
                        // only units are searched when r is not one
                        assert_eq!(unit_log(r, t, m), None);
                    } else {
                        assert_eq!(unit_log(r, t, m), scan, "{r}^l = {t} mod {m}");
                    }
                }
            }
        }
        assert_eq!(discrete_log(&bi(3), &bi(1), 7).unwrap(), Some(6));
        assert_eq!(multiplicative_order(&bi(2), 7).unwrap(), 3);
    }
}
