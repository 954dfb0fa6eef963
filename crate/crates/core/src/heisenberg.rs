//! The discrete Heisenberg group `H` of upper unitriangular 3×3 integer
//! matrices, with generators
//!
//! ```text
//!     x = [[1,1,0],[0,1,0],[0,0,1]]   y = [[1,0,0],[0,1,1],[0,0,1]]   z = [[1,0,1],[0,1,0],[0,0,1]]
//! ```
//!
//! Elements are kept in the normal form `y^b x^a z^c`. The single rewriting
//! rule `x^k y^l = y^l x^k z^{kl}` gives
//! `(a₁,b₁,c₁)·(a₂,b₂,c₂) = (a₁+a₂, b₁+b₂, c₁+c₂+a₁b₂)`, and the normal
//! form corresponds to the matrix `[[1,a,c],[0,1,b],[0,0,1]]`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::scalar::{serialize_int, IntScalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeisElement<T> {
    /// Exponent of `x`.
    pub a: T,
    /// Exponent of `y`.
    pub b: T,
    /// Exponent of `z`.
    pub c: T,
}

impl<T: IntScalar> HeisElement<T> {
    pub fn new(a: T, b: T, c: T) -> Self {
        Self { a, b, c }
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Self {
        Self::new(T::lit(a), T::lit(b), T::lit(c))
    }

    pub fn identity() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn x() -> Self {
        Self::from_i64(1, 0, 0)
    }

    pub fn y() -> Self {
        Self::from_i64(0, 1, 0)
    }

    pub fn z() -> Self {
        Self::from_i64(0, 0, 1)
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn mul(&self, h: &Self) -> Self {
        Self {
            a: self.a.clone() + h.a.clone(),
            b: self.b.clone() + h.b.clone(),
            c: self.c.clone() + h.c.clone() + self.a.clone() * h.b.clone(),
        }
    }

    pub fn inv(&self) -> Self {
        Self {
            a: -self.a.clone(),
            b: -self.b.clone(),
            c: self.a.clone() * self.b.clone() - self.c.clone(),
        }
    }

    /// `g⁻¹ h⁻¹ g h`.
    pub fn commutator(&self, h: &Self) -> Self {
        self.inv().mul(&h.inv()).mul(self).mul(h)
    }

    pub fn pow(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.inv() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `yⁿ xⁿ y⁻ⁿ x⁻ⁿ`, computed by four multiplications; equals `z^{−n²}`.
    pub fn power_word(n: i64) -> Self {
        let x = Self::x();
        let y = Self::y();
        y.pow(n).mul(&x.pow(n)).mul(&y.pow(-n)).mul(&x.pow(-n))
    }

    pub fn to_matrix(&self) -> IntMatrix<T> {
        let zero = T::zero;
        let one = T::one;
        IntMatrix::from_rows(vec![
            vec![one(), self.a.clone(), self.c.clone()],
            vec![zero(), one(), self.b.clone()],
            vec![zero(), zero(), one()],
        ])
        .expect("3x3")
    }

    pub fn from_matrix(m: &IntMatrix<T>) -> Result<Self> {
        if m.dim() != 3 {
            return Err(Error::NotUnitriangular);
        }
        let unitriangular = (0..3).all(|i| m.get(i, i).is_one()) && (0..3).all(|i| (0..i).all(|j| m.get(i, j).is_zero()));
        if !unitriangular {
            return Err(Error::NotUnitriangular);
        }
        Ok(Self::new(m.get(0, 1).clone(), m.get(1, 2).clone(), m.get(0, 2).clone()))
    }

    /// Parses products of `x`, `y`, `z` with integer powers, e.g. `y^3 x^2 z^-1`
    /// or `x^2 y^3` (evaluated in the group). `e` or `1` is the identity.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('[') || t.starts_with('(') {
            let inner = t.trim_matches(|c| c == '[' || c == ']' || c == '(' || c == ')');
            let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(Error::Parse(format!("expected triple (a,b,c), got {s:?}")));
            }
            let num = |p: &str| p.parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {p:?}")));
            return Ok(Self::from_i64(num(parts[0])?, num(parts[1])?, num(parts[2])?));
        }
        let mut acc = Self::identity();
        if t.is_empty() || t == "e" || t == "1" {
            return Ok(acc);
        }
        let chars: Vec<char> = t.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let ch = chars[i];
            if ch.is_whitespace() || ch == '*' {
                i += 1;
                continue;
            }
            let gen = match ch {
                'x' | 'X' => Self::x(),
                'y' | 'Y' => Self::y(),
                'z' | 'Z' => Self::z(),
                'e' => Self::identity(),
                _ => return Err(Error::Parse(format!("unexpected character {ch:?} in {s:?}"))),
            };
            let mut exp: i64 = if ch.is_ascii_uppercase() { -1 } else { 1 };
            i += 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let start = i;
                if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                let e: i64 = lit.parse().map_err(|_| Error::Parse(format!("bad exponent {lit:?} in {s:?}")))?;
                exp *= e;
            }
            acc = acc.mul(&gen.pow(exp));
        }
        Ok(acc)
    }
}

impl<T: IntScalar> fmt::Display for HeisElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "e");
        }
        let mut first = true;
        for (name, v) in [("y", &self.b), ("x", &self.a), ("z", &self.c)] {
            if v.is_zero() {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if v.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{v}")?;
            }
        }
        Ok(())
    }
}

impl<T: IntScalar> FromStr for HeisElement<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Serialized as the triple `[a, b, c]`.
impl<T: IntScalar> Serialize for HeisElement<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeTuple;
        struct Int<'a, T>(&'a T);
        impl<T: IntScalar> Serialize for Int<'_, T> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                serialize_int(self.0, s)
            }
        }
        let mut t = s.serialize_tuple(3)?;
        t.serialize_element(&Int(&self.a))?;
        t.serialize_element(&Int(&self.b))?;
        t.serialize_element(&Int(&self.c))?;
        t.end()
    }
}

/// Which central series the lexicographic order refines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Chain {
    /// `{e} ◁ ⟨z⟩ ◁ ⟨z,x⟩ ◁ H`: compare `b`, then `a`, then `c`.
    Zxy,
    /// `{e} ◁ ⟨z⟩ ◁ ⟨z,y⟩ ◁ H`: compare `a`, then `b`, then `c`.
    Zyx,
}

/// A lexicographic left order on `H` refining one of the two central chains,
/// with a sign at each level.
///
/// The literal form lists the chain bottom-up followed by the signs in the
/// same order: `zxy:+-+` means `z` positive, `x` negative, `y` positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HeisOrder {
    pub chain: Chain,
    /// Signs for the `z` level, the middle level and the top level.
    pub signs: [bool; 3],
}

impl HeisOrder {
    pub fn new(chain: Chain, signs: [bool; 3]) -> Self {
        Self { chain, signs }
    }

    /// Every order in the catalog: both chains, all eight sign patterns.
    pub fn all() -> Vec<Self> {
        let mut out = Vec::with_capacity(16);
        for chain in [Chain::Zxy, Chain::Zyx] {
            for mask in 0..8u8 {
                out.push(Self::new(chain, [mask & 4 == 0, mask & 2 == 0, mask & 1 == 0]));
            }
        }
        out
    }

    /// Coordinates ordered from the deepest level (`z`) to the top.
    fn levels<'a, T>(&self, g: &'a HeisElement<T>) -> [&'a T; 3] {
        match self.chain {
            Chain::Zxy => [&g.c, &g.a, &g.b],
            Chain::Zyx => [&g.c, &g.b, &g.a],
        }
    }

    /// Highest level carrying a nonzero coordinate; `None` for the identity.
    pub fn level<T: IntScalar>(&self, g: &HeisElement<T>) -> Option<usize> {
        let lv = self.levels(g);
        (0..3).rev().find(|&i| !lv[i].is_zero())
    }

    /// `g ≻ e`.
    pub fn is_positive<T: IntScalar>(&self, g: &HeisElement<T>) -> bool {
        let lv = self.levels(g);
        match self.level(g) {
            None => false,
            Some(i) => lv[i].is_positive() == self.signs[i],
        }
    }

    /// Left-invariant comparison: `g ≺ h` iff `g⁻¹h ≻ e`.
    pub fn compare<T: IntScalar>(&self, g: &HeisElement<T>, h: &HeisElement<T>) -> Ordering {
        let d = g.inv().mul(h);
        if d.is_identity() {
            Ordering::Equal
        } else if self.is_positive(&d) {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// `|g|`: `g` if `g ⪰ e`, else `g⁻¹`.
    pub fn abs<T: IntScalar>(&self, g: &HeisElement<T>) -> HeisElement<T> {
        if self.compare(g, &HeisElement::identity()) == Ordering::Less {
            g.inv()
        } else {
            g.clone()
        }
    }

    /// `g ≪ h`, decided structurally: `g` lies strictly deeper in the chain
    /// than `h`. The identity is below every nontrivial element.
    pub fn archimedean_lt<T: IntScalar>(&self, g: &HeisElement<T>, h: &HeisElement<T>) -> bool {
        match (self.level(g), self.level(h)) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some(lg), Some(lh)) => lg < lh,
        }
    }

    /// `gⁿ ≺ |h|` for every `n` in `−bound..=bound`.
    pub fn archimedean_lt_sampled<T: IntScalar>(&self, g: &HeisElement<T>, h: &HeisElement<T>, bound: i64) -> bool {
        let abs_h = self.abs(h);
        (-bound..=bound).all(|n| self.compare(&g.pow(n), &abs_h) == Ordering::Less)
    }

    pub fn verify_lemma(&self) -> Result<LemmaVerdict> {
        let z = HeisElement::<i64>::z();
        let zx = self.archimedean_lt(&z, &HeisElement::x());
        let zy = self.archimedean_lt(&z, &HeisElement::y());
        match (zx, zy) {
            (true, true) => Ok(LemmaVerdict::Both),
            (true, false) => Ok(LemmaVerdict::ZllX),
            (false, true) => Ok(LemmaVerdict::ZllY),
            (false, false) => Err(Error::Violation(format!("order {self}: neither z << x nor z << y"))),
        }
    }
}

impl fmt::Display for HeisOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chain = match self.chain {
            Chain::Zxy => "zxy",
            Chain::Zyx => "zyx",
        };
        let s: String = self.signs.iter().map(|&p| if p { '+' } else { '-' }).collect();
        write!(f, "{chain}:{s}")
    }
}

impl FromStr for HeisOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (chain, signs) = s.split_once(':').unwrap_or((s, "+++"));
        let chain = match chain.trim() {
            "zxy" => Chain::Zxy,
            "zyx" => Chain::Zyx,
            other => return Err(Error::Parse(format!("unknown chain {other:?}; use zxy or zyx"))),
        };
        let signs: Vec<bool> = signs
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(true),
                '-' => Ok(false),
                _ => Err(Error::Parse(format!("bad sign {c:?}"))),
            })
            .collect::<Result<_>>()?;
        let signs: [bool; 3] = signs.try_into().map_err(|_| Error::Parse("need exactly three signs".into()))?;
        Ok(Self::new(chain, signs))
    }
}

impl Serialize for HeisOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaVerdict {
    ZllX,
    ZllY,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub central: bool,
    /// `(k, ℓ)` pairs checked in `x^k y^ℓ = y^ℓ x^k z^{kℓ}`.
    pub commutation_cases: usize,
    /// `n` values checked in `yⁿxⁿy⁻ⁿx⁻ⁿ = z^{−n²}`.
    pub power_word_cases: usize,
    /// Pairs on which normal-form and matrix products agree.
    pub matrix_pairs: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the defining identities of `H` with `i64` exponents: `z` central,
/// the commutation rule for `|k|, |ℓ| ≤ kl_bound`, the power word for
/// `|n| ≤ power_bound`, and normal-form multiplication against `3×3`
/// matrix multiplication on every pair with coordinates in `[−grid, grid]`.
pub fn verify_identities(kl_bound: i64, power_bound: i64, grid: i64) -> IdentityReport {
    type H = HeisElement<i64>;
    let (x, y, z) = (H::x(), H::y(), H::z());
    let mut failures = Vec::new();
    let central = z.mul(&x) == x.mul(&z) && z.mul(&y) == y.mul(&z) && x.commutator(&y) == z;
    if !central {
        failures.push("z = [x, y] is not central".to_string());
    }
    let mut commutation_cases = 0;
    for k in -kl_bound..=kl_bound {
        for l in -kl_bound..=kl_bound {
            let lhs = x.pow(k).mul(&y.pow(l));
            let rhs = y.pow(l).mul(&x.pow(k)).mul(&z.pow(k * l));
            if lhs != rhs {
                failures.push(format!("x^{k} y^{l} != y^{l} x^{k} z^{}", k * l));
            }
            commutation_cases += 1;
        }
    }
    let mut power_word_cases = 0;
    for n in -power_bound..=power_bound {
        if H::power_word(n) != z.pow(-n * n) {
            failures.push(format!("power word fails at n = {n}"));
        }
        power_word_cases += 1;
    }
    let r = -grid..=grid;
    let elems: Vec<H> = r.clone().flat_map(|a| r.clone().flat_map(move |b| (-grid..=grid).map(move |c| H::from_i64(a, b, c)))).collect();
    let mats: Vec<IntMatrix<i64>> = elems.iter().map(|g| g.to_matrix()).collect();
    let mut matrix_pairs = 0;
    for (g, mg) in elems.iter().zip(&mats) {
        for (h, mh) in elems.iter().zip(&mats) {
            if g.mul(h).to_matrix() != mg.mul_ref(mh) {
                failures.push(format!("normal form and matrix products differ on ({g}, {h})"));
            }
            matrix_pairs += 1;
        }
    }
    IdentityReport { central, commutation_cases, power_word_cases, matrix_pairs, failures }
}
