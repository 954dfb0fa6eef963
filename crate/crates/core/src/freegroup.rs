//! Free groups of finite rank: reduced words, balls and quasimorphisms.
//!
//! Words are stored run-length encoded as syllables `(generator, exponent)`.
//! Counting quasimorphisms expand to the letter string only while counting.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of words produced by one enumeration.
pub const DEFAULT_BALL_CAP: usize = 1_000_000;

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Self { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Self { generator: self.generator, inverse: !self.inverse }
    }

    /// Position in the enumeration order `a < a⁻¹ < b < b⁻¹ < …`.
    pub fn index(self) -> usize {
        2 * self.generator + self.inverse as usize
    }

    pub fn from_index(i: usize) -> Self {
        Self { generator: i / 2, inverse: i % 2 == 1 }
    }

    fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.index().cmp(&other.index())
    }
}

/// A freely reduced word in the free group of rank `rank`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    rank: usize,
    syllables: Vec<(usize, i64)>,
}

impl ReducedWord {
    pub fn identity(rank: usize) -> Self {
        Self { rank, syllables: Vec::new() }
    }

    /// The generator `index` (0 = a, 1 = b, …).
    pub fn generator(rank: usize, index: usize) -> Result<Self> {
        Self::from_syllables(rank, &[(index, 1)])
    }

    /// Freely reduces an arbitrary sequence of syllables.
    pub fn from_syllables(rank: usize, syllables: &[(usize, i64)]) -> Result<Self> {
        let mut out = Self::identity(rank);
        for &(g, e) in syllables {
            if g >= rank {
                return Err(Error::GeneratorOutOfRange { index: g, rank });
            }
            out.push_syllable(g, e);
        }
        Ok(out)
    }

    /// Free reduction of a letter sequence.
    pub fn reduce(rank: usize, letters: &[Letter]) -> Result<Self> {
        let mut out = Self::identity(rank);
        for l in letters {
            if l.generator >= rank {
                return Err(Error::GeneratorOutOfRange { index: l.generator, rank });
            }
            out.push_syllable(l.generator, l.exponent());
        }
        Ok(out)
    }

    fn push_syllable(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some((lg, le)) if *lg == g => {
                *le += e;
                if *le == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push((g, e)),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Word length (number of letters).
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.len());
        for &(g, e) in &self.syllables {
            let l = Letter::new(g, e < 0);
            out.extend(std::iter::repeat(l).take(e.unsigned_abs() as usize));
        }
        out
    }

    pub fn first_letter(&self) -> Option<Letter> {
        self.syllables.first().map(|&(g, e)| Letter::new(g, e < 0))
    }

    pub fn last_letter(&self) -> Option<Letter> {
        self.syllables.last().map(|&(g, e)| Letter::new(g, e < 0))
    }

    /// The word with its last letter removed (identity stays put).
    pub fn drop_last(&self) -> Self {
        let mut out = self.clone();
        if let Some((g, e)) = out.syllables.last().copied() {
            out.syllables.pop();
            out.push_syllable(g, e - e.signum());
        }
        out
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for &(g, e) in &other.syllables {
            out.push_syllable(g, e);
        }
        out
    }

    pub fn invert(&self) -> Self {
        Self {
            rank: self.rank,
            syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// `self^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut out = Self::identity(self.rank);
        for _ in 0..n.unsigned_abs() {
            out = out.mul_unchecked(&base);
        }
        out
    }

    /// Commutator `x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let xi = self.invert();
        let yi = other.invert();
        xi.multiply(&yi)?.multiply(self)?.multiply(other)
    }

    /// Parses the word literal syntax: letters `a b c …`, inverses as capitals
    /// or `^-1`, powers `a^3`. `1`, `e` (rank < 5) or the empty string denote
    /// the identity.
    pub fn parse(rank: usize, s: &str) -> Result<Self> {
        let letters = parse_letters(s, rank)?;
        Self::from_syllables(rank, &letters)
    }
}

/// Serialized as its word literal, e.g. `"a^2 b^-1"`.
impl Serialize for ReducedWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl PartialOrd for ReducedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Length-lexicographic order with `a < a⁻¹ < b < b⁻¹ < …`.
impl Ord for ReducedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters().cmp(&other.letters()))
            .then_with(|| self.rank.cmp(&other.rank))
    }
}

fn generator_char(g: usize) -> char {
    (b'a' + g as u8) as char
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (i, &(g, e)) in self.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", generator_char(g))?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

fn parse_letters(s: &str, rank: usize) -> Result<Vec<(usize, i64)>> {
    let trimmed = s.trim();
    if trimmed.is_empty() || trimmed == "1" || (trimmed == "e" && rank < 5) {
        return Ok(Vec::new());
    }
    let chars: Vec<char> = trimmed.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == '*' || c == '·' {
            i += 1;
            continue;
        }
        let (g, sign) = if c.is_ascii_lowercase() {
            ((c as u8 - b'a') as usize, 1i64)
        } else if c.is_ascii_uppercase() {
            ((c as u8 - b'A') as usize, -1i64)
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in word {s:?}")));
        };
        if g >= rank {
            return Err(Error::GeneratorOutOfRange { index: g, rank });
        }
        i += 1;
        let mut exp = 1i64;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let start = i;
            if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: String = chars[start..i].iter().collect();
            exp = num
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent {num:?} in word {s:?}")))?;
        }
        out.push((g, sign * exp));
    }
    Ok(out)
}

impl FromStr for ReducedWord {
    type Err = Error;

    /// Parses with the smallest rank (at least 2) covering the letters used.
    fn from_str(s: &str) -> Result<Self> {
        let max = s
            .chars()
            .filter(|c| c.is_ascii_alphabetic())
            .map(|c| (c.to_ascii_lowercase() as u8 - b'a') as usize + 1)
            .max()
            .unwrap_or(0);
        Self::parse(max.max(2), s)
    }
}

/// Closed-form size of the ball of radius `radius` in `F_rank`.
pub fn ball_size(rank: usize, radius: usize) -> u128 {
    if rank == 0 {
        return 1;
    }
    let k = rank as u128;
    if k == 1 {
        return 1 + 2 * radius as u128;
    }
    let q = 2 * k - 1;
    let mut total = 1u128;
    let mut sphere = 2 * k;
    for _ in 0..radius {
        total = total.saturating_add(sphere);
        sphere = sphere.saturating_mul(q);
    }
    total
}

/// All reduced words of length at most `radius`, in length-lexicographic order.
pub fn ball(rank: usize, radius: usize, cap: usize) -> Result<Vec<ReducedWord>> {
    let needed = ball_size(rank, radius);
    if needed > cap as u128 {
        return Err(Error::ResourceCap { needed, cap: cap as u128 });
    }
    let mut out = Vec::with_capacity(needed as usize);
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    out.push(ReducedWord::identity(rank));
    for _ in 0..radius {
        let mut next = Vec::with_capacity(layer.len() * 2 * rank.max(1));
        for w in &layer {
            let forbidden = w.last().map(|l| l.inv());
            for i in 0..2 * rank {
                let l = Letter::from_index(i);
                if Some(l) == forbidden {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().map(|v| ReducedWord::reduce(rank, v).expect("in range")));
        layer = next;
    }
    Ok(out)
}

/// Ball of the given radius with the default cap.
pub fn ball_default(rank: usize, radius: usize) -> Result<Vec<ReducedWord>> {
    ball(rank, radius, DEFAULT_BALL_CAP)
}

/// Uniformly random reduced word of exactly the given length.
pub fn random_word<R: Rng>(rng: &mut R, rank: usize, len: usize) -> ReducedWord {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::from_index(rng.gen_range(0..2 * rank));
        if letters.last().map(|p| p.inv()) == Some(l) {
            continue;
        }
        letters.push(l);
    }
    ReducedWord::reduce(rank, &letters).expect("in range")
}

/// A homomorphism count or a Brooks counting quasimorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Quasimorphism {
    /// Signed exponent sum of one generator.
    HomCount { generator: usize },
    /// Disjoint occurrences of `pattern` minus disjoint occurrences of its
    /// inverse, counted greedily left to right in the reduced spelling.
    Brooks { pattern: ReducedWord },
}

impl Quasimorphism {
    pub fn hom(generator: usize) -> Self {
        Self::HomCount { generator }
    }

    pub fn brooks(pattern: ReducedWord) -> Result<Self> {
        if pattern.is_identity() {
            return Err(Error::Precondition("Brooks pattern must be nontrivial".into()));
        }
        Ok(Self::Brooks { pattern })
    }

    /// Parses `hom:a` or `brooks:ab` (also `brooks:a^2`).
    pub fn parse(rank: usize, s: &str) -> Result<Self> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("quasimorphism {s:?} must be hom:<g> or brooks:<word>")))?;
        match kind.trim() {
            "hom" => {
                let w = ReducedWord::parse(rank, arg)?;
                match w.syllables() {
                    [(g, 1)] => Ok(Self::hom(*g)),
                    _ => Err(Error::Parse(format!("hom:{arg} is not a single generator"))),
                }
            }
            "brooks" => Self::brooks(ReducedWord::parse(rank, arg)?),
            other => Err(Error::Parse(format!("unknown quasimorphism kind {other:?}"))),
        }
    }

    pub fn eval(&self, x: &ReducedWord) -> i64 {
        match self {
            Self::HomCount { generator } => x
                .syllables()
                .iter()
                .filter(|(g, _)| g == generator)
                .map(|&(_, e)| e)
                .sum(),
            Self::Brooks { pattern } => {
                let text = x.letters();
                let fwd = pattern.letters();
                let bwd = pattern.invert().letters();
                count_disjoint(&text, &fwd) as i64 - count_disjoint(&text, &bwd) as i64
            }
        }
    }
}

impl fmt::Display for Quasimorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::HomCount { generator } => write!(f, "hom:{}", generator_char(*generator)),
            Self::Brooks { pattern } => write!(f, "brooks:{pattern}"),
        }
    }
}

/// Greedy leftmost non-overlapping occurrence count.
fn count_disjoint(text: &[Letter], pattern: &[Letter]) -> usize {
    if pattern.is_empty() || pattern.len() > text.len() {
        return 0;
    }
    let mut count = 0;
    let mut i = 0;
    while i + pattern.len() <= text.len() {
        if text[i..i + pattern.len()] == *pattern {
            count += 1;
            i += pattern.len();
        } else {
            i += 1;
        }
    }
    count
}

/// Which pairs `(x, y)` a scan visits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairSpec {
    /// Every ordered pair from `ball(rank, radius)`.
    Exhaustive { rank: usize, radius: usize },
    /// `count` pairs of random reduced words with lengths in `0..=max_len`.
    Random { rank: usize, max_len: usize, count: usize, seed: u64 },
    /// An explicit list.
    Explicit(Vec<(ReducedWord, ReducedWord)>),
}

impl PairSpec {
    pub fn pairs(&self) -> Result<Vec<(ReducedWord, ReducedWord)>> {
        match self {
            Self::Exhaustive { rank, radius } => {
                let b = ball_default(*rank, *radius)?;
                let needed = (b.len() as u128) * (b.len() as u128);
                if needed > 100 * DEFAULT_BALL_CAP as u128 {
                    return Err(Error::ResourceCap { needed, cap: 100 * DEFAULT_BALL_CAP as u128 });
                }
                let mut out = Vec::with_capacity(needed as usize);
                for x in &b {
                    for y in &b {
                        out.push((x.clone(), y.clone()));
                    }
                }
                Ok(out)
            }
            Self::Random { rank, max_len, count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                Ok((0..*count)
                    .map(|_| {
                        let lx = rng.gen_range(0..=*max_len);
                        let ly = rng.gen_range(0..=*max_len);
                        (random_word(&mut rng, *rank, lx), random_word(&mut rng, *rank, ly))
                    })
                    .collect())
            }
            Self::Explicit(v) => Ok(v.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefectReport {
    pub phi: String,
    pub pairs_checked: usize,
    pub defect_max: i64,
    /// First pair (in scan order) attaining the maximum.
    pub witness: Option<(ReducedWord, ReducedWord)>,
}

/// `φ(xy) − φ(x) − φ(y)`.
pub fn defect(phi: &Quasimorphism, x: &ReducedWord, y: &ReducedWord) -> Result<i64> {
    Ok(phi.eval(&x.multiply(y)?) - phi.eval(x) - phi.eval(y))
}

/// Maximum observed `|φ(xy) − φ(x) − φ(y)|` over the sampled pairs.
pub fn defect_scan(phi: &Quasimorphism, samples: &PairSpec) -> Result<DefectReport> {
    let pairs = samples.pairs()?;
    let mut best = 0i64;
    let mut witness = None;
    for (x, y) in &pairs {
        let d = defect(phi, x, y)?.abs();
        if witness.is_none() || d > best {
            best = d;
            witness = Some((x.clone(), y.clone()));
        }
    }
    Ok(DefectReport { phi: phi.to_string(), pairs_checked: pairs.len(), defect_max: best, witness })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommutatorReport {
    pub phi: String,
    pub bound: i64,
    pub pairs_checked: usize,
    pub max_abs_value: i64,
    /// `max |φ([x,y])| / bound`, or 0 when the bound is 0 and every value is 0.
    pub worst_ratio: f64,
    pub witness: Option<(ReducedWord, ReducedWord)>,
}

/// Checks `|φ(x⁻¹y⁻¹xy)| ≤ 2|φ(e)| + 5C` on every sampled pair.
pub fn commutator_bound_check(phi: &Quasimorphism, c: i64, samples: &PairSpec) -> Result<CommutatorReport> {
    if c < 0 {
        return Err(Error::Precondition("defect constant must be nonnegative".into()));
    }
    let pairs = samples.pairs()?;
    let rank = pairs.first().map(|(x, _)| x.rank()).unwrap_or(2);
    let bound = 2 * phi.eval(&ReducedWord::identity(rank)).abs() + 5 * c;
    let mut max_abs = 0i64;
    let mut witness = None;
    for (x, y) in &pairs {
        let v = phi.eval(&x.commutator(y)?).abs();
        if v > bound {
            return Err(Error::Violation(format!(
                "|{phi}([{x}, {y}])| = {v} exceeds 2|φ(e)| + 5C = {bound}"
            )));
        }
        if witness.is_none() || v > max_abs {
            max_abs = v;
            witness = Some((x.clone(), y.clone()));
        }
    }
    let worst_ratio = if bound == 0 { 0.0 } else { max_abs as f64 / bound as f64 };
    Ok(CommutatorReport { phi: phi.to_string(), bound, pairs_checked: pairs.len(), max_abs_value: max_abs, worst_ratio, witness })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationEntry {
    pub phi: String,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationWitness {
    pub k: u32,
    pub n: u32,
    pub word: ReducedWord,
    /// `φ_{a^k}, φ_{a^{k+1}}, …, φ_{a^{k+m}}, φ_a, φ_b` evaluated on `word`.
    pub table: Vec<SeparationEntry>,
}

/// The word `(a^k b a b⁻¹)^n (a^{−(k−1)} b² a⁻¹ b⁻¹ a⁻¹ b⁻¹)^n` and the
/// evaluation table separating `φ_{a^k}` from higher powers and homomorphisms.
pub fn separation_witness(k: u32, n: u32, extra: u32) -> Result<SeparationWitness> {
    if k < 2 {
        return Err(Error::Precondition(format!("k = {k} must be at least 2")));
    }
    let k = k as i64;
    let left = ReducedWord::from_syllables(2, &[(0, k), (1, 1), (0, 1), (1, -1)])?;
    let right = ReducedWord::from_syllables(2, &[(0, -(k - 1)), (1, 2), (0, -1), (1, -1), (0, -1), (1, -1)])?;
    let word = left.pow(n as i64).multiply(&right.pow(n as i64))?;
    let mut table = Vec::new();
    for j in 0..=extra as i64 {
        let phi = Quasimorphism::brooks(ReducedWord::from_syllables(2, &[(0, k + j)])?)?;
        table.push(SeparationEntry { phi: phi.to_string(), value: phi.eval(&word) });
    }
    for g in 0..2 {
        let phi = Quasimorphism::hom(g);
        table.push(SeparationEntry { phi: phi.to_string(), value: phi.eval(&word) });
    }
    Ok(SeparationWitness { k: k as u32, n, word, table })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> ReducedWord {
        ReducedWord::parse(2, s).unwrap()
    }

    #[test]
    fn reduce_cancels() {
        assert!(w("a A").is_identity());
        assert!(w("a a^-1").is_identity());
        assert_eq!(w("a a b B a"), w("a^3"));
        let long = w("a^2 b a^3 b^2 a b^-3 a^-7 b^2");
        assert_eq!(long.syllables().len(), 8);
        assert_eq!(long.to_string(), "a^2 b a^3 b^2 a b^-3 a^-7 b^2");
    }

    #[test]
    fn reduce_is_idempotent() {
        let x = w("a b B A b a a");
        let y = ReducedWord::reduce(2, &x.letters()).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn multiply_and_invert() {
        assert_eq!(w("a b").multiply(&w("B a")).unwrap(), w("a^2"));
        assert_eq!(w("1").multiply(&w("b a")).unwrap(), w("b a"));
        assert_eq!(w("a^2 b").invert(), w("B A^2"));
        assert_eq!(w("a^2 b").invert().to_string(), "b^-1 a^-2");
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let x = ReducedWord::parse(3, "c").unwrap();
        assert!(matches!(w("a").multiply(&x), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn parse_errors() {
        assert!(ReducedWord::parse(2, "c").is_err());
        assert!(ReducedWord::parse(2, "a^x").is_err());
        assert!(ReducedWord::parse(2, "a#").is_err());
    }

    #[test]
    fn small_balls() {
        assert_eq!(ball_default(2, 0).unwrap(), vec![ReducedWord::identity(2)]);
        let b1 = ball_default(2, 1).unwrap();
        assert_eq!(b1, vec![w("1"), w("a"), w("A"), w("b"), w("B")]);
    }

    #[test]
    fn ball_respects_cap() {
        assert!(matches!(ball(2, 20, 1000), Err(Error::ResourceCap { .. })));
    }

    #[test]
    fn brooks_pattern_must_be_nontrivial() {
        assert!(Quasimorphism::brooks(ReducedWord::identity(2)).is_err());
        assert!(Quasimorphism::parse(2, "hom:ab").is_err());
        assert!(Quasimorphism::parse(2, "foo:a").is_err());
    }

    #[test]
    fn brooks_a_squared_single_pair() {
        let phi = Quasimorphism::parse(2, "brooks:a^2").unwrap();
        assert_eq!(defect(&phi, &w("a"), &w("a")).unwrap(), 1);
    }

    #[test]
    fn brooks_a_on_commutator_ba() {
        let phi = Quasimorphism::parse(2, "brooks:a").unwrap();
        assert_eq!(phi.eval(&w("b").commutator(&w("a")).unwrap()), 0);
    }

    #[test]
    fn hom_count_has_zero_defect() {
        let phi = Quasimorphism::hom(0);
        let r = defect_scan(&phi, &PairSpec::Random { rank: 2, max_len: 12, count: 500, seed: 7 }).unwrap();
        assert_eq!(r.defect_max, 0);
    }

    #[test]
    fn separation_with_zero_power_is_trivial() {
        let s = separation_witness(2, 0, 3).unwrap();
        assert!(s.word.is_identity());
        assert!(s.table.iter().all(|e| e.value == 0));
        assert!(separation_witness(1, 1, 1).is_err());
    }

    #[test]
    fn drop_last_letter() {
        assert_eq!(w("a b^-2").drop_last(), w("a B"));
        assert_eq!(w("a b").drop_last(), w("a"));
        assert!(w("1").drop_last().is_identity());
    }
}
