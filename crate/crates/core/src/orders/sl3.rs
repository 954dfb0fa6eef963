//! The `SL(3, Z)` non-orderability argument, mechanized.
//!
//! Number the six off-diagonal positions of a 3×3 matrix
//!
//! ```text
//!     [ *  1  2 ]
//!     [ 4  *  3 ]
//!     [ 5  6  * ]
//! ```
//!
//! and write `⟨k⟩` for the elementary matrix with a 1 in position `k`. Each
//! cyclic triple `(k−1, k, k+1)` generates a Heisenberg group with `⟨k⟩`
//! central, so in any left order `⟨k⟩ ≪ ⟨k−1⟩` or `⟨k⟩ ≪ ⟨k+1⟩`. The engine
//! below derives `⟨i⟩ ≪ ⟨i⟩` from either choice at `k = 2` using only that
//! disjunction, asymmetry of `≪`, and transitivity.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::heisenberg::HeisElement;
use crate::{BigIntMat, Heis};

/// `lhs ≪ rhs` between two of the six positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LlFact {
    pub lhs: u8,
    pub rhs: u8,
}

impl LlFact {
    pub fn new(lhs: u8, rhs: u8) -> Result<Self> {
        if !(1..=6).contains(&lhs) || !(1..=6).contains(&rhs) {
            return Err(Error::Parse(format!("positions must be in 1..=6, got {lhs}<<{rhs}")));
        }
        Ok(Self { lhs, rhs })
    }

    pub fn reversed(self) -> Self {
        Self { lhs: self.rhs, rhs: self.lhs }
    }

    pub fn is_reflexive(self) -> bool {
        self.lhs == self.rhs
    }
}

impl fmt::Display for LlFact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<<{}", self.lhs, self.rhs)
    }
}

impl FromStr for LlFact {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (l, r) = s.split_once("<<").ok_or_else(|| Error::Parse(format!("expected i<<j, got {s:?}")))?;
        let p = |t: &str| t.trim().parse::<u8>().map_err(|_| Error::Parse(format!("bad position {t:?}")));
        Self::new(p(l)?, p(r)?)
    }
}

/// Cyclic predecessor and successor of a position.
pub fn neighbours(k: u8) -> (u8, u8) {
    let prev = if k == 1 { 6 } else { k - 1 };
    let next = if k == 6 { 1 } else { k + 1 };
    (prev, next)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statement {
    Fact(LlFact),
    Or(LlFact, LlFact),
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Fact(a) => write!(f, "{a}"),
            Self::Or(a, b) => write!(f, "{a} | {b}"),
        }
    }
}

impl FromStr for Statement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('|') {
            Some((a, b)) => Ok(Self::Or(a.parse()?, b.parse()?)),
            None => Ok(Self::Fact(s.parse()?)),
        }
    }
}

impl Serialize for Statement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Statement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// `⟨k⟩ ≪ ⟨k−1⟩ ∨ ⟨k⟩ ≪ ⟨k+1⟩` for the Heisenberg triple centred at `k`.
    LemmaDisjunction,
    /// Choice of one disjunct of the first lemma instance (the case split).
    Assumption,
    /// From `A ∨ B` and a known `b ≪ a` refuting `A = (a ≪ b)`, conclude `B`.
    AsymmetryPruning,
    /// `a ≪ b`, `b ≪ c` ⟹ `a ≪ c`.
    Transitivity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationStep {
    pub rule: Rule,
    pub premises: Vec<usize>,
    pub conclusion: Statement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationTrace {
    pub schema: u32,
    pub initial: LlFactString,
    pub steps: Vec<DerivationStep>,
}

/// `LlFact` carried as its string literal in JSON.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LlFactString(pub LlFact);

impl Serialize for LlFactString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for LlFactString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map(LlFactString).map_err(serde::de::Error::custom)
    }
}

impl DerivationTrace {
    pub fn lemma_applications(&self) -> usize {
        self.steps.iter().filter(|s| s.rule == Rule::LemmaDisjunction).count()
    }

    pub fn final_fact(&self) -> Option<LlFact> {
        match self.steps.last()?.conclusion {
            Statement::Fact(f) => Some(f),
            Statement::Or(..) => None,
        }
    }

    /// The `≪` chain established by lemma applications, in derivation order.
    pub fn chain(&self) -> Vec<LlFact> {
        self.steps
            .iter()
            .filter(|s| matches!(s.rule, Rule::Assumption | Rule::AsymmetryPruning))
            .filter_map(|s| match s.conclusion {
                Statement::Fact(f) => Some(f),
                Statement::Or(..) => None,
            })
            .collect()
    }
}

fn lemma_instance(k: u8) -> Statement {
    let (prev, next) = neighbours(k);
    Statement::Or(LlFact { lhs: k, rhs: prev }, LlFact { lhs: k, rhs: next })
}

/// Derives a contradiction `i ≪ i` from one branch of the lemma at the
/// triple `(1, 2, 3)`: `initial` must be `2<<1` or `2<<3`.
pub fn sl3_contradiction(initial: LlFact) -> Result<DerivationTrace> {
    let start = lemma_instance(2);
    let Statement::Or(left, right) = start else { unreachable!() };
    if initial != left && initial != right {
        return Err(Error::Precondition(format!("initial fact must be {left} or {right}, got {initial}")));
    }
    let mut steps = vec![
        DerivationStep { rule: Rule::LemmaDisjunction, premises: vec![], conclusion: start },
        DerivationStep { rule: Rule::Assumption, premises: vec![0], conclusion: Statement::Fact(initial) },
    ];
    let mut facts: Vec<(LlFact, usize)> = vec![(initial, 1)];
    let mut applied: BTreeSet<u8> = BTreeSet::from([2]);

    loop {
        if let Some(cycle) = find_cycle(&facts, initial.lhs) {
            close_cycle(&mut steps, &cycle);
            return Ok(DerivationTrace { schema: 1, initial: LlFactString(initial), steps });
        }
        let next = (1..=6u8).filter(|k| !applied.contains(k)).find_map(|k| {
            let Statement::Or(a, b) = lemma_instance(k) else { unreachable!() };
            let refutes = |x: LlFact| facts.iter().find(|(f, _)| *f == x.reversed()).map(|&(_, i)| i);
            match (refutes(a), refutes(b)) {
                (Some(i), None) => Some((k, i, b)),
                (None, Some(i)) => Some((k, i, a)),
                _ => None,
            }
        });
        let Some((k, refuting, conclusion)) = next else {
            return Err(Error::Violation("derivation did not close".into()));
        };
        applied.insert(k);
        steps.push(DerivationStep { rule: Rule::LemmaDisjunction, premises: vec![], conclusion: lemma_instance(k) });
        let disj = steps.len() - 1;
        steps.push(DerivationStep { rule: Rule::AsymmetryPruning, premises: vec![disj, refuting], conclusion: Statement::Fact(conclusion) });
        facts.push((conclusion, steps.len() - 1));
    }
}

/// A cycle of facts `f₀, f₁, …` with `fᵢ.rhs = fᵢ₊₁.lhs`, preferring one
/// through `prefer`.
fn find_cycle(facts: &[(LlFact, usize)], prefer: u8) -> Option<Vec<(LlFact, usize)>> {
    let mut starts: Vec<u8> = vec![prefer];
    starts.extend((1..=6).filter(|&v| v != prefer));
    for s in starts {
        // BFS over edges from s, recording the fact used to reach each node
        let mut via: [Option<(LlFact, usize)>; 7] = [None; 7];
        let mut queue = VecDeque::from([s]);
        let mut visited = [false; 7];
        while let Some(u) = queue.pop_front() {
            for &(f, i) in facts.iter().filter(|(f, _)| f.lhs == u) {
                if f.rhs == s {
                    let mut path = vec![(f, i)];
                    let mut cur = u;
                    while cur != s {
                        let (g, j) = via[cur as usize].expect("reached");
                        path.push((g, j));
                        cur = g.lhs;
                    }
                    path.reverse();
                    return Some(path);
                }
                if !visited[f.rhs as usize] {
                    visited[f.rhs as usize] = true;
                    via[f.rhs as usize] = Some((f, i));
                    queue.push_back(f.rhs);
                }
            }
        }
    }
    None
}

fn close_cycle(steps: &mut Vec<DerivationStep>, cycle: &[(LlFact, usize)]) {
    let (mut acc, mut acc_idx) = cycle[0];
    for &(f, i) in &cycle[1..] {
        acc = LlFact { lhs: acc.lhs, rhs: f.rhs };
        steps.push(DerivationStep { rule: Rule::Transitivity, premises: vec![acc_idx, i], conclusion: Statement::Fact(acc) });
        acc_idx = steps.len() - 1;
    }
}

/// Matrix index `(row, col)` of a position.
pub fn position(k: u8) -> (usize, usize) {
    match k {
        1 => (0, 1),
        2 => (0, 2),
        3 => (1, 2),
        4 => (1, 0),
        5 => (2, 0),
        6 => (2, 1),
        _ => panic!("position {k} out of range"),
    }
}

pub fn elementary(k: u8) -> BigIntMat {
    let (r, c) = position(k);
    BigIntMat::elementary(3, r, c, 1.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleCheck {
    /// Positions playing `x`, `z`, `y`.
    pub x: u8,
    pub z: u8,
    pub y: u8,
    /// `[⟨x⟩, ⟨y⟩] = ⟨z⟩^sign`.
    pub sign: i8,
    pub central: bool,
    /// Pairs of Heisenberg elements on which the induced map was checked to be multiplicative.
    pub homomorphism_pairs: usize,
}

/// Checks that `⟨x⟩, ⟨y⟩` have commutator `⟨z⟩^{±1}`, that `⟨z⟩` commutes
/// with both, and that `y^b x^a z^c ↦ ⟨y⟩^b ⟨x⟩^a ⟨z⟩^{±c}` is multiplicative
/// on a grid of normal forms.
pub fn check_triple(x: u8, z: u8, y: u8) -> Result<TripleCheck> {
    let (mx, my, mz) = (elementary(x), elementary(y), elementary(z));
    let comm = mx.commutator(&my)?;
    let sign = if comm == mz {
        1
    } else if comm == mz.inverse()? {
        -1
    } else {
        return Err(Error::Violation(format!("[<{x}>, <{y}>] = {comm} is not <{z}>^±1")));
    };
    let central = mz.mul_ref(&mx) == mx.mul_ref(&mz) && mz.mul_ref(&my) == my.mul_ref(&mz);
    if !central {
        return Err(Error::Violation(format!("<{z}> does not commute with <{x}> and <{y}>")));
    }
    let zs = if sign == 1 { mz.clone() } else { mz.inverse()? };
    let power = |m: &BigIntMat, e: i64| -> Result<BigIntMat> {
        let base = if e < 0 { m.inverse()? } else { m.clone() };
        Ok(base.pow(e.unsigned_abs() as u32))
    };
    let image = |g: &Heis| -> Result<BigIntMat> {
        Ok(power(&my, g.b)?.mul_ref(&power(&mx, g.a)?).mul_ref(&power(&zs, g.c)?))
    };
    let grid: Vec<Heis> = (-1..=1)
        .flat_map(|a| (-1..=1).flat_map(move |b| (-1..=1).map(move |c| HeisElement::from_i64(a, b, c))))
        .collect();
    let mut pairs = 0;
    for g in &grid {
        for h in &grid {
            if image(&g.mul(h))? != image(g)?.mul_ref(&image(h)?) {
                return Err(Error::Violation(format!("map is not multiplicative on ({g}, {h})")));
            }
            pairs += 1;
        }
    }
    Ok(TripleCheck { x, z, y, sign, central, homomorphism_pairs: pairs })
}

/// Runs [`check_triple`] on `(k−1, k, k+1)` for every `k`.
pub fn verify_heis_triples() -> Result<Vec<TripleCheck>> {
    (1..=6u8)
        .map(|k| {
            let (prev, next) = neighbours(k);
            check_triple(prev, k, next)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_are_off_diagonal_and_distinct() {
        let all: BTreeSet<_> = (1..=6).map(position).collect();
        assert_eq!(all.len(), 6);
        assert!(all.iter().all(|(r, c)| r != c));
    }

    #[test]
    fn triple_centred_at_two_is_the_standard_copy() {
        let t = check_triple(1, 2, 3).unwrap();
        assert_eq!(t.sign, 1);
        // x = <1>, y = <3>, z = <2> are the standard generators
        assert_eq!(elementary(1), crate::BigHeis::x().to_matrix());
        assert_eq!(elementary(3), crate::BigHeis::y().to_matrix());
        assert_eq!(elementary(2), crate::BigHeis::z().to_matrix());
    }

    #[test]
    fn wrong_triple_fails() {
        assert!(check_triple(1, 2, 4).is_err());
    }

    #[test]
    fn rejects_bad_initial() {
        assert!(sl3_contradiction(LlFact::new(3, 4).unwrap()).is_err());
        assert!(LlFact::new(0, 4).is_err());
        assert!("2<3".parse::<LlFact>().is_err());
    }

    #[test]
    fn statement_literals_round_trip() {
        for s in ["2<<3", "3<<2 | 3<<4"] {
            assert_eq!(s.parse::<Statement>().unwrap().to_string(), s);
        }
    }
}
