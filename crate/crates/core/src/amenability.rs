//! Finite witnesses for amenability and its failure: Følner sets in `Z^d`,
//! growth of balls, the Ponzi scheme on `F_k` and the paradoxical
//! decomposition of `F_2`.
//!
//! Statements about a whole infinite group are checked on balls. Where a
//! condition involves elements outside the ball the check is restricted to
//! the interior (the ball of one smaller radius) and the report says so.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freegroup::{ball, ReducedWord, DEFAULT_BALL_CAP};
use crate::group::{word_ball, FreeAbelian, FreeGroup, GroupBackend, ZVec};
use crate::Rational;

fn rat(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FolnerTest {
    pub element: String,
    pub overlap: usize,
    /// `#(F ∩ aF) / #F`.
    pub ratio: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FolnerReport {
    pub size: usize,
    pub epsilon: String,
    pub threshold: String,
    pub tests: Vec<FolnerTest>,
    pub passed: bool,
    /// First test element that fails.
    pub witness: Option<String>,
}

/// Checks `#(F ∩ aF) > (1 − ε)·#F` for every `a ∈ S`, exactly.
pub fn check_folner<G: GroupBackend>(group: &G, f: &[G::Elem], s: &[G::Elem], epsilon: &Rational) -> Result<FolnerReport> {
    let set: HashSet<&G::Elem> = f.iter().collect();
    if set.is_empty() {
        return Err(Error::Precondition("Følner candidate must be nonempty".into()));
    }
    let n = set.len();
    let threshold = (Rational::one() - epsilon) * rat(n);
    let tests: Vec<FolnerTest> = s
        .iter()
        .map(|a| {
            let overlap = set.iter().filter(|x| set.contains(&group.multiply(a, x))).count();
            FolnerTest {
                element: a.to_string(),
                overlap,
                ratio: (rat(overlap) / rat(n)).to_string(),
                passed: rat(overlap) > threshold,
            }
        })
        .collect();
    let witness = tests.iter().find(|t| !t.passed).map(|t| t.element.clone());
    Ok(FolnerReport {
        size: n,
        epsilon: epsilon.to_string(),
        threshold: threshold.to_string(),
        passed: witness.is_none(),
        tests,
        witness,
    })
}

/// `[0, n)^d` as a list of vectors.
pub fn cube(d: usize, n: i64) -> Vec<ZVec> {
    let mut out = vec![ZVec::zero(d)];
    for i in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..n).map(move |k| {
                    let mut w = v.0.clone();
                    w[i] = k;
                    ZVec(w)
                })
            })
            .collect();
    }
    if n <= 0 {
        out.clear();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FolnerBox {
    pub dim: usize,
    pub n: i64,
    pub report: FolnerReport,
}

/// `#([0,n)^d ∩ (a + [0,n)^d)) = Π (n − |aᵢ|)⁺`.
fn cube_overlap(n: i64, a: &ZVec) -> BigInt {
    a.0.iter().map(|x| BigInt::from((n - x.abs()).max(0))).product()
}

/// Smallest cube `[0, n)^d` passing [`check_folner`] for `S`, `ε`; the
/// search uses the closed-form overlap and the result is then checked by
/// direct counting.
pub fn folner_box(d: usize, s: &[ZVec], epsilon: &Rational, max_n: i64) -> Result<FolnerBox> {
    if *epsilon <= Rational::zero() {
        return Err(Error::Precondition("epsilon must be positive".into()));
    }
    if s.iter().any(|a| a.0.len() != d) {
        return Err(Error::Precondition(format!("test elements must lie in Z^{d}")));
    }
    let keep = Rational::one() - epsilon;
    let passes = |n: i64| {
        let vol = Rational::from_integer(num_traits::pow(BigInt::from(n), d));
        s.iter().all(|a| Rational::from_integer(cube_overlap(n, a)) > &keep * &vol)
    };
    let n = (1..=max_n).find(|&n| passes(n)).ok_or(Error::NotFoundWithinCap { cap: max_n as u64 })?;
    let report = check_folner(&FreeAbelian { dim: d }, &cube(d, n), s, epsilon)?;
    if !report.passed {
        return Err(Error::Violation(format!("closed form and direct count disagree at n = {n}")));
    }
    Ok(FolnerBox { dim: d, n, report })
}

/// The word `w` minus its last letter; the identity stays put.
pub fn ponzi_map(w: &ReducedWord) -> ReducedWord {
    w.drop_last()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PonziRow {
    pub word: String,
    pub length: usize,
    /// `#M⁻¹(g) ∖ {g}`.
    pub preimages: usize,
    /// Wealth after one round, starting from one dollar each.
    pub wealth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PonziReport {
    pub rank: usize,
    pub radius: usize,
    pub ball_size: usize,
    pub interior_radius: usize,
    pub interior_size: usize,
    /// Largest `|g⁻¹M(g)|` over the ball.
    pub max_displacement: usize,
    pub min_interior_preimages: usize,
    pub wealth_identity: usize,
    /// Distinct values of `f₁` on the interior away from `e`.
    pub wealth_interior: Vec<usize>,
    pub wealth_boundary: Vec<usize>,
    pub total_wealth: usize,
    pub conserved: bool,
    pub passed: bool,
    pub rows: Vec<PonziRow>,
}

/// Runs one round of "pass your dollar towards the identity" on the ball of
/// radius `R` in `F_k`.
///
/// Every word of length `< R` receives from all `2k − 1` (or, at `e`, `2k`)
/// one-letter extensions; words of length `R` pass their dollar inward and
/// receive nothing, so the total over the ball is conserved.
pub fn build_ponzi_free(k: usize, r: usize) -> Result<PonziReport> {
    if k < 2 || r < 1 {
        return Err(Error::Precondition("need rank >= 2 and radius >= 1".into()));
    }
    let words = ball(k, r, DEFAULT_BALL_CAP)?;
    let index: HashMap<&ReducedWord, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut preimages = vec![0usize; words.len()];
    let mut wealth = vec![0usize; words.len()];
    let mut max_displacement = 0;
    for w in &words {
        let m = ponzi_map(w);
        let j = *index.get(&m).ok_or_else(|| Error::Violation(format!("M({w}) left the ball")))?;
        wealth[j] += 1;
        if m != *w {
            preimages[j] += 1;
        }
        max_displacement = max_displacement.max(w.invert().mul_unchecked(&m).len());
    }
    let interior: Vec<usize> = (0..words.len()).filter(|&i| words[i].len() < r).collect();
    let e = index[&ReducedWord::identity(k)];
    let distinct = |it: &mut dyn Iterator<Item = usize>| {
        let mut v: Vec<usize> = it.collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let wealth_interior = distinct(&mut interior.iter().filter(|&&i| i != e).map(|&i| wealth[i]));
    let wealth_boundary = distinct(&mut (0..words.len()).filter(|&i| words[i].len() == r).map(|i| wealth[i]));
    let min_interior_preimages = interior.iter().map(|&i| preimages[i]).min().unwrap_or(0);
    let total_wealth: usize = wealth.iter().sum();
    let exact_counts = interior.iter().all(|&i| preimages[i] == if i == e { 2 * k } else { 2 * k - 1 });
    let rows = words
        .iter()
        .enumerate()
        .filter(|(_, w)| w.len() <= 2 || w.len() == r)
        .take(64)
        .map(|(i, w)| PonziRow { word: w.to_string(), length: w.len(), preimages: preimages[i], wealth: wealth[i] })
        .collect();
    let conserved = total_wealth == words.len();
    Ok(PonziReport {
        rank: k,
        radius: r,
        ball_size: words.len(),
        interior_radius: r - 1,
        interior_size: interior.len(),
        max_displacement,
        min_interior_preimages,
        wealth_identity: wealth[e],
        passed: conserved && exact_counts && max_displacement <= 1 && min_interior_preimages >= 2 && wealth_boundary == [0],
        wealth_interior,
        wealth_boundary,
        total_wealth,
        conserved,
        rows,
    })
}

/// Aligned text table of the Ponzi rows.
pub fn ponzi_table(report: &PonziReport) -> String {
    let width = report.rows.iter().map(|r| r.word.len()).max().unwrap_or(4).max(4);
    let mut out = format!("{:<width$}  len  preimages  wealth\n", "word");
    for r in &report.rows {
        let _ = writeln!(out, "{:<width$}  {:>3}  {:>9}  {:>6}", r.word, r.length, r.preimages, r.wealth);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthKind {
    Polynomial,
    Exponential,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthReport {
    pub backend: String,
    pub radius: usize,
    /// `#B(r)` for `r = 0..=radius` (`0..=2·radius` for `Z^d`).
    pub sizes: Vec<usize>,
    pub kind: GrowthKind,
    /// `#B(2R) / #B(R)` and the bound `2^d (1 + 1/R)^d` for `Z^d`.
    pub doubling_ratio: Option<String>,
    pub doubling_bound: Option<String>,
    pub passed: bool,
}

/// For `Z^d`, checks `#B(2R)/#B(R) ≤ 2^d (1 + 1/R)^d`: balls grow
/// polynomially, so for `R` much larger than a displacement bound no
/// bounded-distance map can be two-to-one. For `F_k`, checks
/// `#B(r+1) ≥ 2·#B(r)` for every `r < R`.
pub fn growth_obstruction(backend: GrowthBackend, r: usize) -> Result<GrowthReport> {
    if r == 0 {
        return Err(Error::Precondition("radius must be positive".into()));
    }
    match backend {
        GrowthBackend::Abelian(d) => {
            let g = FreeAbelian { dim: d };
            let gens: Vec<ZVec> = (0..d).map(|i| ZVec::unit(d, i)).collect();
            let pts = word_ball(&g, &gens, 2 * r, DEFAULT_BALL_CAP)?;
            let sizes: Vec<usize> = (0..=2 * r).map(|k| pts.iter().filter(|(_, l)| *l <= k).count()).collect();
            let ratio = rat(sizes[2 * r]) / rat(sizes[r]);
            let base = (Rational::one() + Rational::one() / rat(r)) * rat(2);
            let bound = num_traits::pow(base, d);
            Ok(GrowthReport {
                backend: g.name(),
                radius: r,
                passed: ratio <= bound,
                doubling_ratio: Some(ratio.to_string()),
                doubling_bound: Some(bound.to_string()),
                sizes,
                kind: GrowthKind::Polynomial,
            })
        }
        GrowthBackend::Free(k) => {
            let g = FreeGroup { rank: k };
            let words = ball(k, r, DEFAULT_BALL_CAP)?;
            let sizes: Vec<usize> = (0..=r).map(|j| words.iter().filter(|w| w.len() <= j).count()).collect();
            let passed = sizes.windows(2).all(|w| w[1] >= 2 * w[0]);
            Ok(GrowthReport {
                backend: g.name(),
                radius: r,
                sizes,
                kind: GrowthKind::Exponential,
                doubling_ratio: None,
                doubling_bound: None,
                passed,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthBackend {
    Abelian(usize),
    Free(usize),
}

/// The four pieces of the paradoxical decomposition of `F_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Piece {
    A1,
    A2,
    B1,
    B2,
}

impl Piece {
    pub const ALL: [Piece; 4] = [Piece::A1, Piece::A2, Piece::B1, Piece::B2];
}

/// Pieces by first letter (`a`, `a⁻¹`, `b`, `b⁻¹`), with the identity added
/// to each piece in `identity_in`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParadoxicalDecomposition {
    pub identity_in: Vec<Piece>,
}

impl ParadoxicalDecomposition {
    pub fn standard() -> Self {
        Self { identity_in: vec![Piece::A1] }
    }

    pub fn contains(&self, p: Piece, w: &ReducedWord) -> bool {
        match w.first_letter() {
            None => self.identity_in.contains(&p),
            Some(l) => {
                let want = match p {
                    Piece::A1 => (0, false),
                    Piece::A2 => (0, true),
                    Piece::B1 => (1, false),
                    Piece::B2 => (1, true),
                };
                (l.generator, l.inverse) == want
            }
        }
    }

    /// Whether `w ∈ t·P`, i.e. `t⁻¹w ∈ P`.
    fn in_translate(&self, t: &ReducedWord, p: Piece, w: &ReducedWord) -> bool {
        self.contains(p, &t.invert().mul_unchecked(w))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParadoxReport {
    pub radius: usize,
    pub ball_size: usize,
    pub disjoint: bool,
    pub covers_ball: bool,
    /// `a⁻¹A₁ ∪ aA₂` contains the interior.
    pub a_cover: bool,
    /// `b⁻¹B₁ ∪ bB₂` contains the interior.
    pub b_cover: bool,
    pub witness: Option<String>,
    pub passed: bool,
}

/// Checks the decomposition on `ball(2, R)`: every word lies in exactly one
/// piece, and every word of length `< R` lies in `a⁻¹A₁ ∪ aA₂` and in
/// `b⁻¹B₁ ∪ bB₂`.
pub fn verify_paradoxical(dec: &ParadoxicalDecomposition, r: usize) -> Result<ParadoxReport> {
    let words = ball(2, r, DEFAULT_BALL_CAP)?;
    let gen = |i| ReducedWord::generator(2, i).expect("rank 2");
    let (a, b) = (gen(0), gen(1));
    let (ai, bi) = (a.invert(), b.invert());
    let mut witness = None;
    let (mut disjoint, mut covers_ball) = (true, true);
    let (mut a_cover, mut b_cover) = (true, true);
    for w in &words {
        match Piece::ALL.iter().filter(|&&p| dec.contains(p, w)).count() {
            0 => {
                covers_ball = false;
                witness.get_or_insert_with(|| format!("{w} lies in no piece"));
            }
            1 => {}
            _ => {
                disjoint = false;
                witness.get_or_insert_with(|| format!("{w} lies in several pieces"));
            }
        }
        if w.len() < r {
            if !(dec.in_translate(&ai, Piece::A1, w) || dec.in_translate(&a, Piece::A2, w)) {
                a_cover = false;
                witness.get_or_insert_with(|| format!("{w} not in a^-1 A1 ∪ a A2"));
            }
            if !(dec.in_translate(&bi, Piece::B1, w) || dec.in_translate(&b, Piece::B2, w)) {
                b_cover = false;
                witness.get_or_insert_with(|| format!("{w} not in b^-1 B1 ∪ b B2"));
            }
        }
    }
    Ok(ParadoxReport {
        radius: r,
        ball_size: words.len(),
        disjoint,
        covers_ball,
        a_cover,
        b_cover,
        passed: disjoint && covers_ball && a_cover && b_cover,
        witness,
    })
}

pub fn build_paradoxical_f2(r: usize) -> Result<(ParadoxicalDecomposition, ParadoxReport)> {
    let dec = ParadoxicalDecomposition::standard();
    let report = verify_paradoxical(&dec, r)?;
    Ok((dec, report))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreeFolnerReport {
    pub radius: usize,
    pub samples: usize,
    pub epsilon: String,
    /// Samples passing the Følner test: always zero when the bound holds.
    pub passing: usize,
    /// Samples violating `#(F∩aF) + #(F∩bF) ≤ #F − [e ∈ F]`.
    pub bound_violations: usize,
    /// Largest `(#(F∩aF) + #(F∩bF)) / #F` seen.
    pub max_overlap_ratio: String,
    pub note: &'static str,
}

/// `F_2` has no `({a, b}, ε)`-invariant sets for `ε ≤ 1/2`.
///
/// For finite `F`, `aF` lies in the words starting with `a` together with
/// `a·(F ∩ a⁻¹-words)`, so `#(F∩aF) ≤ #F_a + #F_{a⁻¹}` and likewise for `b`;
/// summing, `#(F∩aF) + #(F∩bF) ≤ #F − [e ∈ F]`, while passing would need
/// more than `2(1−ε)#F ≥ #F`. The bound is checked exactly on seeded subsets
/// of `ball(2, R)`; it is not an exhaustive search over subsets.
pub fn free_folner_obstruction(r: usize, samples: usize, epsilon: &Rational, seed: u64) -> Result<FreeFolnerReport> {
    if *epsilon > Rational::new(BigInt::one(), BigInt::from(2)) {
        return Err(Error::Precondition("the counting bound needs epsilon <= 1/2".into()));
    }
    let words = ball(2, r, DEFAULT_BALL_CAP)?;
    let f2 = FreeGroup { rank: 2 };
    let s = [ReducedWord::generator(2, 0)?, ReducedWord::generator(2, 1)?];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut passing, mut violations) = (0, 0);
    let mut best = Rational::zero();
    for i in 0..samples {
        let f: Vec<ReducedWord> = match i % 3 {
            // whole sub-balls, centred anywhere in the ball
            0 => {
                let c = &words[rng.gen_range(0..words.len())];
                let rad = rng.gen_range(0..=r);
                words.iter().filter(|w| w.len() <= rad).map(|w| c.mul_unchecked(w)).collect()
            }
            // random subsets
            1 => words.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect(),
            // words with a long common a-prefix, the best case for the a-test
            _ => words.iter().filter(|w| w.first_letter().map(|l| l.generator == 0 && !l.inverse).unwrap_or(false) || rng.gen_bool(0.1)).cloned().collect(),
        };
        if f.is_empty() {
            continue;
        }
        let set: HashSet<&ReducedWord> = f.iter().collect();
        let overlap = |t: &ReducedWord| set.iter().filter(|x| set.contains(&t.mul_unchecked(x))).count();
        let (oa, ob) = (overlap(&s[0]), overlap(&s[1]));
        let has_e = set.iter().any(|w| w.is_identity());
        if oa + ob > set.len() - usize::from(has_e) {
            violations += 1;
        }
        let ratio = rat(oa + ob) / rat(set.len());
        if ratio > best {
            best = ratio;
        }
        if check_folner(&f2, &f, &s, epsilon)?.passed {
            passing += 1;
        }
    }
    Ok(FreeFolnerReport {
        radius: r,
        samples,
        epsilon: epsilon.to_string(),
        passing,
        bound_violations: violations,
        max_overlap_ratio: best.to_string(),
        note: "seeded samples, not an exhaustive subset search",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn units(d: usize) -> Vec<ZVec> {
        (0..d).map(|i| ZVec::unit(d, i)).collect()
    }

    #[test]
    fn box_examples() {
        let z2 = FreeAbelian { dim: 2 };
        assert!(check_folner(&z2, &cube(2, 11), &units(2), &q(1, 10)).unwrap().passed);
        let r = check_folner(&z2, &cube(2, 2), &units(2), &q(1, 10)).unwrap();
        assert!(!r.passed);
        assert_eq!(r.tests[0].ratio, "1/2");
        let single = check_folner(&z2, &cube(2, 1), &units(2)[..1], &q(99, 100)).unwrap();
        assert_eq!(single.tests[0].overlap, 0);
        assert!(!single.passed);
    }

    #[test]
    fn minimal_boxes() {
        assert_eq!(folner_box(2, &units(2), &q(1, 10), 1000).unwrap().n, 11);
        let pm = [ZVec(vec![1]), ZVec(vec![-1])];
        assert_eq!(folner_box(1, &pm, &q(1, 100), 1000).unwrap().n, 101);
        // the inequality is strict, so n = 1 (overlap 0) never passes
        assert_eq!(folner_box(2, &units(2), &q(1, 1), 1000).unwrap().n, 2);
        assert!(folner_box(2, &units(2), &q(0, 1), 10).is_err());
    }

    #[test]
    fn ponzi_small() {
        let r1 = build_ponzi_free(2, 1).unwrap();
        assert_eq!(r1.wealth_identity, 5);
        assert!(r1.wealth_interior.is_empty());
        let r = build_ponzi_free(3, 3).unwrap();
        assert_eq!((r.wealth_identity, r.wealth_interior.clone()), (7, vec![5]));
        assert!(r.passed);
        assert!(ponzi_table(&r).lines().count() > 1);
    }

    #[test]
    fn growth() {
        let z2 = growth_obstruction(GrowthBackend::Abelian(2), 10).unwrap();
        assert_eq!(z2.sizes[10], 221);
        assert!(z2.passed);
        let f2 = growth_obstruction(GrowthBackend::Free(2), 3).unwrap();
        assert_eq!(f2.sizes, [1, 5, 17, 53]);
        assert!(f2.passed);
        let z1 = growth_obstruction(GrowthBackend::Abelian(1), 50).unwrap();
        assert_eq!(z1.doubling_ratio.unwrap(), "201/101");
    }

    #[test]
    fn paradox_and_negative_control() {
        assert!(build_paradoxical_f2(3).unwrap().1.passed);
        let bad = verify_paradoxical(&ParadoxicalDecomposition { identity_in: vec![] }, 3).unwrap();
        assert!(!bad.covers_ball && !bad.passed);
        let twice = verify_paradoxical(&ParadoxicalDecomposition { identity_in: vec![Piece::A1, Piece::B1] }, 3).unwrap();
        assert!(!twice.disjoint && twice.covers_ball);
    }

    #[test]
    fn free_group_is_not_folner() {
        let r = free_folner_obstruction(3, 60, &q(1, 4), 9).unwrap();
        assert_eq!((r.passing, r.bound_violations), (0, 0));
        assert!(free_folner_obstruction(3, 1, &q(3, 4), 9).is_err());
    }
}
