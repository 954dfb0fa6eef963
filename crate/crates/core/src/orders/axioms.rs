use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::group::GroupBackend;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: &'static str,
    pub witness: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub triples_checked: usize,
    /// First violation found for each axiom, in the order the axioms are listed.
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

const AXIOMS: [&str; 5] = ["totality", "antisymmetry", "transitivity", "left_invariance", "product_positive"];

/// Checks a comparison oracle on triples drawn from `samples`: totality
/// (`Equal` exactly on equal elements), antisymmetry, transitivity,
/// left-invariance, and that `a, b ≻ e` implies `ab ≻ e` and `a⁻¹ ≺ e`.
///
/// All `samples³` triples are visited when that is at most `triples`;
/// otherwise `triples` seeded random triples are drawn.
pub fn order_axiom_check<G, F>(group: &G, cmp: F, samples: &[G::Elem], triples: usize, seed: u64) -> AxiomReport
where
    G: GroupBackend,
    F: Fn(&G::Elem, &G::Elem) -> Ordering,
{
    let n = samples.len();
    let mut found: Vec<Option<AxiomViolation>> = vec![None; AXIOMS.len()];
    let mut note = |i: usize, w: Vec<String>| {
        if found[i].is_none() {
            found[i] = Some(AxiomViolation { axiom: AXIOMS[i], witness: w });
        }
    };
    let e = group.identity();
    let mut check = |g: &G::Elem, h: &G::Elem, k: &G::Elem| {
        let gh = cmp(g, h);
        if (gh == Ordering::Equal) != (g == h) {
            note(0, vec![g.to_string(), h.to_string()]);
        }
        if cmp(h, g) != gh.reverse() {
            note(1, vec![g.to_string(), h.to_string()]);
        }
        if gh == Ordering::Less && cmp(h, k) == Ordering::Less && cmp(g, k) != Ordering::Less {
            note(2, vec![g.to_string(), h.to_string(), k.to_string()]);
        }
        if cmp(&group.multiply(k, g), &group.multiply(k, h)) != gh {
            note(3, vec![k.to_string(), g.to_string(), h.to_string()]);
        }
        if cmp(&e, g) == Ordering::Less && cmp(&e, h) == Ordering::Less {
            let prod = group.multiply(g, h);
            if cmp(&e, &prod) != Ordering::Less || cmp(&group.invert(g), &e) != Ordering::Less {
                note(4, vec![g.to_string(), h.to_string()]);
            }
        }
    };
    let mut checked = 0;
    if n > 0 && (n as u128).pow(3) <= triples as u128 {
        for g in samples {
            for h in samples {
                for k in samples {
                    check(g, h, k);
                    checked += 1;
                }
            }
        }
    } else if n > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..triples {
            let (i, j, l) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            check(&samples[i], &samples[j], &samples[l]);
            checked += 1;
        }
    }
    AxiomReport { triples_checked: checked, violations: found.into_iter().flatten().collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FreeAbelian, ZVec};

    #[test]
    fn lexicographic_z2_passes() {
        let z2 = FreeAbelian { dim: 2 };
        let samples: Vec<ZVec> = (-3..=3).flat_map(|a| (-3..=3).map(move |b| ZVec(vec![a, b]))).collect();
        let r = order_axiom_check(&z2, |g: &ZVec, h: &ZVec| g.0.cmp(&h.0), &samples, 200_000, 1);
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.triples_checked, 49usize.pow(3));
    }

    #[test]
    fn non_invariant_order_is_caught() {
        // order by L1 norm then lexicographic: total, but not translation invariant
        let z2 = FreeAbelian { dim: 2 };
        let samples: Vec<ZVec> = (-2..=2).flat_map(|a| (-2..=2).map(move |b| ZVec(vec![a, b]))).collect();
        let r = order_axiom_check(&z2, |g: &ZVec, h: &ZVec| g.l1().cmp(&h.l1()).then(g.0.cmp(&h.0)), &samples, 1_000_000, 1);
        assert!(r.violated("left_invariance"));
        assert!(!r.violated("totality"));
    }
}
