use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::Rational;

/// Compares a distance with a radius without taking square roots.
pub trait Metric<P> {
    /// `d(x, y)` compared with `r`.
    fn cmp_dist(&self, x: &P, y: &P, r: &Rational) -> Ordering;
}

/// `L¹` distance on rational vectors (the word metric on `Z^d` with unit generators).
#[derive(Debug, Clone, Copy, Default)]
pub struct L1;

impl Metric<Vec<Rational>> for L1 {
    fn cmp_dist(&self, x: &Vec<Rational>, y: &Vec<Rational>, r: &Rational) -> Ordering {
        let d: Rational = x.iter().zip(y).map(|(a, b)| num_traits::Signed::abs(&(a - b))).sum();
        d.cmp(r)
    }
}

/// Euclidean distance on rational vectors, compared via squares.
#[derive(Debug, Clone, Copy, Default)]
pub struct Euclidean;

impl Metric<Vec<Rational>> for Euclidean {
    fn cmp_dist(&self, x: &Vec<Rational>, y: &Vec<Rational>, r: &Rational) -> Ordering {
        let d2: Rational = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
        d2.cmp(&(r * r))
    }
}

/// Translation action of rational vectors on themselves.
pub fn translate(g: &Vec<Rational>, x: &Vec<Rational>) -> Vec<Rational> {
    g.iter().zip(x).map(|(a, b)| a + b).collect()
}

/// One factor `H_i` of a bounded-generation product: sampled elements and
/// the radius `r_i` with `H_i x ⊆ B_{r_i}(x)`.
#[derive(Debug, Clone)]
pub struct OrbitFactor<G> {
    pub samples: Vec<G>,
    pub radius: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub factors: usize,
    pub bound: String,
    pub products_checked: usize,
    /// Products landing exactly on the sphere of radius `Σ r_i`.
    pub tight: usize,
}

/// Checks `d(h₁⋯hₙ·x, x) ≤ r₁ + ⋯ + rₙ` on `products` seeded random choices
/// of `hᵢ ∈ Hᵢ`, after checking each `d(h·x, x) ≤ rᵢ` for the samples.
///
/// A violation means the supplied action is not by isometries (or a radius
/// is wrong) and is reported with the offending product.
pub fn orbit_bound_check<G, P, A, M>(
    x: &P,
    factors: &[OrbitFactor<G>],
    act: A,
    metric: &M,
    products: usize,
    seed: u64,
) -> Result<OrbitReport>
where
    G: std::fmt::Debug,
    P: std::fmt::Debug,
    A: Fn(&G, &P) -> P,
    M: Metric<P>,
{
    if factors.iter().any(|f| f.samples.is_empty()) {
        return Err(Error::Precondition("every factor needs at least one sample".into()));
    }
    for (i, f) in factors.iter().enumerate() {
        for h in &f.samples {
            if metric.cmp_dist(&act(h, x), x, &f.radius) == Ordering::Greater {
                return Err(Error::Violation(format!("factor {i}: {h:?} moves the base point more than {}", f.radius)));
            }
        }
    }
    let bound: Rational = factors.iter().map(|f| f.radius.clone()).sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tight = 0;
    for _ in 0..products {
        let picks: Vec<&G> = factors.iter().map(|f| &f.samples[rng.gen_range(0..f.samples.len())]).collect();
        // h₁⋯hₙ·x acts right to left
        let y = picks.iter().rev().fold(None::<P>, |acc, h| Some(act(h, acc.as_ref().unwrap_or(x)))).expect("nonempty");
        match metric.cmp_dist(&y, x, &bound) {
            Ordering::Greater => {
                return Err(Error::Violation(format!("product {picks:?} moves {x:?} to {y:?}, beyond {bound}")));
            }
            Ordering::Equal => tight += 1,
            Ordering::Less => {}
        }
    }
    Ok(OrbitReport { factors: factors.len(), bound: bound.to_string(), products_checked: products, tight })
}
