//! Word-problem backends: groups given by exact multiplication, inversion and
//! equality of normal forms.

use std::collections::HashSet;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freegroup::ReducedWord;
use crate::{BigIntMat, Heis};

pub trait GroupBackend {
    type Elem: Clone + Eq + Hash + Ord + Debug + Display;

    fn name(&self) -> String;
    fn identity(&self) -> Self::Elem;
    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn invert(&self, a: &Self::Elem) -> Self::Elem;

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeGroup {
    pub rank: usize,
}

impl GroupBackend for FreeGroup {
    type Elem = ReducedWord;

    fn name(&self) -> String {
        format!("free:{}", self.rank)
    }

    fn identity(&self) -> ReducedWord {
        ReducedWord::identity(self.rank)
    }

    fn multiply(&self, a: &ReducedWord, b: &ReducedWord) -> ReducedWord {
        a.mul_unchecked(b)
    }

    fn invert(&self, a: &ReducedWord) -> ReducedWord {
        a.invert()
    }
}

/// A vector in `Z^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ZVec(pub Vec<i64>);

impl ZVec {
    pub fn zero(d: usize) -> Self {
        Self(vec![0; d])
    }

    pub fn unit(d: usize, i: usize) -> Self {
        let mut v = vec![0; d];
        v[i] = 1;
        Self(v)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|a| -a).collect())
    }

    pub fn l1(&self) -> u64 {
        self.0.iter().map(|a| a.unsigned_abs()).sum()
    }

    pub fn parse(s: &str) -> Result<Self> {
        let inner = s.trim().trim_matches(|c| c == '(' || c == ')' || c == '[' || c == ']');
        let v = inner
            .split(',')
            .map(|p| p.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad vector {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self(v))
    }
}

impl Display for ZVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeAbelian {
    pub dim: usize,
}

impl GroupBackend for FreeAbelian {
    type Elem = ZVec;

    fn name(&self) -> String {
        format!("abelian:{}", self.dim)
    }

    fn identity(&self) -> ZVec {
        ZVec::zero(self.dim)
    }

    fn multiply(&self, a: &ZVec, b: &ZVec) -> ZVec {
        a.add(b)
    }

    fn invert(&self, a: &ZVec) -> ZVec {
        a.neg()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Heisenberg;

impl GroupBackend for Heisenberg {
    type Elem = Heis;

    fn name(&self) -> String {
        "heis".into()
    }

    fn identity(&self) -> Heis {
        Heis::identity()
    }

    fn multiply(&self, a: &Heis, b: &Heis) -> Heis {
        a.mul(b)
    }

    fn invert(&self, a: &Heis) -> Heis {
        a.inv()
    }
}

/// Subgroup of `GL(n, Z)` generated by determinant `±1` matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrixGroup {
    pub n: usize,
    pub generators: Vec<BigIntMat>,
}

impl IntMatrixGroup {
    pub fn new(n: usize, generators: Vec<BigIntMat>) -> Result<Self> {
        for g in &generators {
            if g.dim() != n {
                return Err(Error::Precondition(format!("generator {g} is not {n}x{n}")));
            }
            let d = g.det();
            if d != BigInt::from(1) && d != BigInt::from(-1) {
                return Err(Error::Determinant(d.to_string()));
            }
        }
        Ok(Self { n, generators })
    }
}

impl GroupBackend for IntMatrixGroup {
    type Elem = BigIntMat;

    fn name(&self) -> String {
        format!("matrix:{}", self.n)
    }

    fn identity(&self) -> BigIntMat {
        BigIntMat::identity(self.n)
    }

    fn multiply(&self, a: &BigIntMat, b: &BigIntMat) -> BigIntMat {
        a.mul_ref(b)
    }

    fn invert(&self, a: &BigIntMat) -> BigIntMat {
        a.inverse().expect("generators have determinant ±1")
    }
}

/// Distinct elements of word length at most `radius` in `generators ∪ generators⁻¹`,
/// paired with their word length, in breadth-first order.
pub fn word_ball<G: GroupBackend>(g: &G, generators: &[G::Elem], radius: usize, cap: usize) -> Result<Vec<(G::Elem, usize)>> {
    let mut letters: Vec<G::Elem> = Vec::new();
    for s in generators {
        for t in [s.clone(), g.invert(s)] {
            if !letters.contains(&t) {
                letters.push(t);
            }
        }
    }
    let e = g.identity();
    let mut seen: HashSet<G::Elem> = HashSet::from([e.clone()]);
    let mut out = vec![(e.clone(), 0)];
    let mut frontier = vec![e];
    for r in 1..=radius {
        let mut next = Vec::new();
        for w in &frontier {
            for l in &letters {
                let p = g.multiply(w, l);
                if seen.insert(p.clone()) {
                    if out.len() >= cap {
                        return Err(Error::ResourceCap { needed: out.len() as u128 + 1, cap: cap as u128 });
                    }
                    out.push((p.clone(), r));
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    Ok(out)
}
