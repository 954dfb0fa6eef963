use std::fmt;
use std::ops::Mul;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::IntScalar;

/// Dense square matrix over an exact integer scalar, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: IntScalar> IntMatrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = T::one();
        }
        Self { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("matrix rows must form a square".into()));
        }
        Ok(Self { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| T::lit(v)).collect()).collect())
    }

    /// `I + coeff·E_{row,col}` (0-indexed, `row != col`).
    pub fn elementary(n: usize, row: usize, col: usize, coeff: T) -> Self {
        assert!(row != col && row < n && col < n, "elementary matrix needs distinct in-range indices");
        let mut m = Self::identity(n);
        m.data[row * n + col] = coeff;
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] = data[i * n + j].clone() + a.clone() * other.data[k * n + j].clone();
                }
            }
        }
        Self { n, data }
    }

    /// Determinant by cofactor expansion along the first row (small `n` only).
    pub fn det(&self) -> T {
        fn rec<T: IntScalar>(m: &[T], n: usize) -> T {
            match n {
                0 => T::one(),
                1 => m[0].clone(),
                2 => m[0].clone() * m[3].clone() - m[1].clone() * m[2].clone(),
                _ => {
                    let mut acc = T::zero();
                    for c in 0..n {
                        let minor: Vec<T> = (1..n)
                            .flat_map(|r| (0..n).filter(move |&cc| cc != c).map(move |cc| (r, cc)))
                            .map(|(r, cc)| m[r * n + cc].clone())
                            .collect();
                        let term = m[c].clone() * rec(&minor, n - 1);
                        acc = if c % 2 == 0 { acc + term } else { acc - term };
                    }
                    acc
                }
            }
        }
        rec(&self.data, self.n)
    }

    /// Inverse of a determinant `±1` matrix via the adjugate.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        if !d.is_one() && !(-d.clone()).is_one() {
            return Err(Error::Determinant(d.to_string()));
        }
        let n = self.n;
        if n == 1 {
            return Ok(Self { n, data: vec![d] });
        }
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Vec<T>> = (0..n)
                    .filter(|&r| r != j)
                    .map(|r| (0..n).filter(|&c| c != i).map(|c| self.get(r, c).clone()).collect())
                    .collect();
                let cof = Self::from_rows(minor).expect("square").det();
                let signed = if (i + j) % 2 == 0 { cof } else { -cof };
                data[i * n + j] = signed * d.clone();
            }
        }
        Ok(Self { n, data })
    }

    /// Group commutator `a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(self.inverse()?.mul_ref(&other.inverse()?).mul_ref(self).mul_ref(other))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.n);
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }
}

impl<T: IntScalar> Mul for &IntMatrix<T> {
    type Output = IntMatrix<T>;

    fn mul(self, rhs: Self) -> IntMatrix<T> {
        self.mul_ref(rhs)
    }
}

impl<T: IntScalar> fmt::Display for IntMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.data.chunks(self.n).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Serialized as nested arrays of decimal strings so big entries survive JSON.
impl<T: IntScalar> Serialize for IntMatrix<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self.data.chunks(self.n).map(|r| r.iter().map(|v| v.to_string()).collect()).collect();
        rows.serialize(s)
    }
}
