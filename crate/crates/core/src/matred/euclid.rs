use serde::Serialize;

use super::RowOp;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::scalar::IntScalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "M: Serialize, C: std::fmt::Display")]
pub struct ReductionStep<C, M> {
    pub step: usize,
    pub op: RowOp<C>,
    pub intermediate: M,
}

/// `row[dst] += coeff · row[src]` on a `2×2` integer matrix.
pub fn apply_int_op<T: IntScalar>(m: &IntMatrix<T>, op: &RowOp<T>) -> IntMatrix<T> {
    let mut out = m.clone();
    for j in 0..2 {
        let v = m.get(op.dst, j).clone() + op.coeff.clone() * m.get(op.src, j).clone();
        out.set(op.dst, j, v);
    }
    out
}

/// The elementary matrix of `op`: left multiplication by it performs `op`.
pub fn elementary_of<T: IntScalar>(op: &RowOp<T>) -> IntMatrix<T> {
    IntMatrix::elementary(2, op.dst, op.src, op.coeff.clone())
}

/// Expresses the reduced matrix as a product of elementary matrices:
/// if `E_k ⋯ E_1 m = I` then `m = E_1⁻¹ ⋯ E_k⁻¹`.
pub fn reconstruct<T: IntScalar>(ops: &[RowOp<T>]) -> IntMatrix<T> {
    ops.iter().fold(IntMatrix::identity(2), |acc, op| {
        let inv = RowOp { src: op.src, dst: op.dst, coeff: -op.coeff.clone() };
        acc.mul_ref(&elementary_of(&inv))
    })
}

/// Reduces an integer determinant-one `2×2` matrix to the identity by the
/// Euclidean algorithm on its first column: the entry of larger magnitude
/// loses the truncated quotient times the other, until one entry vanishes.
/// The surviving `±1` is then normalized and the top-right entry cleared.
pub fn euclid_reduce<T: IntScalar>(m: &IntMatrix<T>) -> Result<Vec<ReductionStep<T, IntMatrix<T>>>> {
    if m.dim() != 2 {
        return Err(Error::Precondition(format!("expected a 2x2 matrix, got {}x{}", m.dim(), m.dim())));
    }
    let det = m.det();
    if !det.is_one() {
        return Err(Error::Determinant(det.to_string()));
    }
    let mut cur = m.clone();
    let mut steps = Vec::new();
    let mut push = |cur: &mut IntMatrix<T>, src: usize, dst: usize, coeff: T| {
        let op = RowOp::new(src, dst, coeff);
        *cur = apply_int_op(cur, &op);
        steps.push(ReductionStep { step: steps.len() + 1, op, intermediate: cur.clone() });
    };
    while !cur.get(0, 0).is_zero() && !cur.get(1, 0).is_zero() {
        let (a, b) = (cur.get(0, 0).clone(), cur.get(1, 0).clone());
        if a.abs() >= b.abs() {
            push(&mut cur, 1, 0, -(a / b));
        } else {
            push(&mut cur, 0, 1, -(b / a));
        }
    }
    if cur.get(0, 0).is_zero() {
        // [[0, c], [±1, d]]: bring the unit up, then clear below it
        let b = cur.get(1, 0).clone();
        push(&mut cur, 1, 0, b.clone());
        push(&mut cur, 0, 1, -b);
    } else if !cur.get(0, 0).is_one() {
        // [[-1, c], [0, -1]]
        let one = T::one();
        push(&mut cur, 0, 1, -one.clone());
        push(&mut cur, 1, 0, one.clone() + one);
        push(&mut cur, 0, 1, -T::one());
    }
    let c = cur.get(0, 1).clone();
    if !c.is_zero() {
        push(&mut cur, 1, 0, -c);
    }
    debug_assert!(cur.is_identity());
    Ok(steps)
}

/// `[[2,1],[1,1]]^n`.
pub fn fib_power<T: IntScalar>(n: u32) -> IntMatrix<T> {
    IntMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]).expect("square").pow(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn m(rows: &[&[i64]]) -> IntMatrix<i64> {
        IntMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn worked_example() {
        let steps = euclid_reduce(&m(&[&[13, 31], &[5, 12]])).unwrap();
        let got: Vec<String> = steps.iter().map(|s| s.intermediate.to_string()).collect();
        assert_eq!(got, ["[[3,7],[5,12]]", "[[3,7],[2,5]]", "[[1,2],[2,5]]", "[[1,2],[0,1]]", "[[1,0],[0,1]]"]);
    }

    #[test]
    fn identity_needs_nothing() {
        assert!(euclid_reduce(&IntMatrix::<i64>::identity(2)).unwrap().is_empty());
    }

    #[test]
    fn endings() {
        for rows in [[[-1, 5], [0, -1]], [[0, -1], [1, 7]], [[0, 1], [-1, -3]], [[1, 0], [4, 1]], [[-1, 0], [3, -1]]] {
            let x = m(&[&rows[0], &rows[1]]);
            let steps = euclid_reduce(&x).unwrap();
            assert!(steps.last().unwrap().intermediate.is_identity(), "{x}");
            let ops: Vec<_> = steps.into_iter().map(|s| s.op).collect();
            assert_eq!(reconstruct(&ops), x);
        }
    }

    #[test]
    fn rejects_bad_determinant() {
        assert!(matches!(euclid_reduce(&m(&[&[2, 0], &[0, 1]])), Err(Error::Determinant(_))));
        assert!(euclid_reduce(&m(&[&[0, 1], &[1, 0]])).is_err());
    }

    #[test]
    fn big_scalars_agree_with_small() {
        let small = euclid_reduce(&fib_power::<i64>(9)).unwrap();
        let big = euclid_reduce(&fib_power::<BigInt>(9)).unwrap();
        assert_eq!(small.len(), big.len());
        assert_eq!(small.last().unwrap().intermediate.to_string(), big.last().unwrap().intermediate.to_string());
    }
}
