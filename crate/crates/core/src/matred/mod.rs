//! Reducing `SL(2)` matrices to the identity by row operations.
//!
//! Over `Z` the Euclidean algorithm needs a number of steps that grows with
//! the entries. Over `Z[1/p]` five steps always suffice, provided a prime
//! with `p` as a primitive root turns up in the right arithmetic progression.

pub mod artin;
pub mod bounded;
pub mod euclid;
pub mod orbit;
pub mod pinv;

pub use artin::{artin_instance, discrete_log, is_perfect_power, is_prime, multiplicative_order, power_list, primitive_root_check, unit_log, ArtinHit};
pub use bounded::{
    bounded_reduce, bounded_reduce_with, carter_keller_bound, diag_conjugation, diag_power, elementary_word_length_stats, pinv_from_int, random_sl2z,
    BoundedPath, BoundedReport, Unipotent, WordLengthReport,
};
pub use euclid::{apply_int_op, euclid_reduce, fib_power, ReductionStep};
pub use orbit::{orbit_bound_check, translate, Euclidean, Metric, OrbitFactor, OrbitReport, L1};
pub use pinv::{parse_pinv_matrix, PInvMat2, PInvScalar, RowOp};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::BigIntMat;

/// Parses a JSON `[[a, c], [b, d]]` of integers (numbers or decimal strings).
pub fn parse_int_matrix(v: &serde_json::Value) -> Result<BigIntMat> {
    let e = pinv::parse_entries(v)?;
    let xs = e
        .iter()
        .map(|s| s.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad integer entry {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    BigIntMat::from_rows(vec![xs[..2].to_vec(), xs[2..].to_vec()])
}
