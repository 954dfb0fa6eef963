//! Exact-arithmetic constructions from the theory of group actions on the
//! line and the circle.
//!
//! Everything here is decided exactly: integers are arbitrary precision
//! where growth is unbounded, rationals are kept as reduced fractions, and
//! no floating point is used in any verifier.
//!
//! The modules follow the mathematical subsystems:
//!
//! * [`freegroup`]: reduced words, balls, homomorphism counts and Brooks
//!   counting quasimorphisms.
//! * [`heisenberg`]: the discrete Heisenberg group, its lexicographic
//!   left orders and the archimedean relation `≪`.
//! * [`orders`]: positive-cone search over word-problem backends, order
//!   axiom checking, extension orders and the six-Heisenberg-copies
//!   derivation for `SL(3, Z)`.
//! * [`matred`]: `SL(2)` row reduction over `Z` (Euclid) and over
//!   `Z[1/p]` (five steps, driven by a primitive-root search).
//! * [`amenability`]: Følner sets, Ponzi schemes, growth and the
//!   paradoxical decomposition of `F_2`.
//! * [`circle`]: piecewise-linear circle lifts, Euler cocycles, fixed
//!   points from primitives and rotation numbers.
//!
//! The integer-valued structures are generic over [`IntScalar`]; the type
//! aliases below pick the concrete scalars used by the CLI and the tests.

pub mod amenability;
pub mod circle;
pub mod error;
pub mod freegroup;
pub mod group;
pub mod heisenberg;
pub mod matred;
pub mod matrix;
pub mod orders;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::IntScalar;

use num_bigint::BigInt;

/// Heisenberg element with machine-word exponents.
pub type Heis = heisenberg::HeisElement<i64>;
/// Heisenberg element with arbitrary-precision exponents.
pub type BigHeis = heisenberg::HeisElement<BigInt>;
/// Square integer matrix with machine-word entries.
pub type IntMat = matrix::IntMatrix<i64>;
/// Square integer matrix with arbitrary-precision entries.
pub type BigIntMat = matrix::IntMatrix<BigInt>;
/// Exact rational number used throughout the circle and amenability code.
pub type Rational = num_rational::BigRational;
/// Piecewise-linear circle lift with arbitrary-precision rational data.
pub type CircleLift = circle::PlCircleLift<BigInt>;
/// Piecewise-linear circle lift with machine-word rational data.
pub type SmallCircleLift = circle::PlCircleLift<i64>;
