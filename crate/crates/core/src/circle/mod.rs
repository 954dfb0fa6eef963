//! Piecewise-linear circle homeomorphisms with exact rational data, their
//! Euler cocycle, and fixed points recovered from a bounded primitive.

pub mod euler;
pub mod fixpoint;
pub mod lift;
pub mod rotation;

pub use euler::{cocycle_identity_check, cocycle_sweep, euler_cocycle, euler_cocycle_at, normalize_at, CocycleIdentity, CocycleSweep};
pub use fixpoint::{
    common_fixed_points, fixed_point_from_primitive, fixed_points, intersect, primitive_at, word_lifts, FixInterval, FixedPointReport,
    FixedPointVerdict,
};
pub use lift::{parse_lift, parse_ratio, random_lift, random_lift_fixing_zero, PlCircleLift};
pub use rotation::{rotation_number, RotationReport};
