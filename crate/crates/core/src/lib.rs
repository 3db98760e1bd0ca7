//! Straight-line flow on the Mucube.
//!
//! The Mucube `M` is the infinite square-tiled surface in ℝ³ whose faces are the unit
//! squares with half-integer normal coordinate and tangential coordinates of opposite
//! parity. Its quotient `X = M/(2ℤ)³` has twelve squares, and `Y = X/θ` (θ the
//! coordinate cycle) has four.
//!
//! A rational direction is either periodic (every trajectory closes on `M`) or drifts
//! by a nonzero translation. This crate decides which by three independent routes:
//! unfolding in ℝ³, the displacement cocycle on `X`, and cylinders plus a marked curve
//! on `Y`. It also provides the matrix group machinery characterising periodic
//! directions, and the continued-fraction families built from twists.

pub mod classify;
pub mod error;
pub mod flow;
pub mod group;
pub mod mucube3d;
pub mod scalar;
pub mod surface;

pub use error::{Error, Result};
pub use scalar::Exact;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};

/// Default exact scalar.
pub type Rational = BigRational;
/// Fast exact scalar for bounded computations.
pub type SmallRational = Ratio<i128>;

pub type Point3Q = mucube3d::Point3<Rational>;
pub type Trajectory3DQ = mucube3d::Trajectory3D<Rational>;
pub type SurfacePointQ = flow::SurfacePoint<Rational>;
pub type TraceResultQ = flow::TraceResult<Rational>;
pub type IntMatrix2 = group::Mat2<BigInt>;
pub type SmallMatrix2 = group::Mat2<i64>;
