//! Square-tiled half-translation surfaces: X, Y and their translation covers.

mod build;
mod square;
#[allow(clippy::module_inception)]
mod surface;

pub use build::{
    build_x, build_xy, build_y, horizontal_curve, minimal_translation_cover, pull_back_curve,
    Projection,
};
pub use square::{Corner, Side};
pub use surface::{Gluing, MarkedCurve, SquareMap, Surface, Vertex};

use serde::{Deserialize, Serialize};

/// Coordinates `(α, β)` in the basis `{σ, η}` of `H₁(Y, ℤ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyClass {
    pub alpha: i64,
    pub beta: i64,
}

impl HomologyClass {
    pub fn new(alpha: i64, beta: i64) -> HomologyClass {
        HomologyClass { alpha, beta }
    }

    /// Algebraic intersection, with `i(σ, η) = 1`.
    pub fn intersection(&self, other: &HomologyClass) -> i64 {
        self.alpha * other.beta - self.beta * other.alpha
    }

    /// Membership in `W = ⟨σ⟩`.
    pub fn in_w(&self) -> bool {
        self.beta == 0
    }
}
