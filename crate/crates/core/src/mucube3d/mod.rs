//! The Mucube embedded in ℝ³: faces, cone points, rigid motions and exact unfolding.

mod chart;
mod geometry;
mod motion;
mod trace;
mod twist;

pub use chart::{Chart, Exit, Point3};
pub use geometry::{
    add, cone_points_in_box, cross, dot, faces_in_box, incident_faces, is_face_of_m, neg, scale,
    sub, unit, Axis, Face, V3,
};
pub use motion::{RigidMotion, Rotation};
pub use trace::{
    crossing_order, period_motion, period_motion_fast, polyline_diameter, trace3d,
    trajectory_diameter, ArcExport, ArcLength, Segment, TraceOutcome, Trajectory3D,
    TrajectoryExport,
};
pub use twist::{
    twist_length_asymptote, twist_length_prediction, twist_slope, DirectionalData, Slope, Surd,
    TwistAxis,
};

pub use trace::check_primitive;

use crate::error::{Error, Result};

/// The face `(0, 1, 1/2)` with normal `z`; its standard chart 0 has `eu = +x`, `ev = +y`.
pub const SEED_FACE: Face = Face {
    center2x: [0, 2, 1],
    axis: Axis::Z,
};

pub fn seed_chart() -> Chart {
    Chart::standard(&SEED_FACE, 0)
}

/// Start point (as `(u_num, v_num, den)`) used for a direction: the face center, or
/// `(1/2, 1/4)` when both components are odd and the center line meets a corner.
pub fn canonical_start(p: i64, q: i64) -> (i64, i64, i64) {
    if p.rem_euclid(2) == 1 && q.rem_euclid(2) == 1 {
        (2, 1, 4)
    } else {
        (1, 1, 2)
    }
}

/// Period motion of the canonical start in direction `(p, q)` on the seed chart.
pub fn canonical_period_motion(p: i64, q: i64) -> Result<RigidMotion> {
    let (a, b, d) = canonical_start(p, q);
    period_motion_fast(&seed_chart(), a, b, d, p, q)?
        .ok_or_else(|| Error::Inconsistent(format!("canonical start meets a corner in ({p}, {q})")))
}

/// Half the translation carrying the strip through the canonical start onto itself.
pub fn drift_vector(p: i64, q: i64) -> Result<V3> {
    let v = canonical_period_motion(p, q)?.drift();
    if v == [0, 0, 0] {
        Err(Error::PeriodicDirection)
    } else {
        Ok(v)
    }
}
