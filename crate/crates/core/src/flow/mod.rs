//! Exact straight-line flow on square-tiled half-translation surfaces.

mod cylinders;
mod homology;
mod quarter;
mod trace;

pub use cylinders::{
    cylinder_decomposition, Cylinder, CylinderReport, Decomposition, DecompositionReport,
};
pub use homology::{eta_curve, homology_coordinates, intersection_with, sigma_curve, ClosedCurve};
pub use quarter::{lift_point, quarter_displacement_check, quarter_orbit};
pub(crate) use trace::run;
pub use trace::{
    advance, trace_surface, SegmentOnSurface, SurfaceOutcome, SurfacePoint, TraceResult,
};
