//! Algebraic intersection with fixed representatives of `σ` and `η` on Y.

use super::cylinders::cylinder_decomposition;
use super::trace::{run, SegmentOnSurface, SurfacePoint, TraceResult};
use crate::error::{Error, Result};
use crate::scalar::Exact;
use crate::surface::{HomologyClass, Surface};

/// A closed curve given by its traced segments.
pub type ClosedCurve<T> = TraceResult<T>;

fn on_boundary<T: Exact>(x: &T, y: &T) -> bool {
    x.is_zero() || x.is_one() || y.is_zero() || y.is_one()
}

/// Signed intersection of one segment with another in the same square: the sign of
/// `det(c', r')`.
fn crossing<T: Exact>(c: &SegmentOnSurface<T>, r: &SegmentOnSurface<T>) -> Result<i64> {
    let (a, b) = (&c.from, &c.to);
    let (p, q) = (&r.from, &r.to);
    let d1 = (b.0.clone() - a.0.clone(), b.1.clone() - a.1.clone());
    let d2 = (q.0.clone() - p.0.clone(), q.1.clone() - p.1.clone());
    let den = d1.0.clone() * d2.1.clone() - d1.1.clone() * d2.0.clone();
    let w = (p.0.clone() - a.0.clone(), p.1.clone() - a.1.clone());
    if den.is_zero() {
        let coll = w.0.clone() * d1.1.clone() - w.1.clone() * d1.0.clone();
        // parallel pieces, possibly of the same leaf, do not cross transversally
        let _ = coll;
        return Ok(0);
    }
    let t = (w.0.clone() * d2.1.clone() - w.1.clone() * d2.0.clone()) / den.clone();
    let u = (w.0.clone() * d1.1.clone() - w.1.clone() * d1.0.clone()) / den.clone();
    let inside = |s: &T| !s.is_negative() && *s < T::one();
    if !inside(&t) || !inside(&u) {
        return Ok(0);
    }
    let x = a.0.clone() + t.clone() * d1.0.clone();
    let y = a.1.clone() + t * d1.1.clone();
    if on_boundary(&x, &y) {
        return Err(Error::Inconsistent("curves cross on an edge".into()));
    }
    Ok(if den.is_positive() { 1 } else { -1 })
}

/// Algebraic intersection `i(c, r) = Σ sign det(c', r')` over transverse crossings.
pub fn intersection_with<T: Exact>(c: &ClosedCurve<T>, r: &ClosedCurve<T>) -> Result<i64> {
    if !c.closed() || !r.closed() {
        return Err(Error::OpenTrajectory);
    }
    let mut total = 0;
    for sc in &c.segments {
        for sr in r.segments.iter().filter(|s| s.square == sc.square) {
            total += crossing(sc, sr)?;
        }
    }
    Ok(total)
}

/// Offset of `η` across its cylinder, chosen so that it avoids the crossing points of
/// trajectories traced from square centers.
const ETA_SHIFT: (i64, i64) = (1, 1009);

/// The representative of `η`: a leaf of the area-1 cylinder of Y in direction `(1, 1)`,
/// oriented so that `i(σ, η) = 1` with `σ = γ₀`.
pub fn eta_curve<T: Exact>(y: &Surface) -> Result<ClosedCurve<T>> {
    let d = cylinder_decomposition::<T>(y, 1, 1)?;
    let cyl = d
        .cylinders
        .iter()
        .find(|c| c.area == T::one())
        .ok_or_else(|| {
            Error::Inconsistent("Y has no area-1 cylinder in direction (1, 1)".into())
        })?;
    // slide the core point along the leaf direction's normal, inside the same atom
    let shift = T::ratio(ETA_SHIFT.0, ETA_SHIFT.1);
    let start = SurfacePoint::new(
        cyl.core.square,
        cyl.core.x.clone() + shift,
        cyl.core.y.clone(),
    );
    if !start.is_interior() {
        return Err(Error::Inconsistent(
            "shifted core of eta left its square".into(),
        ));
    }
    for sign in [cyl.core_sign, -cyl.core_sign] {
        let eta = run(y, &start, sign, 1, 1, 64);
        if !eta.closed() {
            return Err(Error::Inconsistent("eta does not close".into()));
        }
        // i(σ, η) = -i(η, σ) = γ₀-count of η
        if eta.gamma0 == 1 {
            return Ok(eta);
        }
    }
    Err(Error::Inconsistent("i(sigma, eta) is not ±1".into()))
}

/// The representative of `σ`: `γ₀` itself, traced from the first square of Y.
pub fn sigma_curve<T: Exact>(y: &Surface) -> Result<ClosedCurve<T>> {
    let o = y
        .marked_curve("gamma0")
        .ok_or_else(|| Error::InvalidInput("surface has no marked curve gamma0".into()))?;
    let sq = o.orientation.iter().position(|&v| v != 0).unwrap();
    let sigma = run(
        y,
        &SurfacePoint::center(sq),
        o.orientation[sq] as i64,
        1,
        0,
        4 * y.n(),
    );
    if !sigma.closed() {
        return Err(Error::Inconsistent("gamma0 does not close".into()));
    }
    Ok(sigma)
}

/// `(α, β) = (i(c, η), -i(c, σ))` for a closed curve traced on Y. The trace's own
/// marked-curve count is `-i(c, σ)`.
pub fn homology_coordinates<T: Exact>(y: &Surface, c: &ClosedCurve<T>) -> Result<HomologyClass> {
    if !c.closed() {
        return Err(Error::OpenTrajectory);
    }
    if y.marked_curve("gamma0").is_none() {
        return Err(Error::InvalidInput(
            "surface has no marked curve gamma0".into(),
        ));
    }
    let eta = eta_curve::<T>(y)?;
    Ok(HomologyClass::new(intersection_with(c, &eta)?, c.gamma0))
}
