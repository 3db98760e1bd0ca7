//! Displacement at quarter periods of closed orbits on X.

use super::trace::{run, SurfacePoint, TraceResult};
use crate::error::{Error, Result};
use crate::mucube3d::{Rotation, V3};
use crate::scalar::Exact;
use crate::surface::Surface;

/// Ambient position in M of a point of X, lifted through the developed chart of its
/// square and the accumulated cocycle.
pub fn lift_point<T: Exact>(x: &Surface, pt: &SurfacePoint<T>, displacement: V3) -> Result<[T; 3]> {
    let charts = x
        .embedding
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("surface has no embedding".into()))?;
    let mut a = charts[pt.square].ambient(&pt.x, &pt.y);
    for i in 0..3 {
        a[i] = a[i].clone() + T::from_int(2 * displacement[i]);
    }
    Ok(a)
}

/// Fundamental cell `[2k-1, 2k+1)` of each coordinate.
fn cell<T: Exact>(a: &[T; 3]) -> Result<V3> {
    let mut v = [0; 3];
    for i in 0..3 {
        let h = (a[i].clone() + T::one()) / T::from_int(2);
        if h.is_integer_value() {
            return Err(Error::Inconsistent(
                "quarter mark lies on a cell wall".into(),
            ));
        }
        v[i] = h.floor_i64();
    }
    Ok(v)
}

fn point_at<T: Exact>(x: &Surface, tr: &TraceResult<T>, time: &T) -> Result<[T; 3]> {
    let (p, q) = tr.direction;
    let seg = tr
        .segments
        .iter()
        .rev()
        .find(|s| s.start_time <= *time)
        .ok_or_else(|| Error::Inconsistent("time before the start of the trace".into()))?;
    let dt = time.clone() - seg.start_time.clone();
    let pt = SurfacePoint::new(
        seg.square,
        seg.from.0.clone() + dt.clone() * T::from_int(seg.sign * p),
        seg.from.1.clone() + dt * T::from_int(seg.sign * q),
    );
    lift_point(x, &pt, seg.displacement)
}

/// Tests `v((i+1)T/4) - v(iT/4) = θ^i v(T/4)` for `i = 0..3` over the quarter turns
/// `θ`, where `v` is the fundamental-cell index of the lift and `T` the period of
/// the closed orbit on X. Returns the first quarter turn that works.
pub fn quarter_displacement_check<T: Exact>(
    x: &Surface,
    tr: &TraceResult<T>,
) -> Result<Option<Rotation>> {
    if !tr.closed() {
        return Err(Error::OpenTrajectory);
    }
    let marks: Vec<V3> = (0..=4)
        .map(|i| point_at(x, tr, &(tr.time.clone() * T::ratio(i, 4))).and_then(|a| cell(&a)))
        .collect::<Result<_>>()?;
    let diff = |i: usize| -> V3 { std::array::from_fn(|k| marks[i + 1][k] - marks[i][k]) };
    let v1 = diff(0);
    Ok(Rotation::quarter_turns()
        .into_iter()
        .find(|th| (0..4).all(|i| diff(i) == th.power(i as u32).apply(v1))))
}

/// The closed orbit on X used by [`quarter_displacement_check`]: from a point just off
/// the center of the seed square.
pub fn quarter_orbit<T: Exact>(x: &Surface, seed: usize, p: i64, q: i64) -> Result<TraceResult<T>> {
    let eps = T::ratio(1, 8 * (p * p + q * q));
    let half = T::ratio(1, 2);
    let start = SurfacePoint::new(
        seed,
        half.clone() + eps.clone() * T::from_int(p - q),
        half + eps * T::from_int(p + q),
    );
    let tr = run(
        x,
        &start,
        1,
        p,
        q,
        8 * (p.unsigned_abs() + q.unsigned_abs()) as usize + 8,
    );
    if !tr.closed() {
        return Err(Error::Inconsistent(format!(
            "orbit in ({p}, {q}) does not close on X"
        )));
    }
    Ok(tr)
}
