//! Exact unfolding of straight-line trajectories on M.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::chart::{Chart, Exit, Point3};
use super::geometry::{Face, V3};
use super::motion::RigidMotion;
use crate::error::{Error, Result};
use crate::scalar::Exact;

/// Arc length `s·√(p²+q²)`; `s` is the flow time for velocity `(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcLength<T> {
    pub norm_sq: i64,
    pub s: T,
}

impl<T: Exact> ArcLength<T> {
    /// Whole multiples of `√(p²+q²)`.
    pub fn multiplier(&self) -> i64 {
        self.s.floor_i64()
    }

    /// Fractional part of the time, so that length = (multiplier + remainder)·√(p²+q²).
    pub fn remainder(&self) -> T {
        self.s.clone() - T::from_int(self.multiplier())
    }

    pub fn to_f64(&self) -> f64 {
        self.s.to_f64() * (self.norm_sq as f64).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceOutcome<T> {
    Closed,
    ConePointHit { at: [T; 3] },
    BoundReached,
}

/// A straight piece inside one face, in that face's developed chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment<T> {
    pub chart: Chart,
    pub from: (T, T),
    pub to: (T, T),
}

#[derive(Debug, Clone)]
pub struct Trajectory3D<T> {
    pub direction: (i64, i64),
    pub segments: Vec<Segment<T>>,
    pub vertices: Vec<[T; 3]>,
    pub closed: bool,
    pub outcome: TraceOutcome<T>,
    pub drift_vector: Option<V3>,
    pub arc_length: ArcLength<T>,
}

impl<T: Exact> Trajectory3D<T> {
    pub fn faces(&self) -> Vec<Face> {
        self.segments.iter().map(|s| s.chart.face()).collect()
    }

    pub fn crossings(&self) -> usize {
        self.segments.len().saturating_sub(1)
    }

    /// Faces whose center lies on the trajectory (counted once per passage).
    pub fn center_visits(&self) -> Vec<Face> {
        let half = T::ratio(1, 2);
        let (p, q) = self.direction;
        let mut out = Vec::new();
        for seg in &self.segments {
            let du = half.clone() - seg.from.0.clone();
            let dv = half.clone() - seg.from.1.clone();
            let on_line = du.clone() * T::from_int(q) == dv.clone() * T::from_int(p);
            let lam = if p != 0 {
                du / T::from_int(p)
            } else {
                dv / T::from_int(q)
            };
            let len = if p != 0 {
                (seg.to.0.clone() - seg.from.0.clone()) / T::from_int(p)
            } else {
                (seg.to.1.clone() - seg.from.1.clone()) / T::from_int(q)
            };
            // half-open so a closed loop starting at a center counts it once
            if on_line && !lam.is_negative() && lam < len {
                out.push(seg.chart.face());
            }
        }
        out
    }

    pub fn export(&self) -> TrajectoryExport {
        TrajectoryExport {
            points: self
                .vertices
                .iter()
                .map(|v| v.iter().map(|c| c.to_ratio_string()).collect())
                .collect(),
            closed: self.closed,
            drift_vector: self.drift_vector,
            arc_length: ArcExport {
                multiplier_of_sqrt: self.arc_length.s.to_ratio_string(),
                norm_sq: self.arc_length.norm_sq,
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArcExport {
    /// Arc length divided by `√norm_sq`.
    pub multiplier_of_sqrt: String,
    pub norm_sq: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrajectoryExport {
    pub points: Vec<Vec<String>>,
    pub closed: bool,
    pub drift_vector: Option<V3>,
    pub arc_length: ArcExport,
}

/// Rejects `(0, 0)` and non-primitive pairs.
pub fn check_primitive(p: i64, q: i64) -> Result<()> {
    if (p, q) == (0, 0) || p.gcd(&q) != 1 {
        return Err(Error::InvalidInput(format!(
            "direction ({p}, {q}) is not primitive"
        )));
    }
    Ok(())
}

enum Step<T> {
    Exit(Exit, T),
    Corner(T),
}

/// Time to leave the unit square from `(u, v)` with velocity `(p, q)`.
fn next_exit<T: Exact>(u: &T, v: &T, p: i64, q: i64) -> Step<T> {
    let time = |x: &T, d: i64| -> Option<(T, bool)> {
        match d.signum() {
            1 => Some(((T::one() - x.clone()) / T::from_int(d), true)),
            -1 => Some((x.clone() / T::from_int(-d), false)),
            _ => None,
        }
    };
    match (time(u, p), time(v, q)) {
        (Some((su, up)), Some((sv, vp))) => {
            if su == sv {
                Step::Corner(su)
            } else if su < sv {
                Step::Exit(if up { Exit::U1 } else { Exit::U0 }, su)
            } else {
                Step::Exit(if vp { Exit::V1 } else { Exit::V0 }, sv)
            }
        }
        (Some((su, up)), None) => Step::Exit(if up { Exit::U1 } else { Exit::U0 }, su),
        (None, Some((sv, vp))) => Step::Exit(if vp { Exit::V1 } else { Exit::V0 }, sv),
        (None, None) => unreachable!("zero direction"),
    }
}

fn wrap<T: Exact>(exit: Exit, u: &mut T, v: &mut T) {
    match exit {
        Exit::U1 => *u = T::zero(),
        Exit::U0 => *u = T::one(),
        Exit::V1 => *v = T::zero(),
        Exit::V0 => *v = T::one(),
    }
}

/// Traces the flow with velocity `(p, q)` (in the start chart) from `start`, until the
/// trajectory closes, hits a cone point, or flow time exceeds `max_s`
/// (arc length `max_s·√(p²+q²)`).
pub fn trace3d<T: Exact>(start: &Point3<T>, p: i64, q: i64, max_s: &T) -> Result<Trajectory3D<T>> {
    check_primitive(p, q)?;
    if !start.is_interior() {
        return Err(Error::InvalidInput(
            "start point lies on an edge of its face".into(),
        ));
    }
    let c0 = start.chart_frame();
    let (u0, v0) = (start.u.clone(), start.v.clone());
    let (mut chart, mut u, mut v) = (c0, u0.clone(), v0.clone());
    let mut s = T::zero();
    let mut segments = Vec::new();
    let (tp, tq) = (T::from_int(p), T::from_int(q));
    let outcome = loop {
        let step = next_exit(&u, &v, p, q);
        let ds = match &step {
            Step::Exit(_, ds) | Step::Corner(ds) => ds.clone(),
        };
        // closure: the start point lies ahead on this segment
        if chart == c0 && !(segments.is_empty()) {
            let du = u0.clone() - u.clone();
            let dv = v0.clone() - v.clone();
            if du.clone() * tq.clone() == dv.clone() * tp.clone() {
                let lam = if p != 0 {
                    du / tp.clone()
                } else {
                    dv / tq.clone()
                };
                if !lam.is_negative() && lam <= ds && s.clone() + lam.clone() <= *max_s {
                    s = s + lam;
                    segments.push(Segment {
                        chart,
                        from: (u.clone(), v.clone()),
                        to: (u0.clone(), v0.clone()),
                    });
                    break TraceOutcome::Closed;
                }
            }
        }
        if s.clone() + ds.clone() > *max_s {
            let rest = max_s.clone() - s.clone();
            let end = (
                u.clone() + rest.clone() * tp.clone(),
                v.clone() + rest.clone() * tq.clone(),
            );
            segments.push(Segment {
                chart,
                from: (u.clone(), v.clone()),
                to: end,
            });
            s = max_s.clone();
            break TraceOutcome::BoundReached;
        }
        let nu = u.clone() + ds.clone() * tp.clone();
        let nv = v.clone() + ds.clone() * tq.clone();
        segments.push(Segment {
            chart,
            from: (u.clone(), v.clone()),
            to: (nu.clone(), nv.clone()),
        });
        s = s + ds;
        match step {
            Step::Corner(_) => {
                break TraceOutcome::ConePointHit {
                    at: chart.ambient(&nu, &nv),
                }
            }
            Step::Exit(exit, _) => {
                chart = chart.cross(exit)?;
                u = nu;
                v = nv;
                wrap(exit, &mut u, &mut v);
            }
        }
    };
    let mut vertices: Vec<[T; 3]> = Vec::with_capacity(segments.len() + 1);
    if let Some(first) = segments.first() {
        vertices.push(first.chart.ambient(&first.from.0, &first.from.1));
    }
    for seg in &segments {
        vertices.push(seg.chart.ambient(&seg.to.0, &seg.to.1));
    }
    let closed = outcome == TraceOutcome::Closed;
    let drift_vector = match outcome {
        TraceOutcome::BoundReached => period_motion(&c0, &u0, &v0, p, q)?
            .map(|g| g.drift())
            .filter(|d| *d != [0, 0, 0]),
        _ => None,
    };
    Ok(Trajectory3D {
        direction: (p, q),
        segments,
        vertices,
        closed,
        outcome,
        drift_vector,
        arc_length: ArcLength {
            norm_sq: p * p + q * q,
            s,
        },
    })
}

/// The rigid motion carrying the chart at flow time 0 to the chart at flow time 1,
/// or `None` if the first period runs into a cone point.
pub fn period_motion<T: Exact>(
    c0: &Chart,
    u0: &T,
    v0: &T,
    p: i64,
    q: i64,
) -> Result<Option<RigidMotion>> {
    check_primitive(p, q)?;
    let (mut chart, mut u, mut v) = (*c0, u0.clone(), v0.clone());
    let mut s = T::zero();
    loop {
        match next_exit(&u, &v, p, q) {
            Step::Corner(ds) => {
                if s + ds >= T::one() {
                    break;
                }
                return Ok(None);
            }
            Step::Exit(exit, ds) => {
                if s.clone() + ds.clone() >= T::one() {
                    break;
                }
                u = u + ds.clone() * T::from_int(p);
                v = v + ds.clone() * T::from_int(q);
                s = s + ds;
                chart = chart.cross(exit)?;
                wrap(exit, &mut u, &mut v);
            }
        }
    }
    motion_between(c0, &chart).map(Some)
}

pub(crate) fn motion_between(a: &Chart, b: &Chart) -> Result<RigidMotion> {
    a.motion_to(b).ok_or_else(|| {
        Error::Inconsistent(format!(
            "charts {:?} and {:?} are not related by a symmetry",
            a, b
        ))
    })
}

/// Order in which the trajectory from `(u_num/den, v_num/den)` with velocity `(p, q)`
/// crosses chart edges during one unit of flow time; `None` if it meets a corner.
pub fn crossing_order(u_num: i64, v_num: i64, den: i64, p: i64, q: i64) -> Option<Vec<Exit>> {
    // i-th crossing time = first(i) / (den·|d|)
    let first = |x: i64, d: i64| if d > 0 { den - x } else { x };
    let (ap, aq) = (p.abs(), q.abs());
    let (fu, fv) = (first(u_num, p), first(v_num, q));
    let eu = if p > 0 { Exit::U1 } else { Exit::U0 };
    let ev = if q > 0 { Exit::V1 } else { Exit::V0 };
    let mut out = Vec::with_capacity((ap + aq) as usize);
    let (mut i, mut j) = (0, 0);
    while i < ap || j < aq {
        if j == aq {
            out.push(eu);
            i += 1;
        } else if i == ap {
            out.push(ev);
            j += 1;
        } else {
            let tu = (fu + i * den) * aq;
            let tv = (fv + j * den) * ap;
            if tu == tv {
                return None;
            }
            if tu < tv {
                out.push(eu);
                i += 1;
            } else {
                out.push(ev);
                j += 1;
            }
        }
    }
    Some(out)
}

/// Integer-only version of [`period_motion`] for starts with small denominators.
pub fn period_motion_fast(
    c0: &Chart,
    u_num: i64,
    v_num: i64,
    den: i64,
    p: i64,
    q: i64,
) -> Result<Option<RigidMotion>> {
    check_primitive(p, q)?;
    let Some(order) = crossing_order(u_num, v_num, den, p, q) else {
        return Ok(None);
    };
    let mut chart = *c0;
    for exit in order {
        chart = chart.cross(exit)?;
    }
    motion_between(c0, &chart).map(Some)
}

/// ∞-norm diameter of a closed trajectory.
pub fn trajectory_diameter<T: Exact>(t: &Trajectory3D<T>) -> Result<T> {
    if !t.closed {
        return Err(Error::OpenTrajectory);
    }
    Ok(polyline_diameter(&t.vertices))
}

pub fn polyline_diameter<T: Exact>(pts: &[[T; 3]]) -> T {
    (0..3)
        .map(|i| {
            let lo = pts.iter().map(|p| &p[i]).min();
            let hi = pts.iter().map(|p| &p[i]).max();
            match (lo, hi) {
                (Some(a), Some(b)) => b.clone() - a.clone(),
                _ => T::zero(),
            }
        })
        .max()
        .unwrap_or_else(T::zero)
}
