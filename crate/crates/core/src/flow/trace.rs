use crate::error::{Error, Result};
use crate::mucube3d::V3;
use crate::scalar::Exact;
use crate::surface::{Corner, Side, Surface};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurfacePoint<T> {
    pub square: usize,
    pub x: T,
    pub y: T,
}

impl<T: Exact> SurfacePoint<T> {
    pub fn new(square: usize, x: T, y: T) -> SurfacePoint<T> {
        SurfacePoint { square, x, y }
    }

    pub fn center(square: usize) -> SurfacePoint<T> {
        SurfacePoint::new(square, T::ratio(1, 2), T::ratio(1, 2))
    }

    pub fn is_interior(&self) -> bool {
        let open = |t: &T| t.is_positive() && *t < T::one();
        open(&self.x) && open(&self.y)
    }

    /// The side the point lies on, if any; corners report their vertical side.
    pub fn side(&self) -> Option<Side> {
        if self.x.is_zero() {
            Some(Side::Left)
        } else if self.x.is_one() {
            Some(Side::Right)
        } else if self.y.is_zero() {
            Some(Side::Bottom)
        } else if self.y.is_one() {
            Some(Side::Top)
        } else {
            None
        }
    }
}

/// A straight piece inside one square; the velocity is `sign·(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentOnSurface<T> {
    pub square: usize,
    pub from: (T, T),
    pub to: (T, T),
    pub sign: i64,
    /// Cocycle weight accumulated before this segment.
    pub displacement: V3,
    /// Flow time at the start of this segment.
    pub start_time: T,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceOutcome {
    Closed,
    ConePointHit { square: usize, corner: Corner },
    BudgetExhausted,
}

#[derive(Debug, Clone)]
pub struct TraceResult<T> {
    pub direction: (i64, i64),
    pub segments: Vec<SegmentOnSurface<T>>,
    /// Sides crossed, as `(square left, side)`.
    pub crossings: Vec<(usize, Side)>,
    pub outcome: SurfaceOutcome,
    /// Sum of cocycle weights over the crossings (zero without a cocycle).
    pub displacement: V3,
    /// Signed crossings of the marked curve `gamma0`, `+1` when crossing it from its right
    /// to its left; this is `i(gamma0, c)`.
    pub gamma0: i64,
    /// Total flow time; arc length is `time·√(p²+q²)`.
    pub time: T,
}

impl<T: Exact> TraceResult<T> {
    pub fn closed(&self) -> bool {
        self.outcome == SurfaceOutcome::Closed
    }

    pub fn squares(&self) -> Vec<usize> {
        self.segments.iter().map(|s| s.square).collect()
    }

    /// Squares whose center lies on the trajectory, once per passage.
    pub fn center_visits(&self) -> Vec<usize> {
        let half = T::ratio(1, 2);
        self.segments
            .iter()
            .filter(|seg| {
                let (x0, y0) = &seg.from;
                let (x1, y1) = &seg.to;
                let dx = x1.clone() - x0.clone();
                let dy = y1.clone() - y0.clone();
                let cx = half.clone() - x0.clone();
                let cy = half.clone() - y0.clone();
                if cx.clone() * dy.clone() != cy.clone() * dx.clone() {
                    return false;
                }
                let (num, den) = if !dx.is_zero() { (cx, dx) } else { (cy, dy) };
                let lam = num / den;
                !lam.is_negative() && lam < T::one()
            })
            .map(|seg| seg.square)
            .collect()
    }
}

pub(crate) enum Hit<T> {
    Side(Side, T),
    Corner(Corner, T),
}

/// Time to leave the square from `(x, y)` with velocity `(vx, vy)`.
pub(crate) fn next_hit<T: Exact>(x: &T, y: &T, vx: i64, vy: i64) -> Hit<T> {
    let t_of = |c: &T, v: i64| -> Option<T> {
        match v.signum() {
            1 => Some((T::one() - c.clone()) / T::from_int(v)),
            -1 => Some(c.clone() / T::from_int(-v)),
            _ => None,
        }
    };
    let h = if vx > 0 { Side::Right } else { Side::Left };
    let v = if vy > 0 { Side::Top } else { Side::Bottom };
    match (t_of(x, vx), t_of(y, vy)) {
        (Some(a), None) => Hit::Side(h, a),
        (None, Some(b)) => Hit::Side(v, b),
        (Some(a), Some(b)) => {
            if a == b {
                let c = Corner::of_inward(-vx.signum(), -vy.signum());
                Hit::Corner(c, a)
            } else if a < b {
                Hit::Side(h, a)
            } else {
                Hit::Side(v, b)
            }
        }
        (None, None) => unreachable!("zero velocity"),
    }
}

/// Position on `side` at edge parameter `t`.
pub(crate) fn on_side<T: Exact>(side: Side, t: T) -> (T, T) {
    match side {
        Side::Bottom => (t, T::zero()),
        Side::Top => (t, T::one()),
        Side::Left => (T::zero(), t),
        Side::Right => (T::one(), t),
    }
}

pub(crate) fn param_of<T: Exact>(side: Side, x: &T, y: &T) -> T {
    if side.is_vertical() {
        y.clone()
    } else {
        x.clone()
    }
}

pub(crate) fn add_w(a: &mut V3, w: V3) {
    for i in 0..3 {
        a[i] += w[i];
    }
}

/// Flow state: square, position, and velocity sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct State<T> {
    pub square: usize,
    pub x: T,
    pub y: T,
    pub sign: i64,
}

/// Result of moving a state to the boundary of its square and through it.
pub(crate) enum Moved<T> {
    Crossed {
        time: T,
        end: (T, T),
        next: State<T>,
        sides: Vec<(usize, Side)>,
        weight: V3,
    },
    Cone {
        time: T,
        end: (T, T),
        corner: Corner,
    },
}

pub(crate) fn move_out<T: Exact>(s: &Surface, st: &State<T>, p: i64, q: i64) -> Moved<T> {
    let (vx, vy) = (st.sign * p, st.sign * q);
    let hit = next_hit(&st.x, &st.y, vx, vy);
    let time = match &hit {
        Hit::Side(_, t) | Hit::Corner(_, t) => t.clone(),
    };
    let end = (
        st.x.clone() + time.clone() * T::from_int(vx),
        st.y.clone() + time.clone() * T::from_int(vy),
    );
    let w = |sq: usize, side: Side| s.weight(sq, side).unwrap_or([0; 3]);
    match hit {
        Hit::Side(side, _) => {
            let g = s.gluing(st.square, side);
            let t = g.map_param(&param_of(side, &end.0, &end.1));
            let (x, y) = on_side(g.side, t);
            Moved::Crossed {
                time,
                end,
                next: State {
                    square: g.square,
                    x,
                    y,
                    sign: if g.flip { -st.sign } else { st.sign },
                },
                sides: vec![(st.square, side)],
                weight: w(st.square, side),
            }
        }
        Hit::Corner(c, _) => {
            if s.vertex_size(st.square, c) != 4 {
                return Moved::Cone {
                    time,
                    end,
                    corner: c,
                };
            }
            // pass straight through a regular vertex: two sectors on
            let (s1, c1, f1) = s.next_sector(st.square, c);
            let (s2, c2, f2) = s.next_sector(s1, c1);
            let mut weight = w(st.square, c.ccw_exit());
            add_w(&mut weight, w(s1, c1.ccw_exit()));
            let (cx, cy) = c2.coords();
            Moved::Crossed {
                time,
                end,
                next: State {
                    square: s2,
                    x: T::from_int(cx),
                    y: T::from_int(cy),
                    sign: if f1 ^ f2 { -st.sign } else { st.sign },
                },
                sides: vec![(st.square, c.ccw_exit()), (s1, c1.ccw_exit())],
                weight,
            }
        }
    }
}

/// Crossing time of the horizontal line `y = 1/2`, when it lies in `[0, len)`.
fn gamma_crossing<T: Exact>(y0: &T, vy: i64, len: &T) -> bool {
    if vy == 0 {
        return false;
    }
    let t = (T::ratio(1, 2) - y0.clone()) / T::from_int(vy);
    !t.is_negative() && t < *len
}

/// Traces the flow with velocity `(p, q)` from an interior point until it closes, hits a
/// cone point, or crosses `max_crossings` sides.
pub fn trace_surface<T: Exact>(
    s: &Surface,
    start: &SurfacePoint<T>,
    p: i64,
    q: i64,
    max_crossings: usize,
) -> Result<TraceResult<T>> {
    crate::mucube3d::check_primitive(p, q)?;
    if start.square >= s.n() || !start.is_interior() {
        return Err(Error::InvalidInput(
            "start must lie in the interior of a square".into(),
        ));
    }
    Ok(run(s, start, 1, p, q, max_crossings))
}

pub(crate) fn run<T: Exact>(
    s: &Surface,
    start: &SurfacePoint<T>,
    sign0: i64,
    p: i64,
    q: i64,
    max_crossings: usize,
) -> TraceResult<T> {
    let gamma = s.marked_curve("gamma0").map(|m| m.orientation.clone());
    let mut st = State {
        square: start.square,
        x: start.x.clone(),
        y: start.y.clone(),
        sign: sign0,
    };
    let mut segments = Vec::new();
    let mut crossings = Vec::new();
    let mut displacement = [0; 3];
    let mut gamma0 = 0;
    let mut time = T::zero();
    let (tp, tq) = (T::from_int(p), T::from_int(q));
    let count_gamma = |sq: usize, y0: &T, sign: i64, len: &T| -> i64 {
        match &gamma {
            Some(o) if o[sq] != 0 && gamma_crossing(y0, sign * q, len) => {
                (sign * q).signum() * o[sq] as i64
            }
            _ => 0,
        }
    };
    let outcome = loop {
        let moved = move_out(s, &st, p, q);
        let (seg_time, end) = match &moved {
            Moved::Crossed { time, end, .. } | Moved::Cone { time, end, .. } => {
                (time.clone(), end.clone())
            }
        };
        if !segments.is_empty() && st.square == start.square && st.sign == sign0 {
            let dx = start.x.clone() - st.x.clone();
            let dy = start.y.clone() - st.y.clone();
            if dx.clone() * tq.clone() == dy.clone() * tp.clone() {
                let lam = if p != 0 {
                    dx / (tp.clone() * T::from_int(sign0))
                } else {
                    dy / (tq.clone() * T::from_int(sign0))
                };
                if lam.is_positive() && lam <= seg_time {
                    gamma0 += count_gamma(st.square, &st.y, st.sign, &lam);
                    segments.push(SegmentOnSurface {
                        square: st.square,
                        from: (st.x.clone(), st.y.clone()),
                        to: (start.x.clone(), start.y.clone()),
                        sign: st.sign,
                        displacement,
                        start_time: time.clone(),
                    });
                    time = time + lam;
                    break SurfaceOutcome::Closed;
                }
            }
        }
        gamma0 += count_gamma(st.square, &st.y, st.sign, &seg_time);
        segments.push(SegmentOnSurface {
            square: st.square,
            from: (st.x.clone(), st.y.clone()),
            to: end,
            sign: st.sign,
            displacement,
            start_time: time.clone(),
        });
        time = time + seg_time;
        match moved {
            Moved::Cone { corner, .. } => {
                break SurfaceOutcome::ConePointHit {
                    square: st.square,
                    corner,
                };
            }
            Moved::Crossed {
                next,
                sides,
                weight,
                ..
            } => {
                if crossings.len() + sides.len() > max_crossings {
                    break SurfaceOutcome::BudgetExhausted;
                }
                crossings.extend(sides);
                add_w(&mut displacement, weight);
                st = next;
            }
        }
    };
    TraceResult {
        direction: (p, q),
        segments,
        crossings,
        outcome,
        displacement,
        gamma0,
        time,
    }
}

/// Moves an interior or boundary point forward by flow time `dt`, following gluings.
/// Returns the new point and its velocity sign, or `None` if a cone point is met.
pub fn advance<T: Exact>(
    s: &Surface,
    from: &SurfacePoint<T>,
    sign: i64,
    p: i64,
    q: i64,
    dt: &T,
) -> Option<(SurfacePoint<T>, i64)> {
    let mut st = State {
        square: from.square,
        x: from.x.clone(),
        y: from.y.clone(),
        sign,
    };
    let mut left = dt.clone();
    loop {
        let moved = move_out(s, &st, p, q);
        let t = match &moved {
            Moved::Crossed { time, .. } | Moved::Cone { time, .. } => time.clone(),
        };
        if left < t {
            let (vx, vy) = (st.sign * p, st.sign * q);
            let x = st.x.clone() + left.clone() * T::from_int(vx);
            let y = st.y.clone() + left * T::from_int(vy);
            return Some((SurfacePoint::new(st.square, x, y), st.sign));
        }
        match moved {
            Moved::Cone { .. } => return None,
            Moved::Crossed { next, .. } => {
                left = left - t;
                st = next;
            }
        }
    }
}
