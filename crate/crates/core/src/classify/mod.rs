//! Periodic or drift: three independent deciders and their agreement harness.

mod direction;

pub use direction::{Direction, Symmetry};

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::{
    cylinder_decomposition, quarter_displacement_check, quarter_orbit, run, SurfacePoint,
    TraceResult,
};
use crate::mucube3d::{
    canonical_start, check_primitive, faces_in_box, period_motion_fast, seed_chart, trace3d,
    Point3, RigidMotion, Rotation, TraceOutcome, SEED_FACE, V3,
};
use crate::scalar::Exact;
use crate::surface::{build_xy, Surface};
use crate::{Rational, SmallRational};

/// X and Y with the projection between them and the square of X holding the seed face.
#[derive(Debug)]
pub struct Model {
    pub x: Surface,
    pub y: Surface,
    pub proj: crate::surface::Projection,
    pub seed: usize,
}

pub fn model() -> &'static Model {
    static MODEL: OnceLock<Model> = OnceLock::new();
    MODEL.get_or_init(|| {
        let (x, y, proj) = build_xy().expect("X and Y pass their self-checks");
        let (rep, _) = SEED_FACE.reduce();
        let seed = faces_in_box([-1, -1, -1], [1, 1, 1])
            .iter()
            .position(|f| *f == rep)
            .expect("seed face reduces into the box");
        Model { x, y, proj, seed }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Periodic,
    Drift,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Periodic => "periodic",
            Verdict::Drift => "drift",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    Oracle3D,
    QuotientY,
    DisplacementX,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// The face-center orbit closes at flow time `core_multiplier`, passing
    /// `center_visits` face centers, and `motion` has order `core_multiplier` and
    /// advances the orbit by one period.
    Periodic {
        core_multiplier: i64,
        center_visits: usize,
        motion: RigidMotion,
    },
    /// `motion` advances the orbit by one period; its `k`-th power, `k` the order of its
    /// rotation, translates by `2·drift_vector`.
    Drift {
        drift_vector: V3,
        motion: RigidMotion,
    },
    /// Decomposition of Y: number of cylinders and the `γ₀` count of the first core.
    Cylinders { count: usize, gamma0: i64 },
    /// Closed orbit on X from the seed: its period and cocycle displacement.
    Displacement { period: i64, displacement: V3 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub direction: (i64, i64),
    pub verdict: Verdict,
    pub method: Method,
    pub certificate: Certificate,
}

impl Classification {
    pub fn drift_vector(&self) -> V3 {
        match &self.certificate {
            Certificate::Drift { drift_vector, .. } => *drift_vector,
            Certificate::Displacement { displacement, .. } => *displacement,
            _ => [0, 0, 0],
        }
    }

    pub fn core_multiplier(&self) -> i64 {
        match &self.certificate {
            Certificate::Periodic {
                core_multiplier, ..
            } => *core_multiplier,
            Certificate::Displacement { period, .. } => *period,
            _ => 0,
        }
    }

    /// Replays the certificate by an independent exact computation.
    pub fn verify(&self) -> Result<()> {
        let (p, q) = self.direction;
        let fail = |msg: &str| {
            Err(Error::Inconsistent(format!(
                "certificate for ({p}, {q}): {msg}"
            )))
        };
        match &self.certificate {
            Certificate::Periodic {
                core_multiplier,
                center_visits,
                motion,
            } => {
                let start = Point3::<Rational>::center(SEED_FACE);
                let t = trace3d(&start, p, q, &Rational::from_int(core_multiplier + 1))?;
                if !t.closed || t.arc_length.s != Rational::from_int(*core_multiplier) {
                    return fail("orbit does not close at the stated length");
                }
                if t.center_visits().len() != *center_visits {
                    return fail("wrong number of face centers");
                }
                if motion.order() != Some(*core_multiplier as u32) {
                    return fail("motion has the wrong order");
                }
                let verts: BTreeSet<&[Rational; 3]> = t.vertices.iter().collect();
                for v in &t.vertices {
                    let img = apply_motion(motion, v);
                    if !verts.contains(&img) && !on_polyline(&t.vertices, &img) {
                        return fail("motion does not preserve the orbit");
                    }
                }
                Ok(())
            }
            Certificate::Drift {
                drift_vector,
                motion,
            } => {
                if *drift_vector == [0, 0, 0] || motion.drift() != *drift_vector {
                    return fail("drift vector does not match the motion");
                }
                let (a, b, d) = canonical_start(p, q);
                let start = Point3::new(SEED_FACE, Rational::ratio(a, d), Rational::ratio(b, d), 0);
                let k = motion.rotation.order() as i64;
                let t = trace3d(&start, p, q, &Rational::from_int(k))?;
                if t.outcome != TraceOutcome::BoundReached {
                    return fail("re-trace closes or meets a cone point");
                }
                let s0 = start.to_ambient();
                let shifted: [Rational; 3] = std::array::from_fn(|i| {
                    s0[i].clone() + Rational::from_int(2 * drift_vector[i])
                });
                if t.vertices.last() != Some(&shifted) {
                    return fail("re-trace does not end at the translated start");
                }
                Ok(())
            }
            Certificate::Cylinders { count, gamma0 } => {
                let d = cylinder_decomposition::<Rational>(&model().y, p, q)?;
                if d.cylinders.len() != *count || d.cylinders[0].gamma0 != *gamma0 {
                    return fail("decomposition of Y differs");
                }
                Ok(())
            }
            Certificate::Displacement {
                period,
                displacement,
            } => {
                let t = trace_x::<Rational>(p, q)?;
                if t.time != Rational::from_int(*period) || t.displacement != *displacement {
                    return fail("orbit on X differs");
                }
                Ok(())
            }
        }
    }
}

fn apply_motion(g: &RigidMotion, v: &[Rational; 3]) -> [Rational; 3] {
    let r = &g.rotation.0;
    std::array::from_fn(|i| {
        (0..3).fold(Rational::from_int(2 * g.translation[i]), |acc, k| {
            acc + v[k].clone() * Rational::from_int(r[i][k])
        })
    })
}

fn on_polyline(vs: &[[Rational; 3]], x: &[Rational; 3]) -> bool {
    vs.windows(2).any(|w| {
        let mut t: Option<Rational> = None;
        for i in 0..3 {
            let d = w[1][i].clone() - w[0][i].clone();
            let e = x[i].clone() - w[0][i].clone();
            if d.is_zero() {
                if !e.is_zero() {
                    return false;
                }
            } else {
                let ti = e / d;
                if t.as_ref().is_some_and(|t| *t != ti) {
                    return false;
                }
                t = Some(ti);
            }
        }
        t.is_some_and(|t| !t.is_negative() && t <= Rational::one())
    })
}

fn seed_start<T: Exact>(p: i64, q: i64) -> SurfacePoint<T> {
    let (a, b, d) = canonical_start(p, q);
    SurfacePoint::new(model().seed, T::ratio(a, d), T::ratio(b, d))
}

fn budget(p: i64, q: i64) -> usize {
    8 * (p.unsigned_abs() + q.unsigned_abs()) as usize + 8
}

/// The orbit on X of the canonical start in the seed square, traced until it closes.
/// The seed square carries the seed chart, so this is the projection of the orbit
/// unfolded by [`classify_oracle`].
pub fn trace_x<T: Exact>(p: i64, q: i64) -> Result<TraceResult<T>> {
    check_primitive(p, q)?;
    let t = run(&model().x, &seed_start(p, q), 1, p, q, budget(p, q));
    if !t.closed() {
        return Err(Error::Inconsistent(format!(
            "orbit ({p}, {q}) does not close on X: {:?}",
            t.outcome
        )));
    }
    Ok(t)
}

/// The image in Y of the orbit from [`trace_x`], traced until it closes on Y.
pub fn trace_y<T: Exact>(p: i64, q: i64) -> Result<TraceResult<T>> {
    check_primitive(p, q)?;
    let m = model();
    let s = seed_start::<T>(p, q);
    let (k, half_turn) = m.proj[s.square];
    let (pt, sign) = if half_turn {
        (SurfacePoint::new(k, T::one() - s.x, T::one() - s.y), -1)
    } else {
        (SurfacePoint::new(k, s.x, s.y), 1)
    };
    let t = run(&m.y, &pt, sign, p, q, budget(p, q));
    if !t.closed() {
        return Err(Error::Inconsistent(format!(
            "orbit ({p}, {q}) does not close on Y: {:?}",
            t.outcome
        )));
    }
    Ok(t)
}

/// Unfolding in ℝ³. Both-odd directions are drift outright. Otherwise the face-center
/// orbit is unfolded for one period: it closes on M exactly when the period motion has
/// finite order, and then it closes after that many periods.
pub fn classify_oracle(p: i64, q: i64) -> Result<Classification> {
    check_primitive(p, q)?;
    let (a, b, d) = canonical_start(p, q);
    let g = period_motion_fast(&seed_chart(), a, b, d, p, q)?.ok_or_else(|| {
        Error::Inconsistent(format!("canonical start meets a cone point in ({p}, {q})"))
    })?;
    let both_odd = p.rem_euclid(2) == 1 && q.rem_euclid(2) == 1;
    let (verdict, certificate) = match g.order() {
        Some(k) if !both_odd => (
            Verdict::Periodic,
            Certificate::Periodic {
                core_multiplier: k as i64,
                center_visits: k as usize,
                motion: g,
            },
        ),
        _ => {
            let drift_vector = g.drift();
            if drift_vector == [0, 0, 0] {
                return Err(Error::Inconsistent(format!(
                    "odd/odd direction ({p}, {q}) closes"
                )));
            }
            (
                Verdict::Drift,
                Certificate::Drift {
                    drift_vector,
                    motion: g,
                },
            )
        }
    };
    Ok(Classification {
        direction: (p, q),
        verdict,
        method: Method::Oracle3D,
        certificate,
    })
}

/// Periodic iff Y is a single cylinder whose core meets `γ₀` zero times algebraically.
pub fn classify_y(p: i64, q: i64) -> Result<Classification> {
    let d = cylinder_decomposition::<SmallRational>(&model().y, p, q)?;
    let gamma0 = d.cylinders[0].gamma0;
    let verdict = if d.cylinders.len() == 1 && gamma0 == 0 {
        Verdict::Periodic
    } else {
        Verdict::Drift
    };
    Ok(Classification {
        direction: (p, q),
        verdict,
        method: Method::QuotientY,
        certificate: Certificate::Cylinders {
            count: d.cylinders.len(),
            gamma0,
        },
    })
}

/// Periodic iff the closed orbit on X has zero displacement.
pub fn classify_x(p: i64, q: i64) -> Result<Classification> {
    let t = trace_x::<SmallRational>(p, q)?;
    let verdict = if t.displacement == [0, 0, 0] {
        Verdict::Periodic
    } else {
        Verdict::Drift
    };
    Ok(Classification {
        direction: (p, q),
        verdict,
        method: Method::DisplacementX,
        certificate: Certificate::Displacement {
            period: t.time.floor_i64(),
            displacement: t.displacement,
        },
    })
}

pub fn classify_with(method: Method, p: i64, q: i64) -> Result<Classification> {
    match method {
        Method::Oracle3D => classify_oracle(p, q),
        Method::QuotientY => classify_y(p, q),
        Method::DisplacementX => classify_x(p, q),
    }
}

/// Runs all three deciders, insists that they agree (on the drift vector too), and
/// returns the oracle's answer.
pub fn classify_all(p: i64, q: i64) -> Result<Classification> {
    let o = classify_oracle(p, q)?;
    let y = classify_y(p, q)?;
    let x = classify_x(p, q)?;
    if o.verdict != y.verdict || o.verdict != x.verdict || o.drift_vector() != x.drift_vector() {
        return Err(Error::MethodDisagreement(format!(
            "({p}, {q}): oracle {} {:?}; Y {} {:?}; X {} {:?}",
            o.verdict, o.certificate, y.verdict, y.certificate, x.verdict, x.certificate
        )));
    }
    Ok(o)
}

/// For a periodic direction: X splits into three cylinders, the coordinate cycle
/// permutes them cyclically, and each core has displacement `(a, b, c)` with
/// `a + b + c = 0`. A failure here contradicts the periodic verdict and is reported
/// as a disagreement.
pub fn three_cylinder_check(p: i64, q: i64) -> Result<bool> {
    let c = classify_all(p, q)?;
    if c.verdict != Verdict::Periodic {
        return Err(Error::InvalidInput(format!(
            "({p}, {q}) is not a periodic direction"
        )));
    }
    if !three_cylinders(p, q)? {
        return Err(Error::MethodDisagreement(format!(
            "({p}, {q}) is periodic but X does not split into three cycled cylinders"
        )));
    }
    Ok(true)
}

/// The three-cylinder condition alone, for any direction.
pub fn three_cylinders(p: i64, q: i64) -> Result<bool> {
    let m = model();
    let d = cylinder_decomposition::<SmallRational>(&m.x, p, q)?;
    if d.cylinders.len() != 3 {
        return Ok(false);
    }
    let sym =
        m.x.symmetry
            .as_ref()
            .ok_or_else(|| Error::Inconsistent("X lacks its symmetry".into()))?;
    let image = |c: &crate::flow::Cylinder<SmallRational>| -> Result<usize> {
        let SurfacePoint { square, x, y } = c.core.clone();
        let to = sym[square];
        let pt = if to.half_turn {
            SurfacePoint::new(
                to.square,
                SmallRational::one() - x,
                SmallRational::one() - y,
            )
        } else {
            SurfacePoint::new(to.square, x, y)
        };
        d.cylinder_containing(&pt)
    };
    let perm: Vec<usize> = d.cylinders.iter().map(image).collect::<Result<_>>()?;
    let cycled = (0..3).all(|i| perm[i] != i) && perm.iter().collect::<BTreeSet<_>>().len() == 3;
    let balanced = d
        .cylinders
        .iter()
        .all(|c| c.displacement.iter().sum::<i64>() == 0);
    Ok(cycled && balanced)
}

/// `γ₀` count of the orbit on Y, scaled to the period of the orbit on X, beside the
/// X displacement; the count equals `a + b + c`.
pub fn gamma_count_and_displacement(p: i64, q: i64) -> Result<(i64, V3)> {
    let x = trace_x::<SmallRational>(p, q)?;
    let y = trace_y::<SmallRational>(p, q)?;
    let laps = x.time / y.time;
    if !laps.is_integer() {
        return Err(Error::Inconsistent(format!(
            "({p}, {q}): X period is not a multiple of the Y period"
        )));
    }
    Ok((y.gamma0 * laps.to_integer() as i64, x.displacement))
}

/// The quarter turn relating the quarter-period displacements of an orbit on X, if any.
pub fn quarter_turn_witness(p: i64, q: i64) -> Result<Option<Rotation>> {
    let m = model();
    let orbit = quarter_orbit::<SmallRational>(&m.x, m.seed, p, q)?;
    quarter_displacement_check(&m.x, &orbit)
}
