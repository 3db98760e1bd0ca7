//! Developing charts: a face together with an isometric coordinate frame.

use serde::{Deserialize, Serialize};

use super::geometry::{add, cross, is_face_of_m, neg, scale, Axis, Face, V3};
use super::motion::RigidMotion;
use crate::error::{Error, Result};
use crate::scalar::Exact;

/// Exit side of a chart's unit square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Exit {
    U0,
    U1,
    V0,
    V1,
}

/// A face with a frame: the point `(u, v)` sits at `(o2 + 2u·eu + 2v·ev) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chart {
    pub o2: V3,
    pub eu: V3,
    pub ev: V3,
}

impl Chart {
    pub fn normal(&self) -> V3 {
        cross(self.eu, self.ev)
    }

    pub fn face(&self) -> Face {
        let n = self.normal();
        Face {
            center2x: add(add(self.o2, self.eu), self.ev),
            axis: Axis::of_unit(n).expect("chart frame is orthonormal"),
        }
    }

    /// One of the four charts of `face` with normal `+axis`; index `k` rotates the base
    /// frame by `k` quarter turns.
    pub fn standard(face: &Face, k: u8) -> Chart {
        let (b, c) = face.axis.others();
        let mut eu = super::geometry::unit(b);
        let mut ev = super::geometry::unit(c);
        for _ in 0..(k % 4) {
            let (u, v) = (ev, neg(eu));
            eu = u;
            ev = v;
        }
        Chart {
            o2: add(face.center2x, neg(add(eu, ev))),
            eu,
            ev,
        }
    }

    /// Index `k` such that `self == standard(face, k)`, if the normal is `+axis`.
    pub fn standard_index(&self) -> Option<u8> {
        let f = self.face();
        (0..4).find(|&k| Chart::standard(&f, k) == *self)
    }

    /// Ambient (real) coordinates of the chart point `(u, v)`.
    pub fn ambient<T: Exact>(&self, u: &T, v: &T) -> [T; 3] {
        std::array::from_fn(|i| {
            T::ratio(self.o2[i], 2)
                + u.clone() * T::from_int(self.eu[i])
                + v.clone() * T::from_int(self.ev[i])
        })
    }

    /// The chart of the neighbouring face across `exit`, developed so that the
    /// unfolded coordinates continue across the edge.
    pub fn cross(&self, exit: Exit) -> Result<Chart> {
        let n = self.normal();
        let (o2, eu, ev) = (self.o2, self.eu, self.ev);
        // the edge runs along `edge`; the new face spans `edge` and one of `cands`,
        // with center `corner + w + edge`
        let (corner, edge, cands) = match exit {
            Exit::U1 => (add(o2, scale(2, eu)), ev, [eu, n, neg(n)]),
            Exit::U0 => (o2, ev, [neg(eu), n, neg(n)]),
            Exit::V1 => (add(o2, scale(2, ev)), eu, [ev, n, neg(n)]),
            Exit::V0 => (o2, eu, [neg(ev), n, neg(n)]),
        };
        let hits: Vec<V3> = cands
            .into_iter()
            .filter(|&w| {
                let axis = Axis::of_unit(cross(w, edge)).expect("orthonormal");
                is_face_of_m(add(add(corner, w), edge), axis)
            })
            .collect();
        let w = match hits.as_slice() {
            [w] => *w,
            _ => {
                return Err(Error::Inconsistent(format!(
                    "edge {:?} of chart {:?} has {} neighbours",
                    exit,
                    self,
                    hits.len()
                )))
            }
        };
        Ok(match exit {
            Exit::U1 => Chart {
                o2: corner,
                eu: w,
                ev,
            },
            Exit::U0 => Chart {
                o2: add(o2, scale(2, w)),
                eu: neg(w),
                ev,
            },
            Exit::V1 => Chart {
                o2: corner,
                eu,
                ev: w,
            },
            Exit::V0 => Chart {
                o2: add(o2, scale(2, w)),
                eu,
                ev: neg(w),
            },
        })
    }

    pub fn apply_motion(&self, g: &RigidMotion) -> Chart {
        Chart {
            o2: g.apply_point2x(self.o2),
            eu: g.apply_vector(self.eu),
            ev: g.apply_vector(self.ev),
        }
    }

    /// The motion carrying this chart onto `other`.
    pub fn motion_to(&self, other: &Chart) -> Option<RigidMotion> {
        RigidMotion::between_frames(self.o2, self.eu, self.ev, other.o2, other.eu, other.ev)
    }

    /// The same face with the frame rotated by a half turn.
    pub fn half_turn(&self) -> Chart {
        Chart {
            o2: add(add(self.o2, scale(2, self.eu)), scale(2, self.ev)),
            eu: neg(self.eu),
            ev: neg(self.ev),
        }
    }
}

/// A point of M in chart coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point3<T> {
    pub face: Face,
    pub u: T,
    pub v: T,
    /// Index of one of the four standard charts of the face.
    pub chart: u8,
}

impl<T: Exact> Point3<T> {
    pub fn new(face: Face, u: T, v: T, chart: u8) -> Point3<T> {
        Point3 {
            face,
            u,
            v,
            chart: chart % 4,
        }
    }

    pub fn center(face: Face) -> Point3<T> {
        Point3::new(face, T::ratio(1, 2), T::ratio(1, 2), 0)
    }

    pub fn chart_frame(&self) -> Chart {
        Chart::standard(&self.face, self.chart)
    }

    pub fn to_ambient(&self) -> [T; 3] {
        self.chart_frame().ambient(&self.u, &self.v)
    }

    /// Chart coordinates of an ambient point on `face` in chart `k`.
    pub fn from_ambient(face: Face, k: u8, x: &[T; 3]) -> Option<Point3<T>> {
        let c = Chart::standard(&face, k);
        let rel: Vec<T> = (0..3)
            .map(|i| x[i].clone() - T::ratio(c.o2[i], 2))
            .collect();
        let proj = |e: V3| -> T {
            (0..3).fold(T::zero(), |acc, i| acc + rel[i].clone() * T::from_int(e[i]))
        };
        let (u, v) = (proj(c.eu), proj(c.ev));
        let a = face.axis.index();
        let in_unit = |t: &T| !t.is_negative() && *t <= T::one();
        (rel[a].is_zero() && in_unit(&u) && in_unit(&v)).then(|| Point3::new(face, u, v, k))
    }

    /// Re-expresses the point in chart `k` of the same face.
    pub fn with_chart(&self, k: u8) -> Point3<T> {
        Point3::from_ambient(self.face, k, &self.to_ambient()).expect("same face")
    }

    pub fn is_interior(&self) -> bool {
        let open = |t: &T| t.is_positive() && *t < T::one();
        open(&self.u) && open(&self.v)
    }

    pub fn apply_motion(&self, g: &RigidMotion) -> Result<Point3<T>> {
        let img = self.chart_frame().apply_motion(g);
        let face = g.apply_face(&self.face)?;
        // the image frame may have normal -axis; re-express through ambient coordinates
        let x = img.ambient(&self.u, &self.v);
        Point3::from_ambient(face, 0, &x)
            .ok_or_else(|| Error::Inconsistent("motion image left its face".into()))
    }
}
