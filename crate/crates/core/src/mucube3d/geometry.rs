//! Faces and cone points of the Mucube, in doubled integer coordinates.

use serde::{Deserialize, Serialize};

/// Integer triple. Ambient points are stored doubled so that half-integers are exact.
pub type V3 = [i64; 3];

pub fn add(a: V3, b: V3) -> V3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn scale(k: i64, a: V3) -> V3 {
    [k * a[0], k * a[1], k * a[2]]
}

pub fn neg(a: V3) -> V3 {
    scale(-1, a)
}

pub fn cross(a: V3, b: V3) -> V3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn dot(a: V3, b: V3) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn unit(i: usize) -> V3 {
    let mut v = [0; 3];
    v[i] = 1;
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Axis {
        Axis::ALL[i]
    }

    /// Axis of a signed unit vector.
    pub fn of_unit(v: V3) -> Option<Axis> {
        let nz: Vec<usize> = (0..3).filter(|&i| v[i] != 0).collect();
        match nz.as_slice() {
            [i] if v[*i].abs() == 1 => Some(Axis::from_index(*i)),
            _ => None,
        }
    }

    /// The two other axes, in cyclic order.
    pub fn others(self) -> (usize, usize) {
        let a = self.index();
        ((a + 1) % 3, (a + 2) % 3)
    }
}

/// A unit square face of M, identified by its doubled center and normal axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Face {
    pub center2x: V3,
    pub axis: Axis,
}

impl Face {
    pub fn new(center2x: V3, axis: Axis) -> Option<Face> {
        is_face_of_m(center2x, axis).then_some(Face { center2x, axis })
    }

    /// The four corners, doubled.
    pub fn corners(&self) -> [V3; 4] {
        let (b, c) = self.axis.others();
        let eb = unit(b);
        let ec = unit(c);
        let m = self.center2x;
        [
            sub(sub(m, eb), ec),
            sub(add(m, eb), ec),
            add(add(m, eb), ec),
            add(sub(m, eb), ec),
        ]
    }

    /// The face translated by `2t` in real coordinates.
    pub fn translated(&self, t: V3) -> Face {
        Face {
            center2x: add(self.center2x, scale(4, t)),
            axis: self.axis,
        }
    }

    /// Reduction into the fundamental box `[-1,1)^3`, returning the translation `t`
    /// with `self = reduced + 2t`.
    pub fn reduce(&self) -> (Face, V3) {
        let mut t = [0; 3];
        let mut c = self.center2x;
        for i in 0..3 {
            // real coordinate c/2 in [-1,1)  <=>  c in [-2,2)
            t[i] = (c[i] + 2).div_euclid(4);
            c[i] -= 4 * t[i];
        }
        (
            Face {
                center2x: c,
                axis: self.axis,
            },
            t,
        )
    }
}

/// Closed-form face test: the normal coordinate is a half-integer and the other two
/// are integers of opposite parity.
pub fn is_face_of_m(center2x: V3, axis: Axis) -> bool {
    let a = axis.index();
    let (b, c) = axis.others();
    center2x[a].rem_euclid(2) == 1
        && center2x[b].rem_euclid(2) == 0
        && center2x[c].rem_euclid(2) == 0
        && (center2x[b] / 2 - center2x[c] / 2).rem_euclid(2) == 1
}

fn half_open_range(lo: i64, hi: i64) -> std::ops::Range<i64> {
    2 * lo..2 * hi
}

/// Faces whose centers lie in the half-open box `[lo, hi)`.
pub fn faces_in_box(lo: V3, hi: V3) -> Vec<Face> {
    let mut out = Vec::new();
    for x in half_open_range(lo[0], hi[0]) {
        for y in half_open_range(lo[1], hi[1]) {
            for z in half_open_range(lo[2], hi[2]) {
                for axis in Axis::ALL {
                    if is_face_of_m([x, y, z], axis) {
                        out.push(Face {
                            center2x: [x, y, z],
                            axis,
                        });
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// All faces having `corner2x` as a corner.
pub fn incident_faces(corner2x: V3) -> Vec<Face> {
    let mut out = Vec::new();
    for axis in Axis::ALL {
        let (b, c) = axis.others();
        for sb in [-1, 1] {
            for sc in [-1, 1] {
                let mut m = corner2x;
                m[b] += sb;
                m[c] += sc;
                if is_face_of_m(m, axis) {
                    out.push(Face { center2x: m, axis });
                }
            }
        }
    }
    out.sort();
    out
}

/// Corners in the half-open box `[lo, hi)` at which exactly six faces meet, doubled.
pub fn cone_points_in_box(lo: V3, hi: V3) -> Vec<V3> {
    let mut out = Vec::new();
    for x in half_open_range(lo[0], hi[0]) {
        for y in half_open_range(lo[1], hi[1]) {
            for z in half_open_range(lo[2], hi[2]) {
                let p = [x, y, z];
                if incident_faces(p).len() == 6 {
                    out.push(p);
                }
            }
        }
    }
    out
}
