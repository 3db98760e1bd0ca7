//! Rigid symmetries of M: `x -> rotation·x + 2t` with rotation in the octahedral group.

use serde::{Deserialize, Serialize};

use super::geometry::{add, cross, is_face_of_m, scale, sub, Axis, Face, V3};
use crate::error::{Error, Result};

/// Signed permutation matrix of determinant +1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rotation(pub [[i64; 3]; 3]);

impl Rotation {
    pub const IDENTITY: Rotation = Rotation([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);

    /// Quarter turn about the x axis.
    pub const QUARTER_X: Rotation = Rotation([[1, 0, 0], [0, 0, -1], [0, 1, 0]]);
    pub const QUARTER_Y: Rotation = Rotation([[0, 0, -1], [0, 1, 0], [1, 0, 0]]);
    pub const QUARTER_Z: Rotation = Rotation([[0, -1, 0], [1, 0, 0], [0, 0, 1]]);

    /// Order-3 coordinate cycle `(x, y, z) -> (z, x, y)`.
    pub const CYCLE: Rotation = Rotation([[0, 0, 1], [1, 0, 0], [0, 1, 0]]);

    /// The matrix sending the orthonormal frame `from` to `to` (columns).
    pub fn from_frames(from: [V3; 3], to: [V3; 3]) -> Rotation {
        let mut m = [[0; 3]; 3];
        for (f, t) in from.iter().zip(to.iter()) {
            for j in 0..3 {
                for k in 0..3 {
                    m[j][k] += t[j] * f[k];
                }
            }
        }
        Rotation(m)
    }

    pub fn apply(&self, v: V3) -> V3 {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        ]
    }

    pub fn compose(&self, other: &Rotation) -> Rotation {
        Rotation(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).map(|k| self.0[i][k] * other.0[k][j]).sum())
        }))
    }

    pub fn inverse(&self) -> Rotation {
        Rotation(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[j][i])
        }))
    }

    pub fn det(&self) -> i64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn is_signed_permutation(&self) -> bool {
        (0..3).all(|i| {
            let row = self.0[i];
            row.iter().filter(|&&x| x != 0).count() == 1 && row.iter().all(|x| x.abs() <= 1)
        }) && (0..3).all(|j| (0..3).filter(|&i| self.0[i][j] != 0).count() == 1)
    }

    pub fn order(&self) -> u32 {
        let mut r = *self;
        for n in 1..=4 {
            if r == Rotation::IDENTITY {
                return n;
            }
            r = r.compose(self);
        }
        unreachable!("rotation of order greater than 4")
    }

    pub fn power(&self, n: u32) -> Rotation {
        (0..n).fold(Rotation::IDENTITY, |acc, _| acc.compose(self))
    }

    /// The 24 orientation-preserving symmetries of the cube.
    pub fn all() -> Vec<Rotation> {
        let perms = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let mut out = Vec::new();
        for p in perms {
            for signs in 0..8 {
                let mut m = [[0; 3]; 3];
                for i in 0..3 {
                    m[i][p[i]] = if signs >> i & 1 == 1 { -1 } else { 1 };
                }
                let r = Rotation(m);
                if r.det() == 1 {
                    out.push(r);
                }
            }
        }
        out.sort();
        out
    }

    /// The six quarter turns about the coordinate axes.
    pub fn quarter_turns() -> [Rotation; 6] {
        [
            Rotation::QUARTER_X,
            Rotation::QUARTER_X.inverse(),
            Rotation::QUARTER_Y,
            Rotation::QUARTER_Y.inverse(),
            Rotation::QUARTER_Z,
            Rotation::QUARTER_Z.inverse(),
        ]
    }
}

/// `x -> rotation·x + 2·translation` on real coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RigidMotion {
    pub rotation: Rotation,
    pub translation: V3,
}

impl RigidMotion {
    pub const IDENTITY: RigidMotion = RigidMotion {
        rotation: Rotation::IDENTITY,
        translation: [0, 0, 0],
    };

    pub fn new(rotation: Rotation, translation: V3) -> RigidMotion {
        RigidMotion {
            rotation,
            translation,
        }
    }

    pub fn translation(t: V3) -> RigidMotion {
        RigidMotion::new(Rotation::IDENTITY, t)
    }

    pub fn rotation(r: Rotation) -> RigidMotion {
        RigidMotion::new(r, [0, 0, 0])
    }

    /// `self ∘ other`: `(t1, r1)(t2, r2) = (t1 + r1 t2, r1 r2)`.
    pub fn compose(&self, other: &RigidMotion) -> RigidMotion {
        RigidMotion {
            rotation: self.rotation.compose(&other.rotation),
            translation: add(self.translation, self.rotation.apply(other.translation)),
        }
    }

    pub fn inverse(&self) -> RigidMotion {
        let r = self.rotation.inverse();
        RigidMotion {
            rotation: r,
            translation: scale(-1, r.apply(self.translation)),
        }
    }

    pub fn power(&self, n: u32) -> RigidMotion {
        (0..n).fold(RigidMotion::IDENTITY, |acc, _| acc.compose(self))
    }

    /// Finite order, if any (always at most 4 in this group).
    pub fn order(&self) -> Option<u32> {
        let k = self.rotation.order();
        (self.power(k).translation == [0, 0, 0]).then_some(k)
    }

    /// Image of a doubled point.
    pub fn apply_point2x(&self, p: V3) -> V3 {
        add(self.rotation.apply(p), scale(4, self.translation))
    }

    /// Image of a direction vector (no translation).
    pub fn apply_vector(&self, v: V3) -> V3 {
        self.rotation.apply(v)
    }

    pub fn apply_face(&self, f: &Face) -> Result<Face> {
        let c = self.apply_point2x(f.center2x);
        let n = self.rotation.apply(super::geometry::unit(f.axis.index()));
        let axis = Axis::of_unit(n)
            .ok_or_else(|| Error::Inconsistent(format!("rotation {:?} is not monomial", self)))?;
        if !is_face_of_m(c, axis) {
            return Err(Error::Inconsistent(format!(
                "motion {:?} maps face {:?} outside M",
                self, f
            )));
        }
        Ok(Face { center2x: c, axis })
    }

    /// The motion sending the frame `(o, eu, ev)` onto `(o', eu', ev')`, when one exists
    /// with integral translation.
    pub fn between_frames(o: V3, eu: V3, ev: V3, o2: V3, eu2: V3, ev2: V3) -> Option<RigidMotion> {
        let r = Rotation::from_frames([eu, ev, cross(eu, ev)], [eu2, ev2, cross(eu2, ev2)]);
        let d = sub(o2, r.apply(o));
        if d.iter().any(|x| x.rem_euclid(4) != 0) {
            return None;
        }
        Some(RigidMotion::new(r, [d[0] / 4, d[1] / 4, d[2] / 4]))
    }

    /// Sum `(1 + θ + ... + θ^{k-1}) t` where `k` is the order of the rotation: the
    /// translation part of `self^k`.
    pub fn drift(&self) -> V3 {
        let k = self.rotation.order();
        self.power(k).translation
    }
}
