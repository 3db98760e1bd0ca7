//! Finite square-tiled half-translation surfaces.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::square::{Corner, Side};
use crate::error::{Error, Result};
use crate::mucube3d::{Chart, V3};

/// Target of a side: the glued side, and whether the gluing is a half turn.
///
/// A translation glues `side` to `side.opposite()` preserving the edge parameter; a
/// half turn glues it to the same side of the target with the parameter reversed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gluing {
    pub square: usize,
    pub side: Side,
    pub flip: bool,
}

impl Gluing {
    pub fn map_param<T: crate::Exact>(&self, t: &T) -> T {
        if self.flip {
            T::one() - t.clone()
        } else {
            t.clone()
        }
    }
}

/// A closed horizontal curve at height 1/2, oriented square by square.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedCurve {
    pub name: String,
    /// `orientation[s]` is ±1 when the curve runs through square `s` in the `±x`
    /// direction, 0 when it misses the square.
    pub orientation: Vec<i8>,
}

/// Image of a square under a surface automorphism: target square and whether the
/// square's chart is carried to the target chart rotated by a half turn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareMap {
    pub square: usize,
    pub half_turn: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Surface {
    pub name: String,
    pub glue: Vec<[Gluing; 4]>,
    /// ℤ³ weight of each directed side (crossing out of the square through it).
    pub cocycle: Option<Vec<[V3; 4]>>,
    pub marked: Vec<MarkedCurve>,
    /// Developed chart of each square's representative face in ℝ³.
    pub embedding: Option<Vec<Chart>>,
    /// The order-3 coordinate-cycling automorphism.
    pub symmetry: Option<Vec<SquareMap>>,
}

/// Equivalence classes of square corners, with their sectors in counterclockwise order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub sectors: Vec<(usize, Corner)>,
}

impl Vertex {
    /// Cone angle in units of π.
    pub fn angle_pi(&self) -> usize {
        self.sectors.len() / 2
    }

    /// Total-angle parity: sector counts are integral multiples of π/2.
    pub fn is_regular(&self) -> bool {
        self.sectors.len() == 4
    }
}

impl Surface {
    pub fn new(name: &str, glue: Vec<[Gluing; 4]>) -> Surface {
        Surface {
            name: name.to_string(),
            glue,
            cocycle: None,
            marked: Vec::new(),
            embedding: None,
            symmetry: None,
        }
    }

    pub fn n(&self) -> usize {
        self.glue.len()
    }

    pub fn area(&self) -> usize {
        self.n()
    }

    pub fn gluing(&self, square: usize, side: Side) -> Gluing {
        self.glue[square][side.index()]
    }

    pub fn has_flips(&self) -> bool {
        self.glue.iter().flatten().any(|g| g.flip)
    }

    pub fn weight(&self, square: usize, side: Side) -> Option<V3> {
        self.cocycle.as_ref().map(|c| c[square][side.index()])
    }

    pub fn marked_curve(&self, name: &str) -> Option<&MarkedCurve> {
        self.marked.iter().find(|m| m.name == name)
    }

    /// Checks that gluings form an involution of the allowed shape.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        for s in 0..n {
            for side in Side::ALL {
                let g = self.gluing(s, side);
                if g.square >= n {
                    return Err(Error::Inconsistent(format!(
                        "{}: side ({s},{side:?}) out of range",
                        self.name
                    )));
                }
                let expected = if g.flip { side } else { side.opposite() };
                if g.side != expected {
                    return Err(Error::Inconsistent(format!(
                        "{}: side ({s},{side:?}) glued to {:?}, not a half-translation gluing",
                        self.name, g
                    )));
                }
                if (g.square, g.side) == (s, side) {
                    return Err(Error::Inconsistent(format!(
                        "{}: side ({s},{side:?}) glued to itself",
                        self.name
                    )));
                }
                let back = self.gluing(g.square, g.side);
                if back
                    != (Gluing {
                        square: s,
                        side,
                        flip: g.flip,
                    })
                {
                    return Err(Error::Inconsistent(format!(
                        "{}: gluing of ({s},{side:?}) is not an involution",
                        self.name
                    )));
                }
                if let Some(w) = self.weight(s, side) {
                    let wb = self.weight(g.square, g.side).unwrap();
                    if (0..3).any(|i| w[i] != -wb[i]) {
                        return Err(Error::Inconsistent(format!(
                            "{}: cocycle not antisymmetric on ({s},{side:?})",
                            self.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The sector counterclockwise after `(square, corner)`, and whether the step
    /// crossed a half-turn gluing.
    pub fn next_sector(&self, square: usize, corner: Corner) -> (usize, Corner, bool) {
        let side = corner.ccw_exit();
        let g = self.gluing(square, side);
        let t = corner.param_on_exit();
        let t2 = if g.flip { 1 - t } else { t };
        (g.square, g.side.corner_at(t2), g.flip)
    }

    /// Number of sectors at the vertex of `(square, corner)`.
    pub fn vertex_size(&self, square: usize, corner: Corner) -> usize {
        let (mut s, mut c, _) = self.next_sector(square, corner);
        let mut k = 1;
        while (s, c) != (square, corner) {
            (s, c) = {
                let (a, b, _) = self.next_sector(s, c);
                (a, b)
            };
            k += 1;
        }
        k
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let n = self.n();
        let mut seen = vec![[false; 4]; n];
        let mut out = Vec::new();
        for s in 0..n {
            for c in Corner::ALL {
                if seen[s][c.index()] {
                    continue;
                }
                let mut sectors = Vec::new();
                let (mut cs, mut cc) = (s, c);
                while !seen[cs][cc.index()] {
                    seen[cs][cc.index()] = true;
                    sectors.push((cs, cc));
                    let (ns, nc, _) = self.next_sector(cs, cc);
                    cs = ns;
                    cc = nc;
                }
                out.push(Vertex { sectors });
            }
        }
        out
    }

    /// Vertex index of every corner.
    pub fn vertex_index(&self) -> Vec<[usize; 4]> {
        let mut idx = vec![[usize::MAX; 4]; self.n()];
        for (i, v) in self.vertices().iter().enumerate() {
            for &(s, c) in &v.sectors {
                idx[s][c.index()] = i;
            }
        }
        idx
    }

    pub fn euler_characteristic(&self) -> i64 {
        // V - E + F with E = 2n, F = n
        self.vertices().len() as i64 - self.n() as i64
    }

    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic()) / 2
    }

    /// Cone angles (in units of π) of the vertices that are not regular, sorted.
    pub fn singularities(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .vertices()
            .iter()
            .filter(|v| !v.is_regular())
            .map(|v| v.angle_pi())
            .collect();
        v.sort();
        v
    }

    /// Checks cone angles and the Gauss–Bonnet count `Σ (k - 2) = 4g - 4`.
    pub fn validate_angles(&self) -> Result<()> {
        let vs = self.vertices();
        if vs.iter().any(|v| v.sectors.len() % 2 != 0) {
            return Err(Error::Inconsistent(format!(
                "{}: cone angle not a multiple of π",
                self.name
            )));
        }
        let total: i64 = vs.iter().map(|v| v.angle_pi() as i64 - 2).sum();
        if total != 4 * self.genus() - 4 {
            return Err(Error::Inconsistent(format!(
                "{}: Gauss-Bonnet count fails",
                self.name
            )));
        }
        Ok(())
    }

    /// Signed sums of cocycle weights around every vertex, which vanish for a cocycle.
    pub fn cocycle_vertex_sums(&self) -> Vec<V3> {
        let Some(_) = &self.cocycle else {
            return Vec::new();
        };
        self.vertices()
            .iter()
            .map(|v| {
                let mut acc = [0; 3];
                for &(s, c) in &v.sectors {
                    let w = self.weight(s, c.ccw_exit()).unwrap();
                    for i in 0..3 {
                        acc[i] += w[i];
                    }
                }
                acc
            })
            .collect()
    }

    /// The same surface with every square rotated a quarter turn counterclockwise, so
    /// that direction `(p, q)` becomes `(-q, p)`.
    pub fn rotated_ccw(&self) -> Surface {
        let mut glue = self.glue.clone();
        for (s, sides) in self.glue.iter().enumerate() {
            for side in Side::ALL {
                let g = sides[side.index()];
                glue[s][side.rotated_ccw().index()] = Gluing {
                    square: g.square,
                    side: g.side.rotated_ccw(),
                    flip: g.flip,
                };
            }
        }
        let cocycle = self.cocycle.as_ref().map(|c| {
            c.iter()
                .map(|w| {
                    let mut r = [[0; 3]; 4];
                    for side in Side::ALL {
                        r[side.rotated_ccw().index()] = w[side.index()];
                    }
                    r
                })
                .collect()
        });
        Surface {
            name: format!("{}-rot", self.name),
            glue,
            cocycle,
            marked: Vec::new(),
            embedding: None,
            symmetry: self.symmetry.clone(),
        }
    }

    /// Connected components of the square adjacency graph.
    pub fn components(&self) -> usize {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(a) = stack.pop() {
                for g in self.glue[a] {
                    if !seen[g.square] {
                        seen[g.square] = true;
                        stack.push(g.square);
                    }
                }
            }
        }
        count
    }

    /// Plain text table, one line per side: `square side target target_side flip [wx wy wz]`.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for (s, sides) in self.glue.iter().enumerate() {
            for side in Side::ALL {
                let g = sides[side.index()];
                let _ = write!(
                    out,
                    "{s} {:?} {} {:?} {}",
                    side, g.square, g.side, g.flip as u8
                );
                if let Some(w) = self.weight(s, side) {
                    let _ = write!(out, " {} {} {}", w[0], w[1], w[2]);
                }
                out.push('\n');
            }
        }
        out
    }

    pub fn from_table(name: &str, text: &str) -> Result<Surface> {
        let bad = |l: &str| Error::InvalidInput(format!("bad surface line: {l}"));
        let parse_side =
            |t: &str| -> Option<Side> { Side::ALL.into_iter().find(|s| format!("{s:?}") == t) };
        let mut rows: Vec<(usize, Side, Gluing, Option<V3>)> = Vec::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 5 && f.len() != 8 {
                return Err(bad(line));
            }
            let s: usize = f[0].parse().map_err(|_| bad(line))?;
            let side = parse_side(f[1]).ok_or_else(|| bad(line))?;
            let square: usize = f[2].parse().map_err(|_| bad(line))?;
            let tside = parse_side(f[3]).ok_or_else(|| bad(line))?;
            let flip = f[4] == "1";
            let w = if f.len() == 8 {
                let mut w = [0; 3];
                for i in 0..3 {
                    w[i] = f[5 + i].parse().map_err(|_| bad(line))?;
                }
                Some(w)
            } else {
                None
            };
            rows.push((
                s,
                side,
                Gluing {
                    square,
                    side: tside,
                    flip,
                },
                w,
            ));
        }
        let n = rows.iter().map(|r| r.0 + 1).max().unwrap_or(0);
        let mut glue = vec![
            [Gluing {
                square: 0,
                side: Side::Bottom,
                flip: false
            }; 4];
            n
        ];
        let with_w = rows.iter().all(|r| r.3.is_some()) && !rows.is_empty();
        let mut cocycle = vec![[[0; 3]; 4]; n];
        for (s, side, g, w) in rows {
            glue[s][side.index()] = g;
            if let Some(w) = w {
                cocycle[s][side.index()] = w;
            }
        }
        let mut surf = Surface::new(name, glue);
        if with_w {
            surf.cocycle = Some(cocycle);
        }
        surf.validate()?;
        Ok(surf)
    }
}
