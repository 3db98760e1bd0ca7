//! Cylinder decomposition in a rational direction.
//!
//! Work happens in a frame where the direction is `(P, Q)` with `P >= |Q|`, `P > 0`
//! (rotating the squares a quarter turn when needed). The union of vertical edges is
//! cut into `P` equal atoms per edge; the flow permutes atoms, separatrices cut
//! between them, and cylinders are the classes of atoms joined by the flow or by
//! uncut boundaries.

use std::collections::HashMap;

use serde::Serialize;

use super::trace::{move_out, run, Moved, State, SurfacePoint};
use super::{advance, SurfaceOutcome};
use crate::error::{Error, Result};
use crate::scalar::Exact;
use crate::surface::{Corner, Side, Surface};

#[derive(Debug, Clone)]
pub struct Cylinder<T> {
    pub direction: (i64, i64),
    /// Circumference is `multiplier·√(p²+q²)`.
    pub multiplier: i64,
    /// Width is `width_num/√(p²+q²)`.
    pub width_num: T,
    pub area: T,
    /// A point on a closed leaf, with the velocity sign of the leaf through it.
    pub core: SurfacePoint<T>,
    pub core_sign: i64,
    /// Squares crossed by that leaf, in order.
    pub core_squares: Vec<usize>,
    /// Signed `gamma0` crossings of the leaf (zero without a marked curve).
    pub gamma0: i64,
    /// Cocycle displacement of the leaf (zero without a cocycle).
    pub displacement: crate::mucube3d::V3,
}

#[derive(Debug, Clone)]
pub struct Decomposition<T> {
    pub direction: (i64, i64),
    pub cylinders: Vec<Cylinder<T>>,
    locator: Locator,
}

/// What is needed to say which cylinder a point lies in.
#[derive(Debug, Clone)]
enum Locator {
    Rows {
        cylinder_of_square: Vec<usize>,
    },
    Atoms {
        work: Surface,
        of_side: HashMap<(usize, Side), (usize, bool)>,
        cylinder_of_atom: Vec<usize>,
    },
}

impl<T: Exact> Decomposition<T> {
    pub fn total_area(&self) -> T {
        self.cylinders
            .iter()
            .fold(T::zero(), |a, c| a + c.area.clone())
    }

    /// Index of the cylinder whose interior contains `pt`; an error when `pt` lies on a
    /// saddle connection.
    pub fn cylinder_containing(&self, pt: &SurfacePoint<T>) -> Result<usize> {
        let (p, q) = self.direction;
        let frame = Frame::new(p, q);
        let pt = frame.point_forward(pt.clone());
        match &self.locator {
            Locator::Rows { cylinder_of_square } => Ok(cylinder_of_square[pt.square]),
            Locator::Atoms {
                work,
                of_side,
                cylinder_of_atom,
            } => {
                let pu = frame.pp as usize;
                let mut st = State {
                    square: pt.square,
                    x: pt.x,
                    y: pt.y,
                    sign: 1,
                };
                for _ in 0..=work.n() * 2 * (pu + frame.qq.unsigned_abs() as usize) {
                    match move_out(work, &st, frame.pp, frame.qq) {
                        Moved::Cone { .. } => break,
                        Moved::Crossed {
                            end, next, sides, ..
                        } => {
                            if sides.len() > 1 {
                                break;
                            }
                            let (sq, side) = sides[0];
                            if side.is_vertical() {
                                let a = atom_index(of_side, pu, sq, side, &end.1)?;
                                return Ok(cylinder_of_atom[a]);
                            }
                            st = next;
                        }
                    }
                }
                Err(Error::Inconsistent(
                    "point lies on a saddle connection".into(),
                ))
            }
        }
    }

    pub fn report(&self) -> DecompositionReport {
        DecompositionReport {
            direction: self.direction,
            cylinders: self
                .cylinders
                .iter()
                .map(|c| CylinderReport {
                    circumference_multiplier: c.multiplier,
                    width_times_norm: c.width_num.to_ratio_string(),
                    area: c.area.to_ratio_string(),
                    core_squares: c.core_squares.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CylinderReport {
    pub circumference_multiplier: i64,
    /// Width multiplied by `√(p²+q²)`.
    pub width_times_norm: String,
    pub area: String,
    pub core_squares: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub direction: (i64, i64),
    pub cylinders: Vec<CylinderReport>,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu((0..n).collect())
    }
    fn find(&mut self, a: usize) -> usize {
        let mut r = a;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut a = a;
        while self.0[a] != r {
            let next = self.0[a];
            self.0[a] = r;
            a = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Vertical edges with a canonical side and the parameter flip from each side to it.
struct Edges {
    of_side: HashMap<(usize, Side), (usize, bool)>,
    canon: Vec<(usize, Side)>,
}

impl Edges {
    fn new(s: &Surface) -> Edges {
        let mut of_side = HashMap::new();
        let mut canon = Vec::new();
        for sq in 0..s.n() {
            for side in [Side::Left, Side::Right] {
                if of_side.contains_key(&(sq, side)) {
                    continue;
                }
                let g = s.gluing(sq, side);
                let e = canon.len();
                canon.push((sq, side));
                of_side.insert((sq, side), (e, false));
                of_side.insert((g.square, g.side), (e, g.flip));
            }
        }
        Edges { of_side, canon }
    }
}

/// Working frame: direction `(pp, qq)` on the surface, rotated a quarter turn when
/// `rotated`, with `eps` the sign change from the original direction.
struct Frame {
    pp: i64,
    qq: i64,
    rotated: bool,
    eps: i64,
}

impl Frame {
    fn new(p: i64, q: i64) -> Frame {
        let rotated = q.abs() > p.abs();
        let (a, b) = if rotated { (-q, p) } else { (p, q) };
        let eps = if a < 0 { -1 } else { 1 };
        Frame {
            pp: a * eps,
            qq: b * eps,
            rotated,
            eps,
        }
    }

    fn point_forward<T: Exact>(&self, pt: SurfacePoint<T>) -> SurfacePoint<T> {
        if self.rotated {
            SurfacePoint::new(pt.square, T::one() - pt.y, pt.x)
        } else {
            pt
        }
    }

    fn point_back<T: Exact>(&self, pt: SurfacePoint<T>) -> SurfacePoint<T> {
        if self.rotated {
            SurfacePoint::new(pt.square, pt.y, T::one() - pt.x)
        } else {
            pt
        }
    }
}

/// Decomposes `s` into maximal cylinders in direction `(p, q)`.
pub fn cylinder_decomposition<T: Exact>(s: &Surface, p: i64, q: i64) -> Result<Decomposition<T>> {
    crate::mucube3d::check_primitive(p, q)?;
    let frame = Frame::new(p, q);
    let rotated;
    let w: &Surface = if frame.rotated {
        rotated = s.rotated_ccw();
        &rotated
    } else {
        s
    };
    let (raw, locator) = if frame.qq == 0 {
        horizontal_rows::<T>(w)?
    } else {
        generic::<T>(w, frame.pp, frame.qq)?
    };
    let mut cylinders = Vec::with_capacity(raw.len());
    for r in raw {
        let core = frame.point_back(r.core);
        let sign = r.sign * frame.eps;
        let budget =
            (r.multiplier as usize + 1) * (p.unsigned_abs() + q.unsigned_abs()) as usize + 8;
        let leaf = run(s, &core, sign, p, q, budget);
        if leaf.outcome != SurfaceOutcome::Closed || leaf.time != T::from_int(r.multiplier) {
            return Err(Error::Inconsistent(format!(
                "core leaf of a cylinder in ({p}, {q}) does not close after {} periods",
                r.multiplier
            )));
        }
        cylinders.push(Cylinder {
            direction: (p, q),
            multiplier: r.multiplier,
            width_num: r.area.clone() / T::from_int(r.multiplier),
            area: r.area,
            core,
            core_sign: sign,
            core_squares: leaf.squares(),
            gamma0: leaf.gamma0,
            displacement: leaf.displacement,
        });
    }
    let d = Decomposition {
        direction: (p, q),
        cylinders,
        locator,
    };
    if d.total_area() != T::from_int(s.n() as i64) {
        return Err(Error::Inconsistent(format!(
            "cylinder areas in ({p}, {q}) do not sum to the area"
        )));
    }
    Ok(d)
}

struct RawCylinder<T> {
    multiplier: i64,
    area: T,
    core: SurfacePoint<T>,
    sign: i64,
}

fn atom_index<T: Exact>(
    of_side: &HashMap<(usize, Side), (usize, bool)>,
    pu: usize,
    sq: usize,
    side: Side,
    y: &T,
) -> Result<usize> {
    let (e, rev) = of_side[&(sq, side)];
    let scaled = y.clone() * T::from_int(pu as i64);
    if scaled.is_integer_value() {
        return Err(Error::Inconsistent("atom point landed on the grid".into()));
    }
    let j = scaled.floor_i64() as usize;
    Ok(e * pu + if rev { pu - 1 - j } else { j })
}

fn horizontal_rows<T: Exact>(s: &Surface) -> Result<(Vec<RawCylinder<T>>, Locator)> {
    let n = s.n();
    let mut row_of = vec![usize::MAX; n];
    let mut rows: Vec<Vec<(usize, i8)>> = Vec::new();
    for start in 0..n {
        if row_of[start] != usize::MAX {
            continue;
        }
        let mut row = Vec::new();
        let (mut sq, mut dir) = (start, 1i8);
        loop {
            row_of[sq] = rows.len();
            row.push((sq, dir));
            let g = s.gluing(sq, if dir > 0 { Side::Right } else { Side::Left });
            if g.flip {
                dir = -dir;
            }
            sq = g.square;
            if (sq, dir) == (start, 1) {
                break;
            }
        }
        rows.push(row);
    }
    let mut dsu = Dsu::new(rows.len());
    for (r, row) in rows.iter().enumerate() {
        for top in [true, false] {
            let sides: Vec<(usize, Side)> = row
                .iter()
                .map(|&(sq, o)| {
                    (
                        sq,
                        if (o > 0) == top {
                            Side::Top
                        } else {
                            Side::Bottom
                        },
                    )
                })
                .collect();
            let regular = sides.iter().all(|&(sq, side)| {
                let cs = match side {
                    Side::Top => [Corner::TL, Corner::TR],
                    _ => [Corner::BL, Corner::BR],
                };
                cs.iter().all(|&c| s.vertex_size(sq, c) == 4)
            });
            if regular {
                for (sq, side) in sides {
                    dsu.union(r, row_of[s.gluing(sq, side).square]);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut gid = HashMap::new();
    for r in 0..rows.len() {
        let root = dsu.find(r);
        let k = *gid.entry(root).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[k].push(r);
    }
    let mut cylinder_of_square = vec![0; n];
    for (k, g) in groups.iter().enumerate() {
        for &r in g {
            for &(sq, _) in &rows[r] {
                cylinder_of_square[sq] = k;
            }
        }
    }
    let raw = groups
        .into_iter()
        .map(|g| {
            let len = rows[g[0]].len();
            if g.iter().any(|&r| rows[r].len() != len) {
                return Err(Error::Inconsistent(
                    "rows of one horizontal cylinder differ in length".into(),
                ));
            }
            let (sq, o) = rows[g[0]][0];
            Ok(RawCylinder {
                multiplier: len as i64,
                area: T::from_int((len * g.len()) as i64),
                core: SurfacePoint::center(sq),
                sign: o as i64,
            })
        })
        .collect::<Result<_>>()?;
    Ok((raw, Locator::Rows { cylinder_of_square }))
}

fn generic<T: Exact>(s: &Surface, pp: i64, qq: i64) -> Result<(Vec<RawCylinder<T>>, Locator)> {
    let n = s.n();
    let edges = Edges::new(s);
    let ne = edges.canon.len();
    let pu = pp as usize;
    let atom_of = |sq: usize, side: Side, y: &T| atom_index(&edges.of_side, pu, sq, side, y);
    let mid = |j: usize| T::ratio(2 * j as i64 + 1, 2 * pp);
    let start_state = |sq: usize, side: Side, y: T| State {
        square: sq,
        x: if side == Side::Left {
            T::zero()
        } else {
            T::one()
        },
        y,
        sign: if side == Side::Left { 1 } else { -1 },
    };

    // oriented atom states: 2·atom + (0 entering the canonical square, 1 the other)
    let mut succ = vec![usize::MAX; 2 * ne * pu];
    let mut dsu = Dsu::new(ne * pu);
    for (e, &(sq, side)) in edges.canon.iter().enumerate() {
        let g = s.gluing(sq, side);
        for j in 0..pu {
            let y = mid(j);
            let y2 = g.map_param(&y);
            for (dir, st) in [
                (0, start_state(sq, side, y.clone())),
                (1, start_state(g.square, g.side, y2)),
            ] {
                let mut st = st;
                let (atom, next_dir) = loop {
                    match move_out(s, &st, pp, qq) {
                        Moved::Cone { .. } => {
                            return Err(Error::Inconsistent("atom leaf met a cone point".into()))
                        }
                        Moved::Crossed {
                            end, next, sides, ..
                        } => {
                            let (from_sq, hit) = sides[0];
                            if sides.len() > 1 {
                                return Err(Error::Inconsistent("atom leaf met a vertex".into()));
                            }
                            if hit.is_vertical() {
                                let a = atom_of(from_sq, hit, &end.1)?;
                                let canon = edges.canon[a / pu];
                                let nd = if canon == (next.square, s.gluing(from_sq, hit).side) {
                                    0
                                } else {
                                    1
                                };
                                break (a, nd);
                            }
                            st = next;
                        }
                    }
                };
                succ[2 * (e * pu + j) + dir] = 2 * atom + next_dir;
                dsu.union(e * pu + j, atom);
            }
        }
    }

    // separatrices from singular vertices cut the edges at grid points
    let mut cut = vec![false; ne * (pu + 1)];
    let mut on_chain = vec![[false; 4]; n];
    let budget = 4 * n * (pp + qq.abs()) as usize;
    for sq in 0..n {
        for c in Corner::ALL {
            if s.vertex_size(sq, c) == 4 {
                continue;
            }
            let (ix, iy) = c.inward();
            for sign in [1, -1] {
                if (sign * pp).signum() != ix || (sign * qq).signum() != iy {
                    continue;
                }
                let (cx, cy) = c.coords();
                let mut st = State {
                    square: sq,
                    x: T::from_int(cx),
                    y: T::from_int(cy),
                    sign,
                };
                let mut steps = 0;
                loop {
                    match move_out(s, &st, pp, qq) {
                        Moved::Cone { .. } => break,
                        Moved::Crossed {
                            end, next, sides, ..
                        } => {
                            steps += sides.len();
                            if steps > budget {
                                return Err(Error::Inconsistent(format!(
                                    "separatrix in ({pp}, {qq}) exceeded {budget} crossings"
                                )));
                            }
                            if sides.len() == 2 {
                                let corner = corner_at(&end.0, &end.1);
                                on_chain[sides[0].0][corner.index()] = true;
                            } else if sides[0].1.is_vertical() {
                                let (e, rev) = edges.of_side[&sides[0]];
                                let k = (end.1.clone() * T::from_int(pp)).floor_i64();
                                let k = if rev { pp - k } else { k } as usize;
                                cut[e * (pu + 1) + k] = true;
                            }
                            st = next;
                        }
                    }
                }
            }
        }
    }
    for e in 0..ne {
        for k in 1..pu {
            if !cut[e * (pu + 1) + k] {
                dsu.union(e * pu + k - 1, e * pu + k);
            }
        }
    }
    // regular vertices off the saddle connections are interior to one cylinder
    for v in s.vertices() {
        if !v.is_regular() || v.sectors.iter().any(|&(sq, c)| on_chain[sq][c.index()]) {
            continue;
        }
        let atoms: Vec<usize> = v
            .sectors
            .iter()
            .map(|&(sq, c)| {
                let side = if matches!(c, Corner::BL | Corner::TL) {
                    Side::Left
                } else {
                    Side::Right
                };
                let j = if matches!(c, Corner::BL | Corner::BR) {
                    0
                } else {
                    pu - 1
                };
                atom_of(sq, side, &mid(j))
            })
            .collect::<Result<_>>()?;
        for a in &atoms[1..] {
            dsu.union(atoms[0], *a);
        }
    }

    // cycle length of every oriented state
    let mut cycle_len = vec![0usize; succ.len()];
    for a in 0..succ.len() {
        if cycle_len[a] != 0 {
            continue;
        }
        let mut cyc = vec![a];
        let mut b = succ[a];
        while b != a {
            cyc.push(b);
            b = succ[b];
        }
        for &c in &cyc {
            cycle_len[c] = cyc.len();
        }
    }

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut gid = HashMap::new();
    for a in 0..ne * pu {
        let root = dsu.find(a);
        let k = *gid.entry(root).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[k].push(a);
    }
    let mut cylinder_of_atom = vec![0; ne * pu];
    for (k, g) in groups.iter().enumerate() {
        for &a in g {
            cylinder_of_atom[a] = k;
        }
    }
    let raw = groups
        .into_iter()
        .map(|g| {
            let len = cycle_len[2 * g[0]];
            if g.iter()
                .any(|&a| cycle_len[2 * a] != len || cycle_len[2 * a + 1] != len)
            {
                return Err(Error::Inconsistent(
                    "leaves of one cylinder differ in length".into(),
                ));
            }
            if len % pu != 0 {
                return Err(Error::Inconsistent(
                    "closed leaf with non-integral period".into(),
                ));
            }
            let a = g[0];
            let (sq, side) = edges.canon[a / pu];
            let st = start_state(sq, side, mid(a % pu));
            let from = SurfacePoint::new(st.square, st.x, st.y);
            let (core, sign) = advance(s, &from, st.sign, pp, qq, &T::ratio(1, 3 * pp))
                .ok_or_else(|| Error::Inconsistent("core point met a cone point".into()))?;
            Ok(RawCylinder {
                multiplier: (len / pu) as i64,
                area: T::ratio(g.len() as i64, pp),
                core,
                sign,
            })
        })
        .collect::<Result<_>>()?;
    let locator = Locator::Atoms {
        work: s.clone(),
        of_side: edges.of_side,
        cylinder_of_atom,
    };
    Ok((raw, locator))
}

fn corner_at<T: Exact>(x: &T, y: &T) -> Corner {
    match (x.is_zero(), y.is_zero()) {
        (true, true) => Corner::BL,
        (false, true) => Corner::BR,
        (false, false) => Corner::TR,
        (true, false) => Corner::TL,
    }
}
