//! X and Y developed from the 3D model, and translation covers.

use std::collections::{HashMap, VecDeque};

use super::square::Side;
use super::surface::{Gluing, MarkedCurve, SquareMap, Surface};
use crate::error::{Error, Result};
use crate::mucube3d::{
    faces_in_box, seed_chart, sub, Chart, Exit, Face, RigidMotion, Rotation, V3,
};

fn exit_of(side: Side) -> Exit {
    match side {
        Side::Bottom => Exit::V0,
        Side::Right => Exit::U1,
        Side::Top => Exit::V1,
        Side::Left => Exit::U0,
    }
}

fn translate_chart(c: &Chart, t: V3) -> Chart {
    c.apply_motion(&RigidMotion::translation(t))
}

/// Squares of X in the fundamental box, with a developed chart for each.
fn develop_charts() -> Result<(Vec<Face>, Vec<Chart>)> {
    let faces = faces_in_box([-1, -1, -1], [1, 1, 1]);
    let index: HashMap<Face, usize> = faces.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let seed = seed_chart();
    let (rep, t) = seed.face().reduce();
    let mut charts: Vec<Option<Chart>> = vec![None; faces.len()];
    charts[index[&rep]] = Some(translate_chart(&seed, sub([0, 0, 0], t)));
    let mut queue = VecDeque::from([index[&rep]]);
    while let Some(s) = queue.pop_front() {
        let c = charts[s].unwrap();
        for side in Side::ALL {
            let next = c.cross(exit_of(side))?;
            let (rep, t) = next.face().reduce();
            let j = index[&rep];
            if charts[j].is_none() {
                charts[j] = Some(translate_chart(&next, sub([0, 0, 0], t)));
                queue.push_back(j);
            }
        }
    }
    let charts = charts
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| {
            Error::Inconsistent("chart development did not reach every square".into())
        })?;
    Ok((faces, charts))
}

/// Where a developed chart lands among the stored ones: square, translation `t` with
/// `developed = stored + 2t` up to a half turn, and whether the half turn is needed.
fn locate(charts: &[Chart], index: &HashMap<Face, usize>, c: &Chart) -> Result<(usize, V3, bool)> {
    let (rep, t) = c.face().reduce();
    let j = *index.get(&rep).ok_or_else(|| {
        Error::Inconsistent(format!("face {:?} is not in the fundamental box", rep))
    })?;
    let back = translate_chart(c, sub([0, 0, 0], t));
    if back == charts[j] {
        Ok((j, t, false))
    } else if back == charts[j].half_turn() {
        Ok((j, t, true))
    } else {
        Err(Error::Inconsistent(format!(
            "developed chart {:?} is not a translate of square {j}'s chart up to a half turn",
            c
        )))
    }
}

/// `X = M/(2ℤ)³`: twelve squares, with the ℤ³ cocycle and the order-3 symmetry.
pub fn build_x() -> Result<Surface> {
    let (faces, charts) = develop_charts()?;
    let index: HashMap<Face, usize> = faces.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let n = faces.len();
    let mut glue = Vec::with_capacity(n);
    let mut cocycle = Vec::with_capacity(n);
    for c in &charts {
        let mut g = [Gluing {
            square: 0,
            side: Side::Bottom,
            flip: false,
        }; 4];
        let mut w = [[0; 3]; 4];
        for side in Side::ALL {
            let next = c.cross(exit_of(side))?;
            let (j, t, flip) = locate(&charts, &index, &next)?;
            g[side.index()] = Gluing {
                square: j,
                side: if flip { side } else { side.opposite() },
                flip,
            };
            w[side.index()] = t;
        }
        glue.push(g);
        cocycle.push(w);
    }
    let mut x = Surface::new("X", glue);
    x.cocycle = Some(cocycle);
    x.embedding = Some(charts.clone());
    let cycle = RigidMotion::rotation(Rotation::CYCLE);
    let symmetry = charts
        .iter()
        .map(|c| {
            locate(&charts, &index, &c.apply_motion(&cycle))
                .map(|(square, _, half_turn)| SquareMap { square, half_turn })
        })
        .collect::<Result<Vec<_>>>()?;
    x.symmetry = Some(symmetry);
    x.validate()?;
    check_symmetry(&x)?;
    check_shape(&x, 12, 3, &[3; 8])?;
    let gamma = horizontal_curve(&x, 0);
    x.marked.push(MarkedCurve {
        name: "gamma0".into(),
        orientation: gamma,
    });
    Ok(x)
}

/// Checks that the square map commutes with all gluings.
fn check_symmetry(s: &Surface) -> Result<()> {
    let Some(sym) = &s.symmetry else {
        return Ok(());
    };
    for (a, m) in sym.iter().enumerate() {
        for side in Side::ALL {
            let g = s.gluing(a, side);
            // side of the image square that `side` lands on
            let img_side = if m.half_turn { side.opposite() } else { side };
            let h = s.gluing(m.square, img_side);
            let mb = sym[g.square];
            let expect_side = if mb.half_turn {
                g.side.opposite()
            } else {
                g.side
            };
            let expect_flip = g.flip ^ m.half_turn ^ mb.half_turn;
            if h.square != mb.square || h.side != expect_side || h.flip != expect_flip {
                return Err(Error::Inconsistent(format!(
                    "{}: symmetry does not respect the gluing of ({a},{side:?})",
                    s.name
                )));
            }
        }
    }
    Ok(())
}

fn check_shape(s: &Surface, n: usize, genus: i64, sing: &[usize]) -> Result<()> {
    s.validate_angles()?;
    if s.n() != n || s.genus() != genus || s.singularities() != sing {
        return Err(Error::Inconsistent(format!(
            "{}: expected {n} squares, genus {genus}, singularities {:?}; found {}, {}, {:?}",
            s.name,
            sing,
            s.n(),
            s.genus(),
            s.singularities()
        )));
    }
    Ok(())
}

/// Orientation of the horizontal closed curve at height 1/2 through `start`, running in
/// `+x` there; zero on squares it misses.
pub fn horizontal_curve(s: &Surface, start: usize) -> Vec<i8> {
    let mut o = vec![0i8; s.n()];
    let (mut sq, mut dir) = (start, 1i8);
    while o[sq] == 0 {
        o[sq] = dir;
        let g = s.gluing(sq, if dir > 0 { Side::Right } else { Side::Left });
        if g.flip {
            dir = -dir;
        }
        sq = g.square;
    }
    o
}

/// For each square of X: its image in Y and whether the quotient map turns it by a half turn.
pub type Projection = Vec<(usize, bool)>;

/// `Y = X/θ`, with `θ` the coordinate cycle; carries the marked curve `gamma0` and a
/// projection table `(square of Y, half turn)` for each square of X.
pub fn build_y(x: &Surface) -> Result<(Surface, Projection)> {
    let sym = x
        .symmetry
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("surface carries no symmetry".into()))?;
    let n = x.n();
    let mut proj: Vec<Option<(usize, bool)>> = vec![None; n];
    let mut reps = Vec::new();
    for s in 0..n {
        if proj[s].is_some() {
            continue;
        }
        let k = reps.len();
        reps.push(s);
        let (mut a, mut h) = (s, false);
        let mut len = 0;
        while proj[a].is_none() {
            proj[a] = Some((k, h));
            h ^= sym[a].half_turn;
            a = sym[a].square;
            len += 1;
        }
        if len != 3 || a != s || h {
            return Err(Error::Inconsistent(format!(
                "symmetry orbit of square {s} has length {len}, not 3"
            )));
        }
    }
    let proj: Projection = proj.into_iter().map(|p| p.unwrap()).collect();
    let glue = reps
        .iter()
        .map(|&r| {
            let mut g = [Gluing {
                square: 0,
                side: Side::Bottom,
                flip: false,
            }; 4];
            for side in Side::ALL {
                let t = x.gluing(r, side);
                let (k, h) = proj[t.square];
                g[side.index()] = Gluing {
                    square: k,
                    side: if h { t.side.opposite() } else { t.side },
                    flip: t.flip ^ h,
                };
            }
            g
        })
        .collect();
    let mut y = Surface::new("Y", glue);
    y.validate()?;
    check_shape(&y, 4, 1, &[1, 1, 3, 3])?;
    let gamma = horizontal_curve(&y, 0);
    if gamma.contains(&0) {
        return Err(Error::Inconsistent(
            "Y is not a single horizontal cylinder".into(),
        ));
    }
    y.marked.push(MarkedCurve {
        name: "gamma0".into(),
        orientation: gamma,
    });
    Ok((y, proj))
}

/// Pulls the orientation of a marked curve on Y back to X through the projection.
pub fn pull_back_curve(curve: &MarkedCurve, proj: &[(usize, bool)]) -> MarkedCurve {
    MarkedCurve {
        name: curve.name.clone(),
        orientation: proj
            .iter()
            .map(|&(k, h)| {
                if h {
                    -curve.orientation[k]
                } else {
                    curve.orientation[k]
                }
            })
            .collect(),
    }
}

/// Both surfaces, built once.
pub fn build_xy() -> Result<(Surface, Surface, Projection)> {
    let mut x = build_x()?;
    let (y, proj) = build_y(&x)?;
    // γ₀ on X is the full preimage of γ₀ on Y
    x.marked = vec![pull_back_curve(y.marked_curve("gamma0").unwrap(), &proj)];
    Ok((x, y, proj))
}

/// The double cover on which every half-turn gluing becomes a translation: square `i`
/// of copy `c` is `i + c·n`, and copy 1 is the `-Id` image of copy 0.
pub fn minimal_translation_cover(s: &Surface) -> Surface {
    let n = s.n();
    let mut glue = vec![
        [Gluing {
            square: 0,
            side: Side::Bottom,
            flip: false
        }; 4];
        2 * n
    ];
    for c in 0..2 {
        for i in 0..n {
            for side in Side::ALL {
                // copy 1 is rotated, so its `side` is the original's opposite side
                let orig = if c == 1 { side.opposite() } else { side };
                let g = s.gluing(i, orig);
                let c2 = c ^ g.flip as usize;
                let tside = if c2 == 1 { g.side.opposite() } else { g.side };
                glue[i + c * n][side.index()] = Gluing {
                    square: g.square + c2 * n,
                    side: tside,
                    flip: false,
                };
            }
        }
    }
    Surface::new(&format!("{}~", s.name), glue)
}
