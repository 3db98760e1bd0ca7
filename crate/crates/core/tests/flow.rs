use num_integer::Integer;

use mucube::classify::{model, quarter_turn_witness, trace_x};
use mucube::flow::{cylinder_decomposition, trace_surface, SurfacePoint};
use mucube::mucube3d::{canonical_start, drift_vector, faces_in_box, trace3d, Point3, SEED_FACE};
use mucube::surface::Side;
use mucube::{Exact, Rational, SmallRational};

fn primitive(n: i64) -> impl Iterator<Item = (i64, i64)> {
    (-n..=n)
        .flat_map(move |p| (-n..=n).map(move |q| (p, q)))
        .filter(|&(p, q)| p.gcd(&q) == 1)
}

#[test]
fn center_traces_on_x() {
    let m = model();
    let t = trace_surface::<Rational>(&m.x, &SurfacePoint::center(m.seed), 1, 0, 100).unwrap();
    assert!(t.closed());
    assert_eq!(t.displacement, [0, 0, 0]);
    let t = trace_surface::<Rational>(&m.x, &SurfacePoint::center(m.seed), 1, 2, 100).unwrap();
    assert!(t.closed());
    assert_ne!(t.displacement, [0, 0, 0]);
    assert_eq!(t.displacement, drift_vector(1, 2).unwrap());
}

#[test]
fn decompositions_fill_the_surface() {
    let m = model();
    for (p, q) in primitive(25) {
        for s in [&m.x, &m.y] {
            let d = cylinder_decomposition::<SmallRational>(s, p, q).unwrap();
            assert_eq!(
                d.total_area(),
                SmallRational::from_int(s.area() as i64),
                "({p}, {q})"
            );
            assert!(d
                .cylinders
                .iter()
                .all(|c| c.width_num > SmallRational::from_int(0)));
        }
    }
}

#[test]
fn periodic_cylinders_on_x_are_isometric() {
    for (p, q) in primitive(25) {
        if drift_vector(p, q).is_ok() {
            continue;
        }
        let d = cylinder_decomposition::<SmallRational>(&model().x, p, q).unwrap();
        let c0 = &d.cylinders[0];
        assert_eq!(d.cylinders.len(), 3, "({p}, {q})");
        for c in &d.cylinders {
            assert_eq!(
                (c.multiplier, &c.width_num),
                (c0.multiplier, &c0.width_num),
                "({p}, {q})"
            );
            assert_eq!(c.multiplier, 4);
        }
    }
}

#[test]
fn spot_decompositions() {
    let m = model();
    let x52 = cylinder_decomposition::<Rational>(&m.x, 5, 2).unwrap();
    assert_eq!(x52.cylinders.len(), 3);
    assert!(x52
        .cylinders
        .iter()
        .all(|c| c.area == Rational::from_int(4)));
    let y41 = cylinder_decomposition::<Rational>(&m.y, 4, 1).unwrap();
    assert_eq!(y41.cylinders.len(), 1);
    assert_eq!(y41.cylinders[0].area, Rational::from_int(4));
}

#[test]
fn cores_lie_in_their_own_cylinders() {
    let m = model();
    for (p, q) in [(1, 0), (0, 1), (5, 2), (18, 13), (3, 1), (2, 7)] {
        for s in [&m.x, &m.y] {
            let d = cylinder_decomposition::<Rational>(s, p, q).unwrap();
            for (i, c) in d.cylinders.iter().enumerate() {
                assert_eq!(d.cylinder_containing(&c.core).unwrap(), i, "({p}, {q})");
            }
        }
    }
}

#[test]
fn quarter_checks() {
    assert!(quarter_turn_witness(1, 0).unwrap().is_some());
    assert!(quarter_turn_witness(4, 1).unwrap().is_some());
    assert!(quarter_turn_witness(1, 2).unwrap().is_none());
}

/// Tracing on X agrees square by square with the unfolding in ℝ³ reduced mod (2ℤ)³.
#[test]
fn quotient_consistency() {
    let faces = faces_in_box([-1, -1, -1], [1, 1, 1]);
    for (p, q) in [
        (1, 0),
        (4, 1),
        (1, 2),
        (5, 2),
        (3, 1),
        (7, 3),
        (18, 13),
        (-2, 9),
    ] {
        let tx = trace_x::<Rational>(p, q).unwrap();
        let (a, b, d) = canonical_start(p, q);
        let start = Point3::new(SEED_FACE, Rational::ratio(a, d), Rational::ratio(b, d), 0);
        let t3 = trace3d(&start, p, q, &tx.time).unwrap();
        let from3: Vec<usize> = t3
            .segments
            .iter()
            .map(|s| {
                faces
                    .iter()
                    .position(|f| *f == s.chart.face().reduce().0)
                    .unwrap()
            })
            .collect();
        let fromx: Vec<usize> = tx.segments.iter().map(|s| s.square).collect();
        // the closing segment may be split in two on X
        let mut fx = fromx.clone();
        fx.dedup();
        let mut f3 = from3.clone();
        f3.dedup();
        assert_eq!(f3, fx, "({p}, {q})");
    }
}

fn det(a: [i64; 3], b: [i64; 3], c: [i64; 3]) -> i64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

fn lattice_index(vs: &[[i64; 3]]) -> i64 {
    let mut g = 0i64;
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            for k in j + 1..vs.len() {
                g = g.gcd(&det(vs[i], vs[j], vs[k]));
            }
        }
    }
    g
}

/// Cocycle weights of loops in the dual graph of X span ℤ³, so some closed curves carry
/// weights `e₁, e₂, e₃`: M is the full `(2ℤ)³` cover.
#[test]
fn loop_weights_span_the_deck_group() {
    let x = &model().x;
    let mut pot: Vec<Option<[i64; 3]>> = vec![None; x.n()];
    pot[0] = Some([0, 0, 0]);
    let mut queue = std::collections::VecDeque::from([0usize]);
    let mut cycles = Vec::new();
    while let Some(s) = queue.pop_front() {
        for side in Side::ALL {
            let g = x.gluing(s, side);
            let w = x.weight(s, side).unwrap();
            let here = pot[s].unwrap();
            let there = [here[0] + w[0], here[1] + w[1], here[2] + w[2]];
            match pot[g.square] {
                None => {
                    pot[g.square] = Some(there);
                    queue.push_back(g.square);
                }
                Some(t) => cycles.push([there[0] - t[0], there[1] - t[1], there[2] - t[2]]),
            }
        }
    }
    assert_eq!(lattice_index(&cycles), 1);
}

/// Closed orbits through the seed square see an index-2 sublattice.
#[test]
fn seed_orbit_displacements() {
    let vs: Vec<[i64; 3]> = primitive(4)
        .filter_map(|(p, q)| trace_x::<SmallRational>(p, q).ok())
        .map(|t| t.displacement)
        .collect();
    assert_eq!(lattice_index(&vs), 2);
}
