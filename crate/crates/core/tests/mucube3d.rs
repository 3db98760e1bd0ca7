use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use mucube::mucube3d::*;
use mucube::{Exact, Rational};

fn r(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

/// Closure of the checkerboard `C`: the cells adjacent to `t` (two of them when `t` is a
/// half-integer), as values of `floor(t − 1/2)`.
fn cells(t2: i64) -> Vec<i64> {
    // t = t2/4 with denominators up to 4; floor(t − 1/2) = floor((t2 − 2)/4)
    let f = (t2 - 2).div_euclid(4);
    if (t2 - 2).rem_euclid(4) == 0 {
        vec![f, f - 1]
    } else {
        vec![f]
    }
}

fn in_c(a: i64, b: i64) -> bool {
    cells(a)
        .iter()
        .any(|x| cells(b).iter().any(|y| (x - y).rem_euclid(2) == 1))
}

/// Point-set membership in M for a point with coordinates `x/4`.
fn in_m(x: [i64; 3]) -> bool {
    in_c(x[0], x[1]) && in_c(x[0], x[2]) && in_c(x[1], x[2])
}

/// Samples a 5×5 grid on the closed square with the given doubled center and normal.
fn sampled_face(center2x: V3, axis: Axis) -> bool {
    let (b, c) = axis.others();
    (0..5).all(|i| {
        (0..5).all(|j| {
            let mut x = [center2x[0] * 2, center2x[1] * 2, center2x[2] * 2];
            x[b] += i - 2;
            x[c] += j - 2;
            in_m(x)
        })
    })
}

#[test]
fn face_examples_match_point_sampling() {
    for (c, axis, expect) in [
        ([0, 2, 1], Axis::Z, true),
        ([0, 0, 1], Axis::Z, false),
        ([1, 0, 0], Axis::X, false),
    ] {
        assert_eq!(sampled_face(c, axis), expect);
        assert_eq!(is_face_of_m(c, axis), expect);
    }
}

#[test]
fn face_characterisation_matches_point_sampling_on_window() {
    for x in -10..=10 {
        for y in -10..=10 {
            for z in -10..=10 {
                for axis in [Axis::X, Axis::Y, Axis::Z] {
                    let c = [x, y, z];
                    assert_eq!(
                        is_face_of_m(c, axis),
                        sampled_face(c, axis),
                        "{c:?} {axis:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn box_counts() {
    assert_eq!(faces_in_box([-1, -1, -1], [1, 1, 1]).len(), 12);
    assert_eq!(faces_in_box([-1, -1, -1], [3, 1, 1]).len(), 24);
    assert!(faces_in_box([0, 0, 0], [0, 1, 1]).is_empty());
    let unit: Vec<Face> = faces_in_box([0, 0, 0], [1, 1, 1]);
    let expect: Vec<Face> = (0..2)
        .flat_map(|x| (0..2).flat_map(move |y| (0..2).map(move |z| [x, y, z])))
        .flat_map(|c| [Axis::X, Axis::Y, Axis::Z].map(|a| (c, a)))
        .filter(|&(c, a)| sampled_face(c, a))
        .map(|(c, a)| Face {
            center2x: c,
            axis: a,
        })
        .collect();
    let got: HashSet<Face> = unit.into_iter().collect();
    assert_eq!(got, expect.into_iter().collect());
}

#[test]
fn every_two_box_has_twelve_faces_and_eight_cone_points() {
    for ox in -2..2 {
        for oy in -2..2 {
            for oz in -2..2 {
                let (lo, hi) = ([ox, oy, oz], [ox + 2, oy + 2, oz + 2]);
                assert_eq!(faces_in_box(lo, hi).len(), 12);
                let cones = cone_points_in_box(lo, hi);
                assert_eq!(cones.len(), 8);
                for c in cones {
                    assert!(c.iter().all(|x| x.rem_euclid(2) == 1));
                    assert_eq!(incident_faces(c).len(), 6);
                }
            }
        }
    }
}

#[test]
fn cone_points_classes_in_fundamental_box() {
    let cones = cone_points_in_box([-1, -1, -1], [1, 1, 1]);
    let classes: HashSet<V3> = cones.iter().map(|c| c.map(|x| x.rem_euclid(4))).collect();
    assert_eq!(classes.len(), 8);
}

#[test]
fn motions_map_faces_to_faces() {
    let faces = faces_in_box([-2, -2, -2], [2, 2, 2]);
    let translations = [
        [0, 0, 0],
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [-1, 1, 0],
        [1, 1, 1],
    ];
    for rot in Rotation::all() {
        assert_eq!(rot.det(), 1);
        assert!(rot.is_signed_permutation());
        for t in translations {
            let g = RigidMotion::new(rot, t);
            for f in &faces {
                let img = g.apply_face(f).unwrap();
                assert!(is_face_of_m(img.center2x, img.axis));
            }
        }
    }
    assert_eq!(Rotation::all().len(), 24);
}

#[test]
fn quarter_turn_of_seed_face() {
    for rot in Rotation::quarter_turns() {
        let img = RigidMotion::rotation(rot).apply_face(&SEED_FACE).unwrap();
        assert!(is_face_of_m(img.center2x, img.axis));
    }
    let f = RigidMotion::translation([1, 0, 0])
        .apply_face(&SEED_FACE)
        .unwrap();
    assert_eq!(f.center2x, [4, 2, 1]);
}

fn motion() -> impl Strategy<Value = RigidMotion> {
    let rots = Rotation::all();
    (0..24usize, -3i64..=3, -3i64..=3, -3i64..=3)
        .prop_map(move |(i, a, b, c)| RigidMotion::new(rots[i], [a, b, c]))
}

proptest! {
    #[test]
    fn composition_is_semidirect(g in motion(), h in motion(), x in -5i64..5, y in -5i64..5, z in -5i64..5) {
        let gh = g.compose(&h);
        prop_assert_eq!(gh.rotation, g.rotation.compose(&h.rotation));
        prop_assert_eq!(gh.translation, add(g.translation, g.rotation.apply(h.translation)));
        let p = [x, y, z];
        prop_assert_eq!(gh.apply_point2x(p), g.apply_point2x(h.apply_point2x(p)));
        prop_assert_eq!(g.compose(&g.inverse()), RigidMotion::translation([0, 0, 0]));
    }

    #[test]
    fn torsion_orders_are_small(g in motion(), h in motion()) {
        // conjugates of rotations are the torsion elements
        let t = h.compose(&RigidMotion::rotation(g.rotation)).compose(&h.inverse());
        let k = t.order().expect("conjugate of a rotation has finite order");
        prop_assert!((1..=4).contains(&k));
        prop_assert_eq!(t.power(k), RigidMotion::translation([0, 0, 0]));
    }

    #[test]
    fn chart_round_trip(fi in 0usize..12, k in 0u8..4, a in 1i64..20, b in 1i64..20) {
        let f = faces_in_box([-1, -1, -1], [1, 1, 1])[fi];
        let pt = Point3::new(f, r(a, 21), r(b, 21), k);
        let x = pt.to_ambient();
        prop_assert_eq!(Point3::from_ambient(f, k, &x), Some(pt.clone()));
        for j in 0..4 {
            prop_assert_eq!(pt.with_chart(j).to_ambient(), x.clone());
        }
    }
}

fn center_trace(p: i64, q: i64, s: i64) -> Trajectory3D<Rational> {
    trace3d(&Point3::center(SEED_FACE), p, q, &Rational::from_int(s)).unwrap()
}

#[test]
fn horizontal_trace_closes_at_four() {
    for f in faces_in_box([-1, -1, -1], [1, 1, 1]) {
        let t = trace3d(&Point3::<Rational>::center(f), 1, 0, &Rational::from_int(5)).unwrap();
        assert!(t.closed);
        assert_eq!(t.arc_length.s, Rational::from_int(4));
        assert_eq!(t.arc_length.multiplier(), 4);
        assert_eq!(t.vertices.first(), t.vertices.last());
    }
}

#[test]
fn slope_quarter_trace_closes() {
    let t = center_trace(4, 1, 4);
    assert!(t.closed);
    assert_eq!(t.arc_length.norm_sq, 17);
    assert_eq!(t.center_visits().len(), 4);
}

#[test]
fn one_two_does_not_close() {
    let t = center_trace(1, 2, 4);
    assert!(!t.closed);
    assert_eq!(t.outcome, TraceOutcome::BoundReached);
    assert!(t.drift_vector.is_some_and(|v| v != [0, 0, 0]));
}

#[test]
fn segments_stay_in_coordinate_planes() {
    for (p, q) in [(3, 2), (1, 2), (5, 2), (4, 1)] {
        let t = center_trace(p, q, 4);
        for w in t.vertices.windows(2) {
            let zero = (0..3).filter(|&i| w[0][i] == w[1][i]).count();
            assert!(zero >= 1, "{w:?}");
        }
    }
}

/// Drift vector by direct search: the first integer time at which the orbit sits at the
/// start's chart position in a translated copy of the start chart.
fn revisit_vector(p: i64, q: i64) -> V3 {
    let (a, b, d) = canonical_start(p, q);
    let start = Point3::new(SEED_FACE, r(a, d), r(b, d), 0);
    let c0 = start.chart_frame();
    for s in 1..=12 {
        let t = trace3d(&start, p, q, &Rational::from_int(s)).unwrap();
        let last = t.segments.last().unwrap();
        if last.chart.eu == c0.eu && last.chart.ev == c0.ev {
            let x0 = &t.vertices[0];
            let x1 = t.vertices.last().unwrap();
            let diff: Vec<Rational> = (0..3).map(|i| x1[i].clone() - x0[i].clone()).collect();
            if diff.iter().all(|x| x.is_integer_value()) {
                let v: Vec<i64> = diff.iter().map(|x| x.floor_i64()).collect();
                if v.iter().all(|x| x % 2 == 0) && v.iter().any(|&x| x != 0) {
                    return [v[0] / 2, v[1] / 2, v[2] / 2];
                }
            }
        }
    }
    panic!("no revisit for ({p}, {q})");
}

#[test]
fn drift_vectors_frozen() {
    let table = [
        ((1, 2), [1, 1, 0]),
        ((1, 1), [1, 1, -1]),
        ((5, 2), [4, 0, 0]),
        ((3, 1), [1, 1, -1]),
        ((2, 1), [1, 1, 0]),
        ((7, 3), [3, 3, -3]),
    ];
    for ((p, q), v) in table {
        assert_eq!(drift_vector(p, q).unwrap(), v, "({p}, {q})");
        assert_eq!(revisit_vector(p, q), v, "({p}, {q})");
    }
    assert_eq!(drift_vector(1, 0), Err(mucube::Error::PeriodicDirection));
}

#[test]
fn drift_vectors_match_revisit_search() {
    for p in 0..=9 {
        for q in -9..=9 {
            if num_integer::Integer::gcd(&p, &q) != 1 {
                continue;
            }
            if let Ok(v) = drift_vector(p, q) {
                assert_eq!(revisit_vector(p, q), v, "({p}, {q})");
            }
        }
    }
}

/// The horizontal core orbit runs along a single line in the x direction, so its
/// ∞-norm diameter is one square width.
#[test]
fn horizontal_core_diameter() {
    let t = center_trace(1, 0, 5);
    let d = trajectory_diameter(&t).unwrap();
    let direct = (0..3)
        .map(|i| {
            let xs: Vec<&Rational> = t.vertices.iter().map(|v| &v[i]).collect();
            (*xs.iter().max().unwrap()).clone() - (*xs.iter().min().unwrap()).clone()
        })
        .max()
        .unwrap();
    assert_eq!(d, direct);
    assert_eq!(d, Rational::one());
    assert_eq!(
        polyline_diameter::<Rational>(&[[r(1, 2), r(1, 3), r(0, 1)]]),
        Rational::zero()
    );
    assert_eq!(
        trajectory_diameter(&center_trace(1, 2, 4)),
        Err(mucube::Error::OpenTrajectory)
    );
}

#[test]
fn alternating_twists_grow_the_diameter() {
    let mut s = Slope::Finite(BigRational::zero());
    let mut last = Rational::zero();
    for i in 0..6 {
        let axis = if i % 2 == 0 {
            TwistAxis::Vertical
        } else {
            TwistAxis::Horizontal
        };
        s = twist_slope(&s, axis, 1).unwrap();
        let (p, q) = s.direction();
        let (p, q): (i64, i64) = (p.try_into().unwrap(), q.try_into().unwrap());
        let t = center_trace(p, q, 5);
        assert!(t.closed, "({p}, {q})");
        let d = trajectory_diameter(&t).unwrap();
        assert!(d > last, "({p}, {q}): {d} after {last}");
        last = d;
    }
}

#[test]
fn retrace_from_a_later_point_gives_the_same_crossings() {
    for (p, q) in [(4, 1), (1, 4), (1, 8), (18, 13)] {
        let t = center_trace(p, q, 5);
        assert!(t.closed);
        let seg = t
            .segments
            .iter()
            .skip(3)
            .find(|s| s.chart.standard_index().is_some())
            .unwrap();
        let half = r(1, 2);
        let mid = |a: &Rational, b: &Rational| (a.clone() + b.clone()) * half.clone();
        let start = Point3::new(
            seg.chart.face(),
            mid(&seg.from.0, &seg.to.0),
            mid(&seg.from.1, &seg.to.1),
            seg.chart.standard_index().unwrap(),
        );
        let u = trace3d(&start, p, q, &Rational::from_int(5)).unwrap();
        assert!(u.closed);
        assert_eq!(u.arc_length.s, t.arc_length.s);
        let inner = |t: &Trajectory3D<Rational>| -> HashSet<[Rational; 3]> {
            t.vertices[1..t.vertices.len() - 1]
                .iter()
                .cloned()
                .collect()
        };
        assert_eq!(inner(&t), inner(&u));
    }
}

#[test]
fn edge_start_is_rejected() {
    let pt = Point3::new(SEED_FACE, Rational::zero(), r(1, 2), 0);
    assert!(matches!(
        trace3d(&pt, 1, 0, &Rational::one()),
        Err(mucube::Error::InvalidInput(_))
    ));
    assert!(trace3d(
        &Point3::<Rational>::center(SEED_FACE),
        2,
        4,
        &Rational::one()
    )
    .is_err());
}

#[test]
fn twist_slopes() {
    let f = |n: i64, d: i64| Slope::Finite(BigRational::new(n.into(), d.into()));
    assert_eq!(
        twist_slope(&f(0, 1), TwistAxis::Vertical, 1).unwrap(),
        f(4, 1)
    );
    assert_eq!(
        twist_slope(&f(3, 7), TwistAxis::Vertical, 0).unwrap(),
        f(3, 7)
    );
    assert_eq!(
        twist_slope(&f(1, 4), TwistAxis::Vertical, 1).unwrap(),
        f(17, 4)
    );
    assert_eq!(
        twist_slope(&Slope::Infinite, TwistAxis::Horizontal, 1).unwrap(),
        f(1, 4)
    );
    assert!(twist_slope(&Slope::Infinite, TwistAxis::Vertical, 1).is_err());
    assert!(twist_slope(&f(0, 1), TwistAxis::Horizontal, 1).is_err());
}

#[test]
fn twist_length_law() {
    let q = |n: i64| BigRational::from_integer(n.into());
    let o = DirectionalData {
        dir: (0, 1),
        multiplier: q(4),
        width_num: q(1),
    };
    let v = DirectionalData {
        dir: (1, 0),
        multiplier: q(4),
        width_num: q(1),
    };
    assert_eq!(twist_length_prediction(&o, &v, 0).unwrap().to_string(), "4");
    let l1 = twist_length_prediction(&o, &v, 1).unwrap();
    assert_eq!(l1.to_string(), "4*sqrt(17)");
    let t = center_trace(4, 1, 5);
    assert_eq!(l1.square(), &t.arc_length.s * &t.arc_length.s * q(17));
    for k in [1_000, 1_000_000] {
        let ratio2 = twist_length_prediction(&o, &v, k).unwrap().square()
            / twist_length_asymptote(&o, &v, k).unwrap().square();
        let lo = BigRational::new(999.into(), 1000.into());
        let hi = BigRational::new(1001.into(), 1000.into());
        assert!(&lo * &lo < ratio2 && ratio2 < &hi * &hi);
    }
}
