use std::collections::BTreeSet;

use mucube::classify::model;
use mucube::flow::{
    cylinder_decomposition, eta_curve, homology_coordinates, intersection_with, sigma_curve,
    trace_surface, SurfacePoint,
};
use mucube::mucube3d::faces_in_box;
use mucube::surface::{build_x, build_y, minimal_translation_cover, HomologyClass, Surface};
use mucube::{Exact, Rational};

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!(
        "{}/tests/fixtures/{name}",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap()
}

#[test]
fn golden_tables() {
    let m = model();
    assert_eq!(m.x.to_table(), fixture("x.txt"));
    assert_eq!(m.y.to_table(), fixture("y.txt"));
    let x = Surface::from_table("X", &fixture("x.txt")).unwrap();
    assert_eq!(x.glue, m.x.glue);
    assert_eq!(x.cocycle, m.x.cocycle);
    assert_eq!(x.to_table(), m.x.to_table());
}

#[test]
fn x_invariants() {
    let x = build_x().unwrap();
    assert_eq!(x.n(), 12);
    assert_eq!(x.area(), 12);
    x.validate().unwrap();
    x.validate_angles().unwrap();
    assert_eq!(x.genus(), 3);
    assert_eq!(x.singularities(), vec![3; 8]);
    assert_eq!(x.components(), 1);
    // the squares of X are the faces of one fundamental box
    assert_eq!(faces_in_box([-1, -1, -1], [1, 1, 1]).len(), x.n());
}

#[test]
fn y_invariants() {
    let x = build_x().unwrap();
    let (y, proj) = build_y(&x).unwrap();
    assert_eq!(y.n(), 4);
    y.validate().unwrap();
    y.validate_angles().unwrap();
    assert_eq!(y.genus(), 1);
    assert_eq!(y.singularities(), vec![1, 1, 3, 3]);
    assert_eq!(proj.len(), 12);
    // every square of Y has exactly three preimages
    for k in 0..4 {
        assert_eq!(proj.iter().filter(|(s, _)| *s == k).count(), 3);
    }
    let gamma0 = y.marked_curve("gamma0").unwrap();
    assert!(gamma0.orientation.iter().all(|&o| o != 0));
}

#[test]
fn cocycle_closes_around_vertices() {
    let x = &model().x;
    assert!(x.cocycle_vertex_sums().iter().all(|v| *v == [0, 0, 0]));
}

#[test]
fn axis_cylinders_of_x() {
    let x = &model().x;
    for (p, q) in [(1, 0), (0, 1)] {
        let d = cylinder_decomposition::<Rational>(x, p, q).unwrap();
        assert_eq!(d.cylinders.len(), 3);
        let mut seen = BTreeSet::new();
        for c in &d.cylinders {
            assert_eq!(c.area, Rational::from_int(4));
            assert_eq!(c.displacement, [0, 0, 0]);
            let squares: BTreeSet<usize> = c.core_squares.iter().copied().collect();
            assert_eq!(squares.len(), 4);
            assert!(seen.is_disjoint(&squares));
            seen.extend(squares);
        }
        assert_eq!(seen.len(), 12);
    }
}

#[test]
fn symmetry_cycles_the_horizontal_cylinders() {
    let m = model();
    let sym = m.x.symmetry.as_ref().unwrap();
    let d = cylinder_decomposition::<Rational>(&m.x, 1, 0).unwrap();
    let cyl_of = |s: usize| {
        d.cylinders
            .iter()
            .position(|c| c.core_squares.contains(&s))
            .unwrap()
    };
    let image: Vec<usize> = d
        .cylinders
        .iter()
        .map(|c| cyl_of(sym[c.core_squares[0]].square))
        .collect();
    assert_eq!(image.iter().collect::<BTreeSet<_>>().len(), 3);
    assert!(image.iter().enumerate().all(|(i, &j)| i != j));
    // and it has order three on squares
    for s in 0..12 {
        assert_eq!(sym[sym[sym[s].square].square].square, s);
    }
}

#[test]
fn y_horizontal_is_one_cylinder() {
    let y = &model().y;
    let d = cylinder_decomposition::<Rational>(y, 1, 0).unwrap();
    assert_eq!(d.cylinders.len(), 1);
    assert_eq!(d.cylinders[0].area, Rational::from_int(4));
}

#[test]
fn translation_covers() {
    let y = &model().y;
    let cy = minimal_translation_cover(y);
    assert_eq!(cy.n(), 8);
    assert!(!cy.has_flips());
    cy.validate().unwrap();
    cy.validate_angles().unwrap();
    // the angle-π points become regular, the angle-3π points become 6π points
    assert_eq!(cy.singularities(), vec![6, 6]);
    assert_eq!(cy.genus(), 3);
    assert_eq!(cy.components(), 1);

    let cx = minimal_translation_cover(&model().x);
    assert_eq!(cx.n(), 24);
    assert!(!cx.has_flips());
    assert_eq!(cx.singularities(), vec![6; 8]);

    // a translation surface covers itself twice over
    let again = minimal_translation_cover(&cy);
    assert_eq!(again.n(), 16);
    assert_eq!(again.components(), 2);
}

fn half() -> Rational {
    Rational::ratio(1, 2)
}

#[test]
fn homology_basis() {
    let y = &model().y;
    let sigma = sigma_curve::<Rational>(y).unwrap();
    let eta = eta_curve::<Rational>(y).unwrap();
    assert_eq!(
        homology_coordinates(y, &sigma).unwrap(),
        HomologyClass::new(1, 0)
    );
    assert_eq!(
        homology_coordinates(y, &eta).unwrap(),
        HomologyClass::new(0, 1)
    );
    assert_eq!(intersection_with(&sigma, &eta).unwrap(), 1);
    assert_eq!(intersection_with(&eta, &sigma).unwrap(), -1);
    assert_eq!(
        HomologyClass::new(1, 0).intersection(&HomologyClass::new(0, 1)),
        1
    );
    assert!(HomologyClass::new(3, 0).in_w());
}

#[test]
fn slope_half_core_is_sigma_plus_two_eta() {
    let y = &model().y;
    let mut classes = BTreeSet::new();
    for s in 0..4 {
        let t = trace_surface(
            y,
            &SurfacePoint::new(s, half(), Rational::ratio(1, 3)),
            2,
            1,
            1000,
        )
        .unwrap();
        assert!(t.closed());
        let h = homology_coordinates(y, &t).unwrap();
        classes.insert((h.alpha, h.beta));
    }
    // one cylinder carries ±(σ + 2η); the other is null-homologous
    assert!(classes.contains(&(-1, -2)) || classes.contains(&(1, 2)));
    assert!(classes
        .iter()
        .all(|&c| [(0, 0), (1, 2), (-1, -2)].contains(&c)));
}

#[test]
fn horizontal_trace_on_y() {
    let y = &model().y;
    let t = trace_surface::<Rational>(y, &SurfacePoint::center(0), 1, 0, 100).unwrap();
    assert!(t.closed());
    assert_eq!(t.crossings.len(), 4);
    assert_eq!(t.gamma0, 0);
}
