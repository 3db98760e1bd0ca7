use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mucube::classify::{classify_all, Verdict};
use mucube::group::*;
use mucube::Error;

fn w(s: &str) -> GroupWord {
    s.parse().unwrap()
}

fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2<i64> {
    Mat2::new(a, b, c, d)
}

#[test]
fn eval_examples() {
    assert_eq!(w("T^4").eval::<i64>(), Mat2::identity());
    assert_eq!(w("B").eval::<i64>().first_column(), (5, 2));
    assert_eq!(GroupWord::empty().eval::<i64>(), Mat2::identity());
    assert_eq!(w("A").eval::<i64>(), m(1, 4, 0, 1));
    assert_eq!(w("T").eval::<i64>(), m(0, -1, 1, 0));
}

#[test]
fn presentation_relations() {
    let rels = presentation_relators();
    assert_eq!(rels[0].eval::<i64>(), Mat2::identity());
    for r in &rels {
        assert!(r.eval::<i64>().is_pm_identity(), "{r}");
    }
}

#[test]
fn rho_examples() {
    assert_eq!(w("A").rho::<i64>().mod_sign(), m(1, 1, 0, 1));
    assert!(w("T").rho::<i64>().is_pm_identity());
    assert_eq!(w("A^3").rho::<i64>().mod_sign(), m(1, 3, 0, 1));
    assert!(w("B").rho::<i64>().eq_mod_sign(&m(3, -1, 4, -1)));
}

#[test]
fn gamma_membership() {
    assert!(w("A").is_in_gamma());
    assert!(!w("B").is_in_gamma());
    assert!(w("B T B^-1").is_in_gamma());
    // B carries (1, 0) to a drift direction
    assert_eq!(classify_all(5, 2).unwrap().verdict, Verdict::Drift);
}

#[test]
fn fourey_words() {
    let c = fourey_word(&[0, 1]).unwrap().eval::<i64>().first_column();
    assert!(c == (4, 1) || c == (-4, -1), "{c:?}");
    let c = fourey_word(&[1]).unwrap().eval::<i64>().first_column();
    assert!(c == (1, 4) || c == (-1, -4), "{c:?}");
    assert!(fourey_word(&[0, 1]).unwrap().is_in_gamma());
    assert!(fourey_word(&[1, 0]).is_err());
    assert_eq!(
        fourey_direction(&[0, 1]).unwrap(),
        (BigInt::from(4), BigInt::from(1))
    );
}

#[test]
fn convergent_examples() {
    let last = |a0, tail: Vec<i64>| {
        let n = tail.len();
        let cf = ContinuedFraction::new(a0, tail).unwrap();
        convergents(&cf, n).unwrap().pop().unwrap()
    };
    assert_eq!(last(0, vec![4]), (BigInt::from(1), BigInt::from(4)));
    assert_eq!(last(4, vec![4]), (BigInt::from(17), BigInt::from(4)));
    let cf = ContinuedFraction::new(0, vec![4]).unwrap();
    assert!(convergents(&cf, 2).is_err());
}

#[test]
fn recurrence_examples() {
    let finite = ContinuedFraction::fourey(0, vec![1, 1, 1]).unwrap();
    assert_eq!(recurrence_classify(&finite), Recurrence::PeriodicSlope);
    let up = ContinuedFraction::eventually_periodic(0, vec![], vec![2, 3], true).unwrap();
    assert_eq!(recurrence_classify(&up), Recurrence::RecurrentAll);
    let alt = ContinuedFraction::eventually_periodic(0, vec![5], vec![1, -1], true).unwrap();
    assert_eq!(recurrence_classify(&alt), Recurrence::Inconclusive);
    let ones = ContinuedFraction::eventually_periodic(0, vec![], vec![1], true).unwrap();
    assert_eq!(
        recurrence_classify(&ones),
        Recurrence::RecurrentFromConePoints
    );
    let neg = ContinuedFraction::eventually_periodic(0, vec![], vec![-3], true).unwrap();
    assert_eq!(recurrence_classify(&neg), Recurrence::RecurrentAll);
}

#[test]
fn hurwitz_extremal_tail() {
    for k in 1..=3 {
        let tail: Vec<i64> = (0..52).map(|i| if i % 2 == 0 { k } else { -k }).collect();
        assert!(hurwitz_check(&tail, k, 12).unwrap(), "k = {k}");
    }
    assert!(matches!(
        hurwitz_check(&[1; 52], 2, 12),
        Err(Error::InvalidInput(_))
    ));
    assert!(matches!(
        hurwitz_check(&[1; 10], 1, 12),
        Err(Error::InvalidInput(_))
    ));
}

fn random_fourey(rng: &mut ChaCha8Rng, len: usize, k: i64) -> Vec<i64> {
    (0..len)
        .map(|_| {
            let a = rng.gen_range(k..=k + 5);
            if rng.gen_bool(0.5) {
                a
            } else {
                -a
            }
        })
        .collect()
}

#[test]
fn hurwitz_random_sequences() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for k in [1, 2] {
        for _ in 0..100 {
            let tail = random_fourey(&mut rng, 52, k);
            assert!(hurwitz_check(&tail, k, 12).unwrap(), "k = {k}, {tail:?}");
        }
    }
}

#[test]
fn flip_flop_random_sequences() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let a0 = rng.gen_range(-3..=3);
        let cf = ContinuedFraction::fourey(a0, random_fourey(&mut rng, 12, 1)).unwrap();
        let conv = convergents(&cf, 12).unwrap();
        for n in 1..=12 {
            let ((p0, q0), (p1, q1)) = (&conv[n - 1], &conv[n]);
            let expect = BigInt::from(if n % 2 == 0 { 1 } else { -1 });
            assert_eq!(p0 * q1 - p1 * q0, expect);
        }
    }
}

#[test]
fn witness_examples() {
    assert!(find_witness(1, 0, 10).unwrap().is_empty());
    let w41 = find_witness(4, 1, 50).unwrap();
    let c = w41.eval::<i64>().first_column();
    assert!(c == (4, 1) || c == (-4, -1));
    assert!(w41.is_in_gamma());
    assert!(matches!(
        find_witness(5, 2, 200),
        Err(Error::NotFoundWithinDepth(_))
    ));
    assert_eq!(classify_all(5, 2).unwrap().verdict, Verdict::Drift);

    let r = WitnessReport::new(&w41);
    assert_eq!(r.word, w41.to_string());
    assert_eq!(r.depth as u64, w41.length());
}

/// Every periodic direction up to 12 has a witness, and every witness found is periodic.
#[test]
fn witnesses_match_periodic_directions() {
    for p in 0..=12i64 {
        for q in -12..=12i64 {
            if p.gcd(&q) != 1 || (p == 0 && q < 0) {
                continue;
            }
            let periodic = classify_all(p, q).unwrap().verdict == Verdict::Periodic;
            assert_eq!(find_witness(p, q, 200).is_ok(), periodic, "({p}, {q})");
        }
    }
}

#[test]
fn density_family() {
    let mut prev = f64::INFINITY;
    for n in 0..=8 {
        let (p, q) = density_direction(n);
        assert_eq!(p.gcd(&q), 1);
        let c = density_word(n).eval::<i64>().first_column();
        assert!(c == (p, q) || c == (-p, -q), "n = {n}");
        assert!(density_word(n).is_in_gamma());
        assert_eq!(
            classify_all(p, q).unwrap().verdict,
            Verdict::Periodic,
            "n = {n}"
        );
        let gap = (1.0 - q as f64 / p as f64).abs();
        assert!(gap < prev);
        prev = gap;
    }
}

fn word() -> impl Strategy<Value = GroupWord> {
    prop::collection::vec((0usize..3, -3i64..=3), 0..6)
        .prop_map(|ls| GroupWord::new(ls.into_iter().map(|(g, e)| (Gen::ALL[g], e))))
}

fn gamma_word() -> impl Strategy<Value = GroupWord> {
    let piece = prop_oneof![
        (-2i64..=2).prop_map(|k| GroupWord::new([(Gen::A, k)])),
        word().prop_map(|x| GroupWord::gen(Gen::Theta).conjugate_by(&x)),
    ];
    prop::collection::vec(piece, 1..4)
        .prop_map(|ps| ps.iter().fold(GroupWord::empty(), |acc, p| acc.concat(p)))
}

fn small(c: (BigInt, BigInt)) -> Option<(i64, i64)> {
    let (p, q): (i64, i64) = (c.0.try_into().ok()?, c.1.try_into().ok()?);
    (p.abs().max(q.abs()) <= 400).then_some((p, q))
}

proptest! {
    #[test]
    fn parse_round_trip(x in word()) {
        prop_assert_eq!(w(&x.to_string()), x);
    }

    #[test]
    fn rho_is_a_homomorphism(x in word(), y in word()) {
        let lhs = x.concat(&y).rho::<BigInt>();
        let rhs = &x.rho::<BigInt>() * &y.rho::<BigInt>();
        prop_assert!(lhs.eq_mod_sign(&rhs));
        let e = &x.eval::<BigInt>() * &y.eval::<BigInt>();
        prop_assert_eq!(x.concat(&y).eval::<BigInt>(), e);
    }

    #[test]
    fn conjugates_of_theta_act_trivially(x in word()) {
        let c = GroupWord::gen(Gen::Theta).conjugate_by(&x);
        prop_assert!(c.rho::<BigInt>().is_pm_identity());
        prop_assert!(c.is_in_gamma());
    }

    #[test]
    fn fourey_words_are_periodic(a0 in -2i64..=2, tail in prop::collection::vec(prop_oneof![-3i64..=-1, 1i64..=3], 0..3)) {
        let mut coeffs = vec![a0];
        coeffs.extend(tail);
        let fw = fourey_word(&coeffs).unwrap();
        prop_assert!(fw.is_in_gamma());
        let (x, y) = fw.eval::<BigInt>().first_column();
        let (q, p) = fourey_direction(&coeffs).unwrap();
        prop_assert!((x.clone(), y.clone()) == (q.clone(), p.clone()) || (-x, -y) == (q.clone(), p.clone()));
        if let Some((q, p)) = small((q, p)) {
            prop_assert_eq!(classify_all(q, p).unwrap().verdict, Verdict::Periodic);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    /// Γ preserves the periodic class and the drift class.
    #[test]
    fn gamma_preserves_verdicts(g in gamma_word()) {
        prop_assert!(g.is_in_gamma());
        let mat = g.eval::<BigInt>();
        for ((p, q), v) in [((1, 0), Verdict::Periodic), ((1, 2), Verdict::Drift)] {
            let image = mat.apply((BigInt::from(p), BigInt::from(q)));
            if let Some((x, y)) = small(image) {
                prop_assert_eq!(x.gcd(&y), 1);
                prop_assert_eq!(classify_all(x, y).unwrap().verdict, v, "({}, {}) from {}", x, y, g);
            }
        }
    }

    #[test]
    fn witnesses_are_sound(p in -20i64..=20, q in -20i64..=20) {
        prop_assume!(p.gcd(&q) == 1);
        if let Ok(found) = find_witness(p, q, 200) {
            prop_assert!(found.is_in_gamma());
            let c = found.eval::<i64>().first_column();
            prop_assert!(c == (p, q) || c == (-p, -q));
            prop_assert_eq!(classify_all(p, q).unwrap().verdict, Verdict::Periodic);
        }
    }
}
