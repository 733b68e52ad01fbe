//! Heart and charge-calculus properties against independent oracles.

mod common;

use std::cmp::Ordering;

use ncproj::field::{QuadraticFieldElement, Rational};
use ncproj::heart::{
    euler_pairing, hom_dim_stable, hom_vanishes, in_heart, slope, stable_p, torsion_split, Charge, HeartObject,
    HomVanishing, SheafClass, Theta,
};
use proptest::prelude::*;

fn charge() -> impl Strategy<Value = Charge> {
    (0i64..=8, -8i64..=8).prop_filter_map("valid charge", |(r, d)| Charge::new(r, d).ok())
}

fn stable_charge() -> impl Strategy<Value = Charge> {
    charge().prop_filter("stable", |z| stable_p(*z))
}

fn class() -> impl Strategy<Value = SheafClass> {
    prop::collection::vec(charge(), 0..6).prop_map(SheafClass::from_charges)
}

fn theta() -> impl Strategy<Value = Theta> {
    prop_oneof![
        (-10i64..=10, 1i64..=6).prop_map(|(p, q)| Theta::Rational(Rational::new(p, q).unwrap())),
        (-10i64..=10, prop_oneof![Just(-1i64), Just(1)], 1i64..=6, prop::sample::select(vec![2u64, 3, 5, 7, 13]))
            .prop_map(|(p, s, q, d)| Theta::Quadratic(QuadraticFieldElement::new(p, s, q, d).unwrap())),
    ]
}

fn above(theta: &Theta, z: Charge) -> bool {
    theta.compare_slope(&slope(z)) == Ordering::Greater
}

#[test]
fn hn_matches_ordered_partition_oracle() {
    let checked = common::check_hn_exhaustive(5, 4).unwrap();
    assert!(checked > 600_000, "{checked}");
}

#[test]
fn golden_conjugate_split() {
    let theta = Theta::Quadratic(QuadraticFieldElement::new(-1, 1, 2, 5).unwrap());
    let z = |r, d| Charge::new(r, d).unwrap();
    let f = SheafClass::from_charges([z(1, 0), z(2, 1), z(0, 1), z(3, 2)]);
    let (t, q) = torsion_split(&f, &theta);
    assert_eq!(t, SheafClass::from_charges([z(0, 1), z(3, 2)]));
    assert_eq!(q, SheafClass::from_charges([z(1, 0), z(2, 1)]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn torsion_split_partitions_by_theta(f in class(), th in theta()) {
        let (t, q) = torsion_split(&f, &th);
        prop_assert!(t.factors().all(|(z, _)| above(&th, z)));
        prop_assert!(q.factors().all(|(z, _)| !above(&th, z)));
        let mut merged: Vec<(Charge, u32)> = t.factors().chain(q.factors()).collect();
        merged.sort();
        prop_assert_eq!(merged, f.factors().collect::<Vec<_>>());
        prop_assert_eq!(torsion_split(&t, &th), (t.clone(), SheafClass::empty()));
        prop_assert_eq!(torsion_split(&q, &th), (SheafClass::empty(), q.clone()));
        let k = HeartObject { shifted: q, plain: t, theta: th };
        prop_assert!(in_heart(&k));
    }

    #[test]
    fn hom_from_torsion_to_free_part_vanishes(f in class(), g in class(), th in theta()) {
        let (t, _) = torsion_split(&f, &th);
        let (_, q) = torsion_split(&g, &th);
        prop_assert_eq!(hom_vanishes(&t, &q), HomVanishing::CertainZero);
        for (a, _) in t.factors().filter(|(z, _)| stable_p(*z)) {
            for (b, _) in q.factors().filter(|(z, _)| stable_p(*z)) {
                prop_assert_eq!(hom_dim_stable(a, b).unwrap().0, 0);
            }
        }
    }

    #[test]
    fn certain_zero_agrees_with_stable_dimensions(a in stable_charge(), b in stable_charge()) {
        let single = |z| SheafClass::from_charges([z]);
        if hom_vanishes(&single(a), &single(b)) == HomVanishing::CertainZero {
            prop_assert_eq!(hom_dim_stable(a, b).unwrap().0, 0);
        }
    }

    #[test]
    fn euler_pairing_is_antisymmetric_and_bilinear(a in charge(), b in charge(), c in charge()) {
        prop_assert_eq!(euler_pairing(a, b), -euler_pairing(b, a));
        let sum = Charge::new(a.rank() + b.rank(), a.deg() + b.deg()).unwrap();
        prop_assert_eq!(euler_pairing(sum, c), euler_pairing(a, c) + euler_pairing(b, c));
        prop_assert_eq!(euler_pairing(c, sum), euler_pairing(c, a) + euler_pairing(c, b));
        prop_assert_eq!(euler_pairing(Charge::new(1, 0).unwrap(), c), c.deg());
    }
}

/// Every stable charge with entries bounded by `n`.
fn stable_charges(n: i64) -> Vec<Charge> {
    common::bounded_charges(n).into_iter().filter(|z| stable_p(*z)).collect()
}

#[test]
fn calabi_yau_dimension_identity() {
    let zs = stable_charges(20);
    for &a in &zs {
        for &b in &zs {
            let (hom, ext1) = hom_dim_stable(a, b).unwrap();
            assert_eq!(hom as i64 - ext1 as i64, euler_pairing(a, b), "{a} {b}");
            assert_eq!(ext1, hom_dim_stable(b, a).unwrap().0, "{a} {b}");
        }
    }
}

#[test]
fn heart_has_no_degree_two_pairing() {
    // Hom(A, B[-1]) for A in the plain part and B in the shifted part.
    let zs = stable_charges(6);
    let thetas = [
        Theta::Quadratic(QuadraticFieldElement::new(-1, 1, 2, 5).unwrap()),
        Theta::Quadratic(QuadraticFieldElement::new(0, -1, 1, 2).unwrap()),
        Theta::Rational(Rational::new(1, 3).unwrap()),
    ];
    for th in &thetas {
        for &a in zs.iter().filter(|z| above(th, **z)) {
            for &b in zs.iter().filter(|z| !above(th, **z)) {
                let single = |z| SheafClass::from_charges([z]);
                assert_eq!(hom_vanishes(&single(a), &single(b)), HomVanishing::CertainZero);
                assert_eq!(hom_dim_stable(a, b).unwrap().0, 0);
            }
        }
    }
}
