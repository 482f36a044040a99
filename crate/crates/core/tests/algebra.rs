use proptest::prelude::*;
use qspace_core::ncalg::{dequantize, quantize, Word};
use qspace_core::{preset, qs, NCPoly, QFraction, QScalar, SpaceKind, SpaceSpec};

fn kind() -> impl Strategy<Value = SpaceKind> {
    prop_oneof![
        Just(SpaceKind::QuantumPlane),
        Just(SpaceKind::Euclid3),
        Just(SpaceKind::Euclid4),
        Just(SpaceKind::Minkowski),
    ]
}

type Raw = Vec<(Vec<u8>, i64, i64)>;

fn raw(max_len: usize) -> impl Strategy<Value = Raw> {
    proptest::collection::vec((proptest::collection::vec(0u8..4, 0..=max_len), -3i64..4, -2i64..3), 1..4)
}

fn element(s: &SpaceSpec, r: &Raw) -> NCPoly {
    let n = s.ngens() as u8;
    let terms: Vec<(Word, QScalar)> = r
        .iter()
        .map(|(w, c, h)| (w.iter().map(|g| g % n).collect(), &QScalar::from_int(*c) * &QScalar::q_half_pow(*h)))
        .collect();
    s.poly(&terms).unwrap()
}

#[test]
fn relations_reduce_to_zero() {
    for k in SpaceKind::ALL {
        let s = preset(k);
        assert!(!s.relation_differences().is_empty());
        for diff in s.relation_differences() {
            assert!(s.poly(&diff).unwrap().is_zero(), "{k}");
            let flipped: Vec<(Word, QScalar)> = diff.iter().map(|(w, c)| (w.clone(), -c)).collect();
            assert!(s.poly(&flipped).unwrap().is_zero(), "{k}");
        }
    }
}

#[test]
fn quantum_plane_relation() {
    let s = preset(SpaceKind::QuantumPlane);
    let x1 = s.gen_index("X1").unwrap();
    let x2 = s.gen_index("X2").unwrap();
    let f = s
        .poly(&[(vec![x1, x2], QScalar::one()), (vec![x2, x1], -QScalar::q())])
        .unwrap();
    assert!(f.is_zero());
}

#[test]
fn termination_bounds_cover_reduction_lengths() {
    for k in SpaceKind::ALL {
        let s = preset(k);
        let n = s.ngens() as u8;
        let w: Vec<u8> = (0..6).map(|i| n - 1 - (i % n)).collect();
        let (_, longest, bound) = s.algebra.normal_order_traced(&[(w.clone(), QScalar::one())]).unwrap();
        assert_eq!(bound, s.algebra.termination_bound(&w));
        assert!((longest as u128) <= bound, "{k}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative(k in kind(), a in raw(3), b in raw(3), c in raw(3)) {
        let s = preset(k);
        let (a, b, c) = (element(&s, &a), element(&s, &b), element(&s, &c));
        let left = a.ncmul(&b).unwrap().ncmul(&c).unwrap();
        let right = a.ncmul(&b.ncmul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn normal_forms_are_fixed_points(k in kind(), a in raw(4)) {
        let s = preset(k);
        let a = element(&s, &a);
        for w in a.terms().keys() {
            prop_assert!(s.algebra.is_normal(w));
        }
        let again = s.poly(&a.terms().iter().map(|(w, c)| (w.clone(), c.clone())).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(again, a);
    }

    #[test]
    fn conjugation_is_an_antilinear_antihomomorphism(k in kind(), a in raw(3), b in raw(3)) {
        let s = preset(k);
        let (a, b) = (element(&s, &a), element(&s, &b));
        let lhs = s.conjugate(&a.ncmul(&b).unwrap()).unwrap();
        let rhs = s.conjugate(&b).unwrap().ncmul(&s.conjugate(&a).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let i = QScalar::i();
        prop_assert_eq!(s.conjugate(&a.scale(&i)).unwrap(), s.conjugate(&a).unwrap().scale(&-i));
    }

    #[test]
    fn conjugation_squares_to_identity(k in kind(), a in raw(4)) {
        let s = preset(k);
        let a = element(&s, &a);
        let twice = s.conjugate(&s.conjugate(&a).unwrap()).unwrap();
        if k == SpaceKind::QuantumPlane {
            let mut expected: Vec<(Word, QScalar)> = Vec::new();
            for (w, c) in a.terms() {
                expected.push((w.clone(), if w.len() % 2 == 1 { -c } else { c.clone() }));
            }
            prop_assert_eq!(twice, s.poly(&expected).unwrap());
        } else {
            prop_assert_eq!(twice, a);
        }
    }

    #[test]
    fn star_product_matches_ordered_multiplication(k in kind(), a in raw(2), b in raw(2)) {
        let s = preset(k);
        let (a, b) = (element(&s, &a), element(&s, &b));
        let (fa, fb) = (dequantize(&a), dequantize(&b));
        let star = s.star_product(&fa, &fb).unwrap();
        prop_assert_eq!(quantize(&s.algebra, &star).unwrap(), a.ncmul(&b).unwrap());
    }

    #[test]
    fn real_coordinates_round_trip(k in prop_oneof![Just(SpaceKind::Euclid3), Just(SpaceKind::Euclid4), Just(SpaceKind::Minkowski)], a in raw(3)) {
        let s = preset(k);
        let a = element(&s, &a).to_fraction();
        let y = s.to_real_coords(&a).unwrap();
        prop_assert_eq!(s.from_real_coords(&y).unwrap(), a);
    }
}

#[test]
fn relations_are_compatible_with_conjugation() {
    for k in SpaceKind::ALL {
        let s = preset(k);
        for diff in s.relation_differences() {
            assert!(s.conjugate_raw(&diff).unwrap().is_zero(), "{k}");
        }
    }
}

#[test]
fn real_coordinates_are_self_conjugate() {
    for k in [SpaceKind::Euclid3, SpaceKind::Euclid4, SpaceKind::Minkowski] {
        let s = preset(k);
        for i in 0..s.ngens() as u8 {
            let y = s.real_generator(i).unwrap();
            assert_eq!(s.conjugate(&y).unwrap(), y, "{k} Y{}", i + 1);
        }
    }
    assert!(preset(SpaceKind::QuantumPlane).real_generator(0).is_err());
}

#[test]
fn minkowski_conjugates_x_plus() {
    let s = preset(SpaceKind::Minkowski);
    let plus: NCPoly = s.generator(s.gen_index("X+").unwrap());
    let minus: NCPoly = s.generator(s.gen_index("X-").unwrap());
    assert_eq!(s.conjugate(&plus).unwrap(), minus.scale(&qs("-q^(-1)")));
    let _: NCPoly<QFraction> = plus.to_fraction();
}

#[test]
fn minkowski_real_coordinates_need_swapped_powers() {
    let s = preset(SpaceKind::Minkowski);
    let plus: NCPoly = s.generator(s.gen_index("X+").unwrap());
    let minus: NCPoly = s.generator(s.gen_index("X-").unwrap());
    let y = |a: &str, b: &str| plus.scale(&qs(a)).add(&minus.scale(&qs(b))).unwrap();
    let euclid_form = y("i*q^(-1/2)", "i*q^(1/2)");
    assert_ne!(s.conjugate(&euclid_form).unwrap(), euclid_form);
    let swapped = y("i*q^(1/2)", "i*q^(-1/2)");
    assert_eq!(s.conjugate(&swapped).unwrap(), swapped);
}
