use proptest::prelude::*;
use qspace_core::ncalg::{dequantize, CommPoly};
use qspace_core::phasespace::{
    derivative_action, rmatrix_checks, Calculus, DerivKind, Ordering, PhaseAlgebra, Side,
};
use qspace_core::{preset, Error, NCPoly, QScalar, SpaceKind};

const WITH_R: [SpaceKind; 2] = [SpaceKind::QuantumPlane, SpaceKind::Euclid3];

#[test]
fn rmatrices_pass_structural_checks() {
    for kind in WITH_R {
        let s = preset(kind);
        let report = rmatrix_checks(s.rmatrix.as_ref().unwrap()).unwrap();
        assert!(report.braid, "{kind} braid");
        assert!(report.inverse, "{kind} inverse");
        assert!(report.flip_limit, "{kind} flip");
        assert_eq!(report.minimal_polynomial, Some(true), "{kind} minimal polynomial");
    }
}

#[test]
fn coordinate_algebras_are_confluent() {
    for kind in SpaceKind::ALL {
        let s = preset(kind);
        assert!(s.algebra.overlap_failures().is_empty(), "{kind}");
    }
}

#[test]
fn phase_algebras_are_confluent() {
    for kind in WITH_R {
        let s = preset(kind);
        for calc in [Calculus::Unhatted, Calculus::Hatted] {
            for order in [Ordering::XP, Ordering::PX] {
                let alg = PhaseAlgebra::new(&s, calc, order).unwrap();
                let bad = alg.system().overlap_failures();
                assert!(bad.is_empty(), "{kind} {calc:?} {order:?}: {bad:?}");
            }
        }
    }
}

#[test]
fn spaces_without_r_matrix_report_it() {
    for kind in [SpaceKind::Euclid4, SpaceKind::Minkowski] {
        let s = preset(kind);
        let f: NCPoly = s.generator(0);
        let e = derivative_action(&s, DerivKind::ALL[0], 0, &f).unwrap_err();
        assert!(matches!(e, Error::MissingRMatrix(_)));
    }
}

#[test]
fn derivative_of_a_coordinate_is_the_metric() {
    for kind in WITH_R {
        let s = preset(kind);
        let n = s.ngens() as u8;
        for k in 0..n {
            for l in 0..n {
                let x: NCPoly = s.generator(l);
                let d = derivative_action(&s, DerivKind::new(Calculus::Unhatted, Side::Left), k, &x).unwrap();
                assert_eq!(d.coeff(&[]), s.metric[k as usize][l as usize], "{kind} {k}{l}");
                assert_eq!(d.degree().unwrap_or(0), 0);
                let d = derivative_action(&s, DerivKind::new(Calculus::Hatted, Side::Left), k, &x).unwrap();
                assert_eq!(d.coeff(&[]), s.metric_hat[k as usize][l as usize], "{kind} hat {k}{l}");
            }
        }
    }
}

fn at_one(f: &NCPoly) -> CommPoly<QScalar> {
    dequantize(&f.map_coeffs(|c| QScalar::constant(c.at_one())))
}

fn classical(s: &qspace_core::SpaceSpec, k: usize, f: &CommPoly<QScalar>) -> CommPoly<QScalar> {
    let n = s.ngens();
    let mut out = CommPoly::zero(n);
    for l in 0..n {
        let g = QScalar::constant(s.metric[k][l].at_one());
        if g.is_zero() {
            continue;
        }
        for (e, c) in f.terms() {
            if e[l] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[l] -= 1;
            let mut t = CommPoly::zero(n);
            t.add_term(e2, c * &g * QScalar::from_int(e[l] as i64));
            out = out.add(&t);
        }
    }
    out
}

fn arb_poly(kind: SpaceKind) -> impl Strategy<Value = NCPoly> {
    let s = preset(kind);
    let n = s.ngens() as u8;
    prop::collection::vec((prop::collection::vec(0..n, 0..4), -3i64..4, -2i64..3), 1..4).prop_map(move |terms| {
        let raw: Vec<_> = terms
            .into_iter()
            .map(|(w, c, e)| (w, QScalar::from_int(c) * QScalar::q_pow(e)))
            .collect();
        s.poly(&raw).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn all_actions_are_classical_at_q_one(f in arb_poly(SpaceKind::Euclid3), k in 0u8..3) {
        let s = preset(SpaceKind::Euclid3);
        let f = f.rebind(&s.algebra).unwrap();
        let want = classical(&s, k as usize, &at_one(&f));
        for kind in DerivKind::ALL {
            let d = derivative_action(&s, kind, k, &f).unwrap();
            prop_assert_eq!(at_one(&d), want.clone(), "{}", kind);
        }
    }

    #[test]
    fn actions_are_linear(f in arb_poly(SpaceKind::QuantumPlane), g in arb_poly(SpaceKind::QuantumPlane), k in 0u8..2) {
        let s = preset(SpaceKind::QuantumPlane);
        let f = f.rebind(&s.algebra).unwrap();
        let g = g.rebind(&s.algebra).unwrap();
        for kind in DerivKind::ALL {
            let lhs = derivative_action(&s, kind, k, &f.add(&g).unwrap()).unwrap();
            let rhs = derivative_action(&s, kind, k, &f).unwrap()
                .add(&derivative_action(&s, kind, k, &g).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
