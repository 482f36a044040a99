use qspace_core::phasespace::{Calculus, DerivKind, Side};
use qspace_core::qexp::{classical_exponential, residual, solve, solve_qexp, solve_qexp_dual};
use qspace_core::{preset, QFraction, Ring, SpaceKind};

#[test]
fn quantum_plane_degree_eight_has_zero_residual() {
    let s = preset(SpaceKind::QuantumPlane);
    for kind in DerivKind::ALL {
        let u = solve(&s, kind, 8).unwrap();
        assert!(u.is_degree_paired());
        assert_eq!(u.coeff(&[], &[]), QFraction::one());
        assert!(residual(&s, kind, &u).unwrap().is_empty(), "{kind}");
    }
}

#[test]
fn quantum_plane_matches_classical_exponential_at_one() {
    let s = preset(SpaceKind::QuantumPlane);
    let want = classical_exponential(&s, 8);
    let left = solve_qexp(&s, Calculus::Unhatted, 8).unwrap();
    let right = solve_qexp_dual(&s, Calculus::Unhatted, 8).unwrap();
    assert_eq!(left.at_one().unwrap(), want);
    assert_eq!(right.at_one().unwrap(), want);
}

#[test]
fn euclid3_low_degree() {
    let s = preset(SpaceKind::Euclid3);
    let want = classical_exponential(&s, 4);
    for kind in DerivKind::ALL {
        let u = solve(&s, kind, 4).unwrap();
        assert!(residual(&s, kind, &u).unwrap().is_empty(), "{kind}");
        assert_eq!(u.at_one().unwrap(), want, "{kind}");
    }
}

#[test]
fn perturbed_coefficient_breaks_residual() {
    let s = preset(SpaceKind::QuantumPlane);
    let kind = DerivKind::new(Calculus::Hatted, Side::Left);
    let mut u = solve(&s, kind, 4).unwrap();
    let (key, c) = u.terms().iter().find(|((x, _), _)| x.len() == 2).map(|(k, c)| (k.clone(), c.clone())).unwrap();
    u.set(key.0, key.1, c.add(&QFraction::one()));
    assert!(!residual(&s, kind, &u).unwrap().is_empty());
}
