use std::sync::Arc;

use num_complex::Complex64;
use proptest::prelude::*;
use qspace_core::lattice::{
    combined_integral, density, expectation, integrate, integrate_separable, jackson_1d, kappa_scale, lattice_delta,
    normalize, spectral_apply, Bound, HalfLine, LatticeFunction, LatticeSpec, NegBranch, Observable, Projector,
    Quasipoint, Sampling,
};
use qspace_core::ncalg::CommPoly;
use qspace_core::ring::Ring;
use qspace_core::{preset, qs, Error, QFraction, QScalar, SpaceKind};

const Q: f64 = 1.3;

fn lattice(kind: SpaceKind, lo: i32, hi: i32) -> LatticeSpec {
    LatticeSpec::new(preset(kind), Q, lo, hi).unwrap()
}

fn exact(n: i64) -> QFraction {
    QFraction::from_scalar(QScalar::from_int(n))
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + b.norm())
}

fn printed_prefactor(kind: SpaceKind) -> QScalar {
    match kind {
        SpaceKind::QuantumPlane => qs("(q^2 - 1)^2"),
        SpaceKind::Euclid3 => qs("(q^4 - 1)^2*(q^2 - 1)"),
        SpaceKind::Euclid4 => qs("(q^4 - 1)^4"),
        SpaceKind::Minkowski => qs("(1 - q^(-2))^4"),
    }
}

fn printed_steps(kind: SpaceKind) -> Vec<i64> {
    match kind {
        SpaceKind::QuantumPlane => vec![2, 2],
        SpaceKind::Euclid3 => vec![4, 2, 4],
        SpaceKind::Euclid4 | SpaceKind::Minkowski => vec![2, 2, 2, 2],
    }
}

#[test]
fn weights_are_the_volume_elements() {
    let alphas = ["2", "q", "3*q^(-1)", "1/2"];
    for kind in SpaceKind::ALL {
        let n = kind.dim();
        let alpha: Vec<QScalar> = alphas[..n].iter().map(|a| qs(a)).collect();
        let base = lattice(kind, -2, 2).with_alpha(alpha.clone()).unwrap();
        for branch in [NegBranch::Riemann, NegBranch::Verbatim] {
            let spec = base.clone().with_branch(branch);
            for p in spec.points().iter().step_by(7) {
                let mut expected = printed_prefactor(kind);
                for j in 0..n {
                    let c = &alpha[j] * &QScalar::q_pow(printed_steps(kind)[j] * p.exps[j] as i64);
                    let signed = if p.signs[j] < 0 && branch == NegBranch::Verbatim { -c } else { c };
                    expected = &expected * &signed;
                }
                assert_eq!(spec.weight_symbolic(p), expected, "{kind} {p}");
            }
        }
    }
    let qp = lattice(SpaceKind::QuantumPlane, -1, 1);
    let origin = Quasipoint::new(vec![1, 1], vec![0, 0]);
    assert_eq!(qp.weight_symbolic(&origin), qs("(q^2 - 1)^2"));
}

#[test]
fn coordinates_are_signed_powers() {
    let spec = lattice(SpaceKind::Euclid3, -2, 2).with_alpha(vec![qs("2"), qs("1"), qs("3")]).unwrap();
    let p = Quasipoint::new(vec![-1, 1, -1], vec![1, -2, 0]);
    assert_eq!(spec.coordinate_symbolic(&p, 0), qs("-2*q^4"));
    assert_eq!(spec.coordinate_symbolic(&p, 1), qs("q^(-4)"));
    assert_eq!(spec.coordinate_symbolic(&p, 2), qs("-3"));
}

fn bump(coeffs: &[i64], lo: i32) -> impl Fn(i8, i32, &QFraction) -> QFraction + '_ {
    move |s, k, x| {
        let idx = k - lo;
        if idx < 0 || idx as usize >= coeffs.len() {
            return QFraction::zero();
        }
        let c = coeffs[idx as usize] * if s < 0 { 3 } else { 1 };
        exact(c).mul(x).mul(x)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn jackson_scaling_is_an_index_shift(
        coeffs in proptest::collection::vec(-5i64..5, 1..5),
        a in 1i32..5,
        branch in prop_oneof![Just(NegBranch::Riemann), Just(NegBranch::Verbatim)],
    ) {
        let c = qs("3/2");
        let f = bump(&coeffs, -2);
        let qa = QFraction::from_scalar(QScalar::q_pow(a as i64));
        let g = |s: i8, k: i32, x: &QFraction| f(s, k + 1, &qa.mul(x));
        for half in [HalfLine::Pos, HalfLine::Neg, HalfLine::Full] {
            let lhs = jackson_1d(&g, a, &c, Q, half, (-8, 8), branch).unwrap();
            let rhs = jackson_1d(&f, a, &c, Q, half, (-8, 8), branch).unwrap();
            let inv = QFraction::from_scalar(QScalar::q_pow(-(a as i64)));
            prop_assert_eq!(lhs, rhs.mul(&inv));
        }
    }

    #[test]
    fn delta_reproduces_samples(
        vals in proptest::collection::vec(-9i64..9, 50),
        at in 0usize..50,
    ) {
        let spec = Arc::new(lattice(SpaceKind::QuantumPlane, -2, 2).with_alpha(vec![qs("2"), qs("q")]).unwrap());
        let pts = spec.points();
        let f = LatticeFunction::from_samples(
            spec.clone(),
            pts.iter().zip(vals.iter().cycle()).map(|(p, v)| (p.clone(), exact(*v))),
        ).unwrap();
        let v0 = &pts[at % pts.len()];
        let d = lattice_delta::<QFraction>(spec.clone(), v0).unwrap();
        prop_assert_eq!(integrate(&f.mul(&d).unwrap()), f.get(v0));
        prop_assert_eq!(integrate(&d), QFraction::one());
        for j in 0..2 {
            let cj = spectral_apply(|c: &[QFraction]| c[j].clone(), &d);
            let value = QFraction::from_scalar(spec.coordinate_symbolic(v0, j));
            prop_assert_eq!(cj, d.scale(&value));
        }
    }

    #[test]
    fn projectors_are_idempotent(
        vals in proptest::collection::vec(-9i64..9, 1..40),
        b0 in (prop_oneof![Just(-1i8), Just(1i8)], -2i32..=2),
        b1 in (prop_oneof![Just(-1i8), Just(1i8)], -2i32..=2),
    ) {
        let spec = Arc::new(lattice(SpaceKind::QuantumPlane, -2, 2));
        let pts = spec.points();
        let f = LatticeFunction::from_samples(
            spec.clone(),
            pts.iter().zip(vals.iter().cycle()).map(|(p, v)| (p.clone(), exact(*v))),
        ).unwrap();
        let e = Projector::new(
            &spec,
            vec![Bound::At { sign: b0.0, exp: b0.1 }, Bound::At { sign: b1.0, exp: b1.1 }],
        ).unwrap();
        let once = e.apply(&f);
        prop_assert_eq!(e.apply(&once), once.clone());
        let complement = f.sub(&once).unwrap();
        prop_assert!(e.apply(&complement).samples().is_empty());
        prop_assert_eq!(Projector::completeness(&spec).apply(&f), f.clone());
    }

    #[test]
    fn spectral_apply_is_multiplicative(
        vals in proptest::collection::vec(-9i64..9, 1..60),
        a in -4i64..4,
        b in -4i64..4,
    ) {
        let spec = Arc::new(lattice(SpaceKind::Euclid3, -1, 1));
        let pts = spec.points();
        let f = LatticeFunction::from_samples(
            spec.clone(),
            pts.iter().zip(vals.iter().cycle()).map(|(p, v)| (p.clone(), exact(*v))),
        ).unwrap();
        let ff = move |c: &[QFraction]| c[0].mul(&c[1]).add(&exact(a));
        let gg = move |c: &[QFraction]| c[2].mul(&c[2]).sub(&exact(b).mul(&c[1]));
        let both = spectral_apply(ff, &spectral_apply(gg, &f));
        let product = spectral_apply(|c: &[QFraction]| ff(c).mul(&gg(c)), &f);
        prop_assert_eq!(both, product);
        prop_assert_eq!(spectral_apply(|_: &[QFraction]| QFraction::one(), &f), f);
    }
}

#[test]
fn heaviside_keeps_the_negative_branch() {
    let spec = Arc::new(lattice(SpaceKind::QuantumPlane, -1, 1));
    let f = LatticeFunction::from_fn(spec.clone(), |_, _| exact(1));
    let theta = Projector::heaviside(&spec, 1).unwrap().apply(&f);
    assert_eq!(theta.samples().len(), spec.points().len() / 2);
    assert!(theta.samples().keys().all(|p| p.signs[1] < 0));
    let below = Projector::new(&spec, vec![Bound::Unbounded, Bound::At { sign: -1, exp: -1 }]).unwrap();
    assert_eq!(below.apply(&f), theta);
}

#[test]
fn separable_integrals_factorize() {
    for kind in SpaceKind::ALL {
        let spec = lattice(kind, -3, 2)
            .with_alpha(["1", "2", "3/2", "1/3"][..kind.dim()].iter().map(|a| qs(a)).collect())
            .unwrap();
        for branch in [NegBranch::Riemann, NegBranch::Verbatim] {
            let spec = spec.clone().with_branch(branch);
            let n = spec.dim();
            let fac = |j: usize, x: Complex64| {
                Complex64::new(1.0 + j as f64, 0.0) + x * (0.5 - j as f64) + x * x * x * Complex64::new(0.0, 0.25)
            };
            let f = LatticeFunction::from_fn(Arc::new(spec.clone()), |_, c: &[Complex64]| {
                (0..n).fold(Complex64::new(1.0, 0.0), |acc, j| acc * fac(j, c[j]))
            });
            let factors: Vec<Box<dyn Fn(i8, i32, &Complex64) -> Complex64>> = (0..n)
                .map(|j| Box::new(move |_: i8, _: i32, x: &Complex64| fac(j, *x)) as Box<_>)
                .collect();
            let refs: Vec<&dyn Fn(i8, i32, &Complex64) -> Complex64> = factors.iter().map(|b| b.as_ref()).collect();
            let sep = integrate_separable(&spec, &refs).unwrap();
            let full = integrate(&f);
            // float tolerance relative to the absolute sum of the terms
            let scale: f64 = f.samples().iter().map(|(p, v)| (spec.weight::<Complex64>(p) * v).norm()).sum();
            assert!((full - sep).norm() <= 1e-12 * scale, "{kind} {branch:?}: {full} vs {sep}");
        }
    }
}

#[test]
fn prefactor_ratios_to_jackson_steps() {
    let ratios = [
        (SpaceKind::QuantumPlane, qs("1")),
        (SpaceKind::Euclid3, qs("1")),
        (SpaceKind::Euclid4, qs("(q^2 + 1)^4")),
        (SpaceKind::Minkowski, qs("q^(-8)")),
    ];
    for (kind, ratio) in ratios {
        let s = preset(kind);
        let steps: QScalar = s
            .lattice_steps
            .iter()
            .fold(QScalar::one(), |acc, a| &acc * &(QScalar::q_pow(*a as i64) - QScalar::one()));
        assert_eq!(s.lattice_prefactor, &ratio * &steps, "{kind}");
    }
}

#[test]
fn jackson_approaches_the_riemann_integral() {
    let q = 1.001;
    let f = |_: i8, _: i32, x: &Complex64| if x.re <= 1.0 { x * x } else { Complex64::new(0.0, 0.0) };
    let v = jackson_1d(&f, 2, &QScalar::one(), q, HalfLine::Pos, (-20000, 0), NegBranch::Riemann).unwrap();
    assert!((v.re - 1.0 / 3.0).abs() <= 5.0 * (q - 1.0), "{v}");
    assert_eq!(v.im, 0.0);
    let odd = |_: i8, _: i32, x: &Complex64| *x;
    let sym = jackson_1d(&odd, 2, &QScalar::one(), q, HalfLine::Full, (-50, 0), NegBranch::Riemann).unwrap();
    assert!(sym.norm() < 1e-15);
    let verbatim = jackson_1d(&odd, 2, &QScalar::one(), q, HalfLine::Full, (-50, 0), NegBranch::Verbatim).unwrap();
    assert!(verbatim.re > 0.1);
}

#[test]
fn jackson_rejects_q_at_most_one() {
    let f = |_: i8, _: i32, x: &Complex64| *x;
    for q in [1.0, 0.5, f64::NAN] {
        let r = jackson_1d(&f, 2, &QScalar::one(), q, HalfLine::Pos, (0, 3), NegBranch::Riemann);
        assert!(matches!(r, Err(Error::QOutOfRange(_))));
    }
    assert!(matches!(
        LatticeSpec::new(preset(SpaceKind::Euclid3), 0.9, -1, 1),
        Err(Error::QOutOfRange(_))
    ));
    let zero = |_: i8, _: i32, _: &Complex64| Complex64::new(0.0, 0.0);
    let r = jackson_1d(&zero, 2, &QScalar::one(), Q, HalfLine::Full, (-3, 3), NegBranch::Riemann).unwrap();
    assert_eq!(r, Complex64::new(0.0, 0.0));
}

#[test]
fn delta_outside_window() {
    let spec = Arc::new(lattice(SpaceKind::QuantumPlane, -1, 1));
    let p = Quasipoint::new(vec![1, 1], vec![0, 2]);
    assert!(matches!(lattice_delta::<Complex64>(spec, &p), Err(Error::OutsideWindow)));
}

#[test]
fn kappa_scaling_rescales_the_lattice() {
    let spec = Arc::new(lattice(SpaceKind::QuantumPlane, -2, 2));
    let f = LatticeFunction::from_fn(spec.clone(), |_, c: &[QFraction]| c[0].mul(&c[1]).add(&exact(1)));
    let kappa = preset(SpaceKind::QuantumPlane).kappa_bosonic;
    let g = kappa_scale(&f, &kappa).unwrap();
    assert_eq!(g.spec().alpha, vec![qs("q^(-3)"), qs("q^(-3)")]);
    for (p, v) in g.samples() {
        let c: Vec<QFraction> = g.spec().coordinates(p);
        let k = QFraction::from_scalar(kappa.clone());
        assert_eq!(*v, k.mul(&c[0]).mul(&k.mul(&c[1])).add(&exact(1)));
    }
    assert!(kappa_scale(&f, &qs("-q^(-6)")).is_err());
}

#[test]
fn combined_integral_is_i_over_two_times_the_sum() {
    let spec = Arc::new(lattice(SpaceKind::Euclid3, -1, 1));
    let f = LatticeFunction::from_fn(spec.clone(), |_, c: &[Complex64]| c[0] * c[1] + c[2]);
    let g = LatticeFunction::from_fn(spec.clone(), |p, _: &[Complex64]| Complex64::new(p.exps[0] as f64, 1.0));
    let i_half = Complex64::new(0.0, 0.5);
    for which in [1, 2] {
        let c = combined_integral(&f, which).unwrap();
        assert!(close(c, i_half * (integrate(&f) + integrate(&f)), 1e-14));
        let lin = combined_integral(&f.add(&g).unwrap(), which).unwrap();
        let sum = c + combined_integral(&g, which).unwrap();
        assert!(close(lin, sum, 1e-12));
        let zero = LatticeFunction::<Complex64>::zero(spec.clone());
        assert_eq!(combined_integral(&zero, which).unwrap(), Complex64::new(0.0, 0.0));
    }
    assert!(combined_integral(&f, 3).is_err());
}

fn euclid3_real(lo: i32, hi: i32) -> Arc<LatticeSpec> {
    Arc::new(
        lattice(SpaceKind::Euclid3, lo, hi)
            .with_sampling(Sampling::Real)
            .unwrap(),
    )
}

fn poly(nvars: usize, terms: &[(&[u32], &str)]) -> CommPoly<QFraction> {
    let mut p = CommPoly::zero(nvars);
    for (e, c) in terms {
        p.add_term(e.to_vec(), QFraction::from_scalar(qs(c)));
    }
    p
}

#[test]
fn constant_state_has_vanishing_position() {
    let spec = euclid3_real(-2, 1);
    let one = poly(3, &[(&[0, 0, 0], "1")]);
    for k in 0..3u8 {
        let op = Observable::real_part(&spec.space, k).unwrap();
        let e: QFraction = expectation(spec.clone(), &op, &one).unwrap();
        assert!(e.is_zero(), "X{k}: {e}");
    }
}

#[test]
fn normalized_density_integrates_to_one() {
    let spec = euclid3_real(-2, 1);
    let psi = poly(3, &[(&[0, 0, 0], "1"), (&[1, 0, 0], "2"), (&[0, 1, 1], "-1/3"), (&[0, 2, 0], "q")]);
    let n = normalize(spec.clone(), &psi).unwrap();
    let total = integrate(&n.density);
    assert!(close(total, Complex64::new(1.0, 0.0), 1e-12), "{total}");
    let exact_norm: QFraction = integrate(&density(spec.clone(), &psi).unwrap());
    assert!(close(exact_norm.eval(spec.q), n.norm, 1e-12));
}

#[test]
fn zero_state_has_no_norm() {
    let spec = euclid3_real(-1, 1);
    let zero = CommPoly::zero(3);
    assert!(matches!(normalize(spec, &zero), Err(Error::ZeroNorm)));
}

#[test]
fn minkowski_needs_real_sampling() {
    let spec = Arc::new(lattice(SpaceKind::Minkowski, -1, 0));
    let one = poly(4, &[(&[0, 0, 0, 0], "1")]);
    assert!(matches!(density::<Complex64>(spec, &one), Err(Error::UnsupportedSpace(_))));
    assert!(lattice(SpaceKind::QuantumPlane, -1, 0).with_sampling(Sampling::Real).is_err());
}

#[test]
fn integrate_is_linear() {
    let spec = Arc::new(lattice(SpaceKind::Euclid4, -1, 1));
    let f = LatticeFunction::from_fn(spec.clone(), |_, c: &[QFraction]| c[0].mul(&c[3]).add(&c[1]));
    let g = LatticeFunction::from_fn(spec.clone(), |p, _: &[QFraction]| exact(p.exps[2] as i64 + 2));
    let a = QFraction::from_scalar(qs("q - 2"));
    let lhs = integrate(&f.scale(&a).add(&g).unwrap());
    let rhs = a.mul(&integrate(&f)).add(&integrate(&g));
    assert_eq!(lhs, rhs);
    assert!(integrate(&LatticeFunction::<QFraction>::zero(spec)).is_zero());
    let w: QFraction = lattice(SpaceKind::Euclid4, -1, 1).weight(&Quasipoint::new(vec![1; 4], vec![0; 4]));
    assert_eq!(w.inv().unwrap().mul(&w), QFraction::one());
}
