use std::sync::Arc;

use num_complex::Complex64;
use proptest::prelude::*;
use qspace::config::{from_toml, to_toml, SpaceConfig};
use qspace::csvio::{read_samples, write_samples, LatticeConfig, Range};
use qspace::suites::run_suite;
use qspace_core::lattice::{LatticeFunction, LatticeSpec};
use qspace_core::{preset, SpaceKind};

#[test]
fn space_configs_round_trip_exactly() {
    for kind in SpaceKind::ALL {
        let s = preset(kind);
        let text = to_toml(&s).unwrap();
        let back = from_toml(&text).unwrap();
        assert_eq!(back, s, "{kind}");
        assert_eq!(to_toml(&back).unwrap(), text);
    }
}

#[test]
fn malformed_configs_are_rejected() {
    let s = preset(SpaceKind::Euclid3);
    let mut cfg = SpaceConfig::from_spec(&s);
    cfg.rules[0].lhs[0] = "X9".into();
    assert!(cfg.to_spec().is_err());
    let mut cfg = SpaceConfig::from_spec(&s);
    cfg.metric.pop();
    assert!(cfg.to_spec().is_err());
    let mut cfg = SpaceConfig::from_spec(&s);
    cfg.kappa_bosonic = "q^".into();
    assert!(cfg.to_spec().is_err());
    assert!(from_toml("kind = 3").is_err());
}

fn lattice_config() -> LatticeConfig {
    LatticeConfig {
        space: "euclid3".into(),
        q: 1.5,
        vmin: Range::Uniform(-1),
        vmax: Range::PerCoordinate(vec![1, 0, 1]),
        branch: Some("verbatim".into()),
        sampling: None,
        alpha: Some(vec!["1".into(), "2".into(), "q".into()]),
        sectors: None,
    }
}

#[test]
fn lattice_configs_build_specs() {
    let spec = lattice_config().to_spec().unwrap();
    assert_eq!(spec.window.vmax, vec![1, 0, 1]);
    assert_eq!(spec.window.sectors.len(), 8);
    let text = toml::to_string(&lattice_config()).unwrap();
    let back: LatticeConfig = toml::from_str(&text).unwrap();
    assert_eq!(back, lattice_config());
    let mut bad = lattice_config();
    bad.q = 0.5;
    assert!(bad.to_spec().is_err());
    let mut bad = lattice_config();
    bad.vmin = Range::PerCoordinate(vec![0, 0]);
    assert!(bad.to_spec().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn samples_round_trip_through_csv(vals in proptest::collection::vec((-1e6f64..1e6, -1e3f64..1e3), 1..40)) {
        let spec = Arc::new(LatticeSpec::new(preset(SpaceKind::QuantumPlane), 1.2, -1, 1).unwrap());
        let pts = spec.points();
        let f = LatticeFunction::from_samples(
            spec.clone(),
            pts.iter().zip(&vals).map(|(p, (re, im))| (p.clone(), Complex64::new(*re, *im))),
        ).unwrap();
        let mut buf = Vec::new();
        write_samples(&f, &mut buf).unwrap();
        let back = read_samples(spec.clone(), buf.as_slice()).unwrap();
        prop_assert_eq!(back.samples(), f.samples());
    }
}

#[test]
fn bad_csv_is_reported() {
    let spec = Arc::new(LatticeSpec::new(preset(SpaceKind::QuantumPlane), 1.2, -1, 1).unwrap());
    let cases = [
        "s_1,v_1,re,im\n1,0,1,0\n",
        "s_1,s_2,v_1,v_2,re,im\n2,1,0,0,1,0\n",
        "s_1,s_2,v_1,v_2,re,im\n1,1,0,5,1,0\n",
        "s_1,s_2,v_1,v_2,re,im\n1,1,0,0,x,0\n",
        "s_1,s_2,v_1,v_2,re,im\n1,1,0,0,1,0\n1,1,0,0,2,0\n",
    ];
    for c in cases {
        assert!(read_samples(spec.clone(), c.as_bytes()).is_err(), "{c}");
    }
}

#[test]
fn reports_are_deterministic_and_sorted() {
    let a = run_suite("grassmann", 1.3, 7).unwrap();
    let b = run_suite("grassmann", 1.3, 7).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert!(a.checks.windows(2).all(|w| w[0].id < w[1].id));
    assert!(a.checks.iter().all(|c| !c.paper_ref.is_empty() && !c.anchor.is_empty()));
    let c = run_suite("conjugation", 1.3, 3).unwrap();
    let d = run_suite("conjugation", 1.3, 3).unwrap();
    assert_eq!(c.to_json(), d.to_json());
    let json: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
    for key in ["suite", "q", "seed", "checks"] {
        assert!(json.get(key).is_some(), "{key}");
    }
    assert!(run_suite("nonsense", 1.3, 0).is_err());
}
