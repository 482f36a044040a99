use proptest::prelude::*;
use qspace::expr::{normal_order, parse, Evaluator, Expr};
use qspace_core::{preset, qs, Error, NCPoly, QFraction, SpaceKind};

fn corpus(kind: SpaceKind) -> Vec<&'static str> {
    match kind {
        SpaceKind::QuantumPlane => vec![
            "X1*X2 - q*X2*X1",
            "2*X1^3 + q^(1/2)*X2/q",
            "conj(X1*X2) + i*X2",
            "star(X1 + 1, X2*X1)",
            "dl1(X1*X2) - dr2(X2^2) + dhl1(X2) + dhr2(X1)",
            "P1*X2 - (q - q^(-1))*X1*P2",
            "-(X1 - 3)*(X2 + q)",
        ],
        SpaceKind::Euclid3 => vec!["X+*X3*X- - q*X3^2", "conj(X+) + conj(X3)", "dl+(X+*X-) + P3*X3", "star(X-, X+)"],
        SpaceKind::Euclid4 => vec!["X4*X1 - X1*X4", "conj(X1*X2)", "(1 + i)*X3/q^2"],
        SpaceKind::Minkowski => vec!["conj(X+)", "X0*X3 - X3*X0", "q^(-1/2)*X-*X+ + 2"],
    }
}

#[test]
fn corpus_round_trips() {
    for kind in SpaceKind::ALL {
        let s = preset(kind);
        for src in corpus(kind) {
            let e = parse(src, &s).unwrap();
            let text = e.to_string();
            let again = parse(&text, &s).unwrap();
            assert_eq!(again, e, "{kind}: {src} -> {text}");
            assert_eq!(again.to_string(), text);
            let a = Evaluator::new(&s, &e).unwrap().eval(&e).unwrap();
            let b = Evaluator::new(&s, &again).unwrap().eval(&again).unwrap();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn quantum_plane_relation_vanishes() {
    let s = preset(SpaceKind::QuantumPlane);
    assert!(normal_order("X1*X2 - q*X2*X1", &s).unwrap().is_zero());
}

#[test]
fn minkowski_conjugate_of_x_plus() {
    let s = preset(SpaceKind::Minkowski);
    let got = normal_order("conj(X+)", &s).unwrap();
    let minus: NCPoly<QFraction> = s.generator(s.gen_index("X-").unwrap());
    assert_eq!(got, minus.scale(&QFraction::from(qs("-q^(-1)"))));
}

#[test]
fn errors() {
    let s = preset(SpaceKind::Euclid3);
    assert!(matches!(parse("", &s), Err(Error::Syntax { pos: 0, .. })));
    assert!(matches!(parse("X+ *", &s), Err(Error::Syntax { .. })));
    assert!(matches!(parse("X+ / X3", &s), Err(Error::Syntax { pos: 3, .. })));
    assert!(matches!(parse("X+ )", &s), Err(Error::Syntax { pos: 3, .. })));
    assert!(matches!(parse("Y7 + 1", &s), Err(Error::UnknownSymbol(w)) if w == "Y7"));
    assert!(matches!(parse("dq+(X+)", &s), Err(Error::Syntax { .. })));
    let theta = parse("theta+*theta3", &s).unwrap();
    assert!(matches!(Evaluator::new(&s, &theta), Err(Error::UnsupportedSpace(_))));
    assert!(matches!(normal_order("conj(P3)", &s), Err(Error::UnsupportedSpace(_))));
}

#[test]
fn constants_fold() {
    let s = preset(SpaceKind::QuantumPlane);
    assert_eq!(parse("q^(1/2)*q^(1/2) - q", &s).unwrap(), Expr::Scalar(qs("0")));
    assert_eq!(parse("conj(i*q)", &s).unwrap(), Expr::Scalar(qs("-i*q")));
    assert_eq!(parse("(X1)", &s).unwrap().to_string(), "X1");
    assert_eq!(parse("X1^0", &s).unwrap(), Expr::Scalar(qs("1")));
}

fn atom() -> impl Strategy<Value = String> {
    prop_oneof![
        Just("X1".to_string()),
        Just("X2".to_string()),
        Just("P1".to_string()),
        (-3i64..4).prop_map(|n| n.to_string()),
        Just("q".to_string()),
        Just("q^(-1/2)".to_string()),
        Just("i".to_string()),
    ]
}

fn source() -> impl Strategy<Value = String> {
    atom().prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{} + {}", a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{} - ({})", a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({})*({})", a, b)),
            inner.clone().prop_map(|a| format!("-({})", a)),
            inner.clone().prop_map(|a| format!("({})^2", a)),
        ]
    })
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(src in source()) {
        let s = preset(SpaceKind::QuantumPlane);
        let e = parse(&src, &s).unwrap();
        let text = e.to_string();
        let again = parse(&text, &s).unwrap();
        prop_assert_eq!(&again, &e, "{} -> {}", src, text);
        prop_assert_eq!(again.to_string(), text);
    }
}
