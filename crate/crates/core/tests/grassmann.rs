use proptest::prelude::*;
use qspace_core::grassmann::{determinant, GrassmannSpace, Supernumber, Variant};
use qspace_core::{qs, GaussRat, QFraction, QScalar, SpaceKind};

fn space(kind: SpaceKind) -> GrassmannSpace {
    GrassmannSpace::preset(kind)
}

fn basis(g: &GrassmannSpace, text: &str) -> Supernumber {
    Supernumber::basis(g.dim(), g.mask(text).unwrap())
}

#[test]
fn quantum_plane_theta_one() {
    let g = space(SpaceKind::QuantumPlane);
    let t = basis(&g, "1");
    assert_eq!(g.sesquilinear(Variant::L, false, &t, &t).unwrap(), qs("q^(-1/2)"));
    let c = g.combined_form(1, false, &t, &t).unwrap();
    assert_eq!(c, QFraction::from(qs("-q^(-1/2)")));
}

#[test]
fn euclid3_top_against_constant() {
    let g = space(SpaceKind::Euclid3);
    let f = basis(&g, "+,3,-");
    let one = Supernumber::one(3);
    assert_eq!(g.sesquilinear(Variant::L, false, &f, &one).unwrap(), qs("-q^(-4)"));
}

#[test]
fn minkowski_diagonal_term() {
    let g = space(SpaceKind::Minkowski);
    let f = basis(&g, "3/0,3");
    assert_eq!(g.sesquilinear(Variant::L, false, &f, &f).unwrap(), qs("q - q^3"));
}

#[test]
fn constants_pair_only_with_top_degree() {
    for kind in SpaceKind::ALL {
        let g = space(kind);
        let one = Supernumber::one(g.dim());
        for v in Variant::ALL {
            for primed in [false, true] {
                assert!(g.sesquilinear(v, primed, &one, &one).unwrap().is_zero());
                assert!(!g.table(v, primed).is_empty(), "{kind} {v} {primed}");
                for t in g.table(v, primed) {
                    assert_eq!(
                        (t.f.count_ones() + t.g.count_ones()) as usize,
                        g.dim(),
                        "{kind} {v} primed={primed}"
                    );
                }
            }
        }
    }
}

#[test]
fn printed_tables_coincide_where_stated() {
    for kind in [SpaceKind::QuantumPlane, SpaceKind::Euclid3, SpaceKind::Euclid4] {
        let g = space(kind);
        for primed in [false, true] {
            assert_eq!(g.table(Variant::L, primed), g.table(Variant::RBar, primed));
            assert_eq!(g.table(Variant::LBar, primed), g.table(Variant::R, primed));
        }
    }
    let g = space(SpaceKind::Minkowski);
    for primed in [false, true] {
        for a in Variant::ALL {
            for b in Variant::ALL {
                if a < b {
                    assert_ne!(g.table(a, primed), g.table(b, primed));
                }
            }
        }
    }
}

#[test]
fn minkowski_errata_are_flagged() {
    let g = space(SpaceKind::Minkowski);
    let errs = g.errata();
    let rbar_primed = errs.iter().find(|e| e.variant == Variant::RBar && e.primed).unwrap();
    assert_eq!(rbar_primed.printed.f, g.mask("-,3/0,+").unwrap());
    let verbatim = g.verbatim_table(Variant::RBar, true);
    assert!(verbatim.iter().any(|t| (t.f.count_ones() + t.g.count_ones()) != 4));
    assert!(errs.iter().any(|e| e.variant == Variant::LBar && !e.primed));
}

#[test]
fn deltas_vols_and_kappas() {
    let qp = space(SpaceKind::QuantumPlane);
    let d = qp.delta(Variant::L);
    assert_eq!(d.coeff, QScalar::one());
    assert_eq!(d.factors, vec![1, 0]);
    let e3 = space(SpaceKind::Euclid3);
    assert_eq!(e3.delta(Variant::L).coeff, QScalar::i());
    assert_eq!(e3.vol, QScalar::i());
    let mk = space(SpaceKind::Minkowski);
    assert_eq!(mk.delta(Variant::R).factors, vec![0, 1, 2, 3]);
    let kappas = [("q^3", SpaceKind::QuantumPlane), ("-q^(-6)", SpaceKind::Euclid3), ("q^(-4)", SpaceKind::Euclid4), ("q^4", SpaceKind::Minkowski)];
    for (k, kind) in kappas {
        assert_eq!(space(kind).kappa, qs(k));
    }
}

#[test]
fn gram_determinants() {
    for kind in [SpaceKind::QuantumPlane, SpaceKind::Euclid3] {
        let g = space(kind);
        for v in Variant::ALL {
            for primed in [false, true] {
                let det = g.gram_determinant(v, primed);
                assert!(!det.is_zero(), "{kind} {v}");
            }
        }
    }
    let g = space(SpaceKind::QuantumPlane);
    let at_one = g.gram_determinant(Variant::L, false).at_one();
    assert_ne!(at_one, GaussRat::default());
}

#[test]
fn determinant_matches_small_cases() {
    let m = vec![
        vec![qs("1"), qs("2"), qs("0")],
        vec![qs("q"), qs("1"), qs("3")],
        vec![qs("0"), qs("i"), qs("1")],
    ];
    // 1*(1 - 3i) - 2*(q - 0) + 0
    assert_eq!(determinant(&m), qs("1 - 3*i - 2*q"));
}

fn arb_scalar() -> impl Strategy<Value = QScalar> {
    (-4i64..5, -4i64..5, -3i64..4).prop_map(|(a, b, e)| {
        QScalar::constant(GaussRat::from_parts((a, 1), (b, 1))) * QScalar::q_pow(e)
    })
}

fn arb_super(n: usize) -> impl Strategy<Value = Supernumber> {
    prop::collection::vec(arb_scalar(), 1 << n).prop_map(move |c| Supernumber::from_coeffs(n, c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn forms_are_sesquilinear(f in arb_super(3), h in arb_super(3), a in arb_scalar()) {
        let g = space(SpaceKind::Euclid3);
        for v in Variant::ALL {
            let base = g.sesquilinear(v, false, &f, &h).unwrap();
            prop_assert_eq!(g.sesquilinear(v, false, &f.scale(&a), &h).unwrap(), &a.conj() * &base);
            prop_assert_eq!(g.sesquilinear(v, false, &f, &h.scale(&a)).unwrap(), &a * &base);
            let base = g.sesquilinear(v, true, &f, &h).unwrap();
            prop_assert_eq!(g.sesquilinear(v, true, &f.scale(&a), &h).unwrap(), &a * &base);
            prop_assert_eq!(g.sesquilinear(v, true, &f, &h.scale(&a)).unwrap(), &a.conj() * &base);
        }
    }

    #[test]
    fn combined_form_is_the_half_sum(f in arb_super(4), h in arb_super(4)) {
        let g = space(SpaceKind::Minkowski);
        let sum = g.sesquilinear(Variant::LBar, false, &f, &h).unwrap() + g.sesquilinear(Variant::R, false, &f, &h).unwrap();
        let want = QFraction::new(sum, QScalar::from_int(2)).unwrap();
        prop_assert_eq!(g.combined_form(2, false, &f, &h).unwrap(), want);
    }
}
