//! Verification suites. Every randomized check draws from its own ChaCha
//! stream derived from the seed and the check id, so a suite gives the same
//! report alone or inside `all`.

use std::sync::Arc;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qspace_core::grassmann::{GrassmannSpace, Supernumber, Variant};
use qspace_core::lattice::{
    density, expectation, integrate, integrate_separable, jackson_1d, lattice_delta, normalize, spectral_apply, Bound,
    HalfLine, LatticeFunction, LatticeSpec, NegBranch, Observable, Projector, Quasipoint, Sampling,
};
use qspace_core::linalg::inverse;
use qspace_core::ncalg::{CommPoly, Word};
use qspace_core::phasespace::{rmatrix_checks, Calculus, DerivKind, Ordering, PhaseAlgebra};
use qspace_core::qexp::{classical_exponential, residual, solve, solve_qexp, solve_qexp_dual};
use qspace_core::{qs, Error, GaussRat, NCPoly, QFraction, QScalar, Ring, SpaceKind, SpaceSpec};

use crate::config::load_space;
use crate::expr;
use crate::report::{Check, Report, Status};

pub const SUITES: [&str; 7] = ["algebra", "conjugation", "phasespace", "qexp", "grassmann", "lattice", "all"];

/// Random triples per space in the associativity check.
pub const ASSOC_TRIPLES: usize = 1000;
/// Maximal total degree `deg a + deg b + deg c` of an associativity triple.
pub const ASSOC_DEGREE: usize = 6;
pub const INVOLUTION_SAMPLES: usize = 500;
pub const SEPARABLE_TOL: f64 = 1e-12;
pub const NORMALIZATION_TOL: f64 = 1e-12;
pub const REALNESS_TOL: f64 = 1e-10;
/// Random states drawn for the expectation checks.
pub const STATES: usize = 5;
/// `q` of the Riemann-limit check; the tolerance is `5 (q - 1)`.
pub const RIEMANN_Q: f64 = 1.001;

fn rng(seed: u64, id: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

fn spaces() -> anyhow::Result<Vec<SpaceSpec>> {
    SpaceKind::ALL.iter().map(|k| load_space(k.name())).collect()
}

pub fn run_suite(name: &str, q: f64, seed: u64) -> anyhow::Result<Report> {
    let checks = match name {
        "algebra" => algebra(seed)?,
        "conjugation" => conjugation(seed)?,
        "phasespace" => phasespace()?,
        "qexp" => qexp()?,
        "grassmann" => grassmann(),
        "lattice" => {
            let mut c = lattice(q, seed)?;
            c.extend(expectations(q, seed)?);
            c
        }
        "all" => {
            let mut c = Vec::new();
            for s in &SUITES[..6] {
                c.extend(run_suite(s, q, seed)?.checks);
            }
            c
        }
        other => anyhow::bail!("unknown suite `{}` (expected one of {})", other, SUITES.join(", ")),
    };
    Ok(Report::new(name, q, seed, checks))
}

fn random_scalar(rng: &mut ChaCha8Rng) -> QScalar {
    let re = rng.gen_range(-3i64..=3);
    let im = if rng.gen_bool(0.25) { rng.gen_range(-2i64..=2) } else { 0 };
    let c = if re == 0 && im == 0 { GaussRat::from_int(1) } else { GaussRat::from_parts((re, 1), (im, 1)) };
    QScalar::monomial(c, rng.gen_range(-2i64..=2))
}

/// Sum of up to three terms with words of length at most `max_len`.
pub fn random_element(s: &SpaceSpec, rng: &mut ChaCha8Rng, max_len: usize) -> NCPoly {
    let n = s.ngens() as u8;
    let terms = rng.gen_range(1..=3);
    let raw: Vec<(Word, QScalar)> = (0..terms)
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            let w: Word = (0..len).map(|_| rng.gen_range(0..n)).collect();
            (w, random_scalar(rng))
        })
        .collect();
    s.poly(&raw).expect("generated words are valid")
}

fn flip(diff: &[(Word, QScalar)]) -> Vec<(Word, QScalar)> {
    diff.iter().map(|(w, c)| (w.clone(), -c)).collect()
}

fn algebra(seed: u64) -> anyhow::Result<Vec<Check>> {
    let mut out = Vec::new();
    for s in spaces()? {
        let k = s.name();
        let mut bad = None;
        for diff in s.relation_differences() {
            for d in [diff.clone(), flip(&diff)] {
                let r = s.poly(&d)?;
                if !r.is_zero() && bad.is_none() {
                    bad = Some(format!("{}", r));
                }
            }
        }
        out.push(Check::exact(
            format!("algebra/{}/relations", k),
            "coordinate relations",
            "each defining relation rewrites to a zero difference in both orientations",
            bad.is_none(),
            bad,
        ));

        let fails = s.algebra.overlap_failures();
        out.push(Check::exact(
            format!("algebra/{}/confluence", k),
            "coordinate relations",
            "every overlap ambiguity resolves",
            fails.is_empty(),
            fails.first().map(|f| format!("{:?}", f)),
        ));

        let id = format!("algebra/{}/associativity", k);
        let mut r = rng(seed, &id);
        let mut bad = None;
        for _ in 0..ASSOC_TRIPLES {
            let mut deg = [0usize; 3];
            let mut left = ASSOC_DEGREE;
            for d in deg.iter_mut() {
                *d = r.gen_range(0..=left);
                left -= *d;
            }
            deg.shuffle(&mut r);
            let a = random_element(&s, &mut r, deg[0]);
            let b = random_element(&s, &mut r, deg[1]);
            let c = random_element(&s, &mut r, deg[2]);
            let left = a.ncmul(&b)?.ncmul(&c)?;
            let right = a.ncmul(&b.ncmul(&c)?)?;
            if left != right {
                bad = Some(format!("a = {}, b = {}, c = {}", a, b, c));
                break;
            }
        }
        out.push(Check::exact(
            id,
            "normal ordering",
            "(a b) c = a (b c)",
            bad.is_none(),
            bad.or_else(|| Some(format!("{} triples", ASSOC_TRIPLES))),
        ));

        let id = format!("algebra/{}/termination", k);
        let mut r = rng(seed, &id);
        let mut bad = None;
        let n = s.ngens() as u8;
        for _ in 0..50 {
            let len = r.gen_range(0..=8);
            let w: Word = (0..len).map(|_| r.gen_range(0..n)).collect();
            let (_, longest, bound) = s.algebra.normal_order_traced(&[(w.clone(), QScalar::one())])?;
            if longest as u128 > bound {
                bad = Some(format!("{:?}: {} > {}", w, longest, bound));
                break;
            }
        }
        out.push(Check::exact(
            id,
            "normal ordering",
            "rewrite sequences stay within the shortlex bound",
            bad.is_none(),
            bad,
        ));
    }
    Ok(out)
}

fn conjugation(seed: u64) -> anyhow::Result<Vec<Check>> {
    let mut out = Vec::new();
    for s in spaces()? {
        let k = s.name();
        let id = format!("conjugation/{}/involution", k);
        let mut r = rng(seed, &id);
        let mut bad = None;
        for _ in 0..INVOLUTION_SAMPLES {
            let a = random_element(&s, &mut r, 4);
            let twice = s.conjugate(&s.conjugate(&a)?)?;
            if twice != a {
                bad = Some(format!("a = {}, conj(conj(a)) = {}", a, twice));
                break;
            }
        }
        out.push(Check::exact(
            id,
            "conjugation properties",
            "conj(conj(a)) = a",
            bad.is_none(),
            bad.or_else(|| Some(format!("{} elements", INVOLUTION_SAMPLES))),
        ));

        let id = format!("conjugation/{}/antihomomorphism", k);
        let mut r = rng(seed, &id);
        let mut bad = None;
        for _ in 0..100 {
            let a = random_element(&s, &mut r, 3);
            let b = random_element(&s, &mut r, 3);
            let lhs = s.conjugate(&a.ncmul(&b)?)?;
            let rhs = s.conjugate(&b)?.ncmul(&s.conjugate(&a)?)?;
            if lhs != rhs {
                bad = Some(format!("a = {}, b = {}", a, b));
                break;
            }
        }
        out.push(Check::exact(
            id,
            "conjugation properties",
            "conj(a b) = conj(b) conj(a)",
            bad.is_none(),
            bad,
        ));

        let mut bad = None;
        for diff in s.relation_differences() {
            let c = s.conjugate_raw(&diff)?;
            if !c.is_zero() {
                bad = Some(format!("{}", c));
                break;
            }
        }
        out.push(Check::exact(
            format!("conjugation/{}/relations", k),
            "conjugation properties",
            "conjugates of the defining relations hold",
            bad.is_none(),
            bad,
        ));

        if let Some(rc) = &s.real_coords {
            let mut bad = None;
            for i in 0..s.ngens() as u8 {
                let y = s.real_generator(i)?;
                if s.conjugate(&y)? != y {
                    bad = Some(format!("{} = {}", rc.labels[i as usize], y));
                    break;
                }
            }
            out.push(Check::exact(
                format!("conjugation/{}/real-coordinates", k),
                "real coordinates",
                "conj(Y^i) = Y^i",
                bad.is_none(),
                bad,
            ));
        }
    }

    let mk = load_space("minkowski")?;
    let got = expr::normal_order("conj(X+)", &mk)?;
    let want = expr::normal_order("-q^(-1)*X-", &mk)?;
    out.push(Check::exact(
        "conjugation/minkowski/x-plus",
        "conjugation rules",
        "conj(X+) = -q^(-1) X-",
        got == want,
        Some(got.to_string()),
    ));
    Ok(out)
}

/// Pairs `(k, l)` where the momentum-position rule fails to rewrite to zero.
pub fn leibniz_failures(s: &SpaceSpec, calc: Calculus, order: Ordering) -> Result<Vec<(u8, u8)>, Error> {
    let ph = PhaseAlgebra::new(s, calc, order)?;
    let rm = s.rmatrix.as_ref().ok_or_else(|| Error::MissingRMatrix(s.name().into()))?;
    let k = s.k_const.clone().ok_or_else(|| Error::MissingRMatrix(s.name().into()))?;
    let (factor, metric) = match calc {
        Calculus::Unhatted => (k, &s.metric),
        Calculus::Hatted => (
            k.inv_monomial().ok_or_else(|| Error::Invalid("k is not a monomial".into()))?,
            &s.metric_hat,
        ),
    };
    let n = s.ngens() as u8;
    let mut bad = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let mut raw: Vec<(Word, QScalar)> = vec![(vec![ph.p(a), ph.x(b)], QScalar::one())];
            for m in 0..n {
                for l in 0..n {
                    let e = match calc {
                        Calculus::Unhatted => rm.rhat_inv(a, b, m, l),
                        Calculus::Hatted => rm.rhat(a, b, m, l),
                    };
                    if !e.is_zero() {
                        raw.push((vec![ph.x(m), ph.p(l)], -(&factor * e)));
                    }
                }
            }
            raw.push((vec![], -(&QScalar::i() * &metric[a as usize][b as usize])));
            if !ph.normal_order(&raw)?.is_zero() {
                bad.push((a, b));
            }
        }
    }
    Ok(bad)
}

/// `P^k X^l - X^l P^k` at `q = 1` minus `i g^{kl}(1)`, for every pair.
pub fn commutator_failures(s: &SpaceSpec, calc: Calculus) -> Result<Vec<(u8, u8)>, Error> {
    let ph = PhaseAlgebra::new(s, calc, Ordering::XP)?;
    let metric = match calc {
        Calculus::Unhatted => &s.metric,
        Calculus::Hatted => &s.metric_hat,
    };
    let n = s.ngens() as u8;
    let mut bad = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let raw = vec![
                (vec![ph.p(a), ph.x(b)], QScalar::one()),
                (vec![ph.x(b), ph.p(a)], -QScalar::one()),
            ];
            let at_one = ph.normal_order(&raw)?.map_coeffs(|c| QScalar::constant(c.at_one()));
            let g = QScalar::constant(GaussRat::i()) * QScalar::constant(metric[a as usize][b as usize].at_one());
            if at_one != NCPoly::constant(ph.system(), g) {
                bad.push((a, b));
            }
        }
    }
    Ok(bad)
}

fn calc_name(c: Calculus) -> &'static str {
    match c {
        Calculus::Unhatted => "unhatted",
        Calculus::Hatted => "hatted",
    }
}

fn pairs_witness(s: &SpaceSpec, bad: &[(u8, u8)]) -> Option<String> {
    if bad.is_empty() {
        return None;
    }
    let l = s.labels();
    Some(
        bad.iter()
            .map(|(a, b)| format!("({},{})", l[*a as usize], l[*b as usize]))
            .collect::<Vec<_>>()
            .join(" "),
    )
}

fn phasespace() -> anyhow::Result<Vec<Check>> {
    let mut out = Vec::new();
    for name in ["quantum_plane", "euclid3"] {
        let s = load_space(name)?;
        let rm = s.rmatrix.as_ref().ok_or_else(|| anyhow::anyhow!("{} has no R-matrix", name))?;
        let rep = rmatrix_checks(rm)?;
        let rows = [
            ("braid", "R12 R23 R12 = R23 R12 R23", rep.braid),
            ("inverse", "R R^-1 = 1", rep.inverse),
            ("flip-limit", "R = flip at q = 1", rep.flip_limit),
            ("minimal-polynomial", "product of (R - eigenvalue) vanishes", rep.minimal_polynomial.unwrap_or(true)),
        ];
        for (id, anchor, ok) in rows {
            out.push(Check::exact(format!("phasespace/{}/rmatrix-{}", name, id), "R-matrix", anchor, ok, None));
        }
        for calc in [Calculus::Unhatted, Calculus::Hatted] {
            let anchor = match calc {
                Calculus::Unhatted => "P^k X^l - k (R^-1)^{kl}_{mn} X^m P^n = i g^{kl}",
                Calculus::Hatted => "P^k X^l - k^-1 R^{kl}_{mn} X^m P^n = i ghat^{kl}",
            };
            for order in [Ordering::XP, Ordering::PX] {
                let oname = match order {
                    Ordering::XP => "xp",
                    Ordering::PX => "px",
                };
                let id = format!("phasespace/{}/leibniz-{}-{}", name, calc_name(calc), oname);
                out.push(match leibniz_failures(&s, calc, order) {
                    Ok(bad) => Check::exact(id, "momentum-position rule", anchor, bad.is_empty(), pairs_witness(&s, &bad)),
                    Err(e) => Check::error(id, "momentum-position rule", anchor, e),
                });
                let ph = PhaseAlgebra::new(&s, calc, order)?;
                let fails = ph.system().overlap_failures();
                out.push(Check::exact(
                    format!("phasespace/{}/confluence-{}-{}", name, calc_name(calc), oname),
                    "momentum-position rule",
                    "every overlap ambiguity of the phase space resolves",
                    fails.is_empty(),
                    fails.first().map(|f| format!("{:?}", f)),
                ));
            }
            let id = format!("phasespace/{}/commutator-at-one-{}", name, calc_name(calc));
            let anchor = "P^k X^l - X^l P^k = i g^{kl} at q = 1";
            out.push(match commutator_failures(&s, calc) {
                Ok(bad) => Check::exact(id, "momentum-position rule", anchor, bad.is_empty(), pairs_witness(&s, &bad)),
                Err(e) => Check::error(id, "momentum-position rule", anchor, e),
            });
        }
    }
    Ok(out)
}

fn kind_id(k: DerivKind) -> String {
    k.to_string().replace(' ', "-")
}

/// The space with the metric of the given calculus, whose inverse enters
/// the classical exponential.
fn with_calculus_metric(s: &SpaceSpec, calc: Calculus) -> anyhow::Result<SpaceSpec> {
    let mut out = s.clone();
    if calc == Calculus::Hatted {
        let m: Vec<Vec<QFraction>> = s
            .metric_hat
            .iter()
            .map(|r| r.iter().map(|c| QFraction::from_scalar(c.clone())).collect())
            .collect();
        let inv = inverse(&m).ok_or_else(|| anyhow::anyhow!("{}: singular hatted metric", s.name()))?;
        out.metric = s.metric_hat.clone();
        out.metric_inverse = inv
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| c.as_scalar().cloned().ok_or_else(|| anyhow::anyhow!("metric inverse is not Laurent")))
                    .collect()
            })
            .collect::<anyhow::Result<_>>()?;
    }
    Ok(out)
}

fn qexp() -> anyhow::Result<Vec<Check>> {
    let mut out = Vec::new();
    for (name, degree) in [("quantum_plane", 8usize), ("euclid3", 4)] {
        let s = load_space(name)?;
        for kind in DerivKind::ALL {
            let id = format!("qexp/{}/residual-{}-n{}", name, kind_id(kind), degree);
            let anchor = "i d_j > exp(x|i^-1 p) = exp(x|i^-1 p) p_j";
            let u = solve(&s, kind, degree)?;
            let res = residual(&s, kind, &u)?;
            let witness = res.iter().next().map(|((j, x, p), c)| format!("j={} {:?} {:?}: {}", j, x, p, c));
            out.push(Check::exact(
                id,
                "momentum eigenfunctions",
                anchor,
                res.is_empty() && u.is_degree_paired(),
                witness.or_else(|| Some(format!("{} terms", u.terms().len()))),
            ));
        }
        for calc in [Calculus::Unhatted, Calculus::Hatted] {
            let want = classical_exponential(&with_calculus_metric(&s, calc)?, degree);
            for (dual, u) in [(false, solve_qexp(&s, calc, degree)?), (true, solve_qexp_dual(&s, calc, degree)?)] {
                let id = format!(
                    "qexp/{}/classical-limit-{}{}",
                    name,
                    calc_name(calc),
                    if dual { "-dual" } else { "" }
                );
                let got = u.at_one();
                out.push(Check::exact(
                    id,
                    "momentum eigenfunctions",
                    "exp(x|i^-1 p) = exp(-i x.p) at q = 1",
                    got.as_ref() == Some(&want),
                    None,
                ));
            }
        }
    }
    Ok(out)
}

fn grassmann() -> Vec<Check> {
    let mut out = Vec::new();
    let spot = |kind: SpaceKind, f: &str, g: Option<&str>, want: &str| -> (bool, String) {
        let gs = GrassmannSpace::preset(kind);
        let fm = Supernumber::basis(gs.dim(), gs.mask(f).expect("label"));
        let gm = match g {
            Some(g) => Supernumber::basis(gs.dim(), gs.mask(g).expect("label")),
            None => Supernumber::one(gs.dim()),
        };
        let v = gs.sesquilinear(Variant::L, false, &fm, &gm).expect("form");
        (v == qs(want), v.to_string())
    };
    let spots = [
        ("quantum_plane/theta1-theta1", SpaceKind::QuantumPlane, "1", Some("1"), "q^(-1/2)", "<theta1, theta1>_L = q^(-1/2)"),
        ("euclid3/top-one", SpaceKind::Euclid3, "+,3,-", None, "-q^(-4)", "<theta+ theta3 theta-, 1>_L = -q^(-4)"),
        ("minkowski/diagonal", SpaceKind::Minkowski, "3/0,3", Some("3/0,3"), "q - q^3", "<theta3/0 theta3, theta3/0 theta3>_L = q - q^3"),
    ];
    for (id, kind, f, g, want, anchor) in spots {
        let (ok, got) = spot(kind, f, g, want);
        out.push(Check::exact(format!("grassmann/{}", id), "sesquilinear form tables", anchor, ok, Some(got)));
    }

    let deltas: [(SpaceKind, &str, [(Variant, &str, &str); 4]); 4] = [
        (SpaceKind::QuantumPlane, "1", [(Variant::L, "1", "2,1"), (Variant::RBar, "1", "2,1"), (Variant::LBar, "1", "1,2"), (Variant::R, "1", "1,2")]),
        (SpaceKind::Euclid3, "i", [(Variant::L, "i", "+,3,-"), (Variant::RBar, "i", "+,3,-"), (Variant::LBar, "i", "-,3,+"), (Variant::R, "i", "-,3,+")]),
        (SpaceKind::Euclid4, "1", [(Variant::L, "1", "4,3,2,1"), (Variant::RBar, "1", "4,3,2,1"), (Variant::LBar, "1", "1,2,3,4"), (Variant::R, "1", "1,2,3,4")]),
        (SpaceKind::Minkowski, "1", [(Variant::L, "1", "-,3/0,3,+"), (Variant::R, "1", "+,3,3/0,-"), (Variant::LBar, "1", "+,3/0,3,-"), (Variant::RBar, "1", "-,3,3/0,+")]),
    ];
    let kappas = [
        (SpaceKind::QuantumPlane, "q^3"),
        (SpaceKind::Euclid3, "-q^(-6)"),
        (SpaceKind::Euclid4, "q^(-4)"),
        (SpaceKind::Minkowski, "q^4"),
    ];
    for ((kind, vol, ds), (_, kappa)) in deltas.iter().zip(kappas) {
        let gs = GrassmannSpace::preset(*kind);
        let k = kind.name();
        let mut bad = None;
        for (v, c, w) in ds {
            let d = gs.delta(*v);
            let want: Vec<u8> = w
                .split(',')
                .map(|l| gs.labels.iter().position(|x| x == l).expect("label") as u8)
                .collect();
            if d.coeff != qs(c) || d.factors != want {
                bad = Some(format!("{}: {} {:?}", v, d.coeff, d.factors));
                break;
            }
        }
        out.push(Check::exact(
            format!("grassmann/{}/deltas", k),
            "Grassmann delta functions",
            "delta monomials per integral variant",
            bad.is_none(),
            bad,
        ));
        out.push(Check::exact(
            format!("grassmann/{}/vol", k),
            "Grassmann delta functions",
            "volume constant",
            gs.vol == qs(vol),
            Some(gs.vol.to_string()),
        ));
        out.push(Check::exact(
            format!("grassmann/{}/kappa", k),
            "Grassmann scaling constants",
            "kappa of the antisymmetrized sector",
            gs.kappa == qs(kappa),
            Some(gs.kappa.to_string()),
        ));

        let (mut total, mut paired) = (0usize, 0usize);
        for v in Variant::ALL {
            for primed in [false, true] {
                for t in gs.table(v, primed) {
                    total += 1;
                    if (t.f.count_ones() + t.g.count_ones()) as usize == gs.dim() {
                        paired += 1;
                    }
                }
            }
        }
        out.push(Check::exact(
            format!("grassmann/{}/pairing", k),
            "sesquilinear form tables",
            "only complementary degrees pair",
            total > 0 && paired == total,
            Some(format!("{}/{}", paired, total)),
        ));

        if matches!(kind, SpaceKind::QuantumPlane | SpaceKind::Euclid3) {
            let mut bad = None;
            for v in Variant::ALL {
                for primed in [false, true] {
                    if gs.gram_determinant(v, primed).is_zero() {
                        bad = Some(format!("{} primed={}", v, primed));
                    }
                }
            }
            out.push(Check::exact(
                format!("grassmann/{}/gram-determinant", k),
                "sesquilinear form tables",
                "Gram determinant is a nonzero Laurent polynomial",
                bad.is_none(),
                bad.or_else(|| Some(gs.gram_determinant(Variant::L, false).to_string())),
            ));
        }
    }
    out
}

fn frac(n: i64) -> QFraction {
    QFraction::from_scalar(QScalar::from_int(n))
}

/// Volume element as printed, per space, with the signs of the verbatim
/// negative branch.
pub fn printed_weight(kind: SpaceKind, alpha: &[QScalar], p: &Quasipoint) -> QScalar {
    let (pre, steps): (&str, &[i64]) = match kind {
        SpaceKind::QuantumPlane => ("(q^2 - 1)^2", &[2, 2]),
        SpaceKind::Euclid3 => ("(q^4 - 1)^2*(q^2 - 1)", &[4, 2, 4]),
        SpaceKind::Euclid4 => ("(q^4 - 1)^4", &[2, 2, 2, 2]),
        SpaceKind::Minkowski => ("(1 - q^(-2))^4", &[2, 2, 2, 2]),
    };
    let mut w = qs(pre);
    for j in 0..steps.len() {
        let c = &alpha[j] * &QScalar::q_pow(steps[j] * p.exps[j] as i64);
        w = &w * &if p.signs[j] < 0 { -c } else { c };
    }
    w
}

fn random_samples(spec: &Arc<LatticeSpec>, r: &mut ChaCha8Rng) -> LatticeFunction<QFraction> {
    let samples: Vec<_> = spec.points().into_iter().map(|p| (p, frac(r.gen_range(-9i64..=9)))).collect();
    LatticeFunction::from_samples(spec.clone(), samples).expect("window points")
}

fn lattice(q: f64, seed: u64) -> anyhow::Result<Vec<Check>> {
    let mut out = Vec::new();
    let qp = load_space("quantum_plane")?;
    let e3 = load_space("euclid3")?;

    let id = "lattice/jackson-scaling";
    let mut r = rng(seed, id);
    let mut bad = None;
    'outer: for _ in 0..20 {
        let coeffs: Vec<i64> = (0..r.gen_range(1..5)).map(|_| r.gen_range(-5i64..5)).collect();
        let a = r.gen_range(1i32..5);
        let f = |s: i8, k: i32, x: &QFraction| {
            let idx = k + 2;
            if idx < 0 || idx as usize >= coeffs.len() {
                return QFraction::zero();
            }
            frac(coeffs[idx as usize] * if s < 0 { 3 } else { 1 }).mul(x).mul(x)
        };
        let qa = QFraction::from_scalar(QScalar::q_pow(a as i64));
        let g = |s: i8, k: i32, x: &QFraction| f(s, k + 1, &qa.mul(x));
        let c = qs("3/2");
        for branch in [NegBranch::Riemann, NegBranch::Verbatim] {
            for half in [HalfLine::Pos, HalfLine::Neg, HalfLine::Full] {
                let lhs = jackson_1d(g, a, &c, q, half, (-8, 8), branch)?;
                let rhs = jackson_1d(f, a, &c, q, half, (-8, 8), branch)?;
                let inv = QFraction::from_scalar(QScalar::q_pow(-(a as i64)));
                if lhs != rhs.mul(&inv) {
                    bad = Some(format!("a = {}, coeffs {:?}", a, coeffs));
                    break 'outer;
                }
            }
        }
    }
    out.push(Check::exact(
        id,
        "Jackson integral",
        "integral of f(q^a x) = q^-a integral of f(x)",
        bad.is_none(),
        bad,
    ));

    let spec = Arc::new(LatticeSpec::new(qp.clone(), q, -2, 2)?.with_alpha(vec![qs("2"), qs("q")])?);
    let id = "lattice/delta-reproducing";
    let mut r = rng(seed, id);
    let pts = spec.points();
    let (mut bad_rep, mut bad_eig) = (None, None);
    for _ in 0..20 {
        let f = random_samples(&spec, &mut r);
        let v0 = &pts[r.gen_range(0..pts.len())];
        let d = lattice_delta::<QFraction>(spec.clone(), v0)?;
        if integrate(&f.mul(&d)?) != f.get(v0) || integrate(&d) != QFraction::one() {
            bad_rep = Some(format!("at {}", v0));
        }
        for j in 0..spec.dim() {
            let cj = spectral_apply(|c: &[QFraction]| c[j].clone(), &d);
            if cj != d.scale(&QFraction::from_scalar(spec.coordinate_symbolic(v0, j))) {
                bad_eig = Some(format!("at {} coordinate {}", v0, j + 1));
            }
        }
    }
    out.push(Check::exact(
        id,
        "delta functions",
        "integral of f delta_v0 = f(v0)",
        bad_rep.is_none(),
        bad_rep,
    ));
    out.push(Check::exact(
        "lattice/position-eigen",
        "position eigenfunctions",
        "x^i delta_y = y^i delta_y",
        bad_eig.is_none(),
        bad_eig,
    ));

    let id = "lattice/projector-idempotence";
    let mut r = rng(seed, id);
    let spec = Arc::new(LatticeSpec::new(qp.clone(), q, -2, 2)?);
    let (mut bad_idem, mut bad_comp) = (None, None);
    for _ in 0..20 {
        let f = random_samples(&spec, &mut r);
        let mut bound = || Bound::At {
            sign: if r.gen_bool(0.5) { 1 } else { -1 },
            exp: r.gen_range(-2..=2),
        };
        let bounds = vec![bound(), bound()];
        let e = Projector::new(&spec, bounds.clone())?;
        let once = e.apply(&f);
        if e.apply(&once) != once || !e.apply(&f.sub(&once)?).samples().is_empty() {
            bad_idem = Some(format!("{:?}", bounds));
        }
        if Projector::completeness(&spec).apply(&f) != f {
            bad_comp = Some("completeness".into());
        }
    }
    out.push(Check::exact(id, "spectral projectors", "E E = E", bad_idem.is_none(), bad_idem));
    out.push(Check::exact(
        "lattice/projector-completeness",
        "spectral projectors",
        "E at the window maximum is the identity",
        bad_comp.is_none(),
        bad_comp,
    ));

    let ones = LatticeFunction::from_fn(spec.clone(), |_, _| frac(1));
    let theta = Projector::heaviside(&spec, 1)?.apply(&ones);
    let ok = theta.samples().len() * 2 == spec.points().len() && theta.samples().keys().all(|p| p.signs[1] < 0);
    out.push(Check::exact(
        "lattice/heaviside",
        "spectral projectors",
        "threshold at zero gives the q-Heaviside function",
        ok,
        Some(format!("{} of {} points", theta.samples().len(), spec.points().len())),
    ));

    let id = "lattice/spectral-homomorphism";
    let mut r = rng(seed, id);
    let spec3 = Arc::new(LatticeSpec::new(e3.clone(), q, -1, 1)?);
    let mut bad = None;
    for _ in 0..10 {
        let f = random_samples(&spec3, &mut r);
        let (a, b) = (frac(r.gen_range(-4..4)), frac(r.gen_range(-4..4)));
        let ff = |c: &[QFraction]| c[0].mul(&c[1]).add(&a);
        let gg = |c: &[QFraction]| c[2].mul(&c[2]).sub(&b.mul(&c[1]));
        let both = spectral_apply(ff, &spectral_apply(gg, &f));
        let product = spectral_apply(|c: &[QFraction]| ff(c).mul(&gg(c)), &f);
        if both != product || spectral_apply(|_: &[QFraction]| QFraction::one(), &f) != f {
            bad = Some(format!("a = {}, b = {}", a, b));
            break;
        }
    }
    out.push(Check::exact(id, "spectral decomposition", "F(X) G(X) = (F G)(X)", bad.is_none(), bad));

    for s in spaces()? {
        let k = s.name();
        let n = s.lattice_steps.len();
        let alpha: Vec<QScalar> = ["1", "2", "3/2", "1/3"][..n].iter().map(|a| qs(a)).collect();
        let base = LatticeSpec::new(s.clone(), q, -3, 2)?.with_alpha(alpha.clone())?;
        let mut worst: f64 = 0.0;
        for branch in [NegBranch::Riemann, NegBranch::Verbatim] {
            let spec = base.clone().with_branch(branch);
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
            let sep = integrate_separable(&spec, &refs)?;
            let full = integrate(&f);
            let scale: f64 = f.samples().iter().map(|(p, v)| (spec.weight::<Complex64>(p) * v).norm()).sum();
            worst = worst.max((full - sep).norm() / scale);
        }
        out.push(Check::numeric(
            format!("lattice/{}/separable", k),
            "Jackson integral",
            "lattice sum of a product = product of Jackson integrals",
            worst,
            SEPARABLE_TOL,
        ));

        let id = format!("lattice/{}/weights", k);
        let mut r = rng(seed, &id);
        let alpha: Vec<QScalar> = (0..n)
            .map(|_| ["1", "2", "1/2", "q", "3*q^(-1)"][r.gen_range(0..5)])
            .map(qs)
            .collect();
        let spec = LatticeSpec::new(s.clone(), q, -2, 2)?
            .with_alpha(alpha.clone())?
            .with_branch(NegBranch::Verbatim);
        let pts = spec.points();
        let mut reps: Vec<Quasipoint> = vec![Quasipoint::new(vec![1; n], vec![0; n])];
        reps.extend((0..8).map(|_| pts[r.gen_range(0..pts.len())].clone()));
        let (mut bad, mut err) = (None, 0.0f64);
        for p in &reps {
            let want = printed_weight(s.kind, &alpha, p);
            if spec.weight_symbolic(p) != want {
                bad = Some(format!("{}: {} vs {}", p, spec.weight_symbolic(p), want));
            }
            let w: Complex64 = spec.weight(p);
            let e = want.eval(q);
            err = err.max((w - e).norm() / e.norm());
        }
        out.push(Check::exact(
            id,
            "quasipoint volume elements",
            "weight = prefactor times product of signed alpha_j q^(a_j v_j)",
            bad.is_none(),
            bad.or_else(|| Some(format!("{} quasipoints", reps.len()))),
        ));
        out.push(Check::numeric(
            format!("lattice/{}/weights-eval", k),
            "quasipoint volume elements",
            "evaluated weight matches the evaluated volume element",
            err,
            1e-12,
        ));
    }

    let f = |_: i8, _: i32, x: &Complex64| if x.re <= 1.0 { x * x } else { Complex64::new(0.0, 0.0) };
    let v = jackson_1d(f, 2, &QScalar::one(), RIEMANN_Q, HalfLine::Pos, (-20000, 0), NegBranch::Riemann)?;
    out.push(Check::numeric(
        "lattice/riemann-limit",
        "Jackson integral",
        "integral of x^2 over [0, 1] tends to 1/3 as q -> 1",
        (v - Complex64::new(1.0 / 3.0, 0.0)).norm(),
        5.0 * (RIEMANN_Q - 1.0),
    ));
    Ok(out)
}

/// Random real-coefficient `ψ` of degree at most two.
/// A polynomial in the self-conjugate coordinates with real rational
/// coefficients, returned as a coefficient function in the generators.
pub fn random_state(space: &SpaceSpec, r: &mut ChaCha8Rng) -> anyhow::Result<CommPoly<QFraction>> {
    let n = space.ngens();
    let ys = space.real_system()?;
    let mut raw: Vec<(Word, QFraction)> = vec![(Word::new(), frac(r.gen_range(1..=3)))];
    for _ in 0..r.gen_range(1..=4) {
        let w: Word = (0..r.gen_range(1..=2)).map(|_| r.gen_range(0..n) as u8).collect();
        let c = QFraction::new(QScalar::from_int(r.gen_range(-3..=3)), QScalar::from_int(r.gen_range(1..=3))).expect("nonzero");
        raw.push((w, c));
    }
    let y = NCPoly::from_raw(&ys, &raw)?;
    Ok(qspace_core::ncalg::dequantize(&space.from_real_coords(&y)?))
}

fn expectations(q: f64, seed: u64) -> anyhow::Result<Vec<Check>> {
    let mut out = Vec::new();
    let e3 = load_space("euclid3")?;
    let spec = Arc::new(LatticeSpec::new(e3.clone(), q, -2, 1)?.with_sampling(Sampling::Real)?);

    let one = CommPoly::constant(3, QFraction::one());
    let mut bad = None;
    for k in 0..3u8 {
        let op = Observable::real_part(&e3, k)?;
        let e: QFraction = expectation(spec.clone(), &op, &one)?;
        if !e.is_zero() {
            bad = Some(format!("k = {}: {}", k, e));
        }
    }
    out.push(Check::exact(
        "expectation/euclid3/oddness",
        "expectation values",
        "<(X^k + conj X^k)/2> = 0 for psi = 1 on a symmetric window",
        bad.is_none(),
        bad,
    ));

    let id = "expectation/euclid3/normalization";
    let mut r = rng(seed, id);
    let (mut norm_err, mut imag): (f64, f64) = (0.0, 0.0);
    let (mut normalized, mut rejected) = (0, Vec::new());
    for _ in 0..STATES {
        let psi = random_state(&e3, &mut r)?;
        let norm = match normalize(spec.clone(), &psi) {
            Ok(n) => {
                norm_err = norm_err.max((integrate(&n.density) - Complex64::new(1.0, 0.0)).norm());
                normalized += 1;
                n.norm
            }
            Err(Error::NormNotPositive(_)) => {
                let v = integrate(&density::<Complex64>(spec.clone(), &psi)?);
                rejected.push(format!("{:.4e}", v.re));
                v
            }
            Err(e) => return Err(e.into()),
        };
        for k in 0..3u8 {
            let op = Observable::real_part(&e3, k)?;
            let e: Complex64 = expectation(spec.clone(), &op, &psi)?;
            imag = imag.max((e / norm.norm()).im.abs());
        }
    }
    let mut c = Check::numeric(id, "expectation values", "integral of the normalized density = 1", norm_err, NORMALIZATION_TOL);
    if normalized == 0 {
        c.status = Status::Fail;
    }
    c.witness = Some(format!(
        "{:.3e} over {} of {} states; non-positive norms: {}",
        norm_err,
        normalized,
        STATES,
        if rejected.is_empty() { "none".to_string() } else { rejected.join(", ") }
    ));
    out.push(c);
    out.push(Check::numeric(
        "expectation/euclid3/realness",
        "expectation values",
        "expectation values are real quantities",
        imag,
        REALNESS_TOL,
    ));
    Ok(out)
}
