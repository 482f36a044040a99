//! Built-in data for the four quantum spaces.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::rewrite::{RewriteSystem, Rule};
use super::space::{LinearImages, RealCoords, SpaceKind, SpaceSpec};
use crate::linalg::inverse;
use crate::phasespace::RMatrix;
use crate::scalar::{qs, QFraction, QScalar};

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn idx(gens: &[String], name: &str) -> u8 {
    gens.iter()
        .position(|g| g == name)
        .unwrap_or_else(|| panic!("unknown generator {}", name)) as u8
}

fn word(gens: &[String], text: &str) -> Vec<u8> {
    text.split_whitespace().map(|s| idx(gens, s)).collect()
}

fn rules(gens: &[String], table: &[(&str, &[(&str, &str)])]) -> Vec<Rule> {
    table
        .iter()
        .map(|(lhs, rhs)| {
            let l = word(gens, lhs);
            Rule {
                lhs: [l[0], l[1]],
                rhs: rhs.iter().map(|(w, c)| (word(gens, w), qs(c))).collect(),
            }
        })
        .collect()
}

fn matrix(gens: &[String], entries: &[(&str, &str, &str)]) -> Vec<Vec<QScalar>> {
    let n = gens.len();
    let mut m = alloc::vec![alloc::vec![QScalar::zero(); n]; n];
    for (i, j, v) in entries {
        m[idx(gens, i) as usize][idx(gens, j) as usize] = qs(v);
    }
    m
}

fn invert(m: &[Vec<QScalar>]) -> Vec<Vec<QScalar>> {
    let f: Vec<Vec<QFraction>> = m
        .iter()
        .map(|r| r.iter().map(|v| QFraction::from_scalar(v.clone())).collect())
        .collect();
    inverse(&f)
        .expect("metric is invertible")
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|v| v.as_scalar().expect("Laurent inverse").clone())
                .collect()
        })
        .collect()
}

/// `X̄^i = s·Σ_j g_{ij} X^j`.
fn conj_from_metric(g_lower: &[Vec<QScalar>], sign: i64) -> LinearImages<QScalar> {
    let s = QScalar::from_int(sign);
    g_lower
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j as u8, &s * v))
                .collect()
        })
        .collect()
}

fn images(gens: &[String], table: &[(&str, &[(&str, &str)])]) -> LinearImages<QScalar> {
    let mut out = alloc::vec![Vec::new(); gens.len()];
    for (g, img) in table {
        out[idx(gens, g) as usize] = img.iter().map(|(h, c)| (idx(gens, h), qs(c))).collect();
    }
    out
}

fn frac(num: &str, den: &str) -> QFraction {
    QFraction::new(qs(num), qs(den)).expect("nonzero denominator")
}

fn real_coords(gens: &[String], names: &[&str], table: &[&[(&str, &str, &str)]]) -> RealCoords {
    RealCoords {
        labels: labels(names),
        to_x: table
            .iter()
            .map(|row| row.iter().map(|(g, n, d)| (idx(gens, g), frac(n, d))).collect())
            .collect(),
    }
}

fn rmatrix(gens: &[String], rhat: &[(&str, &str)], rhat_inv: &[(&str, &str)], eig: &[&str]) -> RMatrix {
    let parse = |tab: &[(&str, &str)]| {
        tab.iter()
            .map(|(key, v)| {
                let w = word(gens, key);
                ((w[0], w[1]), (w[2], w[3]), qs(v))
            })
            .collect::<Vec<_>>()
    };
    RMatrix::new(
        gens.len(),
        &parse(rhat),
        &parse(rhat_inv),
        eig.iter().map(|e| qs(e)).collect(),
    )
    .expect("R-matrix table fits the generator count")
}

const HALF_SUM: &str = "q^(1/2) + q^(-1/2)";

/// The preset for one space.
pub fn preset(kind: SpaceKind) -> SpaceSpec {
    match kind {
        SpaceKind::QuantumPlane => quantum_plane(),
        SpaceKind::Euclid3 => euclid3(),
        SpaceKind::Euclid4 => euclid4(),
        SpaceKind::Minkowski => minkowski(),
    }
}

fn quantum_plane() -> SpaceSpec {
    let gens = labels(&["X2", "X1"]);
    let algebra = RewriteSystem::new(gens.clone(), rules(&gens, &[("X1 X2", &[("X2 X1", "q")])]), true)
        .expect("valid relations");
    let metric = matrix(&gens, &[("X1", "X2", "q^(-1/2)"), ("X2", "X1", "-q^(1/2)")]);
    let metric_inverse = invert(&metric);
    let conjugation = conj_from_metric(&metric_inverse, -1);
    let metric_hat = metric.iter().map(|r| r.iter().map(|v| -v).collect()).collect();
    let rm = rmatrix(
        &gens,
        &[
            ("X1 X1 X1 X1", "q"),
            ("X1 X2 X1 X2", "q - q^(-1)"),
            ("X1 X2 X2 X1", "1"),
            ("X2 X1 X1 X2", "1"),
            ("X2 X2 X2 X2", "q"),
        ],
        &[
            ("X1 X1 X1 X1", "q^(-1)"),
            ("X1 X2 X2 X1", "1"),
            ("X2 X1 X1 X2", "1"),
            ("X2 X1 X2 X1", "-q + q^(-1)"),
            ("X2 X2 X2 X2", "q^(-1)"),
        ],
        &["q", "-q^(-1)"],
    );
    SpaceSpec {
        kind: SpaceKind::QuantumPlane,
        lattice_generators: alloc::vec![Some(idx(&gens, "X1")), Some(idx(&gens, "X2"))],
        algebra: Arc::new(algebra),
        metric,
        metric_inverse,
        metric_hat,
        conjugation,
        kappa_bosonic: qs("q^3"),
        kappa_grassmann: qs("q^3"),
        lattice_labels: labels(&["1", "2"]),
        lattice_steps: alloc::vec![2, 2],
        lattice_prefactor: qs("(q^2 - 1)^2"),
        real_coords: None,
        rmatrix: Some(rm),
        k_const: Some(qs("q^2")),
    }
}

fn euclid3() -> SpaceSpec {
    let gens = labels(&["X+", "X3", "X-"]);
    let algebra = RewriteSystem::new(
        gens.clone(),
        rules(
            &gens,
            &[
                ("X3 X+", &[("X+ X3", "q^2")]),
                ("X- X3", &[("X3 X-", "q^2")]),
                ("X- X+", &[("X+ X-", "1"), ("X3 X3", "q - q^(-1)")]),
            ],
        ),
        true,
    )
    .expect("valid relations");
    let metric = matrix(&gens, &[("X+", "X-", "-q"), ("X3", "X3", "1"), ("X-", "X+", "-q^(-1)")]);
    let metric_inverse = invert(&metric);
    let conjugation = conj_from_metric(&metric_inverse, 1);
    let real = real_coords(
        &gens,
        &["Y1", "Y2", "Y3"],
        &[
            &[("X+", "i*q^(-1/2)", HALF_SUM), ("X-", "i*q^(1/2)", HALF_SUM)],
            &[("X+", "q^(-1/2)", HALF_SUM), ("X-", "-q^(1/2)", HALF_SUM)],
            &[("X3", "1", "1")],
        ],
    );
    let rm = rmatrix(
        &gens,
        &[
            ("X+ X+ X+ X+", "q^2"),
            ("X+ X3 X3 X+", "1"),
            ("X+ X- X- X+", "q^(-2)"),
            ("X3 X+ X+ X3", "1"),
            ("X3 X+ X3 X+", "q^2 - q^(-2)"),
            ("X3 X3 X3 X3", "1"),
            ("X3 X3 X- X+", "q - q^(-3)"),
            ("X3 X- X- X3", "1"),
            ("X- X+ X+ X-", "q^(-2)"),
            ("X- X+ X3 X3", "q - q^(-3)"),
            ("X- X+ X- X+", "q^2 - 1 - q^(-2) + q^(-4)"),
            ("X- X3 X3 X-", "1"),
            ("X- X3 X- X3", "q^2 - q^(-2)"),
            ("X- X- X- X-", "q^2"),
        ],
        &[
            ("X+ X+ X+ X+", "q^(-2)"),
            ("X+ X3 X+ X3", "-q^2 + q^(-2)"),
            ("X+ X3 X3 X+", "1"),
            ("X+ X- X+ X-", "q^4 - q^2 - 1 + q^(-2)"),
            ("X+ X- X3 X3", "-q^3 + q^(-1)"),
            ("X+ X- X- X+", "q^2"),
            ("X3 X+ X+ X3", "1"),
            ("X3 X3 X+ X-", "-q^3 + q^(-1)"),
            ("X3 X3 X3 X3", "1"),
            ("X3 X- X3 X-", "-q^2 + q^(-2)"),
            ("X3 X- X- X3", "1"),
            ("X- X+ X+ X-", "q^2"),
            ("X- X3 X3 X-", "1"),
            ("X- X- X- X-", "q^(-2)"),
        ],
        &["q^2", "-q^(-2)", "q^(-4)"],
    );
    SpaceSpec {
        kind: SpaceKind::Euclid3,
        algebra: Arc::new(algebra),
        metric_hat: metric.clone(),
        metric,
        metric_inverse,
        conjugation,
        kappa_bosonic: qs("q^6"),
        kappa_grassmann: qs("-q^(-6)"),
        lattice_labels: labels(&["+", "3", "-"]),
        lattice_generators: alloc::vec![Some(0), Some(1), Some(2)],
        lattice_steps: alloc::vec![4, 2, 4],
        lattice_prefactor: qs("(q^4 - 1)^2*(q^2 - 1)"),
        real_coords: Some(real),
        rmatrix: Some(rm),
        k_const: Some(qs("q^2")),
    }
}

fn euclid4() -> SpaceSpec {
    let gens = labels(&["X1", "X2", "X3", "X4"]);
    let algebra = RewriteSystem::new(
        gens.clone(),
        rules(
            &gens,
            &[
                ("X2 X1", &[("X1 X2", "q^(-1)")]),
                ("X3 X1", &[("X1 X3", "q^(-1)")]),
                ("X4 X3", &[("X3 X4", "q^(-1)")]),
                ("X4 X2", &[("X2 X4", "q^(-1)")]),
                ("X3 X2", &[("X2 X3", "1")]),
                ("X4 X1", &[("X1 X4", "1"), ("X2 X3", "q - q^(-1)")]),
            ],
        ),
        true,
    )
    .expect("valid relations");
    let metric = matrix(
        &gens,
        &[("X1", "X4", "q^(-1)"), ("X2", "X3", "1"), ("X3", "X2", "1"), ("X4", "X1", "q")],
    );
    let metric_inverse = invert(&metric);
    let conjugation = conj_from_metric(&metric_inverse, 1);
    let real = real_coords(
        &gens,
        &["Y1", "Y2", "Y3", "Y4"],
        &[
            &[("X1", "q^(1/2)", HALF_SUM), ("X4", "q^(-1/2)", HALF_SUM)],
            &[("X2", "1", "2"), ("X3", "1", "2")],
            &[("X2", "i", "2"), ("X3", "-i", "2")],
            &[("X1", "i*q^(1/2)", HALF_SUM), ("X4", "-i*q^(-1/2)", HALF_SUM)],
        ],
    );
    SpaceSpec {
        kind: SpaceKind::Euclid4,
        algebra: Arc::new(algebra),
        metric_hat: metric.clone(),
        metric,
        metric_inverse,
        conjugation,
        kappa_bosonic: qs("q^4"),
        kappa_grassmann: qs("q^(-4)"),
        lattice_labels: labels(&["1", "2", "3", "4"]),
        lattice_generators: alloc::vec![Some(0), Some(1), Some(2), Some(3)],
        lattice_steps: alloc::vec![2, 2, 2, 2],
        lattice_prefactor: qs("(q^4 - 1)^4"),
        real_coords: Some(real),
        rmatrix: None,
        k_const: None,
    }
}

fn minkowski() -> SpaceSpec {
    let gens = labels(&["X0", "X+", "X3", "X-"]);
    let algebra = RewriteSystem::new(
        gens.clone(),
        rules(
            &gens,
            &[
                ("X+ X0", &[("X0 X+", "1")]),
                ("X3 X0", &[("X0 X3", "1")]),
                ("X- X0", &[("X0 X-", "1")]),
                ("X- X3", &[("X3 X-", "q^2"), ("X0 X-", "-q*(q - q^(-1))")]),
                ("X3 X+", &[("X+ X3", "q^2"), ("X0 X+", "-q*(q - q^(-1))")]),
                ("X- X+", &[("X+ X-", "1"), ("X3 X3", "q - q^(-1)"), ("X0 X3", "-q + q^(-1)")]),
            ],
        ),
        true,
    )
    .expect("valid relations");
    let metric = matrix(
        &gens,
        &[("X0", "X0", "-1"), ("X3", "X3", "1"), ("X+", "X-", "-q"), ("X-", "X+", "-q^(-1)")],
    );
    let metric_inverse = invert(&metric);
    let conjugation = images(
        &gens,
        &[
            ("X0", &[("X0", "1")]),
            ("X3", &[("X3", "1")]),
            ("X+", &[("X-", "-q^(-1)")]),
            ("X-", &[("X+", "-q")]),
        ],
    );
    let real = real_coords(
        &gens,
        &["Y0", "Y1", "Y2", "Y3"],
        &[
            &[("X0", "1", "1")],
            &[("X+", "i*q^(1/2)", HALF_SUM), ("X-", "i*q^(-1/2)", HALF_SUM)],
            &[("X+", "q^(1/2)", HALF_SUM), ("X-", "-q^(-1/2)", HALF_SUM)],
            &[("X3", "1", "1")],
        ],
    );
    SpaceSpec {
        kind: SpaceKind::Minkowski,
        algebra: Arc::new(algebra),
        metric_hat: metric.clone(),
        metric,
        metric_inverse,
        conjugation,
        kappa_bosonic: qs("q^(-4)"),
        kappa_grassmann: qs("q^4"),
        lattice_labels: labels(&["r2", "+", "3/0", "-"]),
        lattice_generators: alloc::vec![None, Some(1), None, Some(3)],
        lattice_steps: alloc::vec![2, 2, 2, 2],
        lattice_prefactor: qs("(1 - q^(-2))^4"),
        real_coords: Some(real),
        rmatrix: None,
        k_const: None,
    }
}
