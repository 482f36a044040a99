//! The antisymmetrized sector: supernumbers, sesquilinear-form tables,
//! delta monomials and volume constants.

mod table;

use core::fmt;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ncalg::SpaceKind;
use crate::scalar::{qs, QScalar};

pub use table::{parse_tables, Erratum, FormTerm, TableSection};

/// Which integral the form or delta belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    L,
    LBar,
    R,
    RBar,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::L, Variant::LBar, Variant::R, Variant::RBar];

    pub fn name(self) -> &'static str {
        match self {
            Variant::L => "L",
            Variant::LBar => "Lbar",
            Variant::R => "R",
            Variant::RBar => "Rbar",
        }
    }

    pub fn from_name(s: &str) -> Option<Variant> {
        Variant::ALL.iter().copied().find(|v| v.name() == s)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Element of the `2ⁿ`-dimensional sector, one coefficient per subset of
/// generators. Subsets are bitmasks over label positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Supernumber {
    n: usize,
    coeffs: Vec<QScalar>,
}

impl Supernumber {
    pub fn zero(n: usize) -> Self {
        Supernumber {
            n,
            coeffs: alloc::vec![QScalar::zero(); 1 << n],
        }
    }

    pub fn one(n: usize) -> Self {
        Supernumber::basis(n, 0)
    }

    pub fn basis(n: usize, mask: u32) -> Self {
        let mut s = Supernumber::zero(n);
        s.coeffs[mask as usize] = QScalar::one();
        s
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<QScalar>) -> Result<Self> {
        if coeffs.len() != 1 << n {
            return Err(Error::Dimension(alloc::format!(
                "{} coefficients for {} generators",
                coeffs.len(),
                n
            )));
        }
        Ok(Supernumber { n, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, mask: u32) -> &QScalar {
        &self.coeffs[mask as usize]
    }

    pub fn coeffs(&self) -> &[QScalar] {
        &self.coeffs
    }

    pub fn set(&mut self, mask: u32, c: QScalar) {
        self.coeffs[mask as usize] = c;
    }

    pub fn scale(&self, s: &QScalar) -> Self {
        Supernumber {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| s * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Supernumber {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Supernumber {
            n: self.n,
            coeffs: self.coeffs.iter().map(QScalar::conj).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QScalar::is_zero)
    }
}

/// A signed ordered product of generators, as the delta functions are
/// printed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaMonomial {
    pub coeff: QScalar,
    pub factors: Vec<u8>,
}

impl DeltaMonomial {
    /// Set of generators present.
    pub fn mask(&self) -> u32 {
        self.factors.iter().fold(0, |m, &g| m | (1 << g))
    }
}

/// Tables and constants of one antisymmetrized space.
#[derive(Clone, Debug, PartialEq)]
pub struct GrassmannSpace {
    pub kind: SpaceKind,
    pub labels: Vec<String>,
    pub kappa: QScalar,
    pub vol: QScalar,
    /// Constant of the momentum–position rule; stored, unused.
    pub k_const: QScalar,
    pub deltas: BTreeMap<Variant, DeltaMonomial>,
    tables: BTreeMap<(Variant, bool), Vec<FormTerm>>,
    errata: Vec<Erratum>,
}

const TABLES: &str = include_str!("tables.txt");

fn label_set(kind: SpaceKind) -> &'static [&'static str] {
    match kind {
        SpaceKind::QuantumPlane => &["1", "2"],
        SpaceKind::Euclid3 => &["+", "3", "-"],
        SpaceKind::Euclid4 => &["1", "2", "3", "4"],
        SpaceKind::Minkowski => &["+", "3", "3/0", "-"],
    }
}

impl GrassmannSpace {
    pub fn preset(kind: SpaceKind) -> Self {
        let labels: Vec<String> = label_set(kind).iter().map(|s| s.to_string()).collect();
        let (kappa, vol, k) = match kind {
            SpaceKind::QuantumPlane => ("q^3", "1", "1"),
            SpaceKind::Euclid3 => ("-q^(-6)", "i", "q^(-4)"),
            SpaceKind::Euclid4 => ("q^(-4)", "1", "q^(-1)"),
            SpaceKind::Minkowski => ("q^4", "1", "q^(-1)"),
        };
        let word = |text: &str| -> Vec<u8> {
            text.split(',')
                .map(|l| labels.iter().position(|x| x == l).expect("delta label") as u8)
                .collect()
        };
        let d = |c: &str, w: &str| DeltaMonomial {
            coeff: qs(c),
            factors: word(w),
        };
        let deltas: [(Variant, DeltaMonomial); 4] = match kind {
            SpaceKind::QuantumPlane => [
                (Variant::L, d("1", "2,1")),
                (Variant::RBar, d("1", "2,1")),
                (Variant::LBar, d("1", "1,2")),
                (Variant::R, d("1", "1,2")),
            ],
            SpaceKind::Euclid3 => [
                (Variant::L, d("i", "+,3,-")),
                (Variant::RBar, d("i", "+,3,-")),
                (Variant::LBar, d("i", "-,3,+")),
                (Variant::R, d("i", "-,3,+")),
            ],
            SpaceKind::Euclid4 => [
                (Variant::L, d("1", "4,3,2,1")),
                (Variant::RBar, d("1", "4,3,2,1")),
                (Variant::LBar, d("1", "1,2,3,4")),
                (Variant::R, d("1", "1,2,3,4")),
            ],
            SpaceKind::Minkowski => [
                (Variant::L, d("1", "-,3/0,3,+")),
                (Variant::R, d("1", "+,3,3/0,-")),
                (Variant::LBar, d("1", "+,3/0,3,-")),
                (Variant::RBar, d("1", "-,3,3/0,+")),
            ],
        };
        let sections = parse_tables(TABLES).expect("shipped tables parse");
        let mut tables = BTreeMap::new();
        let mut errata = Vec::new();
        for s in sections.into_iter().filter(|s| s.space == kind.name()) {
            let (terms, errs) = s.resolve(&labels).expect("shipped tables use known labels");
            for v in &s.variants {
                tables.insert((*v, s.primed), terms.clone());
                errata.extend(errs.iter().cloned().map(|mut e| {
                    e.variant = *v;
                    e
                }));
            }
        }
        GrassmannSpace {
            kind,
            labels,
            kappa: qs(kappa),
            vol: qs(vol),
            k_const: qs(k),
            deltas: deltas.into_iter().collect(),
            tables,
            errata,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn table(&self, variant: Variant, primed: bool) -> &[FormTerm] {
        self.tables.get(&(variant, primed)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// The table with every flagged term restored to its printed form.
    pub fn verbatim_table(&self, variant: Variant, primed: bool) -> Vec<FormTerm> {
        let mut t = self.table(variant, primed).to_vec();
        for e in self.errata.iter().filter(|e| e.variant == variant && e.primed == primed) {
            t[e.index] = e.printed.clone();
        }
        t
    }

    pub fn errata(&self) -> &[Erratum] {
        &self.errata
    }

    /// Bitmask for a comma-separated label list; `'` is the empty set.
    pub fn mask(&self, text: &str) -> Result<u32> {
        table::subset_mask(&self.labels, text)
    }

    /// Coefficient name as the tables print it, e.g. `f'` or `f_{+,3}`.
    pub fn subset_name(&self, mask: u32) -> String {
        if mask == 0 {
            return "'".to_string();
        }
        let parts: Vec<&str> = (0..self.dim())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| self.labels[i].as_str())
            .collect();
        parts.join(",")
    }

    pub fn delta(&self, variant: Variant) -> &DeltaMonomial {
        &self.deltas[&variant]
    }

    /// `⟨f, g⟩_A` from the stored table.
    pub fn sesquilinear(&self, variant: Variant, primed: bool, f: &Supernumber, g: &Supernumber) -> Result<QScalar> {
        if f.n != self.dim() || g.n != self.dim() {
            return Err(Error::Dimension("supernumber size".to_string()));
        }
        Ok(evaluate(self.table(variant, primed), primed, f, g))
    }

    /// `iⁿ/2 (⟨f,g⟩_L + ⟨f,g⟩_R̄)` for `which = 1`, with `L̄, R` for 2.
    pub fn combined_form(&self, which: u8, primed: bool, f: &Supernumber, g: &Supernumber) -> Result<crate::scalar::QFraction> {
        let (a, b) = match which {
            1 => (Variant::L, Variant::RBar),
            2 => (Variant::LBar, Variant::R),
            _ => return Err(Error::Invalid(alloc::format!("combined form {} (expected 1 or 2)", which))),
        };
        let sum = self.sesquilinear(a, primed, f, g)? + self.sesquilinear(b, primed, f, g)?;
        let pref = QScalar::i().pow(self.dim() as u32);
        let half = crate::scalar::QFraction::new(pref, QScalar::from_int(2)).expect("nonzero");
        Ok(half.scale(&sum))
    }

    /// Values of the form on all pairs of basis monomials.
    pub fn gram_matrix(&self, variant: Variant, primed: bool) -> Vec<Vec<QScalar>> {
        let size = 1 << self.dim();
        let mut m = alloc::vec![alloc::vec![QScalar::zero(); size]; size];
        for t in self.table(variant, primed) {
            m[t.f as usize][t.g as usize] += &t.coeff;
        }
        m
    }

    pub fn gram_determinant(&self, variant: Variant, primed: bool) -> QScalar {
        determinant(&self.gram_matrix(variant, primed))
    }

    pub fn display_super<'a>(&'a self, s: &'a Supernumber) -> impl fmt::Display + 'a {
        struct D<'a>(&'a GrassmannSpace, &'a Supernumber);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let mut masks: Vec<u32> = (0..self.1.coeffs.len() as u32).collect();
                masks.sort_by_key(|m| (m.count_ones(), *m));
                let mut first = true;
                for m in masks {
                    let c = &self.1.coeffs[m as usize];
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        f.write_str(" + ")?;
                    }
                    first = false;
                    write!(f, "({})*f_{{{}}}", c, self.0.subset_name(m))?;
                }
                if first {
                    f.write_str("0")?;
                }
                Ok(())
            }
        }
        D(self, s)
    }
}

/// `Σ c·conj(f_I)·g_J`, or `Σ c·f_I·conj(g_J)` when primed.
pub fn evaluate(terms: &[FormTerm], primed: bool, f: &Supernumber, g: &Supernumber) -> QScalar {
    let mut acc = QScalar::zero();
    for t in terms {
        let (a, b) = (f.coeff(t.f), g.coeff(t.g));
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let prod = if primed { a * &b.conj() } else { &a.conj() * b };
        acc += &(&t.coeff * &prod);
    }
    acc
}

/// Exact determinant by dynamic programming over column subsets; rows are
/// assigned in order and sparse entries are skipped.
pub fn determinant(m: &[Vec<QScalar>]) -> QScalar {
    let n = m.len();
    assert!(n <= 20, "determinant size");
    let mut dp: BTreeMap<u32, QScalar> = BTreeMap::new();
    dp.insert(0, QScalar::one());
    for row in m {
        let mut next: BTreeMap<u32, QScalar> = BTreeMap::new();
        for (mask, val) in &dp {
            for (c, entry) in row.iter().enumerate() {
                if entry.is_zero() || mask & (1 << c) != 0 {
                    continue;
                }
                let inversions = (mask >> (c + 1)).count_ones();
                let mut t = val * entry;
                if inversions % 2 == 1 {
                    t = -t;
                }
                let e = next.entry(mask | (1 << c)).or_insert_with(QScalar::zero);
                *e += &t;
            }
        }
        next.retain(|_, v| !v.is_zero());
        dp = next;
    }
    dp.remove(&((1u32 << n) - 1)).unwrap_or_else(QScalar::zero)
}
