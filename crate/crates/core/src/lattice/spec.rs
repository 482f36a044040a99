use core::fmt;

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use num_complex::Complex64;

use super::jackson::{check_q, NegBranch};
use crate::error::{Error, Result};
use crate::ncalg::SpaceSpec;
use crate::ring::Field;
use crate::scalar::{QFraction, QScalar};

/// Value type of lattice samples: floats evaluated at the lattice `q`, or
/// exact fractions in a symbolic `q`.
pub trait LatticeValue: Field {
    fn lift(s: &QScalar, q: f64) -> Self;
    fn lift_fraction(f: &QFraction, q: f64) -> Self;
}

impl LatticeValue for Complex64 {
    fn lift(s: &QScalar, q: f64) -> Self {
        s.eval(q)
    }
    fn lift_fraction(f: &QFraction, q: f64) -> Self {
        f.eval(q)
    }
}

impl LatticeValue for QFraction {
    fn lift(s: &QScalar, _q: f64) -> Self {
        QFraction::from_scalar(s.clone())
    }
    fn lift_fraction(f: &QFraction, _q: f64) -> Self {
        f.clone()
    }
}

/// Lattice label: one sign and one exponent per coordinate. The coordinate
/// value is `s_j α_j q^{a_j v_j}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quasipoint {
    pub signs: Vec<i8>,
    pub exps: Vec<i32>,
}

impl Quasipoint {
    pub fn new(signs: Vec<i8>, exps: Vec<i32>) -> Self {
        Quasipoint { signs, exps }
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }
}

impl fmt::Display for Quasipoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (j, (s, v)) in self.signs.iter().zip(&self.exps).enumerate() {
            if j > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}{}", if *s < 0 { '-' } else { '+' }, v)?;
        }
        f.write_str(")")
    }
}

/// Truncation of the lattice: exponent ranges and the sign sectors kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub vmin: Vec<i32>,
    pub vmax: Vec<i32>,
    pub sectors: Vec<Vec<i8>>,
}

impl Window {
    /// Same range for every coordinate, all `2^n` sectors.
    pub fn symmetric(n: usize, vmin: i32, vmax: i32) -> Self {
        let sectors = (0..1u32 << n)
            .map(|m| (0..n).map(|j| if m >> j & 1 == 1 { -1 } else { 1 }).collect())
            .collect();
        Window {
            vmin: alloc::vec![vmin; n],
            vmax: alloc::vec![vmax; n],
            sectors,
        }
    }

    pub fn dim(&self) -> usize {
        self.vmin.len()
    }

    pub fn contains(&self, p: &Quasipoint) -> bool {
        p.dim() == self.dim()
            && p.signs.len() == self.dim()
            && self.sectors.iter().any(|s| *s == p.signs)
            && p.exps.iter().enumerate().all(|(j, v)| self.vmin[j] <= *v && *v <= self.vmax[j])
    }

    /// All quasipoints of the window in ascending order.
    pub fn points(&self) -> Vec<Quasipoint> {
        let n = self.dim();
        let mut sectors = self.sectors.clone();
        sectors.sort();
        sectors.dedup();
        let mut exps: Vec<Vec<i32>> = alloc::vec![Vec::new()];
        for j in 0..n {
            let mut next = Vec::new();
            for e in &exps {
                for v in self.vmin[j]..=self.vmax[j] {
                    let mut e2 = e.clone();
                    e2.push(v);
                    next.push(e2);
                }
            }
            exps = next;
        }
        let mut out = Vec::with_capacity(sectors.len() * exps.len());
        for s in &sectors {
            for e in &exps {
                out.push(Quasipoint::new(s.clone(), e.clone()));
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        let mut sectors = self.sectors.clone();
        sectors.sort();
        sectors.dedup();
        let per: usize = (0..self.dim())
            .map(|j| (self.vmax[j] - self.vmin[j] + 1).max(0) as usize)
            .product();
        per * sectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("v in ")?;
        for j in 0..self.dim() {
            if j > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "[{}, {}]", self.vmin[j], self.vmax[j])?;
        }
        write!(f, ", {} sign sectors", self.sectors.len())
    }
}

/// Which coordinates the lattice samples.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Sampling {
    /// Lattice coordinate `j` is the generator `lattice_generators[j]`.
    #[default]
    Generators,
    /// Lattice coordinate `j` is the self-conjugate coordinate `Y^j`.
    Real,
}

impl Sampling {
    pub fn name(self) -> &'static str {
        match self {
            Sampling::Generators => "generators",
            Sampling::Real => "real",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "generators" => Some(Sampling::Generators),
            "real" => Some(Sampling::Real),
            _ => None,
        }
    }
}

/// A truncated quasipoint lattice over one quantum space.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeSpec {
    pub space: SpaceSpec,
    /// Scales `α_j`; positive reals, possibly depending on `q`.
    pub alpha: Vec<QScalar>,
    pub steps: Vec<i32>,
    pub prefactor: QScalar,
    pub q: f64,
    pub window: Window,
    pub branch: NegBranch,
    pub sampling: Sampling,
}

impl LatticeSpec {
    /// Lattice with unit scales, the preset steps and prefactor, and a
    /// symmetric window `[vmin, vmax]` over all sign sectors.
    pub fn new(space: SpaceSpec, q: f64, vmin: i32, vmax: i32) -> Result<Self> {
        let n = space.lattice_steps.len();
        let spec = LatticeSpec {
            alpha: alloc::vec![QScalar::one(); n],
            steps: space.lattice_steps.clone(),
            prefactor: space.lattice_prefactor.clone(),
            window: Window::symmetric(n, vmin, vmax),
            q,
            branch: NegBranch::Riemann,
            sampling: Sampling::Generators,
            space,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_alpha(mut self, alpha: Vec<QScalar>) -> Result<Self> {
        self.alpha = alpha;
        self.validate()?;
        Ok(self)
    }

    pub fn with_window(mut self, window: Window) -> Result<Self> {
        self.window = window;
        self.validate()?;
        Ok(self)
    }

    pub fn with_branch(mut self, branch: NegBranch) -> Self {
        self.branch = branch;
        self
    }

    pub fn with_sampling(mut self, sampling: Sampling) -> Result<Self> {
        self.sampling = sampling;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        check_q(self.q)?;
        let n = self.dim();
        let w = &self.window;
        if self.alpha.len() != n || w.vmin.len() != n || w.vmax.len() != n {
            return Err(Error::Dimension(format!(
                "lattice for {} has {} coordinates",
                self.space.name(),
                n
            )));
        }
        if self.space.lattice_labels.len() != n {
            return Err(Error::Dimension("lattice labels do not match steps".to_string()));
        }
        if self.steps.iter().any(|a| *a <= 0) {
            return Err(Error::Invalid("lattice steps must be positive".to_string()));
        }
        for (j, a) in self.alpha.iter().enumerate() {
            let real = a.terms().all(|(_, c)| c.is_real());
            let v = a.eval(self.q);
            if !real || !(v.re > 0.0) {
                return Err(Error::Invalid(format!("scale alpha_{} = {} is not positive", j + 1, a)));
            }
        }
        for j in 0..n {
            if w.vmin[j] > w.vmax[j] {
                return Err(Error::Invalid(format!("empty exponent range for coordinate {}", j + 1)));
            }
        }
        if w.sectors.is_empty() {
            return Err(Error::Invalid("no sign sectors".to_string()));
        }
        for s in &w.sectors {
            if s.len() != n || s.iter().any(|x| *x != 1 && *x != -1) {
                return Err(Error::Invalid("sign sectors must be vectors of +1/-1".to_string()));
            }
        }
        match self.sampling {
            Sampling::Generators => {}
            Sampling::Real => {
                let rc = self
                    .space
                    .real_coords
                    .as_ref()
                    .ok_or_else(|| Error::UnsupportedSpace(self.space.name().to_string()))?;
                if rc.labels.len() != n {
                    return Err(Error::Dimension("real coordinates do not match the lattice".to_string()));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.steps.len()
    }

    pub fn contains(&self, p: &Quasipoint) -> bool {
        self.window.contains(p)
    }

    pub fn points(&self) -> Vec<Quasipoint> {
        self.window.points()
    }

    /// `s_j α_j q^{a_j v_j}`.
    pub fn coordinate_symbolic(&self, p: &Quasipoint, j: usize) -> QScalar {
        let c = &self.alpha[j] * &QScalar::q_pow(self.steps[j] as i64 * p.exps[j] as i64);
        if p.signs[j] < 0 {
            -c
        } else {
            c
        }
    }

    pub fn coordinates<V: LatticeValue>(&self, p: &Quasipoint) -> Vec<V> {
        (0..self.dim())
            .map(|j| V::lift(&self.coordinate_symbolic(p, j), self.q))
            .collect()
    }

    /// Quasipoint volume element: the prefactor times `α_j q^{a_j v_j}` for
    /// every coordinate, each factor signed by `s_j` under the verbatim
    /// branch.
    pub fn weight_symbolic(&self, p: &Quasipoint) -> QScalar {
        let mut w = self.prefactor.clone();
        let mut sign = 1i8;
        for j in 0..self.dim() {
            w = &w * &(&self.alpha[j] * &QScalar::q_pow(self.steps[j] as i64 * p.exps[j] as i64));
            sign *= self.branch.sign(p.signs[j]);
        }
        if sign < 0 {
            -w
        } else {
            w
        }
    }

    pub fn weight<V: LatticeValue>(&self, p: &Quasipoint) -> V {
        V::lift(&self.weight_symbolic(p), self.q)
    }

    /// Values of the space generators at a quasipoint, indexed by generator
    /// position.
    pub fn generator_values<V: LatticeValue>(&self, p: &Quasipoint) -> Result<Vec<V>> {
        let m = self.real_matrix()?;
        self.generator_values_with(p, m.as_deref())
    }

    pub(crate) fn real_matrix(&self) -> Result<Option<Vec<Vec<QFraction>>>> {
        match self.sampling {
            Sampling::Generators => Ok(None),
            Sampling::Real => Ok(Some(self.space.x_in_real()?)),
        }
    }

    pub(crate) fn generator_values_with<V: LatticeValue>(
        &self,
        p: &Quasipoint,
        real: Option<&[Vec<QFraction>]>,
    ) -> Result<Vec<V>> {
        let c: Vec<V> = self.coordinates(p);
        match real {
            None => {
                let mut x = alloc::vec![V::zero(); self.space.ngens()];
                for (j, g) in self.space.lattice_generators.iter().enumerate() {
                    let g = g.ok_or_else(|| Error::UnsupportedSpace(self.space.name().to_string()))?;
                    x[g as usize] = c[j].clone();
                }
                Ok(x)
            }
            Some(m) => Ok(m
                .iter()
                .map(|row| {
                    row.iter().zip(&c).fold(V::zero(), |acc, (mij, yi)| {
                        if mij.is_zero() {
                            acc
                        } else {
                            acc.add(&V::lift_fraction(mij, self.q).mul(yi))
                        }
                    })
                })
                .collect()),
        }
    }
}
