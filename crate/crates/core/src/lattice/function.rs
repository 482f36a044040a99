use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::jackson::{jackson_1d, HalfLine};
use super::{LatticeSpec, LatticeValue, Quasipoint};
use crate::error::{Error, Result};
use crate::ncalg::CommPoly;
use crate::scalar::{GaussRat, QFraction, QScalar};

/// Samples on the quasipoints of a lattice window. Missing points are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeFunction<V> {
    spec: Arc<LatticeSpec>,
    samples: BTreeMap<Quasipoint, V>,
}

impl<V: LatticeValue> LatticeFunction<V> {
    pub fn zero(spec: Arc<LatticeSpec>) -> Self {
        LatticeFunction {
            spec,
            samples: BTreeMap::new(),
        }
    }

    /// Samples `f(p, c)` where `c` are the coordinate values of `p`.
    pub fn from_fn(spec: Arc<LatticeSpec>, f: impl Fn(&Quasipoint, &[V]) -> V) -> Self {
        let mut samples = BTreeMap::new();
        for p in spec.points() {
            let c: Vec<V> = spec.coordinates(&p);
            let v = f(&p, &c);
            if !v.is_zero() {
                samples.insert(p, v);
            }
        }
        LatticeFunction { spec, samples }
    }

    /// Samples a coefficient function of the space generators.
    pub fn from_poly(spec: Arc<LatticeSpec>, f: &CommPoly<QFraction>) -> Result<Self> {
        if f.nvars() != spec.space.ngens() {
            return Err(Error::SpaceMismatch);
        }
        let real = spec.real_matrix()?;
        let q = spec.q;
        let mut samples = BTreeMap::new();
        for p in spec.points() {
            let x: Vec<V> = spec.generator_values_with(&p, real.as_deref())?;
            let v = f.eval_with(|c| V::lift_fraction(c, q), &x);
            if !v.is_zero() {
                samples.insert(p, v);
            }
        }
        Ok(LatticeFunction { spec, samples })
    }

    pub fn from_samples(spec: Arc<LatticeSpec>, it: impl IntoIterator<Item = (Quasipoint, V)>) -> Result<Self> {
        let mut out = LatticeFunction::zero(spec);
        for (p, v) in it {
            out.set(p, v)?;
        }
        Ok(out)
    }

    pub fn spec(&self) -> &Arc<LatticeSpec> {
        &self.spec
    }

    pub fn samples(&self) -> &BTreeMap<Quasipoint, V> {
        &self.samples
    }

    pub fn get(&self, p: &Quasipoint) -> V {
        self.samples.get(p).cloned().unwrap_or_else(V::zero)
    }

    pub fn set(&mut self, p: Quasipoint, v: V) -> Result<()> {
        if !self.spec.contains(&p) {
            return Err(Error::OutsideWindow);
        }
        if v.is_zero() {
            self.samples.remove(&p);
        } else {
            self.samples.insert(p, v);
        }
        Ok(())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    fn zip(&self, other: &Self, op: impl Fn(&V, &V) -> V) -> Result<Self> {
        self.check(other)?;
        let mut samples = BTreeMap::new();
        for p in self.samples.keys().chain(other.samples.keys()) {
            if samples.contains_key(p) {
                continue;
            }
            let v = op(&self.get(p), &other.get(p));
            if !v.is_zero() {
                samples.insert(p.clone(), v);
            }
        }
        Ok(LatticeFunction {
            spec: self.spec.clone(),
            samples,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.sub(b))
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.mul(b))
    }

    pub fn scale(&self, s: &V) -> Self {
        self.map(|_, v| v.mul(s))
    }

    pub fn map(&self, f: impl Fn(&Quasipoint, &V) -> V) -> Self {
        let samples = self
            .samples
            .iter()
            .filter_map(|(p, v)| {
                let w = f(p, v);
                (!w.is_zero()).then(|| (p.clone(), w))
            })
            .collect();
        LatticeFunction {
            spec: self.spec.clone(),
            samples,
        }
    }

    pub fn conj(&self) -> Self {
        self.map(|_, v| v.conj())
    }
}

/// `Σ_p w(p) f(p)` over the support of `f`.
pub fn integrate<V: LatticeValue>(f: &LatticeFunction<V>) -> V {
    let spec = &f.spec;
    f.samples
        .iter()
        .fold(V::zero(), |acc, (p, v)| acc.add(&spec.weight::<V>(p).mul(v)))
}

/// Integral of `Π_j f_j(x^j)` as a product of one-dimensional Jackson sums,
/// rescaled from `Π_j (q^{a_j} - 1)` to the lattice prefactor. Needs the
/// full sign window.
pub fn integrate_separable<V: LatticeValue>(spec: &LatticeSpec, factors: &[&dyn Fn(i8, i32, &V) -> V]) -> Result<V> {
    let n = spec.dim();
    if factors.len() != n {
        return Err(Error::Dimension(format!("expected {} factors", n)));
    }
    let mut sectors = spec.window.sectors.clone();
    sectors.sort();
    sectors.dedup();
    if sectors.len() != 1 << n {
        return Err(Error::Invalid("separable integration needs every sign sector".to_string()));
    }
    let mut acc = V::lift(&spec.prefactor, spec.q);
    for j in 0..n {
        let step = V::lift(&(QScalar::q_pow(spec.steps[j] as i64) - QScalar::one()), spec.q);
        let s = jackson_1d(
            factors[j],
            spec.steps[j],
            &spec.alpha[j],
            spec.q,
            HalfLine::Full,
            (spec.window.vmin[j], spec.window.vmax[j]),
            spec.branch,
        )?;
        acc = acc.mul(&s).div(&step).ok_or_else(|| Error::Invalid("zero Jackson step".to_string()))?;
    }
    Ok(acc)
}

/// Kronecker spike `1/w(at)` at `at`.
pub fn lattice_delta<V: LatticeValue>(spec: Arc<LatticeSpec>, at: &Quasipoint) -> Result<LatticeFunction<V>> {
    if !spec.contains(at) {
        return Err(Error::OutsideWindow);
    }
    let w: V = spec.weight(at);
    let inv = w.inv().ok_or_else(|| Error::Invalid("zero quasipoint weight".to_string()))?;
    let mut f = LatticeFunction::zero(spec);
    f.set(at.clone(), inv)?;
    Ok(f)
}

/// Multiplication by `F` at the quasipoint coordinates.
pub fn spectral_apply<V: LatticeValue>(func: impl Fn(&[V]) -> V, f: &LatticeFunction<V>) -> LatticeFunction<V> {
    let spec = f.spec.clone();
    f.map(|p, v| func(&spec.coordinates::<V>(p)).mul(v))
}

/// Per-coordinate upper bound of a spectral projector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    Unbounded,
    /// Keeps the negative branch only.
    Zero,
    /// Keeps every point not above the given one.
    At { sign: i8, exp: i32 },
}

/// Spectral projector onto the quasipoints below a threshold. Points are
/// ordered along each axis by coordinate value: the negative branch with
/// decreasing magnitude, then the positive branch with increasing
/// magnitude.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projector {
    bounds: Vec<Bound>,
}

fn order_key(sign: i8, exp: i32) -> (i8, i64) {
    if sign < 0 {
        (-1, -(exp as i64))
    } else {
        (1, exp as i64)
    }
}

impl Projector {
    pub fn new(spec: &LatticeSpec, bounds: Vec<Bound>) -> Result<Self> {
        if bounds.len() != spec.dim() {
            return Err(Error::Dimension(format!("expected {} bounds", spec.dim())));
        }
        for (j, b) in bounds.iter().enumerate() {
            if let Bound::At { sign, exp } = b {
                let w = &spec.window;
                if (*sign != 1 && *sign != -1) || *exp < w.vmin[j] || *exp > w.vmax[j] {
                    return Err(Error::OutsideWindow);
                }
            }
        }
        Ok(Projector { bounds })
    }

    /// Threshold at the largest positive point of the window.
    pub fn completeness(spec: &LatticeSpec) -> Self {
        Projector {
            bounds: spec.window.vmax.iter().map(|v| Bound::At { sign: 1, exp: *v }).collect(),
        }
    }

    /// Indicator of `x^j < 0`, the q-Heaviside function `Θ(-x^j)`.
    pub fn heaviside(spec: &LatticeSpec, j: usize) -> Result<Self> {
        let mut bounds = alloc::vec![Bound::Unbounded; spec.dim()];
        *bounds
            .get_mut(j)
            .ok_or_else(|| Error::Dimension(format!("no lattice coordinate {}", j)))? = Bound::Zero;
        Ok(Projector { bounds })
    }

    pub fn bounds(&self) -> &[Bound] {
        &self.bounds
    }

    pub fn contains(&self, p: &Quasipoint) -> bool {
        self.bounds.iter().enumerate().all(|(j, b)| match b {
            Bound::Unbounded => true,
            Bound::Zero => p.signs[j] < 0,
            Bound::At { sign, exp } => order_key(p.signs[j], p.exps[j]) <= order_key(*sign, *exp),
        })
    }

    pub fn apply<V: LatticeValue>(&self, f: &LatticeFunction<V>) -> LatticeFunction<V> {
        let samples = f
            .samples
            .iter()
            .filter(|(p, _)| self.contains(p))
            .map(|(p, v)| (p.clone(), v.clone()))
            .collect();
        LatticeFunction {
            spec: f.spec.clone(),
            samples,
        }
    }
}

/// `x ↦ f(κx)` as a function on the lattice with scales `κ^{-1} α_j`.
/// `κ` must be a positive monomial in `q`.
pub fn kappa_scale<V: LatticeValue>(f: &LatticeFunction<V>, kappa: &QScalar) -> Result<LatticeFunction<V>> {
    let inv = kappa
        .inv_monomial()
        .ok_or_else(|| Error::Invalid(format!("kappa {} is not a monomial", kappa)))?;
    let spec = (*f.spec).clone();
    let alpha = spec.alpha.iter().map(|a| a * &inv).collect();
    let spec = Arc::new(spec.with_alpha(alpha)?);
    Ok(LatticeFunction {
        spec,
        samples: f.samples.clone(),
    })
}

/// `(i/2)(I_1 + I_2)` for the two integral variants combined by `which`
/// (1: `L` and `R̄`, 2: `L̄` and `R`). All four variants share the
/// quasipoint weights, so the result is `i` times [`integrate`].
pub fn combined_integral<V: LatticeValue>(f: &LatticeFunction<V>, which: u8) -> Result<V> {
    if which != 1 && which != 2 {
        return Err(Error::Invalid(format!("combined integral {} does not exist", which)));
    }
    let a = integrate(f);
    let b = integrate(f);
    let half_i = V::lift(&QScalar::constant(GaussRat::from_parts((0, 1), (1, 2))), f.spec.q);
    Ok(half_i.mul(&a.add(&b)))
}
