use alloc::format;
use alloc::sync::Arc;
use num_complex::Complex64;

use super::function::{integrate, LatticeFunction};
use super::{LatticeSpec, LatticeValue};
use crate::error::{Error, Result};
use crate::ncalg::{dequantize, quantize, CommPoly, NCPoly, SpaceSpec};
use crate::phasespace::{derivative_action, DerivKind};
use crate::ring::Ring;
use crate::scalar::{QFraction, QScalar};

/// Operator whose expectation value is taken.
#[derive(Clone, Debug, PartialEq)]
pub enum Observable {
    /// Left multiplication by an algebra element.
    Element(NCPoly<QFraction>),
    /// `P^k ▷ ψ = i ∂^k ▷ ψ` for the given derivative.
    Momentum { kind: DerivKind, index: u8 },
}

impl Observable {
    /// `½(X^k + conj X^k)`.
    pub fn real_part(space: &SpaceSpec, k: u8) -> Result<Self> {
        if k as usize >= space.ngens() {
            return Err(Error::UnknownSymbol(format!("generator {}", k)));
        }
        let x: NCPoly<QFraction> = space.generator(k);
        let half = QFraction::from_scalar(QScalar::from_ratio(1, 2));
        Ok(Observable::Element(x.add(&space.conjugate(&x)?)?.scale(&half)))
    }
}

/// Coefficient function of the conjugate element.
pub fn conjugate_function(space: &SpaceSpec, psi: &CommPoly<QFraction>) -> Result<CommPoly<QFraction>> {
    Ok(dequantize(&space.conjugate(&quantize(&space.algebra, psi)?)?))
}

/// `conj(ψ) ⊛ ψ`.
pub fn density_poly(space: &SpaceSpec, psi: &CommPoly<QFraction>) -> Result<CommPoly<QFraction>> {
    space.star_product(&conjugate_function(space, psi)?, psi)
}

/// `A ▷ ψ`.
pub fn action(space: &SpaceSpec, op: &Observable, psi: &CommPoly<QFraction>) -> Result<CommPoly<QFraction>> {
    let f = quantize(&space.algebra, psi)?;
    match op {
        Observable::Element(a) => Ok(dequantize(&a.ncmul(&f)?)),
        Observable::Momentum { kind, index } => {
            let d = derivative_action(space, *kind, *index, &f)?;
            let i = QFraction::from_scalar(QScalar::i());
            Ok(dequantize(&d).scale(&i))
        }
    }
}

/// `conj(ψ) ⊛ (A ▷ ψ)`.
pub fn expectation_poly(space: &SpaceSpec, op: &Observable, psi: &CommPoly<QFraction>) -> Result<CommPoly<QFraction>> {
    space.star_product(&conjugate_function(space, psi)?, &action(space, op, psi)?)
}

/// Probability density of `ψ` sampled on the lattice.
pub fn density<V: LatticeValue>(spec: Arc<LatticeSpec>, psi: &CommPoly<QFraction>) -> Result<LatticeFunction<V>> {
    let rho = density_poly(&spec.space, psi)?;
    LatticeFunction::from_poly(spec, &rho)
}

/// `⟨ψ, A ▷ ψ⟩` on the lattice window, without normalization.
pub fn expectation<V: LatticeValue>(spec: Arc<LatticeSpec>, op: &Observable, psi: &CommPoly<QFraction>) -> Result<V> {
    let e = expectation_poly(&spec.space, op, psi)?;
    Ok(integrate(&LatticeFunction::<V>::from_poly(spec, &e)?))
}

/// Result of normalizing `ψ` on a window.
#[derive(Clone, Debug)]
pub struct Normalized {
    /// `∫ conj(ψ) ⊛ ψ` before rescaling.
    pub norm: Complex64,
    /// Real factor `λ = norm.re^{-1/2}` applied to `ψ`.
    pub factor: f64,
    /// Density of `λψ`.
    pub density: LatticeFunction<Complex64>,
}

pub fn normalize(spec: Arc<LatticeSpec>, psi: &CommPoly<QFraction>) -> Result<Normalized> {
    let rho: LatticeFunction<Complex64> = density(spec.clone(), psi)?;
    let norm = integrate(&rho);
    if norm.is_zero() {
        return Err(Error::ZeroNorm);
    }
    if !(norm.re > 0.0) {
        return Err(Error::NormNotPositive(format!("{}", norm)));
    }
    let factor = 1.0 / num_traits::Float::sqrt(norm.re);
    let scale = Complex64::new(1.0 / norm.re, 0.0);
    Ok(Normalized {
        norm,
        factor,
        density: rho.scale(&scale),
    })
}
