use core::fmt;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::poly::{render_terms, NCPoly};
use super::rewrite::{RewriteSystem, Word};
use crate::error::{Error, Result};
use crate::ring::{Coeff, Ring};

/// Exponent vector indexed by generator position.
pub type Multidegree = Vec<u32>;

/// Commutative polynomial in the coordinate symbols of a space; the
/// coefficient functions that the star product acts on.
#[derive(Clone, Debug, PartialEq)]
pub struct CommPoly<C> {
    nvars: usize,
    terms: BTreeMap<Multidegree, C>,
}

impl<C: Coeff> CommPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        CommPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = CommPoly::zero(nvars);
        p.add_term(alloc::vec![0; nvars], c);
        p
    }

    pub fn variable(nvars: usize, g: usize) -> Self {
        let mut e = alloc::vec![0; nvars];
        e[g] = 1;
        let mut p = CommPoly::zero(nvars);
        p.add_term(e, C::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Multidegree, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Multidegree, c: C) {
        assert_eq!(e.len(), self.nvars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut r = CommPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            r.add_term(e.clone(), s.mul(c));
        }
        r
    }

    /// Ordinary commutative product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut r = CommPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Multidegree = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1.mul(c2));
            }
        }
        r
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> CommPoly<D> {
        let mut r = CommPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            r.add_term(e.clone(), f(c));
        }
        r
    }

    /// Evaluates at the given coordinate values after mapping coefficients.
    pub fn eval_with<T: Ring>(&self, coeff: impl Fn(&C) -> T, point: &[T]) -> T {
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut t = coeff(c);
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t.mul(x);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }
}

/// Quantization map on a single monomial: the normal-ordered word with the
/// same multidegree.
pub fn quantize_monomial(e: &[u32]) -> Word {
    let mut w = Word::new();
    for (g, &k) in e.iter().enumerate() {
        for _ in 0..k {
            w.push(g as u8);
        }
    }
    w
}

pub fn multidegree(nvars: usize, w: &[u8]) -> Multidegree {
    let mut e = alloc::vec![0u32; nvars];
    for &g in w {
        e[g as usize] += 1;
    }
    e
}

/// `W(f)`: sends every monomial to its normal-ordered word.
pub fn quantize<C: Coeff>(sys: &Arc<RewriteSystem>, f: &CommPoly<C>) -> Result<NCPoly<C>> {
    if f.nvars != sys.ngens() {
        return Err(Error::Dimension(alloc::format!(
            "{} variables for {} generators",
            f.nvars,
            sys.ngens()
        )));
    }
    let raw: Vec<(Word, C)> = f
        .terms
        .iter()
        .map(|(e, c)| (quantize_monomial(e), c.clone()))
        .collect();
    NCPoly::from_raw(sys, &raw)
}

/// `W⁻¹`: reads a normal-ordered element back as coefficients.
pub fn dequantize<C: Coeff>(f: &NCPoly<C>) -> CommPoly<C> {
    let n = f.system().ngens();
    let mut r = CommPoly::zero(n);
    for (w, c) in f.terms() {
        r.add_term(multidegree(n, w), c.clone());
    }
    r
}

/// Star product `f ⊛ g = W⁻¹(W(f)·W(g))`.
pub fn star_product<C: Coeff>(
    sys: &Arc<RewriteSystem>,
    f: &CommPoly<C>,
    g: &CommPoly<C>,
) -> Result<CommPoly<C>> {
    let a = quantize(sys, f)?;
    let b = quantize(sys, g)?;
    Ok(dequantize(&a.ncmul(&b)?))
}

impl<C: Coeff> CommPoly<C> {
    /// Renders with the given variable names, repeating factors for powers.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        struct D<'a, C>(&'a CommPoly<C>, &'a [String]);
        impl<'a, C: Coeff> fmt::Display for D<'a, C> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                render_terms(
                    f,
                    self.0.terms.iter().rev().map(|(e, c)| {
                        let w = quantize_monomial(e);
                        let mut s = String::new();
                        for (i, g) in w.iter().enumerate() {
                            if i > 0 {
                                s.push('*');
                            }
                            s.push_str(&self.1[*g as usize]);
                        }
                        (s, c)
                    }),
                )
            }
        }
        D(self, names)
    }
}
