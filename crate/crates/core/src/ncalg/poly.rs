use core::fmt;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::rewrite::{add_into, Orderer, RewriteSystem, Word};
use crate::error::{Error, Result};
use crate::ring::{Coeff, Ring};
use crate::scalar::{QFraction, QScalar};

/// Element of a quantum-space algebra: normal-ordered words with
/// coefficients.
#[derive(Clone, Debug)]
pub struct NCPoly<C = QScalar> {
    sys: Arc<RewriteSystem>,
    terms: BTreeMap<Word, C>,
}

impl<C: PartialEq> PartialEq for NCPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        same_system(&self.sys, &other.sys) && self.terms == other.terms
    }
}

pub(crate) fn same_system(a: &Arc<RewriteSystem>, b: &Arc<RewriteSystem>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<C: Coeff> NCPoly<C> {
    pub fn zero(sys: &Arc<RewriteSystem>) -> Self {
        NCPoly {
            sys: sys.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(sys: &Arc<RewriteSystem>, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        NCPoly {
            sys: sys.clone(),
            terms,
        }
    }

    pub fn one(sys: &Arc<RewriteSystem>) -> Self {
        NCPoly::constant(sys, C::one())
    }

    pub fn generator(sys: &Arc<RewriteSystem>, g: u8) -> Self {
        NCPoly::from_word(sys, &[g], C::one()).expect("generator index in range")
    }

    /// `c·w`, normal-ordered.
    pub fn from_word(sys: &Arc<RewriteSystem>, w: &[u8], c: C) -> Result<Self> {
        NCPoly::from_raw(sys, &[(w.to_vec(), c)])
    }

    /// Normal-orders a raw sum of words.
    pub fn from_raw(sys: &Arc<RewriteSystem>, raw: &[(Word, C)]) -> Result<Self> {
        Ok(NCPoly {
            sys: sys.clone(),
            terms: sys.normal_order(raw)?,
        })
    }

    /// Wraps terms already known to be normal and free of zeros.
    pub(crate) fn from_normal_terms(sys: &Arc<RewriteSystem>, terms: BTreeMap<Word, C>) -> Self {
        NCPoly {
            sys: sys.clone(),
            terms,
        }
    }

    pub fn system(&self) -> &Arc<RewriteSystem> {
        &self.sys
    }

    pub fn terms(&self) -> &BTreeMap<Word, C> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Word, C> {
        self.terms
    }

    pub fn coeff(&self, w: &[u8]) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest word length, or `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|w| w.len());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_system(&self.sys, &other.sys) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            add_into(&mut terms, w.clone(), c);
        }
        Ok(NCPoly::from_normal_terms(&self.sys, terms))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        NCPoly {
            sys: self.sys.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| (w.clone(), s.mul(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        NCPoly::from_normal_terms(&self.sys, terms)
    }

    /// Algebra product: concatenation followed by normal ordering.
    pub fn ncmul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut ord = Orderer::new(&self.sys);
        Ok(self.ncmul_with(other, &mut ord))
    }

    /// Product reusing a caller-held cache.
    pub fn ncmul_with(&self, other: &Self, ord: &mut Orderer<'_>) -> Self {
        NCPoly::from_normal_terms(&self.sys, ord.mul(&self.terms, &other.terms))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut ord = Orderer::new(&self.sys);
        let mut acc = NCPoly::one(&self.sys);
        for _ in 0..n {
            acc = acc.ncmul_with(self, &mut ord);
        }
        acc
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> NCPoly<D> {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| (w.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        NCPoly {
            sys: self.sys.clone(),
            terms,
        }
    }

    /// Rebinds the terms to another system with the same generators; words
    /// are re-normal-ordered there.
    pub fn rebind(&self, sys: &Arc<RewriteSystem>) -> Result<Self> {
        let raw: Vec<(Word, C)> = self.terms.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        NCPoly::from_raw(sys, &raw)
    }
}

impl NCPoly<QScalar> {
    pub fn to_fraction(&self) -> NCPoly<QFraction> {
        self.map_coeffs(|c| QFraction::from_scalar(c.clone()))
    }
}

/// Renders a word with the generator labels joined by `*`.
pub fn word_text(sys: &RewriteSystem, w: &[u8]) -> String {
    let mut s = String::new();
    for (i, g) in w.iter().enumerate() {
        if i > 0 {
            s.push('*');
        }
        s.push_str(sys.label(*g));
    }
    s
}

/// Shared renderer for a sum of `coefficient · word` terms.
pub fn render_terms<'a, C: Ring + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a C)>,
) -> fmt::Result {
    let mut first = true;
    for (word, c) in terms {
        let (neg, body) = c.factor_text();
        let text = match (body.is_empty(), word.is_empty()) {
            (true, true) => String::from("1"),
            (true, false) => word,
            (false, true) => body,
            (false, false) => alloc::format!("{}*{}", body, word),
        };
        if first {
            if neg {
                f.write_str("-")?;
            }
            first = false;
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        f.write_str(&text)?;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl<C: Coeff> fmt::Display for NCPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_terms(
            f,
            self.terms.iter().map(|(w, c)| (word_text(&self.sys, w), c)),
        )
    }
}
