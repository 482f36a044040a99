use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::float::FloatCore;

use super::GaussRat;
use crate::ring::Ring;

/// Laurent polynomial in `q^{1/2}` with Gaussian-rational coefficients.
///
/// Keys are doubled exponents: the key `3` stands for `q^{3/2}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct QScalar {
    terms: BTreeMap<i64, GaussRat>,
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar::default()
    }

    pub fn one() -> Self {
        QScalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        QScalar::constant(GaussRat::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        QScalar::constant(GaussRat::from_ratio(n, d))
    }

    pub fn constant(c: GaussRat) -> Self {
        QScalar::monomial(c, 0)
    }

    /// `c · q^{half/2}`.
    pub fn monomial(c: GaussRat, half: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(half, c);
        }
        QScalar { terms }
    }

    pub fn i() -> Self {
        QScalar::constant(GaussRat::i())
    }

    pub fn q() -> Self {
        QScalar::q_pow(1)
    }

    /// `q^n`.
    pub fn q_pow(n: i64) -> Self {
        QScalar::q_half_pow(2 * n)
    }

    /// `q^{h/2}`.
    pub fn q_half_pow(h: i64) -> Self {
        QScalar::monomial(GaussRat::from_int(1), h)
    }

    /// `λ = q − q^{-1}`.
    pub fn lambda() -> Self {
        QScalar::q_pow(1) - QScalar::q_pow(-1)
    }

    /// `λ₊ = q + q^{-1}`.
    pub fn lambda_plus() -> Self {
        QScalar::q_pow(1) + QScalar::q_pow(-1)
    }

    /// Builds from `(doubled exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, GaussRat)>>(it: I) -> Self {
        let mut s = QScalar::zero();
        for (e, c) in it {
            s.add_term(e, &c);
        }
        s
    }

    fn add_term(&mut self, e: i64, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map_or(false, |c| c.is_one())
    }

    /// Iterates `(doubled exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &GaussRat)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, half: i64) -> GaussRat {
        self.terms.get(&half).cloned().unwrap_or_default()
    }

    pub fn min_half_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_half_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `Some((h, c))` when the value is the single term `c·q^{h/2}`.
    pub fn as_monomial(&self) -> Option<(i64, &GaussRat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::default()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Inverse of a nonzero monomial; `None` otherwise.
    pub fn inv_monomial(&self) -> Option<Self> {
        let (h, c) = self.as_monomial()?;
        Some(QScalar::monomial(c.inv()?, -h))
    }

    pub fn conj(&self) -> Self {
        QScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, c.conj())).collect(),
        }
    }

    /// Multiplies by `q^{h/2}`.
    pub fn shift(&self, h: i64) -> Self {
        QScalar {
            terms: self.terms.iter().map(|(e, c)| (e + h, c.clone())).collect(),
        }
    }

    /// Substitutes `q ↦ q^{-1}`.
    pub fn invert_q(&self) -> Self {
        QScalar {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return QScalar::zero();
        }
        QScalar {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = QScalar::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact value at `q = 1`.
    pub fn at_one(&self) -> GaussRat {
        let mut acc = GaussRat::default();
        for c in self.terms.values() {
            acc = &acc + c;
        }
        acc
    }

    /// Numeric value at a real `q > 0`.
    pub fn eval(&self, q: f64) -> Complex64 {
        let root = num_traits::Float::sqrt(q);
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            acc += c.to_complex() * FloatCore::powi(root, *e as i32);
        }
        acc
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let qpart = q_power_text(*e);
            let (neg, body) = c.render_parts(!qpart.is_empty());
            let text = match (body.is_empty(), qpart.is_empty()) {
                (true, _) => qpart,
                (false, true) => body,
                (false, false) => format!("{}*{}", body, qpart),
            };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
                write!(f, "{}", text)?;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, text)?;
            }
        }
        Ok(())
    }
}

fn q_power_text(h: i64) -> String {
    match h {
        0 => String::new(),
        2 => String::from("q"),
        _ if h % 2 == 0 && h > 0 => format!("q^{}", h / 2),
        _ if h % 2 == 0 => format!("q^({})", h / 2),
        _ => format!("q^({}/2)", h),
    }
}

impl<'a> Add<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn add(self, o: &QScalar) -> QScalar {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c);
        }
        r
    }
}

impl<'a> Sub<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn sub(self, o: &QScalar) -> QScalar {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, &-c);
        }
        r
    }
}

impl<'a> Mul<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn mul(self, o: &QScalar) -> QScalar {
        if self.terms.len() == 1 && o.terms.len() == 1 {
            let (e1, c1) = self.terms.iter().next().unwrap();
            let (e2, c2) = o.terms.iter().next().unwrap();
            return QScalar::monomial(c1 * c2, e1 + e2);
        }
        let mut r = QScalar::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1 + e2, &(c1 * c2));
            }
        }
        r
    }
}

impl<'a> Neg for &'a QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Add for QScalar {
    type Output = QScalar;
    fn add(self, o: QScalar) -> QScalar {
        &self + &o
    }
}

impl Sub for QScalar {
    type Output = QScalar;
    fn sub(self, o: QScalar) -> QScalar {
        &self - &o
    }
}

impl Mul for QScalar {
    type Output = QScalar;
    fn mul(self, o: QScalar) -> QScalar {
        &self * &o
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, o: &QScalar) {
        for (e, c) in &o.terms {
            self.add_term(*e, c);
        }
    }
}

impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, o: &QScalar) {
        for (e, c) in &o.terms {
            self.add_term(*e, &-c);
        }
    }
}

impl From<i64> for QScalar {
    fn from(n: i64) -> Self {
        QScalar::from_int(n)
    }
}

impl From<GaussRat> for QScalar {
    fn from(c: GaussRat) -> Self {
        QScalar::constant(c)
    }
}

impl core::iter::Sum for QScalar {
    fn sum<I: Iterator<Item = QScalar>>(iter: I) -> Self {
        let mut acc = QScalar::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

impl Ring for QScalar {
    fn zero() -> Self {
        QScalar::zero()
    }
    fn one() -> Self {
        QScalar::one()
    }
    fn is_zero(&self) -> bool {
        QScalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        QScalar::conj(self)
    }
    fn is_one(&self) -> bool {
        QScalar::is_one(self)
    }
    fn factor_text(&self) -> (bool, String) {
        match self.terms.iter().next() {
            Some((e, c)) if self.terms.len() == 1 => {
                let qpart = q_power_text(*e);
                let (neg, body) = c.render_parts(true);
                let text = match (body.is_empty(), qpart.is_empty()) {
                    (true, _) => qpart,
                    (false, true) => body,
                    (false, false) => format!("{}*{}", body, qpart),
                };
                (neg, text)
            }
            _ => (false, format!("({})", self)),
        }
    }
}

/// Dense coefficient list of `t^0 .. t^d` after factoring out `t^{min}`
/// (`t = q^{1/2}`).
pub(crate) fn to_dense(s: &QScalar) -> (i64, Vec<GaussRat>) {
    let lo = match s.min_half_exp() {
        Some(v) => v,
        None => return (0, Vec::new()),
    };
    let hi = s.max_half_exp().unwrap();
    let mut v = alloc::vec![GaussRat::default(); (hi - lo + 1) as usize];
    for (e, c) in s.terms() {
        v[(e - lo) as usize] = c.clone();
    }
    (lo, v)
}

pub(crate) fn from_dense(shift: i64, v: &[GaussRat]) -> QScalar {
    QScalar::from_terms(
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64 + shift, c.clone())),
    )
}
