use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use alloc::vec::Vec;
use num_complex::Complex64;

use super::laurent::{from_dense, to_dense};
use super::{GaussRat, QScalar};
use crate::ring::{Field, Ring};

/// Rational function in `q^{1/2}`: `num / den` in lowest terms.
///
/// Canonical form: `den` is a polynomial in `t = q^{1/2}` with nonzero
/// constant term and leading coefficient 1, coprime to `num`; any monomial
/// factor lives in `num`. Equal values are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QFraction {
    num: QScalar,
    den: QScalar,
}

type Dense = Vec<GaussRat>;

fn trim(p: &mut Dense) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn divrem(a: &Dense, b: &Dense) -> (Dense, Dense) {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = b[db].inv().expect("division by zero polynomial");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut quo = alloc::vec![GaussRat::default(); r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            let t = &c * bj;
            r[k + j] = &r[k + j] - &t;
        }
        quo[k] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut quo);
    (quo, r)
}

fn monic(p: &Dense) -> Dense {
    let inv = p[p.len() - 1].inv().expect("zero polynomial");
    p.iter().map(|c| c * &inv).collect()
}

fn gcd(a: &Dense, b: &Dense) -> Dense {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

impl QFraction {
    pub fn zero() -> Self {
        QFraction {
            num: QScalar::zero(),
            den: QScalar::one(),
        }
    }

    pub fn one() -> Self {
        QFraction::from_scalar(QScalar::one())
    }

    pub fn from_scalar(s: QScalar) -> Self {
        QFraction {
            num: s,
            den: QScalar::one(),
        }
    }

    /// `num / den`; `None` when `den` is zero.
    pub fn new(num: QScalar, den: QScalar) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(QFraction::reduce(num, den))
    }

    fn reduce(num: QScalar, den: QScalar) -> Self {
        if num.is_zero() {
            return QFraction::zero();
        }
        if let Some((h, c)) = den.as_monomial() {
            let inv = c.inv().expect("nonzero monomial");
            return QFraction {
                num: num.scale(&inv).shift(-h),
                den: QScalar::one(),
            };
        }
        let (ln, n) = to_dense(&num);
        let (ld, d) = to_dense(&den);
        let g = gcd(&n, &d);
        let (mut n, mut d) = if g.len() > 1 {
            (divrem(&n, &g).0, divrem(&d, &g).0)
        } else {
            (n, d)
        };
        let lead_inv = d[d.len() - 1].inv().expect("nonzero lead");
        for c in n.iter_mut() {
            *c = &*c * &lead_inv;
        }
        for c in d.iter_mut() {
            *c = &*c * &lead_inv;
        }
        QFraction {
            num: from_dense(ln - ld, &n),
            den: from_dense(0, &d),
        }
    }

    pub fn numer(&self) -> &QScalar {
        &self.num
    }

    pub fn denom(&self) -> &QScalar {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// The Laurent polynomial, when the denominator is trivial.
    pub fn as_scalar(&self) -> Option<&QScalar> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn conj(&self) -> Self {
        QFraction::reduce(self.num.conj(), self.den.conj())
    }

    pub fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(QFraction::reduce(self.den.clone(), self.num.clone()))
    }

    /// Exact value at `q = 1`, if the denominator does not vanish there.
    pub fn at_one(&self) -> Option<GaussRat> {
        let d = self.den.at_one();
        Some(&self.num.at_one() * &d.inv()?)
    }

    pub fn eval(&self, q: f64) -> Complex64 {
        self.num.eval(q) / self.den.eval(q)
    }

    pub fn scale(&self, s: &QScalar) -> Self {
        if self.den.is_one() {
            return QFraction::from_scalar(&self.num * s);
        }
        QFraction::reduce(&self.num * s, self.den.clone())
    }
}

impl Default for QFraction {
    fn default() -> Self {
        QFraction::zero()
    }
}

impl From<QScalar> for QFraction {
    fn from(s: QScalar) -> Self {
        QFraction::from_scalar(s)
    }
}

impl From<&QScalar> for QFraction {
    fn from(s: &QScalar) -> Self {
        QFraction::from_scalar(s.clone())
    }
}

impl fmt::Display for QFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<'a> Add<&'a QFraction> for &'a QFraction {
    type Output = QFraction;
    fn add(self, o: &QFraction) -> QFraction {
        if self.den.is_one() && o.den.is_one() {
            return QFraction::from_scalar(&self.num + &o.num);
        }
        if self.den == o.den {
            return QFraction::reduce(&self.num + &o.num, self.den.clone());
        }
        QFraction::reduce(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl<'a> Sub<&'a QFraction> for &'a QFraction {
    type Output = QFraction;
    fn sub(self, o: &QFraction) -> QFraction {
        self + &(-o)
    }
}

impl<'a> Mul<&'a QFraction> for &'a QFraction {
    type Output = QFraction;
    fn mul(self, o: &QFraction) -> QFraction {
        if self.den.is_one() && o.den.is_one() {
            return QFraction::from_scalar(&self.num * &o.num);
        }
        QFraction::reduce(&self.num * &o.num, &self.den * &o.den)
    }
}

impl<'a> Neg for &'a QFraction {
    type Output = QFraction;
    fn neg(self) -> QFraction {
        QFraction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for QFraction {
    type Output = QFraction;
    fn add(self, o: QFraction) -> QFraction {
        &self + &o
    }
}

impl Sub for QFraction {
    type Output = QFraction;
    fn sub(self, o: QFraction) -> QFraction {
        &self - &o
    }
}

impl Mul for QFraction {
    type Output = QFraction;
    fn mul(self, o: QFraction) -> QFraction {
        &self * &o
    }
}

impl Neg for QFraction {
    type Output = QFraction;
    fn neg(self) -> QFraction {
        -&self
    }
}

impl Ring for QFraction {
    fn zero() -> Self {
        QFraction::zero()
    }
    fn one() -> Self {
        QFraction::one()
    }
    fn is_zero(&self) -> bool {
        QFraction::is_zero(self)
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
        QFraction::conj(self)
    }
    fn factor_text(&self) -> (bool, alloc::string::String) {
        self.factor_text_impl()
    }
}

impl QFraction {
    fn factor_text_impl(&self) -> (bool, alloc::string::String) {
        if self.den.is_one() {
            self.num.factor_text()
        } else {
            (false, alloc::format!("{}", self))
        }
    }
}

impl Field for QFraction {
    fn inv(&self) -> Option<Self> {
        QFraction::inv(self)
    }
}
