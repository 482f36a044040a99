use crate::error::{Error, Result};
use crate::scalar::QScalar;

use super::LatticeValue;

/// Portion of the real line covered by a Jackson sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HalfLine {
    Pos,
    Neg,
    Full,
}

/// Sign of the measure on the negative half-line.
///
/// `Riemann` weights the point `-c q^{ak}` by `(q^a - 1) c q^{ak}`, which
/// reproduces the ordinary integral as `q → 1`. `Verbatim` uses the printed
/// form `(1 - q^a) c q^{ak}`, which equals the signed coordinate value
/// times `q^a - 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum NegBranch {
    #[default]
    Riemann,
    Verbatim,
}

impl NegBranch {
    pub fn name(self) -> &'static str {
        match self {
            NegBranch::Riemann => "riemann",
            NegBranch::Verbatim => "verbatim",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "riemann" => Some(NegBranch::Riemann),
            "verbatim" => Some(NegBranch::Verbatim),
            _ => None,
        }
    }

    /// Measure sign for a point in sector `s`.
    pub fn sign(self, s: i8) -> i8 {
        match self {
            NegBranch::Riemann => 1,
            NegBranch::Verbatim => s,
        }
    }
}

pub(crate) fn check_q(q: f64) -> Result<()> {
    if q.is_finite() && q > 1.0 {
        Ok(())
    } else {
        Err(Error::QOutOfRange(q))
    }
}

/// Truncated Jackson integral with step `q^a` and scale `c`, summed over
/// `k` in `window` (inclusive).
///
/// `f(s, k, x)` receives the sign, the exponent and the point
/// `x = s·c·q^{ak}`. The positive half-line contributes
/// `(q^a - 1) Σ_k c q^{ak} f(+, k, c q^{ak})`, the negative one the same sum
/// over `-c q^{ak}` with the sign chosen by `branch`.
pub fn jackson_1d<V: LatticeValue>(
    f: impl Fn(i8, i32, &V) -> V,
    a: i32,
    c: &QScalar,
    q: f64,
    half: HalfLine,
    window: (i32, i32),
    branch: NegBranch,
) -> Result<V> {
    check_q(q)?;
    if a <= 0 {
        return Err(Error::Invalid(alloc::format!("Jackson step exponent must be positive, got {}", a)));
    }
    if window.0 > window.1 {
        return Err(Error::Invalid("empty Jackson window".into()));
    }
    let step = V::lift(&(QScalar::q_pow(a as i64) - QScalar::one()), q);
    let mut pos = V::zero();
    let mut neg = V::zero();
    for k in window.0..=window.1 {
        let m = V::lift(&(c * &QScalar::q_pow(a as i64 * k as i64)), q);
        if half != HalfLine::Neg {
            pos = pos.add(&m.mul(&f(1, k, &m)));
        }
        if half != HalfLine::Pos {
            neg = neg.add(&m.mul(&f(-1, k, &m.neg())));
        }
    }
    let total = match branch {
        NegBranch::Riemann => pos.add(&neg),
        NegBranch::Verbatim => pos.sub(&neg),
    };
    Ok(step.mul(&total))
}
