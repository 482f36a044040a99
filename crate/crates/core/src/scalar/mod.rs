//! Exact scalars: Gaussian rationals, Laurent polynomials in `q^{1/2}` and
//! their fraction field.

mod fraction;
mod gauss;
mod laurent;
mod parse;

pub use fraction::QFraction;
pub use gauss::GaussRat;
pub use laurent::QScalar;
pub use parse::qs;
