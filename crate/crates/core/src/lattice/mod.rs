//! Quasipoint lattices: Jackson sums, lattice functions, the inverse-weight
//! delta, spectral projectors and expectation values.
//!
//! Every sum runs over quasipoints in ascending [`Quasipoint`] order (sign
//! sector first, then exponents), so float results are reproducible.

mod expect;
mod function;
mod jackson;
mod spec;

pub use expect::{
    action, conjugate_function, density, density_poly, expectation, expectation_poly, normalize, Normalized,
    Observable,
};
pub use function::{
    combined_integral, integrate, integrate_separable, kappa_scale, lattice_delta, spectral_apply, Bound,
    LatticeFunction, Projector,
};
pub use jackson::{jackson_1d, HalfLine, NegBranch};
pub use spec::{LatticeSpec, LatticeValue, Quasipoint, Sampling, Window};
