//! Position–momentum algebras, R-matrix data and derivative actions.

mod algebra;
mod rmatrix;

pub use algebra::{derivative_action, momentum_system, phase_normal_order, Calculus, DerivKind, Ordering, PhaseAlgebra, Side};
pub use rmatrix::{rmatrix_checks, REntry, RMatrix, RMatrixReport};
