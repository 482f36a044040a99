#![no_std]
#![doc = include_str!("../README.md")]

extern crate alloc;

pub mod error;
pub mod grassmann;
pub mod lattice;
pub mod linalg;
pub mod ncalg;
pub mod phasespace;
pub mod qexp;
pub mod ring;
pub mod scalar;

pub use error::{Error, Result};
pub use ncalg::{preset, CommPoly, NCPoly, SpaceKind, SpaceSpec};
pub use ring::{Coeff, Field, Ring};
pub use scalar::{qs, GaussRat, QFraction, QScalar};
