//! Quantum-space presets, normal ordering, conjugation, star products and
//! self-conjugate coordinates.

mod comm;
mod poly;
mod presets;
mod rewrite;
mod space;

pub use comm::{dequantize, multidegree, quantize, quantize_monomial, star_product, CommPoly, Multidegree};
pub use poly::{render_terms, word_text, NCPoly};
pub use presets::preset;
pub use rewrite::{Orderer, RewriteSystem, Rule, Word};
pub use space::{LinearImages, RealCoords, SpaceKind, SpaceSpec};
