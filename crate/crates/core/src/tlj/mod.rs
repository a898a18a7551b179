//! The Temperley-Lieb-Jones category over Q(√δ) and the unitary V whose
//! translates give a length-3 projective resolution of the counit.

mod category;
mod jw;
mod resolution;

pub use category::TLCategory;
pub use jw::{chebyshev, jones_wenzl};
pub use resolution::{build_v, check_resolution, homology_of_scalar_complex, numeric_report, symbolic_report, TljReport};
