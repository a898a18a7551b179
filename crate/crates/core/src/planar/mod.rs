//! Non-crossing pair partitions and the Temperley-Lieb diagram calculus.

mod diagram;
mod moments;
mod tl;

pub use diagram::{compose, PairDiagram};
pub use moments::{
    binomial, catalan, cesaro_tau_q, cesaro_tau_q_enumerated, enumerate_nc2, enumerate_rect, moment_closed_form,
    nc2_circ, riordan, spectral_moment, tl_moment, zeta_on_basis, CircleMeasure,
};
pub use tl::TLVector;
