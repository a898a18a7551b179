//! Tube algebras of concrete rigid C*-tensor categories and the quantum
//! double of a finite group.

mod algebra;
mod category;
pub mod checks;
mod double;
pub mod spectral;

pub use algebra::{Block, BlockKey, Elem, Layout, TubeAlgebra, TubeElement};
pub use double::{DoubleReport, QuantumDouble};
pub use category::{
    frobenius_left, frobenius_left_inverse, frobenius_right, frobenius_right_inverse, onb, partial_trace_left,
    partial_trace_right, Category, GramBasis,
};
