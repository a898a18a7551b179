//! Computational toolkit for rigid C*-tensor categories: fusion rings and
//! the subcategory index, tube algebras with their central unitaries,
//! Temperley-Lieb diagram calculus, and quantum doubles of finite groups.

pub mod error;
pub mod fusion;
pub mod grouprep;
pub mod linalg;
pub mod planar;
pub mod scalar;
pub mod tlj;
pub mod tube;

pub use error::{Error, Result};
