//! Finite groups, their unitary representations and the category Rep(G).

mod builtin;
mod group;
mod irrep;
mod repcat;

pub use builtin::builtin_group;
pub use group::FiniteGroup;
pub use irrep::UnitaryIrrep;
pub use repcat::GroupCategory;
