//! Fusion rings, full subcategories, orbits, the index and gradings.
//!
//! Finite rings store their whole multiplication table. Lazy rings
//! (SO(3) and free wreath products) compute products on demand and expose
//! their labels only through breadth-first exploration from generators.

mod chartable;
mod finite;
mod lazy;
mod ops;

pub use chartable::{parse_cyclo_expr, CharTable};
pub use finite::{pointed_ring, rep_ring, FiniteRing};
pub use lazy::{so3_ring, wreath_ring, So3Ring, WLabel, WreathRing};
pub use ops::{
    check_axioms_on, decompose_word, explore, full_subcategories, fusion_closure, global_dim, grading_kernel, index,
    mult_in_word, orbits, restrict, sub_dim, unit_radical, validate_grading, validate_sub, IndexOutcome,
};

use crate::error::Result;
use crate::grouprep::FiniteGroup;
use crate::scalar::Rational;
use std::collections::BTreeSet;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

/// Default number of labels visited when exploring a lazy ring.
pub const DEFAULT_BOUND: usize = 2000;

pub trait FusionRing: Send + Sync {
    type Label: Clone + Ord + Hash + Debug + Send + Sync + 'static;

    fn name(&self) -> String;
    fn unit(&self) -> Self::Label;
    fn conj(&self, a: &Self::Label) -> Self::Label;
    fn dim(&self, a: &Self::Label) -> Rational;
    /// α ⊗ β as a sorted list of (γ, N(α,β,γ)) with N > 0.
    fn fuse(&self, a: &Self::Label, b: &Self::Label) -> Result<Vec<(Self::Label, u64)>>;
    /// Every label, or `None` for a lazily generated ring.
    fn labels(&self) -> Option<Vec<Self::Label>>;
    /// Labels whose tensor powers contain every irreducible.
    fn generators(&self) -> Vec<Self::Label>;
    fn label_name(&self, a: &Self::Label) -> String;
    fn parse_label(&self, s: &str) -> Result<Self::Label>;

    fn is_infinite(&self) -> bool {
        self.labels().is_none()
    }

    fn n(&self, a: &Self::Label, b: &Self::Label, c: &Self::Label) -> Result<u64> {
        Ok(self.fuse(a, b)?.into_iter().find(|(g, _)| g == c).map_or(0, |(_, n)| n))
    }
}

/// A full subcategory, given by its members or by a membership test.
#[derive(Clone)]
pub enum Subcategory<L> {
    Finite(BTreeSet<L>),
    Predicate { name: String, test: Arc<dyn Fn(&L) -> bool + Send + Sync> },
    /// The kernel of a grading; the orbits are the fibres of the grading.
    Kernel(Grading<L>),
}

impl<L: Clone + Ord + Debug> Subcategory<L> {
    pub fn finite(members: impl IntoIterator<Item = L>) -> Self {
        Subcategory::Finite(members.into_iter().collect())
    }

    pub fn predicate(name: impl Into<String>, test: impl Fn(&L) -> bool + Send + Sync + 'static) -> Self {
        Subcategory::Predicate { name: name.into(), test: Arc::new(test) }
    }

    pub fn contains(&self, a: &L) -> bool {
        match self {
            Subcategory::Finite(s) => s.contains(a),
            Subcategory::Predicate { test, .. } => test(a),
            Subcategory::Kernel(g) => g.degree(a) == g.target.identity(),
        }
    }

    pub fn members(&self) -> Option<&BTreeSet<L>> {
        match self {
            Subcategory::Finite(s) => Some(s),
            _ => None,
        }
    }
}

impl<L: Debug> Debug for Subcategory<L> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Subcategory::Finite(s) => f.debug_set().entries(s.iter()).finish(),
            Subcategory::Predicate { name, .. } => write!(f, "Predicate({name})"),
            Subcategory::Kernel(g) => write!(f, "Kernel(→ {})", g.target.name()),
        }
    }
}

/// A map Ξ from labels to a finite group.
#[derive(Clone)]
pub struct Grading<L> {
    pub target: FiniteGroup,
    map: Arc<dyn Fn(&L) -> usize + Send + Sync>,
}

impl<L> Grading<L> {
    pub fn new(target: FiniteGroup, map: impl Fn(&L) -> usize + Send + Sync + 'static) -> Self {
        Grading { target, map: Arc::new(map) }
    }

    pub fn degree(&self, a: &L) -> usize {
        (self.map)(a)
    }
}
