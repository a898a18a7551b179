//! The interface a concrete rigid C*-tensor category offers to the tube
//! algebra engine.
//!
//! Objects are words of labels; the unit label never appears in a word, so
//! the empty word is the unit object. Morphisms carry no record of their
//! words: callers keep track of domains and codomains.

use crate::error::Result;
use crate::linalg::{inverse, Mat};
use crate::scalar::Field;
use crate::Error;
use std::fmt::Debug;
use std::hash::Hash;

pub trait Category: Send + Sync {
    type Label: Clone + Ord + Hash + Debug + Send + Sync + 'static;
    type Scalar: Field;
    type Mor: Clone + Debug + Send + Sync;

    fn name(&self) -> String;
    fn unit(&self) -> Self::Label;
    fn dual(&self, a: &Self::Label) -> Self::Label;
    /// Quantum dimension d(a).
    fn dim(&self, a: &Self::Label) -> Self::Scalar;
    /// All irreducible labels, when there are finitely many.
    fn irreducibles(&self) -> Option<Vec<Self::Label>>;
    /// The irreducibles occurring in the tensor product of `word`.
    fn constituents(&self, word: &[Self::Label]) -> Vec<Self::Label>;
    fn label_name(&self, a: &Self::Label) -> String;

    fn identity(&self, word: &[Self::Label]) -> Self::Mor;
    fn zero(&self, cod: &[Self::Label], dom: &[Self::Label]) -> Self::Mor;
    /// f ∘ g.
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;
    fn tensor(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;
    fn adjoint(&self, f: &Self::Mor) -> Self::Mor;
    fn add(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;
    fn scale(&self, f: &Self::Mor, x: &Self::Scalar) -> Self::Mor;
    /// Categorical trace Tr of an endomorphism.
    fn trace(&self, f: &Self::Mor) -> Self::Scalar;
    /// s_a ∈ (a ā, ε).
    fn std_s(&self, a: &Self::Label) -> Self::Mor;
    /// t_a ∈ (ā a, ε).
    fn std_t(&self, a: &Self::Label) -> Self::Mor;
    /// A basis of the morphisms dom → cod.
    fn hom_basis(&self, cod: &[Self::Label], dom: &[Self::Label]) -> Result<Vec<Self::Mor>>;
    /// Size of a morphism, used for residuals (0 means exactly zero in
    /// exact arithmetic).
    fn norm(&self, f: &Self::Mor) -> f64;

    /// Drops unit labels.
    fn word(&self, labels: &[Self::Label]) -> Vec<Self::Label> {
        let e = self.unit();
        labels.iter().filter(|l| **l != e).cloned().collect()
    }

    /// ⟨T, S⟩ = Tr(S* T).
    fn inner(&self, t: &Self::Mor, s: &Self::Mor) -> Self::Scalar {
        self.trace(&self.compose(&self.adjoint(s), t))
    }

    fn sub(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor {
        self.add(f, &self.scale(g, &(-Self::Scalar::one())))
    }

    /// The rotation ξ ↦ (1^{⊗k} ⊗ s_a*)(1 ⊗ ξ ⊗ 1) s_a on (a^k, ε).
    fn rotate(&self, a: &Self::Label, k: usize, xi: &Self::Mor) -> Self::Mor {
        let one = self.identity(std::slice::from_ref(a));
        let ak = vec![a.clone(); k];
        let lifted = self.compose(&self.tensor(&self.tensor(&one, xi), &self.identity(&[self.dual(a)])), &self.std_s(a));
        let closing = self.tensor(&self.identity(&ak), &self.adjoint(&self.std_s(a)));
        self.compose(&closing, &lifted)
    }
}

/// A basis of a morphism space together with the inverse of its Gram
/// matrix G_ab = ⟨X_a, X_b⟩.
#[derive(Clone, Debug)]
pub struct GramBasis<C: Category> {
    pub basis: Vec<C::Mor>,
    pub gram: Mat<C::Scalar>,
    pub gram_inv: Mat<C::Scalar>,
}

impl<C: Category> GramBasis<C> {
    pub fn new(cat: &C, basis: Vec<C::Mor>) -> Result<Self> {
        let n = basis.len();
        let gram = Mat::from_fn(n, n, |a, b| cat.inner(&basis[a], &basis[b]));
        let gram_inv = inverse(&gram).ok_or_else(|| Error::Singular("Gram matrix of a hom basis".into()))?;
        Ok(GramBasis { basis, gram, gram_inv })
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coordinates c with M = Σ c_a X_a, from r_a = ⟨M, X_a⟩ and c = G^{-T} r.
    pub fn coords(&self, cat: &C, m: &C::Mor) -> Vec<C::Scalar> {
        let r: Vec<C::Scalar> = self.basis.iter().map(|x| cat.inner(m, x)).collect();
        let n = self.len();
        (0..n)
            .map(|b| {
                let mut s = C::Scalar::zero();
                for (a, ra) in r.iter().enumerate() {
                    let g = self.gram_inv.get(a, b);
                    if !g.is_zero() && !ra.is_zero() {
                        s = s + g.clone() * ra;
                    }
                }
                s
            })
            .collect()
    }

    pub fn combine(&self, cat: &C, coeffs: &[C::Scalar], cod: &[C::Label], dom: &[C::Label]) -> C::Mor {
        let mut out = cat.zero(cod, dom);
        for (x, c) in self.basis.iter().zip(coeffs) {
            if !c.is_zero() {
                out = cat.add(&out, &cat.scale(x, c));
            }
        }
        out
    }

    /// Σ over an orthonormal basis of f(W) g(W*), via Σ_ab (G⁻¹)_{ba} f(X_a) g(X_b*).
    pub fn onb_sum(&self, cat: &C, mut term: impl FnMut(&C::Mor, &C::Mor) -> C::Mor, zero: C::Mor) -> C::Mor {
        let mut acc = zero;
        let adj: Vec<C::Mor> = self.basis.iter().map(|x| cat.adjoint(x)).collect();
        for a in 0..self.len() {
            for b in 0..self.len() {
                let w = self.gram_inv.get(b, a);
                if w.is_zero() {
                    continue;
                }
                acc = cat.add(&acc, &cat.scale(&term(&self.basis[a], &adj[b]), w));
            }
        }
        acc
    }
}

fn id_of<C: Category>(cat: &C, a: &C::Label) -> C::Mor {
    cat.identity(&cat.word(std::slice::from_ref(a)))
}

/// Gram-Schmidt with one re-orthogonalization pass. Exact fields need the
/// square roots of the norms to lie in the field.
pub fn onb<C: Category>(cat: &C, basis: &[C::Mor]) -> Result<Vec<C::Mor>> {
    let mut out: Vec<C::Mor> = Vec::with_capacity(basis.len());
    for v in basis {
        let mut w = v.clone();
        for _ in 0..2 {
            for e in &out {
                let c = cat.inner(&w, e);
                if !c.is_zero() {
                    w = cat.sub(&w, &cat.scale(e, &c));
                }
            }
        }
        let n2 = cat.inner(&w, &w);
        let tiny = if C::Scalar::EXACT { n2.is_zero() } else { n2.magnitude() < 1e-20 };
        if tiny {
            return Err(Error::Singular("hom basis is linearly dependent".into()));
        }
        let n = n2.sqrt().ok_or_else(|| Error::NotInField(format!("square root of the norm {n2:?}")))?;
        let inv = n.inv().ok_or_else(|| Error::Singular("zero norm".into()))?;
        out.push(cat.scale(&w, &inv));
    }
    Ok(out)
}

/// (Tr_a ⊗ id)(T) = (t_a* ⊗ 1)(1_ā ⊗ T)(t_a ⊗ 1) for T ∈ (a·cod, a·dom).
pub fn partial_trace_left<C: Category>(cat: &C, a: &C::Label, cod: &[C::Label], dom: &[C::Label], t: &C::Mor) -> C::Mor {
    let ta = cat.std_t(a);
    let top = cat.tensor(&cat.adjoint(&ta), &cat.identity(cod));
    let mid = cat.tensor(&id_of(cat, &cat.dual(a)), t);
    let bottom = cat.tensor(&ta, &cat.identity(dom));
    cat.compose(&top, &cat.compose(&mid, &bottom))
}

/// (id ⊗ Tr_a)(T) = (1 ⊗ s_a*)(T ⊗ 1_ā)(1 ⊗ s_a) for T ∈ (cod·a, dom·a).
pub fn partial_trace_right<C: Category>(cat: &C, a: &C::Label, cod: &[C::Label], dom: &[C::Label], t: &C::Mor) -> C::Mor {
    let sa = cat.std_s(a);
    let top = cat.tensor(&cat.identity(cod), &cat.adjoint(&sa));
    let mid = cat.tensor(t, &id_of(cat, &cat.dual(a)));
    let bottom = cat.tensor(&cat.identity(dom), &sa);
    cat.compose(&top, &cat.compose(&mid, &bottom))
}

/// (αb, γ) → (α, γ b̄): T ↦ (1_α ⊗ s_b*)(T ⊗ 1_b̄).
pub fn frobenius_right<C: Category>(cat: &C, alpha: &[C::Label], b: &C::Label, t: &C::Mor) -> C::Mor {
    let close = cat.tensor(&cat.identity(alpha), &cat.adjoint(&cat.std_s(b)));
    cat.compose(&close, &cat.tensor(t, &id_of(cat, &cat.dual(b))))
}

/// Inverse of [`frobenius_right`]: S ↦ (S ⊗ 1_b)(1_γ ⊗ t_b).
pub fn frobenius_right_inverse<C: Category>(cat: &C, gamma: &[C::Label], b: &C::Label, s: &C::Mor) -> C::Mor {
    let open = cat.tensor(&cat.identity(gamma), &cat.std_t(b));
    cat.compose(&cat.tensor(s, &id_of(cat, b)), &open)
}

/// (aβ, γ) → (β, ā γ): T ↦ (t_a* ⊗ 1_β)(1_ā ⊗ T).
pub fn frobenius_left<C: Category>(cat: &C, a: &C::Label, beta: &[C::Label], t: &C::Mor) -> C::Mor {
    let close = cat.tensor(&cat.adjoint(&cat.std_t(a)), &cat.identity(beta));
    cat.compose(&close, &cat.tensor(&id_of(cat, &cat.dual(a)), t))
}

/// Inverse of [`frobenius_left`]: S ↦ (1_a ⊗ S)(s_a ⊗ 1_γ).
pub fn frobenius_left_inverse<C: Category>(cat: &C, a: &C::Label, gamma: &[C::Label], s: &C::Mor) -> C::Mor {
    let open = cat.tensor(&cat.std_s(a), &cat.identity(gamma));
    cat.compose(&cat.tensor(&id_of(cat, a), s), &open)
}
