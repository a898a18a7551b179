//! Explicit unitary irreducible representations with exact entries.

use super::FiniteGroup;
use crate::error::{invalid, Result};
use crate::linalg::{nullspace, Mat};
use crate::scalar::Cyclo;

/// ρ(g) for every group element g, as exact cyclotomic matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryIrrep {
    pub name: String,
    pub matrices: Vec<Mat<Cyclo>>,
}

impl UnitaryIrrep {
    pub fn new(name: impl Into<String>, matrices: Vec<Mat<Cyclo>>) -> Self {
        UnitaryIrrep { name: name.into(), matrices }
    }

    pub fn degree(&self) -> usize {
        self.matrices.first().map_or(0, |m| m.rows())
    }

    pub fn character(&self) -> Vec<Cyclo> {
        self.matrices.iter().map(|m| m.trace()).collect()
    }

    /// Homomorphism, unitarity and irreducibility (commutant of dimension 1).
    pub fn validate(&self, g: &FiniteGroup) -> Result<()> {
        let d = self.degree();
        if self.matrices.len() != g.order() {
            return invalid(format!("{}: {} matrices for a group of order {}", self.name, self.matrices.len(), g.order()));
        }
        if d == 0 || self.matrices.iter().any(|m| m.rows() != d || m.cols() != d) {
            return invalid(format!("{}: matrices must all be square of the same size", self.name));
        }
        let id = Mat::<Cyclo>::identity(d);
        for a in g.elements() {
            if self.matrices[a].adjoint().mul(&self.matrices[a]) != id {
                return invalid(format!("{}: ρ({}) is not unitary", self.name, g.element_name(a)));
            }
            for b in g.elements() {
                if self.matrices[a].mul(&self.matrices[b]) != self.matrices[g.mul(a, b)] {
                    return invalid(format!(
                        "{}: ρ({})ρ({}) ≠ ρ({}{})",
                        self.name,
                        g.element_name(a),
                        g.element_name(b),
                        g.element_name(a),
                        g.element_name(b)
                    ));
                }
            }
        }
        if self.commutant_dim() != 1 {
            return invalid(format!("{} is reducible", self.name));
        }
        Ok(())
    }

    /// dim {M : M ρ(g) = ρ(g) M for all g}.
    pub fn commutant_dim(&self) -> usize {
        let d = self.degree();
        // unknown M flattened row-major; one block of d² equations per element
        let eqs = self.matrices.len() * d * d;
        let mut a = Mat::<Cyclo>::zeros(eqs, d * d);
        for (gi, r) in self.matrices.iter().enumerate() {
            for i in 0..d {
                for j in 0..d {
                    let row = gi * d * d + i * d + j;
                    // (Mρ)_ij − (ρM)_ij = Σ_k M_ik ρ_kj − ρ_ik M_kj
                    for k in 0..d {
                        let x = a.get(row, i * d + k).clone() + r.get(k, j);
                        a.set(row, i * d + k, x);
                        let y = a.get(row, k * d + j).clone() - r.get(i, k).clone();
                        a.set(row, k * d + j, y);
                    }
                }
            }
        }
        nullspace(&a).len()
    }

    pub fn conjugate(&self) -> UnitaryIrrep {
        UnitaryIrrep { name: format!("conj({})", self.name), matrices: self.matrices.iter().map(|m| m.conj()).collect() }
    }
}
