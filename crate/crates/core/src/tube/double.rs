//! Drinfeld's quantum double D(G) = C(G) ⋊ C[G] in the basis δ_x λ_g,
//! with product (δ_x λ_g)(δ_y λ_h) = [x = g y g⁻¹] δ_x λ_{gh}, and the
//! Haar trace τ(δ_x λ_g) = [g = e].

use crate::error::Result;
use crate::grouprep::{FiniteGroup, GroupCategory};
use crate::linalg::Mat;
use crate::scalar::FromCyclo;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct QuantumDouble<S> {
    group: FiniteGroup,
    /// ρ_U(g) for each irrep U.
    irreps: Vec<Vec<Mat<S>>>,
}

#[derive(Clone, Debug)]
pub struct DoubleReport {
    pub group: String,
    pub dim: usize,
    pub traciality_residual: f64,
    pub markov_residual: f64,
    pub pairs: usize,
}

impl<S: FromCyclo> QuantumDouble<S> {
    pub fn new(cat: &GroupCategory<S>) -> Self {
        let irreps = cat
            .irreps()
            .iter()
            .map(|r| r.matrices.iter().map(|m| m.map(|c| S::from_cyclo(c))).collect())
            .collect();
        QuantumDouble { group: cat.group().clone(), irreps }
    }

    pub fn builtin(name: &str) -> Result<Self> {
        Ok(Self::new(&GroupCategory::builtin(name)?))
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.group.order().pow(2)
    }

    fn index(&self, x: usize, g: usize) -> usize {
        x * self.group.order() + g
    }

    pub fn zero(&self) -> Vec<S> {
        vec![S::zero(); self.dim()]
    }

    pub fn basis(&self, x: usize, g: usize) -> Vec<S> {
        let mut v = self.zero();
        v[self.index(x, g)] = S::one();
        v
    }

    pub fn one(&self) -> Vec<S> {
        let e = self.group.identity();
        let mut v = self.zero();
        for x in self.group.elements() {
            v[self.index(x, e)] = S::one();
        }
        v
    }

    pub fn mul(&self, a: &[S], b: &[S]) -> Vec<S> {
        let n = self.group.order();
        let g = &self.group;
        let mut out = self.zero();
        let nz = |v: &[S]| -> Vec<(usize, usize)> {
            (0..v.len()).filter(|&t| !v[t].is_zero()).map(|t| (t / n, t % n)).collect()
        };
        let nb = nz(b);
        for (x, gg) in nz(a) {
            let ca = &a[self.index(x, gg)];
            for &(y, h) in &nb {
                if x == g.mul(g.mul(gg, y), g.inv(gg)) {
                    let t = self.index(x, g.mul(gg, h));
                    out[t] = out[t].clone() + ca.clone() * &b[self.index(y, h)];
                }
            }
        }
        out
    }

    /// (δ_x λ_g)* = δ_{g⁻¹xg} λ_{g⁻¹}, extended antilinearly.
    pub fn star(&self, a: &[S]) -> Vec<S> {
        let n = self.group.order();
        let g = &self.group;
        let mut out = self.zero();
        for (t, c) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (x, gg) = (t / n, t % n);
            let gi = g.inv(gg);
            out[self.index(g.mul(g.mul(gi, x), gg), gi)] = c.conj();
        }
        out
    }

    pub fn tau(&self, a: &[S]) -> S {
        let e = self.group.identity();
        self.group.elements().fold(S::zero(), |s, x| s + &a[self.index(x, e)])
    }

    /// E_{U,ij} = d(U)/|G| Σ_g conj(U(g)_ij) λ_g, where λ_g = Σ_x δ_x λ_g.
    pub fn matrix_unit(&self, u: usize, i: usize, j: usize) -> Vec<S> {
        let d = self.irreps[u][0].rows();
        let w = S::from_i64(d as i64) * S::from_i64(self.group.order() as i64).inv().expect("|G| ≠ 0");
        let mut out = self.zero();
        for g in self.group.elements() {
            let c = self.irreps[u][g].get(i, j).conj() * &w;
            for x in self.group.elements() {
                out[self.index(x, g)] = c.clone();
            }
        }
        out
    }

    /// Σ_{U,i,j} d(U)⁻¹ E_{U,ij} E_{U,ij}* − 1.
    pub fn markov_residual(&self) -> f64 {
        let mut sum = self.zero();
        for (u, mats) in self.irreps.iter().enumerate() {
            let d = mats[0].rows();
            let w = S::from_i64(d as i64).inv().expect("d ≠ 0");
            for i in 0..d {
                for j in 0..d {
                    let e = self.matrix_unit(u, i, j);
                    for (s, t) in sum.iter_mut().zip(self.mul(&e, &self.star(&e))) {
                        *s = s.clone() + t * &w;
                    }
                }
            }
        }
        let one = self.one();
        sum.iter().zip(&one).map(|(a, b)| (a.clone() - b.clone()).magnitude()).fold(0.0, f64::max)
    }

    /// A sparse element with small integer coefficients.
    pub fn random_element(&self, rng: &mut ChaCha8Rng) -> Vec<S> {
        (0..self.dim())
            .map(|_| if rng.gen_bool(0.2) { S::from_i64(rng.gen_range(-3..=3)) } else { S::zero() })
            .collect()
    }

    /// max |τ(ab) − τ(ba)| over seeded random pairs.
    pub fn traciality_residual(&self, pairs: usize, seed: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst: f64 = 0.0;
        for _ in 0..pairs {
            let a = self.random_element(&mut rng);
            let b = self.random_element(&mut rng);
            let d = self.tau(&self.mul(&a, &b)) - self.tau(&self.mul(&b, &a));
            worst = worst.max(d.magnitude());
        }
        worst
    }

    pub fn report(&self, pairs: usize, seed: u64) -> DoubleReport {
        DoubleReport {
            group: self.group.name().to_string(),
            dim: self.dim(),
            traciality_residual: self.traciality_residual(pairs, seed),
            markov_residual: self.markov_residual(),
            pairs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Cyclo;

    #[test]
    fn star_algebra_axioms() {
        let d = QuantumDouble::<Cyclo>::builtin("S3").unwrap();
        assert_eq!(d.dim(), 36);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let (a, b, c) = (d.random_element(&mut rng), d.random_element(&mut rng), d.random_element(&mut rng));
            assert_eq!(d.mul(&d.mul(&a, &b), &c), d.mul(&a, &d.mul(&b, &c)));
            assert_eq!(d.star(&d.mul(&a, &b)), d.mul(&d.star(&b), &d.star(&a)));
            assert_eq!(d.star(&d.star(&a)), a);
            assert_eq!(d.mul(&d.one(), &a), a);
        }
    }

    #[test]
    fn matrix_units_are_the_group_algebra_units() {
        let d = QuantumDouble::<Cyclo>::builtin("S3").unwrap();
        // E_{U,ij} E_{U,kl} = δ_jk E_{U,il} for the 2-dimensional irrep
        let e = |i, j| d.matrix_unit(2, i, j);
        assert_eq!(d.mul(&e(0, 1), &e(1, 0)), e(0, 0));
        assert_eq!(d.mul(&e(0, 1), &e(0, 1)), d.zero());
        assert_eq!(d.tau(&d.one()), Cyclo::int(6));
    }

    #[test]
    fn markov_and_trace() {
        for g in ["Z/2", "S3", "A4"] {
            let r = QuantumDouble::<Cyclo>::builtin(g).unwrap().report(20, 1);
            assert_eq!((r.markov_residual, r.traciality_residual), (0.0, 0.0), "{g}");
        }
    }
}
