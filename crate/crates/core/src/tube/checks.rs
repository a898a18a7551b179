//! Identity checks on the tube algebra: unitarity and centrality of U_i,
//! subcategory projections, the Pimsner-Popa sum and the Markov sum.

use super::algebra::{Elem, Layout, TubeAlgebra, TubeElement};
use super::category::Category;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::Field;
use std::collections::BTreeSet;

/// max(|U U^# − p|, |U^# U − p|) in coordinates.
pub fn unitarity_residual<C: Category>(alg: &TubeAlgebra<C>, i: &C::Label) -> Result<f64> {
    let u = alg.central_u(i)?;
    let us = alg.sharp(&u)?;
    let p = alg.p(i)?;
    let a = alg.mul(&u, &us)?.sub(&p).max_abs();
    let b = alg.mul(&us, &u)?.sub(&p).max_abs();
    Ok(a.max(b))
}

/// max over basis vectors V ∈ p_i·A·p_j of |U_i·V − V·U_j|.
pub fn commutation_residual<C: Category>(alg: &TubeAlgebra<C>, i: &C::Label, j: &C::Label) -> Result<f64> {
    let (ui, uj) = (alg.central_u(i)?, alg.central_u(j)?);
    let mut worst: f64 = 0.0;
    for g in alg.irreducibles()? {
        let key = (i.clone(), g.clone(), j.clone());
        for k in 0..alg.block_dim(i, &g, j)? {
            let v = alg.basis_element(&key, k)?;
            let d = alg.mul(&ui, &v)?.sub(&alg.mul(&v, &uj)?);
            worst = worst.max(d.max_abs());
        }
    }
    Ok(worst)
}

/// α·C₁: the irreducibles contained in some α⊗γ with γ ∈ C₁.
pub fn orbit<C: Category>(cat: &C, alpha: &C::Label, sub: &BTreeSet<C::Label>) -> BTreeSet<C::Label> {
    sub.iter().flat_map(|g| cat.constituents(&cat.word(&[alpha.clone(), g.clone()]))).collect()
}

/// d([ᾱα]_{C₁}) = Σ_{γ ∈ C₁} N(ᾱ α, γ) d(γ).
pub fn restricted_dim<C: Category>(cat: &C, alpha: &C::Label, sub: &BTreeSet<C::Label>) -> Result<C::Scalar> {
    let word = cat.word(&[cat.dual(alpha), alpha.clone()]);
    let mut s = C::Scalar::zero();
    for g in sub {
        let n = cat.hom_basis(&word, &cat.word(std::slice::from_ref(g)))?.len();
        s = s + C::Scalar::from_i64(n as i64) * cat.dim(g);
    }
    Ok(s)
}

/// The projection onto the blocks (iβ, βj) with β ∈ `betas`.
pub fn project<C: Category>(x: &Elem<C>, betas: &BTreeSet<C::Label>) -> Elem<C> {
    x.filter(|k| betas.contains(&k.1))
}

/// The same projection as a 0/1 diagonal matrix on the full tube basis.
pub fn subcat_projection<C: Category>(alg: &TubeAlgebra<C>, betas: &BTreeSet<C::Label>) -> Result<(Layout<C::Label>, Mat<C::Scalar>)> {
    let layout = Layout::new(alg, alg.all_blocks()?)?;
    let mut m = Mat::zeros(layout.dim, layout.dim);
    for (pos, k) in layout.keys.iter().enumerate() {
        if betas.contains(&k.1) {
            let end = layout.offsets.get(pos + 1).copied().unwrap_or(layout.dim);
            for t in layout.offsets[pos]..end {
                m.set(t, t, C::Scalar::one());
            }
        }
    }
    Ok((layout, m))
}

fn check_sub<C: Category>(alg: &TubeAlgebra<C>, sub: &BTreeSet<C::Label>) -> Result<()> {
    let labels: BTreeSet<C::Label> = alg.irreducibles()?.into_iter().collect();
    if !sub.contains(&alg.category().unit()) || !sub.is_subset(&labels) {
        return Err(Error::InvalidInput("a subcategory must contain ε and only irreducible labels".into()));
    }
    Ok(())
}

/// Left side minus right side of
/// Σ_j Σ_{W ∈ onb(iα, αj)} d(j) W·e_{C₁}·W^# = d([ᾱα]_{C₁})/d(α) · p_i·e_{α·C₁},
/// applied to every basis vector of A; returns the largest coordinate of
/// the difference.
pub fn lemma39_check<C: Category>(alg: &TubeAlgebra<C>, i: &C::Label, alpha: &C::Label, sub: &BTreeSet<C::Label>) -> Result<f64> {
    check_sub(alg, sub)?;
    let cat = alg.category();
    let labels = alg.irreducibles()?;
    let layout = Layout::new(alg, alg.all_blocks()?)?;
    // per j: basis X_a of (iα, αj), X_b^#, G⁻¹ and d(j)
    let mut families = Vec::new();
    for j in &labels {
        let block = alg.block(i, alpha, j)?;
        if block.basis.is_empty() {
            continue;
        }
        let xs: Vec<Elem<C>> = (0..block.basis.len()).map(|a| alg.basis_element(&block.key, a)).collect::<Result<_>>()?;
        let sharps: Vec<Elem<C>> = xs.iter().map(|x| alg.sharp(x)).collect::<Result<_>>()?;
        families.push((xs, sharps, block.basis.gram_inv.clone(), cat.dim(j)));
    }
    let coef = restricted_dim(cat, alpha, sub)? * cat.dim(alpha).inv().ok_or_else(|| Error::Singular("d(α) = 0".into()))?;
    let alpha_orbit = orbit(cat, alpha, sub);
    let p = alg.p(i)?;
    let mut worst: f64 = 0.0;
    for q in 0..layout.dim {
        let x: Elem<C> = layout.unit_vector(q);
        let mut lhs = TubeElement::zero();
        for (xs, sharps, ginv, dj) in &families {
            let ys: Vec<Elem<C>> = sharps.iter().map(|s| alg.mul(s, &x).map(|y| project::<C>(&y, sub))).collect::<Result<_>>()?;
            for (a, xa) in xs.iter().enumerate() {
                let mut z = TubeElement::zero();
                for (b, y) in ys.iter().enumerate() {
                    let w = ginv.get(b, a);
                    if !w.is_zero() && !y.is_zero() {
                        z = z.add(&y.scale(w));
                    }
                }
                if !z.is_zero() {
                    lhs = lhs.add(&alg.mul(xa, &z)?.scale(dj));
                }
            }
        }
        let rhs = alg.mul(&p, &project::<C>(&x, &alpha_orbit))?.scale(&coef);
        worst = worst.max(lhs.sub(&rhs).max_abs());
    }
    Ok(worst)
}

#[derive(Clone, Debug)]
pub struct MarkovReport<C: Category> {
    pub sum: Elem<C>,
    /// [C : C₁] = Σ_s d(α_s)² / d([ᾱ_s α_s]_{C₁}) over orbit representatives.
    pub index: C::Scalar,
    pub residual: f64,
}

/// Representatives of the C₁-orbits α·C₁ in label order.
pub fn orbit_representatives<C: Category>(alg: &TubeAlgebra<C>, sub: &BTreeSet<C::Label>) -> Result<Vec<C::Label>> {
    let mut covered = BTreeSet::new();
    let mut reps = Vec::new();
    for a in alg.irreducibles()? {
        if covered.contains(&a) {
            continue;
        }
        covered.extend(orbit(alg.category(), &a, sub));
        reps.push(a);
    }
    Ok(reps)
}

/// Σ_s Σ_{i,j} Σ_{W ∈ onb(iα_s, α_s j)} d(j) d(α_s) / d([ᾱ_s α_s]_{C₁}) W·W^#,
/// compared with [C : C₁]·1.
pub fn markov_sum_check<C: Category>(alg: &TubeAlgebra<C>, sub: &BTreeSet<C::Label>) -> Result<MarkovReport<C>> {
    check_sub(alg, sub)?;
    let cat = alg.category();
    let labels = alg.irreducibles()?;
    let mut sum = TubeElement::zero();
    let mut index = C::Scalar::zero();
    for a in orbit_representatives(alg, sub)? {
        let rd = restricted_dim(cat, &a, sub)?;
        let rd_inv = rd.inv().ok_or_else(|| Error::Singular("d([ᾱα]) = 0".into()))?;
        index = index + cat.dim(&a) * cat.dim(&a) * &rd_inv;
        for i in &labels {
            for j in &labels {
                let block = alg.block(i, &a, j)?;
                if block.basis.is_empty() {
                    continue;
                }
                let w = cat.dim(j) * cat.dim(&a) * &rd_inv;
                let n = block.basis.len();
                let xs: Vec<Elem<C>> = (0..n).map(|t| alg.basis_element(&block.key, t)).collect::<Result<_>>()?;
                for (b, xb) in xs.iter().enumerate() {
                    let sb = alg.sharp(xb)?;
                    for (t, xa) in xs.iter().enumerate() {
                        let g = block.basis.gram_inv.get(b, t);
                        if g.is_zero() {
                            continue;
                        }
                        sum = sum.add(&alg.mul(xa, &sb)?.scale(&(g.clone() * &w)));
                    }
                }
            }
        }
    }
    let target = alg.unit_element()?.scale(&index);
    let residual = sum.sub(&target).max_abs();
    Ok(MarkovReport { sum, index, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::full_subcategories;
    use crate::grouprep::GroupCategory;
    use crate::scalar::Cyclo;
    use num_complex::Complex64;

    #[test]
    fn unitarity_and_centrality() {
        for g in ["Z/4", "S3", "A4"] {
            let a = TubeAlgebra::new(GroupCategory::<Cyclo>::builtin(g).unwrap());
            let labels = a.irreducibles().unwrap();
            for i in &labels {
                assert_eq!(unitarity_residual(&a, i).unwrap(), 0.0);
                for j in &labels {
                    assert_eq!(commutation_residual(&a, i, j).unwrap(), 0.0);
                }
            }
        }
    }

    #[test]
    fn pimsner_popa_and_markov_on_s3() {
        let a = TubeAlgebra::new(GroupCategory::<Cyclo>::builtin("S3").unwrap());
        let ring = a.category().ring().clone();
        for sub in full_subcategories(&ring).unwrap() {
            for i in 0..3 {
                for alpha in 0..3 {
                    assert_eq!(lemma39_check(&a, &i, &alpha, &sub).unwrap(), 0.0, "{sub:?} {i} {alpha}");
                }
            }
            let m = markov_sum_check(&a, &sub).unwrap();
            assert_eq!(m.residual, 0.0);
        }
    }

    #[test]
    fn a4_index_in_floats() {
        let a = TubeAlgebra::new(GroupCategory::<Complex64>::builtin("A4").unwrap());
        let sub: BTreeSet<usize> = [0, 1, 2].into_iter().collect();
        let m = markov_sum_check(&a, &sub).unwrap();
        assert!(m.residual < 1e-9);
        assert!((m.index - Complex64::new(4.0, 0.0)).norm() < 1e-9);
        let sub: BTreeSet<usize> = [0].into_iter().collect();
        assert!((markov_sum_check(&a, &sub).unwrap().index - Complex64::new(12.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn projection_matrix_rank() {
        let a = TubeAlgebra::new(GroupCategory::<Cyclo>::builtin("S3").unwrap());
        let betas: BTreeSet<usize> = [0].into_iter().collect();
        let (layout, m) = subcat_projection(&a, &betas).unwrap();
        assert_eq!(m.trace(), Cyclo::int(3));
        assert_eq!(layout.dim, 17);
    }

    #[test]
    fn rejects_bad_subcategories() {
        let a = TubeAlgebra::new(GroupCategory::<Cyclo>::builtin("S3").unwrap());
        let sub: BTreeSet<usize> = [1].into_iter().collect();
        assert!(markov_sum_check(&a, &sub).is_err());
    }
}
