//! The central unitary U_i of a corner p_i·A·p_i: its moments and the
//! spectral projection onto ker(U_i − p_i).

use super::algebra::{Elem, Layout, TubeAlgebra};
use super::category::{Category, GramBasis};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, Mat, SpanBuilder};
use crate::scalar::Field;
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Eigenvalues closer than this are one cluster.
pub const CLUSTER_RADIUS: f64 = 1e-8;
/// Distinct clusters closer than this make the float projection unreliable.
pub const DEFAULT_GAP: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct Eigen {
    pub value: Complex64,
    /// τ of the spectral projection at this eigenvalue.
    pub weight: f64,
}

#[derive(Clone, Debug)]
pub struct SpectralReport<C: Category> {
    pub label: String,
    pub corner_dim: usize,
    pub q: Elem<C>,
    pub tau_q: C::Scalar,
    pub spectrum: Vec<Eigen>,
}

/// The matrix of y ↦ x·y on the span of `layout`.
pub fn left_mult_matrix<C: Category>(alg: &TubeAlgebra<C>, layout: &Layout<C::Label>, x: &Elem<C>) -> Result<Mat<C::Scalar>> {
    let n = layout.dim;
    let mut m = Mat::zeros(n, n);
    for q in 0..n {
        let col = layout.flatten(&alg.mul(x, &layout.unit_vector(q))?)?;
        for (r, c) in col.into_iter().enumerate() {
            m.set(r, q, c);
        }
    }
    Ok(m)
}

fn mat_vec<S: Field>(m: &Mat<S>, v: &[S]) -> Vec<S> {
    m.mul(&Mat::column(v.to_vec())).into_data()
}

fn corner<C: Category>(alg: &TubeAlgebra<C>, i: &C::Label) -> Result<Layout<C::Label>> {
    Layout::new(alg, alg.corner_blocks(i)?)
}

/// Groups eigenvalues into clusters of radius [`CLUSTER_RADIUS`].
pub fn cluster(eigs: &[Complex64]) -> Vec<(Complex64, usize)> {
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    for z in eigs {
        match out.iter_mut().find(|(c, _)| (c - z).norm() < CLUSTER_RADIUS.max(1e-7 * c.norm())) {
            Some((c, n)) => {
                *c = (*c * *n as f64 + z) / (*n as f64 + 1.0);
                *n += 1;
            }
            None => out.push((*z, 1)),
        }
    }
    out.sort_by(|a, b| a.0.arg().total_cmp(&b.0.arg()));
    out
}

fn eigenvalues(m: &Mat<Complex64>) -> Result<Vec<Complex64>> {
    let n = m.rows();
    let dm = DMatrix::from_fn(n, n, |i, j| *m.get(i, j));
    // unshifted QR stalls on permutation-like unitaries, whose eigenvalues
    // all have modulus 1; a complex shift separates the moduli
    for shift in [Complex64::new(0.37, 0.71), Complex64::new(-0.53, 0.29), Complex64::new(1.9, -0.4)] {
        let shifted = &dm + DMatrix::from_diagonal_element(n, n, shift);
        if let Some(ev) = shifted.try_schur(f64::EPSILON, 10_000).and_then(|s| s.eigenvalues()) {
            return Ok(ev.iter().map(|z| z - shift).collect());
        }
    }
    Err(Error::Consistency("Schur form did not converge".into()))
}

/// Π_{μ ≠ λ} (L − μ)/(λ − μ) applied to v.
fn lagrange(l: &Mat<Complex64>, v: &[Complex64], lambda: Complex64, others: &[Complex64]) -> Vec<Complex64> {
    let mut out = v.to_vec();
    for mu in others {
        let lv = mat_vec(l, &out);
        let den = lambda - mu;
        out = lv.iter().zip(&out).map(|(a, b)| (a - mu * b) / den).collect();
    }
    out
}

/// q_i, the projection onto ker(U_i − p_i), as a polynomial in U_i.
///
/// Exact fields use the minimal polynomial m of U_i: with m = (x − 1) r,
/// q = r(U)/r(1). Floating point uses the clustered spectrum and Lagrange
/// interpolation, and refuses spectra with clusters closer than `gap`.
pub fn spectral_proj_fixed<C: Category>(alg: &TubeAlgebra<C>, i: &C::Label, gap: f64) -> Result<SpectralReport<C>> {
    let layout = corner(alg, i)?;
    let n = layout.dim;
    let u = alg.central_u(i)?;
    let l = left_mult_matrix(alg, &layout, &u)?;
    let p = layout.flatten(&alg.p(i)?)?;
    let lc = l.map(|x| x.to_c64());
    let pc: Vec<Complex64> = p.iter().map(|x| x.to_c64()).collect();
    let tau_vec: Vec<Complex64> = (0..n)
        .map(|q| alg.tau(&layout.unit_vector(q)).map(|t| t.to_c64()))
        .collect::<Result<_>>()?;
    let tau_of = |v: &[Complex64]| v.iter().zip(&tau_vec).map(|(a, b)| a * b).sum::<Complex64>();

    let clusters = cluster(&eigenvalues(&lc)?);
    let centers: Vec<Complex64> = clusters.iter().map(|c| c.0).collect();
    let mut spectrum = Vec::new();
    for (k, c) in centers.iter().enumerate() {
        let others: Vec<Complex64> = centers.iter().enumerate().filter(|(t, _)| *t != k).map(|(_, z)| *z).collect();
        spectrum.push(Eigen { value: *c, weight: tau_of(&lagrange(&lc, &pc, *c, &others)).re });
    }

    let qv: Vec<C::Scalar> = if C::Scalar::EXACT {
        exact_fixed_projection(&l, &p)?
    } else {
        for a in 0..centers.len() {
            for b in 0..a {
                let d = (centers[a] - centers[b]).norm();
                if d < gap {
                    return Err(Error::SpectralGap { gap: d });
                }
            }
        }
        match centers.iter().position(|z| (z - Complex64::new(1.0, 0.0)).norm() < gap) {
            None => vec![C::Scalar::zero(); n],
            Some(k) => {
                let others: Vec<Complex64> = centers.iter().enumerate().filter(|(t, _)| *t != k).map(|(_, z)| *z).collect();
                lagrange(&lc, &pc, Complex64::new(1.0, 0.0), &others)
                    .into_iter()
                    .map(|z| C::Scalar::from_c64(z).ok_or_else(|| Error::Consistency("no float embedding".into())))
                    .collect::<Result<_>>()?
            }
        }
    };
    let q = layout.unflatten(&qv);
    let tau_q = alg.tau(&q)?;
    Ok(SpectralReport { label: alg.category().label_name(i), corner_dim: n, q, tau_q, spectrum })
}

/// r(L)p / r(1) where the minimal polynomial of L on the cyclic space of p
/// is (x − 1) r(x); zero when 1 is not a root.
fn exact_fixed_projection<S: Field>(l: &Mat<S>, p: &[S]) -> Result<Vec<S>> {
    let n = p.len();
    let mut span = SpanBuilder::new(n);
    let mut krylov: Vec<Vec<S>> = Vec::new();
    let mut v = p.to_vec();
    loop {
        let independent = span.push(&v);
        krylov.push(v.clone());
        if !independent {
            break;
        }
        if krylov.len() > n + 1 {
            return Err(Error::Consistency("Krylov sequence did not terminate".into()));
        }
        v = mat_vec(l, &v);
    }
    let m = krylov.len();
    let k = Mat::from_fn(n, m, |r, c| krylov[c][r].clone());
    let null = nullspace(&k);
    let c = null.first().ok_or_else(|| Error::Consistency("no relation among powers".into()))?;
    let lead = c[m - 1].inv().ok_or_else(|| Error::Consistency("minimal polynomial has no leading term".into()))?;
    let c: Vec<S> = c.iter().map(|x| x.clone() * &lead).collect();
    let at_one = c.iter().fold(S::zero(), |a, x| a + x);
    if !at_one.is_zero() {
        return Ok(vec![S::zero(); n]);
    }
    // m = (x − 1) r: r_{t−1} = c_t + r_t, r_{m−1} = 0
    let deg = m - 1;
    let mut r = vec![S::zero(); deg];
    let mut acc = S::zero();
    for t in (1..=deg).rev() {
        acc = acc + &c[t];
        r[t - 1] = acc.clone();
    }
    let r1 = r.iter().fold(S::zero(), |a, x| a + x);
    let inv = r1.inv().ok_or_else(|| Error::Consistency("1 is a repeated root: U is not diagonalizable".into()))?;
    let mut q = vec![S::zero(); n];
    for (t, rt) in r.iter().enumerate() {
        if rt.is_zero() {
            continue;
        }
        for (x, y) in q.iter_mut().zip(&krylov[t]) {
            *x = x.clone() + rt.clone() * y * &inv;
        }
    }
    Ok(q)
}

/// τ(U_i^k) by multiplying in the corner.
pub fn moment_by_power<C: Category>(alg: &TubeAlgebra<C>, i: &C::Label, k: usize) -> Result<C::Scalar> {
    let u = alg.central_u(i)?;
    let mut x = alg.p(i)?;
    for _ in 0..k {
        x = alg.mul(&u, &x)?;
    }
    alg.tau(&x)
}

/// τ(U_i^k) as the conjugated trace of the rotation on (i^k, ε); k = 0 gives d(i).
pub fn moment_by_rotation<C: Category>(alg: &TubeAlgebra<C>, i: &C::Label, k: usize) -> Result<C::Scalar> {
    let cat = alg.category();
    if k == 0 {
        return Ok(cat.dim(i));
    }
    let word = cat.word(&vec![i.clone(); k]);
    let basis = GramBasis::new(cat, cat.hom_basis(&word, &[])?)?;
    let mut tr = C::Scalar::zero();
    for (q, x) in basis.basis.iter().enumerate() {
        let rotated = cat.rotate(i, k, x);
        tr = tr + basis.coords(cat, &rotated)[q].clone();
    }
    Ok(tr.conj())
}

/// τ(U_i^k), computed both ways; disagreement is an internal error.
pub fn moment_u<C: Category>(alg: &TubeAlgebra<C>, i: &C::Label, k: usize) -> Result<C::Scalar> {
    let a = moment_by_power(alg, i, k)?;
    let b = moment_by_rotation(alg, i, k)?;
    let agree = if C::Scalar::EXACT { (a.clone() - b.clone()).is_zero() } else { (a.clone() - b.clone()).magnitude() < 1e-9 };
    if !agree {
        return Err(Error::Consistency(format!("τ(U^{k}) = {a:?} by powering but {b:?} by rotation")));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprep::GroupCategory;
    use crate::scalar::{rat, Cyclo};

    #[test]
    fn a4_pi_projection_exact() {
        let a = TubeAlgebra::new(GroupCategory::<Cyclo>::builtin("A4").unwrap());
        let pi = a.category().label("pi").unwrap();
        let r = spectral_proj_fixed(&a, &pi, DEFAULT_GAP).unwrap();
        assert_eq!(r.corner_dim, 10);
        assert_eq!(r.tau_q, Cyclo::rational(rat(7, 6)));
        // q is an idempotent fixed by U
        assert_eq!(a.mul(&r.q, &r.q).unwrap(), r.q);
        assert_eq!(a.mul(&a.central_u(&pi).unwrap(), &r.q).unwrap(), r.q);
        let weights: f64 = r.spectrum.iter().map(|e| e.weight).sum();
        assert!((weights - 3.0).abs() < 1e-9);
        let at_one = r.spectrum.iter().find(|e| (e.value - Complex64::new(1.0, 0.0)).norm() < 1e-8).unwrap();
        assert!((at_one.weight - 7.0 / 6.0).abs() < 1e-9);
    }

    #[test]
    fn float_mode_agrees() {
        let a = TubeAlgebra::new(GroupCategory::<Complex64>::builtin("A4").unwrap());
        let pi = a.category().label("pi").unwrap();
        let r = spectral_proj_fixed(&a, &pi, DEFAULT_GAP).unwrap();
        assert!((r.tau_q - Complex64::new(7.0 / 6.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn cyclic_closed_forms() {
        for n in 1..=6u32 {
            let a = TubeAlgebra::new(GroupCategory::<Cyclo>::builtin(&format!("Z/{n}")).unwrap());
            for g in 0..n as usize {
                let ord = n as usize / num_integer::gcd(n as usize, g);
                for k in 0..=2 * n as usize {
                    let expect = if (g * k) % n as usize == 0 { 1 } else { 0 };
                    assert_eq!(moment_u(&a, &g, k).unwrap(), Cyclo::int(expect));
                }
                let r = spectral_proj_fixed(&a, &g, DEFAULT_GAP).unwrap();
                assert_eq!(r.tau_q, Cyclo::rational(rat(1, ord as i64)));
            }
        }
    }

    #[test]
    fn two_moment_routes_on_s3() {
        let a = TubeAlgebra::new(GroupCategory::<Cyclo>::builtin("S3").unwrap());
        for i in 0..3 {
            for k in 0..5 {
                moment_u(&a, &i, k).unwrap();
            }
        }
    }

    #[test]
    fn clustering() {
        let c = cluster(&[Complex64::new(1.0, 0.0), Complex64::new(1.0 + 1e-12, 0.0), Complex64::new(-1.0, 0.0)]);
        assert_eq!(c.len(), 2);
        assert_eq!(c.iter().map(|x| x.1).sum::<usize>(), 3);
    }
}
