//! The unitary V ∈ (p₀+p₂)·A·(p₀+p₂) coming from the identity of
//! (v₁v₁)v₁ = v₁(v₁v₁), and the length-3 resolution of the counit built
//! from V ± sgn.

use super::category::TLCategory;
use crate::error::Result;
use crate::planar::{PairDiagram, TLVector};
use crate::scalar::{Field, RatFunc};
use crate::tube::{Category, Elem, TubeAlgebra};
use serde::Serialize;

/// The coisometries w₀ = cap/√δ: v₁v₁ → v₀ and w₂ = JW₂: v₁v₁ → v₂.
fn coisometry<S: Field>(cat: &TLCategory<S>, i: u32) -> Result<TLVector<S>> {
    match i {
        0 => Ok(TLVector::basis(PairDiagram::cap()).scale(&cat.r().inv().expect("δ ≠ 0"))),
        _ => cat.jw(2),
    }
}

/// V = Σ_{i,j ∈ {0,2}} (w_i ⊗ 1)(1 ⊗ w_j*) with V_ij ∈ (v_i v₁, v₁ v_j).
pub fn build_v<S: Field>(alg: &TubeAlgebra<TLCategory<S>>) -> Result<Elem<TLCategory<S>>> {
    let cat = alg.category();
    let one = TLVector::identity(1);
    let mut v = Elem::<TLCategory<S>>::zero();
    for i in [0u32, 2] {
        for j in [0u32, 2] {
            let wi = coisometry(cat, i)?;
            let wj = cat.adjoint(&coisometry(cat, j)?);
            let m = cat.compose(&wi.tensor(&one), &one.tensor(&wj));
            v = v.add(&alg.from_morphism(&i, &1, &j, &m)?);
        }
    }
    Ok(v)
}

#[derive(Clone, Debug, Serialize)]
pub struct TljReport {
    pub delta: String,
    pub sgn: i8,
    pub unitary_ok: bool,
    pub p0vv_ok: bool,
    pub counit_v: String,
    pub counit_v_ok: bool,
    /// (a) p₀(V+sgn)(V−sgn) = 0, (b) (V−sgn)(V+sgn)p₀ = 0, (c) ε(x(V+sgn)p₀) = 0.
    pub compositions: [bool; 3],
    pub ddzero_ok: bool,
    pub counit_scalars: [String; 3],
    pub homology: [usize; 4],
    pub all_four_blocks: bool,
}

impl TljReport {
    pub fn pass(&self) -> bool {
        self.unitary_ok
            && self.p0vv_ok
            && self.counit_v_ok
            && self.ddzero_ok
            && self.all_four_blocks
            && self.homology == [1, 0, 0, 1]
    }
}

/// Homology of 0 → C →a C →b C →c C → 0 with scalar maps, listed from the
/// degree-0 end: h_k = 1 − rank(in) − rank(out).
pub fn homology_of_scalar_complex<S: Field>(maps: &[S; 3]) -> [usize; 4] {
    let rank = |k: usize| -> usize {
        if (1..=3).contains(&k) && !maps[k - 1].is_zero() {
            1
        } else {
            0
        }
    };
    [0, 1, 2, 3].map(|k| 1 - rank(k) - rank(k + 1))
}

fn vanishes<S: Field>(x: &Elem<TLCategory<S>>) -> bool {
    if S::EXACT {
        x.is_zero()
    } else {
        x.max_abs() < 1e-9
    }
}

/// Runs every check on one category; `delta` is only used in the report.
pub fn check_resolution<S: Field>(cat: TLCategory<S>, delta: &str, show: impl Fn(&S) -> String) -> Result<TljReport> {
    let sgn = cat.sgn();
    let alg = TubeAlgebra::new(cat);
    let s = alg.category().sgn_scalar();
    let v = build_v(&alg)?;
    let vs = alg.sharp(&v)?;
    let p0 = alg.p(&0)?;
    let p = p0.add(&alg.p(&2)?);
    let unitary_ok = vanishes(&alg.mul(&v, &vs)?.sub(&p)) && vanishes(&alg.mul(&vs, &v)?.sub(&p));
    let vv = alg.mul(&v, &v)?;
    let p0vv_ok = vanishes(&alg.mul(&p0, &vv)?.sub(&p0));
    let counit_v = alg.counit(&v)?;
    let counit_v_ok = (counit_v.clone() + &s).is_zero();

    let plus = v.add(&p.scale(&s));
    let minus = v.sub(&p.scale(&s));
    let a = vanishes(&alg.mul(&p0, &alg.mul(&plus, &minus)?)?);
    let b = vanishes(&alg.mul(&alg.mul(&minus, &plus)?, &p0)?);
    let last = alg.mul(&plus, &p0)?;
    let mut c = true;
    for x in [p0.clone(), alg.p(&2)?, v.clone(), vs.clone(), vv.clone()] {
        c &= alg.counit(&alg.mul(&x, &last)?)?.is_zero();
    }
    let connecting = [plus.clone(), minus.clone(), plus];
    let scalars: Vec<S> = connecting
        .iter()
        .map(|x| alg.counit(&alg.mul(&p0, &alg.mul(x, &p0)?)?))
        .collect::<Result<_>>()?;
    let scalars: [S; 3] = [scalars[0].clone(), scalars[1].clone(), scalars[2].clone()];
    let all_four_blocks = [(0, 0), (0, 2), (2, 0), (2, 2)].iter().all(|(i, j)| v.blocks.contains_key(&(*i, 1, *j)));
    Ok(TljReport {
        delta: delta.to_string(),
        sgn,
        unitary_ok,
        p0vv_ok,
        counit_v: show(&counit_v),
        counit_v_ok,
        compositions: [a, b, c],
        ddzero_ok: a && b && c,
        counit_scalars: scalars.clone().map(|x| show(&x)),
        homology: homology_of_scalar_complex(&scalars),
        all_four_blocks,
    })
}

/// The suite with δ an indeterminate (coefficients in Q(√δ)).
pub fn symbolic_report(sgn: i8) -> Result<TljReport> {
    check_resolution(TLCategory::<RatFunc>::symbolic(sgn)?, "symbolic", |x| x.fmt_var("r"))
}

/// The suite at a numeric δ ≥ 2.
pub fn numeric_report(delta: f64, sgn: i8) -> Result<TljReport> {
    if !(delta >= 2.0) {
        return Err(crate::Error::InvalidInput(format!("δ must be at least 2, got {delta}")));
    }
    let r = num_complex::Complex64::new(delta.sqrt(), 0.0);
    check_resolution(TLCategory::new(r, sgn)?, &format!("{delta}"), |x| format!("{}", x.re))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn symbolic_suite_both_signs() {
        for sgn in [1, -1] {
            let r = symbolic_report(sgn).unwrap();
            assert!(r.pass(), "{r:?}");
            assert_eq!(r.compositions, [true; 3]);
        }
    }

    #[test]
    fn numeric_suite() {
        for sgn in [1, -1] {
            assert!(numeric_report(3.0, sgn).unwrap().pass());
        }
        assert!(numeric_report(1.5, 1).is_err());
    }

    #[test]
    fn counit_of_v_is_minus_sgn() {
        for sgn in [1i8, -1] {
            let alg = TubeAlgebra::new(TLCategory::symbolic(sgn).unwrap());
            let v = build_v(&alg).unwrap();
            assert_eq!(alg.counit(&v).unwrap(), RatFunc::from_i64(-sgn as i64));
            // V_00 = (−sgn/δ)·1 on v₁
            let m = alg.block_morphism(&(0, 1, 0), &v.blocks[&(0, 1, 0)]).unwrap();
            let delta = RatFunc::var() * RatFunc::var();
            assert_eq!(m, TLVector::identity(1).scale(&(RatFunc::from_i64(-sgn as i64) / delta)));
        }
    }

    #[test]
    fn scalar_complex_homology() {
        let z = Rational::from_integer(0.into());
        let f = |x: i64| RatFunc::from_i64(x);
        assert_eq!(homology_of_scalar_complex(&[f(0), f(2), f(0)]), [1, 0, 0, 1]);
        assert_eq!(homology_of_scalar_complex(&[RatFunc::from_rational(&z), f(0), f(0)]), [1, 1, 1, 1]);
    }
}
