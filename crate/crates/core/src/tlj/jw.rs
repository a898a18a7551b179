use crate::error::{Error, Result};
use crate::planar::{PairDiagram, TLVector};
use crate::scalar::Field;

/// Δ_0 = 1, Δ_1 = L, Δ_{k+1} = L Δ_k − Δ_{k−1}.
pub fn chebyshev<S: Field>(n: usize, loop_value: &S) -> S {
    let (mut a, mut b) = (S::one(), loop_value.clone());
    if n == 0 {
        return a;
    }
    for _ in 1..n {
        let c = b.clone() * loop_value - a;
        a = b;
        b = c;
    }
    b
}

/// The Jones-Wenzl idempotent on `n` strands, by Wenzl's recursion
/// JW_{k+1} = JW_k ⊗ 1 − (Δ_{k−1}/Δ_k) (JW_k ⊗ 1) e_k (JW_k ⊗ 1).
pub fn jones_wenzl<S: Field>(n: usize, loop_value: &S) -> Result<TLVector<S>> {
    let mut jw = TLVector::identity(n.min(1));
    for k in 1..n {
        let lifted = jw.tensor(&TLVector::identity(1));
        let ratio = chebyshev(k - 1, loop_value)
            * chebyshev(k, loop_value)
                .inv()
                .ok_or_else(|| Error::Singular(format!("Δ_{k} vanishes at this loop value")))?;
        let e = TLVector::basis(PairDiagram::e(k + 1, k));
        let sandwich = lifted.compose(&e, loop_value)?.compose(&lifted, loop_value)?;
        jw = lifted.sub(&sandwich.scale(&ratio));
    }
    Ok(jw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, RatFunc};

    #[test]
    fn small_projectors() {
        let l = RatFunc::var();
        assert_eq!(jones_wenzl(1, &l).unwrap(), TLVector::identity(1));
        assert_eq!(jones_wenzl(0, &l).unwrap(), TLVector::identity(0));
        let jw2 = jones_wenzl(2, &l).unwrap();
        let expect = TLVector::identity(2).sub(&TLVector::basis(PairDiagram::e(2, 1)).scale(&l.inv().unwrap()));
        assert_eq!(jw2, expect);
    }

    #[test]
    fn idempotent_and_killed_by_caps() {
        let l = RatFunc::var();
        for n in 2..=5 {
            let jw = jones_wenzl(n, &l).unwrap();
            assert_eq!(jw.compose(&jw, &l).unwrap(), jw, "n = {n}");
            assert_eq!(jw.involute(), jw);
            for i in 1..n {
                let e = TLVector::basis(PairDiagram::e(n, i));
                assert!(e.compose(&jw, &l).unwrap().is_empty());
                assert!(jw.compose(&e, &l).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn closure_is_a_chebyshev_value() {
        // Δ_2 = L² − 1
        let l = crate::scalar::Rational::from(rat(3, 1));
        assert_eq!(chebyshev(2, &RatFunc::from_rational(&l)), RatFunc::from_i64(8));
        // Δ_1(1) ... Δ_3(1) = 1, 0, −1: JW_3 fails at loop value 1
        let one = RatFunc::one();
        assert!(chebyshev(2, &one).is_zero());
        assert!(jones_wenzl(3, &one).is_err());
    }
}
