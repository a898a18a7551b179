//! Enumeration of NC₂ and NC₂°, the rotation map, and the moment formulas
//! for the Drinfeld central unitary of `ū ⊗ u`.

use super::diagram::{compose, PairDiagram};
use crate::scalar::{Poly, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// All non-crossing perfect matchings of `n` points in a row.
///
/// Point 1 is matched with 2, 4, 6, … in turn; the inside and outside of
/// that arc are filled recursively. Odd `n` gives an empty list.
pub fn enumerate_nc2(n: usize) -> Vec<PairDiagram> {
    if n % 2 != 0 {
        return Vec::new();
    }
    fill(0, n)
        .into_iter()
        .map(|partner| PairDiagram::from_partner(0, n, partner))
        .collect()
}

/// Matchings of the points lo..hi, each returned as a full partner table
/// of length `hi` (entries below `lo` are unused).
fn fill(lo: usize, hi: usize) -> Vec<Vec<usize>> {
    if lo == hi {
        return vec![vec![0; hi]];
    }
    let mut out = Vec::new();
    let mut j = lo + 1;
    while j < hi {
        let inner = fill(lo + 1, j);
        let outer = fill(j + 1, hi);
        for a in &inner {
            for b in &outer {
                let mut v = b.clone();
                v[lo + 1..j].copy_from_slice(&a[lo + 1..j]);
                v[lo] = j;
                v[j] = lo;
                out.push(v);
            }
        }
        j += 2;
    }
    out
}

/// All non-crossing pairings with `upper` points on top and `lower` below,
/// as diagrams `upper → lower`. A row of `upper + lower` points is bent
/// into the boundary: the first `upper` go along the top, the rest run
/// right to left along the bottom.
pub fn enumerate_rect(upper: usize, lower: usize) -> Vec<PairDiagram> {
    let place = |t: usize| if t < upper { t } else { upper + (lower - 1 - (t - upper)) };
    enumerate_nc2(upper + lower)
        .into_iter()
        .map(|row| {
            let n = upper + lower;
            let mut partner = vec![0; n];
            for t in 0..n {
                partner[place(t)] = place(row.partner(t));
            }
            PairDiagram::from_partner(upper, lower, partner)
        })
        .collect()
}

pub fn catalan(k: u32) -> BigInt {
    // C_k = binom(2k, k) / (k + 1)
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(2 * (2 * i + 1)) / BigInt::from(i + 2);
    }
    c
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

/// Σ_{i=0}^{k} (−1)^{k−i} C(k,i) Catalan(i).
pub fn riordan(k: u32) -> BigInt {
    (0..=k)
        .map(|i| {
            let t = binomial(k, i) * catalan(i);
            if (k - i) % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum()
}

/// NC₂°(k): matchings of 2k points with no pair {i, i+1}, i odd.
pub fn nc2_circ(k: usize) -> Vec<PairDiagram> {
    enumerate_nc2(2 * k)
        .into_par_iter()
        .filter(|p| p.avoids_odd_adjacent())
        .collect()
}

/// The rotation ζ computed by gluing: (1^{⊗2k} ⊗ s*)(1 ⊗ ξ ⊗ 1) s where s is
/// the nested cup pair on `v ⊗ v` and its conjugate.
pub fn zeta_on_basis(p: &PairDiagram) -> PairDiagram {
    assert_eq!(p.upper(), 0, "ζ acts on diagrams without upper points");
    let n = p.lower();
    let s = PairDiagram::nested_cups(2);
    let middle = PairDiagram::identity(2).tensor(p).tensor(&PairDiagram::identity(2));
    let (lifted, l1) = compose(&middle, &s).expect("shapes agree");
    let closing = PairDiagram::identity(n).tensor(&s.involute());
    let (out, l2) = compose(&closing, &lifted).expect("shapes agree");
    assert_eq!(l1 + l2, 0, "the rotation never closes a loop");
    out
}

/// τ(U^k) for the generator of the `ū⊗u` corner, read off from diagrams:
/// the number of rotation-fixed diagrams in NC₂°(k) for k ≥ 1, and the
/// polynomial d² − 1 at k = 0.
pub fn tl_moment(k: usize) -> Poly {
    if k == 0 {
        return Poly::from_ints(&[-1, 0, 1]);
    }
    let fixed = nc2_circ(k).par_iter().filter(|p| p.rotate2() == **p).count();
    Poly::from_ints(&[fixed as i64])
}

/// The moment sequence without enumeration: d² − 1, 0, 1, 1, …
pub fn moment_closed_form(k: usize, d: &Rational) -> Rational {
    match k {
        0 => d * d - Rational::one(),
        1 => Rational::zero(),
        _ => Rational::one(),
    }
}

/// (1/n) Σ_{k<n} τ(U^k), using the closed-form moments.
pub fn cesaro_tau_q(n: usize, d: &Rational) -> Rational {
    assert!(n >= 1, "Cesàro average needs n ≥ 1");
    let tail = Rational::from_integer(BigInt::from(n.saturating_sub(2)));
    let head = moment_closed_form(0, d) + moment_closed_form(1, d);
    let sum = if n == 1 { moment_closed_form(0, d) } else { head + tail };
    sum / Rational::from_integer(BigInt::from(n))
}

/// The same average with every moment obtained by diagram enumeration.
pub fn cesaro_tau_q_enumerated(n: usize, d: &Rational) -> Rational {
    let sum: Rational = (0..n).map(|k| tl_moment(k).eval(d)).sum();
    sum / Rational::from_integer(BigInt::from(n))
}

/// A measure on the unit circle: a point mass at 1 plus a trigonometric
/// density, stored by Fourier coefficients of z^m against dz.
#[derive(Clone, Debug)]
pub struct CircleMeasure {
    pub atom_at_one: Rational,
    pub density: BTreeMap<i64, Rational>,
}

impl CircleMeasure {
    /// δ₁ + (d² − 2 − z − z̄) dz, the spectral measure of U.
    pub fn spectral(d: &Rational) -> Self {
        let mut density = BTreeMap::new();
        density.insert(0, d * d - Rational::from_integer(BigInt::from(2)));
        density.insert(1, -Rational::one());
        density.insert(-1, -Rational::one());
        CircleMeasure { atom_at_one: Rational::one(), density }
    }

    /// ∫ z^k dμ, using ∫ z^{k+m} dz = [k + m = 0].
    pub fn moment(&self, k: i64) -> Rational {
        let from_density = self.density.get(&(-k)).cloned().unwrap_or_else(Rational::zero);
        self.atom_at_one.clone() + from_density
    }
}

/// The k-th moment of the spectral measure δ₁ + (d²−2−2Re z)dz.
pub fn spectral_moment(k: i64, d: &Rational) -> Rational {
    CircleMeasure::spectral(d).moment(k)
}
