use super::jw::{chebyshev, jones_wenzl};
use crate::error::{Error, Result};
use crate::linalg::SpanBuilder;
use crate::planar::{enumerate_rect, PairDiagram, TLVector};
use crate::scalar::{Field, RatFunc};
use crate::tube::Category;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::RwLock;

/// Temperley-Lieb-Jones category: labels n ≥ 0 stand for v_n, realized on
/// n strands by the Jones-Wenzl idempotent.
///
/// `r` is a square root of δ. Closed loops evaluate to −sgn·δ and the
/// adjoint of a diagram with u upper and l lower points is its reflection
/// times (−sgn)^{(l−u)/2}, which keeps the inner product positive for
/// both signs.
pub struct TLCategory<S: Field> {
    sgn: i8,
    r: S,
    loop_value: S,
    jw: RwLock<BTreeMap<u32, TLVector<S>>>,
}

impl TLCategory<RatFunc> {
    /// Coefficients in Q(r) with δ = r².
    pub fn symbolic(sgn: i8) -> Result<Self> {
        Self::new(RatFunc::var(), sgn)
    }
}

impl<S: Field> TLCategory<S> {
    pub fn new(r: S, sgn: i8) -> Result<Self> {
        if sgn != 1 && sgn != -1 {
            return Err(Error::InvalidInput(format!("sgn must be ±1, got {sgn}")));
        }
        let loop_value = -(S::from_i64(sgn as i64) * r.clone() * &r);
        Ok(TLCategory { sgn, r, loop_value, jw: RwLock::new(BTreeMap::new()) })
    }

    pub fn sgn(&self) -> i8 {
        self.sgn
    }

    pub fn sgn_scalar(&self) -> S {
        S::from_i64(self.sgn as i64)
    }

    /// √δ.
    pub fn r(&self) -> &S {
        &self.r
    }

    pub fn delta(&self) -> S {
        self.r.clone() * &self.r
    }

    pub fn loop_value(&self) -> &S {
        &self.loop_value
    }

    /// (−sgn)^k.
    fn twist(&self, k: usize) -> S {
        if self.sgn == 1 && k % 2 == 1 {
            -S::one()
        } else {
            S::one()
        }
    }

    pub fn jw(&self, n: u32) -> Result<TLVector<S>> {
        if let Some(p) = self.jw.read().expect("jw cache").get(&n) {
            return Ok(p.clone());
        }
        let p = jones_wenzl(n as usize, &self.loop_value)?;
        self.jw.write().expect("jw cache").insert(n, p.clone());
        Ok(p)
    }

    fn jw_word(&self, word: &[u32]) -> TLVector<S> {
        word.iter().fold(TLVector::identity(0), |acc, &n| acc.tensor(&self.jw(n).expect("Jones-Wenzl projector exists")))
    }

    fn strands(word: &[u32]) -> usize {
        word.iter().map(|&n| n as usize).sum()
    }

    /// The multiset of irreducibles in a word, by the Clebsch-Gordan rule.
    pub fn decompose(word: &[u32]) -> BTreeMap<u32, u64> {
        let mut cur = BTreeMap::from([(0u32, 1u64)]);
        for &a in word {
            let mut next = BTreeMap::new();
            for (&c, &m) in &cur {
                let mut g = c.abs_diff(a);
                while g <= c + a {
                    *next.entry(g).or_insert(0) += m;
                    g += 2;
                }
            }
            cur = next;
        }
        cur
    }

    fn hom_dim(cod: &[u32], dom: &[u32]) -> usize {
        let (a, b) = (Self::decompose(cod), Self::decompose(dom));
        a.iter().map(|(g, m)| m * b.get(g).copied().unwrap_or(0)).sum::<u64>() as usize
    }

    fn compose_checked(&self, f: &TLVector<S>, g: &TLVector<S>) -> TLVector<S> {
        f.compose(g, &self.loop_value).expect("strand counts match")
    }
}

impl<S: Field> Category for TLCategory<S> {
    type Label = u32;
    type Scalar = S;
    type Mor = TLVector<S>;

    fn name(&self) -> String {
        format!("TLJ(sgn = {:+})", self.sgn)
    }

    fn unit(&self) -> u32 {
        0
    }

    fn dual(&self, a: &u32) -> u32 {
        *a
    }

    /// [n+1] = Δ_n(δ).
    fn dim(&self, a: &u32) -> S {
        chebyshev(*a as usize, &self.delta())
    }

    fn irreducibles(&self) -> Option<Vec<u32>> {
        None
    }

    fn constituents(&self, word: &[u32]) -> Vec<u32> {
        Self::decompose(word).into_keys().collect()
    }

    fn label_name(&self, a: &u32) -> String {
        format!("v{a}")
    }

    fn identity(&self, word: &[u32]) -> TLVector<S> {
        self.jw_word(word)
    }

    fn zero(&self, cod: &[u32], dom: &[u32]) -> TLVector<S> {
        TLVector::zero(Self::strands(dom), Self::strands(cod))
    }

    fn compose(&self, f: &TLVector<S>, g: &TLVector<S>) -> TLVector<S> {
        self.compose_checked(f, g)
    }

    fn tensor(&self, f: &TLVector<S>, g: &TLVector<S>) -> TLVector<S> {
        f.tensor(g)
    }

    fn adjoint(&self, f: &TLVector<S>) -> TLVector<S> {
        let k = f.upper().abs_diff(f.lower()) / 2;
        f.involute().scale(&self.twist(k))
    }

    fn add(&self, f: &TLVector<S>, g: &TLVector<S>) -> TLVector<S> {
        f.add(g)
    }

    fn scale(&self, f: &TLVector<S>, x: &S) -> TLVector<S> {
        f.scale(x)
    }

    /// (−sgn)^n times the closure on n strands.
    fn trace(&self, f: &TLVector<S>) -> S {
        let n = f.upper();
        let cups = TLVector::basis(PairDiagram::nested_cups(n));
        let caps = cups.involute();
        let closed = self.compose_checked(&caps, &self.compose_checked(&f.tensor(&TLVector::identity(n)), &cups));
        closed.coeff(&PairDiagram::empty()) * &self.twist(n)
    }

    fn std_s(&self, a: &u32) -> TLVector<S> {
        let p = self.jw(*a).expect("Jones-Wenzl projector exists");
        self.compose_checked(&p.tensor(&p), &TLVector::basis(PairDiagram::nested_cups(*a as usize)))
    }

    fn std_t(&self, a: &u32) -> TLVector<S> {
        self.std_s(a).scale(&self.twist(*a as usize))
    }

    /// Sandwiches every non-crossing diagram between the projectors and
    /// keeps an independent subset of the expected size.
    fn hom_basis(&self, cod: &[u32], dom: &[u32]) -> Result<Vec<TLVector<S>>> {
        let target = Self::hom_dim(cod, dom);
        let (u, l) = (Self::strands(dom), Self::strands(cod));
        if target == 0 {
            return Ok(Vec::new());
        }
        let (pc, pd) = (self.jw_word(cod), self.jw_word(dom));
        let diagrams = enumerate_rect(u, l);
        let index: BTreeMap<&PairDiagram, usize> = diagrams.iter().enumerate().map(|(k, d)| (d, k)).collect();
        let mut span = SpanBuilder::new(diagrams.len());
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for d in &diagrams {
            let cand = self.compose_checked(&pc, &self.compose_checked(&TLVector::basis(d.clone()), &pd));
            if cand.is_empty() || !seen.insert(format!("{cand:?}")) {
                continue;
            }
            let mut v = vec![S::zero(); diagrams.len()];
            for (p, c) in cand.terms() {
                v[index[p]] = c.clone();
            }
            if span.push(&v) {
                out.push(cand);
                if out.len() == target {
                    return Ok(out);
                }
            }
        }
        Err(Error::Consistency(format!("found {} of {target} morphisms {dom:?} → {cod:?}", out.len())))
    }

    fn norm(&self, f: &TLVector<S>) -> f64 {
        f.terms().map(|(_, c)| c.magnitude()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tube::{onb, GramBasis};

    fn both() -> Vec<TLCategory<RatFunc>> {
        vec![TLCategory::symbolic(1).unwrap(), TLCategory::symbolic(-1).unwrap()]
    }

    #[test]
    fn standard_pairs_solve_the_conjugate_equations() {
        for c in both() {
            for n in 0..=3u32 {
                let (s, t) = (c.std_s(&n), c.std_t(&n));
                let one = c.identity(&[n]);
                let zig = c.compose(&c.tensor(&c.adjoint(&t), &one), &c.tensor(&one, &s));
                let zag = c.compose(&c.tensor(&c.adjoint(&s), &one), &c.tensor(&one, &t));
                assert_eq!(zig, one);
                assert_eq!(zag, one);
                assert_eq!(c.compose(&c.adjoint(&s), &s).coeff(&PairDiagram::empty()), c.dim(&n));
                assert_eq!(c.trace(&one), c.dim(&n));
            }
        }
    }

    #[test]
    fn dimensions_are_quantum_integers() {
        let c = TLCategory::symbolic(1).unwrap();
        let d = c.delta();
        assert_eq!(c.dim(&2), d.clone() * &d - RatFunc::one());
        assert_eq!(TLCategory::<RatFunc>::decompose(&[1, 1, 1]), BTreeMap::from([(1, 2), (3, 1)]));
    }

    #[test]
    fn hom_bases_have_the_fusion_dimension_and_positive_gram() {
        for c in both() {
            for (cod, dom) in [(vec![1, 1], vec![1, 1]), (vec![2, 1], vec![1, 2]), (vec![1, 1, 1], vec![1]), (vec![2, 2], vec![2, 2])] {
                let b = c.hom_basis(&cod, &dom).unwrap();
                assert_eq!(b.len(), TLCategory::<RatFunc>::hom_dim(&cod, &dom));
                GramBasis::new(&c, b).unwrap();
            }
        }
    }

    #[test]
    fn onb_at_a_numeric_point() {
        use num_complex::Complex64;
        for sgn in [1, -1] {
            let c = TLCategory::new(Complex64::new(3f64.sqrt(), 0.0), sgn).unwrap();
            let basis = c.hom_basis(&[1, 1], &[1, 1]).unwrap();
            let o = onb(&c, &basis).unwrap();
            for x in &o {
                for y in &o {
                    let want = if std::ptr::eq(x, y) { 1.0 } else { 0.0 };
                    assert!((c.inner(x, y) - Complex64::new(want, 0.0)).norm() < 1e-9);
                }
            }
        }
    }
}
