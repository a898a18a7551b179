//! Rep(G) as a concrete category: morphisms are intertwiner matrices between
//! tensor products of the chosen irreps.

use super::builtin::builtin_group;
use super::{FiniteGroup, UnitaryIrrep};
use crate::error::{invalid, Error, Result};
use crate::fusion::{decompose_word, FiniteRing, FusionRing};
use crate::linalg::{Mat, SpanBuilder};
use crate::scalar::{Cyclo, Field, FromCyclo, Rational};
use crate::tube::{self, Category};
use num_bigint::BigInt;
use serde::Deserialize;
use std::collections::BTreeMap;

/// The category Rep(G) over the scalar field `S`.
///
/// The conjugate of an irrep `a` is the listed irrep ā with the conjugate
/// character, and J_a is a unitary with ρ_ā(g) = J_a ρ̄_a(g) J_a*. The standard
/// solutions are s_a = Σ_k e_k ⊗ J_a e_k and t_a = Σ_k J_a e_k ⊗ e_k.
#[derive(Clone, Debug)]
pub struct GroupCategory<S> {
    group: FiniteGroup,
    irreps: Vec<UnitaryIrrep>,
    ring: FiniteRing,
    mats: Vec<Vec<Mat<S>>>,
    jmats: Vec<Mat<S>>,
    monomial: bool,
}

impl<S: FromCyclo> GroupCategory<S> {
    /// Validates a complete list of pairwise inequivalent unitary irreps.
    pub fn new(group: FiniteGroup, irreps: Vec<UnitaryIrrep>) -> Result<Self> {
        if irreps.is_empty() {
            return invalid("no irreps given");
        }
        for r in &irreps {
            r.validate(&group)?;
        }
        let n = group.order();
        let sum_sq: usize = irreps.iter().map(|r| r.degree() * r.degree()).sum();
        if sum_sq != n {
            return invalid(format!("Σ d² = {sum_sq} but |G| = {n}: the irrep list is incomplete"));
        }
        let chars: Vec<Vec<Cyclo>> = irreps.iter().map(|r| r.character()).collect();
        let order = Cyclo::int(n as i64);
        let inner = |a: &[Cyclo], b: &[Cyclo]| -> Cyclo {
            let s = a.iter().zip(b).fold(Cyclo::zero(), |acc, (x, y)| acc + x.clone() * y.conj());
            s / order.clone()
        };
        for a in 0..irreps.len() {
            for b in 0..a {
                if !inner(&chars[a], &chars[b]).is_zero() {
                    return invalid(format!("{} and {} are equivalent", irreps[a].name, irreps[b].name));
                }
            }
        }
        if !irreps.iter().any(|r| r.degree() == 1 && r.matrices.iter().all(|m| m.get(0, 0).is_one())) {
            return invalid("the trivial representation is missing");
        }
        let conj = (0..irreps.len())
            .map(|a| {
                let c: Vec<Cyclo> = chars[a].iter().map(Field::conj).collect();
                chars.iter().position(|x| *x == c).ok_or_else(|| Error::Consistency(format!("no conjugate for {}", irreps[a].name)))
            })
            .collect::<Result<Vec<_>>>()?;
        let k = irreps.len();
        let mut cube = vec![0u64; k * k * k];
        for a in 0..k {
            for b in 0..k {
                let prod: Vec<Cyclo> = chars[a].iter().zip(&chars[b]).map(|(x, y)| x.clone() * y).collect();
                for c in 0..k {
                    let m = inner(&prod, &chars[c]).as_rational().filter(|q| q.is_integer());
                    let m = m.ok_or_else(|| Error::Consistency("non-integral fusion multiplicity".into()))?;
                    cube[(a * k + b) * k + c] = m.to_integer().try_into().map_err(|_| Error::Consistency("negative multiplicity".into()))?;
                }
            }
        }
        let names = irreps.iter().map(|r| r.name.clone()).collect();
        let dims = irreps.iter().map(|r| Rational::from_integer(BigInt::from(r.degree()))).collect();
        let ring = FiniteRing::new(format!("Rep({})", group.name()), names, dims, conj.clone(), |a, b, c| cube[(a * k + b) * k + c])?;
        let jmats = (0..k).map(|a| conjugation_unitary::<S>(&group, &irreps[a], &irreps[conj[a]])).collect::<Result<Vec<_>>>()?;
        let mats = irreps.iter().map(|r| r.matrices.iter().map(|m| m.map(S::from_cyclo)).collect()).collect();
        let monomial = irreps.iter().all(|r| r.matrices.iter().all(is_monomial));
        Ok(GroupCategory { group, irreps, ring, mats, jmats, monomial })
    }

    /// `Z/n`, `S3` or `A4`.
    pub fn builtin(name: &str) -> Result<Self> {
        let (g, irreps) = builtin_group(name)?;
        Self::new(g, irreps)
    }

    /// Reads `{"group": {order, mul}, "root_of_unity": n, "irreps": [{name, matrices}]}`
    /// where matrix entries are cyclotomic expressions in `w = ζ_n`.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct IrrepIn {
            name: String,
            matrices: Vec<Vec<Vec<serde_json::Value>>>,
        }
        #[derive(Deserialize)]
        struct Input {
            group: serde_json::Value,
            root_of_unity: u32,
            irreps: Vec<IrrepIn>,
        }
        let input: Input = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let group = FiniteGroup::from_json(&input.group.to_string())?;
        let n = input.root_of_unity.max(1);
        let mut irreps = Vec::new();
        for r in input.irreps {
            let mut mats = Vec::new();
            for m in r.matrices {
                let rows = m
                    .iter()
                    .map(|row| row.iter().map(|v| parse_cyclo_value(v, n)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                if rows.iter().any(|row| row.len() != rows.len()) {
                    return invalid(format!("{}: matrices must be square", r.name));
                }
                mats.push(Mat::from_rows(rows));
            }
            irreps.push(UnitaryIrrep::new(r.name, mats));
        }
        Self::new(group, irreps)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn irreps(&self) -> &[UnitaryIrrep] {
        &self.irreps
    }

    /// The fusion ring of the chosen irreps.
    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn label(&self, name: &str) -> Result<usize> {
        self.ring.parse_label(name)
    }

    pub fn word_dim(&self, word: &[usize]) -> usize {
        word.iter().map(|&a| self.irreps[a].degree()).product()
    }

    /// ρ_word(g) as a dense matrix.
    pub fn word_matrix(&self, word: &[usize], g: usize) -> Mat<S> {
        word.iter().fold(Mat::identity(1), |acc, &a| acc.kron(&self.mats[a][g]))
    }

    /// The largest deviation from ρ_cod(g) M = M ρ_dom(g) over all g.
    pub fn intertwiner_residual(&self, cod: &[usize], dom: &[usize], m: &Mat<S>) -> f64 {
        self.group
            .elements()
            .map(|g| self.word_matrix(cod, g).mul(m).sub(&m.mul(&self.word_matrix(dom, g))).max_abs())
            .fold(0.0, f64::max)
    }

    /// A basis of (cod, dom), i.e. of intertwiners dom → cod.
    pub fn hom_space(&self, cod: &[usize], dom: &[usize]) -> Result<Vec<Mat<S>>> {
        self.hom_basis(cod, dom)
    }

    pub fn onb(&self, cod: &[usize], dom: &[usize]) -> Result<Vec<Mat<S>>> {
        tube::onb(self, &self.hom_basis(cod, dom)?)
    }

    /// (s_a, t_a) with s_a ∈ (a ā, ε) and t_a ∈ (ā a, ε).
    pub fn standard_pair(&self, a: usize) -> (Mat<S>, Mat<S>) {
        (self.std_s(&a), self.std_t(&a))
    }

    pub fn categorical_trace(&self, t: &Mat<S>) -> S {
        self.trace(t)
    }

    /// Σ_γ mult_cod(γ) mult_dom(γ).
    pub fn hom_dim(&self, cod: &[usize], dom: &[usize]) -> Result<u64> {
        let c = decompose_word(&self.ring, cod)?;
        let d = decompose_word(&self.ring, dom)?;
        Ok(c.iter().map(|(g, m)| m * d.get(g).copied().unwrap_or(0)).sum())
    }

    /// ρ_word(g) e_m as a sparse column.
    fn column(&self, word: &[usize], g: usize, m: usize) -> Vec<(usize, S)> {
        let mut digits = vec![0; word.len()];
        let mut rest = m;
        for (f, &a) in word.iter().enumerate().rev() {
            let d = self.irreps[a].degree();
            digits[f] = rest % d;
            rest /= d;
        }
        let mut col: Vec<(usize, S)> = vec![(0, S::one())];
        for (f, &a) in word.iter().enumerate() {
            let mat = &self.mats[a][g];
            let d = mat.rows();
            let mut next = Vec::with_capacity(col.len());
            for (idx, x) in &col {
                for r in 0..d {
                    let y = mat.get(r, digits[f]);
                    if !y.is_zero() {
                        next.push((idx * d + r, x.clone() * y));
                    }
                }
            }
            col = next;
        }
        col
    }

    /// (1/|G|) Σ_g ρ_cod(g) E_mn ρ_dom(g)*, flattened row-major.
    fn average(&self, cod: &[usize], dom: &[usize], m: usize, n: usize) -> BTreeMap<usize, S> {
        let dd = self.word_dim(dom);
        let mut acc: BTreeMap<usize, S> = BTreeMap::new();
        for g in self.group.elements() {
            let cw = self.column(cod, g, m);
            let cv = self.column(dom, g, n);
            for (r, x) in &cw {
                for (c, y) in &cv {
                    let v = x.clone() * y.conj();
                    let e = acc.entry(r * dd + c).or_insert_with(S::zero);
                    *e = e.clone() + v;
                }
            }
        }
        acc
    }
}

fn is_monomial(m: &Mat<Cyclo>) -> bool {
    (0..m.cols()).all(|j| (0..m.rows()).filter(|&i| !m.get(i, j).is_zero()).count() == 1)
}

/// A unitary J with ρ_b(g) = J ρ̄_a(g) J* for all g, where b has the conjugate
/// character of a.
fn conjugation_unitary<S: FromCyclo>(g: &FiniteGroup, a: &UnitaryIrrep, b: &UnitaryIrrep) -> Result<Mat<S>> {
    let d = a.degree();
    if a.matrices.iter().zip(&b.matrices).all(|(x, y)| x.conj() == *y) {
        return Ok(Mat::identity(d));
    }
    for m in 0..d {
        for n in 0..d {
            // average of ρ_b(g) E_mn ρ̄_a(g)* = ρ_b(g) E_mn ρ_a(g)ᵀ
            let mut acc = Mat::<Cyclo>::zeros(d, d);
            for x in g.elements() {
                let rb = &b.matrices[x];
                let ra = &a.matrices[x];
                let term = Mat::from_fn(d, d, |i, j| rb.get(i, m).clone() * ra.get(j, n));
                acc = acc.add(&term);
            }
            if acc.is_zero() {
                continue;
            }
            let c = acc.adjoint().mul(&acc).get(0, 0).clone();
            let scale = match c.sqrt().and_then(|r| r.inv()) {
                Some(r) => S::from_cyclo(&r),
                None if !S::EXACT => S::from_cyclo(&c).sqrt().and_then(|r| r.inv()).ok_or_else(|| Error::NotInField("square root of a norm".into()))?,
                None => return Err(Error::NotInField(format!("√({c}) is needed to normalize the conjugation of {}", a.name))),
            };
            return Ok(acc.map(S::from_cyclo).scale(&scale));
        }
    }
    Err(Error::Consistency(format!("{} and {} are not conjugate", a.name, b.name)))
}

impl<S: FromCyclo> Category for GroupCategory<S> {
    type Label = usize;
    type Scalar = S;
    type Mor = Mat<S>;

    fn name(&self) -> String {
        format!("Rep({})", self.group.name())
    }

    fn unit(&self) -> usize {
        self.ring.unit()
    }

    fn dual(&self, a: &usize) -> usize {
        self.ring.conj(a)
    }

    fn dim(&self, a: &usize) -> S {
        S::from_i64(self.irreps[*a].degree() as i64)
    }

    fn irreducibles(&self) -> Option<Vec<usize>> {
        Some((0..self.irreps.len()).collect())
    }

    fn constituents(&self, word: &[usize]) -> Vec<usize> {
        decompose_word(&self.ring, word).map(|m| m.into_keys().collect()).unwrap_or_default()
    }

    fn label_name(&self, a: &usize) -> String {
        self.irreps[*a].name.clone()
    }

    fn identity(&self, word: &[usize]) -> Mat<S> {
        Mat::identity(self.word_dim(word))
    }

    fn zero(&self, cod: &[usize], dom: &[usize]) -> Mat<S> {
        Mat::zeros(self.word_dim(cod), self.word_dim(dom))
    }

    fn compose(&self, f: &Mat<S>, g: &Mat<S>) -> Mat<S> {
        f.mul(g)
    }

    fn tensor(&self, f: &Mat<S>, g: &Mat<S>) -> Mat<S> {
        f.kron(g)
    }

    fn adjoint(&self, f: &Mat<S>) -> Mat<S> {
        f.adjoint()
    }

    fn add(&self, f: &Mat<S>, g: &Mat<S>) -> Mat<S> {
        f.add(g)
    }

    fn scale(&self, f: &Mat<S>, x: &S) -> Mat<S> {
        f.scale(x)
    }

    fn trace(&self, f: &Mat<S>) -> S {
        f.trace()
    }

    fn std_s(&self, a: &usize) -> Mat<S> {
        let j = &self.jmats[*a];
        let d = j.rows();
        Mat::column((0..d * d).map(|x| j.get(x % d, x / d).clone()).collect())
    }

    fn std_t(&self, a: &usize) -> Mat<S> {
        let j = &self.jmats[*a];
        Mat::column(j.data().to_vec())
    }

    fn hom_basis(&self, cod: &[usize], dom: &[usize]) -> Result<Vec<Mat<S>>> {
        let target = self.hom_dim(cod, dom)? as usize;
        let (dc, dd) = (self.word_dim(cod), self.word_dim(dom));
        let mut out = Vec::with_capacity(target);
        if target == 0 {
            return Ok(out);
        }
        let to_mat = |v: &BTreeMap<usize, S>| {
            let mut m = Mat::zeros(dc, dd);
            for (k, x) in v {
                m.set(k / dd, k % dd, x.clone());
            }
            m
        };
        if self.monomial {
            // distinct orbit sums have disjoint supports
            let mut covered = vec![false; dc * dd];
            'scan: for m in 0..dc {
                for n in 0..dd {
                    if covered[m * dd + n] {
                        continue;
                    }
                    let avg = self.average(cod, dom, m, n);
                    for k in avg.keys() {
                        covered[*k] = true;
                    }
                    let nz: BTreeMap<usize, S> = avg.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                    if !nz.is_empty() {
                        out.push(to_mat(&nz));
                        if out.len() == target {
                            break 'scan;
                        }
                    }
                }
            }
        } else {
            let mut span = SpanBuilder::new(dc * dd);
            'dense: for m in 0..dc {
                for n in 0..dd {
                    let avg = self.average(cod, dom, m, n);
                    let mut v = vec![S::zero(); dc * dd];
                    for (k, x) in &avg {
                        v[*k] = x.clone();
                    }
                    if span.push(&v) {
                        out.push(to_mat(&avg));
                        if out.len() == target {
                            break 'dense;
                        }
                    }
                }
            }
        }
        if out.len() != target {
            return Err(Error::Consistency(format!("found {} intertwiners, character theory predicts {target}", out.len())));
        }
        Ok(out)
    }

    fn norm(&self, f: &Mat<S>) -> f64 {
        f.frobenius()
    }

    /// In Rep(G) the rotation is the cyclic shift of tensor factors, moving
    /// the last factor to the front.
    fn rotate(&self, a: &usize, k: usize, xi: &Mat<S>) -> Mat<S> {
        if k == 0 {
            return xi.clone();
        }
        let d = self.irreps[*a].degree();
        let n = xi.rows();
        let head = n / d;
        let mut out = vec![S::zero(); n];
        for (idx, x) in xi.data().iter().enumerate() {
            let (rest, last) = (idx / d, idx % d);
            out[last * head + rest] = x.clone();
        }
        Mat::column(out)
    }
}

/// Entries may be JSON numbers or cyclotomic expression strings.
fn parse_cyclo_value(v: &serde_json::Value, n: u32) -> Result<Cyclo> {
    match v {
        serde_json::Value::Number(x) => x
            .as_i64()
            .map(Cyclo::int)
            .ok_or_else(|| Error::Parse(format!("matrix entry {x} must be an integer or a string"))),
        serde_json::Value::String(s) => crate::fusion::parse_cyclo_expr(s, n),
        other => Err(Error::Parse(format!("bad matrix entry {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::mult_in_word;
    use crate::tube::{frobenius_left, frobenius_left_inverse, frobenius_right, frobenius_right_inverse, partial_trace_left, partial_trace_right};
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn a4() -> GroupCategory<Cyclo> {
        GroupCategory::builtin("A4").unwrap()
    }

    /// dim (cod, dom) from characters alone: (1/|G|) Σ_g χ_cod(g) conj(χ_dom(g)).
    fn char_dim(c: &GroupCategory<Cyclo>, cod: &[usize], dom: &[usize]) -> Cyclo {
        let chi = |w: &[usize], g: usize| w.iter().fold(Cyclo::one(), |acc, &a| acc * c.irreps()[a].matrices[g].trace());
        let s = c.group().elements().fold(Cyclo::zero(), |acc, g| acc + chi(cod, g) * chi(dom, g).conj());
        s / Cyclo::int(c.group().order() as i64)
    }

    #[test]
    fn hom_dimensions_match_characters() {
        let c = a4();
        let (w1, pi) = (c.label("w1").unwrap(), c.label("pi").unwrap());
        assert_eq!(c.hom_space(&[pi, pi], &[pi, pi]).unwrap().len(), 7);
        assert_eq!(c.hom_space(&[], &[]).unwrap().len(), 1);
        assert_eq!(c.hom_space(&[pi], &[w1, pi]).unwrap().len(), 1);
        for (cod, dom) in [(vec![pi, pi, pi], vec![pi]), (vec![w1, pi], vec![pi, w1]), (vec![pi; 4], vec![])] {
            let basis = c.hom_space(&cod, &dom).unwrap();
            assert_eq!(Cyclo::int(basis.len() as i64), char_dim(&c, &cod, &dom));
            for m in &basis {
                assert_eq!(c.intertwiner_residual(&cod, &dom, m), 0.0);
            }
        }
        let s3 = GroupCategory::<Cyclo>::builtin("S3").unwrap();
        let rho = s3.label("rho").unwrap();
        for k in 0..5 {
            let n = s3.hom_space(&vec![rho; k], &[]).unwrap().len() as u64;
            assert_eq!(n, mult_in_word(s3.ring(), &s3.unit(), &vec![rho; k]).unwrap());
            assert_eq!(Cyclo::int(n as i64), char_dim(&s3, &vec![rho; k], &[]));
        }
    }

    #[test]
    fn conjugate_equations_and_standardness() {
        for name in ["A4", "S3", "Z/5"] {
            let c = GroupCategory::<Cyclo>::builtin(name).unwrap();
            for a in 0..c.irreps().len() {
                let ab = c.dual(&a);
                let (s, t) = c.standard_pair(a);
                let one_a = c.identity(&[a]);
                let one_ab = c.identity(&[ab]);
                assert_eq!(c.intertwiner_residual(&[a, ab], &[], &s), 0.0);
                assert_eq!(c.intertwiner_residual(&[ab, a], &[], &t), 0.0);
                let z1 = t.adjoint().kron(&one_ab).mul(&one_ab.kron(&s));
                assert_eq!(z1, one_ab);
                let z2 = s.adjoint().kron(&one_a).mul(&one_a.kron(&t));
                assert_eq!(z2, one_a);
                assert_eq!(s.adjoint().mul(&s).get(0, 0), &c.dim(&a));
                assert_eq!(t.adjoint().mul(&t).get(0, 0), &c.dim(&a));
                for x in c.hom_space(&[a], &[a]).unwrap() {
                    let left = s.adjoint().mul(&x.kron(&one_ab)).mul(&s);
                    let right = t.adjoint().mul(&one_ab.kron(&x)).mul(&t);
                    assert_eq!(left, right);
                    assert_eq!(*left.get(0, 0), c.categorical_trace(&x));
                }
            }
        }
    }

    #[test]
    fn s3_needs_a_nontrivial_conjugation() {
        let c = GroupCategory::<Cyclo>::builtin("S3").unwrap();
        let rho = c.label("rho").unwrap();
        assert_eq!(c.dual(&rho), rho);
        let (s, _) = c.standard_pair(rho);
        // Σ e_k ⊗ e_k is not invariant for the complex form of ρ
        let naive = Mat::column(vec![Cyclo::one(), Cyclo::zero(), Cyclo::zero(), Cyclo::one()]);
        assert!(c.intertwiner_residual(&[rho, rho], &[], &naive) > 0.1);
        assert_eq!(c.intertwiner_residual(&[rho, rho], &[], &s), 0.0);
    }

    #[test]
    fn onb_is_orthonormal() {
        let c = GroupCategory::<Complex64>::builtin("A4").unwrap();
        let pi = c.label("pi").unwrap();
        let e = c.onb(&[pi, pi], &[pi, pi]).unwrap();
        assert_eq!(e.len(), 7);
        for (x, a) in e.iter().enumerate() {
            for (y, b) in e.iter().enumerate() {
                let want = if x == y { 1.0 } else { 0.0 };
                assert!((c.inner(a, b) - want).norm() < 1e-10);
            }
        }
        // exact mode refuses irrational norms
        let exact = a4();
        assert_eq!(exact.onb(&[], &[]).unwrap().len(), 1);
    }

    fn random_hom(c: &GroupCategory<Complex64>, cod: &[usize], dom: &[usize], rng: &mut ChaCha8Rng) -> Mat<Complex64> {
        c.hom_space(cod, dom).unwrap().iter().fold(c.zero(cod, dom), |acc, x| {
            acc.add(&x.scale(&Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
        })
    }

    #[test]
    fn partial_traces_compose() {
        let c = GroupCategory::<Complex64>::builtin("A4").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let labels = c.irreducibles().unwrap();
        for &a in &labels {
            for &b in &labels {
                let t = random_hom(&c, &[a, b], &[a, b], &mut rng);
                let left = partial_trace_left(&c, &a, &[b], &[b], &t);
                assert!((c.trace(&left) - c.trace(&t)).norm() < 1e-10);
                let right = partial_trace_right(&c, &b, &[a], &[a], &t);
                assert!((c.trace(&right) - c.trace(&t)).norm() < 1e-10);
            }
        }
        assert_eq!(c.trace(&c.identity(&[3, 3])), Complex64::new(9.0, 0.0));
    }

    #[test]
    fn frobenius_maps_are_isometric() {
        let c = GroupCategory::<Complex64>::builtin("A4").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let labels = c.irreducibles().unwrap();
        for &a in &labels {
            for &b in &labels {
                for &g in &labels {
                    let n = c.hom_space(&[a, b], &[g]).unwrap().len();
                    let bb = c.dual(&b);
                    let ab = c.dual(&a);
                    assert_eq!(n, c.hom_space(&[a], &[g, bb]).unwrap().len());
                    assert_eq!(n, c.hom_space(&[b], &[ab, g]).unwrap().len());
                    if n == 0 {
                        continue;
                    }
                    let t = random_hom(&c, &[a, b], &[g], &mut rng);
                    let r = frobenius_right(&c, &[a], &b, &t);
                    assert!(c.intertwiner_residual(&[a], &[g, bb], &r) < 1e-10);
                    assert!((c.inner(&r, &r) - c.inner(&t, &t)).norm() < 1e-10);
                    assert!(frobenius_right_inverse(&c, &[g], &b, &r).sub(&t).max_abs() < 1e-10);
                    let l = frobenius_left(&c, &a, &[b], &t);
                    assert!((c.inner(&l, &l) - c.inner(&t, &t)).norm() < 1e-10);
                    assert!(frobenius_left_inverse(&c, &a, &[g], &l).sub(&t).max_abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn rotation_shortcut_matches_the_diagram() {
        let c = GroupCategory::<Cyclo>::builtin("S3").unwrap();
        let rho = c.label("rho").unwrap();
        for k in 1..5 {
            for xi in c.hom_space(&vec![rho; k], &[]).unwrap() {
                let fast = c.rotate(&rho, k, &xi);
                let one = c.identity(&[rho]);
                let lifted = one.kron(&xi).kron(&c.identity(&[c.dual(&rho)])).mul(&c.std_s(&rho));
                let slow = c.identity(&vec![rho; k]).kron(&c.std_s(&rho).adjoint()).mul(&lifted);
                assert_eq!(fast, slow);
            }
        }
    }

    #[test]
    fn json_ingestion() {
        let text = r#"{"group": {"order": 2, "mul": [[0,1],[1,0]]}, "root_of_unity": 2,
            "irreps": [{"name": "triv", "matrices": [[[1]], [[1]]]}, {"name": "sign", "matrices": [[[1]], [["-1"]]]}]}"#;
        let c = GroupCategory::<Cyclo>::from_json(text).unwrap();
        assert_eq!(c.irreducibles().unwrap().len(), 2);
        let missing = r#"{"group": {"order": 2, "mul": [[0,1],[1,0]]}, "root_of_unity": 1,
            "irreps": [{"name": "triv", "matrices": [[[1]], [[1]]]}]}"#;
        assert!(GroupCategory::<Cyclo>::from_json(missing).is_err());
    }
}
