//! The tube algebra A = ⊕_{i,α,j} (iα, αj) of a concrete category.
//!
//! Blocks are addressed by labels and built on first use, so the engine
//! also runs on categories with infinitely many irreducibles as long as
//! only finitely many blocks are touched.

use super::category::{Category, GramBasis};
use crate::error::{Error, Result};
use crate::scalar::Field;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

/// (i, α, j): the block (iα, αj).
pub type BlockKey<L> = (L, L, L);

/// Coordinates of an element in the block bases.
#[derive(Clone, Debug, PartialEq)]
pub struct TubeElement<L: Ord, S> {
    pub blocks: BTreeMap<BlockKey<L>, Vec<S>>,
}

impl<L: Ord + Clone, S: Field> TubeElement<L, S> {
    pub fn zero() -> Self {
        TubeElement { blocks: BTreeMap::new() }
    }

    pub fn single(key: BlockKey<L>, coords: Vec<S>) -> Self {
        let mut out = Self::zero();
        out.insert(key, coords);
        out
    }

    /// Adds `coords` into the block `key`.
    pub fn insert(&mut self, key: BlockKey<L>, coords: Vec<S>) {
        if coords.iter().all(|c| c.is_zero()) {
            return;
        }
        match self.blocks.get_mut(&key) {
            Some(v) => {
                for (x, y) in v.iter_mut().zip(coords) {
                    *x = x.clone() + y;
                }
                if v.iter().all(|c| c.is_zero()) {
                    self.blocks.remove(&key);
                }
            }
            None => {
                self.blocks.insert(key, coords);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &o.blocks {
            out.insert(k.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, x: &S) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.blocks {
            out.insert(k.clone(), v.iter().map(|c| c.clone() * x).collect());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-S::one()))
    }

    /// Largest coordinate; exactly 0 for the zero element of an exact field.
    pub fn max_abs(&self) -> f64 {
        self.blocks.values().flatten().map(|c| c.magnitude()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().flatten().all(|c| c.is_zero())
    }

    /// Keeps the blocks whose key passes `keep`.
    pub fn filter(&self, keep: impl Fn(&BlockKey<L>) -> bool) -> Self {
        TubeElement { blocks: self.blocks.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (k.clone(), v.clone())).collect() }
    }
}

/// One block with the words of its hom space and a Gram basis.
pub struct Block<C: Category> {
    pub key: BlockKey<C::Label>,
    pub cod: Vec<C::Label>,
    pub dom: Vec<C::Label>,
    pub basis: GramBasis<C>,
}

type WordKey<L> = (Vec<L>, L);

pub struct TubeAlgebra<C: Category> {
    cat: C,
    blocks: RwLock<HashMap<BlockKey<C::Label>, Arc<Block<C>>>>,
    words: RwLock<HashMap<WordKey<C::Label>, Arc<GramBasis<C>>>>,
}

pub type Elem<C> = TubeElement<<C as Category>::Label, <C as Category>::Scalar>;

impl<C: Category> TubeAlgebra<C> {
    pub fn new(cat: C) -> Self {
        TubeAlgebra { cat, blocks: RwLock::new(HashMap::new()), words: RwLock::new(HashMap::new()) }
    }

    pub fn category(&self) -> &C {
        &self.cat
    }

    /// The irreducible labels, for operations that sum over all of them.
    pub fn irreducibles(&self) -> Result<Vec<C::Label>> {
        self.cat
            .irreducibles()
            .ok_or_else(|| Error::InvalidInput(format!("{} has infinitely many irreducibles", self.cat.name())))
    }

    fn one(&self, a: &C::Label) -> C::Mor {
        self.cat.identity(&self.cat.word(std::slice::from_ref(a)))
    }

    pub fn block(&self, i: &C::Label, a: &C::Label, j: &C::Label) -> Result<Arc<Block<C>>> {
        let key = (i.clone(), a.clone(), j.clone());
        if let Some(b) = self.blocks.read().expect("block cache").get(&key) {
            return Ok(b.clone());
        }
        let cod = self.cat.word(&[i.clone(), a.clone()]);
        let dom = self.cat.word(&[a.clone(), j.clone()]);
        let basis = GramBasis::new(&self.cat, self.cat.hom_basis(&cod, &dom)?)?;
        let b = Arc::new(Block { key: key.clone(), cod, dom, basis });
        Ok(self.blocks.write().expect("block cache").entry(key).or_insert(b).clone())
    }

    fn word_basis(&self, word: &[C::Label], g: &C::Label) -> Result<Arc<GramBasis<C>>> {
        let key = (word.to_vec(), g.clone());
        if let Some(b) = self.words.read().expect("word cache").get(&key) {
            return Ok(b.clone());
        }
        let basis = GramBasis::new(&self.cat, self.cat.hom_basis(word, &self.cat.word(std::slice::from_ref(g)))?)?;
        let b = Arc::new(basis);
        Ok(self.words.write().expect("word cache").entry(key).or_insert(b).clone())
    }

    pub fn block_dim(&self, i: &C::Label, a: &C::Label, j: &C::Label) -> Result<usize> {
        Ok(self.block(i, a, j)?.basis.len())
    }

    /// The k-th basis vector of a block.
    pub fn basis_element(&self, key: &BlockKey<C::Label>, k: usize) -> Result<Elem<C>> {
        let n = self.block(&key.0, &key.1, &key.2)?.basis.len();
        let mut v = vec![C::Scalar::zero(); n];
        v[k] = C::Scalar::one();
        Ok(TubeElement::single(key.clone(), v))
    }

    /// The morphism of one block of an element.
    pub fn block_morphism(&self, key: &BlockKey<C::Label>, coords: &[C::Scalar]) -> Result<C::Mor> {
        let b = self.block(&key.0, &key.1, &key.2)?;
        Ok(b.basis.combine(&self.cat, coords, &b.cod, &b.dom))
    }

    /// V ∈ (iα, αj) for an irreducible α, as an element of A.
    pub fn from_morphism(&self, i: &C::Label, a: &C::Label, j: &C::Label, m: &C::Mor) -> Result<Elem<C>> {
        let b = self.block(i, a, j)?;
        Ok(TubeElement::single(b.key.clone(), b.basis.coords(&self.cat, m)))
    }

    /// V ∈ (i·word, word·j) as an element of A:
    /// Σ_γ d(γ) Σ_{W ∈ onb(word, γ)} (1 ⊗ W*) V (W ⊗ 1).
    pub fn embed(&self, i: &C::Label, word: &[C::Label], j: &C::Label, m: &C::Mor) -> Result<Elem<C>> {
        let word = self.cat.word(word);
        if word.len() <= 1 {
            let a = word.first().cloned().unwrap_or_else(|| self.cat.unit());
            return self.from_morphism(i, &a, j, m);
        }
        let (one_i, one_j) = (self.one(i), self.one(j));
        let mut out = TubeElement::zero();
        for g in self.cat.constituents(&word) {
            let target = self.block(i, &g, j)?;
            if target.basis.is_empty() {
                continue;
            }
            let wb = self.word_basis(&word, &g)?;
            // Σ_ab (G⁻¹)_{ba} (1 ⊗ X_b*) V (X_a ⊗ 1), summing over a first
            let vx: Vec<C::Mor> = wb.basis.iter().map(|x| self.cat.compose(m, &self.cat.tensor(x, &one_j))).collect();
            let mut summed = self.cat.zero(&target.cod, &target.dom);
            for (b, xb) in wb.basis.iter().enumerate() {
                let mut right: Option<C::Mor> = None;
                for (a, t) in vx.iter().enumerate() {
                    let w = wb.gram_inv.get(b, a);
                    if w.is_zero() {
                        continue;
                    }
                    let t = self.cat.scale(t, w);
                    right = Some(match right {
                        Some(r) => self.cat.add(&r, &t),
                        None => t,
                    });
                }
                if let Some(r) = right {
                    let left = self.cat.tensor(&one_i, &self.cat.adjoint(xb));
                    summed = self.cat.add(&summed, &self.cat.compose(&left, &r));
                }
            }
            let summed = self.cat.scale(&summed, &self.cat.dim(&g));
            out.insert(target.key.clone(), target.basis.coords(&self.cat, &summed));
        }
        Ok(out)
    }

    /// V·W = (V ⊗ 1_β)(1_α ⊗ W) for V ∈ (iα, αj), W ∈ (jβ, βk), then embedded.
    pub fn mul(&self, x: &Elem<C>, y: &Elem<C>) -> Result<Elem<C>> {
        let mut out = TubeElement::zero();
        for (kx, cx) in &x.blocks {
            let v = self.block_morphism(kx, cx)?;
            for (ky, cy) in y.blocks.iter().filter(|(ky, _)| ky.0 == kx.2) {
                let w = self.block_morphism(ky, cy)?;
                let m = self.cat.compose(&self.cat.tensor(&v, &self.one(&ky.1)), &self.cat.tensor(&self.one(&kx.1), &w));
                let prod = self.embed(&kx.0, &[kx.1.clone(), ky.1.clone()], &ky.2, &m)?;
                out = out.add(&prod);
            }
        }
        Ok(out)
    }

    /// V^# = (t_α* ⊗ 1 ⊗ 1)(1 ⊗ V* ⊗ 1)(1 ⊗ 1 ⊗ s_α) ∈ (jᾱ, ᾱi).
    pub fn sharp(&self, x: &Elem<C>) -> Result<Elem<C>> {
        let mut out = TubeElement::zero();
        for (k, c) in &x.blocks {
            let (i, a, j) = k;
            let ab = self.cat.dual(a);
            let v = self.block_morphism(k, c)?;
            let (one_i, one_j, one_ab) = (self.one(i), self.one(j), self.one(&ab));
            let lower = self.cat.tensor(&self.cat.tensor(&one_ab, &one_i), &self.cat.std_s(a));
            let middle = self.cat.tensor(&self.cat.tensor(&one_ab, &self.cat.adjoint(&v)), &one_ab);
            let upper = self.cat.tensor(&self.cat.tensor(&self.cat.adjoint(&self.cat.std_t(a)), &one_j), &one_ab);
            let m = self.cat.compose(&upper, &self.cat.compose(&middle, &lower));
            out = out.add(&self.from_morphism(j, &ab, i, &m)?);
        }
        Ok(out)
    }

    /// τ(V) = Tr_i(V) on the blocks (iε, εi).
    pub fn tau(&self, x: &Elem<C>) -> Result<C::Scalar> {
        let e = self.cat.unit();
        let mut s = C::Scalar::zero();
        for (k, c) in &x.blocks {
            if k.1 == e && k.0 == k.2 {
                s = s + self.cat.trace(&self.block_morphism(k, c)?);
            }
        }
        Ok(s)
    }

    /// ε(V) = Tr_α(V) on the blocks (εα, αε).
    pub fn counit(&self, x: &Elem<C>) -> Result<C::Scalar> {
        let e = self.cat.unit();
        let mut s = C::Scalar::zero();
        for (k, c) in &x.blocks {
            if k.0 == e && k.2 == e {
                s = s + self.cat.trace(&self.block_morphism(k, c)?);
            }
        }
        Ok(s)
    }

    /// The local unit p_i: the identity of i in (iε, εi).
    pub fn p(&self, i: &C::Label) -> Result<Elem<C>> {
        self.from_morphism(i, &self.cat.unit(), i, &self.one(i))
    }

    /// U_i: the identity of ii in (ii, ii).
    pub fn central_u(&self, i: &C::Label) -> Result<Elem<C>> {
        let w = self.cat.word(&[i.clone(), i.clone()]);
        self.from_morphism(i, i, i, &self.cat.identity(&w))
    }

    /// Tr_{αj}(W* V) for two elements of the same block.
    pub fn block_inner(&self, key: &BlockKey<C::Label>, v: &[C::Scalar], w: &[C::Scalar]) -> Result<C::Scalar> {
        let (mv, mw) = (self.block_morphism(key, v)?, self.block_morphism(key, w)?);
        Ok(self.cat.inner(&mv, &mw))
    }

    /// Every nonzero block (i, α, j) over the irreducibles, in label order.
    pub fn all_blocks(&self) -> Result<Vec<BlockKey<C::Label>>> {
        let labels = self.irreducibles()?;
        let mut out = Vec::new();
        for i in &labels {
            for a in &labels {
                for j in &labels {
                    if self.block_dim(i, a, j)? > 0 {
                        out.push((i.clone(), a.clone(), j.clone()));
                    }
                }
            }
        }
        Ok(out)
    }

    /// The nonzero blocks (i, γ, i) of the corner p_i·A·p_i.
    pub fn corner_blocks(&self, i: &C::Label) -> Result<Vec<BlockKey<C::Label>>> {
        let mut out = Vec::new();
        for g in self.irreducibles()? {
            if self.block_dim(i, &g, i)? > 0 {
                out.push((i.clone(), g, i.clone()));
            }
        }
        Ok(out)
    }

    /// Σ_i p_i over all irreducibles.
    pub fn unit_element(&self) -> Result<Elem<C>> {
        let mut out = TubeElement::zero();
        for i in self.irreducibles()? {
            out = out.add(&self.p(&i)?);
        }
        Ok(out)
    }
}

/// A fixed ordering of some blocks, to pass between elements and flat
/// coordinate vectors.
#[derive(Clone, Debug)]
pub struct Layout<L> {
    pub keys: Vec<BlockKey<L>>,
    pub offsets: Vec<usize>,
    pub dim: usize,
}

impl<L: Ord + Clone> Layout<L> {
    pub fn new<C: Category<Label = L>>(alg: &TubeAlgebra<C>, keys: Vec<BlockKey<L>>) -> Result<Self> {
        let mut offsets = Vec::with_capacity(keys.len());
        let mut dim = 0;
        for k in &keys {
            offsets.push(dim);
            dim += alg.block_dim(&k.0, &k.1, &k.2)?;
        }
        Ok(Layout { keys, offsets, dim })
    }

    /// Coordinates outside the layout are an error: they would be dropped.
    pub fn flatten<S: Field>(&self, x: &TubeElement<L, S>) -> Result<Vec<S>> {
        let mut out = vec![S::zero(); self.dim];
        for (k, v) in &x.blocks {
            let pos = self.keys.iter().position(|q| q == k).ok_or_else(|| Error::Consistency("element leaves the layout".into()))?;
            for (t, c) in v.iter().enumerate() {
                out[self.offsets[pos] + t] = c.clone();
            }
        }
        Ok(out)
    }

    pub fn unflatten<S: Field>(&self, v: &[S]) -> TubeElement<L, S> {
        let mut out = TubeElement::zero();
        for (pos, k) in self.keys.iter().enumerate() {
            let end = self.offsets.get(pos + 1).copied().unwrap_or(self.dim);
            out.insert(k.clone(), v[self.offsets[pos]..end].to_vec());
        }
        out
    }

    /// The q-th basis vector.
    pub fn unit_vector<S: Field>(&self, q: usize) -> TubeElement<L, S> {
        let mut v = vec![S::zero(); self.dim];
        v[q] = S::one();
        self.unflatten(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprep::GroupCategory;
    use crate::scalar::Cyclo;

    fn alg(name: &str) -> TubeAlgebra<GroupCategory<Cyclo>> {
        TubeAlgebra::new(GroupCategory::builtin(name).unwrap())
    }

    fn basis<C: Category>(a: &TubeAlgebra<C>) -> Vec<Elem<C>> {
        let layout = Layout::new(a, a.all_blocks().unwrap()).unwrap();
        (0..layout.dim).map(|q| layout.unit_vector(q)).collect()
    }

    #[test]
    fn a4_dimensions() {
        let a = alg("A4");
        let layout = Layout::new(&a, a.all_blocks().unwrap()).unwrap();
        assert_eq!(layout.dim, 40);
        let pi = a.category().label("pi").unwrap();
        assert_eq!(Layout::new(&a, a.corner_blocks(&pi).unwrap()).unwrap().dim, 10);
    }

    #[test]
    fn local_units_and_unit_element() {
        let a = alg("S3");
        let one = a.unit_element().unwrap();
        for x in basis(&a) {
            assert_eq!(a.mul(&one, &x).unwrap(), x);
            assert_eq!(a.mul(&x, &one).unwrap(), x);
        }
        for i in a.irreducibles().unwrap() {
            let p = a.p(&i).unwrap();
            assert_eq!(a.mul(&p, &p).unwrap(), p);
        }
        // U_ε = p_ε
        let e = a.category().unit();
        assert_eq!(a.central_u(&e).unwrap(), a.p(&e).unwrap());
    }

    #[test]
    fn associative_and_sharp_is_an_antilinear_antihomomorphism() {
        let a = alg("S3");
        let b = basis(&a);
        for x in &b {
            assert_eq!(&a.sharp(&a.sharp(x).unwrap()).unwrap(), x);
        }
        for (s, x) in b.iter().enumerate().step_by(3) {
            for y in b.iter().skip(s % 2).step_by(2) {
                let xy = a.mul(x, y).unwrap();
                let lhs = a.sharp(&xy).unwrap();
                let rhs = a.mul(&a.sharp(y).unwrap(), &a.sharp(x).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                for z in b.iter().step_by(5) {
                    assert_eq!(a.mul(&xy, z).unwrap(), a.mul(x, &a.mul(y, z).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn trace_is_tracial_and_faithful() {
        let a = alg("S3");
        let b = basis(&a);
        for x in &b {
            for y in &b {
                assert_eq!(a.tau(&a.mul(x, y).unwrap()).unwrap(), a.tau(&a.mul(y, x).unwrap()).unwrap());
            }
            // τ(x^# x) > 0
            let t = a.tau(&a.mul(&a.sharp(x).unwrap(), x).unwrap()).unwrap().to_c64();
            assert!(t.re > 0.0 && t.im.abs() < 1e-12);
        }
    }

    #[test]
    fn block_inner_product_is_d_alpha_tau() {
        let a = alg("A4");
        let cat = a.category();
        for key in a.all_blocks().unwrap() {
            let n = a.block_dim(&key.0, &key.1, &key.2).unwrap();
            for s in 0..n {
                for t in 0..n {
                    let v = a.basis_element(&key, s).unwrap();
                    let w = a.basis_element(&key, t).unwrap();
                    let lhs = a.block_inner(&key, &v.blocks[&key], &w.blocks[&key]).unwrap();
                    let rhs = cat.dim(&key.1) * a.tau(&a.mul(&a.sharp(&w).unwrap(), &v).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "{key:?}");
                }
            }
        }
    }

    #[test]
    fn layout_round_trip_and_leak_detection() {
        let a = alg("Z/3");
        let layout = Layout::new(&a, a.corner_blocks(&0).unwrap()).unwrap();
        let x: Elem<GroupCategory<Cyclo>> = layout.unit_vector(1);
        assert_eq!(layout.unflatten(&layout.flatten(&x).unwrap()), x);
        assert!(layout.flatten(&a.p(&1).unwrap()).is_err());
    }
}
