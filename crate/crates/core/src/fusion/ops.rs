//! Operations on fusion rings: word multiplicities, orbits, index, gradings.

use super::{FiniteRing, FusionRing, Grading, Subcategory};
use crate::error::{invalid, Error, Result};
use crate::scalar::Rational;
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

/// Outcome of an index computation.
#[derive(Clone, Debug, PartialEq)]
pub enum IndexOutcome {
    Finite(Rational),
    Infinite,
    /// Exploration stopped at the bound without settling the question.
    Undetermined { explored: usize },
}

impl fmt::Display for IndexOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexOutcome::Finite(q) => write!(f, "{q}"),
            IndexOutcome::Infinite => write!(f, "inf"),
            IndexOutcome::Undetermined { explored } => write!(f, "undetermined (bound exceeded after {explored} labels)"),
        }
    }
}

/// Labels reachable from the unit by tensoring with generators, in
/// breadth-first order. The flag is true when the whole ring was reached.
pub fn explore<R: FusionRing>(ring: &R, bound: usize) -> Result<(Vec<R::Label>, bool)> {
    if let Some(all) = ring.labels() {
        return Ok((all, true));
    }
    let gens = ring.generators();
    let mut seen: BTreeSet<R::Label> = BTreeSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    let unit = ring.unit();
    seen.insert(unit.clone());
    order.push(unit.clone());
    queue.push_back(unit);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            for (y, _) in ring.fuse(&x, g)? {
                if seen.insert(y.clone()) {
                    if order.len() >= bound {
                        return Ok((order, false));
                    }
                    order.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
    }
    Ok((order, true))
}

fn finite_labels<R: FusionRing>(ring: &R, what: &str) -> Result<Vec<R::Label>> {
    ring.labels()
        .ok_or_else(|| Error::InvalidInput(format!("{what} needs a finite label set; {} is generated lazily", ring.name())))
}

/// Decomposition of the left-to-right tensor product of `word`.
pub fn decompose_word<R: FusionRing>(ring: &R, word: &[R::Label]) -> Result<BTreeMap<R::Label, u64>> {
    let mut cur: BTreeMap<R::Label, u64> = BTreeMap::from([(ring.unit(), 1)]);
    for a in word {
        let mut next: BTreeMap<R::Label, u64> = BTreeMap::new();
        for (x, m) in &cur {
            for (y, n) in ring.fuse(x, a)? {
                let e = next.entry(y).or_default();
                *e = m
                    .checked_mul(n)
                    .and_then(|v| e.checked_add(v))
                    .ok_or_else(|| Error::InvalidInput("multiplicity overflows 64 bits".into()))?;
            }
        }
        cur = next;
    }
    Ok(cur)
}

/// Multiplicity of γ in word[0] ⊗ word[1] ⊗ ⋯.
pub fn mult_in_word<R: FusionRing>(ring: &R, gamma: &R::Label, word: &[R::Label]) -> Result<u64> {
    Ok(decompose_word(ring, word)?.get(gamma).copied().unwrap_or(0))
}

/// d([word]_sub): the dimension of the largest subobject lying in `sub`.
pub fn sub_dim<R: FusionRing>(ring: &R, sub: &Subcategory<R::Label>, word: &[R::Label]) -> Result<Rational> {
    let mut total = Rational::zero();
    for (g, m) in decompose_word(ring, word)? {
        if sub.contains(&g) {
            total += ring.dim(&g) * Rational::from_integer(BigInt::from(m));
        }
    }
    Ok(total)
}

/// d(C) = Σ d(α)² for a finite ring.
pub fn global_dim<R: FusionRing>(ring: &R) -> Result<Rational> {
    Ok(finite_labels(ring, "the global dimension")?.iter().map(|a| {
        let d = ring.dim(a);
        &d * &d
    }).sum())
}

/// The sub-orbits α·C₁ of a finite ring, each sorted, ordered by first element.
pub fn orbits<R: FusionRing>(ring: &R, sub: &Subcategory<R::Label>) -> Result<Vec<Vec<R::Label>>> {
    let labels = finite_labels(ring, "orbit enumeration")?;
    let pos: BTreeMap<R::Label, usize> = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    let members: Vec<&R::Label> = labels.iter().filter(|l| sub.contains(l)).collect();
    let mut parent: Vec<usize> = (0..labels.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, a) in labels.iter().enumerate() {
        for g in &members {
            for (b, _) in ring.fuse(a, g)? {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, pos[&b]));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut blocks: BTreeMap<usize, Vec<R::Label>> = BTreeMap::new();
    for (i, a) in labels.iter().enumerate() {
        let r = find(&mut parent, i);
        blocks.entry(r).or_default().push(a.clone());
    }
    Ok(blocks.into_values().map(|mut b| {
        b.sort();
        b
    }).collect())
}

/// Checks that `sub` contains ε and is closed under conjugation and fusion.
/// Lazy rings are checked on the labels met within `bound` exploration steps.
pub fn validate_sub<R: FusionRing>(ring: &R, sub: &Subcategory<R::Label>, bound: usize) -> Result<()> {
    let unit = ring.unit();
    if !sub.contains(&unit) {
        return invalid("a subcategory must contain the unit");
    }
    let pool: Vec<R::Label> = match (sub.members(), ring.labels()) {
        (Some(m), _) => m.iter().cloned().collect(),
        (None, Some(all)) => all,
        (None, None) => explore(ring, bound)?.0,
    };
    let members: Vec<&R::Label> = pool.iter().filter(|l| sub.contains(l)).collect();
    for a in &members {
        let c = ring.conj(a);
        if !sub.contains(&c) {
            return invalid(format!("not closed under conjugation: {}", ring.label_name(a)));
        }
        for b in &members {
            for (g, _) in ring.fuse(a, b)? {
                if !sub.contains(&g) {
                    return invalid(format!(
                        "not closed under fusion: {} ≺ {} ⊗ {}",
                        ring.label_name(&g),
                        ring.label_name(a),
                        ring.label_name(b)
                    ));
                }
            }
        }
    }
    Ok(())
}

/// [C : C₁] = Σ_orbits d(α)² / d([ᾱα]_{C₁}).
///
/// On a lazy ring the answer is certified only in two cases: a finite
/// subcategory has finite orbits, so infinitely many labels force infinitely
/// many orbits, each contributing at least 1; and the kernel of a grading
/// has the fibres of the grading as orbits, each contributing exactly 1.
pub fn index<R: FusionRing>(ring: &R, sub: &Subcategory<R::Label>, bound: usize) -> Result<IndexOutcome> {
    validate_sub(ring, sub, bound)?;
    if ring.labels().is_some() {
        let mut total = Rational::zero();
        for block in orbits(ring, sub)? {
            let a = &block[0];
            let d = ring.dim(a);
            total += &d * &d / sub_dim(ring, sub, &[ring.conj(a), a.clone()])?;
        }
        return Ok(IndexOutcome::Finite(total));
    }
    match sub {
        Subcategory::Finite(_) => Ok(IndexOutcome::Infinite),
        Subcategory::Kernel(g) => {
            let gens: Vec<usize> = ring.generators().iter().map(|a| g.degree(a)).collect();
            let image = g.target.generated_subgroup(&gens);
            Ok(IndexOutcome::Finite(Rational::from_integer(BigInt::from(image.len()))))
        }
        Subcategory::Predicate { .. } => {
            let (seen, _) = explore(ring, bound)?;
            Ok(IndexOutcome::Undetermined { explored: seen.len() })
        }
    }
}

/// Checks the grading rules Ξ(ε) = e, Ξ(ᾱ) = Ξ(α)⁻¹ and Ξ(γ) = Ξ(α)Ξ(β) for
/// γ ≺ α⊗β. On lazy rings the pairs come from the first `bound` labels.
pub fn validate_grading<R: FusionRing>(ring: &R, gr: &Grading<R::Label>, bound: usize) -> Result<()> {
    let t = &gr.target;
    let unit = ring.unit();
    if gr.degree(&unit) != t.identity() {
        return invalid("the unit must have trivial degree");
    }
    let labels = explore(ring, bound)?.0;
    for a in &labels {
        if gr.degree(a) >= t.order() {
            return invalid(format!("degree of {} is outside the target group", ring.label_name(a)));
        }
        if gr.degree(&ring.conj(a)) != t.inv(gr.degree(a)) {
            return invalid(format!("conjugation rule fails at {}", ring.label_name(a)));
        }
    }
    for a in &labels {
        for b in &labels {
            let want = t.mul(gr.degree(a), gr.degree(b));
            for (g, _) in ring.fuse(a, b)? {
                if gr.degree(&g) != want {
                    return invalid(format!(
                        "grading violated on ({}, {}, {})",
                        ring.label_name(a),
                        ring.label_name(b),
                        ring.label_name(&g)
                    ));
                }
            }
        }
    }
    Ok(())
}

/// CatKer(Ξ) = {γ : Ξ(γ) = e}, after validating the grading.
pub fn grading_kernel<R: FusionRing>(ring: &R, gr: Grading<R::Label>, bound: usize) -> Result<Subcategory<R::Label>> {
    validate_grading(ring, &gr, bound)?;
    match ring.labels() {
        Some(all) => {
            let e = gr.target.identity();
            Ok(Subcategory::Finite(all.into_iter().filter(|a| gr.degree(a) == e).collect()))
        }
        None => Ok(Subcategory::Kernel(gr)),
    }
}

/// Smallest set containing `seed` and ε that is closed under fusion and
/// conjugation.
pub fn fusion_closure<R: FusionRing>(ring: &R, seed: &BTreeSet<R::Label>) -> Result<BTreeSet<R::Label>> {
    let mut set = seed.clone();
    set.insert(ring.unit());
    loop {
        let mut add = BTreeSet::new();
        for a in &set {
            let c = ring.conj(a);
            if !set.contains(&c) {
                add.insert(c);
            }
            for b in &set {
                for (g, _) in ring.fuse(a, b)? {
                    if !set.contains(&g) {
                        add.insert(g);
                    }
                }
            }
        }
        if add.is_empty() {
            return Ok(set);
        }
        set.extend(add);
    }
}

/// Labels in some α₁⋯α_k ᾱ_k⋯ᾱ₁ with k ≤ bound, closed under fusion.
pub fn unit_radical<R: FusionRing>(ring: &R, bound: usize) -> Result<Subcategory<R::Label>> {
    let labels = finite_labels(ring, "the unit radical")?;
    let mut layer: BTreeSet<R::Label> = BTreeSet::from([ring.unit()]);
    let mut all = layer.clone();
    for _ in 0..bound {
        let mut next = BTreeSet::new();
        for a in &labels {
            for s in &layer {
                for (x, _) in ring.fuse(a, s)? {
                    for (y, _) in ring.fuse(&x, &ring.conj(a))? {
                        next.insert(y);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        if next == layer {
            break;
        }
        layer = next;
    }
    Ok(Subcategory::Finite(fusion_closure(ring, &all)?))
}

/// Every full subcategory of a finite ring, smallest first.
pub fn full_subcategories<R: FusionRing>(ring: &R) -> Result<Vec<BTreeSet<R::Label>>> {
    let labels = finite_labels(ring, "subcategory enumeration")?;
    let unit = ring.unit();
    let others: Vec<R::Label> = labels.into_iter().filter(|l| *l != unit).collect();
    if others.len() > 20 {
        return Err(Error::BoundExceeded { bound: 21 });
    }
    let mut found: BTreeSet<BTreeSet<R::Label>> = BTreeSet::new();
    for mask in 0u32..(1 << others.len()) {
        let seed: BTreeSet<R::Label> =
            others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, l)| l.clone()).collect();
        found.insert(fusion_closure(ring, &seed)?);
    }
    let mut out: Vec<_> = found.into_iter().collect();
    out.sort_by_key(|s| s.len());
    Ok(out)
}

/// The ring of a full subcategory, with labels renumbered in order.
pub fn restrict<R: FusionRing>(ring: &R, sub: &Subcategory<R::Label>) -> Result<FiniteRing> {
    validate_sub(ring, sub, super::DEFAULT_BOUND)?;
    let members: Vec<R::Label> = match sub.members() {
        Some(m) => m.iter().cloned().collect(),
        None => finite_labels(ring, "restriction")?.into_iter().filter(|l| sub.contains(l)).collect(),
    };
    let pos: BTreeMap<&R::Label, usize> = members.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let mut cube = BTreeMap::new();
    for (i, a) in members.iter().enumerate() {
        for (j, b) in members.iter().enumerate() {
            for (g, n) in ring.fuse(a, b)? {
                cube.insert((i, j, pos[&g]), n);
            }
        }
    }
    FiniteRing::new(
        format!("{} restricted", ring.name()),
        members.iter().map(|l| ring.label_name(l)).collect(),
        members.iter().map(|l| ring.dim(l)).collect(),
        members.iter().map(|l| pos[&ring.conj(l)]).collect(),
        |a, b, c| cube.get(&(a, b, c)).copied().unwrap_or(0),
    )
}

/// Checks unit, duality, Frobenius symmetry and multiplicativity of the
/// dimension on all pairs from `sample`, reporting the first failure.
pub fn check_axioms_on<R: FusionRing>(ring: &R, sample: &[R::Label]) -> Result<()> {
    let unit = ring.unit();
    let name = |l: &R::Label| ring.label_name(l);
    for a in sample {
        if ring.conj(&ring.conj(a)) != *a || ring.dim(&ring.conj(a)) != ring.dim(a) {
            return invalid(format!("conjugation fails at {}", name(a)));
        }
        if ring.fuse(a, &unit)? != vec![(a.clone(), 1)] || ring.fuse(&unit, a)? != vec![(a.clone(), 1)] {
            return invalid(format!("unit law fails at {}", name(a)));
        }
        for b in sample {
            let prod = ring.fuse(a, b)?;
            let n_unit = prod.iter().find(|(g, _)| *g == unit).map_or(0, |x| x.1);
            if n_unit != u64::from(*b == ring.conj(a)) {
                return invalid(format!("N({}, {}, ε) = {n_unit} contradicts duality", name(a), name(b)));
            }
            let mut total = Rational::zero();
            for (g, n) in &prod {
                total += ring.dim(g) * Rational::from_integer(BigInt::from(*n));
                if *n != ring.n(&ring.conj(a), g, b)? || *n != ring.n(g, &ring.conj(b), a)? {
                    return invalid(format!("Frobenius symmetry fails on ({}, {}, {})", name(a), name(b), name(g)));
                }
            }
            if total != ring.dim(a) * ring.dim(b) {
                return invalid(format!("dimension is not multiplicative on {} ⊗ {}", name(a), name(b)));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{pointed_ring, rep_ring, so3_ring, wreath_ring, CharTable, WLabel};
    use crate::grouprep::FiniteGroup;
    use crate::scalar::rat;

    fn a4() -> FiniteRing {
        rep_ring(&CharTable::a4()).unwrap()
    }

    #[test]
    fn word_multiplicities() {
        let so3 = so3_ring();
        assert_eq!(mult_in_word(&so3, &0, &[1, 1]).unwrap(), 1);
        assert_eq!(mult_in_word(&so3, &0, &[1, 1, 1, 1]).unwrap(), 3);
        assert_eq!(mult_in_word(&so3, &0, &[]).unwrap(), 1);
    }

    #[test]
    fn a4_orbits_and_index() {
        let r = a4();
        let sub = Subcategory::finite([0, 1, 2]);
        assert_eq!(orbits(&r, &sub).unwrap(), vec![vec![0, 1, 2], vec![3]]);
        assert_eq!(sub_dim(&r, &sub, &[3, 3]).unwrap(), rat(3, 1));
        assert_eq!(sub_dim(&r, &Subcategory::finite(0..4), &[3, 3]).unwrap(), rat(9, 1));
        assert_eq!(sub_dim(&r, &sub, &[0]).unwrap(), rat(1, 1));
        assert_eq!(index(&r, &sub, 10).unwrap(), IndexOutcome::Finite(rat(4, 1)));
        assert_eq!(index(&r, &Subcategory::finite(0..4), 10).unwrap(), IndexOutcome::Finite(rat(1, 1)));
        assert_eq!(orbits(&r, &Subcategory::finite(0..4)).unwrap().len(), 1);
        assert!(index(&r, &Subcategory::finite([0, 1]), 10).is_err());
    }

    #[test]
    fn pointed_cosets() {
        let g = FiniteGroup::cyclic(4);
        let r = pointed_ring(&g);
        let sub = Subcategory::finite([0, 2]);
        assert_eq!(orbits(&r, &sub).unwrap(), vec![vec![0, 2], vec![1, 3]]);
        let z8 = pointed_ring(&FiniteGroup::cyclic(8));
        assert_eq!(index(&z8, &Subcategory::finite([0, 2, 4, 6]), 10).unwrap(), IndexOutcome::Finite(rat(2, 1)));
    }

    #[test]
    fn gradings() {
        let r = pointed_ring(&FiniteGroup::cyclic(4));
        let parity = Grading::new(FiniteGroup::cyclic(2), |a: &usize| a % 2);
        let k = grading_kernel(&r, parity, 10).unwrap();
        assert_eq!(k.members().unwrap(), &BTreeSet::from([0, 2]));
        assert_eq!(index(&r, &k, 10).unwrap(), IndexOutcome::Finite(rat(2, 1)));
        let trivial = Grading::new(FiniteGroup::cyclic(1), |_: &usize| 0);
        let k = grading_kernel(&r, trivial, 10).unwrap();
        assert_eq!(k.members().unwrap().len(), 4);
        let bad = Grading::new(FiniteGroup::cyclic(2), |a: &usize| usize::from(*a == 2));
        let err = grading_kernel(&r, bad, 10).unwrap_err();
        assert!(err.to_string().contains("grading violated"), "{err}");
    }

    #[test]
    fn lazy_index_outcomes() {
        let so3 = so3_ring();
        assert_eq!(index(&so3, &Subcategory::finite([0]), 50).unwrap(), IndexOutcome::Infinite);
        let unit_only = Subcategory::predicate("spin 0", |l: &u32| *l == 0);
        assert_eq!(index(&so3, &unit_only, 50).unwrap(), IndexOutcome::Undetermined { explored: 50 });
        // 1 ≺ 1 ⊗ 1, so spin parity is not a grading
        let parity = Grading::new(FiniteGroup::cyclic(2), |l: &u32| (*l % 2) as usize);
        assert!(grading_kernel(&so3, parity, 30).is_err());
        let trivial = Grading::new(FiniteGroup::cyclic(1), |_: &u32| 0);
        let k = grading_kernel(&so3, trivial, 30).unwrap();
        assert_eq!(index(&so3, &k, 50).unwrap(), IndexOutcome::Finite(rat(1, 1)));
        assert!(orbits(&so3, &Subcategory::finite([0])).is_err());
    }

    #[test]
    fn radicals() {
        let r = a4();
        assert_eq!(unit_radical(&r, 3).unwrap().members().unwrap().len(), 4);
        let z6 = pointed_ring(&FiniteGroup::cyclic(6));
        assert_eq!(unit_radical(&z6, 4).unwrap().members().unwrap(), &BTreeSet::from([0]));
    }

    #[test]
    fn subcategory_lists() {
        let subs = full_subcategories(&a4()).unwrap();
        assert_eq!(subs.len(), 3);
        let z4 = full_subcategories(&pointed_ring(&FiniteGroup::cyclic(4))).unwrap();
        assert_eq!(z4.len(), 3);
        let rz3 = restrict(&a4(), &Subcategory::finite([0, 1, 2])).unwrap();
        assert_eq!(rz3.len(), 3);
        assert_eq!(global_dim(&rz3).unwrap(), rat(3, 1));
    }

    #[test]
    fn wreath_breaks_frobenius_symmetry() {
        let r = wreath_ring(FiniteGroup::cyclic(2)).unwrap();
        let (sample, _) = explore(&r, 30).unwrap();
        let err = check_axioms_on(&r, &sample).unwrap_err().to_string();
        assert!(err.contains("duality") || err.contains("Frobenius"), "{err}");
        // the failure is genuine: v0 appears in v(+,g,+) ⊗ v(±,g,±) for all signs
        let a = r.v(1, 1, 1);
        for e in [1, -1] {
            for d in [1, -1] {
                assert_eq!(r.n(&a, &r.v(e, 1, d), &WLabel::V0).unwrap(), 1);
            }
        }
    }

    #[test]
    fn wreath_gradings() {
        let r = wreath_ring(FiniteGroup::cyclic(2)).unwrap();
        let parity = Grading::new(FiniteGroup::cyclic(2), |l: &WLabel| match l {
            WLabel::V0 => 0,
            WLabel::V1 => 1,
            WLabel::V { eps, word, delta } => (word.len() - 1 + usize::from(*eps < 0) + usize::from(*delta < 0)) % 2,
        });
        let err = grading_kernel(&r, parity, 20).unwrap_err().to_string();
        assert!(err.contains("grading violated"), "{err}");
        let gamma = Grading::new(FiniteGroup::cyclic(2), |l: &WLabel| match l {
            WLabel::V { word, .. } => word.iter().sum::<usize>() % 2,
            _ => 0,
        });
        let k = grading_kernel(&r, gamma, 20).unwrap();
        assert_eq!(index(&r, &k, 20).unwrap(), IndexOutcome::Finite(rat(2, 1)));
    }
}
