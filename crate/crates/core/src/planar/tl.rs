//! Formal linear combinations of pair diagrams.

use super::diagram::{compose, PairDiagram};
use crate::error::{invalid, Result};
use crate::scalar::Field;
use std::collections::BTreeMap;

/// A morphism of the Temperley-Lieb category on `upper → lower` strands.
#[derive(Clone, Debug, PartialEq)]
pub struct TLVector<S> {
    upper: usize,
    lower: usize,
    terms: BTreeMap<PairDiagram, S>,
}

impl<S: Field> TLVector<S> {
    pub fn zero(upper: usize, lower: usize) -> Self {
        TLVector { upper, lower, terms: BTreeMap::new() }
    }

    pub fn basis(p: PairDiagram) -> Self {
        Self::term(p, S::one())
    }

    pub fn term(p: PairDiagram, c: S) -> Self {
        let mut v = Self::zero(p.upper(), p.lower());
        v.add_term(p, c);
        v
    }

    pub fn identity(n: usize) -> Self {
        Self::basis(PairDiagram::identity(n))
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PairDiagram, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &PairDiagram) -> S {
        self.terms.get(p).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, p: PairDiagram, c: S) {
        assert_eq!((p.upper(), p.lower()), (self.upper, self.lower), "diagram shape mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(p);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, o: &TLVector<S>) -> TLVector<S> {
        let mut out = self.clone();
        for (p, c) in &o.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &TLVector<S>) -> TLVector<S> {
        self.add(&o.scale(&(-S::one())))
    }

    pub fn scale(&self, x: &S) -> TLVector<S> {
        let mut out = Self::zero(self.upper, self.lower);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), c.clone() * x);
        }
        out
    }

    /// `self ∘ q` with every closed loop evaluated to `loop_value`.
    pub fn compose(&self, q: &TLVector<S>, loop_value: &S) -> Result<TLVector<S>> {
        if q.lower != self.upper {
            return invalid(format!("cannot compose {} → {} after {} → {}", self.upper, self.lower, q.upper, q.lower));
        }
        let mut out = Self::zero(q.upper, self.lower);
        let mut powers: Vec<S> = vec![S::one()];
        for (p1, c1) in &self.terms {
            for (p2, c2) in &q.terms {
                let (d, loops) = compose(p1, p2)?;
                while powers.len() <= loops {
                    let next = powers.last().unwrap().clone() * loop_value;
                    powers.push(next);
                }
                out.add_term(d, c1.clone() * c2 * &powers[loops]);
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, o: &TLVector<S>) -> TLVector<S> {
        let mut out = Self::zero(self.upper + o.upper, self.lower + o.lower);
        for (p1, c1) in &self.terms {
            for (p2, c2) in &o.terms {
                out.add_term(p1.tensor(p2), c1.clone() * c2);
            }
        }
        out
    }

    /// Reflection with conjugated coefficients.
    pub fn involute(&self) -> TLVector<S> {
        let mut out = Self::zero(self.lower, self.upper);
        for (p, c) in &self.terms {
            out.add_term(p.involute(), c.conj());
        }
        out
    }

    pub fn map_coeffs<T: Field>(&self, f: impl Fn(&S) -> T) -> TLVector<T> {
        let mut out = TLVector::zero(self.upper, self.lower);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), f(c));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Poly, RatFunc};

    #[test]
    fn cap_cup_gives_delta() {
        let d = RatFunc::var();
        let cap = TLVector::<RatFunc>::basis(PairDiagram::cap());
        let cup = TLVector::<RatFunc>::basis(PairDiagram::cup());
        let v = cap.compose(&cup, &d).unwrap();
        assert_eq!(v.coeff(&PairDiagram::empty()), d);
        assert_eq!(v.len(), 1);
    }

    #[test]
    fn e_squared_is_delta_e() {
        let d = RatFunc::poly(Poly::from_ints(&[0, 1]));
        let e = TLVector::<RatFunc>::basis(PairDiagram::e(2, 1));
        let e2 = e.compose(&e, &d).unwrap();
        assert_eq!(e2, e.scale(&d));
    }
}
