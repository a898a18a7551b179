//! Fusion rings with finitely many labels, stored as a full table.

use super::chartable::CharTable;
use super::FusionRing;
use crate::error::{invalid, Error, Result};
use crate::grouprep::FiniteGroup;
use crate::scalar::{Cyclo, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteRing {
    name: String,
    names: Vec<String>,
    dims: Vec<Rational>,
    conj: Vec<usize>,
    unit: usize,
    /// table[a][b] = sorted list of (c, N(a,b,c)) with N > 0
    table: Vec<Vec<Vec<(usize, u64)>>>,
}

impl FiniteRing {
    /// Builds and validates a ring from N(a,b,c) given as a dense cube.
    pub fn new(
        name: impl Into<String>,
        names: Vec<String>,
        dims: Vec<Rational>,
        conj: Vec<usize>,
        n: impl Fn(usize, usize, usize) -> u64,
    ) -> Result<Self> {
        let k = names.len();
        if k == 0 || dims.len() != k || conj.len() != k {
            return invalid("names, dims and conj must have the same nonzero length");
        }
        let table: Vec<Vec<Vec<(usize, u64)>>> = (0..k)
            .map(|a| (0..k).map(|b| (0..k).filter_map(|c| Some((c, n(a, b, c))).filter(|x| x.1 > 0)).collect()).collect())
            .collect();
        let unit = (0..k)
            .find(|&u| (0..k).all(|a| table[u][a] == vec![(a, 1)] && table[a][u] == vec![(a, 1)]))
            .ok_or_else(|| Error::InvalidInput("no unit label".into()))?;
        let ring = FiniteRing { name: name.into(), names, dims, conj, unit, table };
        ring.validate()?;
        Ok(ring)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// N as a plain lookup without the label check of [`FusionRing::n`].
    pub fn coeff(&self, a: usize, b: usize, c: usize) -> u64 {
        self.table[a][b].iter().find(|(g, _)| *g == c).map_or(0, |x| x.1)
    }

    /// Checks every ring axiom; returns the first violation found.
    pub fn validate(&self) -> Result<()> {
        let k = self.len();
        let e = self.unit;
        for a in 0..k {
            let ca = self.conj[a];
            if ca >= k || self.conj[ca] != a {
                return invalid(format!("conj is not an involution at {}", self.names[a]));
            }
            if !self.dims[a].is_positive() {
                return invalid(format!("dim({}) is not positive", self.names[a]));
            }
            if self.dims[ca] != self.dims[a] {
                return invalid(format!("dim({}) differs from the dimension of its conjugate", self.names[a]));
            }
            for b in 0..k {
                let want = u64::from(b == ca);
                if self.coeff(a, b, e) != want {
                    return invalid(format!(
                        "N({}, {}, {}) = {} but duality requires {want}",
                        self.names[a],
                        self.names[b],
                        self.names[e],
                        self.coeff(a, b, e)
                    ));
                }
                let mut total = Rational::zero();
                for &(c, m) in &self.table[a][b] {
                    total += &self.dims[c] * Rational::from_integer(BigInt::from(m));
                    let n1 = self.coeff(a, b, c);
                    if n1 != self.coeff(self.conj[a], c, b) || n1 != self.coeff(c, self.conj[b], a) {
                        return invalid(format!(
                            "Frobenius symmetry fails on ({}, {}, {})",
                            self.names[a], self.names[b], self.names[c]
                        ));
                    }
                }
                if total != &self.dims[a] * &self.dims[b] {
                    return invalid(format!(
                        "dimension is not multiplicative on {} ⊗ {}",
                        self.names[a], self.names[b]
                    ));
                }
            }
        }
        // associativity, compared as multiplicity vectors
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    if self.triple(a, b, c, true) != self.triple(a, b, c, false) {
                        return invalid(format!(
                            "fusion is not associative on ({}, {}, {})",
                            self.names[a], self.names[b], self.names[c]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn triple(&self, a: usize, b: usize, c: usize, left: bool) -> Vec<u64> {
        let mut out = vec![0u64; self.len()];
        if left {
            for &(x, m) in &self.table[a][b] {
                for &(y, n) in &self.table[x][c] {
                    out[y] += m * n;
                }
            }
        } else {
            for &(x, m) in &self.table[b][c] {
                for &(y, n) in &self.table[a][x] {
                    out[y] += m * n;
                }
            }
        }
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: RingJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let ids: Vec<String> = doc.labels.iter().map(|l| id_string(&l.id)).collect();
        let index: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if index.len() != ids.len() {
            return invalid("duplicate label ids");
        }
        let look = |v: &Value| -> Result<usize> {
            let s = id_string(v);
            index.get(s.as_str()).copied().ok_or(Error::UnknownLabel(s))
        };
        let dims = doc.labels.iter().map(|l| parse_dim(&l.dim)).collect::<Result<Vec<_>>>()?;
        let names = doc.labels.iter().zip(&ids).map(|(l, id)| l.name.clone().unwrap_or_else(|| id.clone())).collect();
        let mut conj = vec![usize::MAX; ids.len()];
        for (k, v) in &doc.conj {
            conj[look(&Value::String(k.clone()))?] = look(v)?;
        }
        if conj.contains(&usize::MAX) {
            return invalid("conj must list every label");
        }
        let mut cube = BTreeMap::new();
        for row in &doc.fusion {
            if row.len() != 4 {
                return invalid("fusion rows must have the form [a, b, c, n]");
            }
            let n = row[3].as_u64().ok_or_else(|| Error::Parse("multiplicity must be a non-negative integer".into()))?;
            cube.insert((look(&row[0])?, look(&row[1])?, look(&row[2])?), n);
        }
        FiniteRing::new(doc.name.unwrap_or_else(|| "ring".into()), names, dims, conj, |a, b, c| {
            cube.get(&(a, b, c)).copied().unwrap_or(0)
        })
    }

    pub fn to_json(&self) -> String {
        let labels = (0..self.len())
            .map(|i| LabelJson { id: Value::from(i), name: Some(self.names[i].clone()), dim: Value::String(self.dims[i].to_string()) })
            .collect();
        let conj = (0..self.len()).map(|i| (i.to_string(), Value::from(self.conj[i]))).collect();
        let mut fusion = Vec::new();
        for a in 0..self.len() {
            for b in 0..self.len() {
                for &(c, n) in &self.table[a][b] {
                    fusion.push(vec![Value::from(a), Value::from(b), Value::from(c), Value::from(n)]);
                }
            }
        }
        serde_json::to_string_pretty(&RingJson { name: Some(self.name.clone()), labels, conj, fusion }).expect("serializable")
    }

    /// d(C) = Σ d(α)².
    pub fn global_dim(&self) -> Rational {
        self.dims.iter().map(|d| d * d).sum()
    }
}

#[derive(Serialize, Deserialize)]
struct LabelJson {
    id: Value,
    #[serde(default)]
    name: Option<String>,
    dim: Value,
}

#[derive(Serialize, Deserialize)]
struct RingJson {
    #[serde(default)]
    name: Option<String>,
    labels: Vec<LabelJson>,
    conj: BTreeMap<String, Value>,
    fusion: Vec<Vec<Value>>,
}

fn id_string(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn parse_dim(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) if n.is_u64() => Ok(Rational::from_integer(BigInt::from(n.as_u64().unwrap()))),
        Value::String(s) => Rational::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad dimension '{s}'"))),
        other => Err(Error::Parse(format!("dimension must be an integer or a rational string, got {other}"))),
    }
}

impl FusionRing for FiniteRing {
    type Label = usize;

    fn name(&self) -> String {
        self.name.clone()
    }
    fn unit(&self) -> usize {
        self.unit
    }
    fn conj(&self, a: &usize) -> usize {
        self.conj[*a]
    }
    fn dim(&self, a: &usize) -> Rational {
        self.dims[*a].clone()
    }
    fn fuse(&self, a: &usize, b: &usize) -> Result<Vec<(usize, u64)>> {
        for x in [a, b] {
            if *x >= self.len() {
                return Err(Error::UnknownLabel(x.to_string()));
            }
        }
        Ok(self.table[*a][*b].clone())
    }
    fn labels(&self) -> Option<Vec<usize>> {
        Some((0..self.len()).collect())
    }
    fn generators(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }
    fn label_name(&self, a: &usize) -> String {
        self.names.get(*a).cloned().unwrap_or_else(|| format!("#{a}"))
    }
    fn parse_label(&self, s: &str) -> Result<usize> {
        if let Some(i) = self.names.iter().position(|n| n == s) {
            return Ok(i);
        }
        match s.parse::<usize>() {
            Ok(i) if i < self.len() => Ok(i),
            _ => Err(Error::UnknownLabel(s.to_string())),
        }
    }
}

/// The fusion ring of G-graded vector spaces: labels are group elements.
pub fn pointed_ring(g: &FiniteGroup) -> FiniteRing {
    let names = g.elements().map(|x| g.element_name(x).to_string()).collect();
    let dims = vec![Rational::one(); g.order()];
    let conj = g.elements().map(|x| g.inv(x)).collect();
    FiniteRing::new(format!("Vec({})", g.name()), names, dims, conj, |a, b, c| u64::from(g.mul(a, b) == c))
        .expect("a group gives a valid fusion ring")
}

/// The representation ring: N(α,β,γ) = ⟨χ_α χ_β, χ_γ⟩.
pub fn rep_ring(t: &CharTable) -> Result<FiniteRing> {
    t.validate()?;
    let k = t.chars.len();
    let mut dims = Vec::with_capacity(k);
    for (i, row) in t.chars.iter().enumerate() {
        match row[0].as_rational() {
            Some(q) if q.is_integer() && q.is_positive() => dims.push(q),
            _ => return invalid(format!("χ_{}(e) is not a positive integer", t.names[i])),
        }
    }
    let conj = (0..k)
        .map(|i| {
            let c: Vec<Cyclo> = t.chars[i].iter().map(crate::scalar::Field::conj).collect();
            t.chars.iter().position(|r| *r == c).ok_or_else(|| Error::InvalidInput(format!("conjugate of {} missing", t.names[i])))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut cube = vec![0u64; k * k * k];
    for a in 0..k {
        for b in 0..k {
            let prod: Vec<Cyclo> = t.chars[a].iter().zip(&t.chars[b]).map(|(x, y)| x.clone() * y.clone()).collect();
            for c in 0..k {
                let m = t.inner(&prod, &t.chars[c]);
                let q = m
                    .as_rational()
                    .filter(|q| q.is_integer() && !q.is_negative())
                    .ok_or_else(|| Error::InvalidInput(format!("⟨χχ, χ⟩ = {m} is not a multiplicity")))?;
                cube[(a * k + b) * k + c] = q.to_integer().try_into().map_err(|_| Error::InvalidInput("multiplicity overflow".into()))?;
            }
        }
    }
    FiniteRing::new(format!("Rep(order {})", t.group_order()), t.names.clone(), dims, conj, |a, b, c| {
        cube[(a * k + b) * k + c]
    })
}
