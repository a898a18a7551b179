//! Finite groups given by a multiplication table.

use crate::error::{invalid, Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    identity: usize,
    element_names: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    order: usize,
    mul: Vec<Vec<usize>>,
    #[serde(default)]
    names: Option<Vec<String>>,
    #[serde(default)]
    name: Option<String>,
}

impl FiniteGroup {
    /// Validates the table (closure, identity, inverses, associativity).
    pub fn new(name: impl Into<String>, mul: Vec<Vec<usize>>, element_names: Option<Vec<String>>) -> Result<Self> {
        let n = mul.len();
        if n == 0 {
            return invalid("empty multiplication table");
        }
        for (i, row) in mul.iter().enumerate() {
            if row.len() != n {
                return invalid(format!("row {i} has length {} instead of {n}", row.len()));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return invalid(format!("entry {x} in row {i} is out of range"));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or_else(|| Error::InvalidInput("no identity element".into()))?;
        let mut inv = vec![0; n];
        for g in 0..n {
            inv[g] = (0..n)
                .find(|&h| mul[g][h] == identity && mul[h][g] == identity)
                .ok_or_else(|| Error::InvalidInput(format!("element {g} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a][b];
                for c in 0..n {
                    if mul[ab][c] != mul[a][mul[b][c]] {
                        return invalid(format!("associativity fails on ({a}, {b}, {c})"));
                    }
                }
            }
        }
        let element_names = match element_names {
            Some(v) if v.len() == n => v,
            Some(v) => return invalid(format!("{} element names for {n} elements", v.len())),
            None => (0..n).map(|g| format!("g{g}")).collect(),
        };
        Ok(FiniteGroup { name: name.into(), mul, inv, identity, element_names })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let g: GroupJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if g.mul.len() != g.order {
            return invalid(format!("declared order {} but table has {} rows", g.order, g.mul.len()));
        }
        FiniteGroup::new(g.name.unwrap_or_else(|| "G".into()), g.mul, g.names)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GroupJson {
            order: self.order(),
            mul: self.mul.clone(),
            names: Some(self.element_names.clone()),
            name: Some(self.name.clone()),
        })
        .expect("serializable")
    }

    /// Z/n with elements 0..n written additively.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let names = (0..n).map(|k| k.to_string()).collect();
        FiniteGroup::new(format!("Z/{n}"), mul, Some(names)).expect("cyclic table is valid")
    }

    /// Builds a group from a faithful list of elements and an exact product.
    pub fn from_elements<T: Clone + PartialEq>(
        name: &str,
        elements: &[T],
        names: Vec<String>,
        op: impl Fn(&T, &T) -> T,
    ) -> Result<Self> {
        let n = elements.len();
        let mut mul = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let p = op(&elements[i], &elements[j]);
                mul[i][j] = elements
                    .iter()
                    .position(|x| *x == p)
                    .ok_or_else(|| Error::InvalidInput("element list not closed".into()))?;
            }
        }
        FiniteGroup::new(name, mul, Some(names))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn element_name(&self, g: usize) -> &str {
        &self.element_names[g]
    }

    pub fn element_by_name(&self, s: &str) -> Option<usize> {
        self.element_names.iter().position(|x| x == s)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn power(&self, g: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The subgroup generated by `gens`, as a sorted set.
    pub fn generated_subgroup(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    /// Conjugacy classes, each sorted, ordered by smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for g in self.elements() {
            if seen[g] {
                continue;
            }
            let class: BTreeSet<usize> = self
                .elements()
                .map(|h| self.mul(self.mul(h, g), self.inv(h)))
                .collect();
            for &x in &class {
                seen[x] = true;
            }
            out.push(class.into_iter().collect());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_basics() {
        let g = FiniteGroup::cyclic(4);
        assert_eq!(g.order(), 4);
        assert_eq!(g.inv(1), 3);
        assert_eq!(g.element_order(2), 2);
        assert_eq!(g.generated_subgroup(&[2]), BTreeSet::from([0, 2]));
        assert!(g.is_abelian());
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::new("bad", vec![vec![0, 1], vec![1, 1]], None).is_err());
        assert!(FiniteGroup::new("bad", vec![vec![0, 2], vec![1, 0]], None).is_err());
        // a Latin square that is not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::new("loop", t, None).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = FiniteGroup::cyclic(3);
        let back = FiniteGroup::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        assert!(FiniteGroup::from_json(r#"{"order": 2, "mul": [[0]]}"#).is_err());
    }
}
