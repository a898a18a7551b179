//! Lazily generated fusion rings: SO(3) and free wreath products.

use super::FusionRing;
use crate::error::{invalid, Error, Result};
use crate::grouprep::FiniteGroup;
use crate::scalar::Rational;
use num_bigint::BigInt;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

/// Rep(SO(3)), labelled by spin l with dim 2l + 1.
#[derive(Clone, Debug, Default)]
pub struct So3Ring;

pub fn so3_ring() -> So3Ring {
    So3Ring
}

impl FusionRing for So3Ring {
    type Label = u32;

    fn name(&self) -> String {
        "Rep(SO(3))".into()
    }
    fn unit(&self) -> u32 {
        0
    }
    fn conj(&self, a: &u32) -> u32 {
        *a
    }
    fn dim(&self, a: &u32) -> Rational {
        Rational::from_integer(BigInt::from(2 * *a as u64 + 1))
    }
    fn fuse(&self, a: &u32, b: &u32) -> Result<Vec<(u32, u64)>> {
        Ok((a.abs_diff(*b)..=a + b).map(|m| (m, 1)).collect())
    }
    fn labels(&self) -> Option<Vec<u32>> {
        None
    }
    fn generators(&self) -> Vec<u32> {
        vec![1]
    }
    fn label_name(&self, a: &u32) -> String {
        a.to_string()
    }
    fn parse_label(&self, s: &str) -> Result<u32> {
        s.trim().parse().map_err(|_| Error::UnknownLabel(s.to_string()))
    }
}

/// Irreducibles of the free wreath product: v₀, v₁ and v(ε, w, δ) with w a
/// reduced word g₀ v₁ g₁ ⋯ v₁ gₙ, stored as its Γ letters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WLabel {
    V0,
    V1,
    V { eps: i8, word: Vec<usize>, delta: i8 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Letter {
    G(usize),
    V,
}

pub struct WreathRing {
    gamma: FiniteGroup,
    memo: Mutex<HashMap<(WLabel, WLabel), Vec<(WLabel, u64)>>>,
}

impl fmt::Debug for WreathRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WreathRing({})", self.gamma.name())
    }
}

/// The fusion ring of the free wreath product by Γ, following the three
/// displayed rules literally.
pub fn wreath_ring(gamma: FiniteGroup) -> Result<WreathRing> {
    if gamma.order() < 2 {
        return invalid("the wreath ring needs a nontrivial group");
    }
    Ok(WreathRing { gamma, memo: Mutex::new(HashMap::new()) })
}

impl WreathRing {
    pub fn gamma(&self) -> &FiniteGroup {
        &self.gamma
    }

    /// v(ε, g, δ) for a one-letter word.
    pub fn v(&self, eps: i8, g: usize, delta: i8) -> WLabel {
        WLabel::V { eps, word: vec![g], delta }
    }

    fn check(&self, a: &WLabel) -> Result<()> {
        if let WLabel::V { eps, word, delta } = a {
            let ok = [eps, delta].iter().all(|s| s.abs() == 1)
                && !word.is_empty()
                && word.iter().all(|&g| g < self.gamma.order() && g != self.gamma.identity());
            if !ok {
                return Err(Error::UnknownLabel(format!("{a:?}")));
            }
        }
        Ok(())
    }

    /// Reduces a word of Γ ∗ Z/2.
    fn reduce(&self, letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
        let mut stack: Vec<Letter> = Vec::new();
        for l in letters {
            match (stack.last().copied(), l) {
                (Some(Letter::V), Letter::V) => {
                    stack.pop();
                }
                (Some(Letter::G(x)), Letter::G(y)) => {
                    stack.pop();
                    let z = self.gamma.mul(x, y);
                    if z != self.gamma.identity() {
                        stack.push(Letter::G(z));
                    }
                }
                (_, l) => stack.push(l),
            }
        }
        stack
    }

    fn letters(word: &[usize]) -> Vec<Letter> {
        let mut out = Vec::with_capacity(2 * word.len());
        for (i, &g) in word.iter().enumerate() {
            if i > 0 {
                out.push(Letter::V);
            }
            out.push(Letter::G(g));
        }
        out
    }

    /// Turns a reduced word back into a label; a v₁ at either end is
    /// absorbed into the adjacent sign. `None` for the empty word.
    fn label_of(&self, mut w: Vec<Letter>, mut eps: i8, mut delta: i8) -> Result<Option<WLabel>> {
        if w.is_empty() {
            return Ok(None);
        }
        if w[0] == Letter::V {
            w.remove(0);
            eps = -eps;
        }
        if w.last() == Some(&Letter::V) {
            w.pop();
            delta = -delta;
        }
        let word: Vec<usize> = w
            .iter()
            .filter_map(|l| match l {
                Letter::G(g) => Some(*g),
                Letter::V => None,
            })
            .collect();
        if word.is_empty() {
            return Err(Error::Consistency("a product reduced to a bare v1".into()));
        }
        Ok(Some(WLabel::V { eps, word, delta }))
    }

    fn compute(&self, a: &WLabel, b: &WLabel) -> Result<Vec<(WLabel, u64)>> {
        use WLabel::*;
        Ok(match (a, b) {
            (V0, x) | (x, V0) => vec![(x.clone(), 1)],
            (V1, V1) => vec![(V0, 1)],
            (V1, V { eps, word, delta }) => vec![(V { eps: -eps, word: word.clone(), delta: *delta }, 1)],
            (V { eps, word, delta }, V1) => vec![(V { eps: *eps, word: word.clone(), delta: -delta }, 1)],
            (V { eps, word: g, .. }, V { word: h, delta: d2, .. }) => {
                let mut out = Vec::new();
                let mut long = Self::letters(g);
                long.push(Letter::V);
                long.extend(Self::letters(h));
                out.push((V { eps: *eps, word: long_word(&long), delta: *d2 }, 1));
                let short = self.reduce(Self::letters(g).into_iter().chain(Self::letters(h)));
                match self.label_of(short, *eps, *d2)? {
                    Some(l) => out.push((l, 1)),
                    None => {
                        out.push((V1, 1));
                        out.push((V0, 1));
                    }
                }
                out.sort();
                out
            }
        })
    }

    fn name_word(&self, word: &[usize]) -> String {
        word.iter().map(|&g| self.gamma.element_name(g).to_string()).collect::<Vec<_>>().join(" v1 ")
    }
}

fn long_word(letters: &[Letter]) -> Vec<usize> {
    letters
        .iter()
        .filter_map(|l| match l {
            Letter::G(g) => Some(*g),
            Letter::V => None,
        })
        .collect()
}

fn sign_char(s: i8) -> char {
    if s > 0 {
        '+'
    } else {
        '-'
    }
}

impl FusionRing for WreathRing {
    type Label = WLabel;

    fn name(&self) -> String {
        format!("wreath({})", self.gamma.name())
    }
    fn unit(&self) -> WLabel {
        WLabel::V0
    }
    fn conj(&self, a: &WLabel) -> WLabel {
        match a {
            WLabel::V { eps, word, delta } => WLabel::V {
                eps: *delta,
                word: word.iter().rev().map(|&g| self.gamma.inv(g)).collect(),
                delta: *eps,
            },
            other => other.clone(),
        }
    }
    fn dim(&self, a: &WLabel) -> Rational {
        Rational::from_integer(BigInt::from(if matches!(a, WLabel::V { .. }) { 2 } else { 1 }))
    }
    fn fuse(&self, a: &WLabel, b: &WLabel) -> Result<Vec<(WLabel, u64)>> {
        self.check(a)?;
        self.check(b)?;
        let key = (a.clone(), b.clone());
        if let Some(v) = self.memo.lock().expect("memo lock").get(&key) {
            return Ok(v.clone());
        }
        let v = self.compute(a, b)?;
        // merge repeated labels
        let mut merged: BTreeMap<WLabel, u64> = BTreeMap::new();
        for (l, n) in v {
            *merged.entry(l).or_default() += n;
        }
        let v: Vec<_> = merged.into_iter().collect();
        self.memo.lock().expect("memo lock").insert(key, v.clone());
        Ok(v)
    }
    fn labels(&self) -> Option<Vec<WLabel>> {
        None
    }
    fn generators(&self) -> Vec<WLabel> {
        let mut g = vec![WLabel::V1];
        g.extend(self.gamma.elements().filter(|&x| x != self.gamma.identity()).map(|x| self.v(1, x, 1)));
        g
    }
    fn label_name(&self, a: &WLabel) -> String {
        match a {
            WLabel::V0 => "v0".into(),
            WLabel::V1 => "v1".into(),
            WLabel::V { eps, word, delta } => {
                format!("v({},{},{})", sign_char(*eps), self.name_word(word), sign_char(*delta))
            }
        }
    }
    fn parse_label(&self, s: &str) -> Result<WLabel> {
        let s = s.trim();
        let unknown = || Error::UnknownLabel(s.to_string());
        match s {
            "v0" => return Ok(WLabel::V0),
            "v1" => return Ok(WLabel::V1),
            _ => {}
        }
        let inner = s.strip_prefix("v(").and_then(|r| r.strip_suffix(')')).ok_or_else(unknown)?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(unknown());
        }
        let sign = |p: &str| match p {
            "+" => Ok(1),
            "-" => Ok(-1),
            _ => Err(unknown()),
        };
        let mut word = Vec::new();
        for (i, tok) in parts[1].split_whitespace().enumerate() {
            if i % 2 == 1 {
                if tok != "v1" {
                    return Err(unknown());
                }
            } else {
                word.push(self.gamma.element_by_name(tok).ok_or_else(unknown)?);
            }
        }
        let l = WLabel::V { eps: sign(parts[0])?, word, delta: sign(parts[2])? };
        self.check(&l)?;
        Ok(l)
    }
}
