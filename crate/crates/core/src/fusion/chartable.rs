//! Character tables with exact cyclotomic entries.

use crate::error::{invalid, Error, Result};
use crate::scalar::{Cyclo, Field, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

/// Rows are irreducible characters, columns are conjugacy classes. The
/// first class must be the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct CharTable {
    pub root_of_unity: u32,
    pub names: Vec<String>,
    pub class_sizes: Vec<u64>,
    pub class_orders: Vec<u64>,
    pub chars: Vec<Vec<Cyclo>>,
}

#[derive(Serialize, Deserialize)]
struct ClassJson {
    size: u64,
    order: u64,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    root_of_unity: u32,
    #[serde(default)]
    names: Option<Vec<String>>,
    classes: Vec<ClassJson>,
    chars: Vec<Vec<String>>,
}

/// Parses sums like `-1/2+3/2*w`, `w^2`, `2w - 1` where `w = exp(2πi/n)`.
pub fn parse_cyclo_expr(text: &str, n: u32) -> Result<Cyclo> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    // split into signed terms, ignoring a sign right after '^'
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = s.as_bytes();
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    let mut acc: Vec<(i64, Rational)> = Vec::new();
    for t in terms {
        let (neg, body) = match t.as_bytes()[0] {
            b'-' => (true, &t[1..]),
            b'+' => (false, &t[1..]),
            _ => (false, t),
        };
        let bad = || Error::Parse(format!("cannot read term '{t}' in '{text}'"));
        let (coef_str, pow) = match body.find('w') {
            None => (body, None),
            Some(p) => {
                let rest = &body[p + 1..];
                let k = if rest.is_empty() {
                    1
                } else if let Some(e) = rest.strip_prefix('^') {
                    e.parse::<i64>().map_err(|_| bad())?
                } else {
                    return Err(bad());
                };
                (body[..p].trim_end_matches('*'), Some(k))
            }
        };
        let coef = if coef_str.is_empty() {
            if pow.is_none() {
                return Err(bad());
            }
            Rational::from_integer(BigInt::from(1))
        } else {
            Rational::from_str(coef_str).map_err(|_| bad())?
        };
        let coef = if neg { -coef } else { coef };
        acc.push((pow.unwrap_or(0), coef));
    }
    Ok(Cyclo::from_exponents(n, &acc))
}

impl CharTable {
    pub fn from_json(text: &str) -> Result<Self> {
        let t: TableJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if t.root_of_unity == 0 {
            return invalid("root_of_unity must be positive");
        }
        let chars = t
            .chars
            .iter()
            .map(|row| row.iter().map(|e| parse_cyclo_expr(e, t.root_of_unity)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let names = t.names.unwrap_or_else(|| (0..chars.len()).map(|i| format!("chi{i}")).collect());
        let table = CharTable {
            root_of_unity: t.root_of_unity,
            names,
            class_sizes: t.classes.iter().map(|c| c.size).collect(),
            class_orders: t.classes.iter().map(|c| c.order).collect(),
            chars,
        };
        table.check_shape()?;
        Ok(table)
    }

    pub fn to_json(&self) -> String {
        let t = TableJson {
            root_of_unity: self.root_of_unity,
            names: Some(self.names.clone()),
            classes: self
                .class_sizes
                .iter()
                .zip(&self.class_orders)
                .map(|(&size, &order)| ClassJson { size, order })
                .collect(),
            chars: self.chars.iter().map(|r| r.iter().map(|z| z.to_string_in_w(self.root_of_unity)).collect()).collect(),
        };
        serde_json::to_string_pretty(&t).expect("serializable")
    }

    pub fn group_order(&self) -> u64 {
        self.class_sizes.iter().sum()
    }

    fn check_shape(&self) -> Result<()> {
        let k = self.class_sizes.len();
        if k == 0 || self.class_orders.len() != k {
            return invalid("character table needs at least one class");
        }
        if self.chars.len() != k {
            return invalid(format!("{} characters for {k} classes", self.chars.len()));
        }
        if self.names.len() != k {
            return invalid(format!("{} names for {k} characters", self.names.len()));
        }
        if let Some(i) = self.chars.iter().position(|r| r.len() != k) {
            return invalid(format!("character {i} has the wrong number of entries"));
        }
        if self.class_sizes[0] != 1 || self.class_orders[0] != 1 {
            return invalid("the first class must be the identity");
        }
        Ok(())
    }

    /// ⟨χ, ψ⟩ = (1/|G|) Σ_C |C| χ(C) conj(ψ(C)).
    pub fn inner(&self, a: &[Cyclo], b: &[Cyclo]) -> Cyclo {
        let mut s = Cyclo::zero();
        for ((x, y), &size) in a.iter().zip(b).zip(&self.class_sizes) {
            s = s + x.clone() * y.conj() * Cyclo::int(size as i64);
        }
        s * Cyclo::rational(Rational::new(BigInt::from(1), BigInt::from(self.group_order())))
    }

    /// Checks the shape and the orthonormality relations.
    pub fn validate(&self) -> Result<()> {
        self.check_shape()?;
        let g = self.group_order();
        for (i, &o) in self.class_orders.iter().enumerate() {
            if o == 0 || g % o != 0 {
                return invalid(format!("class {i} has order {o}, which does not divide {g}"));
            }
        }
        for i in 0..self.chars.len() {
            for j in 0..self.chars.len() {
                let want = if i == j { Cyclo::one() } else { Cyclo::zero() };
                if self.inner(&self.chars[i], &self.chars[j]) != want {
                    return invalid(format!(
                        "characters {} and {} are not orthonormal",
                        self.names[i], self.names[j]
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn a4() -> Self {
        let text = r#"{
            "root_of_unity": 3,
            "names": ["eps", "w1", "w2", "pi"],
            "classes": [{"size":1,"order":1},{"size":3,"order":2},{"size":4,"order":3},{"size":4,"order":3}],
            "chars": [["1","1","1","1"],["1","1","w","w^2"],["1","1","w^2","w"],["3","-1","0","0"]]
        }"#;
        CharTable::from_json(text).expect("built-in table")
    }

    pub fn s3() -> Self {
        let text = r#"{
            "root_of_unity": 1,
            "names": ["eps", "sgn", "rho"],
            "classes": [{"size":1,"order":1},{"size":3,"order":2},{"size":2,"order":3}],
            "chars": [["1","1","1"],["1","-1","1"],["2","0","-1"]]
        }"#;
        CharTable::from_json(text).expect("built-in table")
    }

    /// Z/n with χ_j(k) = w^{jk}; class k is the element k.
    pub fn cyclic(n: u32) -> Self {
        let n64 = n as u64;
        CharTable {
            root_of_unity: n,
            names: (0..n).map(|j| format!("chi{j}")).collect(),
            class_sizes: vec![1; n as usize],
            class_orders: (0..n64).map(|k| n64 / k.gcd(&n64)).collect(),
            chars: (0..n as i64)
                .map(|j| (0..n as i64).map(|k| Cyclo::root_of_unity(n, j * k)).collect())
                .collect(),
        }
    }
}

impl Cyclo {
    /// Writes the number in the `a+b*w^k` syntax read by [`parse_cyclo_expr`].
    pub fn to_string_in_w(&self, n: u32) -> String {
        let coeffs = self.coefficients_over(n).expect("entry lies in the declared field");
        let mut parts = Vec::new();
        for (k, c) in coeffs.into_iter().enumerate() {
            if c == Rational::from_integer(BigInt::from(0)) {
                continue;
            }
            parts.push(match k {
                0 => format!("{c}"),
                1 => format!("{c}*w"),
                _ => format!("{c}*w^{k}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+").replace("+-", "-")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn expression_parser() {
        let w = Cyclo::root_of_unity(3, 1);
        assert_eq!(parse_cyclo_expr("w", 3).unwrap(), w);
        assert_eq!(parse_cyclo_expr("w^2", 3).unwrap(), w.clone() * w.clone());
        assert_eq!(parse_cyclo_expr("-1-w", 3).unwrap(), w.clone() * w.clone());
        let half = Cyclo::rational(rat(1, 2));
        assert_eq!(
            parse_cyclo_expr("-1/2 + 3/2*w", 3).unwrap(),
            -half.clone() + Cyclo::rational(rat(3, 2)) * w.clone()
        );
        assert_eq!(parse_cyclo_expr("2w", 3).unwrap(), Cyclo::int(2) * w.clone());
        assert_eq!(parse_cyclo_expr("w^-1", 3).unwrap(), w.clone() * w);
        assert!(parse_cyclo_expr("", 3).is_err());
        assert!(parse_cyclo_expr("1+x", 3).is_err());
    }

    #[test]
    fn builtin_tables_are_orthonormal() {
        CharTable::a4().validate().unwrap();
        CharTable::s3().validate().unwrap();
        for n in 1..=8 {
            CharTable::cyclic(n).validate().unwrap();
        }
    }

    #[test]
    fn broken_table_is_rejected() {
        let text = r#"{"root_of_unity":1,"classes":[{"size":1,"order":1},{"size":1,"order":2}],
                       "chars":[["1","1"],["1","1"]]}"#;
        let t = CharTable::from_json(text).unwrap();
        assert!(t.validate().is_err());
    }

    #[test]
    fn json_round_trip() {
        let t = CharTable::a4();
        assert_eq!(CharTable::from_json(&t.to_json()).unwrap(), t);
    }
}
