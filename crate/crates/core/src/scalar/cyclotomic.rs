//! Elements of cyclotomic fields Q(ζ_n).
//!
//! An element stores its conductor `n` and coefficients in the power basis
//! 1, ζ, …, ζ^{φ(n)-1}. Rationals use `n = 1`. Binary operations on elements
//! of different conductors embed both into the field of the lcm.

use super::{rat_to_f64, rational_sqrt, Field, Rational};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

/// Integer coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = divide_monic(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

fn divide_monic(p: &[i64], q: &[i64]) -> Vec<i64> {
    let mut r = p.to_vec();
    let dq = q.len() - 1;
    let dp = p.len() - 1;
    let mut out = vec![0i64; dp - dq + 1];
    for k in (0..=dp - dq).rev() {
        let c = r[k + dq];
        out[k] = c;
        for (i, qi) in q.iter().enumerate() {
            r[k + i] -= c * qi;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    out
}

struct Table {
    degree: usize,
    /// `powers[k]` expresses ζ^k in the power basis, k = 0..n-1.
    powers: Vec<Vec<i64>>,
}

fn table(n: u32) -> Arc<Table> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Table>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return t.clone();
    }
    let phi = cyclotomic_polynomial(n);
    let degree = phi.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; degree];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by ζ and reduce with the monic Φ_n
        let top = cur[degree - 1];
        let mut next = vec![0i64; degree];
        next[1..degree].copy_from_slice(&cur[..(degree - 1)]);
        for i in 0..degree {
            next[i] -= top * phi[i];
        }
        cur = next;
    }
    let t = Arc::new(Table { degree, powers });
    cache.lock().unwrap().insert(n, t.clone());
    t
}

#[derive(Clone, Debug)]
pub struct Cyclo {
    n: u32,
    c: Vec<Rational>,
}

impl Cyclo {
    pub fn rational(q: Rational) -> Self {
        Cyclo { n: 1, c: vec![q] }
    }

    pub fn int(k: i64) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(k)))
    }

    /// ζ_n^k.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1);
        let e = k.rem_euclid(n as i64) as usize;
        let t = table(n);
        let c = t.powers[e]
            .iter()
            .map(|&x| Rational::from_integer(BigInt::from(x)))
            .collect();
        Cyclo { n, c }.simplified()
    }

    /// Builds Σ coeffs[k]·ζ_n^k for arbitrary exponents k.
    pub fn from_exponents(n: u32, coeffs: &[(i64, Rational)]) -> Self {
        let t = table(n);
        let mut c = vec![Rational::zero(); t.degree];
        for (k, a) in coeffs {
            let e = k.rem_euclid(n as i64) as usize;
            for (i, &x) in t.powers[e].iter().enumerate() {
                if x != 0 {
                    c[i] += a * Rational::from_integer(BigInt::from(x));
                }
            }
        }
        Cyclo { n, c }.simplified()
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Returns the rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    /// Coordinates in the power basis 1, ζ_m, …, ζ_m^{φ(m)−1}, when the
    /// number lies in Q(ζ_m).
    pub fn coefficients_over(&self, m: u32) -> Option<Vec<Rational>> {
        if m == 0 || m % self.n != 0 {
            return None;
        }
        Some(self.lift(m))
    }

    fn simplified(mut self) -> Self {
        if self.n > 1 && self.c[1..].iter().all(|x| x.is_zero()) {
            self.c.truncate(1);
            self.n = 1;
        }
        self
    }

    fn lift(&self, m: u32) -> Vec<Rational> {
        if self.n == m {
            return self.c.clone();
        }
        let step = (m / self.n) as i64;
        let terms: Vec<(i64, Rational)> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(k, a)| (k as i64 * step, a.clone()))
            .collect();
        let t = table(m);
        let mut c = vec![Rational::zero(); t.degree];
        for (k, a) in terms {
            for (i, &x) in t.powers[k as usize % m as usize].iter().enumerate() {
                if x != 0 {
                    c[i] += &a * Rational::from_integer(BigInt::from(x));
                }
            }
        }
        c
    }

    fn common(&self, o: &Cyclo) -> (u32, Vec<Rational>, Vec<Rational>) {
        let m = self.n.lcm(&o.n);
        (m, self.lift(m), o.lift(m))
    }

    fn mul_ref(&self, o: &Cyclo) -> Cyclo {
        if self.n == 1 {
            return Cyclo { n: o.n, c: o.c.iter().map(|x| x * &self.c[0]).collect() }.simplified();
        }
        if o.n == 1 {
            return Cyclo { n: self.n, c: self.c.iter().map(|x| x * &o.c[0]).collect() }.simplified();
        }
        let (m, a, b) = self.common(o);
        let t = table(m);
        let mut raw = vec![Rational::zero(); m as usize];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                raw[(i + j) % m as usize] += x * y;
            }
        }
        let mut c = vec![Rational::zero(); t.degree];
        for (k, v) in raw.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            for (i, &x) in t.powers[k].iter().enumerate() {
                if x != 0 {
                    c[i] += v * Rational::from_integer(BigInt::from(x));
                }
            }
        }
        Cyclo { n: m, c }.simplified()
    }

    fn inverse(&self) -> Option<Cyclo> {
        if self.is_zero_elem() {
            return None;
        }
        if self.n == 1 {
            return Some(Cyclo::rational(self.c[0].recip()));
        }
        // solve (multiplication by self) x = 1 over Q
        let deg = self.c.len();
        let mut cols = Vec::with_capacity(deg);
        for k in 0..deg {
            let col = self.mul_ref(&Cyclo::root_of_unity(self.n, k as i64)).lift(self.n);
            cols.push(col);
        }
        let mut aug: Vec<Vec<Rational>> = (0..deg)
            .map(|r| {
                let mut row: Vec<Rational> = (0..deg).map(|c| cols[c][r].clone()).collect();
                row.push(if r == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..deg {
            let piv = (col..deg).find(|&r| !aug[r][col].is_zero())?;
            aug.swap(col, piv);
            let p = aug[col][col].recip();
            for x in aug[col].iter_mut() {
                *x *= &p;
            }
            for r in 0..deg {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in 0..=deg {
                        let v = &aug[col][c] * &f;
                        aug[r][c] -= v;
                    }
                }
            }
        }
        Some(Cyclo { n: self.n, c: aug.into_iter().map(|r| r[deg].clone()).collect() }.simplified())
    }

    fn is_zero_elem(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, o: &Self) -> bool {
        let (_, a, b) = self.common(o);
        a == b
    }
}

impl Add<&Cyclo> for Cyclo {
    type Output = Cyclo;
    fn add(self, o: &Cyclo) -> Cyclo {
        let (m, a, b) = self.common(o);
        Cyclo { n: m, c: a.into_iter().zip(b).map(|(x, y)| x + y).collect() }.simplified()
    }
}

impl Sub<&Cyclo> for Cyclo {
    type Output = Cyclo;
    fn sub(self, o: &Cyclo) -> Cyclo {
        let (m, a, b) = self.common(o);
        Cyclo { n: m, c: a.into_iter().zip(b).map(|(x, y)| x - y).collect() }.simplified()
    }
}

impl Mul<&Cyclo> for Cyclo {
    type Output = Cyclo;
    fn mul(self, o: &Cyclo) -> Cyclo {
        self.mul_ref(o)
    }
}

impl Add for Cyclo {
    type Output = Cyclo;
    fn add(self, o: Cyclo) -> Cyclo {
        self + &o
    }
}

impl Sub for Cyclo {
    type Output = Cyclo;
    fn sub(self, o: Cyclo) -> Cyclo {
        self - &o
    }
}

impl Mul for Cyclo {
    type Output = Cyclo;
    fn mul(self, o: Cyclo) -> Cyclo {
        self.mul_ref(&o)
    }
}

impl Div for Cyclo {
    type Output = Cyclo;
    fn div(self, o: Cyclo) -> Cyclo {
        self.mul_ref(&o.inverse().expect("division by zero in Q(ζ)"))
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { n: self.n, c: self.c.into_iter().map(|x| -x).collect() }
    }
}

impl Field for Cyclo {
    const EXACT: bool = true;

    fn zero() -> Self {
        Cyclo::int(0)
    }
    fn one() -> Self {
        Cyclo::int(1)
    }
    fn from_rational(q: &Rational) -> Self {
        Cyclo::rational(q.clone())
    }
    fn is_zero(&self) -> bool {
        self.is_zero_elem()
    }
    fn conj(&self) -> Self {
        if self.n == 1 {
            return self.clone();
        }
        let terms: Vec<(i64, Rational)> = self
            .c
            .iter()
            .enumerate()
            .map(|(k, a)| (-(k as i64), a.clone()))
            .collect();
        Cyclo::from_exponents(self.n, &terms)
    }
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }
    fn sqrt(&self) -> Option<Self> {
        self.as_rational().and_then(|q| rational_sqrt(&q)).map(Cyclo::rational)
    }
    fn to_c64(&self) -> Complex64 {
        let mut z = Complex64::new(0.0, 0.0);
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / self.n as f64);
        let mut p = Complex64::new(1.0, 0.0);
        for a in &self.c {
            z += p * rat_to_f64(a);
            p *= w;
        }
        z
    }
    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            return write!(f, "{}", self.c[0]);
        }
        let mut first = true;
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let neg = a < &Rational::zero();
            let mag = if neg { -a.clone() } else { a.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "z{}", self.n)?;
                    } else {
                        write!(f, "z{}^{k}", self.n)?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
    }

    #[test]
    fn roots_of_unity_multiply() {
        let w = Cyclo::root_of_unity(3, 1);
        let w2 = w.clone() * &w;
        assert_eq!(w2, Cyclo::root_of_unity(3, 2));
        assert_eq!(w2.clone() * &w, Cyclo::one());
        // 1 + ω + ω² = 0
        assert!((Cyclo::one() + &w + &w2).is_zero());
        assert_eq!(w.conj(), w2);
    }

    #[test]
    fn mixed_conductors() {
        let i = Cyclo::root_of_unity(4, 1);
        let w = Cyclo::root_of_unity(3, 1);
        let p = i.clone() * &w;
        assert_eq!(p.conductor(), 12);
        let back = p * &w.conj();
        assert_eq!(back, i);
        assert_eq!(Cyclo::root_of_unity(8, 2), Cyclo::root_of_unity(4, 1));
    }

    #[test]
    fn inverse_and_sqrt() {
        let x = Cyclo::int(2) + &Cyclo::root_of_unity(5, 1);
        let y = x.inv().unwrap();
        assert!((x * &y).is_one());
        assert_eq!(Cyclo::rational(rat(9, 4)).sqrt(), Some(Cyclo::rational(rat(3, 2))));
        assert!(Cyclo::int(2).sqrt().is_none());
    }

    #[test]
    fn numeric_value() {
        let w = Cyclo::root_of_unity(6, 1);
        let z = w.to_c64();
        assert!((z.re - 0.5).abs() < 1e-14);
        assert!((z.im - 3f64.sqrt() / 2.0).abs() < 1e-14);
    }
}
