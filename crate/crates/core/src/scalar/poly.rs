//! Univariate polynomials and rational functions over Q.

use super::{rat_to_f64, rational_sqrt, Field, Rational};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Coefficients lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
    }

    pub fn constant(q: Rational) -> Self {
        Poly::new(vec![q])
    }

    pub fn x() -> Self {
        Poly::from_ints(&[0, 1])
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly::from_ints(&[1])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn lead(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, q: &Rational) -> Poly {
        Poly::new(self.0.iter().map(|x| x * q).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.0.iter().rev() {
            acc = acc * x + rat_to_f64(c);
        }
        acc
    }

    /// Substitutes x ↦ x^2.
    pub fn compose_square(&self) -> Poly {
        let mut c = vec![Rational::zero(); 2 * self.0.len()];
        for (i, a) in self.0.iter().enumerate() {
            c[2 * i] = a.clone();
        }
        Poly::new(c)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.0.len() - 1;
        if self.0.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut r = self.0.clone();
        let mut q = vec![Rational::zero(); r.len() - dd];
        let lc = d.lead().recip();
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lc;
            if !c.is_zero() {
                for (i, di) in d.0.iter().enumerate() {
                    r[k + i] -= &c * di;
                }
            }
            q[k] = c;
        }
        (Poly::new(q), Poly::new(r))
    }

    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Exact square root when the polynomial is the square of one over Q.
    pub fn sqrt(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let n = self.0.len() - 1;
        if n % 2 == 1 {
            return None;
        }
        let m = n / 2;
        let lead = rational_sqrt(&self.lead())?;
        // determine coefficients of the root from the top down
        let mut s = vec![Rational::zero(); m + 1];
        s[m] = lead.clone();
        let two_lead = &lead + &lead;
        for k in (0..m).rev() {
            // coefficient of x^{m+k} in s^2 involves 2 s_m s_k + Σ_{i+j=m+k, i,j>k} s_i s_j
            let mut acc = self.0[m + k].clone();
            for i in (k + 1)..=m {
                let j = m + k - i;
                if j > k && j <= m {
                    acc -= &s[i] * &s[j];
                }
            }
            s[k] = acc / &two_lead;
        }
        let root = Poly::new(s);
        if &(&root * &root) == self {
            Some(root)
        } else {
            None
        }
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, a) in self.0.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                out.push_str(&mag.to_string());
                if k > 0 {
                    out.push('*');
                }
            }
            match k {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{k}")),
            }
        }
        out
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let mut c = vec![Rational::zero(); n];
        for (i, a) in self.0.iter().enumerate() {
            c[i] += a;
        }
        for (i, a) in o.0.iter().enumerate() {
            c[i] += a;
        }
        Poly::new(c)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly(self.0.iter().map(|x| -x).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("x"))
    }
}

/// A quotient of polynomials in lowest terms with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        let g = Poly::gcd(&num, &den);
        let (mut n, _) = num.div_rem(&g);
        let (mut d, _) = den.div_rem(&g);
        let lc = d.lead().recip();
        n = n.scale(&lc);
        d = d.scale(&lc);
        RatFunc { num: n, den: d }
    }

    pub fn poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        RatFunc::poly(Poly::x())
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0)
    }

    /// Evaluates at a rational point; `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.den == Poly::one() {
            self.num.fmt_var(var)
        } else {
            format!("({})/({})", self.num.fmt_var(var), self.den.fmt_var(var))
        }
    }
}

impl Add<&RatFunc> for RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den);
        }
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub<&RatFunc> for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o.clone())
    }
}

impl Mul<&RatFunc> for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.num.is_zero() || o.num.is_zero() {
            return <RatFunc as Field>::zero();
        }
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        self + &o
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: RatFunc) -> RatFunc {
        self - &o
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: RatFunc) -> RatFunc {
        self * &o
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, o: RatFunc) -> RatFunc {
        self * &o.inv().expect("division by the zero rational function")
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den }
    }
}

impl Field for RatFunc {
    const EXACT: bool = true;

    fn zero() -> Self {
        RatFunc::poly(Poly::zero())
    }
    fn one() -> Self {
        RatFunc::poly(Poly::one())
    }
    fn from_rational(q: &Rational) -> Self {
        RatFunc::poly(Poly::constant(q.clone()))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn conj(&self) -> Self {
        // the indeterminate is real
        self.clone()
    }
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(RatFunc::new(self.den.clone(), self.num.clone()))
        }
    }
    fn sqrt(&self) -> Option<Self> {
        Some(RatFunc::new(self.num.sqrt()?, self.den.sqrt()?))
    }
    fn to_c64(&self) -> Complex64 {
        if self.is_constant() {
            Complex64::new(rat_to_f64(&(self.num.lead() / self.den.lead())), 0.0)
        } else {
            Complex64::new(f64::NAN, 0.0)
        }
    }
    fn magnitude(&self) -> f64 {
        if self.num.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn division_and_gcd() {
        let a = Poly::from_ints(&[-1, 0, 1]); // x^2 - 1
        let b = Poly::from_ints(&[1, 1]); // x + 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, Poly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(Poly::gcd(&a, &Poly::from_ints(&[-1, 1])), Poly::from_ints(&[-1, 1]));
    }

    #[test]
    fn rational_functions_reduce() {
        let x = RatFunc::var();
        let one = RatFunc::one();
        let f = (x.clone() * &x - &one) / (x.clone() - &one);
        assert_eq!(f, x.clone() + &one);
        assert!((f.clone() - &f).is_zero());
        assert_eq!(f.eval(&rat(2, 1)), Some(rat(3, 1)));
    }

    #[test]
    fn square_roots() {
        let x = RatFunc::var();
        let sq = x.clone() * &x;
        assert_eq!(sq.sqrt(), Some(x.clone()));
        let p = Poly::from_ints(&[1, 2, 1]);
        assert_eq!(p.sqrt(), Some(Poly::from_ints(&[1, 1])));
        assert!(Poly::from_ints(&[1, 0, 2]).sqrt().is_none());
        assert!(x.sqrt().is_none());
    }

    #[test]
    fn display() {
        let p = Poly::from_ints(&[-1, 0, 1]);
        assert_eq!(p.fmt_var("d"), "d^2 - 1");
        let f = RatFunc::new(Poly::one(), Poly::x());
        assert_eq!(f.fmt_var("d"), "(1)/(d)");
    }
}
