//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::rational::{format_rational, int, parse_rational, Rational};
use crate::error::{Error, Result};

/// A polynomial stored low-to-high. Trailing zeros are always stripped, so
/// the zero polynomial has no coefficients and structural equality is
/// mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Rational, power: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        Self::new(coeffs)
    }

    /// Builds from small integer coefficients, low to high.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// `s·x + c`
    pub fn linear(s: Rational, c: Rational) -> Self {
        Self::new(vec![c, s])
    }

    /// Parses a comma-separated coefficient list, low to high (`"1,2,3/4"`).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::zero());
        }
        s.split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn derivative(&self, k: usize) -> Poly {
        if k == 0 {
            return self.clone();
        }
        if self.coeffs.len() <= k {
            return Poly::zero();
        }
        let coeffs = (k..self.coeffs.len())
            .map(|i| {
                // i·(i-1)···(i-k+1)
                let falling: BigInt = ((i - k + 1)..=i).map(BigInt::from).product();
                &self.coeffs[i] * Rational::from_integer(falling)
            })
            .collect();
        Poly::new(coeffs)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `q(x) = p(s·x + c)`, by Horner's scheme.
    pub fn affine_subst(&self, s: &Rational, c: &Rational) -> Poly {
        let inner = Poly::linear(s.clone(), c.clone());
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, a| {
            &(&acc * &inner) + &Poly::constant(a.clone())
        })
    }

    /// Re-expands around `a`: returns `q` with `q(x) = p(x + a)`, so that
    /// `q_k = p^{(k)}(a)/k!`. Repeated synthetic division by `(x - a)`.
    pub fn taylor_shift(&self, a: &Rational) -> Poly {
        if a.is_zero() {
            return self.clone();
        }
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        Poly::new(c)
    }

    /// Euclidean division. Errors only when `d` is zero.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead = d.leading_coeff();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for s in (0..quot.len()).rev() {
            let q = &rem[s + dd] / &lead;
            if q.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                let t = &q * di;
                rem[s + i] -= t;
            }
            quot[s] = q;
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Exact quotient `p / d`; a nonzero remainder is an error, never truncated.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| &acc * self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        super::rational::serialize_slice(&self.coeffs, s)
    }
}

/// Comma-separated coefficient form, low to high (`"1,3"`).
pub fn format_poly_csv(p: &Poly) -> String {
    p.coeffs
        .iter()
        .map(format_rational)
        .collect::<Vec<_>>()
        .join(",")
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::new(coeffs)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly { (&self).$m(rhs) }
        }
        impl<'a> $tr<Poly> for &'a Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn derivative_examples() {
        let p = Poly::from_ints(&[0, 2, 0, 1]);
        assert_eq!(p.derivative(1), Poly::from_ints(&[2, 0, 3]));
        assert_eq!(Poly::from_ints(&[7]).derivative(1), Poly::zero());
        assert_eq!(
            Poly::from_ints(&[0, 0, 0, 0, 1]).derivative(5),
            Poly::zero()
        );
        assert_eq!(
            Poly::from_ints(&[0, 0, 0, 0, 1]).derivative(4),
            Poly::from_ints(&[24])
        );
    }

    #[test]
    fn affine_subst_examples() {
        let x2 = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(
            x2.affine_subst(&int(1), &int(1)),
            Poly::from_ints(&[1, 2, 1])
        );
        let p = Poly::from_ints(&[3, -1, 4, 5]);
        assert_eq!(p.affine_subst(&int(1), &int(0)), p);
        // (2x-1)^2 - 1 = 4x^2 - 4x
        let q = Poly::from_ints(&[-1, 0, 1]);
        assert_eq!(
            q.affine_subst(&int(2), &int(-1)),
            Poly::from_ints(&[0, -4, 4])
        );
    }

    #[test]
    fn taylor_shift_matches_affine_subst() {
        let p = Poly::new(vec![rat(1, 3), int(-2), int(0), rat(5, 7), int(1)]);
        let a = rat(-3, 2);
        assert_eq!(p.taylor_shift(&a), p.affine_subst(&int(1), &a));
    }

    #[test]
    fn exact_division() {
        let p = Poly::from_ints(&[0, 3, 1]);
        assert_eq!(p.div_exact(&Poly::x()).unwrap(), Poly::from_ints(&[3, 1]));
        let q = Poly::from_ints(&[1, 0, 1]);
        assert_eq!(q.div_exact(&Poly::x()), Err(Error::NotDivisible));
        assert_eq!(q.div_exact(&Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn zero_is_canonical() {
        let z = Poly::new(vec![int(0), int(0)]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(z, Poly::zero());
        let p = Poly::from_ints(&[1, 1]);
        assert_eq!(&p - &p, Poly::zero());
    }

    #[test]
    fn parse_and_csv() {
        let p = Poly::parse("1, 2, 3/4, 0").unwrap();
        assert_eq!(p.degree(), Some(2));
        assert_eq!(format_poly_csv(&p), "1,2,3/4");
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"["1","2","3/4"]"#);
    }

    #[test]
    fn eval_horner() {
        let p = Poly::from_ints(&[1, 2, 3]);
        assert_eq!(p.eval(&int(2)), int(17));
        assert_eq!(p.eval(&rat(1, 2)), rat(11, 4));
    }
}
