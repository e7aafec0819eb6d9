use std::fmt;

use num_traits::Zero;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::matrix::RatMatrix;
use super::poly::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// An N×N matrix of polynomials. Equivalently a polynomial with matrix
/// coefficients; see [`MatPoly::coefficient`] and [`MatPoly::from_coefficients`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatPoly {
    size: usize,
    entries: Vec<Poly>,
}

impl MatPoly {
    pub fn zero(size: usize) -> Self {
        MatPoly {
            size,
            entries: vec![Poly::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, |i, j| if i == j { Poly::one() } else { Poly::zero() })
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                entries.push(f(i, j));
            }
        }
        MatPoly { size, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(Error::SizeMismatch(
                "matrix polynomial must be square".into(),
            ));
        }
        Ok(MatPoly {
            size,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn constant(m: &RatMatrix) -> Self {
        assert!(m.is_square(), "constant matrix polynomial must be square");
        Self::from_fn(m.rows(), |i, j| Poly::constant(m.get(i, j).clone()))
    }

    /// Builds `Σ_k coeffs[k]·x^k`.
    pub fn from_coefficients(coeffs: &[RatMatrix]) -> Result<Self> {
        let size = coeffs.first().map_or(0, RatMatrix::rows);
        if coeffs.iter().any(|c| c.rows() != size || c.cols() != size) {
            return Err(Error::SizeMismatch("matrix coefficients".into()));
        }
        Ok(Self::from_fn(size, |i, j| {
            Poly::new(coeffs.iter().map(|c| c.get(i, j).clone()).collect())
        }))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.size + j] = p;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Degree of the matrix-coefficient view (max entry degree).
    pub fn degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(Poly::degree).max()
    }

    /// Matrix coefficient of `x^k`.
    pub fn coefficient(&self, k: usize) -> RatMatrix {
        RatMatrix::from_fn(self.size, self.size, |i, j| self.get(i, j).coeff(k))
    }

    pub fn coefficients(&self) -> Vec<RatMatrix> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|k| self.coefficient(k)).collect(),
        }
    }

    pub fn leading_coefficient(&self) -> RatMatrix {
        self.coefficient(self.degree().unwrap_or(0))
    }

    fn check(&self, other: &MatPoly) -> Result<()> {
        if self.size != other.size {
            return Err(Error::SizeMismatch(format!(
                "{}x{} vs {}x{}",
                self.size, self.size, other.size, other.size
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MatPoly) -> Result<MatPoly> {
        self.check(other)?;
        Ok(MatPoly {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &MatPoly) -> Result<MatPoly> {
        self.check(other)?;
        Ok(MatPoly {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &MatPoly) -> Result<MatPoly> {
        self.check(other)?;
        let n = self.size;
        Ok(Self::from_fn(n, |i, j| {
            (0..n)
                .map(|k| (self.get(i, k), other.get(k, j)))
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .map(|(a, b)| a * b)
                .sum()
        }))
    }

    /// Multiplies every entry by the scalar polynomial `p`.
    pub fn mul_poly(&self, p: &Poly) -> MatPoly {
        MatPoly {
            size: self.size,
            entries: self.entries.iter().map(|e| e * p).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> MatPoly {
        MatPoly {
            size: self.size,
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
        }
    }

    /// `m · self` for a constant matrix `m`.
    pub fn left_mul(&self, m: &RatMatrix) -> Result<MatPoly> {
        if m.rows() != self.size || m.cols() != self.size {
            return Err(Error::SizeMismatch("constant left factor".into()));
        }
        let n = self.size;
        Ok(Self::from_fn(n, |i, j| {
            (0..n)
                .filter(|&k| !m.get(i, k).is_zero())
                .map(|k| self.get(k, j).scale(m.get(i, k)))
                .sum()
        }))
    }

    pub fn derivative(&self, k: usize) -> MatPoly {
        MatPoly {
            size: self.size,
            entries: self.entries.iter().map(|e| e.derivative(k)).collect(),
        }
    }

    pub fn eval(&self, x: &Rational) -> RatMatrix {
        RatMatrix::from_fn(self.size, self.size, |i, j| self.get(i, j).eval(x))
    }

    pub fn transpose(&self) -> MatPoly {
        Self::from_fn(self.size, |i, j| self.get(j, i).clone())
    }

    pub fn rows(&self) -> Vec<Vec<Poly>> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }
}

impl fmt::Display for MatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.size {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.size {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl Serialize for MatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.size))?;
        for row in self.rows() {
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

/// True when every entry of `m` is zero.
pub fn is_zero_matrix(m: &RatMatrix) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| m.get(i, j).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn sample() -> MatPoly {
        MatPoly::from_rows(vec![
            vec![Poly::from_ints(&[1, 2]), Poly::from_ints(&[0, 0, 3])],
            vec![Poly::from_ints(&[-1]), Poly::from_ints(&[4, 0, 1])],
        ])
        .unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let p = sample();
        assert_eq!(MatPoly::identity(2).try_mul(&p).unwrap(), p);
        assert_eq!(p.try_mul(&MatPoly::identity(2)).unwrap(), p);
    }

    #[test]
    fn constant_derivative_vanishes() {
        let c = MatPoly::constant(&RatMatrix::from_ints(&[&[1, 2], &[3, 4]]));
        assert!(c.derivative(1).is_zero());
    }

    #[test]
    fn coefficient_views_round_trip() {
        let p = sample();
        assert_eq!(p.degree(), Some(2));
        let back = MatPoly::from_coefficients(&p.coefficients()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn size_mismatch_is_reported() {
        let a = MatPoly::identity(2);
        let b = MatPoly::identity(3);
        assert!(matches!(a.try_mul(&b), Err(Error::SizeMismatch(_))));
        assert!(matches!(a.try_add(&b), Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn evaluation_is_multiplicative_at_two() {
        let a = sample();
        let b = a.transpose().mul_poly(&Poly::from_ints(&[1, 1]));
        let x0 = int(2);
        let lhs = a.try_mul(&b).unwrap().eval(&x0);
        let rhs = &a.eval(&x0) * &b.eval(&x0);
        assert_eq!(lhs, rhs);
    }
}
