use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::linalg;
use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// A dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::SizeMismatch("ragged rows".into()));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| super::rational::int(v)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn column(v: Vec<Rational>) -> Self {
        RatMatrix {
            rows: v.len(),
            cols: 1,
            data: v,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn try_mul(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::SizeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(Rational::zero(), |acc, k| {
                acc + self.get(i, k) * rhs.get(k, j)
            })
        }))
    }

    pub fn try_add(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::SizeMismatch("matrix addition".into()));
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Exact determinant (fraction-free elimination).
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::SizeMismatch(
                "determinant of a non-square matrix".into(),
            ));
        }
        Ok(linalg::determinant(self))
    }

    pub fn rank(&self) -> usize {
        linalg::rank(self)
    }

    /// Exact inverse; `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        linalg::inverse(self)
    }

    /// Leading principal minors `det(M[..k, ..k])` for `k = 1..=n`.
    pub fn leading_principal_minors(&self) -> Vec<Rational> {
        (1..=self.rows.min(self.cols))
            .map(|k| linalg::determinant(&self.submatrix(&(0..k).collect::<Vec<_>>())))
            .collect()
    }

    /// The principal submatrix on the given index set.
    pub fn submatrix(&self, idx: &[usize]) -> RatMatrix {
        Self::from_fn(idx.len(), idx.len(), |i, j| {
            self.get(idx[i], idx[j]).clone()
        })
    }
}

/// True iff `s` is positive definite, decided by Sylvester's criterion on
/// exact leading principal minors.
pub fn is_positive_definite(s: &RatMatrix) -> Result<bool> {
    if !s.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(s.leading_principal_minors()
        .iter()
        .all(|m| *m > Rational::zero()))
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        self.try_add(rhs).expect("matrix sizes")
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        self.try_add(&-rhs).expect("matrix sizes")
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.try_mul(rhs).expect("matrix sizes")
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Row<'a>(&'a [Rational]);
        impl Serialize for Row<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                super::rational::serialize_slice(self.0, s)
            }
        }
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(&Row(self.row(i)))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn positive_definite_examples() {
        assert!(is_positive_definite(&RatMatrix::from_ints(&[&[2, 1], &[1, 2]])).unwrap());
        assert!(!is_positive_definite(&RatMatrix::from_ints(&[&[1, 2], &[2, 1]])).unwrap());
        assert!(!is_positive_definite(&RatMatrix::zeros(2, 2)).unwrap());
        assert_eq!(
            is_positive_definite(&RatMatrix::from_ints(&[&[1, 2], &[0, 1]])),
            Err(Error::NotSymmetric)
        );
    }

    #[test]
    fn inverse_and_det() {
        let m = RatMatrix::from_rows(vec![vec![int(2), rat(1, 2)], vec![int(3), int(-1)]]).unwrap();
        assert_eq!(m.det().unwrap(), rat(-7, 2));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, RatMatrix::identity(2));
        assert!(RatMatrix::from_ints(&[&[1, 2], &[2, 4]])
            .inverse()
            .is_none());
    }

    #[test]
    fn serializes_as_nested_strings() {
        let m = RatMatrix::from_rows(vec![vec![rat(1, 2), int(0)]]).unwrap();
        assert_eq!(serde_json::to_string(&m).unwrap(), r#"[["1/2","0"]]"#);
    }
}
