//! Fraction-free linear algebra over the rationals.
//!
//! Rows are cleared of denominators and kept primitive (content 1) during
//! Gauss-Jordan elimination, so intermediate integers stay small. Determinants
//! use Bareiss' exact-division scheme.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::RatMatrix;
use super::rational::Rational;

/// Multiplies a rational row by the lcm of its denominators.
fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    row.iter().map(|r| r.numer() * (&l / r.denom())).collect()
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// Reduced echelon form over the integers: every pivot column is zero
/// outside its pivot row, rows are primitive and pivots are positive.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn from_rational_rows(rows: &[Vec<Rational>], ncols: usize) -> Self {
        let int_rows = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ncols, "row length");
                let mut v = clear_denominators(r);
                make_primitive(&mut v);
                v
            })
            .filter(|r| r.iter().any(|v| !v.is_zero()))
            .collect();
        Self::reduce(int_rows, ncols)
    }

    /// Fraction-free Gauss-Jordan. Pivot columns are taken left to right; among
    /// candidate rows the one with the smallest pivot magnitude wins (ties go
    /// to the earliest row), which keeps the result deterministic.
    pub fn reduce(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Self {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by_key(|&i| rows[i][c].bits())
            else {
                continue;
            };
            rows.swap(r, p);
            if rows[r][c].is_negative() {
                for v in rows[r].iter_mut() {
                    *v = -&*v;
                }
            }
            let pivot_row = rows[r].clone();
            let pv = &pivot_row[c];
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let g = pv.gcd(&row[c]);
                let a = pv / &g;
                let b = &row[c] / &g;
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if y.is_zero() {
                        if !x.is_zero() {
                            *x *= &a;
                        }
                    } else {
                        *x = &*x * &a - y * &b;
                    }
                }
                make_primitive(row);
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        Echelon {
            rows,
            pivots,
            ncols,
        }
    }

    /// Right-nullspace basis, one vector per free column in column order.
    /// Vectors are integral with content 1 and a positive free entry.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let free: Vec<usize> = (0..self.ncols)
            .filter(|c| !self.pivots.contains(c))
            .collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[f] = Rational::one();
                for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                    if !row[f].is_zero() {
                        v[pc] = -Rational::new(row[f].clone(), row[pc].clone());
                    }
                }
                integral_primitive(&v)
            })
            .collect()
    }

    /// Rows divided by their pivots.
    pub fn to_rational_rref(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .zip(&self.pivots)
            .map(|(row, &pc)| {
                row.iter()
                    .map(|v| Rational::new(v.clone(), row[pc].clone()))
                    .collect()
            })
            .collect()
    }
}

/// Scales a rational vector to coprime integers, preserving its direction.
pub fn integral_primitive(v: &[Rational]) -> Vec<Rational> {
    let mut ints = clear_denominators(v);
    make_primitive(&mut ints);
    ints.into_iter().map(Rational::from_integer).collect()
}

/// Right nullspace of `m`. Basis vectors are integral with content 1,
/// ordered by their free column; the empty list means a trivial nullspace.
pub fn nullspace(m: &RatMatrix) -> Vec<Vec<Rational>> {
    nullspace_of_rows(&m.to_rows(), m.cols())
}

pub fn nullspace_of_rows(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    Echelon::from_rational_rows(rows, ncols).nullspace()
}

/// Reduced row echelon form with unit pivots, zero rows dropped.
pub fn rref(rows: &[Vec<Rational>], ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let e = Echelon::from_rational_rows(rows, ncols);
    (e.to_rational_rref(), e.pivots)
}

pub fn rank(m: &RatMatrix) -> usize {
    let mut rows: Vec<Vec<BigInt>> = m.to_rows().iter().map(|r| clear_denominators(r)).collect();
    bareiss_in_place(&mut rows, m.cols()).0
}

/// Bareiss elimination on an integer matrix. Returns the rank and the sign of
/// the row permutation; after the call, for a full-rank square input the last
/// diagonal entry is the determinant up to that sign.
fn bareiss_in_place(rows: &mut [Vec<BigInt>], ncols: usize) -> (usize, i32) {
    let nrows = rows.len();
    let mut prev = BigInt::one();
    let mut sign = 1;
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            rows.swap(p, r);
            sign = -sign;
        }
        for i in (r + 1)..nrows {
            for j in (c + 1)..ncols {
                let v = (&rows[i][j] * &rows[r][c] - &rows[i][c] * &rows[r][j]) / &prev;
                rows[i][j] = v;
            }
            rows[i][c] = BigInt::zero();
        }
        prev = rows[r][c].clone();
        r += 1;
    }
    (r, sign)
}

pub fn determinant(m: &RatMatrix) -> Rational {
    let n = m.rows();
    if n == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut rows: Vec<Vec<BigInt>> = m
        .to_rows()
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            scale *= &l;
            r.iter().map(|v| v.numer() * (&l / v.denom())).collect()
        })
        .collect();
    let (rank, sign) = bareiss_in_place(&mut rows, n);
    if rank < n {
        return Rational::zero();
    }
    Rational::new(&rows[n - 1][n - 1] * BigInt::from(sign), scale)
}

pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let aug: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();
    let (r, piv) = rref(&aug, 2 * n);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(RatMatrix::from_fn(n, n, |i, j| r[i][n + j].clone()))
}

/// Solution set of `m·x = b`: one particular solution plus a nullspace basis.
#[derive(Debug, Clone)]
pub struct Solution {
    pub particular: Vec<Rational>,
    pub homogeneous: Vec<Vec<Rational>>,
}

pub fn solve(m: &RatMatrix, b: &[Rational]) -> Option<Solution> {
    assert_eq!(b.len(), m.rows(), "right-hand side length");
    let n = m.cols();
    let aug: Vec<Vec<Rational>> = (0..m.rows())
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();
    let e = Echelon::from_rational_rows(&aug, n + 1);
    if e.pivots.last() == Some(&n) {
        return None;
    }
    let mut particular = vec![Rational::zero(); n];
    for (row, &pc) in e.rows.iter().zip(&e.pivots) {
        particular[pc] = Rational::new(row[n].clone(), row[pc].clone());
    }
    let homogeneous = Echelon::from_rational_rows(&m.to_rows(), n).nullspace();
    Some(Solution {
        particular,
        homogeneous,
    })
}

/// Coordinates of `v` in the span of `basis`, if it lies there.
pub fn span_coordinates(basis: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    if basis.is_empty() {
        return v.iter().all(Zero::is_zero).then(Vec::new);
    }
    // columns are basis vectors
    let m = RatMatrix::from_fn(v.len(), basis.len(), |i, j| basis[j][i].clone());
    let sol = solve(&m, v)?;
    Some(sol.particular)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn nullspace_examples() {
        assert!(nullspace(&RatMatrix::identity(3)).is_empty());
        let m = RatMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(nullspace(&m), vec![vec![int(-2), int(1)]]);
    }

    #[test]
    fn nullspace_is_primitive_integer() {
        let m = RatMatrix::from_rows(vec![vec![rat(1, 2), rat(1, 3), int(0)]]).unwrap();
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 2);
        assert_eq!(ns[0], vec![int(-2), int(3), int(0)]);
        assert_eq!(ns[1], vec![int(0), int(0), int(1)]);
    }

    #[test]
    fn determinant_with_pivoting() {
        let m = RatMatrix::from_ints(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        assert_eq!(determinant(&m), int(-2));
        let m = RatMatrix::from_rows(vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 4), rat(1, 5)]])
            .unwrap();
        assert_eq!(determinant(&m), rat(1, 10) - rat(1, 12));
        assert_eq!(
            determinant(&RatMatrix::from_ints(&[&[1, 2], &[2, 4]])),
            int(0)
        );
    }

    #[test]
    fn solve_and_span() {
        let m = RatMatrix::from_ints(&[&[1, 1], &[1, -1]]);
        let s = solve(&m, &[int(3), int(1)]).unwrap();
        assert_eq!(s.particular, vec![int(2), int(1)]);
        assert!(s.homogeneous.is_empty());
        let inconsistent = RatMatrix::from_ints(&[&[1, 1], &[2, 2]]);
        assert!(solve(&inconsistent, &[int(1), int(3)]).is_none());

        let basis = vec![vec![int(1), int(0), int(1)], vec![int(0), int(1), int(1)]];
        assert_eq!(
            span_coordinates(&basis, &[int(2), int(3), int(5)]),
            Some(vec![int(2), int(3)])
        );
        assert!(span_coordinates(&basis, &[int(1), int(1), int(1)]).is_none());
    }

    #[test]
    fn rank_of_rectangular() {
        let m = RatMatrix::from_ints(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&m), 2);
    }
}
