//! Symmetrization of scalar banded and matrix three-term recurrences.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{BandedRec, FactorBands, MonicTtrr};
use crate::error::{Error, Result};
use crate::exact::linalg;
use crate::exact::rational::serialize_slice;
use crate::exact::{is_positive_definite, RatMatrix, Rational};

/// Result of looking for positive `τ_n` that make a banded recurrence symmetric.
///
/// `rho[n] = (τ_n / τ_{n-1})^2` for `n ≥ 1` (entry 0 is unused). On success
/// the squared symmetric bands are reported: `a_sq[n] = a_{n+2}^2`,
/// `b_sq[n] = b_{n+1}^2` and `c[n] = c_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScalarSymmetrization {
    pub success: bool,
    pub first_failure: Option<usize>,
    #[serde(serialize_with = "serialize_slice")]
    pub rho: Vec<Rational>,
    #[serde(serialize_with = "serialize_slice")]
    pub a_sq: Vec<Rational>,
    #[serde(serialize_with = "serialize_slice")]
    pub b_sq: Vec<Rational>,
    #[serde(serialize_with = "serialize_slice")]
    pub c: Vec<Rational>,
}

fn nonzero(rec: &BandedRec, n: usize, k: i64) -> Result<Rational> {
    let v = rec.c(n, k);
    if v.is_zero() {
        Err(Error::ZeroBand { n, k })
    } else {
        Ok(v)
    }
}

/// Propagates squared ratios from the outer band and checks the inner band
/// for `n ≤ n_max`. Supports three- and five-term recurrences.
pub fn scalar_symmetrize(rec: &BandedRec, n_max: usize) -> Result<ScalarSymmetrization> {
    if rec.n > 2 {
        return Err(Error::InvalidParameter(format!(
            "scalar symmetrization handles N <= 2, got N = {}",
            rec.n
        )));
    }
    if rec.len() <= n_max {
        return Err(Error::SizeMismatch("recurrence too short".into()));
    }
    let mut rho = vec![Rational::zero()];
    let mut fail = None;
    for n in 1..=n_max {
        let r = if rec.n == 1 || n == 1 {
            rec.c(n - 1, 1) / nonzero(rec, n, -1)?
        } else {
            rec.c(n - 2, 2) / nonzero(rec, n, -2)? / &rho[n - 1]
        };
        let consistent = rec.n == 1 || &r * rec.c(n, -1) == rec.c(n - 1, 1);
        let positive = r.is_positive();
        rho.push(r);
        if !consistent || !positive {
            fail = Some(n);
            break;
        }
    }
    let success = fail.is_none();
    let (mut a_sq, mut b_sq, mut c) = (Vec::new(), Vec::new(), Vec::new());
    if success {
        for n in 0..=n_max {
            c.push(rec.c(n, 0));
            if n < n_max {
                b_sq.push(rec.c(n, 1) * rec.c(n + 1, -1));
            }
            if rec.n == 2 && n + 2 <= n_max {
                a_sq.push(rec.c(n, 2) * rec.c(n + 2, -2));
            }
        }
    }
    Ok(ScalarSymmetrization {
        success,
        first_failure: fail,
        rho,
        a_sq,
        b_sq,
        c,
    })
}

/// The necessary condition
/// `y_{n+1} ȳ_n (x_n + x̄_{n+1})(x_{n+1} + x̄_{n+2}) = (y_n x̄_n + x_{n+1} ȳ_n)(y_{n+1} x̄_{n+1} + x_{n+2} ȳ_{n+1})`,
/// compared with denominators cleared.
pub fn factor_band_condition(fb: &FactorBands, n: usize) -> bool {
    assert!(n >= 1 && fb.x.len() > n + 2, "index out of tabulated range");
    let (x, y, xb, yb) = (&fb.x, &fb.y, &fb.xbar, &fb.ybar);
    let lhs = &y[n + 1] * &yb[n] * (&x[n] + &xb[n + 1]) * (&x[n + 1] + &xb[n + 2]);
    let rhs =
        (&y[n] * &xb[n] + &x[n + 1] * &yb[n]) * (&y[n + 1] * &xb[n + 1] + &x[n + 2] * &yb[n + 1]);
    lhs == rhs
}

/// Result of looking for symmetric `S_n` with `B̂_n S_n` symmetric and
/// `S_n = Â_n S_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixSymmetrization {
    /// Dimension of the space of admissible `S_0`.
    pub dimension: usize,
    /// True when a one-dimensional solution gives definite `S_n` for every `n`.
    pub exists: bool,
    /// Witness `S_0, …, S_{n_max}` (sign chosen positive) when `dimension == 1`.
    pub s: Vec<RatMatrix>,
    /// First index at which the witness is not definite.
    pub first_indefinite: Option<usize>,
}

/// Parametrizes a symmetric `S_0`, propagates `S_n = Â_n S_{n-1}`, imposes the
/// symmetry of `S_n` and `B̂_n S_n` for `n ≤ n_max` and checks definiteness.
pub fn matrix_symmetrize(ttrr: &MonicTtrr, n_max: usize) -> Result<MatrixSymmetrization> {
    if ttrr.b.len() <= n_max || ttrr.a.len() <= n_max {
        return Err(Error::SizeMismatch("recurrence too short".into()));
    }
    let size = ttrr.b[0].rows();
    for n in 1..=n_max {
        if ttrr.a[n].det()?.is_zero() {
            return Err(Error::SingularBlock(n));
        }
    }
    // basis of symmetric matrices
    let mut params = Vec::new();
    for i in 0..size {
        for j in i..size {
            let mut e = RatMatrix::zeros(size, size);
            e.set(i, j, Rational::from_integer(1.into()));
            e.set(j, i, Rational::from_integer(1.into()));
            params.push(e);
        }
    }
    let mut s: Vec<Vec<RatMatrix>> = vec![params];
    for n in 1..=n_max {
        let next = s[n - 1].iter().map(|m| &ttrr.a[n] * m).collect();
        s.push(next);
    }
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let antisym = |ms: &[RatMatrix], rows: &mut Vec<Vec<Rational>>| {
        for i in 0..size {
            for j in (i + 1)..size {
                rows.push(ms.iter().map(|m| m.get(i, j) - m.get(j, i)).collect());
            }
        }
    };
    for (n, sn) in s.iter().enumerate() {
        antisym(sn, &mut rows);
        let bs: Vec<RatMatrix> = sn.iter().map(|m| &ttrr.b[n] * m).collect();
        antisym(&bs, &mut rows);
    }
    let nparams = s[0].len();
    let ns = linalg::nullspace_of_rows(&rows, nparams);
    let dimension = ns.len();
    if dimension != 1 {
        return Ok(MatrixSymmetrization {
            dimension,
            exists: false,
            s: Vec::new(),
            first_indefinite: None,
        });
    }
    let v = &ns[0];
    let combine = |ms: &[RatMatrix]| {
        ms.iter()
            .zip(v)
            .fold(RatMatrix::zeros(size, size), |acc, (m, c)| {
                &acc + &m.scale(c)
            })
    };
    let mut witness: Vec<RatMatrix> = s.iter().map(|ms| combine(ms)).collect();
    if witness[0].get(0, 0).is_negative() {
        witness = witness.iter().map(|m| -m).collect();
    }
    let mut first_indefinite = None;
    for (n, m) in witness.iter().enumerate() {
        if !is_positive_definite(m)? {
            first_indefinite = Some(n);
            break;
        }
    }
    Ok(MatrixSymmetrization {
        dimension,
        exists: first_indefinite.is_none(),
        s: witness,
        first_indefinite,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::families::FamilySpec;
    use crate::recurrence::family_recurrence;

    #[test]
    fn laguerre_three_term_symmetrizes() {
        let rec = family_recurrence(&FamilySpec::laguerre(rat(1, 2)), 10).unwrap();
        let r = scalar_symmetrize(&rec, 8).unwrap();
        assert!(r.success);
    }

    #[test]
    fn krall_laguerre_alpha_zero_only() {
        let ok = family_recurrence(&FamilySpec::krall_laguerre(int(0), int(7)), 14).unwrap();
        assert!(scalar_symmetrize(&ok, 12).unwrap().success);
        let bad = family_recurrence(&FamilySpec::krall_laguerre(rat(1, 2), int(7)), 14).unwrap();
        let r = scalar_symmetrize(&bad, 12).unwrap();
        assert!(!r.success);
        assert!(r.first_failure.is_some());
    }

    #[test]
    fn zero_band_is_reported() {
        let rec = BandedRec::new(2, int(0), vec![vec![int(1); 5]; 4]).unwrap();
        let mut rec = rec;
        rec.set(2, -2, int(0));
        assert_eq!(
            scalar_symmetrize(&rec, 3),
            Err(Error::ZeroBand { n: 2, k: -2 })
        );
    }
}
