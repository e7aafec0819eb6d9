//! Banded scalar recurrences, their block-tridiagonal form, symmetrization
//! tests and exact moment computations.

pub mod moments;
pub mod symmetry;

use serde::Serialize;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, MatPoly, Poly, RatMatrix, Rational};
use crate::families::{FamilyKind, FamilySpec};
use crate::residue::PolySource;

pub use moments::{moment_gram, MomentFunctional, MomentSequence, PointMass};
pub use symmetry::{
    factor_band_condition, matrix_symmetrize, scalar_symmetrize, MatrixSymmetrization,
    ScalarSymmetrization,
};

/// `(x - a)^N p_n = Σ_{|k| ≤ N} c_{n,k} p_{n+k}`, tabulated for `n ≤ n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandedRec {
    pub n: usize,
    pub a: Rational,
    bands: Vec<Vec<Rational>>,
}

impl BandedRec {
    /// `bands[n][k + N]` holds `c_{n,k}`. Entries reaching below index 0 are ignored.
    pub fn new(n: usize, a: Rational, bands: Vec<Vec<Rational>>) -> Result<Self> {
        if n == 0 || bands.iter().any(|b| b.len() != 2 * n + 1) {
            return Err(Error::SizeMismatch(
                "each band row needs 2N+1 entries".into(),
            ));
        }
        Ok(BandedRec { n, a, bands })
    }

    /// Largest tabulated row index.
    pub fn len(&self) -> usize {
        self.bands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bands.is_empty()
    }

    /// `c_{n,k}`; zero outside the band or below index 0.
    pub fn c(&self, n: usize, k: i64) -> Rational {
        let w = self.n as i64;
        if k.abs() > w || (n as i64) + k < 0 {
            return Rational::zero();
        }
        self.bands[n][(k + w) as usize].clone()
    }

    pub fn set(&mut self, n: usize, k: i64, v: Rational) {
        let w = self.n as i64;
        assert!(k.abs() <= w, "band index out of range");
        self.bands[n][(k + w) as usize] = v;
    }

    /// Entry `(i, j)` of the banded matrix.
    pub fn entry(&self, i: usize, j: usize) -> Rational {
        let k = j as i64 - i as i64;
        if i >= self.bands.len() {
            panic!("row {i} beyond tabulated range");
        }
        self.c(i, k)
    }

    pub fn pivot(&self) -> Poly {
        Poly::linear(Rational::one(), -&self.a).pow(self.n as u32)
    }
}

/// Tridiagonal matrix with rows `(lower_n, diag_n, upper_n)` at columns `n-1, n, n+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tridiagonal {
    pub lower: Vec<Rational>,
    pub diag: Vec<Rational>,
    pub upper: Vec<Rational>,
}

impl Tridiagonal {
    pub fn rows(&self) -> usize {
        self.diag.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        if j + 1 == i {
            self.lower[i].clone()
        } else if j == i {
            self.diag[i].clone()
        } else if j == i + 1 {
            self.upper[i].clone()
        } else {
            Rational::zero()
        }
    }

    /// A monic three-term recurrence viewed as a banded one with `N = 1`.
    pub fn to_banded(&self, a: Rational) -> BandedRec {
        let bands = (0..self.rows())
            .map(|n| {
                vec![
                    self.lower[n].clone(),
                    self.diag[n].clone(),
                    self.upper[n].clone(),
                ]
            })
            .collect();
        BandedRec::new(1, a, bands).expect("three entries per row")
    }
}

/// The `x_n, y_n, x̄_n, ȳ_n` data of a Darboux pair, indexed by `n`
/// (entry 0 of `x` and `x̄` is unused).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorBands {
    pub x: Vec<Rational>,
    pub y: Vec<Rational>,
    pub xbar: Vec<Rational>,
    pub ybar: Vec<Rational>,
}

impl FactorBands {
    /// Tabulates `0..count` for a Krall kind.
    pub fn for_family(spec: &FamilySpec, count: usize) -> Result<Self> {
        type Acc = fn(&FamilySpec, usize) -> Result<Rational>;
        let (fx, fy, fxb, fyb): (Acc, Acc, Acc, Acc) = match spec.kind {
            FamilyKind::KrallLaguerre => (
                FamilySpec::kl_x,
                FamilySpec::kl_y,
                FamilySpec::kl_xbar,
                FamilySpec::kl_ybar,
            ),
            FamilyKind::KrallJacobi => (
                FamilySpec::kj_x,
                FamilySpec::kj_y,
                FamilySpec::kj_xbar,
                FamilySpec::kj_ybar,
            ),
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "{} has no Darboux factorization data",
                    spec.kind.name()
                )))
            }
        };
        let tab = |f: Acc, from: usize| -> Result<Vec<Rational>> {
            (0..count)
                .map(|n| {
                    if n < from {
                        Ok(Rational::zero())
                    } else {
                        f(spec, n)
                    }
                })
                .collect()
        };
        Ok(FactorBands {
            x: tab(fx, 1)?,
            y: tab(fy, 1)?,
            xbar: tab(fxb, 1)?,
            ybar: tab(fyb, 1)?,
        })
    }

    /// Rows `(y_n, x_{n+1}, 1)` and `(ȳ_n, x̄_{n+1}, 1)` for `n < rows`.
    pub fn tridiagonals(&self, rows: usize) -> (Tridiagonal, Tridiagonal) {
        assert!(self.x.len() > rows, "factor data too short");
        let build = |lo: &[Rational], di: &[Rational]| Tridiagonal {
            lower: (0..rows)
                .map(|n| {
                    if n == 0 {
                        Rational::zero()
                    } else {
                        lo[n].clone()
                    }
                })
                .collect(),
            diag: (0..rows).map(|n| di[n + 1].clone()).collect(),
            upper: vec![Rational::one(); rows],
        };
        (build(&self.y, &self.x), build(&self.ybar, &self.xbar))
    }
}

/// The band product `T1·T2` as a five-term recurrence with pivot `(x - a)^2`.
/// Rows `0..rows-1` of the product are produced; the factors need one more row.
pub fn five_term_from_bidiagonal(t1: &Tridiagonal, t2: &Tridiagonal, a: Rational) -> BandedRec {
    let rows = t1.rows().min(t2.rows()).saturating_sub(1);
    let bands = (0..rows)
        .map(|n| {
            (-2i64..=2)
                .map(|k| {
                    let col = n as i64 + k;
                    if col < 0 {
                        return Rational::zero();
                    }
                    let col = col as usize;
                    (n.saturating_sub(1)..=n + 1)
                        .map(|j| t1.get(n, j) * t2.get(j, col))
                        .fold(Rational::zero(), |acc, v| acc + v)
                })
                .collect()
        })
        .collect();
    BandedRec::new(2, a, bands).expect("five entries per row")
}

/// The banded recurrence of a family: three-term for the classical kinds,
/// five-term for the Krall kinds. `rows` rows are tabulated.
pub fn family_recurrence(spec: &FamilySpec, rows: usize) -> Result<BandedRec> {
    match spec.kind {
        FamilyKind::Laguerre => {
            // x L_n = L_{n+1} + (2n+1+α) L_n + n(n+α) L_{n-1}
            let al = &spec.alpha;
            let t = Tridiagonal {
                lower: (0..rows)
                    .map(|n| int(n as i64) * (int(n as i64) + al))
                    .collect(),
                diag: (0..rows).map(|n| int(2 * n as i64 + 1) + al).collect(),
                upper: vec![Rational::one(); rows],
            };
            Ok(t.to_banded(Rational::zero()))
        }
        FamilyKind::JacobiMonic => {
            let t = Tridiagonal {
                lower: (0..rows)
                    .map(|n| {
                        if n == 0 {
                            Ok(Rational::zero())
                        } else {
                            spec.jacobi_a(n)
                        }
                    })
                    .collect::<Result<_>>()?,
                diag: (0..rows)
                    .map(|n| spec.jacobi_b(n + 1))
                    .collect::<Result<_>>()?,
                upper: vec![Rational::one(); rows],
            };
            Ok(t.to_banded(Rational::zero()))
        }
        FamilyKind::KrallLaguerre | FamilyKind::KrallJacobi => {
            let fb = FactorBands::for_family(spec, rows + 2)?;
            let (t1, t2) = fb.tridiagonals(rows + 1);
            let a = if spec.kind == FamilyKind::KrallLaguerre {
                int(0)
            } else {
                int(-1)
            };
            Ok(five_term_from_bidiagonal(&t1, &t2, a))
        }
    }
}

/// Outcome of checking a banded recurrence against a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BandedReport {
    pub checked: usize,
    pub failures: Vec<usize>,
}

impl BandedReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `(x - a)^N p_n = Σ_k c_{n,k} p_{n+k}` exactly for `n ≤ n_max`.
pub fn verify_banded<F: PolySource + ?Sized>(
    family: &F,
    rec: &BandedRec,
    n_max: usize,
) -> Result<BandedReport> {
    let pivot = rec.pivot();
    let w = rec.n as i64;
    let mut failures = Vec::new();
    for n in 0..=n_max {
        let lhs = &pivot * &family.poly(n)?;
        let mut rhs = Poly::zero();
        for k in -w..=w {
            let j = n as i64 + k;
            if j < 0 {
                continue;
            }
            let c = rec.c(n, k);
            if !c.is_zero() {
                rhs = &rhs + &family.poly(j as usize)?.scale(&c);
            }
        }
        if lhs != rhs {
            failures.push(n);
        }
    }
    Ok(BandedReport {
        checked: n_max + 1,
        failures,
    })
}

/// Block-tridiagonal form `x P_n = A_n P_{n+1} + B_n P_n + C_n P_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockTtrr {
    pub a: Vec<RatMatrix>,
    pub b: Vec<RatMatrix>,
    pub c: Vec<RatMatrix>,
}

/// The N×N blocks of the banded matrix, for block rows `0..count`.
pub fn blocks_from_banded(rec: &BandedRec, count: usize) -> Result<BlockTtrr> {
    let n = rec.n;
    if rec.len() < count * n {
        return Err(Error::SizeMismatch(format!(
            "{} band rows cannot fill {count} block rows",
            rec.len()
        )));
    }
    let block = |bi: usize, bj: i64| {
        RatMatrix::from_fn(n, n, |r, s| {
            if bj < 0 {
                Rational::zero()
            } else {
                rec.entry(bi * n + r, bj as usize * n + s)
            }
        })
    };
    Ok(BlockTtrr {
        a: (0..count).map(|i| block(i, i as i64 + 1)).collect(),
        b: (0..count).map(|i| block(i, i as i64)).collect(),
        c: (0..count).map(|i| block(i, i as i64 - 1)).collect(),
    })
}

/// Indices `n` where the block recurrence fails against `family[n]`. Checks
/// `n < min(blocks, family.len() - 1)`.
pub fn verify_block_ttrr(ttrr: &BlockTtrr, family: &[MatPoly]) -> Result<Vec<usize>> {
    let count = ttrr.b.len().min(family.len().saturating_sub(1));
    let mut failures = Vec::new();
    for n in 0..count {
        let lhs = family[n].mul_poly(&Poly::x());
        let mut rhs = family[n + 1]
            .left_mul(&ttrr.a[n])?
            .try_add(&family[n].left_mul(&ttrr.b[n])?)?;
        if n > 0 {
            rhs = rhs.try_add(&family[n - 1].left_mul(&ttrr.c[n])?)?;
        }
        if lhs != rhs {
            failures.push(n);
        }
    }
    Ok(failures)
}

/// A monic family `P̂_n = L_n^{-1} P_n` with the leading coefficients `L_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonicFamily {
    pub polys: Vec<MatPoly>,
    pub leading: Vec<RatMatrix>,
}

pub fn make_monic(family: &[MatPoly]) -> Result<MonicFamily> {
    let mut polys = Vec::with_capacity(family.len());
    let mut leading = Vec::with_capacity(family.len());
    for (n, p) in family.iter().enumerate() {
        let l = p.coefficient(n);
        let inv = l.inverse().ok_or(Error::SingularLeadingCoefficient(n))?;
        polys.push(p.left_mul(&inv)?);
        leading.push(l);
    }
    Ok(MonicFamily { polys, leading })
}

/// `x P̂_n = P̂_{n+1} + B̂_n P̂_n + Â_n P̂_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonicTtrr {
    pub b: Vec<RatMatrix>,
    pub a: Vec<RatMatrix>,
}

/// `B̂_n = L_n^{-1} B_n L_n`, `Â_n = L_n^{-1} C_n L_{n-1}` (with `Â_0 = 0`).
pub fn monic_ttrr(ttrr: &BlockTtrr, leading: &[RatMatrix]) -> Result<MonicTtrr> {
    let count = ttrr.b.len().min(leading.len());
    let mut b = Vec::with_capacity(count);
    let mut a = Vec::with_capacity(count);
    for n in 0..count {
        let inv = leading[n]
            .inverse()
            .ok_or(Error::SingularLeadingCoefficient(n))?;
        b.push(&(&inv * &ttrr.b[n]) * &leading[n]);
        if n == 0 {
            a.push(RatMatrix::zeros(leading[0].rows(), leading[0].rows()));
        } else {
            a.push(&(&inv * &ttrr.c[n]) * &leading[n - 1]);
        }
    }
    Ok(MonicTtrr { b, a })
}

/// Indices where the monic recurrence fails against the monic family.
pub fn verify_monic_ttrr(ttrr: &MonicTtrr, family: &[MatPoly]) -> Result<Vec<usize>> {
    let count = ttrr.b.len().min(family.len().saturating_sub(1));
    let mut failures = Vec::new();
    for n in 0..count {
        let lhs = family[n].mul_poly(&Poly::x());
        let mut rhs = family[n + 1].try_add(&family[n].left_mul(&ttrr.b[n])?)?;
        if n > 0 {
            rhs = rhs.try_add(&family[n - 1].left_mul(&ttrr.a[n])?)?;
        }
        if lhs != rhs {
            failures.push(n);
        }
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::families::Family;
    use crate::residue::{fold_sequence, FoldConfig};

    #[test]
    fn identity_factors_give_identity_band() {
        let id = Tridiagonal {
            lower: vec![int(0); 4],
            diag: vec![int(1); 4],
            upper: vec![int(0); 4],
        };
        let rec = five_term_from_bidiagonal(&id, &id, int(0));
        for n in 0..3 {
            for k in -2..=2 {
                assert_eq!(rec.c(n, k), if k == 0 { int(1) } else { int(0) });
            }
        }
    }

    #[test]
    fn laguerre_three_term() {
        let spec = FamilySpec::laguerre(rat(1, 2));
        let f = Family::new(spec.clone()).unwrap();
        let rec = family_recurrence(&spec, 12).unwrap();
        assert!(verify_banded(&f, &rec, 10).unwrap().pass());
    }

    #[test]
    fn krall_laguerre_five_term_and_corruption() {
        let spec = FamilySpec::krall_laguerre(int(1), int(2));
        let f = Family::new(spec.clone()).unwrap();
        let mut rec = family_recurrence(&spec, 14).unwrap();
        assert!(verify_banded(&f, &rec, 12).unwrap().pass());
        rec.set(3, 1, rec.c(3, 1) + int(1));
        assert_eq!(verify_banded(&f, &rec, 12).unwrap().failures, vec![3]);
    }

    #[test]
    fn krall_laguerre_blocks() {
        let spec = FamilySpec::krall_laguerre(int(1), int(2));
        let f = Family::new(spec.clone()).unwrap();
        let rec = family_recurrence(&spec, 24).unwrap();
        let blocks = blocks_from_banded(&rec, 11).unwrap();
        assert!(blocks.c[0].is_zero());
        let fam = fold_sequence(&f, &FoldConfig::new(2).unwrap(), 12).unwrap();
        assert!(verify_block_ttrr(&blocks, &fam).unwrap().is_empty());
        let monic = make_monic(&fam).unwrap();
        let mt = monic_ttrr(&blocks, &monic.leading).unwrap();
        assert!(verify_monic_ttrr(&mt, &monic.polys).unwrap().is_empty());
    }

    #[test]
    fn n1_blocks_are_scalar_bands() {
        let spec = FamilySpec::laguerre(int(0));
        let rec = family_recurrence(&spec, 6).unwrap();
        let blocks = blocks_from_banded(&rec, 5).unwrap();
        for n in 1..5 {
            assert_eq!(blocks.b[n].get(0, 0), &rec.c(n, 0));
            assert_eq!(blocks.c[n].get(0, 0), &rec.c(n, -1));
        }
    }

    #[test]
    fn singular_leading_coefficient() {
        let p = MatPoly::from_rows(vec![
            vec![Poly::one(), Poly::one()],
            vec![Poly::one(), Poly::one()],
        ])
        .unwrap();
        assert_eq!(make_monic(&[p]), Err(Error::SingularLeadingCoefficient(0)));
        let id = make_monic(&[MatPoly::identity(2)]).unwrap();
        assert_eq!(id.leading, vec![RatMatrix::identity(2)]);
    }
}
