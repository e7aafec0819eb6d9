//! The space of matrix differential operators having a matrix polynomial
//! family as common eigenfunctions.
//!
//! Unknowns are the coefficients of `A_0, …, A_m` (entry degrees capped by
//! [`DegreeBounds`]) together with a free matrix `Γ_n` for each constrained
//! `n`. The constraint `Σ_k P_n^{(k)} A_k = Γ_n P_n` is imposed coefficientwise,
//! one `n` at a time, shrinking a basis of the operator space.

use std::sync::Mutex;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::diffop::{DegreeBounds, MatDiffOp};
use crate::error::{Error, Result};
use crate::exact::linalg;
use crate::exact::{int, MatPoly, RatMatrix, Rational};
use crate::families::Family;
use crate::residue::{fold_family, FoldConfig};

type Source = Box<dyn Fn(usize) -> Result<MatPoly> + Send + Sync>;

/// A lazily generated, cached sequence `P_0, P_1, …`.
pub struct MatFamily {
    size: usize,
    source: Source,
    cache: Mutex<Vec<MatPoly>>,
}

impl std::fmt::Debug for MatFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MatFamily")
            .field("size", &self.size)
            .finish_non_exhaustive()
    }
}

impl MatFamily {
    pub fn new(size: usize, source: Source) -> Self {
        MatFamily {
            size,
            source,
            cache: Mutex::new(Vec::new()),
        }
    }

    /// The fold of a scalar family.
    pub fn folded(family: Family, cfg: FoldConfig) -> Self {
        let size = cfg.n;
        Self::new(size, Box::new(move |n| fold_family(&family, &cfg, n)))
    }

    /// A scalar family as 1×1 matrix polynomials.
    pub fn scalar(family: Family) -> Self {
        Self::new(
            1,
            Box::new(move |n| {
                let p = family.poly(n)?;
                Ok(MatPoly::from_fn(1, |_, _| p.clone()))
            }),
        )
    }

    pub fn from_vec(size: usize, polys: Vec<MatPoly>) -> Self {
        Self::new(
            size,
            Box::new(move |n| {
                polys
                    .get(n)
                    .cloned()
                    .ok_or_else(|| Error::InvalidParameter(format!("family has no element {n}")))
            }),
        )
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, n: usize) -> Result<MatPoly> {
        let mut cache = self.cache.lock().expect("family cache poisoned");
        while cache.len() <= n {
            let k = cache.len();
            let p = (self.source)(k)?;
            cache.push(p);
        }
        Ok(cache[n].clone())
    }
}

/// Solver settings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveConfig {
    pub bounds: DegreeBounds,
    /// Initial training indices are `0..initial_train`.
    pub initial_train: usize,
    /// Indices added per growth step.
    pub growth: usize,
    /// Held-out indices checked after stabilization.
    pub verify: usize,
    /// Largest index the solver may use before giving up.
    pub max_index: usize,
}

impl SolveConfig {
    /// Order `≤ m` with `D_k = k`, training on `0..=m+2` and growing by 2.
    pub fn new(m: usize) -> Self {
        SolveConfig {
            bounds: DegreeBounds::order(m),
            initial_train: m + 3,
            growth: 2,
            verify: 4,
            max_index: 60,
        }
    }

    pub fn with_bounds(mut self, bounds: DegreeBounds) -> Self {
        self.bounds = bounds;
        self
    }
}

/// An operator with its eigenvalue table `n ↦ Γ_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenPair {
    pub operator: MatDiffOp,
    pub eigenvalues: Vec<(usize, RatMatrix)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub n_train: Vec<usize>,
    pub n_verify: Vec<usize>,
    /// `(number of training indices, dimension)` after each round.
    pub history: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenSolveResult {
    pub size: usize,
    pub bounds: DegreeBounds,
    pub dimension: usize,
    /// Identity first when present, then the rest ordered by operator order.
    pub basis: Vec<EigenPair>,
    pub provenance: Provenance,
}

impl EigenSolveResult {
    pub fn vectors(&self) -> Vec<Vec<Rational>> {
        self.basis
            .iter()
            .map(|p| p.operator.to_vector(&self.bounds).expect("within bounds"))
            .collect()
    }

    /// Coordinates of `op` in the basis, or `None` if it is not in the space.
    pub fn membership(&self, op: &MatDiffOp) -> Option<Vec<Rational>> {
        if op.size() != self.size {
            return None;
        }
        let v = op.to_vector(&self.bounds)?;
        linalg::span_coordinates(&self.vectors(), &v)
    }

    pub fn contains(&self, op: &MatDiffOp) -> bool {
        self.membership(op).is_some()
    }

    /// Basis elements of exactly order `k`.
    pub fn of_order(&self, k: usize) -> Vec<&EigenPair> {
        self.basis
            .iter()
            .filter(|p| p.operator.order() == k && !p.operator.is_zero())
            .collect()
    }
}

/// Coefficients of `P^{(k)}` entries, `[k][r][i]`.
fn derivative_table(p: &MatPoly, m: usize) -> Vec<Vec<Vec<Vec<Rational>>>> {
    let n = p.size();
    let mut out = Vec::with_capacity(m + 1);
    let mut d = p.clone();
    for _ in 0..=m {
        out.push(
            (0..n)
                .map(|r| (0..n).map(|i| d.get(r, i).coeffs().to_vec()).collect())
                .collect(),
        );
        d = d.derivative(1);
    }
    out
}

/// Rows of the coefficient system `Σ_k P^{(k)} A_k(v) - Γ P = 0` in the
/// unknowns `(coordinates in basis, entries of Γ)`.
fn constraint_rows(
    p: &MatPoly,
    bounds: &DegreeBounds,
    basis: &[Vec<Rational>],
) -> Vec<Vec<Rational>> {
    let n = p.size();
    let m = bounds.max_order();
    let slots = bounds.slots(n);
    let deriv = derivative_table(p, m);
    let max_d = bounds.0.iter().copied().max().unwrap_or(0);
    let len = p.degree().unwrap_or(0) + max_d + 1;
    let idx = |r: usize, j: usize, e: usize| (r * n + j) * len + e;

    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(basis.len() + n * n);
    for v in basis {
        let mut out = vec![Rational::zero(); n * n * len];
        for (&(k, i, j, d), val) in slots.iter().zip(v) {
            if val.is_zero() {
                continue;
            }
            for r in 0..n {
                for (e, c) in deriv[k][r][i].iter().enumerate() {
                    if !c.is_zero() {
                        out[idx(r, j, e + d)] += val * c;
                    }
                }
            }
        }
        cols.push(out);
    }
    for r in 0..n {
        for s in 0..n {
            let mut out = vec![Rational::zero(); n * n * len];
            for j in 0..n {
                for (e, c) in p.get(s, j).coeffs().iter().enumerate() {
                    out[idx(r, j, e)] = -c;
                }
            }
            cols.push(out);
        }
    }
    (0..n * n * len)
        .map(|row| cols.iter().map(|c| c[row].clone()).collect::<Vec<_>>())
        .filter(|row| row.iter().any(|v| !v.is_zero()))
        .collect()
}

/// Restricts the basis to operators satisfying the constraint at `P`.
fn restrict(p: &MatPoly, bounds: &DegreeBounds, basis: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if basis.is_empty() {
        return Vec::new();
    }
    let nb = basis.len();
    let width = basis[0].len();
    let rows = constraint_rows(p, bounds, basis);
    let ns = linalg::nullspace_of_rows(&rows, nb + p.size() * p.size());
    let combos: Vec<Vec<Rational>> = ns
        .iter()
        .map(|w| {
            let mut v = vec![Rational::zero(); width];
            for (t, wt) in w.iter().take(nb).enumerate() {
                if wt.is_zero() {
                    continue;
                }
                for (x, b) in v.iter_mut().zip(&basis[t]) {
                    if !b.is_zero() {
                        *x += wt * b;
                    }
                }
            }
            v
        })
        .collect();
    linalg::rref(&combos, width).0
}

fn identity_vector(size: usize, bounds: &DegreeBounds) -> Vec<Rational> {
    MatDiffOp::identity(size)
        .to_vector(bounds)
        .expect("identity fits any bounds")
}

/// Identity first (when in the span), then the reduced echelon basis of the
/// complement with vanishing constant `A_0[0][0]`, ordered by operator order.
fn normalize(size: usize, bounds: &DegreeBounds, span: &[Vec<Rational>]) -> Vec<MatDiffOp> {
    let width = bounds.unknowns(size);
    let id = identity_vector(size, bounds);
    let has_identity = linalg::span_coordinates(span, &id).is_some();
    let mut ops = Vec::new();
    let rest: Vec<Vec<Rational>> = if has_identity {
        ops.push(MatDiffOp::identity(size));
        let s00 = bounds
            .slots(size)
            .iter()
            .position(|&slot| slot == (0, 0, 0, 0))
            .expect("constant slot");
        let reduced: Vec<Vec<Rational>> = span
            .iter()
            .map(|v| v.iter().zip(&id).map(|(a, b)| a - &v[s00] * b).collect())
            .collect();
        linalg::rref(&reduced, width).0
    } else {
        linalg::rref(span, width).0
    };
    let mut others: Vec<MatDiffOp> = rest
        .iter()
        .map(|v| MatDiffOp::from_vector(size, bounds, v))
        .collect();
    others.sort_by_key(MatDiffOp::order);
    ops.extend(others);
    ops
}

/// `Γ_n` with `P_n·B = Γ_n P_n` for each `n` in `ns`.
pub fn compute_eigenvalues(
    op: &MatDiffOp,
    family: &MatFamily,
    ns: impl IntoIterator<Item = usize>,
) -> Result<Vec<(usize, RatMatrix)>> {
    ns.into_iter()
        .map(|n| Ok((n, eigenvalue_at(op, &family.get(n)?, n)?)))
        .collect()
}

/// Solves `P·B = Γ P` for `Γ`.
pub fn eigenvalue_at(op: &MatDiffOp, p: &MatPoly, n: usize) -> Result<RatMatrix> {
    let size = p.size();
    let q = op.apply(p)?;
    let len = p.degree().max(q.degree()).unwrap_or(0) + 1;
    // column s: row s of P flattened
    let flat = |m: &MatPoly, r: usize| -> Vec<Rational> {
        (0..size)
            .flat_map(|j| (0..len).map(move |e| (j, e)))
            .map(|(j, e)| m.get(r, j).coeff(e))
            .collect()
    };
    let pcols: Vec<Vec<Rational>> = (0..size).map(|s| flat(p, s)).collect();
    let system = RatMatrix::from_fn(size * len, size, |i, s| pcols[s][i].clone());
    if system.rank() < size {
        return Err(Error::RankDeficient(n));
    }
    let mut gamma = RatMatrix::zeros(size, size);
    for r in 0..size {
        let sol = linalg::solve(&system, &flat(&q, r)).ok_or(Error::NotAnEigenfunction(n))?;
        for (s, v) in sol.particular.into_iter().enumerate() {
            gamma.set(r, s, v);
        }
    }
    Ok(gamma)
}

/// Exact interpolation `Γ_n = Σ_j Γ^{(j)} n^j` of degree `d`, checked against
/// every table entry.
pub fn fit_eigenvalue_poly(table: &[(usize, RatMatrix)], d: usize) -> Result<Vec<RatMatrix>> {
    if table.len() < d + 2 {
        return Err(Error::InvalidParameter(format!(
            "{} table entries cannot certify a degree {d} fit",
            table.len()
        )));
    }
    let (rows, cols) = (table[0].1.rows(), table[0].1.cols());
    let vander = RatMatrix::from_fn(d + 1, d + 1, |i, j| {
        num_traits::pow(int(table[i].0 as i64), j)
    });
    let inv = vander
        .inverse()
        .ok_or_else(|| Error::InvalidParameter("repeated indices in table".into()))?;
    let mut coeffs = vec![RatMatrix::zeros(rows, cols); d + 1];
    for r in 0..rows {
        for c in 0..cols {
            let ys: Vec<Rational> = table[..=d]
                .iter()
                .map(|(_, g)| g.get(r, c).clone())
                .collect();
            for (j, v) in inv.mul_vec(&ys).into_iter().enumerate() {
                coeffs[j].set(r, c, v);
            }
        }
    }
    for (n, g) in table {
        if &eval_fit(&coeffs, *n) != g {
            return Err(Error::NotPolynomial(*n));
        }
    }
    Ok(coeffs)
}

/// `Σ_j coeffs[j] n^j`.
pub fn eval_fit(coeffs: &[RatMatrix], n: usize) -> RatMatrix {
    let nn = int(n as i64);
    let mut pw = Rational::one();
    let mut acc = RatMatrix::zeros(coeffs[0].rows(), coeffs[0].cols());
    for c in coeffs {
        acc = &acc + &c.scale(&pw);
        pw *= &nn;
    }
    acc
}

/// Finds all operators within the bounds having the family as common
/// eigenfunctions, growing the training set until the dimension is stable
/// and every basis element passes held-out verification.
pub fn solve_operator_space(family: &MatFamily, cfg: &SolveConfig) -> Result<EigenSolveResult> {
    let size = family.size();
    let bounds = &cfg.bounds;
    let width = bounds.unknowns(size);
    let mut span: Vec<Vec<Rational>> = (0..width)
        .map(|i| {
            let mut v = vec![Rational::zero(); width];
            v[i] = Rational::one();
            v
        })
        .collect();
    let mut next = 0usize;
    let mut history: Vec<(usize, usize)> = Vec::new();
    let mut target = cfg.initial_train.max(1);
    loop {
        if target > cfg.max_index + 1 {
            let last = history.iter().rev().take(2).map(|h| h.1).collect();
            return Err(Error::DidNotStabilize { last });
        }
        while next < target {
            span = restrict(&family.get(next)?, bounds, &span);
            next += 1;
        }
        history.push((next, span.len()));
        let h = history.len();
        let stable =
            h >= 3 && history[h - 1].1 == history[h - 2].1 && history[h - 2].1 == history[h - 3].1;
        if !stable {
            target = next + cfg.growth;
            continue;
        }
        let verify: Vec<usize> = (next..next + cfg.verify).collect();
        let ops = normalize(size, bounds, &span);
        let mut basis = Vec::with_capacity(ops.len());
        let mut failed = false;
        for op in ops {
            match compute_eigenvalues(&op, family, 0..next + cfg.verify) {
                Ok(eigenvalues) => basis.push(EigenPair {
                    operator: op,
                    eigenvalues,
                }),
                Err(Error::NotAnEigenfunction(_)) => {
                    failed = true;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if failed {
            target = next + cfg.verify;
            continue;
        }
        return Ok(EigenSolveResult {
            size,
            bounds: bounds.clone(),
            dimension: basis.len(),
            basis,
            provenance: Provenance {
                n_train: (0..next).collect(),
                n_verify: verify,
                history,
            },
        });
    }
}

/// The same solver at `N = 1`.
pub fn scalar_space(family: Family, cfg: &SolveConfig) -> Result<EigenSolveResult> {
    solve_operator_space(&MatFamily::scalar(family), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::builtin::laguerre_op;
    use crate::diffop::fold_operator_2x2;
    use crate::exact::rat;
    use crate::families::FamilySpec;

    fn laguerre_fold(alpha: Rational) -> MatFamily {
        let f = Family::new(FamilySpec::laguerre(alpha)).unwrap();
        MatFamily::folded(f, FoldConfig::new(2).unwrap())
    }

    #[test]
    fn order_zero_is_identity() {
        let fam = laguerre_fold(int(1));
        let r = solve_operator_space(&fam, &SolveConfig::new(0)).unwrap();
        assert_eq!(r.dimension, 1);
        assert_eq!(r.basis[0].operator, MatDiffOp::identity(2));
        assert!(r.basis[0]
            .eigenvalues
            .iter()
            .all(|(_, g)| g == &RatMatrix::identity(2)));
    }

    #[test]
    fn folded_laguerre_eigenvalues() {
        let fam = laguerre_fold(rat(1, 2));
        let b = fold_operator_2x2(&laguerre_op(&rat(1, 2)));
        for (n, g) in compute_eigenvalues(&b, &fam, 0..6).unwrap() {
            let n = n as i64;
            assert_eq!(g, RatMatrix::from_ints(&[&[-2 * n, 0], &[0, -2 * n - 1]]));
        }
    }

    #[test]
    fn non_eigen_operator_is_rejected() {
        let fam = laguerre_fold(int(0));
        let mut a1 = MatPoly::zero(2);
        a1.set(0, 0, crate::exact::Poly::x());
        let op = MatDiffOp::new(2, vec![MatPoly::zero(2), a1]).unwrap();
        assert!(matches!(
            compute_eigenvalues(&op, &fam, 0..4),
            Err(Error::NotAnEigenfunction(_))
        ));
    }

    #[test]
    fn fit_reproduces_quadratic() {
        let table: Vec<(usize, RatMatrix)> = (0..6)
            .map(|n| {
                let n = n as i64;
                (
                    n as usize,
                    RatMatrix::from_ints(&[&[n * n + 1, n], &[0, 3]]),
                )
            })
            .collect();
        let fit = fit_eigenvalue_poly(&table, 2).unwrap();
        assert_eq!(fit[2], RatMatrix::from_ints(&[&[1, 0], &[0, 0]]));
        let mut bad = table.clone();
        bad[5].1.set(1, 1, int(4));
        assert_eq!(fit_eigenvalue_poly(&bad, 2), Err(Error::NotPolynomial(5)));
        let constant: Vec<_> = (0..3).map(|n| (n, RatMatrix::identity(1))).collect();
        assert_eq!(fit_eigenvalue_poly(&constant, 0).unwrap().len(), 1);
    }

    #[test]
    fn laguerre_fold_space_contains_the_fold() {
        let fam = laguerre_fold(int(1));
        let r = solve_operator_space(
            &fam,
            &SolveConfig::new(2).with_bounds(DegreeBounds::double(2)),
        )
        .unwrap();
        let b = fold_operator_2x2(&laguerre_op(&int(1)));
        assert!(r.contains(&b));
    }
}
