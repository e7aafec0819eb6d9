//! Scalar (left-acting) and matrix (right-acting) differential operators, and
//! the fold of a scalar operator into a matrix one.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::linalg;
use crate::exact::rational::{binomial, factorial};
use crate::exact::{int, MatPoly, Poly, RatMatrix, Rational};
use crate::residue::{fold_row, split_residue, FoldConfig};

/// `p ↦ Σ_l a_l(x) p^{(l)}(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ScalarDiffOp {
    coeffs: Vec<Poly>,
}

impl ScalarDiffOp {
    /// Coefficients indexed by derivative order; trailing zero orders are dropped.
    pub fn new(mut coeffs: Vec<Poly>) -> Self {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        ScalarDiffOp { coeffs }
    }

    pub fn zero() -> Self {
        ScalarDiffOp { coeffs: Vec::new() }
    }

    pub fn identity() -> Self {
        Self::new(vec![Poly::one()])
    }

    /// `D^k`.
    pub fn d(k: usize) -> Self {
        let mut c = vec![Poly::zero(); k + 1];
        c[k] = Poly::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, l: usize) -> Poly {
        self.coeffs.get(l).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order; the zero operator has order 0.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        let mut dp = p.clone();
        for a in &self.coeffs {
            if dp.is_zero() {
                break;
            }
            if !a.is_zero() {
                out = &out + &(a * &dp);
            }
            dp = dp.derivative(1);
        }
        out
    }

    pub fn add(&self, other: &ScalarDiffOp) -> ScalarDiffOp {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|l| &self.coeff(l) + &other.coeff(l)).collect())
    }

    pub fn scale(&self, c: &Rational) -> ScalarDiffOp {
        Self::new(self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    /// `self + c·I`.
    pub fn add_identity(&self, c: &Rational) -> ScalarDiffOp {
        self.add(&ScalarDiffOp::identity().scale(c))
    }

    /// The operator `p ↦ self(other(p))`, by the Leibniz rule
    /// `D^i (b D^j) = Σ_t C(i,t) b^{(t)} D^{i-t+j}`.
    pub fn compose(&self, other: &ScalarDiffOp) -> ScalarDiffOp {
        if self.is_zero() || other.is_zero() {
            return ScalarDiffOp::zero();
        }
        let mut out = vec![Poly::zero(); self.order() + other.order() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                for t in 0..=i {
                    let bt = b.derivative(t);
                    if bt.is_zero() {
                        break;
                    }
                    let c = Rational::from_integer(binomial(i as u64, t as u64));
                    out[i - t + j] = &out[i - t + j] + &(a * &bt).scale(&c);
                }
            }
        }
        Self::new(out)
    }

    /// The conjugate operator for the substitution `y = s·x + c`:
    /// if `q(x) = p(s·x + c)` then `translate(s, c)` maps `q` to `(self p)(s·x + c)`.
    pub fn translate(&self, s: &Rational, c: &Rational) -> ScalarDiffOp {
        assert!(!s.is_zero(), "scale must be nonzero");
        let inv = s.recip();
        let mut f = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.affine_subst(s, c).scale(&f));
            f *= &inv;
        }
        Self::new(out)
    }
}

/// `P ↦ Σ_k P^{(k)}(x) A_k(x)`, acting on the right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MatDiffOp {
    size: usize,
    coeffs: Vec<MatPoly>,
}

/// Degree cap `D_k` for each order `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeBounds(pub Vec<usize>);

impl DegreeBounds {
    /// `D_k = k`.
    pub fn order(m: usize) -> Self {
        DegreeBounds((0..=m).collect())
    }

    /// `D_k = 2k`.
    pub fn double(m: usize) -> Self {
        DegreeBounds((0..=m).map(|k| 2 * k).collect())
    }

    pub fn max_order(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// Number of scalar unknowns for an N×N operator.
    pub fn unknowns(&self, size: usize) -> usize {
        size * size * self.0.iter().map(|d| d + 1).sum::<usize>()
    }

    /// Unknown slots `(k, i, j, power)` in vector order: `k` descending,
    /// entries row-major, powers descending.
    pub fn slots(&self, size: usize) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::with_capacity(self.unknowns(size));
        for k in (0..self.0.len()).rev() {
            for i in 0..size {
                for j in 0..size {
                    for p in (0..=self.0[k]).rev() {
                        out.push((k, i, j, p));
                    }
                }
            }
        }
        out
    }
}

impl MatDiffOp {
    /// Coefficients `A_0, …, A_m`; trailing zero orders are dropped.
    pub fn new(size: usize, mut coeffs: Vec<MatPoly>) -> Result<Self> {
        if coeffs.iter().any(|a| a.size() != size) {
            return Err(Error::SizeMismatch("operator coefficient size".into()));
        }
        while coeffs.last().is_some_and(MatPoly::is_zero) {
            coeffs.pop();
        }
        Ok(MatDiffOp { size, coeffs })
    }

    pub fn zero(size: usize) -> Self {
        MatDiffOp {
            size,
            coeffs: Vec::new(),
        }
    }

    pub fn identity(size: usize) -> Self {
        MatDiffOp {
            size,
            coeffs: vec![MatPoly::identity(size)],
        }
    }

    /// Views a scalar operator as a 1×1 right-acting one.
    pub fn from_scalar(l: &ScalarDiffOp) -> Self {
        MatDiffOp {
            size: 1,
            coeffs: l
                .coeffs()
                .iter()
                .map(|a| MatPoly::from_fn(1, |_, _| a.clone()))
                .collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn coeffs(&self) -> &[MatPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> MatPoly {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| MatPoly::zero(self.size))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn apply(&self, p: &MatPoly) -> Result<MatPoly> {
        if p.size() != self.size {
            return Err(Error::SizeMismatch(format!(
                "operator is {0}x{0}, argument is {1}x{1}",
                self.size,
                p.size()
            )));
        }
        let mut out = MatPoly::zero(self.size);
        let mut dp = p.clone();
        for a in &self.coeffs {
            if dp.is_zero() {
                break;
            }
            if !a.is_zero() {
                out = out.try_add(&dp.try_mul(a)?)?;
            }
            dp = dp.derivative(1);
        }
        Ok(out)
    }

    /// Right action on a single row of polynomials.
    pub fn apply_row(&self, row: &[Poly]) -> Vec<Poly> {
        assert_eq!(row.len(), self.size, "row length");
        let mut out = vec![Poly::zero(); self.size];
        let mut dr = row.to_vec();
        for a in &self.coeffs {
            for (i, e) in dr.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                for (c, o) in out.iter_mut().enumerate() {
                    let aic = a.get(i, c);
                    if !aic.is_zero() {
                        *o = &*o + &(e * aic);
                    }
                }
            }
            dr = dr.iter().map(|e| e.derivative(1)).collect();
        }
        out
    }

    pub fn add(&self, other: &MatDiffOp) -> Result<MatDiffOp> {
        if self.size != other.size {
            return Err(Error::SizeMismatch("operator sizes".into()));
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| self.coeff(k).try_add(&other.coeff(k)))
            .collect::<Result<Vec<_>>>()?;
        MatDiffOp::new(self.size, coeffs)
    }

    pub fn scale(&self, c: &Rational) -> MatDiffOp {
        MatDiffOp::new(self.size, self.coeffs.iter().map(|a| a.scale(c)).collect())
            .expect("same size")
    }

    /// `self + c·I`.
    pub fn add_identity(&self, c: &Rational) -> MatDiffOp {
        self.add(&MatDiffOp::identity(self.size).scale(c))
            .expect("same size")
    }

    /// Maximum entry degree of each `A_k`.
    pub fn degrees(&self) -> Vec<Option<usize>> {
        self.coeffs.iter().map(MatPoly::degree).collect()
    }

    pub fn fits(&self, bounds: &DegreeBounds) -> bool {
        self.coeffs.len() <= bounds.0.len()
            && self
                .degrees()
                .iter()
                .zip(&bounds.0)
                .all(|(d, b)| d.is_none_or(|d| d <= *b))
    }

    /// Coefficient vector in the [`DegreeBounds::slots`] order, or `None` when
    /// the operator exceeds the bounds.
    pub fn to_vector(&self, bounds: &DegreeBounds) -> Option<Vec<Rational>> {
        if !self.fits(bounds) {
            return None;
        }
        Some(
            bounds
                .slots(self.size)
                .into_iter()
                .map(|(k, i, j, p)| {
                    self.coeffs
                        .get(k)
                        .map_or_else(Rational::zero, |a| a.get(i, j).coeff(p))
                })
                .collect(),
        )
    }

    pub fn from_vector(size: usize, bounds: &DegreeBounds, v: &[Rational]) -> MatDiffOp {
        let slots = bounds.slots(size);
        assert_eq!(slots.len(), v.len(), "vector length");
        let mut raw: Vec<Vec<Vec<Rational>>> = bounds
            .0
            .iter()
            .map(|d| vec![vec![Rational::zero(); d + 1]; size * size])
            .collect();
        for ((k, i, j, p), c) in slots.into_iter().zip(v) {
            raw[k][i * size + j][p] = c.clone();
        }
        let coeffs = raw
            .into_iter()
            .map(|entries| {
                let mut it = entries.into_iter();
                MatPoly::from_fn(size, |_, _| Poly::new(it.next().expect("entry")))
            })
            .collect();
        MatDiffOp::new(size, coeffs).expect("consistent sizes")
    }
}

/// `b_{k,l}` of the 2×2 fold: the coefficient of `f^{(k)}(x²)` in `D^l f(x²)`,
/// `((-1)^k/k!) Σ_{j=⌈l/2⌉}^{k} (-1)^j C(k,j) (2j)_l · x^{2k-l}`.
pub fn fold_b(k: usize, l: usize) -> Poly {
    if l < k || l > 2 * k {
        return Poly::zero();
    }
    let mut sum = BigInt::zero();
    for j in l.div_ceil(2)..=k {
        let mut falling = BigInt::one();
        for t in 0..l {
            falling *= BigInt::from(2 * j - t);
        }
        let term = binomial(k as u64, j as u64) * falling;
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if k % 2 == 1 {
        sum = -sum;
    }
    let c = Rational::new(sum, factorial(k as u64));
    Poly::monomial(c, 2 * k - l)
}

/// `C_{k,l}` of the 2×2 fold.
pub fn fold_c(k: usize, l: usize, al: &Poly) -> MatPoly {
    let cfg = FoldConfig::new(2).expect("N = 2");
    let x = Poly::x();
    let b = fold_b(k, l);
    let (b0, b1) = (split_residue(&b, &cfg, 0), split_residue(&b, &cfg, 1));
    let (bp0, bp1) = if l == 0 {
        (Poly::zero(), Poly::zero())
    } else {
        let bp = fold_b(k, l - 1);
        (split_residue(&bp, &cfg, 0), split_residue(&bp, &cfg, 1))
    };
    let lr = int(l as i64);
    let left = MatPoly::from_rows(vec![
        vec![b0.clone(), b1.clone()],
        vec![&(&x * &b1) + &bp0.scale(&lr), &b0 + &bp1.scale(&lr)],
    ])
    .expect("2x2");
    let (a0, a1) = (split_residue(al, &cfg, 0), split_residue(al, &cfg, 1));
    let right =
        MatPoly::from_rows(vec![vec![a0.clone(), a1.clone()], vec![&x * &a1, a0]]).expect("2x2");
    left.try_mul(&right).expect("2x2")
}

/// The closed-form fold for `N = 2`, `a = 0`: `A_k = Σ_{l=k}^{m} C_{k,l}`.
pub fn fold_operator_2x2(l: &ScalarDiffOp) -> MatDiffOp {
    let m = l.order();
    if l.is_zero() {
        return MatDiffOp::zero(2);
    }
    let coeffs = (0..=m)
        .map(|k| {
            (k..=m).fold(MatPoly::zero(2), |acc, ll| {
                acc.try_add(&fold_c(k, ll, &l.coeff(ll))).expect("2x2")
            })
        })
        .collect();
    MatDiffOp::new(2, coeffs).expect("2x2")
}

/// The scalar operator actually folded at `a = 0` without pre-substitution
/// once the shift and pre-substitution of `cfg` are absorbed into it.
pub fn conjugate_for_fold(l: &ScalarDiffOp, cfg: &FoldConfig) -> ScalarDiffOp {
    let c = &cfg.pre_s * &cfg.a + &cfg.pre_c;
    if cfg.pre_s.is_one() && c.is_zero() {
        l.clone()
    } else {
        l.translate(&cfg.pre_s, &c)
    }
}

/// Solves `fold(L x^j) = fold(x^j)·B` for an operator `B` within the degree
/// bounds (default `D_k = 2k`), then verifies the result on further monomials.
pub fn fold_operator_general(
    l: &ScalarDiffOp,
    cfg: &FoldConfig,
    bounds: Option<&DegreeBounds>,
) -> Result<MatDiffOp> {
    let n = cfg.n;
    let m = l.order();
    let default_bounds = DegreeBounds::double(m);
    let bounds = bounds.unwrap_or(&default_bounds);
    let lt = conjugate_for_fold(l, cfg);
    let plain = FoldConfig::new(n)?;
    let max_d = bounds.0.iter().copied().max().unwrap_or(0);
    let samples = n * (bounds.max_order().max(m) + max_d + 4);

    let slots = bounds.slots(n);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    for j in 0..samples {
        // fold(x^j) is x^q in column r
        let (q, r) = (j / n, j % n);
        let target = fold_row(&lt.apply(&Poly::monomial(Rational::one(), j)), &plain);
        let top = target
            .iter()
            .filter_map(Poly::degree)
            .max()
            .unwrap_or(0)
            .max(q + max_d);
        for (c, t) in target.iter().enumerate() {
            for p in 0..=top {
                let row: Vec<Rational> = slots
                    .iter()
                    .map(|&(k, i, jj, d)| {
                        // contribution of x^d at (i, jj) in A_k: (q)_k x^{q-k+d} if i == r
                        if i != r || jj != c || k > q || q - k + d != p {
                            return Rational::zero();
                        }
                        let falling: BigInt = (0..k).map(|t| BigInt::from(q - t)).product();
                        Rational::from_integer(falling)
                    })
                    .collect();
                let value = t.coeff(p);
                if row.iter().any(|v| !v.is_zero()) || !value.is_zero() {
                    rows.push(row);
                    rhs.push(value);
                }
            }
        }
    }
    let mat = RatMatrix::from_rows(rows)?;
    let sol = linalg::solve(&mat, &rhs).ok_or(Error::NoSolution)?;
    if !sol.homogeneous.is_empty() {
        return Err(Error::NonUnique(sol.homogeneous.len()));
    }
    let b = MatDiffOp::from_vector(n, bounds, &sol.particular);

    for j in samples..samples + 10 + samples {
        let p = Poly::monomial(Rational::one(), j);
        if fold_row(&lt.apply(&p), &plain) != b.apply_row(&fold_row(&p, &plain)) {
            return Err(Error::NoSolution);
        }
    }
    for j in 0..10 {
        let p = Poly::monomial(Rational::one(), j);
        if fold_row(&l.apply(&p), cfg) != b.apply_row(&fold_row(&p, cfg)) {
            return Err(Error::NoSolution);
        }
    }
    Ok(b)
}

/// Built-in scalar operators and their eigenvalues.
pub mod builtin {
    use super::*;

    fn p(coeffs: Vec<Rational>) -> Poly {
        Poly::new(coeffs)
    }

    /// `x D² + (α + 1 - x) D`, eigenvalue `-n` on the monic Laguerre family.
    pub fn laguerre_op(alpha: &Rational) -> ScalarDiffOp {
        ScalarDiffOp::new(vec![
            Poly::zero(),
            Poly::linear(int(-1), alpha + int(1)),
            Poly::x(),
        ])
    }

    pub fn laguerre_eigenvalue(n: usize) -> Rational {
        int(-(n as i64))
    }

    /// The fourth-order operator of the extended Krall-Laguerre family.
    pub fn krall_laguerre_op(alpha: &Rational, r: &Rational) -> ScalarDiffOp {
        let one = int(1);
        ScalarDiffOp::new(vec![
            p(vec![r * (r + &one)]),
            p(vec![
                -int(2) * ((alpha + &one) * r + alpha),
                int(2) * (r + &one),
            ]),
            p(vec![
                alpha * (alpha + int(3)),
                -(int(2) * (r + alpha) + int(6)),
                one.clone(),
            ]),
            p(vec![int(0), int(2) * (alpha + int(2)), int(-2)]),
            p(vec![int(0), int(0), one]),
        ])
    }

    /// `(R + n)(R + n + 1)`.
    pub fn krall_laguerre_eigenvalue(r: &Rational, n: usize) -> Rational {
        let nn = int(n as i64);
        (r + &nn) * (r + &nn + int(1))
    }

    /// `P = (x² - 1) D² + ((α+β+1) x - β + α + 1) D + R`.
    pub fn kj_p(alpha: &Rational, beta: &Rational, r: &Rational) -> ScalarDiffOp {
        ScalarDiffOp::new(vec![
            p(vec![r.clone()]),
            Poly::linear(alpha + beta + int(1), alpha - beta + int(1)),
            Poly::from_ints(&[-1, 0, 1]),
        ])
    }

    /// `Q = (x² - 1) D² + ((α+β+3) x - β + α - 1) D + (R + α + β + 1)`.
    pub fn kj_q(alpha: &Rational, beta: &Rational, r: &Rational) -> ScalarDiffOp {
        ScalarDiffOp::new(vec![
            p(vec![r + alpha + beta + int(1)]),
            Poly::linear(alpha + beta + int(3), alpha - beta - int(1)),
            Poly::from_ints(&[-1, 0, 1]),
        ])
    }

    /// `PQ`, with `Q` applied first. The other order does not have the
    /// extended Krall-Jacobi polynomials as eigenfunctions.
    pub fn kj_pq(alpha: &Rational, beta: &Rational, r: &Rational) -> ScalarDiffOp {
        kj_p(alpha, beta, r).compose(&kj_q(alpha, beta, r))
    }

    /// `(R + n(α+β+n))(R + (n+1)(α+β+n+1))`.
    pub fn kj_eigenvalue(alpha: &Rational, beta: &Rational, r: &Rational, n: usize) -> Rational {
        let s = alpha + beta;
        let nn = int(n as i64);
        let n1 = &nn + int(1);
        (r + &nn * (&s + &nn)) * (r + &n1 * (&s + &n1))
    }

    /// The displayed fourth-order operator at `α = 3/2, β = 7/8, R = 7`.
    pub fn kj_sample_display() -> ScalarDiffOp {
        let r = |a: i64, b: i64| crate::exact::rat(a, b);
        ScalarDiffOp::new(vec![
            Poly::zero(),
            // 35/32 (83x + 21)
            p(vec![r(35 * 21, 32), r(35 * 83, 32)]),
            // 7/64 (503x² + 98x - 281)
            p(vec![r(-7 * 281, 64), r(7 * 98, 64), r(7 * 503, 64)]),
            // (x² - 1)(51x + 5)/4
            p(vec![r(-5, 4), r(-51, 4), r(5, 4), r(51, 4)]),
            Poly::from_ints(&[1, 0, -2, 0, 1]),
        ])
    }

    /// The R-free fourth-order operator displayed for `β = α + 1`.
    pub fn kj_shift_op(alpha: &Rational) -> ScalarDiffOp {
        let a = alpha;
        let two = int(2);
        // 2(1 - x²)((2α+5)x - 1)
        let d3 = &Poly::from_ints(&[2, 0, -2]) * &Poly::linear(&two * a + int(5), int(-1));
        // -2(x((2α²+11α+19)x - 2α - 2) - 3α - 13)
        let c2 = &two * a * a + int(11) * a + int(19);
        let d2 = p(vec![
            &two * (int(3) * a + int(13)),
            &two * (&two * a + &two),
            -&two * c2,
        ]);
        // -2((2α+3)(2α+9)x - 7)
        let d1 = p(vec![
            int(14),
            -&two * (&two * a + int(3)) * (&two * a + int(9)),
        ]);
        ScalarDiffOp::new(vec![
            Poly::zero(),
            d1,
            d2,
            d3,
            Poly::from_ints(&[1, 0, -2, 0, 1]),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::builtin::*;
    use super::*;
    use crate::exact::rat;
    use crate::families::laguerre;

    #[test]
    fn derivative_composition() {
        assert_eq!(
            ScalarDiffOp::d(1).compose(&ScalarDiffOp::d(1)),
            ScalarDiffOp::d(2)
        );
        let l = laguerre_op(&rat(1, 2));
        assert_eq!(ScalarDiffOp::identity().compose(&l), l);
        assert!(l.apply(&Poly::zero()).is_zero());
    }

    #[test]
    fn laguerre_op_on_l1() {
        let a = rat(2, 3);
        let l1 = laguerre(&a, 1);
        assert_eq!(laguerre_op(&a).apply(&l1), -l1);
    }

    #[test]
    fn b_table_spot_checks() {
        assert_eq!(fold_b(1, 1), Poly::from_ints(&[0, 2]));
        assert_eq!(fold_b(1, 2), Poly::from_ints(&[2]));
        assert_eq!(fold_b(2, 2), Poly::from_ints(&[0, 0, 4]));
        assert_eq!(fold_b(2, 3), Poly::from_ints(&[0, 12]));
        assert_eq!(fold_b(3, 3), Poly::from_ints(&[0, 0, 0, 8]));
        assert!(fold_b(1, 3).is_zero());
        assert!(fold_b(2, 1).is_zero());
    }

    #[test]
    fn zero_operator_folds_to_zero() {
        assert!(fold_operator_2x2(&ScalarDiffOp::zero()).is_zero());
    }

    #[test]
    fn translate_conjugates() {
        let l = kj_p(&rat(3, 2), &rat(7, 8), &int(7));
        let (s, c) = (int(2), int(-1));
        let t = l.translate(&s, &c);
        let q = Poly::from_ints(&[3, -1, 4, 1, 5]);
        assert_eq!(
            t.apply(&q.affine_subst(&s, &c)),
            l.apply(&q).affine_subst(&s, &c)
        );
    }

    #[test]
    fn vector_round_trip() {
        let b = fold_operator_2x2(&laguerre_op(&rat(1, 2)));
        let bounds = DegreeBounds::double(2);
        let v = b.to_vector(&bounds).unwrap();
        assert_eq!(MatDiffOp::from_vector(2, &bounds, &v), b);
        assert!(b.to_vector(&DegreeBounds::order(1)).is_none());
    }

    #[test]
    fn identity_fold_n1() {
        let l = krall_laguerre_op(&int(1), &int(2));
        let cfg = FoldConfig::new(1).unwrap();
        let b = fold_operator_general(&l, &cfg, None).unwrap();
        assert_eq!(b, MatDiffOp::from_scalar(&l));
    }

    #[test]
    fn general_fold_agrees_with_closed_form() {
        let l = krall_laguerre_op(&rat(1, 3), &int(5));
        let cfg = FoldConfig::new(2).unwrap();
        assert_eq!(
            fold_operator_general(&l, &cfg, None).unwrap(),
            fold_operator_2x2(&l)
        );
    }

    #[test]
    fn tight_bounds_have_no_solution() {
        let l = laguerre_op(&int(0));
        let cfg = FoldConfig::new(2).unwrap();
        let r = fold_operator_general(&l, &cfg, Some(&DegreeBounds(vec![0, 0, 0])));
        assert_eq!(r, Err(Error::NoSolution));
    }

    #[test]
    fn builtin_constants() {
        let (a, b, r) = (rat(3, 2), rat(7, 8), int(7));
        assert_eq!(kj_p(&a, &b, &r).coeff(0), Poly::constant(r.clone()));
        assert_eq!(
            kj_q(&a, &b, &r).coeff(0),
            Poly::constant(&r + &a + &b + int(1))
        );
        assert_eq!(
            krall_laguerre_op(&a, &r).coeff(0),
            Poly::constant(&r * (&r + int(1)))
        );
    }
}
