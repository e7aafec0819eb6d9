//! Residue splitting `R_{N,m,a}`, reconstruction, and folding of scalar
//! families into N×N matrix polynomial families.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{MatPoly, Poly, Rational};

/// Block size, pivot shift and affine pre-substitution for a fold.
///
/// The pivot polynomial is `(x - a)^N`; the scalar family is read as
/// `p̃_n(x) = p_n(pre_s·x + pre_c)` before splitting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoldConfig {
    pub n: usize,
    #[serde(serialize_with = "crate::exact::rational::serde_str::serialize")]
    pub a: Rational,
    #[serde(serialize_with = "crate::exact::rational::serde_str::serialize")]
    pub pre_s: Rational,
    #[serde(serialize_with = "crate::exact::rational::serde_str::serialize")]
    pub pre_c: Rational,
}

impl FoldConfig {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "block size N must be at least 1".into(),
            ));
        }
        Ok(FoldConfig {
            n,
            a: Rational::zero(),
            pre_s: Rational::one(),
            pre_c: Rational::zero(),
        })
    }

    pub fn with_shift(mut self, a: Rational) -> Self {
        self.a = a;
        self
    }

    pub fn with_pre(mut self, s: Rational, c: Rational) -> Result<Self> {
        if s.is_zero() {
            return Err(Error::InvalidParameter(
                "pre-substitution scale must be nonzero".into(),
            ));
        }
        self.pre_s = s;
        self.pre_c = c;
        Ok(self)
    }

    pub fn has_pre(&self) -> bool {
        !self.pre_s.is_one() || !self.pre_c.is_zero()
    }
}

/// The N residue parts of one scalar polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueVector(pub Vec<Poly>);

/// `R_{N,m,a}(p)`: re-expand `p` about `a` and keep the powers `≡ m (mod N)`,
/// stripping `(x-a)^m` and substituting `(x-a)^N → x`.
pub fn split_residue(p: &Poly, cfg: &FoldConfig, m: usize) -> Poly {
    assert!(m < cfg.n, "residue index {m} out of range for N={}", cfg.n);
    let t = p.taylor_shift(&cfg.a);
    Poly::new(t.coeffs().iter().skip(m).step_by(cfg.n).cloned().collect())
}

pub fn split(p: &Poly, cfg: &FoldConfig) -> ResidueVector {
    ResidueVector((0..cfg.n).map(|m| split_residue(p, cfg, m)).collect())
}

/// Inverse of [`split`]: `p(x) = Σ_m (x-a)^m R_m((x-a)^N)`.
pub fn unfold(rv: &ResidueVector, cfg: &FoldConfig) -> Result<Poly> {
    if rv.0.len() != cfg.n {
        return Err(Error::SizeMismatch(format!(
            "{} residue parts for N={}",
            rv.0.len(),
            cfg.n
        )));
    }
    let len =
        rv.0.iter()
            .enumerate()
            .map(|(m, r)| r.coeffs().len() * cfg.n + m)
            .max()
            .unwrap_or(0);
    let mut t = vec![Rational::zero(); len];
    for (m, r) in rv.0.iter().enumerate() {
        for (i, c) in r.coeffs().iter().enumerate() {
            t[i * cfg.n + m] = c.clone();
        }
    }
    Ok(Poly::new(t).taylor_shift(&-&cfg.a))
}

/// Applies the pre-substitution, then splits: one row of a folded family.
pub fn fold_row(p: &Poly, cfg: &FoldConfig) -> Vec<Poly> {
    let pt = if cfg.has_pre() {
        p.affine_subst(&cfg.pre_s, &cfg.pre_c)
    } else {
        p.clone()
    };
    split(&pt, cfg).0
}

/// Anything that can produce the `n`-th scalar polynomial of a family.
pub trait PolySource {
    fn poly(&self, n: usize) -> Result<Poly>;
}

impl PolySource for [Poly] {
    fn poly(&self, n: usize) -> Result<Poly> {
        self.get(n)
            .cloned()
            .ok_or_else(|| Error::InvalidParameter(format!("family has no element {n}")))
    }
}

impl PolySource for Vec<Poly> {
    fn poly(&self, n: usize) -> Result<Poly> {
        self.as_slice().poly(n)
    }
}

/// `P_n`: row `j` holds the residue parts of `p̃_{nN+j}`.
pub fn fold_family<F: PolySource + ?Sized>(
    family: &F,
    cfg: &FoldConfig,
    n: usize,
) -> Result<MatPoly> {
    let rows = (0..cfg.n)
        .map(|j| Ok(fold_row(&family.poly(n * cfg.n + j)?, cfg)))
        .collect::<Result<Vec<_>>>()?;
    MatPoly::from_rows(rows)
}

/// `P_0, …, P_{count-1}`.
pub fn fold_sequence<F: PolySource + ?Sized>(
    family: &F,
    cfg: &FoldConfig,
    count: usize,
) -> Result<Vec<MatPoly>> {
    (0..count).map(|n| fold_family(family, cfg, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn cfg(n: usize, a: Rational) -> FoldConfig {
        FoldConfig::new(n).unwrap().with_shift(a)
    }

    #[test]
    fn splits_cubic() {
        let p = Poly::from_ints(&[1, 2, 3, 4]);
        let c = cfg(2, int(0));
        assert_eq!(split_residue(&p, &c, 0), Poly::from_ints(&[1, 3]));
        assert_eq!(split_residue(&p, &c, 1), Poly::from_ints(&[2, 4]));
    }

    #[test]
    fn splits_x4_with_n3() {
        let p = Poly::from_ints(&[0, 0, 0, 0, 1]);
        assert_eq!(split_residue(&p, &cfg(3, int(0)), 1), Poly::x());
    }

    #[test]
    fn shifted_split_of_x() {
        let c = cfg(2, int(-1));
        assert_eq!(split_residue(&Poly::x(), &c, 0), Poly::from_ints(&[-1]));
        assert_eq!(split_residue(&Poly::x(), &c, 1), Poly::from_ints(&[1]));
    }

    #[test]
    fn unfold_inverts_split() {
        let c = cfg(2, int(0));
        let rv = ResidueVector(vec![Poly::from_ints(&[1, 3]), Poly::from_ints(&[2, 4])]);
        assert_eq!(unfold(&rv, &c).unwrap(), Poly::from_ints(&[1, 2, 3, 4]));
        let p = Poly::from_ints(&[5, -1, 0, 7, 2, 9, 1]);
        for a in [int(0), int(-1), rat(3, 2)] {
            for n in 1..5 {
                let c = cfg(n, a.clone());
                assert_eq!(unfold(&split(&p, &c), &c).unwrap(), p);
            }
        }
    }

    #[test]
    fn unfold_checks_length() {
        let rv = ResidueVector(vec![Poly::one()]);
        assert!(matches!(
            unfold(&rv, &cfg(2, int(0))),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn fold_of_laguerre_start() {
        // L_0 = 1, L_1 = x - 1 at alpha = 0
        let fam = vec![Poly::one(), Poly::from_ints(&[-1, 1])];
        let p0 = fold_family(&fam, &cfg(2, int(0)), 0).unwrap();
        let expect = MatPoly::from_rows(vec![
            vec![Poly::one(), Poly::zero()],
            vec![Poly::from_ints(&[-1]), Poly::one()],
        ])
        .unwrap();
        assert_eq!(p0, expect);
    }

    #[test]
    fn pre_substitution_applies_before_split() {
        let c = FoldConfig::new(2)
            .unwrap()
            .with_pre(int(2), int(-1))
            .unwrap();
        // (2x - 1)^2 - 1 = 4x^2 - 4x
        let row = fold_row(&Poly::from_ints(&[-1, 0, 1]), &c);
        assert_eq!(row, vec![Poly::from_ints(&[0, 4]), Poly::from_ints(&[-4])]);
        assert!(FoldConfig::new(2)
            .unwrap()
            .with_pre(int(0), int(1))
            .is_err());
        assert!(FoldConfig::new(0).is_err());
    }
}
