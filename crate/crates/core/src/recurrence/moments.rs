//! Exact moment functionals for matrix weights and Gram blocks of folded families.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{as_nonnegative_integer, factorial};
use crate::exact::{int, MatPoly, RatMatrix, Rational};

/// Moments `μ_j` of one weight entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MomentSequence {
    /// `μ_j = scale · (2j + shift)!`
    ShiftedFactorial { scale: Rational, shift: u64 },
    /// Explicit moments; indices past the end are an error.
    Table(Vec<Rational>),
}

impl MomentSequence {
    pub fn moment(&self, j: usize) -> Result<Rational> {
        match self {
            MomentSequence::ShiftedFactorial { scale, shift } => {
                Ok(scale * Rational::from_integer(factorial(2 * j as u64 + shift)))
            }
            MomentSequence::Table(t) => t.get(j).cloned().ok_or_else(|| {
                Error::InvalidParameter(format!("moment {j} beyond the table of {}", t.len()))
            }),
        }
    }
}

/// A point mass `mass · δ_location` added to the weight matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMass {
    pub location: Rational,
    pub mass: RatMatrix,
}

/// A matrix of measures given through its entrywise moment sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentFunctional {
    size: usize,
    entries: Vec<MomentSequence>,
    masses: Vec<PointMass>,
}

impl MomentFunctional {
    pub fn new(size: usize, entries: Vec<MomentSequence>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::SizeMismatch("one moment sequence per entry".into()));
        }
        Ok(MomentFunctional {
            size,
            entries,
            masses: Vec::new(),
        })
    }

    /// `e^{-√x} x^{α/2} [[x^{-1/2}, 1], [1, x^{1/2}]]` on `[0, ∞)`, whose entry
    /// moments are `2·(2j + k + l + α)!`. Only nonnegative integer `α` keeps
    /// the moments rational.
    pub fn sqrt_laguerre(alpha: &Rational) -> Result<Self> {
        let a = as_nonnegative_integer(alpha).ok_or_else(|| {
            Error::IrrationalMoments(format!("alpha = {alpha} is not a nonnegative integer"))
        })?;
        let entries = (0..2)
            .flat_map(|k| (0..2).map(move |l| (k, l)))
            .map(|(k, l)| MomentSequence::ShiftedFactorial {
                scale: int(2),
                shift: k + l + a,
            })
            .collect();
        Self::new(2, entries)
    }

    /// Adds `mass · δ_location`.
    pub fn with_mass(mut self, location: Rational, mass: RatMatrix) -> Result<Self> {
        if mass.rows() != self.size || mass.cols() != self.size {
            return Err(Error::SizeMismatch("point mass size".into()));
        }
        self.masses.push(PointMass { location, mass });
        Ok(self)
    }

    /// The `(2/R) δ_0` term in the top-left entry.
    pub fn with_delta0(self, r: &Rational) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::DegenerateParameters("R = 0".into()));
        }
        let mut m = RatMatrix::zeros(self.size, self.size);
        m.set(0, 0, int(2) / r);
        self.with_mass(Rational::zero(), m)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `∫ x^j dW_{k,l}`, point masses included.
    pub fn moment(&self, k: usize, l: usize, j: usize) -> Result<Rational> {
        let mut v = self.entries[k * self.size + l].moment(j)?;
        for pm in &self.masses {
            let w = pm.mass.get(k, l);
            if !w.is_zero() {
                let xj = if j == 0 {
                    Rational::one()
                } else {
                    num_traits::pow(pm.location.clone(), j)
                };
                v += w * xj;
            }
        }
        Ok(v)
    }
}

/// `∫ P_m dW P_n^T`, computed from moments.
pub fn moment_gram(pm: &MatPoly, pn: &MatPoly, w: &MomentFunctional) -> Result<RatMatrix> {
    let size = w.size();
    if pm.size() != size || pn.size() != size {
        return Err(Error::SizeMismatch("family and weight sizes differ".into()));
    }
    let mut cache: Vec<Vec<Vec<Option<Rational>>>> = vec![vec![Vec::new(); size]; size];
    let mut mu = |k: usize, l: usize, j: usize| -> Result<Rational> {
        let slot = &mut cache[k][l];
        if slot.len() <= j {
            slot.resize(j + 1, None);
        }
        if let Some(v) = &slot[j] {
            return Ok(v.clone());
        }
        let v = w.moment(k, l, j)?;
        slot[j] = Some(v.clone());
        Ok(v)
    };
    let mut out = RatMatrix::zeros(size, size);
    for i in 0..size {
        for j in 0..size {
            let mut acc = Rational::zero();
            for k in 0..size {
                let f = pm.get(i, k);
                for l in 0..size {
                    let g = pn.get(j, l);
                    for (a, fa) in f.coeffs().iter().enumerate() {
                        if fa.is_zero() {
                            continue;
                        }
                        for (b, gb) in g.coeffs().iter().enumerate() {
                            if !gb.is_zero() {
                                acc += fa * gb * mu(k, l, a + b)?;
                            }
                        }
                    }
                }
            }
            out.set(i, j, acc);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::families::{Family, FamilySpec};
    use crate::residue::{fold_family, FoldConfig};

    #[test]
    fn first_moment() {
        let w = MomentFunctional::sqrt_laguerre(&int(0)).unwrap();
        assert_eq!(w.moment(0, 0, 0).unwrap(), int(2));
        assert_eq!(w.moment(0, 1, 1).unwrap(), int(12));
        let d = w.with_delta0(&int(7)).unwrap();
        assert_eq!(d.moment(0, 0, 0).unwrap(), int(2) + rat(2, 7));
        assert_eq!(d.moment(0, 0, 1).unwrap(), int(4));
    }

    #[test]
    fn non_integer_alpha_is_rejected() {
        assert!(matches!(
            MomentFunctional::sqrt_laguerre(&rat(1, 2)),
            Err(Error::IrrationalMoments(_))
        ));
    }

    #[test]
    fn laguerre_fold_gram_is_block_diagonal() {
        let f = Family::new(FamilySpec::laguerre(int(0))).unwrap();
        let cfg = FoldConfig::new(2).unwrap();
        let w = MomentFunctional::sqrt_laguerre(&int(0)).unwrap();
        let p0 = fold_family(&f, &cfg, 0).unwrap();
        let p1 = fold_family(&f, &cfg, 1).unwrap();
        assert!(moment_gram(&p0, &p1, &w).unwrap().is_zero());
        assert!(!moment_gram(&p1, &p1, &w).unwrap().is_zero());
    }
}
