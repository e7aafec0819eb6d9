//! Scalar polynomial families: monic Laguerre, monic Jacobi, and the extended
//! Krall-Laguerre and Krall-Jacobi families built from them by one Darboux step.

use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, parse_rational};
use crate::exact::{int, Poly, Rational};
use crate::residue::PolySource;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Laguerre,
    JacobiMonic,
    KrallLaguerre,
    KrallJacobi,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Laguerre => "laguerre",
            FamilyKind::JacobiMonic => "jacobi",
            FamilyKind::KrallLaguerre => "krall-laguerre",
            FamilyKind::KrallJacobi => "krall-jacobi",
        }
    }

    fn uses_beta(self) -> bool {
        matches!(self, FamilyKind::JacobiMonic | FamilyKind::KrallJacobi)
    }

    fn uses_r(self) -> bool {
        matches!(self, FamilyKind::KrallLaguerre | FamilyKind::KrallJacobi)
    }
}

impl FromStr for FamilyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "laguerre" => Ok(FamilyKind::Laguerre),
            "jacobi" | "jacobi-monic" => Ok(FamilyKind::JacobiMonic),
            "krall-laguerre" => Ok(FamilyKind::KrallLaguerre),
            "krall-jacobi" => Ok(FamilyKind::KrallJacobi),
            other => Err(Error::Parse(format!("unknown family kind {other:?}"))),
        }
    }
}

/// A family kind together with its rational parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub alpha: Rational,
    pub beta: Rational,
    pub r: Rational,
}

fn ratio(num: Rational, den: Rational, what: impl FnOnce() -> String) -> Result<Rational> {
    if den.is_zero() {
        Err(Error::DegenerateParameters(what()))
    } else {
        Ok(num / den)
    }
}

impl FamilySpec {
    pub fn laguerre(alpha: Rational) -> Self {
        Self::build(
            FamilyKind::Laguerre,
            alpha,
            Rational::zero(),
            Rational::zero(),
        )
    }

    pub fn jacobi(alpha: Rational, beta: Rational) -> Self {
        Self::build(FamilyKind::JacobiMonic, alpha, beta, Rational::zero())
    }

    pub fn krall_laguerre(alpha: Rational, r: Rational) -> Self {
        Self::build(FamilyKind::KrallLaguerre, alpha, Rational::zero(), r)
    }

    pub fn krall_jacobi(alpha: Rational, beta: Rational, r: Rational) -> Self {
        Self::build(FamilyKind::KrallJacobi, alpha, beta, r)
    }

    fn build(kind: FamilyKind, alpha: Rational, beta: Rational, r: Rational) -> Self {
        FamilySpec {
            kind,
            alpha,
            beta,
            r,
        }
    }

    /// Checks the parameter ranges: `α > -1`, and `β > -1` for Jacobi kinds.
    pub fn validate(&self) -> Result<()> {
        let minus_one = -Rational::one();
        if self.alpha <= minus_one {
            return Err(Error::InvalidParameter(format!(
                "alpha = {} must exceed -1",
                format_rational(&self.alpha)
            )));
        }
        if self.kind.uses_beta() && self.beta <= minus_one {
            return Err(Error::InvalidParameter(format!(
                "beta = {} must exceed -1",
                format_rational(&self.beta)
            )));
        }
        Ok(())
    }

    fn s(&self) -> Rational {
        &self.alpha + &self.beta
    }

    // Krall-Laguerre

    pub fn kl_x(&self, n: usize) -> Result<Rational> {
        let (al, r, n) = (&self.alpha, &self.r, int(n as i64));
        let num = int(2) * &n * &n + int(2) * (r - int(1)) * &n - r;
        Ok(al + ratio(num, &n - int(1) + r, || format!("n-1+R = 0 at n = {n}"))?)
    }

    pub fn kl_y(&self, n: usize) -> Result<Rational> {
        let (al, r, n) = (&self.alpha, &self.r, int(n as i64));
        let num = &n * (&n + al) * (&n + int(1) + r);
        ratio(num, &n + r, || format!("n+R = 0 at n = {n}"))
    }

    pub fn kl_xbar(&self, n: usize) -> Result<Rational> {
        let (al, r, n) = (&self.alpha, &self.r, int(n as i64));
        let num = int(2) * &n * &n + int(2) * (r - int(1)) * &n - r;
        Ok(al + ratio(num, &n + r, || format!("n+R = 0 at n = {n}"))?)
    }

    pub fn kl_ybar(&self, n: usize) -> Result<Rational> {
        let (al, r, n) = (&self.alpha, &self.r, int(n as i64));
        let num = &n * (&n + al) * (&n - int(1) + r);
        ratio(num, &n + r, || format!("n+R = 0 at n = {n}"))
    }

    // Monic Jacobi

    /// `a_n` of `x p_n = a_n p_{n-1} + b_{n+1} p_n + p_{n+1}`, `n ≥ 1`.
    pub fn jacobi_a(&self, n: usize) -> Result<Rational> {
        let (al, be, s) = (&self.alpha, &self.beta, self.s());
        if n == 1 {
            let num = int(4) * (int(1) + al) * (int(1) + be);
            let den = (int(2) + &s) * (int(2) + &s) * (int(3) + &s);
            return ratio(num, den, || "a_1 denominator vanishes".into());
        }
        let nn = int(n as i64);
        let t = int(2) * &nn + &s;
        let num = int(4) * &nn * (&nn + &s) * (&nn + al) * (&nn + be);
        let den = (&t - int(1)) * &t * &t * (&t + int(1));
        ratio(num, den, || format!("a_n denominator vanishes at n = {n}"))
    }

    /// `b_n`, `n ≥ 1`.
    pub fn jacobi_b(&self, n: usize) -> Result<Rational> {
        let (al, be, s) = (&self.alpha, &self.beta, self.s());
        if n == 1 {
            return ratio(be - al, &s + int(2), || "b_1 denominator vanishes".into());
        }
        let t = int(2 * n as i64) + &s;
        ratio(be * be - al * al, (&t - int(2)) * &t, || {
            format!("b_n denominator vanishes at n = {n}")
        })
    }

    // Krall-Jacobi

    pub fn theta(&self, n: usize) -> Rational {
        let nn = int(n as i64);
        &nn * &nn + self.s() * &nn + &self.r
    }

    pub fn kj_x(&self, n: usize) -> Result<Rational> {
        if n == 0 {
            return Err(Error::InvalidParameter("x_n is defined for n >= 1".into()));
        }
        let (al, be, r, s) = (&self.alpha, &self.beta, &self.r, self.s());
        let nn = int(n as i64);
        let d1 = &s + &nn - int(1);
        let d2 = &s + int(2) * &nn - int(2);
        let d3 = &s + int(2) * &nn;
        let inner = al * be
            + be * be
            + int(2) * &nn * al
            + int(2) * (&nn - int(1)) * be
            + int(2) * &nn * (&nn - int(1));
        let first = ratio(int(2) * (&s + &nn) * inner, &d1 * &d2 * &d3, || {
            format!("x_n denominator vanishes at n = {n}")
        })?;
        let second = ratio(
            int(2) * (al + &nn - int(1)) * r,
            &d1 * &d2 * self.theta(n - 1),
            || format!("x_n denominator vanishes at n = {n}"),
        )?;
        Ok(first - second)
    }

    pub fn kj_y(&self, n: usize) -> Result<Rational> {
        let th = self.theta(n);
        ratio(self.jacobi_a(n)? * self.theta(n + 1), th, || {
            format!("theta_n = 0 at n = {n}")
        })
    }

    pub fn kj_xbar(&self, n: usize) -> Result<Rational> {
        if n == 0 {
            return Err(Error::InvalidParameter("x̄_n is defined for n >= 1".into()));
        }
        let (al, be, r, s) = (&self.alpha, &self.beta, &self.r, self.s());
        let nn = int(n as i64);
        let d1 = &s + &nn;
        let d2 = &s + int(2) * &nn - int(2);
        let d3 = &s + int(2) * &nn;
        let inner = al * be
            + be * be
            + int(2) * (&nn - int(1)) * al
            + int(2) * &nn * be
            + int(2) * &nn * (&nn - int(1));
        let first = ratio(
            int(2) * (&s + &nn - int(1)) * inner,
            &d1 * &d2 * &d3,
            || format!("x̄_n denominator vanishes at n = {n}"),
        )?;
        let second = ratio(int(2) * (al + &nn) * r, &d1 * &d3 * self.theta(n), || {
            format!("x̄_n denominator vanishes at n = {n}")
        })?;
        Ok(first + second)
    }

    /// `ȳ_n = x_{n+1}(x_{n+2} - b_{n+1} - b_{n+2} - 2) - y_{n+1} + a_n + a_{n+1} + (b_{n+1} + 1)^2`.
    pub fn kj_ybar(&self, n: usize) -> Result<Rational> {
        let b1 = self.jacobi_b(n + 1)?;
        let b2 = self.jacobi_b(n + 2)?;
        let an = if n == 0 {
            Rational::zero()
        } else {
            self.jacobi_a(n)?
        };
        let bp = &b1 + int(1);
        Ok(
            self.kj_x(n + 1)? * (self.kj_x(n + 2)? - &b1 - b2 - int(2)) - self.kj_y(n + 1)?
                + an
                + self.jacobi_a(n + 1)?
                + &bp * &bp,
        )
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:alpha={}",
            self.kind.name(),
            format_rational(&self.alpha)
        )?;
        if self.kind.uses_beta() {
            write!(f, ",beta={}", format_rational(&self.beta))?;
        }
        if self.kind.uses_r() {
            write!(f, ",R={}", format_rational(&self.r))?;
        }
        Ok(())
    }
}

impl Serialize for FamilySpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses `"kind:alpha=p/q,beta=p/q,R=p/q"`; omitted parameters default to 0.
impl FromStr for FamilySpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (kind, params) = s.split_once(':').unwrap_or((s, ""));
        let kind: FamilyKind = kind.parse()?;
        let mut spec =
            FamilySpec::build(kind, Rational::zero(), Rational::zero(), Rational::zero());
        for item in params.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {item:?}")))?;
            let value = parse_rational(value)?;
            match key.trim() {
                "alpha" | "a" => spec.alpha = value,
                "beta" | "b" if kind.uses_beta() => spec.beta = value,
                "R" | "r" if kind.uses_r() => spec.r = value,
                other => {
                    return Err(Error::Parse(format!(
                        "parameter {other:?} does not apply to {}",
                        kind.name()
                    )))
                }
            }
        }
        spec.validate()?;
        Ok(spec)
    }
}

/// `(upper + x·mid + y·lower) / divisor`, failing unless the division is exact.
/// This is the Darboux step that produces both Krall families.
pub fn darboux_quotient(
    upper: &Poly,
    mid: &Poly,
    lower: Option<&Poly>,
    x: &Rational,
    y: &Rational,
    divisor: &Poly,
) -> Result<Poly> {
    let mut num = upper + &mid.scale(x);
    if let Some(l) = lower {
        num = &num + &l.scale(y);
    }
    num.div_exact(divisor)
}

/// A family with append-only caches of its polynomials and of the classical
/// family it is built from.
#[derive(Debug)]
pub struct Family {
    spec: FamilySpec,
    cache: Mutex<Vec<Poly>>,
    base: Mutex<Vec<Poly>>,
}

impl Family {
    pub fn new(spec: FamilySpec) -> Result<Self> {
        spec.validate()?;
        Ok(Family {
            spec,
            cache: Mutex::new(Vec::new()),
            base: Mutex::new(Vec::new()),
        })
    }

    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    /// The `n`-th polynomial of the classical family underlying this one
    /// (Laguerre for Laguerre kinds, monic Jacobi for Jacobi kinds).
    pub fn base_poly(&self, n: usize) -> Result<Poly> {
        let mut base = self.base.lock().expect("family cache poisoned");
        while base.len() <= n {
            let k = base.len();
            let next = match self.spec.kind {
                FamilyKind::Laguerre | FamilyKind::KrallLaguerre => {
                    laguerre_step(&self.spec.alpha, k, &base)
                }
                FamilyKind::JacobiMonic | FamilyKind::KrallJacobi => {
                    jacobi_step(&self.spec, k, &base)?
                }
            };
            base.push(next);
        }
        Ok(base[n].clone())
    }

    pub fn poly(&self, n: usize) -> Result<Poly> {
        if matches!(
            self.spec.kind,
            FamilyKind::Laguerre | FamilyKind::JacobiMonic
        ) {
            return self.base_poly(n);
        }
        if let Some(p) = self.cache.lock().expect("family cache poisoned").get(n) {
            return Ok(p.clone());
        }
        // generate outside the cache lock; the base cache has its own lock
        self.base_poly(n + 1)?;
        let mut cache = self.cache.lock().expect("family cache poisoned");
        while cache.len() <= n {
            let k = cache.len();
            let p = self.generate(k)?;
            cache.push(p);
        }
        Ok(cache[n].clone())
    }

    /// Builds `p_n` from scratch, bypassing the family cache.
    pub fn generate(&self, n: usize) -> Result<Poly> {
        let base = |k: usize| self.base_poly(k);
        match self.spec.kind {
            FamilyKind::Laguerre | FamilyKind::JacobiMonic => base(n),
            FamilyKind::KrallLaguerre => {
                let lower = if n >= 1 { Some(base(n - 1)?) } else { None };
                let y = if n >= 1 {
                    self.spec.kl_y(n)?
                } else {
                    Rational::zero()
                };
                darboux_quotient(
                    &base(n + 1)?,
                    &base(n)?,
                    lower.as_ref(),
                    &self.spec.kl_x(n + 1)?,
                    &y,
                    &Poly::x(),
                )
            }
            FamilyKind::KrallJacobi => {
                let lower = if n >= 1 { Some(base(n - 1)?) } else { None };
                let y = if n >= 1 {
                    self.spec.kj_y(n)?
                } else {
                    Rational::zero()
                };
                darboux_quotient(
                    &base(n + 1)?,
                    &base(n)?,
                    lower.as_ref(),
                    &self.spec.kj_x(n + 1)?,
                    &y,
                    &Poly::from_ints(&[1, 1]),
                )
            }
        }
    }

    pub fn polys(&self, count: usize) -> Result<Vec<Poly>> {
        (0..count).map(|n| self.poly(n)).collect()
    }
}

impl PolySource for Family {
    fn poly(&self, n: usize) -> Result<Poly> {
        Family::poly(self, n)
    }
}

fn laguerre_step(alpha: &Rational, k: usize, prev: &[Poly]) -> Poly {
    // L_k = (x - (2k-1+α)) L_{k-1} - (k-1)(k-1+α) L_{k-2}
    if k == 0 {
        return Poly::one();
    }
    let kk = int(k as i64);
    let lin = Poly::linear(Rational::one(), -(int(2) * &kk - int(1) + alpha));
    let mut p = &lin * &prev[k - 1];
    if k >= 2 {
        let c = (&kk - int(1)) * (&kk - int(1) + alpha);
        p = &p - &prev[k - 2].scale(&c);
    }
    p
}

fn jacobi_step(spec: &FamilySpec, k: usize, prev: &[Poly]) -> Result<Poly> {
    // p_k = (x - b_k) p_{k-1} - a_{k-1} p_{k-2}
    if k == 0 {
        return Ok(Poly::one());
    }
    let lin = Poly::linear(Rational::one(), -spec.jacobi_b(k)?);
    let mut p = &lin * &prev[k - 1];
    if k >= 2 {
        p = &p - &prev[k - 2].scale(&spec.jacobi_a(k - 1)?);
    }
    Ok(p)
}

/// Monic Laguerre polynomial `L^α_n`.
pub fn laguerre(alpha: &Rational, n: usize) -> Poly {
    let mut v = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let p = laguerre_step(alpha, k, &v);
        v.push(p);
    }
    v.pop().expect("nonempty")
}

pub fn jacobi_monic(alpha: &Rational, beta: &Rational, n: usize) -> Result<Poly> {
    Family::new(FamilySpec::jacobi(alpha.clone(), beta.clone()))?.poly(n)
}

pub fn krall_laguerre(alpha: &Rational, r: &Rational, n: usize) -> Result<Poly> {
    Family::new(FamilySpec::krall_laguerre(alpha.clone(), r.clone()))?.poly(n)
}

pub fn krall_jacobi(alpha: &Rational, beta: &Rational, r: &Rational, n: usize) -> Result<Poly> {
    Family::new(FamilySpec::krall_jacobi(
        alpha.clone(),
        beta.clone(),
        r.clone(),
    ))?
    .poly(n)
}
