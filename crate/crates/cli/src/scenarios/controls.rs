use serde_json::json;

use matfold_core::eigen::{compute_eigenvalues, solve_operator_space, MatFamily, SolveConfig};
use matfold_core::families::darboux_quotient;
use matfold_core::recurrence::{
    family_recurrence, make_monic, scalar_symmetrize, verify_banded, BandedRec, MomentFunctional,
};
use matfold_core::{int, Error, Family, FamilySpec, FoldConfig, MatDiffOp, MatPoly, Poly};

use super::q;
use crate::report::{to_json, Report};

fn expect_err<T>(
    r: matfold_core::Result<T>,
    want: impl Fn(&Error) -> bool,
) -> (bool, serde_json::Value) {
    match r {
        Ok(_) => (false, json!({ "error": null })),
        Err(e) => (want(&e), json!({ "error": e.to_string() })),
    }
}

pub fn negative_controls() -> Report {
    let mut rep = Report::new("negative-controls");
    rep.check("corrupted-band", "banded recurrence check", || {
        let spec = FamilySpec::krall_laguerre(int(1), int(2));
        let f = Family::new(spec.clone())?;
        let mut rec = family_recurrence(&spec, 14)?;
        rec.set(3, 1, rec.c(3, 1) + int(1));
        let report = verify_banded(&f, &rec, 12)?;
        Ok((report.failures == vec![3], to_json(&report)))
    });
    rep.check("not-an-eigenfunction", "eigenvalue recovery", || {
        let fam = MatFamily::folded(
            Family::new(FamilySpec::laguerre(int(0)))?,
            FoldConfig::new(2)?,
        );
        let mut a1 = MatPoly::zero(2);
        a1.set(0, 0, Poly::x());
        let op = MatDiffOp::new(2, vec![MatPoly::zero(2), a1])?;
        Ok(expect_err(compute_eigenvalues(&op, &fam, 0..6), |e| {
            matches!(e, Error::NotAnEigenfunction(_))
        }))
    });
    for (name, spec, divisor) in [
        (
            "krall-laguerre",
            FamilySpec::krall_laguerre(int(1), int(2)),
            Poly::x(),
        ),
        (
            "krall-jacobi",
            FamilySpec::krall_jacobi(q("3/2"), q("7/8"), int(7)),
            Poly::from_ints(&[1, 1]),
        ),
    ] {
        rep.check(
            &format!("perturbed-coefficient/{name}"),
            "Darboux construction",
            || {
                let f = Family::new(spec.clone())?;
                let (x, y) = if name == "krall-laguerre" {
                    (spec.kl_x(4)?, spec.kl_y(3)?)
                } else {
                    (spec.kj_x(4)?, spec.kj_y(3)?)
                };
                let (b4, b3, b2) = (f.base_poly(4)?, f.base_poly(3)?, f.base_poly(2)?);
                let exact = darboux_quotient(&b4, &b3, Some(&b2), &x, &y, &divisor)?;
                if exact != f.poly(3)? {
                    return Ok((false, json!({ "error": "unperturbed quotient differs" })));
                }
                let perturbed =
                    darboux_quotient(&b4, &b3, Some(&b2), &x, &(&y + q("1/1000")), &divisor);
                Ok(expect_err(perturbed, |e| matches!(e, Error::NotDivisible)))
            },
        );
    }
    rep.check(
        "singular-leading-coefficient",
        "monic normalization",
        || {
            let p = MatPoly::from_rows(vec![
                vec![Poly::one(), Poly::one()],
                vec![Poly::one(), Poly::one()],
            ])?;
            Ok(expect_err(make_monic(&[p]), |e| {
                matches!(e, Error::SingularLeadingCoefficient(0))
            }))
        },
    );
    rep.check("zero-band", "scalar symmetrization", || {
        let mut rec = BandedRec::new(2, int(0), vec![vec![int(1); 5]; 4])?;
        rec.set(2, -2, int(0));
        Ok(expect_err(scalar_symmetrize(&rec, 3), |e| {
            matches!(e, Error::ZeroBand { n: 2, k: -2 })
        }))
    });
    rep.check("irrational-moments", "matrix weight moments", || {
        Ok(expect_err(
            MomentFunctional::sqrt_laguerre(&q("1/2")),
            |e| matches!(e, Error::IrrationalMoments(_)),
        ))
    });
    rep.check("solver-index-limit", "operator space solver", || {
        let fam = MatFamily::folded(
            Family::new(FamilySpec::laguerre(int(0)))?,
            FoldConfig::new(2)?,
        );
        let mut cfg = SolveConfig::new(2);
        cfg.max_index = 3;
        Ok(expect_err(solve_operator_space(&fam, &cfg), |e| {
            matches!(e, Error::DidNotStabilize { .. })
        }))
    });
    rep.check("unknown-scenario", "scenario registry", || {
        Ok((super::find("no-such-scenario").is_none(), json!(null)))
    });
    rep
}
