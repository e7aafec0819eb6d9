use num_traits::{One, Zero};
use serde_json::{json, Value};

use matfold_core::diffop::builtin::{
    kj_eigenvalue, kj_p, kj_pq, kj_q, kj_sample_display, kj_shift_op, krall_laguerre_op,
};
use matfold_core::diffop::{fold_operator_2x2, ScalarDiffOp};
use matfold_core::eigen::{
    compute_eigenvalues, eval_fit, fit_eigenvalue_poly, scalar_space, solve_operator_space,
    EigenSolveResult, MatFamily, SolveConfig,
};
use matfold_core::recurrence::{family_recurrence, make_monic, verify_banded};
use matfold_core::residue::fold_sequence;
use matfold_core::{
    int, Family, FamilySpec, FoldConfig, MatDiffOp, MatPoly, Poly, RatMatrix, Rational, Result,
};

use super::{mat2, q, qp, s};
use crate::report::{to_json, Report};

fn kj(al: &Rational, be: &Rational, r: &Rational) -> Result<Family> {
    Family::new(FamilySpec::krall_jacobi(al.clone(), be.clone(), r.clone()))
}

fn grid() -> Vec<(Rational, Rational, Rational)> {
    let mut out = Vec::new();
    for a in ["1/2", "1", "3/2"] {
        let al = q(a);
        for be in [int(0), q("7/8"), &al + int(1)] {
            for r in ["2", "5", "7"] {
                out.push((al.clone(), be.clone(), q(r)));
            }
        }
    }
    out
}

fn sample() -> (Rational, Rational, Rational) {
    (q("3/2"), q("7/8"), q("7"))
}

fn folded(f: Family) -> MatFamily {
    MatFamily::folded(f, FoldConfig::new(2).expect("N = 2"))
}

fn eigen_failures(
    op: &ScalarDiffOp,
    f: &Family,
    n_max: usize,
    lambda: impl Fn(usize) -> Rational,
) -> Result<Vec<usize>> {
    let mut bad = Vec::new();
    for n in 0..=n_max {
        let p = f.poly(n)?;
        if op.apply(&p) != p.scale(&lambda(n)) {
            bad.push(n);
        }
    }
    Ok(bad)
}

pub fn scalar() -> Report {
    let mut rep = Report::new("krall-jacobi");
    for (al, be, r) in grid() {
        let spec = FamilySpec::krall_jacobi(al.clone(), be.clone(), r.clone());
        let t = spec.to_string();
        rep.check(
            &format!("dual-relation/{t}"),
            "Krall-Jacobi dual relation with corrected ybar",
            || {
                let f = kj(&al, &be, &r)?;
                let x1 = Poly::from_ints(&[1, 1]);
                let mut bad = Vec::new();
                for n in 0..=15 {
                    let mut rhs = &f.poly(n + 1)? + &f.poly(n)?.scale(&spec.kj_xbar(n + 1)?);
                    if n >= 1 {
                        rhs = &rhs + &f.poly(n - 1)?.scale(&spec.kj_ybar(n)?);
                    }
                    if &x1 * &f.base_poly(n)? != rhs {
                        bad.push(n);
                    }
                }
                Ok((bad.is_empty(), json!({ "n_max": 15, "failures": bad })))
            },
        );
        rep.check(
            &format!("five-term/{t}"),
            "Krall-Jacobi five-term recurrence",
            || {
                let report = verify_banded(&kj(&al, &be, &r)?, &family_recurrence(&spec, 14)?, 12)?;
                Ok((report.pass(), to_json(&report)))
            },
        );
        rep.check(
            &format!("pq-eigenvalues/{t}"),
            "Krall-Jacobi PQ eigenvalues",
            || {
                let f = kj(&al, &be, &r)?;
                let bad = eigen_failures(&kj_pq(&al, &be, &r), &f, 12, |n| {
                    kj_eigenvalue(&al, &be, &r, n)
                })?;
                Ok((bad.is_empty(), json!({ "n_max": 12, "failures": bad })))
            },
        );
    }
    let (al, be, r) = sample();
    rep.check("composition-order", "Krall-Jacobi PQ eigenvalues", || {
        let f = kj(&al, &be, &r)?;
        let qp_op = kj_q(&al, &be, &r).compose(&kj_p(&al, &be, &r));
        let bad = eigen_failures(&qp_op, &f, 12, |n| kj_eigenvalue(&al, &be, &r, n))?;
        Ok((!bad.is_empty(), json!({ "qp_first_failure": bad.first() })))
    });
    rep.check("pq-eigenvalue-fit", "Krall-Jacobi PQ eigenvalues", || {
        let f = kj(&al, &be, &r)?;
        let op = MatDiffOp::from_scalar(&kj_pq(&al, &be, &r));
        let table = compute_eigenvalues(&op, &MatFamily::scalar(f), 0..=12)?;
        let fit = fit_eigenvalue_poly(&table, 4)?;
        let pass = (0..=30).all(|n| eval_fit(&fit, n).get(0, 0) == &kj_eigenvalue(&al, &be, &r, n));
        Ok((pass, to_json(&fit)))
    });
    rep.check(
        "sample-operator-display",
        "Krall-Jacobi fourth-order operator display",
        || {
            let diff = kj_pq(&al, &be, &r).add(&kj_sample_display().scale(&int(-1)));
            // R(R + α + β + 1) = 581/8
            let shift = q("581/8");
            let pass = diff == ScalarDiffOp::identity().scale(&shift)
                && shift == &r * (&r + &al + &be + int(1));
            Ok((pass, json!({ "additive_constant": s(&shift) })))
        },
    );
    rep
}

fn solve(fam: &MatFamily, m: usize) -> Result<EigenSolveResult> {
    solve_operator_space(fam, &SolveConfig::new(m))
}

/// Leading terms of the displayed order-6 operator: `(x-1)³x³ I` and
/// `3/16 [[(x-1)²x²(107x-40), 5(x-1)²x²], [5(x-1)²x³, (x-1)²x²(123x-56)]]`.
fn order6_display() -> (MatPoly, MatPoly) {
    let xm1 = qp(&["-1", "1"]);
    let x = Poly::x();
    let base = &(&xm1 * &xm1) * &(&x * &x);
    let a6 = MatPoly::identity(2).mul_poly(&(&base * &(&xm1 * &x)));
    let a5 = mat2(
        &base * &qp(&["-40", "107"]),
        base.scale(&int(5)),
        (&base * &x).scale(&int(5)),
        &base * &qp(&["-56", "123"]),
    )
    .scale(&q("3/16"));
    (a6, a5)
}

pub fn generic() -> Report {
    let mut rep = Report::new("kj-generic");
    let (al, be, r) = sample();
    let fam = match kj(&al, &be, &r) {
        Ok(f) => folded(f),
        Err(e) => {
            rep.check("family", "Krall-Jacobi definition", || Err(e));
            return rep;
        }
    };
    for (m, expected) in [(3, 1), (4, 2)] {
        rep.check(
            &format!("dimension/order={m}"),
            "Krall-Jacobi matrix algebra dimensions",
            || {
                let res = solve(&fam, m)?;
                Ok((
                    res.dimension == expected,
                    json!({ "dimension": res.dimension, "history": res.provenance.history }),
                ))
            },
        );
    }
    let mut res6 = None;
    rep.check(
        "dimension/order=6",
        "Krall-Jacobi matrix algebra dimensions",
        || {
            let res = solve(&fam, 6)?;
            let pass = res.dimension == 3;
            let w = json!({ "dimension": res.dimension, "history": res.provenance.history });
            res6 = Some(res);
            Ok((pass, w))
        },
    );
    rep.check("order6-leading-terms", "Krall-Jacobi order-6 operator display", || {
        let res = res6.as_ref().ok_or(matfold_core::Error::NoSolution)?;
        let six = res.of_order(6);
        let (a6, a5) = order6_display();
        let pass = six.len() == 1 && six[0].operator.coeff(6) == a6 && six[0].operator.coeff(5) == a5;
        let w: Vec<Value> = six
            .iter()
            .map(|p| json!({ "a6": to_json(&p.operator.coeff(6)), "a5": to_json(&p.operator.coeff(5)) }))
            .collect();
        Ok((pass, json!(w)))
    });
    rep
}

/// The displayed first-order operator and its eigenvalue coefficients.
fn shift_order1(al: &Rational, r: &Rational) -> (MatDiffOp, Vec<RatMatrix>) {
    let be = al + int(1);
    let z = Poly::zero;
    let a1 = mat2(z(), qp(&["-1", "1"]), z(), z());
    let u = r / (int(2) * &be);
    let g0 = RatMatrix::from_rows(vec![
        vec![int(1) + &u, &be - &u],
        vec![Rational::zero(), Rational::zero()],
    ])
    .expect("2x2");
    let op = MatDiffOp::new(2, vec![MatPoly::constant(&g0), a1]).expect("2x2");
    (op, vec![g0, RatMatrix::from_ints(&[&[0, 1], &[0, 0]])])
}

/// The displayed second-order operator and its eigenvalue coefficients.
fn shift_order2(al: &Rational, r: &Rational) -> (MatDiffOp, Vec<RatMatrix>) {
    let z = Poly::zero;
    let xx = qp(&["0", "-1", "1"]);
    let a2 = mat2(z(), xx.clone(), z(), xx);
    let a1 = mat2(
        z(),
        Poly::linear(Rational::one(), al.clone()),
        z(),
        Poly::linear((int(2) * al + int(5)) / int(2), q("-3/2")),
    );
    let k = r * (int(3) * al + int(4)) / (int(4) * (al + int(1)));
    let a0 = RatMatrix::from_rows(vec![
        vec![
            -(int(4) * al + int(5)) / int(2) - &k,
            -(al + int(1)) * (al + int(1)) + &k,
        ],
        vec![Rational::zero(), Rational::zero()],
    ])
    .expect("2x2");
    let op = MatDiffOp::new(2, vec![MatPoly::constant(&a0), a1, a2]).expect("2x2");
    let g1 = RatMatrix::from_rows(vec![
        vec![Rational::zero(), Rational::zero()],
        vec![Rational::zero(), (int(2) * al + int(3)) / int(2)],
    ])
    .expect("2x2");
    (op, vec![a0, g1, RatMatrix::from_ints(&[&[0, 1], &[0, 1]])])
}

pub fn shift_loworder() -> Report {
    let mut rep = Report::new("kj-shift-loworder");
    for al in [q("1/2"), int(1)] {
        let be = &al + int(1);
        for r in [int(2), int(7)] {
            let spec = FamilySpec::krall_jacobi(al.clone(), be.clone(), r.clone());
            let t = spec.to_string();
            let fam = match Family::new(spec.clone()) {
                Ok(f) => folded(f),
                Err(e) => {
                    rep.check(&format!("family/{t}"), "Krall-Jacobi definition", || Err(e));
                    continue;
                }
            };
            let mut res3 = None;
            rep.check(
                &format!("dimensions/{t}"),
                "five-dimensional low-order space",
                || {
                    let dims = [solve(&fam, 1)?.dimension, solve(&fam, 2)?.dimension];
                    let res = solve(&fam, 3)?;
                    let pass = res.dimension == 5;
                    let w = json!({
                        "order1": dims[0],
                        "order2": dims[1],
                        "order3": res.dimension,
                        "third_order_new": res.dimension - dims[1],
                    });
                    res3 = Some(res);
                    Ok((pass, w))
                },
            );
            type Display = fn(&Rational, &Rational) -> (MatDiffOp, Vec<RatMatrix>);
            for (name, build) in [
                ("order1", shift_order1 as Display),
                ("order2", shift_order2 as Display),
            ] {
                let (op, gamma) = build(&al, &r);
                rep.check(
                    &format!("{name}-member/{t}"),
                    "low-order operator displays",
                    || {
                        let res = res3.as_ref().ok_or(matfold_core::Error::NoSolution)?;
                        Ok((res.contains(&op), json!(null)))
                    },
                );
                rep.check(
                    &format!("{name}-eigenvalues/{t}"),
                    "low-order operator displays",
                    || {
                        // the displayed eigenvalues are those of the monic family
                        let monic = make_monic(&fold_sequence(
                            &Family::new(spec.clone())?,
                            &FoldConfig::new(2)?,
                            13,
                        )?)?;
                        let table =
                            compute_eigenvalues(&op, &MatFamily::from_vec(2, monic.polys), 0..=12)?;
                        let bad: Vec<usize> = table
                            .iter()
                            .filter(|(n, g)| g != &eval_fit(&gamma, *n))
                            .map(|(n, _)| *n)
                            .collect();
                        Ok((bad.is_empty(), json!({ "n_max": 12, "failures": bad })))
                    },
                );
            }
            rep.check(
                &format!("scalar-space/{t}"),
                "unique scalar fourth-order operator",
                || {
                    let res = scalar_space(Family::new(spec.clone())?, &SolveConfig::new(4))?;
                    let pq = MatDiffOp::from_scalar(&kj_pq(&al, &be, &r));
                    let pass = res.dimension == 2 && res.contains(&pq);
                    Ok((pass, json!({ "dimension": res.dimension })))
                },
            );
            rep.check(
                &format!("r-free-display-not-eigen/{t}"),
                "scalar operator display for beta = alpha + 1",
                || {
                    let f = Family::new(spec.clone())?;
                    let op = MatDiffOp::from_scalar(&kj_shift_op(&al));
                    let res = compute_eigenvalues(&op, &MatFamily::scalar(f), 0..=6);
                    let first = match res {
                        Err(matfold_core::Error::NotAnEigenfunction(n)) => Some(n),
                        Err(e) => return Err(e),
                        Ok(_) => None,
                    };
                    Ok((first.is_some(), json!({ "first_failure": first })))
                },
            );
        }
    }
    rep
}

fn scalar_of(op: &MatDiffOp) -> ScalarDiffOp {
    ScalarDiffOp::new(op.coeffs().iter().map(|c| c.get(0, 0).clone()).collect())
}

/// Folds every basis element of the scalar space and tests membership in the
/// matrix space of the same order.
fn containment(f: Family, g: Family, m: usize) -> Result<(bool, Value)> {
    let scalar = scalar_space(f, &SolveConfig::new(m))?;
    let matrix = solve(&folded(g), m)?;
    let mut members = Vec::new();
    for p in &scalar.basis {
        let b = fold_operator_2x2(&scalar_of(&p.operator));
        members.push(matrix.contains(&b));
    }
    let pass = members.iter().all(|x| *x);
    Ok((
        pass,
        json!({
            "scalar_dimension": scalar.dimension,
            "matrix_dimension": matrix.dimension,
            "members": members,
        }),
    ))
}

pub fn one_way_street() -> Report {
    let mut rep = Report::new("one-way-street");
    rep.check(
        "krall-laguerre/alpha=1,R=2",
        "fold theorem containment",
        || {
            let spec = FamilySpec::krall_laguerre(int(1), int(2));
            let (pass, w) = containment(Family::new(spec.clone())?, Family::new(spec)?, 4)?;
            let direct = fold_operator_2x2(&krall_laguerre_op(&int(1), &int(2)));
            let ok = solve(
                &folded(Family::new(FamilySpec::krall_laguerre(int(1), int(2)))?),
                4,
            )?
            .contains(&direct);
            Ok((pass && ok, w))
        },
    );
    let (al, be, r) = sample();
    rep.check("krall-jacobi/generic", "fold theorem containment", || {
        containment(kj(&al, &be, &r)?, kj(&al, &be, &r)?, 4)
    });
    for (al, r) in [(q("1/2"), int(2)), (int(1), int(7))] {
        let be = &al + int(1);
        let t = FamilySpec::krall_jacobi(al.clone(), be.clone(), r.clone()).to_string();
        rep.check(
            &format!("strict-excess/{t}"),
            "matrix algebra exceeds the folded scalar one",
            || {
                let mut w = serde_json::Map::new();
                let mut pass = true;
                for m in [3, 4] {
                    let (contained, detail) = containment(kj(&al, &be, &r)?, kj(&al, &be, &r)?, m)?;
                    let sd = detail["scalar_dimension"].as_u64().unwrap_or(0);
                    let md = detail["matrix_dimension"].as_u64().unwrap_or(0);
                    pass &= contained && md > sd;
                    w.insert(format!("order{m}"), detail);
                }
                Ok((pass, Value::Object(w)))
            },
        );
    }
    rep
}
