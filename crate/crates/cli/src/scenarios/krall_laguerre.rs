use num_traits::{One, Zero};
use serde_json::{json, Value};

use matfold_core::diffop::builtin::{krall_laguerre_eigenvalue, krall_laguerre_op};
use matfold_core::diffop::fold_operator_2x2;
use matfold_core::eigen::{
    compute_eigenvalues, fit_eigenvalue_poly, scalar_space, solve_operator_space, MatFamily,
    SolveConfig,
};
use matfold_core::exact::is_positive_definite;
use matfold_core::exact::rational::format_rational;
use matfold_core::recurrence::{
    blocks_from_banded, factor_band_condition, family_recurrence, make_monic, matrix_symmetrize,
    moment_gram, monic_ttrr, scalar_symmetrize, verify_banded, verify_block_ttrr,
    verify_monic_ttrr, FactorBands, MatrixSymmetrization, MomentFunctional,
};
use matfold_core::residue::{fold_family, fold_sequence};
use matfold_core::{
    int, Family, FamilySpec, FoldConfig, MatDiffOp, MatPoly, Poly, RatMatrix, Rational, Result,
};

use super::{mat2, q, s};
use crate::report::{to_json, Report};

fn grid(alphas: &[&str]) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    for a in alphas {
        for r in ["2", "5", "7"] {
            out.push((q(a), q(r)));
        }
    }
    out
}

fn tag(a: &Rational, r: &Rational) -> String {
    format!("alpha={},R={}", format_rational(a), format_rational(r))
}

fn c(v: Rational) -> Poly {
    Poly::constant(v)
}

fn lin(s: Rational, c: Rational) -> Poly {
    Poly::linear(s, c)
}

/// The displayed `P_0` and `P_1` of the folded Krall-Laguerre family.
pub(crate) fn p0_p1_display(al: &Rational, r: &Rational) -> (MatPoly, MatPoly) {
    let one = Rational::one();
    let p0 = mat2(
        Poly::one(),
        Poly::zero(),
        c(-(al + (al + &one) * r) / (r + &one)),
        Poly::one(),
    );
    let (r2, r3) = (r + int(2), r + int(3));
    let p1 = mat2(
        lin(
            one.clone(),
            (al + int(2)) * ((al + &one) * r + int(2) * al) / &r2,
        ),
        c(-int(2) * ((al + int(2)) * r + int(2) * al + int(3)) / &r2),
        lin(
            -int(3) * ((al + int(3)) * r + int(3) * al + int(8)) / &r3,
            -(al + int(2)) * (al + int(3)) * ((al + &one) * r + int(3) * al) / &r3,
        ),
        lin(
            one,
            int(3) * (al + int(3)) * ((al + int(2)) * r + int(3) * al + int(4)) / &r3,
        ),
    );
    (p0, p1)
}

/// The displayed fourth-order operator `B` of the folded Krall-Laguerre family.
pub(crate) fn b_display(al: &Rational, r: &Rational) -> MatDiffOp {
    let p = |cs: Vec<Rational>| Poly::new(cs);
    let z = Rational::zero;
    let (four, eight) = (int(4), int(8));
    let a4 = MatPoly::identity(2).mul_poly(&Poly::monomial(Rational::one(), 3));
    let a3 = mat2(
        p(vec![z(), z(), al + int(5)]),
        p(vec![z(), z(), int(-1)]),
        p(vec![z(), z(), z(), int(-1)]),
        p(vec![z(), z(), al + int(7)]),
    );
    let a2 = mat2(
        p(vec![
            z(),
            (al * al + int(9) * al + int(15)) / &four,
            Rational::one() / &four,
        ]),
        p(vec![z(), -(r + al + int(6)) / int(2)]),
        p(vec![z(), z(), -(r + al + int(9)) / int(2)]),
        p(vec![
            z(),
            (al * al + int(15) * al + int(39)) / &four,
            Rational::one() / &four,
        ]),
    );
    let a1 = mat2(
        p(vec![
            al * (al + int(3)) / &eight,
            (int(2) * r + int(3)) / &eight,
        ]),
        p(vec![-((al + int(2)) * r + int(2) * al + int(3)) / &four]),
        p(vec![
            z(),
            -((al + int(4)) * r + int(4) * (al + int(3))) / &four,
        ]),
        p(vec![
            int(3) * (al + int(1)) * (al + int(4)) / &eight,
            (int(2) * r + int(5)) / &eight,
        ]),
    );
    let a0 = mat2(
        p(vec![-(r + int(1)) / &eight]),
        Poly::zero(),
        p(vec![-((al + int(1)) * r + al) / &eight]),
        Poly::zero(),
    );
    MatDiffOp::new(2, vec![a0, a1, a2, a3, a4]).expect("2x2")
}

/// `[[-(R+1)/8, 0], [0, 0]] + n diag((2R+1)/8, (2R+3)/8) + n²/4 I`.
fn b_eigen_display(r: &Rational) -> Vec<RatMatrix> {
    let eight = int(8);
    let d = |a: Rational, b: Rational| {
        RatMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => a.clone(),
            (1, 1) => b.clone(),
            _ => Rational::zero(),
        })
    };
    vec![
        d(-(r + int(1)) / &eight, Rational::zero()),
        d(
            (int(2) * r + int(1)) / &eight,
            (int(2) * r + int(3)) / &eight,
        ),
        RatMatrix::identity(2).scale(&q("1/4")),
    ]
}

fn kl(al: &Rational, r: &Rational) -> Result<Family> {
    Family::new(FamilySpec::krall_laguerre(al.clone(), r.clone()))
}

pub fn scalar() -> Report {
    let mut rep = Report::new("krall-laguerre-scalar");
    for (al, r) in grid(&["0", "1/2", "1"]) {
        let t = tag(&al, &r);
        rep.check(
            &format!("exact-construction/{t}"),
            "Krall-Laguerre definition",
            || {
                let f = kl(&al, &r)?;
                let ps = f.polys(21)?;
                let monic = ps
                    .iter()
                    .enumerate()
                    .all(|(n, p)| p.degree() == Some(n) && p.leading_coeff().is_one());
                Ok((monic, json!({ "n_max": 20 })))
            },
        );
        rep.check(
            &format!("five-term/{t}"),
            "Krall-Laguerre five-term recurrence",
            || {
                let spec = FamilySpec::krall_laguerre(al.clone(), r.clone());
                let rec = family_recurrence(&spec, 14)?;
                let report = verify_banded(&kl(&al, &r)?, &rec, 12)?;
                Ok((report.pass(), to_json(&report)))
            },
        );
        rep.check(
            &format!("fourth-order-equation/{t}"),
            "Krall-Laguerre fourth-order equation",
            || {
                let f = kl(&al, &r)?;
                let op = krall_laguerre_op(&al, &r);
                let mut bad = Vec::new();
                for n in 0..=12 {
                    let p = f.poly(n)?;
                    if op.apply(&p) != p.scale(&krall_laguerre_eigenvalue(&r, n)) {
                        bad.push(n);
                    }
                }
                Ok((bad.is_empty(), json!({ "n_max": 12, "failures": bad })))
            },
        );
        rep.check(
            &format!("p0-p1-display/{t}"),
            "Krall-Laguerre P_0, P_1 display",
            || {
                let f = kl(&al, &r)?;
                let cfg = FoldConfig::new(2)?;
                let (d0, d1) = p0_p1_display(&al, &r);
                let (p0, p1) = (fold_family(&f, &cfg, 0)?, fold_family(&f, &cfg, 1)?);
                Ok((p0 == d0 && p1 == d1, json!({ "p1": to_json(&p1) })))
            },
        );
    }
    for (al, r) in [(int(1), int(2)), (int(0), int(7))] {
        let t = tag(&al, &r);
        rep.check(
            &format!("scalar-space/{t}"),
            "unique fourth-order equation",
            || {
                let op = MatDiffOp::from_scalar(&krall_laguerre_op(&al, &r));
                let s3 = scalar_space(kl(&al, &r)?, &SolveConfig::new(3))?;
                let s4 = scalar_space(kl(&al, &r)?, &SolveConfig::new(4))?;
                let pass = s3.dimension == 1 && s4.dimension == 2 && s4.contains(&op);
                Ok((
                    pass,
                    json!({ "dim_order3": s3.dimension, "dim_order4": s4.dimension }),
                ))
            },
        );
    }
    rep
}

pub fn algebra() -> Report {
    let mut rep = Report::new("krall-laguerre-algebra");
    for (al, r) in [(int(1), int(2)), (int(0), int(7)), (q("1/2"), int(5))] {
        let t = tag(&al, &r);
        let fam = match kl(&al, &r) {
            Ok(f) => MatFamily::folded(f, FoldConfig::new(2).expect("N = 2")),
            Err(e) => {
                rep.check(&format!("family/{t}"), "Krall-Laguerre definition", || {
                    Err(e)
                });
                continue;
            }
        };
        rep.check(
            &format!("order3-only-identity/{t}"),
            "no lower-order operator",
            || {
                let res = solve_operator_space(&fam, &SolveConfig::new(3))?;
                let pass = res.dimension == 1 && res.basis[0].operator == MatDiffOp::identity(2);
                Ok((
                    pass,
                    json!({ "dimension": res.dimension, "history": res.provenance.history }),
                ))
            },
        );
        let b = b_display(&al, &r);
        rep.check(
            &format!("order4-space/{t}"),
            "Krall-Laguerre operator B display",
            || {
                let res = solve_operator_space(&fam, &SolveConfig::new(4))?;
                let normalized = b.add_identity(&((&r + int(1)) / int(8)));
                let pass = res.dimension == 2
                    && res.basis[0].operator == MatDiffOp::identity(2)
                    && res.basis[1].operator == normalized
                    && res.contains(&b);
                Ok((
                    pass,
                    json!({
                        "dimension": res.dimension,
                        "identity_shift": s(&((&r + int(1)) / int(8))),
                        "history": res.provenance.history,
                    }),
                ))
            },
        );
        rep.check(
            &format!("eigenvalue-fit/{t}"),
            "Krall-Laguerre eigenvalue display",
            || {
                let table = compute_eigenvalues(&b, &fam, 0..=10)?;
                let fit = fit_eigenvalue_poly(&table, 2)?;
                Ok((fit == b_eigen_display(&r), to_json(&fit)))
            },
        );
        rep.check(
            &format!("fold-of-scalar-operator/{t}"),
            "fold theorem",
            || {
                let folded = fold_operator_2x2(&krall_laguerre_op(&al, &r));
                let coords = solve_operator_space(&fam, &SolveConfig::new(4))?.membership(&folded);
                let pass = coords.is_some();
                let coords: Option<Vec<Value>> = coords.map(|v| v.iter().map(s).collect());
                Ok((pass, json!({ "coordinates": coords })))
            },
        );
    }
    rep
}

fn kl_closed_forms(r: &Rational, n: usize) -> (Rational, Rational, Rational) {
    let nn = int(n as i64);
    let n1 = &nn + int(1);
    let n2 = &nn + int(2);
    let nr = &nn + r;
    let a_sq = &n1 * &n1 * &n2 * &n2 * &nr * (&nr + int(3)) / ((&nr + int(1)) * (&nr + int(2)));
    let inner = int(2) * &n1 * r * r
        + (int(2) * &nn + int(1)) * (int(2) * &nn + int(3)) * r
        + int(2) * &nn * &n1 * &n2;
    let b_sq = int(4) * &n1 * &n1 * &inner * &inner
        / ((&nr + int(1)) * (&nr + int(1)) * &nr * (&nr + int(2)));
    let m = int(2) * &nn * &n1 + (int(2) * &nn + int(1)) * r;
    let cc = (&nn * &nn * (&nr + int(1)) * (&nr + int(1)) + &n1 * &n1 * &nr * &nr + &m * &m)
        / (&nr * (&nr + int(1)));
    (a_sq, b_sq, cc)
}

/// Folds `spec` with the recurrence pivot, builds the monic block recurrence
/// and runs the matrix symmetrization up to `n_max`.
pub(crate) fn matrix_symmetrization(
    spec: &FamilySpec,
    n_max: usize,
) -> Result<(MatrixSymmetrization, Value)> {
    let blocks = n_max + 2;
    let rec = family_recurrence(spec, 2 * blocks)?;
    let ttrr = blocks_from_banded(&rec, blocks)?;
    let cfg = FoldConfig::new(2)?.with_shift(rec.a.clone());
    let fam = fold_sequence(&Family::new(spec.clone())?, &cfg, blocks + 1)?;
    let block_failures = verify_block_ttrr(&ttrr, &fam)?;
    let monic = make_monic(&fam)?;
    let mt = monic_ttrr(&ttrr, &monic.leading)?;
    let monic_failures = verify_monic_ttrr(&mt, &monic.polys)?;
    let sym = matrix_symmetrize(&mt, n_max)?;
    let info = json!({
        "block_failures": block_failures,
        "monic_failures": monic_failures,
        "dimension": sym.dimension,
        "first_indefinite": sym.first_indefinite,
    });
    if !block_failures.is_empty() || !monic_failures.is_empty() {
        return Err(matfold_core::Error::InvalidParameter(format!(
            "block recurrence does not match the family: {info}"
        )));
    }
    Ok((sym, info))
}

/// Checks `S_n` and `B̂_n S_n` symmetric and `S_n = Â_n S_{n-1}` for the witness.
fn transport_holds(spec: &FamilySpec, sym: &MatrixSymmetrization, n_max: usize) -> Result<bool> {
    let blocks = n_max + 2;
    let rec = family_recurrence(spec, 2 * blocks)?;
    let ttrr = blocks_from_banded(&rec, blocks)?;
    let cfg = FoldConfig::new(2)?.with_shift(rec.a.clone());
    let fam = fold_sequence(&Family::new(spec.clone())?, &cfg, blocks + 1)?;
    let mt = monic_ttrr(&ttrr, &make_monic(&fam)?.leading)?;
    for (n, sn) in sym.s.iter().enumerate() {
        if !sn.is_symmetric() || !(&mt.b[n] * sn).is_symmetric() {
            return Ok(false);
        }
        if n > 0 && &(&mt.a[n] * &sym.s[n - 1]) != sn {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn symmetrization() -> Report {
    let mut rep = Report::new("symmetrization");
    for (al, r) in grid(&["0", "1/2", "1", "3/2"]) {
        let t = tag(&al, &r);
        let spec = FamilySpec::krall_laguerre(al.clone(), r.clone());
        let expect = al.is_zero();
        rep.check(
            &format!("kl-scalar/{t}"),
            "Krall-Laguerre scalar symmetrization",
            || {
                let res = scalar_symmetrize(&family_recurrence(&spec, 17)?, 14)?;
                let mut pass = res.success == expect;
                if res.success {
                    for n in 0..=12 {
                        let (a2, b2, cc) = kl_closed_forms(&r, n);
                        pass &= res.a_sq[n] == a2 && res.b_sq[n] == b2 && res.c[n] == cc;
                    }
                }
                Ok((
                    pass,
                    json!({ "success": res.success, "first_failure": res.first_failure }),
                ))
            },
        );
        rep.check(
            &format!("kl-displayed-condition/{t}"),
            "Krall-Laguerre symmetrization condition",
            || {
                let fb = FactorBands::for_family(&spec, 16)?;
                let holds: Vec<bool> = (1..=12).map(|n| factor_band_condition(&fb, n)).collect();
                let pass = if expect {
                    holds.iter().all(|h| *h)
                } else {
                    holds.iter().all(|h| !*h)
                };
                Ok((pass, json!({ "holds": holds })))
            },
        );
    }
    for (al, r) in grid(&["0", "1/2", "1"]) {
        let t = tag(&al, &r);
        let spec = FamilySpec::krall_laguerre(al.clone(), r.clone());
        rep.check(
            &format!("kl-matrix/{t}"),
            "Krall-Laguerre matrix symmetrization",
            || {
                let (sym, info) = matrix_symmetrization(&spec, 10)?;
                let mut pass = sym.exists == al.is_zero();
                if sym.exists {
                    pass &= transport_holds(&spec, &sym, 10)?;
                }
                Ok((pass, json!({ "exists": sym.exists, "detail": info })))
            },
        );
    }
    for a in ["1/2", "1", "3/2"] {
        let al = q(a);
        for be in [int(0), q("7/8"), &al + int(1)] {
            for r in [int(2), int(5), int(7)] {
                let spec = FamilySpec::krall_jacobi(al.clone(), be.clone(), r.clone());
                let t = format!("{}", spec);
                let expect = be.is_zero();
                rep.check(
                    &format!("kj-scalar/{t}"),
                    "Krall-Jacobi scalar symmetrization",
                    || {
                        let res = scalar_symmetrize(&family_recurrence(&spec, 14)?, 12)?;
                        Ok((
                            res.success == expect,
                            json!({ "success": res.success, "first_failure": res.first_failure }),
                        ))
                    },
                );
                rep.check(
                    &format!("kj-matrix/{t}"),
                    "Krall-Jacobi matrix symmetrization",
                    || {
                        let (sym, info) = matrix_symmetrization(&spec, 8)?;
                        let mut pass = sym.exists == expect;
                        if sym.exists {
                            pass &= transport_holds(&spec, &sym, 8)?;
                        }
                        Ok((pass, json!({ "exists": sym.exists, "detail": info })))
                    },
                );
            }
        }
    }
    rep
}

pub fn orthogonality() -> Report {
    let mut rep = Report::new("orthogonality");
    rep.check("first-moment", "weight moments", || {
        let w = MomentFunctional::sqrt_laguerre(&int(0))?;
        Ok((
            w.moment(0, 0, 0)? == int(2),
            json!({ "mu0": s(&w.moment(0, 0, 0)?) }),
        ))
    });
    let cases: Vec<(&str, FamilySpec, Option<Rational>)> = vec![
        ("laguerre/alpha=0", FamilySpec::laguerre(int(0)), None),
        (
            "krall-laguerre/alpha=0,R=7",
            FamilySpec::krall_laguerre(int(0), int(7)),
            Some(int(7)),
        ),
    ];
    for (name, spec, delta) in cases {
        rep.check(
            &format!("gram-block-diagonal/{name}"),
            "matrix weight with point mass",
            || {
                let mut w = MomentFunctional::sqrt_laguerre(&int(0))?;
                if let Some(r) = &delta {
                    w = w.with_delta0(r)?;
                }
                let fam = fold_sequence(&Family::new(spec.clone())?, &FoldConfig::new(2)?, 9)?;
                let mut nonzero = Vec::new();
                let mut indefinite = Vec::new();
                for m in 0..=8 {
                    for n in 0..=8 {
                        let g = moment_gram(&fam[m], &fam[n], &w)?;
                        if m != n && !g.is_zero() {
                            nonzero.push((m, n));
                        }
                        if m == n && !(g.is_symmetric() && is_positive_definite(&g)?) {
                            indefinite.push(n);
                        }
                    }
                }
                let pass = nonzero.is_empty() && indefinite.is_empty();
                Ok((
                    pass,
                    json!({ "nonzero_off_diagonal": nonzero, "indefinite_diagonal": indefinite }),
                ))
            },
        );
    }
    rep.check(
        "point-mass-needed/krall-laguerre/alpha=0,R=7",
        "matrix weight with point mass",
        || {
            let w = MomentFunctional::sqrt_laguerre(&int(0))?;
            let fam = fold_sequence(&kl(&int(0), &int(7))?, &FoldConfig::new(2)?, 3)?;
            let g = moment_gram(&fam[0], &fam[1], &w)?;
            Ok((
                !g.is_zero(),
                json!({ "gram_0_1_without_mass": to_json(&g) }),
            ))
        },
    );
    rep
}
