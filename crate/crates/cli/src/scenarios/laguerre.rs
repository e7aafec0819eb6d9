use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use matfold_core::diffop::builtin::{laguerre_eigenvalue, laguerre_op};
use matfold_core::diffop::{fold_operator_2x2, fold_operator_general};
use matfold_core::eigen::{compute_eigenvalues, MatFamily};
use matfold_core::residue::{split, split_residue, unfold};
use matfold_core::{
    int, Family, FamilySpec, FoldConfig, MatDiffOp, MatPoly, Poly, RatMatrix, Rational, Result,
};

use super::{mat2, q, qp, s};
use crate::report::{to_json, Report};

const SEED: u64 = 0x5eed_f01d;

fn random_poly(rng: &mut ChaCha8Rng) -> Poly {
    let deg = rng.gen_range(0..=40);
    Poly::new(
        (0..=deg)
            .map(|_| {
                let num: i64 = rng.gen_range(-50..=50);
                let den: i64 = rng.gen_range(1..=12);
                Rational::new(num.into(), den.into())
            })
            .collect(),
    )
}

pub fn roundtrip() -> Report {
    let mut r = Report::new("roundtrip");
    r.check(
        "split-example",
        "residue split of 1 + 2x + 3x^2 + 4x^3",
        || {
            let p = Poly::from_ints(&[1, 2, 3, 4]);
            let cfg = FoldConfig::new(2)?;
            let parts = split(&p, &cfg);
            let pass = parts.0 == vec![Poly::from_ints(&[1, 3]), Poly::from_ints(&[2, 4])];
            Ok((pass, to_json(&parts.0)))
        },
    );
    r.check("unfold-split-identity", "unfold inverts split", || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let shifts = [int(0), int(-1), q("3/2")];
        let mut failures = Vec::new();
        let mut cases = 0;
        for i in 0..200 {
            let p = random_poly(&mut rng);
            let n = 2 + i % 3;
            let a = shifts[(i / 3) % 3].clone();
            let cfg = FoldConfig::new(n)?.with_shift(a.clone());
            if unfold(&split(&p, &cfg), &cfg)? != p {
                failures.push(json!({ "case": i, "n": n, "a": s(&a) }));
            }
            cases += 1;
        }
        Ok((
            failures.is_empty(),
            json!({ "seed": SEED, "cases": cases, "failures": failures }),
        ))
    });
    r.check("split-degrees", "residue degrees", || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
        let mut bad = Vec::new();
        for i in 0..50 {
            let p = random_poly(&mut rng);
            let cfg = FoldConfig::new(2 + i % 3)?.with_shift(q("3/2"));
            let d = p.degree().unwrap_or(0);
            for m in 0..cfg.n {
                if let Some(dm) = split_residue(&p, &cfg, m).degree() {
                    if dm * cfg.n + m > d {
                        bad.push(i);
                    }
                }
            }
        }
        Ok((bad.is_empty(), json!({ "violations": bad })))
    });
    r
}

/// The displayed 2x2 fold of the Laguerre operator:
/// `A_2 = [[0, 4x], [4x², 0]]`, `A_1 = [[-2x, 2α+4], [(8+2α)x, -2x]]`,
/// `A_0 = [[0, 0], [α+1, -1]]`.
pub(crate) fn laguerre_2x2_display(alpha: &Rational) -> MatDiffOp {
    let z = Poly::zero;
    let a2 = mat2(z(), qp(&["0", "4"]), qp(&["0", "0", "4"]), z());
    let a1 = mat2(
        qp(&["0", "-2"]),
        Poly::constant(int(2) * alpha + int(4)),
        Poly::linear(int(8) + int(2) * alpha, int(0)),
        qp(&["0", "-2"]),
    );
    let a0 = mat2(z(), z(), Poly::constant(alpha + int(1)), qp(&["-1"]));
    MatDiffOp::new(2, vec![a0, a1, a2]).expect("2x2")
}

fn folded(alpha: &Rational, n: usize) -> Result<MatFamily> {
    Ok(MatFamily::folded(
        Family::new(FamilySpec::laguerre(alpha.clone()))?,
        FoldConfig::new(n)?,
    ))
}

fn diag_eigen(n: usize, block: usize) -> RatMatrix {
    RatMatrix::from_fn(block, block, |i, j| {
        if i == j {
            laguerre_eigenvalue(n * block + i)
        } else {
            Rational::zero()
        }
    })
}

fn alphas() -> Vec<Rational> {
    ["0", "1/2", "1", "3/2"].iter().map(|a| q(a)).collect()
}

pub fn laguerre_2x2() -> Report {
    let mut r = Report::new("laguerre-2x2");
    for alpha in alphas() {
        let tag = matfold_core::exact::rational::format_rational(&alpha);
        r.check(
            &format!("fold-equals-display/alpha={tag}"),
            "Laguerre 2x2 operator display",
            || {
                let b = fold_operator_2x2(&laguerre_op(&alpha));
                let d = laguerre_2x2_display(&alpha);
                Ok((b == d, to_json(&b)))
            },
        );
        r.check(
            &format!("eigen-equation/alpha={tag}"),
            "Laguerre 2x2 eigenvalue diag(-2n, -2n-1)",
            || {
                let b = fold_operator_2x2(&laguerre_op(&alpha));
                let fam = folded(&alpha, 2)?;
                let table = compute_eigenvalues(&b, &fam, 0..=20)?;
                let bad: Vec<usize> = table
                    .iter()
                    .filter(|(n, g)| g != &diag_eigen(*n, 2))
                    .map(|(n, _)| *n)
                    .collect();
                Ok((bad.is_empty(), json!({ "n_max": 20, "failures": bad })))
            },
        );
        r.check(
            &format!("general-fold-agrees/alpha={tag}"),
            "fold theorem, N = 2",
            || {
                let l = laguerre_op(&alpha);
                let g = fold_operator_general(&l, &FoldConfig::new(2)?, None)?;
                Ok((g == fold_operator_2x2(&l), json!(null)))
            },
        );
    }
    r.check("fold-is-linear", "fold theorem", || {
        let (a, b) = (laguerre_op(&q("1/2")), laguerre_op(&q("7/3")));
        let c = q("-5/4");
        let lhs = fold_operator_2x2(&a.add(&b.scale(&c)));
        let rhs = fold_operator_2x2(&a).add(&fold_operator_2x2(&b).scale(&c))?;
        Ok((lhs == rhs, json!(null)))
    });
    r
}

/// `A_2 = N²(x at (0, N-1), x² on the subdiagonal)`.
fn nxn_a2(n: usize) -> MatPoly {
    let nn = int((n * n) as i64);
    MatPoly::from_fn(n, |i, j| {
        if i == 0 && j == n - 1 {
            Poly::monomial(nn.clone(), 1)
        } else if i >= 1 && j == i - 1 {
            Poly::monomial(nn.clone(), 2)
        } else {
            Poly::zero()
        }
    })
}

/// `A_1 = N(-x on the diagonal, (N+2i+α)x at (i, i-1), N+α at (0, N-1))`.
fn nxn_a1(n: usize, alpha: &Rational) -> MatPoly {
    let nn = int(n as i64);
    MatPoly::from_fn(n, |i, j| {
        if i == j {
            Poly::monomial(-nn.clone(), 1)
        } else if i >= 1 && j == i - 1 {
            Poly::monomial(&nn * (&nn + int(2 * i as i64) + alpha), 1)
        } else if i == 0 && j == n - 1 {
            Poly::constant(&nn * (&nn + alpha))
        } else {
            Poly::zero()
        }
    })
}

pub fn laguerre_nxn() -> Report {
    let mut r = Report::new("laguerre-nxn");
    r.check("pattern-at-n2", "Laguerre 2x2 operator display", || {
        let alpha = q("1/3");
        let d = laguerre_2x2_display(&alpha);
        Ok((
            d.coeff(2) == nxn_a2(2) && d.coeff(1) == nxn_a1(2, &alpha),
            json!(null),
        ))
    });
    for n in [3usize, 4] {
        for alpha in ["0", "1/2", "1"].map(q) {
            let tag = format!(
                "N={n}/alpha={}",
                matfold_core::exact::rational::format_rational(&alpha)
            );
            let op = fold_operator_general(
                &laguerre_op(&alpha),
                &FoldConfig::new(n).expect("N > 0"),
                None,
            );
            let op = match op {
                Ok(op) => op,
                Err(e) => {
                    r.check(&format!("fold/{tag}"), "fold theorem, general N", || Err(e));
                    continue;
                }
            };
            r.check(
                &format!("eigen-equation/{tag}"),
                "general N Laguerre eigenvalue display",
                || {
                    let fam = folded(&alpha, n)?;
                    let table = compute_eigenvalues(&op, &fam, 0..=10)?;
                    let bad: Vec<usize> = table
                        .iter()
                        .filter(|(k, g)| g != &diag_eigen(*k, n))
                        .map(|(k, _)| *k)
                        .collect();
                    Ok((bad.is_empty(), json!({ "n_max": 10, "failures": bad })))
                },
            );
            r.check(
                &format!("a2-a1-pattern/{tag}"),
                "general N Laguerre operator display",
                || {
                    let pass = op.order() == 2
                        && op.coeff(2) == nxn_a2(n)
                        && op.coeff(1) == nxn_a1(n, &alpha);
                    Ok((
                        pass,
                        json!({ "a2": to_json(&op.coeff(2)), "a1": to_json(&op.coeff(1)) }),
                    ))
                },
            );
            r.check(
                &format!("a0-reported/{tag}"),
                "general N Laguerre operator display",
                || {
                    // diag -i, subdiagonal i(α+i)
                    let a0 = op.coeff(0);
                    let expected = MatPoly::from_fn(n, |i, j| {
                        let ii = int(i as i64);
                        if i == j {
                            Poly::constant(-ii)
                        } else if i >= 1 && j == i - 1 {
                            Poly::constant(&ii * (alpha.clone() + &ii))
                        } else {
                            Poly::zero()
                        }
                    });
                    Ok((a0 == expected, json!({ "a0": to_json(&a0) })))
                },
            );
        }
    }
    r
}
