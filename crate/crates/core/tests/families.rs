use matfold_core::diffop::builtin::{
    kj_eigenvalue, kj_pq, krall_laguerre_eigenvalue, krall_laguerre_op, laguerre_op,
};
use matfold_core::diffop::ScalarDiffOp;
use matfold_core::eigen::{scalar_space, solve_operator_space, MatFamily, SolveConfig};
use matfold_core::families::{jacobi_monic, laguerre};
use matfold_core::{int, rat, Family, FamilySpec, FoldConfig, MatDiffOp, Poly, Rational};
use num_traits::One;

/// Monic Laguerre from the explicit sum
/// `(-1)^n n! Σ_k (-1)^k C(n+α, n-k) x^k / k!`.
fn laguerre_oracle(alpha: &Rational, n: usize) -> Poly {
    let mut coeffs = Vec::new();
    for k in 0..=n {
        // C(n+α, n-k) = Π_{i=1}^{n-k} (k + α + i) / (n-k)!
        let mut c = Rational::one();
        for i in 1..=(n - k) {
            c = c * (int((k + i) as i64) + alpha) / int(i as i64);
        }
        let mut f = Rational::one();
        for i in 1..=n {
            f *= int(i as i64);
        }
        for i in 1..=k {
            f /= int(i as i64);
        }
        let sign = if (n + k).is_multiple_of(2) {
            int(1)
        } else {
            int(-1)
        };
        coeffs.push(sign * c * f);
    }
    Poly::new(coeffs)
}

#[test]
fn laguerre_matches_explicit_sum_and_ode() {
    for alpha in [int(0), rat(1, 2), int(1), rat(3, 2)] {
        let op = laguerre_op(&alpha);
        for n in 0..=20 {
            let p = laguerre(&alpha, n);
            assert_eq!(p, laguerre_oracle(&alpha, n), "alpha={alpha} n={n}");
            assert_eq!(op.apply(&p), p.scale(&int(-(n as i64))));
        }
    }
}

#[test]
fn jacobi_satisfies_its_ode() {
    for (a, b) in [(rat(1, 2), rat(7, 8)), (int(0), int(0)), (int(1), int(2))] {
        // (1 - x²) D² + (β - α - (α+β+2) x) D
        let op = ScalarDiffOp::new(vec![
            Poly::zero(),
            Poly::linear(-(&a + &b + int(2)), &b - &a),
            Poly::from_ints(&[1, 0, -1]),
        ]);
        for n in 0..=15 {
            let p = jacobi_monic(&a, &b, n).unwrap();
            assert_eq!(p.degree(), Some(n));
            assert!(p.leading_coeff().is_one());
            let nn = int(n as i64);
            let lambda = -(&nn * (&nn + &a + &b + int(1)));
            assert_eq!(op.apply(&p), p.scale(&lambda), "a={a} b={b} n={n}");
        }
    }
}

#[test]
fn krall_laguerre_fourth_order_equation() {
    for alpha in [int(0), rat(1, 2), int(1)] {
        for r in [int(2), int(5), int(7)] {
            let f = Family::new(FamilySpec::krall_laguerre(alpha.clone(), r.clone())).unwrap();
            let op = krall_laguerre_op(&alpha, &r);
            for n in 0..=12 {
                let p = f.poly(n).unwrap();
                assert_eq!(op.apply(&p), p.scale(&krall_laguerre_eigenvalue(&r, n)));
            }
        }
    }
}

#[test]
fn krall_jacobi_pq_equation() {
    let (a, b, r) = (rat(3, 2), rat(7, 8), int(7));
    let f = Family::new(FamilySpec::krall_jacobi(a.clone(), b.clone(), r.clone())).unwrap();
    let op = kj_pq(&a, &b, &r);
    for n in 0..=12 {
        let p = f.poly(n).unwrap();
        assert_eq!(op.apply(&p), p.scale(&kj_eigenvalue(&a, &b, &r, n)));
    }
}

#[test]
fn cache_agrees_with_fresh_generation() {
    let f = Family::new(FamilySpec::krall_jacobi(rat(1, 2), rat(3, 2), int(2))).unwrap();
    for n in [5, 0, 9, 3] {
        assert_eq!(f.poly(n).unwrap(), f.generate(n).unwrap());
    }
}

#[test]
fn spec_strings_round_trip() {
    for s in [
        "laguerre:alpha=1/2",
        "jacobi:alpha=1,beta=7/8",
        "krall-laguerre:alpha=1/3,R=5",
        "krall-jacobi:alpha=3/2,beta=7/8,R=7",
    ] {
        let spec: FamilySpec = s.parse().unwrap();
        assert_eq!(spec.to_string(), s);
    }
    assert!("krall-laguerre:alpha=-2,R=1".parse::<FamilySpec>().is_err());
    assert!("hermite:alpha=0".parse::<FamilySpec>().is_err());
}

#[test]
fn scalar_space_of_krall_laguerre() {
    let spec = FamilySpec::krall_laguerre(int(1), int(2));
    let res = scalar_space(Family::new(spec.clone()).unwrap(), &SolveConfig::new(4)).unwrap();
    assert_eq!(res.dimension, 2);
    assert!(res.contains(&MatDiffOp::from_scalar(&krall_laguerre_op(
        &int(1),
        &int(2)
    ))));
    let res3 = scalar_space(Family::new(spec).unwrap(), &SolveConfig::new(3)).unwrap();
    assert_eq!(res3.dimension, 1);
}

#[test]
fn solver_is_sound_on_held_out_indices() {
    let spec = FamilySpec::laguerre(rat(1, 2));
    let fam = MatFamily::folded(Family::new(spec).unwrap(), FoldConfig::new(3).unwrap());
    let res = solve_operator_space(&fam, &SolveConfig::new(2)).unwrap();
    assert!(res.dimension >= 2);
    let last = *res.provenance.n_verify.last().unwrap();
    for pair in &res.basis {
        assert_eq!(pair.eigenvalues.len(), last + 1);
    }
    let history: Vec<usize> = res.provenance.history.iter().map(|h| h.1).collect();
    assert!(history.windows(2).all(|w| w[1] <= w[0]));
}
