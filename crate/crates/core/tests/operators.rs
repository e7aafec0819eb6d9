use matfold_core::diffop::builtin::{krall_laguerre_eigenvalue, krall_laguerre_op, laguerre_op};
use matfold_core::diffop::{fold_operator_2x2, fold_operator_general, ScalarDiffOp};
use matfold_core::residue::fold_row;
use matfold_core::{int, rat, FoldConfig, MatDiffOp, Poly, Rational};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), 0..=max_deg + 1).prop_map(Poly::new)
}

fn op(order: usize, deg: usize) -> impl Strategy<Value = ScalarDiffOp> {
    prop::collection::vec(poly(deg), 0..=order + 1).prop_map(ScalarDiffOp::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compose_matches_sequential_application(a in op(3, 3), b in op(3, 3), p in poly(12)) {
        prop_assert_eq!(a.compose(&b).apply(&p), a.apply(&b.apply(&p)));
    }

    #[test]
    fn translate_conjugates(l in op(3, 2), p in poly(8), s in rational(), c in rational()) {
        prop_assume!(s != int(0));
        let t = l.translate(&s, &c);
        prop_assert_eq!(t.apply(&p.affine_subst(&s, &c)), l.apply(&p).affine_subst(&s, &c));
    }

    #[test]
    fn fold_intertwines(l in op(3, 3), p in poly(14)) {
        // fold(L p) = fold(p) · fold(L)
        let cfg = FoldConfig::new(2).unwrap();
        let b = fold_operator_2x2(&l);
        prop_assert_eq!(fold_row(&l.apply(&p), &cfg), b.apply_row(&fold_row(&p, &cfg)));
    }
}

#[test]
fn general_fold_with_shift_intertwines() {
    let l = krall_laguerre_op(&rat(1, 2), &int(5));
    for cfg in [
        FoldConfig::new(3).unwrap(),
        FoldConfig::new(2).unwrap().with_shift(int(-1)),
        FoldConfig::new(2)
            .unwrap()
            .with_pre(int(2), int(-1))
            .unwrap(),
    ] {
        let b = fold_operator_general(&l, &cfg, None).unwrap();
        for j in 0..25 {
            let p = Poly::from_ints(&[1, -2, 3]).shift(j);
            assert_eq!(
                fold_row(&l.apply(&p), &cfg),
                b.apply_row(&fold_row(&p, &cfg))
            );
        }
    }
}

#[test]
fn matrix_operator_of_scalar_acts_entrywise() {
    let l = laguerre_op(&rat(2, 3));
    let m = MatDiffOp::from_scalar(&l);
    let p = Poly::from_ints(&[4, 0, -1, 2]);
    assert_eq!(m.apply_row(std::slice::from_ref(&p)), vec![l.apply(&p)]);
}

#[test]
fn krall_laguerre_eigenvalue_formula() {
    assert_eq!(krall_laguerre_eigenvalue(&int(2), 3), int(30));
}
