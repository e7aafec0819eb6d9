use matfold_core::exact::is_positive_definite;
use matfold_core::exact::linalg::{nullspace, rank};
use matfold_core::{RatMatrix, Rational};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

/// Textbook Gauss-Jordan over the rationals; returns the rank.
fn naive_rank(m: &RatMatrix) -> usize {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = Rational::one() / &a[r][c];
        for v in a[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Positive definite iff every principal minor is positive.
fn all_minors_positive(m: &RatMatrix) -> bool {
    let n = m.rows();
    (1u32..(1 << n)).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        m.submatrix(&idx).det().unwrap().is_positive()
    })
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
    // small entries with many zeros to produce rank deficiency
    prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], rows * cols).prop_map(
        move |v| {
            RatMatrix::from_fn(rows, cols, |i, j| {
                Rational::from_integer(v[i * cols + j].into())
            })
        },
    )
}

proptest! {
    #[test]
    fn nullspace_against_oracle(m in (1usize..=5, 1usize..=6).prop_flat_map(|(r, c)| matrix(r, c))) {
        let ns = nullspace(&m);
        let r = naive_rank(&m);
        prop_assert_eq!(rank(&m), r);
        prop_assert_eq!(ns.len(), m.cols() - r);
        for v in &ns {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        if !ns.is_empty() {
            let basis = RatMatrix::from_rows(ns.clone()).unwrap();
            prop_assert_eq!(naive_rank(&basis), ns.len());
        }
    }

    #[test]
    fn positive_definite_against_minors(m in matrix(3, 3)) {
        let s = &(&m.transpose() * &m) + &RatMatrix::from_fn(3, 3, |i, j| {
            if i == j && i == 0 { Rational::from_integer((-1).into()) } else { Rational::zero() }
        });
        prop_assert_eq!(is_positive_definite(&s).unwrap(), all_minors_positive(&s));
        let g = &m.transpose() * &m;
        prop_assert_eq!(is_positive_definite(&g).unwrap(), all_minors_positive(&g));
    }
}

#[test]
fn positive_definite_rejects_asymmetric_or_zero() {
    let a = RatMatrix::from_ints(&[&[2, 1], &[0, 2]]);
    assert_eq!(
        is_positive_definite(&a),
        Err(matfold_core::Error::NotSymmetric)
    );
    let z = RatMatrix::zeros(2, 2);
    assert!(!is_positive_definite(&z).unwrap());
    assert!(is_positive_definite(&RatMatrix::identity(4)).unwrap());
}
