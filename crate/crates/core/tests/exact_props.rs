use matfold_core::residue::{split, split_residue, unfold};
use matfold_core::{int, FoldConfig, Poly, RatMatrix, Rational};
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=9).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), 0..=max_deg + 1).prop_map(Poly::new)
}

fn shift() -> impl Strategy<Value = Rational> {
    prop_oneof![
        Just(int(0)),
        Just(int(-1)),
        Just(Rational::new(3.into(), 2.into())),
        rational()
    ]
}

fn square(n: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(rational(), n * n)
        .prop_map(move |v| RatMatrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
}

proptest! {
    #[test]
    fn ring_axioms(p in poly(8), q in poly(8), r in poly(8)) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &Poly::one(), p.clone());
    }

    #[test]
    fn exact_division_of_products(p in poly(6), q in poly(6)) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).div_exact(&q).unwrap(), p.clone());
        let (quo, rem) = p.div_rem(&q).unwrap();
        prop_assert_eq!(&(&quo * &q) + &rem, p);
        prop_assert!(rem.is_zero() || rem.degree() < q.degree());
    }

    #[test]
    fn taylor_shift_inverts(p in poly(10), a in rational(), x in rational()) {
        let shifted = p.taylor_shift(&a);
        prop_assert_eq!(shifted.taylor_shift(&-a.clone()), p.clone());
        prop_assert_eq!(shifted.eval(&x), p.eval(&(&x + &a)));
    }

    #[test]
    fn unfold_split_round_trip(p in poly(40), n in 1usize..=5, a in shift()) {
        let cfg = FoldConfig::new(n).unwrap().with_shift(a);
        prop_assert_eq!(unfold(&split(&p, &cfg), &cfg).unwrap(), p);
    }

    #[test]
    fn pivot_product_shifts_residues(p in poly(20), n in 1usize..=4, a in shift()) {
        // split((x - a)^N p) = x · split(p)
        let cfg = FoldConfig::new(n).unwrap().with_shift(a.clone());
        let pivot = Poly::linear(int(1), -a).pow(n as u32);
        let lhs = split(&(&pivot * &p), &cfg);
        for m in 0..n {
            prop_assert_eq!(&lhs.0[m], &(&Poly::x() * &split_residue(&p, &cfg, m)));
        }
    }

    #[test]
    fn split_is_linear(p in poly(15), q in poly(15), c in rational(), n in 1usize..=4) {
        let cfg = FoldConfig::new(n).unwrap();
        let lhs = split(&(&p + &q.scale(&c)), &cfg);
        let (sp, sq) = (split(&p, &cfg), split(&q, &cfg));
        for m in 0..n {
            prop_assert_eq!(&lhs.0[m], &(&sp.0[m] + &sq.0[m].scale(&c)));
        }
    }

    #[test]
    fn determinant_is_multiplicative(a in square(3), b in square(3)) {
        prop_assert_eq!((&a * &b).det().unwrap(), a.det().unwrap() * b.det().unwrap());
    }

    #[test]
    fn inverse_exists_iff_nonsingular(a in square(3)) {
        match a.inverse() {
            Some(inv) => {
                prop_assert!(!a.det().unwrap().is_zero());
                prop_assert_eq!(&a * &inv, RatMatrix::identity(3));
            }
            None => prop_assert!(a.det().unwrap().is_zero()),
        }
    }
}
