//! Property tests for the polynomial ring and its localizations.

use std::sync::Arc;

use proeuler::ring::{DenominatorSet, LocalizedClass, Monomial, Poly};
use proeuler::{BigInt, Polynomial};
use proptest::prelude::*;

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec((prop::sample::select(vec!["L", "E", "Q"]), 0u32..3), 0..3)
        .prop_map(Monomial::from_pairs)
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((monomial(), -4i64..=4), 0..4)
        .prop_map(|terms| Poly::from_terms(terms.into_iter().map(|(m, c)| (m, BigInt::from(c)))))
}

fn nonzero_poly() -> impl Strategy<Value = Polynomial> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Poly::zero());
        prop_assert_eq!(&a * &Poly::one(), a.clone());
    }

    #[test]
    fn display_parses_back(a in poly()) {
        let printed = a.to_string();
        let again: Polynomial = printed.parse().unwrap();
        prop_assert_eq!(again, a);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(), b in nonzero_poly()) {
        let q = (&a * &b).exact_div(&b).unwrap();
        prop_assert_eq!(q, Some(a));
    }

    #[test]
    fn normalization_preserves_value(
        n in poly(),
        g in prop::collection::vec(nonzero_poly(), 1..3),
        e in prop::collection::vec(0u32..3, 3),
        k in nonzero_poly(),
    ) {
        let set = Arc::new(DenominatorSet::new(g.clone()).unwrap());
        let exps: Vec<u32> = e.into_iter().take(g.len()).collect();
        let x = LocalizedClass::new(&n * &k, exps.clone(), set.clone()).unwrap();
        let normal = x.normalize();
        prop_assert_eq!(&normal, &x);
        prop_assert!(normal.exponents().iter().zip(&exps).all(|(a, b)| a <= b));
        let sum = x.add(&x.neg()).unwrap();
        prop_assert!(sum.is_zero());
        prop_assert_eq!(x.mul(&LocalizedClass::whole(Poly::one(), set)).unwrap(), x);
    }
}
