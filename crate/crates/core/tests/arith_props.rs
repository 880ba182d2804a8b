use num_bigint::BigInt;
use proptest::prelude::*;
use splitprob_core::arith::{Rational, RationalFunction};

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..10_000).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]
    #[test]
    fn field_laws_hold_exactly(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
    }
}

fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    use splitprob_core::arith::IntPolynomial;
    (proptest::collection::vec(-5i64..=5, 1..4), proptest::collection::vec(-5i64..=5, 1..4))
        .prop_filter_map("nonzero denominator without small positive roots", |(n, d)| {
            let den = IntPolynomial::from_i64s(&d);
            let ok = !den.is_zero() && [2i64, 3, 5, 7].iter().all(|&x| den.eval_bigint(&BigInt::from(x)) != BigInt::from(0));
            ok.then(|| RationalFunction::new(IntPolynomial::from_i64s(&n), den))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]
    #[test]
    fn evaluation_is_a_homomorphism(f in ratfunc(), g in ratfunc()) {
        for q0 in [2i64, 3, 5, 7] {
            let x = Rational::from_integer(BigInt::from(q0));
            let (fx, gx) = (f.eval_rational(&x).unwrap(), g.eval_rational(&x).unwrap());
            prop_assert_eq!(f.add(&g).eval_rational(&x).unwrap(), &fx + &gx);
            prop_assert_eq!(f.sub(&g).eval_rational(&x).unwrap(), &fx - &gx);
            prop_assert_eq!(f.mul(&g).eval_rational(&x).unwrap(), &fx * &gx);
        }
    }
}
