use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use splitprob_core::padic::{classify_split, Outcome, TruncatedPadicPoly};

const K: u32 = 5;

fn monic(p: u64, degree: usize) -> impl Strategy<Value = TruncatedPadicPoly> {
    let m = (p as i64).pow(K);
    proptest::collection::vec(0..m, degree).prop_map(move |mut c| {
        c.push(1);
        TruncatedPadicPoly::from_i64s(p, K, &c).unwrap()
    })
}

fn outcome(f: &TruncatedPadicPoly) -> Outcome {
    classify_split(f).unwrap().outcome
}

fn reduce(f: &TruncatedPadicPoly) -> Vec<i64> {
    let p = BigInt::from(f.p());
    let mut c: Vec<i64> = f.coeffs().iter().map(|x| i64::try_from(x.mod_floor(&p)).unwrap()).collect();
    while c.len() > 1 && *c.last().unwrap() == 0 {
        c.pop();
    }
    c
}

fn inverse_mod(a: i64, p: i64) -> i64 {
    (1..p).find(|x| a * x % p == 1).unwrap()
}

fn gcd_degree_mod_p(mut a: Vec<i64>, mut b: Vec<i64>, p: i64) -> usize {
    let trim = |v: &mut Vec<i64>| {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
    };
    loop {
        trim(&mut a);
        trim(&mut b);
        if b.len() == 1 && b[0] == 0 {
            return a.len() - 1;
        }
        while a.len() >= b.len() && !(a.len() == 1 && a[0] == 0) {
            let factor = a.last().unwrap() * inverse_mod(*b.last().unwrap(), p) % p;
            let shift = a.len() - b.len();
            for (i, bi) in b.iter().enumerate() {
                a[i + shift] = (a[i + shift] - factor * bi).rem_euclid(p);
            }
            trim(&mut a);
            if a.len() < b.len() || (a.len() == 1 && a[0] == 0) {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
}

fn field_poly() -> impl Strategy<Value = TruncatedPadicPoly> {
    prop::sample::select(vec![2u64, 3, 5]).prop_flat_map(|p| (1usize..=4).prop_flat_map(move |d| monic(p, d)))
}

fn pair() -> impl Strategy<Value = (TruncatedPadicPoly, TruncatedPadicPoly)> {
    prop::sample::select(vec![2u64, 3, 5])
        .prop_flat_map(|p| ((1usize..=3).prop_flat_map(move |d| monic(p, d)), (1usize..=3).prop_flat_map(move |d| monic(p, d))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn zero_extension_keeps_determined_outcomes(f in field_poly()) {
        let short = outcome(&f);
        if short != Outcome::Indeterminate {
            prop_assert_eq!(outcome(&f.with_precision(2 * K).unwrap()), short);
        }
    }

    #[test]
    fn translation_preserves_outcome(f in field_poly(), r in -50i64..50) {
        prop_assert_eq!(outcome(&f.shifted(&BigInt::from(r))), outcome(&f));
    }

    #[test]
    fn coprime_products_split_iff_factors_do((f, g) in pair()) {
        let p = f.p() as i64;
        prop_assume!(gcd_degree_mod_p(reduce(&f), reduce(&g), p) == 0);
        let (a, b) = (outcome(&f), outcome(&g));
        prop_assume!(a != Outcome::Indeterminate && b != Outcome::Indeterminate);
        let expected = if a == Outcome::Splits && b == Outcome::Splits { Outcome::Splits } else { Outcome::NotSplit };
        prop_assert_eq!(outcome(&f.mul_monic(&g).unwrap()), expected);
    }
}
