use num_traits::{One, Signed};
use splitprob_core::nonmonic::{nonmonic_euler, nonmonic_rn, nonmonic_series_identity, theorem_nm_sum};
use splitprob_core::arith::{rat, PowerSeries, Rational};
use splitprob_core::split::{
    check_functional_equation, check_pole_locations, corollary_recursion, euler_split_coefficients, finite_field_rbar,
    series_rn, symbolic_rn, theorem1_table,
};

#[test]
fn composition_sum_matches_recursion() {
    for q in 2..=5u64 {
        assert_eq!(theorem1_table(q, 10).unwrap().values(), corollary_recursion(q, 10).unwrap().values(), "q={q}");
    }
}

#[test]
fn monic_probability_is_below_the_residue_field_one() {
    for q in [2u64, 3, 5] {
        let table = corollary_recursion(q, 10).unwrap();
        for n in 0..=10 {
            assert!(table.values()[n] <= finite_field_rbar(q, n).unwrap(), "q={q} n={n}");
        }
    }
}

#[test]
fn probabilities_are_bounded_by_one_for_real_q_at_least_two() {
    for q in [rat(2, 1), rat(3, 1), rat(5, 2)] {
        let (r, _) = euler_split_coefficients(q.clone(), 30);
        for (n, rn) in r.iter().enumerate() {
            assert!(rn.abs() <= Rational::one(), "q={q} n={n}");
        }
    }
}

#[test]
fn g_to_the_q_gives_r() {
    for q in [2u64, 3] {
        let table = corollary_recursion(q, 8).unwrap();
        assert_eq!(series_rn(&table).unwrap(), table.values());
    }
}

#[test]
fn residue_field_series_is_a_negative_binomial() {
    for q in [2u64, 3] {
        let rbar = PowerSeries::new((0..=8).map(|n| finite_field_rbar(q, n).unwrap()).collect());
        let mut linear = vec![Rational::one(), -rat(1, q as i64)];
        linear.resize(9, rat(0, 1));
        let product = rbar.mul(&PowerSeries::new(linear).pow(q).unwrap()).unwrap();
        assert_eq!(product, PowerSeries::one(9), "q={q}");
    }
}

#[test]
fn symbolic_properties_up_to_seven() {
    let table = symbolic_rn(7).unwrap();
    for n in 1..=7 {
        assert!(check_functional_equation(&table, n).unwrap(), "n={n}");
        assert!(check_pole_locations(&table, n).unwrap().passed(), "n={n}");
    }
}

#[test]
fn nonmonic_routes_agree() {
    for q in [2u64, 3, 5] {
        let monic = corollary_recursion(q, 10).unwrap();
        let from_split = nonmonic_rn(q, 10, &monic).unwrap();
        let euler = nonmonic_euler(q, 10).unwrap();
        assert_eq!(from_split.values(), euler.values(), "q={q}");
        for n in 1..=6 {
            assert_eq!(theorem_nm_sum(q, n, &monic).unwrap(), euler.values()[n], "q={q} n={n}");
        }
        assert!(nonmonic_series_identity(q, 10).unwrap(), "q={q}");
    }
}
