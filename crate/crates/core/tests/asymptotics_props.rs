use num_bigint::BigInt;
use proptest::prelude::*;
use splitprob_core::arith::{rat, Rational};
use splitprob_core::asymptotics::{lemr_check, omega_direct, omega_solve, OmegaProblem, DEFAULT_EXACT_LIMIT};

fn bounded_omega(n_max: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-20i64..=20, 1i64..=7), n_max + 1)
        .prop_map(|v| v.into_iter().map(|(a, b)| Rational::new(BigInt::from(a), BigInt::from(b))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn three_solvers_agree_exactly(q in 2u64..=3, omega in bounded_omega(1000)) {
        let solution = omega_solve(&OmegaProblem::new(q, omega).unwrap(), 0);
        prop_assert_eq!(solution.first_disagreement, None);
    }
}

#[test]
fn leaf_counting_and_internal_vertices() {
    let n_max = 200;
    let mut leaves = vec![rat(0, 1); n_max + 1];
    leaves[1] = rat(1, 1);
    let direct = omega_direct(&OmegaProblem::new(2, leaves).unwrap());
    let mut internal = vec![rat(1, 1); n_max + 1];
    internal[1] = rat(0, 1);
    let internal = omega_direct(&OmegaProblem::new(2, internal).unwrap());
    for n in 1..=n_max {
        assert_eq!(direct[n], rat(n as i64, 1));
        assert_eq!(internal[n], rat(n as i64 - 1, 1));
    }
}

#[test]
fn consecutive_ratio_bound_to_one_thousand() {
    let report = lemr_check(1000, DEFAULT_EXACT_LIMIT).unwrap();
    assert!(report.exact_ok);
    assert!(report.max_log2_ratio <= -1.0, "max log2 R_m = {}", report.max_log2_ratio);
}
