//! The acceptance criteria, each as one function returning a report.

use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;
use splitprob_core::arith::{q_pow, rat, IntPolynomial, Rational, RationalFunction};
use splitprob_core::asymptotics::{
    find_g_zero, lemr_check, moews_residual, period_collapse, property5_check, rn_linear_bound, DEFAULT_EXACT_LIMIT,
};
use splitprob_core::nonmonic::{nonmonic_euler, nonmonic_rn, symbolic_nonmonic, theorem_nm_sum};
use splitprob_core::padic::{exhaustive_bracket, monte_carlo, Mode};
use splitprob_core::qtrees::{
    gamma_bruteforce, level_census, level_census_walk, nu, tree_sum_sn, well_balanced, BetaTable,
};
use splitprob_core::split::{
    check_functional_equation, check_pole_locations, corollary_recursion, ff_bruteforce_rbar, finite_field_rbar,
    inverse_factorial, limit_inverse_factorial, series_rn, symbolic_rn, theorem1_table,
};
use splitprob_core::Result;

use crate::commands::{self, pass};
use crate::config::{Criterion, Format, RunConfig};
use crate::output::{CliError, Output};

/// Outcome of one acceptance criterion.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub seconds: f64,
    pub budget_seconds: Option<f64>,
    pub details: Vec<String>,
}

impl CriterionReport {
    /// `criterion k: PASS|FAIL title (seconds)`.
    pub fn line(&self) -> String {
        let budget = self.budget_seconds.map(|b| format!(", budget {b} s")).unwrap_or_default();
        format!("criterion {}: {} {} ({:.2} s{budget})", self.id, pass(self.passed), self.title, self.seconds)
    }
}

struct Checks {
    ok: bool,
    details: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Checks { ok: true, details: Vec::new() }
    }

    fn check(&mut self, ok: bool, detail: String) {
        self.ok &= ok;
        self.details.push(format!("{} {detail}", pass(ok)));
    }

    fn note(&mut self, detail: String) {
        self.details.push(detail);
    }
}

pub const TITLES: [&str; 10] = [
    "closed forms r_1..r_4",
    "non-monic closed forms r^nm_1..r^nm_4",
    "cross-method identity for s_n",
    "finite-field oracle",
    "symbolic properties for n <= 8",
    "Monte Carlo agreement",
    "well-balanced optimality and level census",
    "asymptotic bounds at N = 2^14",
    "zero of G and decay of r_n(q)",
    "sampling determinism",
];

const BUDGETS: [Option<f64>; 10] =
    [Some(5.0), Some(5.0), Some(60.0), Some(30.0), Some(120.0), Some(600.0), Some(60.0), Some(300.0), Some(60.0), None];

/// Runs criterion `id` (1-10).
pub fn run_criterion(id: u8) -> CriterionReport {
    assert!((1..=10).contains(&id), "criterion {id} out of range");
    let start = Instant::now();
    let result = match id {
        1 => closed_forms(),
        2 => nonmonic_forms(),
        3 => cross_method(),
        4 => finite_field(),
        5 => symbolic_properties(),
        6 => monte_carlo_grid(),
        7 => well_balanced_optimality(),
        8 => asymptotic_bounds(),
        9 => zero_of_g(),
        _ => determinism(),
    };
    let seconds = start.elapsed().as_secs_f64();
    let budget = BUDGETS[id as usize - 1];
    let (mut passed, mut details) = match result {
        Ok(c) => (c.ok, c.details),
        Err(e) => (false, vec![format!("FAIL error: {e}")]),
    };
    if let Some(b) = budget {
        let in_time = seconds < b;
        passed &= in_time;
        details.push(format!("{} runtime {seconds:.2} s < {b} s", pass(in_time)));
    }
    CriterionReport { id, title: TITLES[id as usize - 1].into(), passed, seconds, budget_seconds: budget, details }
}

pub fn command(criterion: Criterion) -> std::result::Result<Output, CliError> {
    let ids: Vec<u8> = match criterion {
        Criterion::One(k) => vec![k],
        Criterion::All => (1..=10).collect(),
    };
    let reports: Vec<CriterionReport> = ids.into_iter().map(run_criterion).collect();
    let mut text = String::new();
    for r in &reports {
        for d in &r.details {
            text.push_str(&format!("  {d}\n"));
        }
        text.push_str(&r.line());
        text.push('\n');
    }
    let passed = reports.iter().all(|r| r.passed);
    let mut csv = String::from("criterion,passed,seconds\n");
    for r in &reports {
        csv.push_str(&format!("{},{},{:.3}\n", r.id, r.passed, r.seconds));
    }
    Ok(Output::new(text, json!({"command": "verify", "passed": passed, "criteria": reports}))
        .with_csv(csv)
        .with_passed(passed))
}

fn poly(coeffs: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64s(coeffs)
}

/// `q^m - 1`.
fn qm1(m: usize) -> IntPolynomial {
    IntPolynomial::q_pow_minus_one(m)
}

fn product(factors: &[IntPolynomial]) -> IntPolynomial {
    factors.iter().fold(IntPolynomial::one(), |acc, f| acc.mul(f))
}

/// The displayed `r_1..r_4`, with `r_0 = 1`.
pub fn displayed_rn() -> Vec<RationalFunction> {
    let q = IntPolynomial::q();
    let q_minus_1 = poly(&[-1, 1]);
    let q_plus_1 = poly(&[1, 1]);
    let h = poly(&[1, -2, 1, 2, -1, 2, 1, -2, 1]);
    vec![
        RationalFunction::one(),
        RationalFunction::one(),
        RationalFunction::new(q.clone(), product(&[poly(&[2]), q_plus_1.clone()])),
        RationalFunction::new(
            product(&[poly(&[1, -1, 1]), q_minus_1.clone(), q.pow(3)]),
            product(&[poly(&[6]), q_plus_1, qm1(5)]),
        ),
        RationalFunction::new(
            product(&[h, q_minus_1.pow(4), q.pow(6)]),
            product(&[poly(&[24]), qm1(2).pow(2), qm1(5), qm1(9)]),
        ),
    ]
}

/// The displayed `r^nm_1..r^nm_4`, with `r^nm_0 = 1`.
pub fn displayed_nonmonic() -> Vec<RationalFunction> {
    let q_minus_1 = poly(&[-1, 1]);
    let h_nm = poly(&[1, -1, 4, 0, 3, 4, -1, 4, 3, 0, 4, -1, 1]);
    vec![
        RationalFunction::one(),
        RationalFunction::one(),
        RationalFunction::new(poly(&[1]), poly(&[2])),
        RationalFunction::new(
            product(&[poly(&[1, 0, 1]).pow(2), q_minus_1.clone()]),
            product(&[poly(&[6]), qm1(5)]),
        ),
        RationalFunction::new(product(&[h_nm, q_minus_1.pow(2)]), product(&[poly(&[24]), qm1(5), qm1(9)])),
    ]
}

fn compare_forms(c: &mut Checks, label: &str, computed: &[RationalFunction], displayed: &[RationalFunction], exact: impl Fn(u64) -> Result<Vec<Rational>>) -> Result<()> {
    for n in 1..=4 {
        let (a, b) = (computed[n].to_string(), displayed[n].to_string());
        c.check(a == b, format!("{label}_{n} = {a}"));
    }
    for q in [2u64, 3, 5] {
        let values = exact(q)?;
        let qr = rat(q as i64, 1);
        for n in 1..=4 {
            let from_display = displayed[n].eval_rational(&qr).expect("no pole at integer q >= 2");
            let from_symbolic = computed[n].eval_rational(&qr).expect("no pole at integer q >= 2");
            c.check(
                values[n] == from_display && from_symbolic == from_display,
                format!("{label}_{n}(q={q}) = {}", values[n]),
            );
        }
    }
    Ok(())
}

fn closed_forms() -> Result<Checks> {
    let mut c = Checks::new();
    let table = symbolic_rn(4)?;
    compare_forms(&mut c, "r", table.entries(), &displayed_rn(), |q| Ok(corollary_recursion(q, 4)?.values().to_vec()))?;
    Ok(c)
}

fn nonmonic_forms() -> Result<Checks> {
    let mut c = Checks::new();
    let symbolic = symbolic_nonmonic(4)?;
    compare_forms(&mut c, "r^nm", &symbolic, &displayed_nonmonic(), |q| {
        Ok(nonmonic_rn(q, 4, &corollary_recursion(q, 4)?)?.values().to_vec())
    })?;
    for q in [2u64, 3, 5] {
        let monic = corollary_recursion(q, 8)?;
        let direct = nonmonic_rn(q, 8, &monic)?;
        let euler = nonmonic_euler(q, 8)?;
        let mut agree = direct.values() == euler.values();
        for n in 0..=8 {
            agree &= theorem_nm_sum(q, n, &monic)? == direct.values()[n];
        }
        c.check(agree, format!("q={q}: recursion, Euler form and composition sum agree for n <= 8"));
    }
    Ok(c)
}

fn cross_method() -> Result<Checks> {
    let mut c = Checks::new();
    for (q, n_max) in [(2u64, 10usize), (3, 7)] {
        let corollary = corollary_recursion(q, n_max)?;
        let theorem = theorem1_table(q, n_max)?;
        let series = series_rn(&corollary)?;
        let betas = BetaTable::new(q, n_max)?;
        let mut ok = theorem.svalues() == corollary.svalues();
        for n in 0..=n_max {
            let from_series = &series[n] / q_pow(q, (n * (n + 1) / 2) as u64);
            ok &= from_series == corollary.svalues()[n];
            if n >= 1 {
                ok &= tree_sum_sn(q, n, &betas)? == corollary.svalues()[n];
            }
        }
        c.check(
            ok,
            format!("q={q}, n <= {n_max}: composition sum, recursion, G^q and tree sum give s_{n_max} = {}", corollary.svalues()[n_max]),
        );
    }
    Ok(c)
}

fn finite_field() -> Result<Checks> {
    let mut c = Checks::new();
    for q in [2u64, 3] {
        let mut ok = true;
        for n in 1..=5 {
            ok &= finite_field_rbar(q, n)? == ff_bruteforce_rbar(q, n)?;
        }
        c.check(ok, format!("q={q}: closed form equals enumeration for n <= 5"));
    }
    for q in [2u64, 3, 4, 5] {
        let table = corollary_recursion(q, 10)?;
        let mut ok = true;
        for n in 0..=10 {
            ok &= table.values()[n] <= finite_field_rbar(q, n)?;
        }
        c.check(ok, format!("q={q}: r_n <= rbar_n for n <= 10"));
    }
    Ok(c)
}

fn symbolic_properties() -> Result<Checks> {
    let mut c = Checks::new();
    let table = symbolic_rn(8)?;
    for n in 1..=8 {
        let functional = check_functional_equation(&table, n)?;
        let poles = check_pole_locations(&table, n)?;
        let leading = limit_inverse_factorial(&table, n)? == inverse_factorial(n);
        c.check(
            functional && poles.poles_at_roots_of_unity && poles.vanishing_ok && leading,
            format!(
                "n={n}: functional equation {}, vanishing order {} >= {}, poles at roots of unity {}, leading ratio 1/{n}! {}",
                pass(functional),
                poles.numerator_order_at_zero,
                poles.required_order,
                pass(poles.poles_at_roots_of_unity),
                pass(leading)
            ),
        );
    }
    Ok(c)
}

pub const MC_SEED: u64 = 7;

fn monte_carlo_grid() -> Result<Checks> {
    let mut c = Checks::new();
    for p in [2u64, 3, 5] {
        for n in [2usize, 3, 4] {
            let rep = monte_carlo(p, n, 48, 100_000, MC_SEED, Mode::Monic)?;
            let z_ok = match rep.z_score {
                Some(z) => z.abs() < 5.0,
                None => rep.estimate == rep.exact_value,
            };
            let rate_ok = rep.indeterminate_rate < 0.01;
            c.check(
                z_ok && rate_ok,
                format!(
                    "p={p} n={n}: estimate {:.5} vs {} = {:.5}, z = {}, indeterminate rate {}",
                    rep.estimate,
                    rep.exact,
                    rep.exact_value,
                    rep.z_score.map(|z| format!("{z:.3}")).unwrap_or_else(|| "undefined".into()),
                    rep.indeterminate_rate
                ),
            );
        }
    }
    let ex = exhaustive_bracket(2, 2, 6)?;
    c.check(
        ex.within_bracket(),
        format!(
            "p=2 n=2 K=6 exhaustive: {} split, {} not, {} indeterminate; {} in [{}, {}]",
            ex.splits, ex.not_splits, ex.indeterminates, ex.decided_split_fraction, ex.lower, ex.upper
        ),
    );
    Ok(c)
}

fn well_balanced_optimality() -> Result<Checks> {
    let mut c = Checks::new();
    for (q, n_max) in [(2u64, 9usize), (3, 7)] {
        let betas = BetaTable::new(q, n_max)?;
        let mut ok = true;
        for n in 1..=n_max {
            ok &= gamma_bruteforce(q, n, &betas)? == nu(n, &betas)?;
        }
        c.check(ok, format!("q={q}: gamma_n = nu_n for n <= {n_max}; nu_{n_max} = {}", nu(n_max, &betas)?));
    }
    for q in [2u64, 3, 4] {
        let mut ok = true;
        for n in 1..=64usize {
            let tree = well_balanced(q, n)?;
            let mut depth = 0;
            tree.walk(&mut |_, d| depth = depth.max(d));
            for k in 0..=depth + 1 {
                ok &= level_census(q, n as u64, k as u32)? == level_census_walk(&tree, k);
            }
        }
        c.check(ok, format!("q={q}: level census equals tree walk for n <= 64, every depth"));
    }
    Ok(c)
}

fn asymptotic_bounds() -> Result<Checks> {
    let mut c = Checks::new();
    let n_max = 1 << 14;
    let lemr = lemr_check(n_max, DEFAULT_EXACT_LIMIT)?;
    c.check(
        lemr.exact_ok && lemr.violations.is_empty(),
        format!(
            "R_m <= 1/2 for 2 <= m < {n_max} (exact to m = {}): R_2 = {}, max log_2 R_m = {:.6} at m = {}",
            lemr.exact_limit, lemr.r2, lemr.max_log2_ratio, lemr.argmax_ratio
        ),
    );
    c.check(
        lemr.eapprox_violations.is_empty(),
        format!("eapprox ratio <= 3 for n <= {n_max}: max {:.6} at n = {}", lemr.eapprox_max, lemr.eapprox_argmax),
    );
    let sample = moews_residual(2, 1, n_max)?;
    let (d, at) = period_collapse(&sample, 1 << 10, 1 << 13)?;
    c.check(d < 0.02, format!("max |u_n - u_2n| over 2^10..2^13 = {d:.3e} at n = {at}"));
    for q in [2u64, 3, 4] {
        let b = rn_linear_bound(q, n_max)?;
        c.check(b.is_finite(), format!("q={q}: fitted C_q = {:.6} (max at n = {})", b.fitted_constant, b.argmax));
    }
    Ok(c)
}

fn zero_of_g() -> Result<Checks> {
    let mut c = Checks::new();
    for q in [2.0, 10.0] {
        let z = find_g_zero(Complex64::new(q, 0.0))?;
        let inside = z.z0().norm() < q + 1.0;
        c.check(
            z.abs_g_at_z0 < 1e-12 && inside && (z.winding - 1.0).abs() <= 1e-2,
            format!("q={q}: z0 = {:.12} {:+.3e}i, |G(z0)| = {:.1e}, winding {:.9}", z.z0[0], z.z0[1], z.abs_g_at_z0, z.winding),
        );
    }
    let rep = property5_check(Complex64::new(3.5, 0.0), 400)?;
    c.check(
        rep.extrapolated_rel_error < 0.01,
        format!(
            "q=3.5 N=400: limit of |r_(n+1)/r_n| = {:.9} vs 1/|z0| = {:.9} (rel {:.2e}; raw ratio at N rel {:.2e})",
            rep.extrapolated_ratio, rep.inverse_abs_z0, rep.extrapolated_rel_error, rep.raw_rel_error
        ),
    );
    c.check(rep.slope_error < 0.1, format!("q=3.5 N=400: slope {:.6} vs {:.1}", rep.slope, rep.expected_slope));
    let control = property5_check(Complex64::new(4.0, 0.0), 400)?;
    c.note(format!(
        "control q=4: |r_N/r_(N-1)| = {:.3e} vs 1/|z0| = {:.6}; no geometric limit",
        control.raw_ratio, control.inverse_abs_z0
    ));
    Ok(c)
}

fn sample_json(workers: Option<usize>) -> std::result::Result<String, CliError> {
    let mut args = vec!["sample", "--p", "2", "--n", "2", "--samples", "100000", "--seed", "7", "--format", "json"]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>();
    if let Some(w) = workers {
        args.push("--workers".into());
        args.push(w.to_string());
    }
    let config = RunConfig::parse_args(args).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(commands::run(&config)?.render(Format::Json))
}

fn determinism() -> Result<Checks> {
    let mut c = Checks::new();
    let run = |w| sample_json(w).map_err(|e| splitprob_core::Error::Numerical(e.message().to_string()));
    let first = run(None)?;
    let second = run(None)?;
    c.check(first == second, "two runs with seed 7 are byte-identical".into());
    for w in [1usize, 2, 4] {
        c.check(run(Some(w))? == first, format!("{w} worker(s) give the same bytes"));
    }
    Ok(c)
}
