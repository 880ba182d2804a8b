use num_bigint::BigInt;
use num_complex::Complex64;
use serde_json::json;
use splitprob_core::arith::Rational;
use splitprob_core::asymptotics::{
    find_g_zero_with, lemr_check, log_nu, log_sn, moews_residual, nu_omega, omega_solve, period_collapse,
    probe_open_questions, property5_check, rn_linear_bound, sumit_correction, wb_leading_terms, zeta,
};
use splitprob_core::nonmonic::{nonmonic_euler, nonmonic_rn, symbolic_nonmonic, theorem_nm_sum};
use splitprob_core::padic::{
    classify_split_nonmonic_traced, classify_split_traced, exhaustive_bracket, monte_carlo_with_workers, Mode,
    TruncatedPadicPoly,
};
use splitprob_core::qtrees::{
    count_labellings, count_labelled_bound, default_enumeration_cap, enumerate_qtrees_with_cap,
    gamma_bruteforce_with_cap, nu, tree_sum_sn_with_cap, well_balanced, BetaTable,
};
use splitprob_core::split::{
    check_functional_equation, check_pole_locations, corollary_recursion, ff_bruteforce_rbar, finite_field_rbar,
    inverse_factorial, limit_inverse_factorial, series_rn, symbolic_rn_with_cap, theorem1_table, SplitTable,
};

use crate::config::*;
use crate::output::{out_dir, write_file, CliError, Output};
use crate::verify;

pub type CmdResult = Result<Output, CliError>;

pub fn run(config: &RunConfig) -> CmdResult {
    match &config.command {
        Command::Exact(a) => exact(a),
        Command::Symbolic(a) => symbolic(a),
        Command::Nonmonic(a) => nonmonic(a),
        Command::Ff(a) => ff(a),
        Command::Trees(a) => trees(a),
        Command::Classify(a) => classify(a),
        Command::Sample(a) => sample(a),
        Command::Asymptotics(a) => asymptotics(a),
        Command::Zeros(a) => zeros(a),
        Command::Verify(a) => verify::command(a.criterion),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn exact(a: &ExactArgs) -> CmdResult {
    let table: SplitTable = match a.method {
        ExactMethod::Corollary | ExactMethod::Series => corollary_recursion(a.q, a.n)?,
        ExactMethod::Theorem1 => theorem1_table(a.q, a.n)?,
    };
    let r: Vec<Rational> = match a.method {
        ExactMethod::Series => series_rn(&table)?,
        _ => table.values().to_vec(),
    };
    let s = table.svalues();
    let mut text = String::new();
    let mut csv = String::from("n,r_n,s_n\n");
    let mut values = Vec::new();
    for n in 0..=a.n {
        text.push_str(&format!("r_{n} = {}\n", r[n]));
        csv.push_str(&format!("{n},{},{}\n", r[n], s[n]));
        values.push(json!({"n": n, "r": r[n].to_string(), "s": s[n].to_string()}));
    }
    let method = format!("{:?}", a.method).to_lowercase();
    Ok(Output::new(text, json!({"command": "exact", "q": a.q, "method": method, "values": values})).with_csv(csv))
}

fn symbolic(a: &SymbolicArgs) -> CmdResult {
    let table = symbolic_rn_with_cap(a.n, a.cap)?;
    let mut text = String::new();
    let mut csv = String::from("n,r_n\n");
    let mut values = Vec::new();
    for (n, r) in table.entries().iter().enumerate() {
        text.push_str(&format!("r_{n} = {r}\n"));
        csv.push_str(&format!("{n},{r}\n"));
        values.push(json!({"n": n, "r": r.to_string()}));
    }
    let mut checks = Vec::new();
    let mut passed = true;
    if a.check {
        for n in 1..=a.n {
            let functional = check_functional_equation(&table, n)?;
            let poles = check_pole_locations(&table, n)?;
            let limit = limit_inverse_factorial(&table, n)?;
            let leading = limit == inverse_factorial(n);
            let ok = functional && poles.passed() && leading;
            passed &= ok;
            text.push_str(&format!(
                "n={n}: functional_equation {} poles_at_roots_of_unity {} vanishing_order {}>={} {} leading_ratio {} {}\n",
                pass(functional),
                pass(poles.poles_at_roots_of_unity),
                poles.numerator_order_at_zero,
                poles.required_order,
                pass(poles.vanishing_ok),
                limit,
                pass(leading)
            ));
            checks.push(json!({
                "n": n,
                "functional_equation": functional,
                "poles": poles,
                "leading_ratio": limit.to_string(),
                "leading_ratio_ok": leading,
            }));
        }
    }
    Ok(Output::new(text, json!({"command": "symbolic", "values": values, "checks": checks, "passed": passed}))
        .with_csv(csv)
        .with_passed(passed))
}

pub(crate) fn pass(ok: bool) -> &'static str {
    if ok { "PASS" } else { "FAIL" }
}

fn nonmonic(a: &NonmonicArgs) -> CmdResult {
    let rows: Vec<String> = match (a.method, a.q) {
        (NonmonicMethod::Symbolic, None) => symbolic_nonmonic(a.n)?.iter().map(|r| r.to_string()).collect(),
        (NonmonicMethod::Symbolic, Some(_)) => return Err(usage("--method symbolic takes no --q")),
        (_, None) => return Err(usage("--q is required unless --method symbolic")),
        (NonmonicMethod::Direct, Some(q)) => {
            nonmonic_rn(q, a.n, &corollary_recursion(q, a.n)?)?.values().iter().map(|r| r.to_string()).collect()
        }
        (NonmonicMethod::Euler, Some(q)) => nonmonic_euler(q, a.n)?.values().iter().map(|r| r.to_string()).collect(),
        (NonmonicMethod::Theorem, Some(q)) => {
            let monic = corollary_recursion(q, a.n)?;
            (0..=a.n).map(|n| theorem_nm_sum(q, n, &monic).map(|r| r.to_string())).collect::<Result<_, _>>()?
        }
    };
    let mut text = String::new();
    let mut csv = String::from("n,r_nm_n\n");
    let mut values = Vec::new();
    for (n, r) in rows.iter().enumerate() {
        text.push_str(&format!("r^nm_{n} = {r}\n"));
        csv.push_str(&format!("{n},{r}\n"));
        values.push(json!({"n": n, "r": r}));
    }
    let method = format!("{:?}", a.method).to_lowercase();
    Ok(Output::new(text, json!({"command": "nonmonic", "q": a.q, "method": method, "values": values})).with_csv(csv))
}

fn ff(a: &FfArgs) -> CmdResult {
    let rbar = finite_field_rbar(a.q, a.n)?;
    let mut text = format!("rbar_{} = {rbar}\n", a.n);
    let mut body = json!({"command": "ff", "q": a.q, "n": a.n, "rbar": rbar.to_string()});
    let mut passed = true;
    if a.bruteforce {
        let brute = ff_bruteforce_rbar(a.q, a.n)?;
        passed = brute == rbar;
        text.push_str(&format!("enumeration = {brute} {}\n", pass(passed)));
        body["enumeration"] = json!(brute.to_string());
        body["agree"] = json!(passed);
    }
    Ok(Output::new(text, body).with_passed(passed))
}

fn trees(a: &TreesArgs) -> CmdResult {
    let cap = a.cap.unwrap_or_else(|| default_enumeration_cap(a.q));
    let trees = enumerate_qtrees_with_cap(a.q, a.n, cap)?;
    let labelled: BigInt = trees.iter().map(|t| count_labellings(t, a.q)).sum();
    let bound = count_labelled_bound(a.q, a.n)?;
    let betas = BetaTable::new(a.q, a.n)?;
    let nu_n = nu(a.n, &betas)?;
    let balanced = well_balanced(a.q, a.n)?;
    let tree_sum = tree_sum_sn_with_cap(a.q, a.n, &betas, cap)?;
    let s_n = corollary_recursion(a.q, a.n)?.svalues()[a.n].clone();
    let mut passed = bound.holds() && tree_sum == s_n;
    let mut text = format!(
        "q = {}, n = {}\ntrees = {}\nlabelled trees = {} (bound {}) {}\nwell-balanced = {balanced}\nnu_{} = {nu_n}\ntree sum s_{} = {tree_sum} {}\n",
        a.q,
        a.n,
        trees.len(),
        labelled,
        bound.bound,
        pass(bound.holds()),
        a.n,
        a.n,
        pass(tree_sum == s_n)
    );
    let mut body = json!({
        "command": "trees",
        "q": a.q,
        "n": a.n,
        "trees": trees.len(),
        "labelled": labelled.to_string(),
        "labelled_bound": bound.bound.to_string(),
        "well_balanced": balanced.to_string(),
        "nu": nu_n.to_string(),
        "tree_sum_s": tree_sum.to_string(),
        "tree_sum_matches": tree_sum == s_n,
    });
    if a.check_gamma {
        let gamma = gamma_bruteforce_with_cap(a.q, a.n, &betas, cap)?;
        let ok = gamma == nu_n;
        passed &= ok;
        if ok {
            text.push_str(&format!("gamma_{n} = nu_{n} = {gamma} PASS\n", n = a.n));
        } else {
            text.push_str(&format!("gamma_{n} = {gamma} != nu_{n} = {nu_n} FAIL\n", n = a.n));
        }
        body["gamma"] = json!(gamma.to_string());
        body["gamma_equals_nu"] = json!(ok);
    }
    body["passed"] = json!(passed);
    Ok(Output::new(text, body).with_passed(passed))
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| usage(format!("{what}: cannot parse {t:?}"))))
        .collect()
}

fn classify(a: &ClassifyArgs) -> CmdResult {
    let coeffs: Vec<i64> = parse_list(&a.coeffs, "--coeffs")?;
    let verdict = if a.nonmonic {
        classify_split_nonmonic_traced(&TruncatedPadicPoly::bounded_from_i64s(a.p, a.precision, &coeffs)?, true)?
    } else {
        let mut full = coeffs.clone();
        full.push(1);
        classify_split_traced(&TruncatedPadicPoly::from_i64s(a.p, a.precision, &full)?, true)?
    };
    let outcome = serde_json::to_value(verdict.outcome).expect("serializable");
    let text = format!(
        "{}\nprecision consumed = {}\n{}",
        outcome.as_str().unwrap_or_default(),
        verdict.precision_consumed,
        verdict.trace_text()
    );
    let mut body = serde_json::to_value(&verdict).expect("serializable");
    body["command"] = json!("classify");
    Ok(Output::new(text, body))
}

fn sample(a: &SampleArgs) -> CmdResult {
    if a.exhaustive {
        if a.mode != SampleMode::Monic {
            return Err(usage("--exhaustive supports monic mode only"));
        }
        let rep = exhaustive_bracket(a.p, a.n, a.precision)?;
        let ok = rep.within_bracket();
        let text = format!(
            "p = {}, n = {}, K = {}: {} polynomials, {} split, {} not split, {} indeterminate\ndecided split fraction = {} in [{}, {}] around r_n = {} {}\n",
            rep.p,
            rep.n,
            rep.precision,
            rep.total,
            rep.splits,
            rep.not_splits,
            rep.indeterminates,
            rep.decided_split_fraction,
            rep.lower,
            rep.upper,
            rep.exact,
            pass(ok)
        );
        let mut body = serde_json::to_value(&rep).expect("serializable");
        body["command"] = json!("sample");
        body["within_bracket"] = json!(ok);
        return Ok(Output::new(text, body).with_passed(ok));
    }
    let mode = match a.mode {
        SampleMode::Monic => Mode::Monic,
        SampleMode::Nonmonic => Mode::Nonmonic,
    };
    if a.workers == Some(0) {
        return Err(usage("--workers must be positive"));
    }
    let rep = monte_carlo_with_workers(a.p, a.n, a.precision, a.samples, a.seed, mode, a.workers)?;
    let z = rep.z_score.map(|z| format!("{z:.4}")).unwrap_or_else(|| "undefined".into());
    let text = format!(
        "p = {}, n = {}, K = {}, mode = {:?}, seed = {}\nsamples = {}: {} split, {} not split, {} indeterminate\nestimate = {:.6} +- {:.6}, exact = {} ({:.6}), z = {z}\n",
        rep.p,
        rep.n,
        rep.precision,
        mode,
        rep.seed,
        rep.samples,
        rep.splits,
        rep.not_splits,
        rep.indeterminates,
        rep.estimate,
        rep.std_error,
        rep.exact,
        rep.exact_value
    );
    let mut body = serde_json::to_value(&rep).expect("serializable");
    body["command"] = json!("sample");
    Ok(Output::new(text, body))
}

fn asymptotics(a: &AsymptoticsArgs) -> CmdResult {
    let mut out = match a.report {
        AsymptoticsReport::Summary => asymptotics_summary(a)?,
        AsymptoticsReport::LogSn | AsymptoticsReport::LogNu => {
            let (series, label) = if a.report == AsymptoticsReport::LogSn {
                (log_sn(a.q, a.n)?, "s")
            } else {
                (log_nu(a.q, a.n)?, "nu")
            };
            let mut text = String::new();
            let mut csv = format!("n,log_q_{label}_n\n");
            for (n, v) in series.logs.iter().enumerate() {
                text.push_str(&format!("log_{}({label}_{n}) = {v:.12}\n", a.q));
                csv.push_str(&format!("{n},{v:.15e}\n"));
            }
            let body = json!({"command": "asymptotics", "report": format!("log-{label}"), "q": a.q, "logs": series.logs});
            Output::new(text, body).with_csv(csv)
        }
        AsymptoticsReport::Omega => {
            let problem = nu_omega(a.q, a.n)?;
            let sol = omega_solve(&problem, 64);
            let text = format!(
                "Omega_n = log_{q} nu_n - w_n, q = {q}, n <= {}\nrecursion = tree sum = level formula: {}\nkappa estimate = {:.3}{}\nOmega_N / N = {:.9}\n",
                a.n,
                pass(sol.agree()),
                sol.kappa_estimate,
                sol.warning.as_ref().map(|w| format!("\nwarning: {w}")).unwrap_or_default(),
                sol.direct[a.n] / a.n as f64,
                q = a.q
            );
            let mut body = serde_json::to_value(&sol).expect("serializable");
            body["command"] = json!("asymptotics");
            body["report"] = json!("omega");
            Output::new(text, body).with_csv(sol.w_csv()).with_passed(sol.agree())
        }
        AsymptoticsReport::Sumit => {
            let parts: Vec<usize> =
                parse_list(a.parts.as_deref().ok_or_else(|| usage("--report sumit needs --parts"))?, "--parts")?;
            let v = sumit_correction(a.q, &parts)?;
            let text = format!("w_n - log_q beta_n - sum w_a = {v:.12}\n");
            Output::new(text, json!({"command": "asymptotics", "report": "sumit", "q": a.q, "parts": parts, "value": v}))
        }
    };
    if a.emit_w {
        let dir = out_dir();
        let sample = moews_residual(a.q, 1, a.n)?;
        let problem = nu_omega(a.q, a.n)?;
        let w: String = std::iter::once("x,zeta\n".to_string())
            .chain((0..=1024).map(|i| {
                let x = i as f64 / 1024.0;
                format!("{x:.12},{:.12}\n", zeta(a.q, &problem.omega, x))
            }))
            .collect();
        let files = [
            (dir.join(format!("wbar_q{}.csv", a.q)), sample.to_csv()),
            (dir.join(format!("wbar_q{}_binned.csv", a.q)), sample.binned_csv(10)),
            (dir.join(format!("w_q{}.csv", a.q)), w),
        ];
        let mut written = Vec::new();
        for (path, contents) in &files {
            write_file(path, contents)?;
            out.text.push_str(&format!("wrote {}\n", path.display()));
            written.push(path.display().to_string());
        }
        out.json["written"] = json!(written);
    }
    Ok(out)
}

fn asymptotics_summary(a: &AsymptoticsArgs) -> CmdResult {
    let q = a.q;
    let bound = rn_linear_bound(q, a.n)?;
    let wb = wb_leading_terms(q, a.n)?;
    let sample = moews_residual(q, 1, a.n)?;
    let (u_min, u_max) =
        sample.points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p.2), hi.max(p.2)));
    let mut passed = bound.is_finite() && wb.is_finite();
    let mut text = format!(
        "q = {q}, N = {}\nC_q = max |log_q r_n + n^2/(2(q-1)) + n log_q n / 2| / n = {:.6} (n = {})\nwell-balanced constant = {:.6} (n = {})\nu_n in [{u_min:.6}, {u_max:.6}]\n",
        a.n, bound.fitted_constant, bound.argmax, wb.fitted_constant, wb.argmax
    );
    let mut body = json!({
        "command": "asymptotics",
        "report": "summary",
        "q": q,
        "n": a.n,
        "c_q": bound.fitted_constant,
        "c_q_argmax": bound.argmax,
        "wb_constant": wb.fitted_constant,
        "wb_argmax": wb.argmax,
        "u_min": u_min,
        "u_max": u_max,
    });
    if a.n >= 32 {
        let (lo, hi) = ((a.n / 16).max(1), a.n / 2);
        let (d, at) = period_collapse(&sample, lo, hi)?;
        text.push_str(&format!("max |u_n - u_2n| over [{lo}, {hi}] = {d:.3e} (n = {at})\n"));
        body["period_collapse"] = json!({"lo": lo, "hi": hi, "max": d, "argmax": at});
    }
    if q == 2 && a.n >= 3 {
        let rep = lemr_check(a.n, a.exact_limit)?;
        passed &= rep.passed();
        text.push_str(&format!(
            "R_2 = {}; max log_2 R_m = {:.6} (m = {}), exact to m = {} {}\nmax eapprox ratio = {:.6} (n = {}) {}\n",
            rep.r2,
            rep.max_log2_ratio,
            rep.argmax_ratio,
            rep.exact_limit,
            pass(rep.violations.is_empty() && rep.exact_ok),
            rep.eapprox_max,
            rep.eapprox_argmax,
            pass(rep.eapprox_violations.is_empty())
        ));
        body["lemr"] = serde_json::to_value(&rep).expect("serializable");
    }
    body["passed"] = json!(passed);
    let csv = format!(
        "q,n,c_q,wb_constant,u_min,u_max\n{q},{},{},{},{u_min},{u_max}\n",
        a.n, bound.fitted_constant, wb.fitted_constant
    );
    Ok(Output::new(text, body).with_csv(csv).with_passed(passed))
}

fn zeros(a: &ZerosArgs) -> CmdResult {
    let q = Complex64::new(a.q.re, a.q.im);
    let zero = find_g_zero_with(q, a.truncation)?;
    let mut text = format!(
        "q = {}\nz0 = {} {:+}i\n|G(z0)| = {:e}\nwinding number on |z| = {} is {:.9}\ntail bound = {:e}\nmethod = {} ({} iterations)\n",
        a.q,
        zero.z0[0],
        zero.z0[1],
        zero.abs_g_at_z0,
        zero.radius,
        zero.winding,
        zero.tail_bound,
        zero.method,
        zero.newton_iterations
    );
    let mut body = json!({"command": "zeros", "zero": zero});
    if let Some(n_max) = a.property5 {
        let rep = property5_check(q, n_max)?;
        text.push_str(&format!(
            "N = {n_max}: 1/|z0| = {:.9}, |r_N/r_(N-1)| = {:.9} (rel {:.2e}), extrapolated = {:.9} (rel {:.2e})\nslope = {:.6}, expected {:.6} (error {:.2e})\n",
            rep.inverse_abs_z0,
            rep.raw_ratio,
            rep.raw_rel_error,
            rep.extrapolated_ratio,
            rep.extrapolated_rel_error,
            rep.slope,
            rep.expected_slope,
            rep.slope_error
        ));
        body["property5"] = serde_json::to_value(&rep).expect("serializable");
    }
    if let Some(n) = a.probe {
        if a.q.im != 0.0 || a.q.re.fract() != 0.0 {
            return Err(usage("--probe needs integer q"));
        }
        let probe = probe_open_questions(a.q.re as u64, n, 3)?;
        text.push_str(&format!("{}\n", probe.label));
        if let Some(c) = probe.numerator_negative_zeros {
            text.push_str(&format!("numerator of r_{n}: {c} real zeros on (-10, 0)\n"));
        }
        text.push_str(&format!("zeros of G in |z| < {}: {}\n", probe.radius, probe.zero_count));
        for z in &probe.zeros {
            text.push_str(&format!("  {} {:+}i\n", z[0], z[1]));
        }
        text.push_str(&format!("all real and negative: {}\n", probe.all_real_negative));
        body["probe"] = serde_json::to_value(&probe).expect("serializable");
    }
    Ok(Output::new(text, body))
}
