use serde::Serialize;

use super::logspace::{sn_logs, LOG_SERIES_CAP};
use crate::arith::{log_q_rational, q_pow, rat, Rational};
use crate::error::{Error, Result};
use crate::split::corollary_recursion;

/// Largest `m` for which `R_m` is checked in exact arithmetic by default.
/// Exact `s_n` at `q = 2` costs about 4.5 s at `n = 50` and 170 s at `n = 80`.
pub const DEFAULT_EXACT_LIMIT: usize = 40;

/// Outcome of [`lemr_check`] at `q = 2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemrReport {
    pub n_max: usize,
    pub exact_limit: usize,
    /// `R_2 = s_3 s_1 / s_2²` as an exact fraction
    pub r2: String,
    /// exact `R_m ≤ 1/2` for `2 ≤ m ≤ exact_limit`
    pub exact_ok: bool,
    /// `m` with `R_m > 1/2` in either mode
    pub violations: Vec<usize>,
    /// `max_m log_2 R_m` over all checked `m`
    pub max_log2_ratio: f64,
    pub argmax_ratio: usize,
    /// `max_n` of the `Σ′ / (s_x^{2-y} s_{x+1}^y)` ratio over `2 ≤ n ≤ N`
    pub eapprox_max: f64,
    pub eapprox_argmax: usize,
    /// `n` with that ratio above 3
    pub eapprox_violations: Vec<usize>,
}

impl LemrReport {
    pub fn passed(&self) -> bool {
        self.exact_ok && self.violations.is_empty() && self.eapprox_violations.is_empty()
    }
}

/// Checks `R_m = s_{m+1}s_{m-1}/s_m² ≤ 1/2` for `2 ≤ m < N` and the ratio
/// bound `Σ′_{|b|=n} Π s_{b_i} ≤ 3 s_x^{2-y} s_{x+1}^y` for `2 ≤ n ≤ N`, at
/// `q = 2`. Exact for indices up to `exact_limit`, log-space beyond.
pub fn lemr_check(n_max: usize, exact_limit: usize) -> Result<LemrReport> {
    if n_max < 3 {
        return Err(Error::param("need N >= 3"));
    }
    if n_max > LOG_SERIES_CAP {
        return Err(Error::LimitExceeded { what: format!("log-space length N = {n_max}"), limit: LOG_SERIES_CAP });
    }
    let exact_limit = exact_limit.clamp(2, n_max - 1);
    let half = rat(1, 2);
    let three = rat(3, 1);
    let table = corollary_recursion(2, exact_limit + 1)?;
    let s = table.svalues();
    let ratio = |m: usize| s[m + 1].clone() * s[m - 1].clone() / (s[m].clone() * s[m].clone());
    let mut violations = Vec::new();
    let mut eapprox_violations = Vec::new();
    let (mut max_lr, mut arg_r) = (f64::NEG_INFINITY, 2);
    for m in 2..=exact_limit {
        let r = ratio(m);
        if r > half {
            violations.push(m);
        }
        let lr = log_q_rational(&r, 2.0);
        if lr > max_lr {
            max_lr = lr;
            arg_r = m;
        }
    }
    let exact_ok = violations.is_empty();
    let (mut max_e, mut arg_e) = (f64::NEG_INFINITY, 2);
    for n in 2..=exact_limit {
        // Σ′ = s_n / β_n = s_n (2^{C(n+1,2)} - 2)
        let sigma = s[n].clone() * (q_pow(2, (n * (n + 1) / 2) as u64) - rat(2, 1));
        let (x, y) = (n / 2, n % 2);
        let mut denom: Rational = s[x].clone() * s[x].clone();
        if y == 1 {
            denom = s[x].clone() * s[x + 1].clone();
        }
        let e = sigma / denom;
        if e > three {
            eapprox_violations.push(n);
        }
        let le = log_q_rational(&e, 2.0);
        if le > max_e {
            max_e = le;
            arg_e = n;
        }
    }
    if n_max > exact_limit {
        let logs = sn_logs(2, n_max);
        let (ls, lsig) = (&logs.ln_s, &logs.ln_sigma);
        let ln2 = 2f64.ln();
        for m in exact_limit + 1..n_max {
            let lr = (ls[m + 1] + ls[m - 1] - 2.0 * ls[m]) / ln2;
            if lr > -1.0 {
                violations.push(m);
            }
            if lr > max_lr {
                max_lr = lr;
                arg_r = m;
            }
        }
        for n in exact_limit + 1..=n_max {
            let (x, y) = (n / 2, n % 2);
            let d = if y == 1 { ls[x] + ls[x + 1] } else { 2.0 * ls[x] };
            let le = (lsig[n] - d) / ln2;
            if le > 3f64.log2() {
                eapprox_violations.push(n);
            }
            if le > max_e {
                max_e = le;
                arg_e = n;
            }
        }
    }
    Ok(LemrReport {
        n_max,
        exact_limit,
        r2: ratio(2).to_string(),
        exact_ok,
        violations,
        max_log2_ratio: max_lr,
        argmax_ratio: arg_r,
        eapprox_max: max_e.exp2(),
        eapprox_argmax: arg_e,
        eapprox_violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r2_value() {
        let rep = lemr_check(12, 10).unwrap();
        assert_eq!(rep.r2, "6/31");
        assert!(rep.passed());
    }

    #[test]
    fn exact_and_logspace_regions_agree() {
        let a = lemr_check(30, 29).unwrap();
        let b = lemr_check(30, 2).unwrap();
        assert!((a.max_log2_ratio - b.max_log2_ratio).abs() < 1e-9);
        assert!((a.eapprox_max - b.eapprox_max).abs() < 1e-9);
        assert!(a.passed() && b.passed());
    }
}
