use serde::Serialize;

use crate::error::{Error, Result};
use crate::split::check_q;

/// Largest `N` accepted by the log-space routines.
pub const LOG_SERIES_CAP: usize = 1 << 20;

/// Natural logarithms of a positive sequence, reported in base `q`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogSeries {
    pub q: u64,
    /// Entry `n` is `log_q` of the `n`-th term.
    pub logs: Vec<f64>,
    pub computed_to: usize,
}

impl LogSeries {
    fn from_ln(q: u64, ln: Vec<f64>) -> Result<Self> {
        if let Some(n) = ln.iter().position(|v| !v.is_finite()) {
            return Err(Error::Numerical(format!(
                "log-space value at n = {n} left the double-precision range; use exact mode for this range"
            )));
        }
        let lq = (q as f64).ln();
        let computed_to = ln.len() - 1;
        Ok(LogSeries { q, logs: ln.into_iter().map(|v| v / lq).collect(), computed_to })
    }

    pub fn get(&self, n: usize) -> Option<f64> {
        self.logs.get(n).copied()
    }
}

fn check_n(n_max: usize) -> Result<()> {
    if n_max > LOG_SERIES_CAP {
        return Err(Error::LimitExceeded { what: format!("log-space length N = {n_max}"), limit: LOG_SERIES_CAP });
    }
    Ok(())
}

/// `ln(a + b)` from `ln a`, `ln b`.
pub(crate) fn ln_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Terms more than this far below the largest (in natural log) are dropped;
/// with at most `N` terms the neglected mass is below `N e^{-80}` relative.
const CUTOFF: f64 = 80.0;

/// `ln Σ_j exp(terms_j)` with max factoring and Neumaier summation.
pub(crate) fn ln_sum(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for &t in terms {
        let d = t - max;
        if d < -CUTOFF {
            continue;
        }
        let x = d.exp();
        let s = sum + x;
        comp += if sum.abs() >= x.abs() { (sum - s) + x } else { (x - s) + sum };
        sum = s;
    }
    max + (sum + comp).ln()
}

/// `ln β_n` for `n ≥ 1`.
pub(crate) fn ln_beta(q: u64, n: usize) -> f64 {
    let lq = (q as f64).ln();
    if n == 1 {
        return -lq;
    }
    // β_n = q^{-C(n+1,2)} / (1 - q^{1 - C(n+1,2)})
    let c = (n * (n + 1) / 2) as f64;
    -c * lq - (-((1.0 - c) * lq).exp()).ln_1p()
}

/// `ln s_n` together with `ln E_q(n)`, the log of the sum over
/// compositions of `n` into `q` parts with at least two nonzero parts.
pub(crate) struct SnLogs {
    pub ln_s: Vec<f64>,
    pub ln_sigma: Vec<f64>,
}

/// `s_n = β_n E_q(n)`, where `E_k(n)` is the part of `[t^n] G^k` not
/// involving `s_n`. With `P_k(m) = [t^m] G^k`:
/// `E_k(n) = E_{k-1}(n) + Σ_{0<j<n} s_j P_{k-1}(n-j)` and
/// `P_k(n) = k s_n + E_k(n)`. All terms are positive, so every sum is a
/// cancellation-free log-sum-exp. Cost `O(q N²)`.
pub(crate) fn sn_logs(q: u64, n_max: usize) -> SnLogs {
    let qs = q as usize;
    let lq = (q as f64).ln();
    let mut ln_s = vec![0.0, -lq];
    let mut ln_sigma = vec![f64::NEG_INFINITY, f64::NEG_INFINITY];
    // ln_p[k][m] = ln P_k(m) for k = 1..q-1 (index 0 unused)
    let mut ln_p: Vec<Vec<f64>> = vec![Vec::new(); qs];
    for row in ln_p.iter_mut().skip(1) {
        row.reserve(n_max + 1);
        row.push(0.0);
    }
    // P_k(1) = k s_1
    for (k, row) in ln_p.iter_mut().enumerate().skip(1) {
        row.push((k as f64).ln() - lq);
    }
    let mut terms = Vec::with_capacity(n_max);
    let mut ln_e = vec![f64::NEG_INFINITY; qs + 1];
    for n in 2..=n_max {
        ln_e[1] = f64::NEG_INFINITY;
        for k in 2..=qs {
            terms.clear();
            let prev = &ln_p[k - 1];
            terms.extend((1..n).map(|j| ln_s[j] + prev[n - j]));
            ln_e[k] = ln_add(ln_e[k - 1], ln_sum(&terms));
        }
        let s_n = ln_beta(q, n) + ln_e[qs];
        ln_s.push(s_n);
        ln_sigma.push(ln_e[qs]);
        for (k, row) in ln_p.iter_mut().enumerate().skip(1) {
            row.push(ln_add((k as f64).ln() + s_n, ln_e[k]));
        }
    }
    ln_s.truncate(n_max + 1);
    ln_sigma.truncate(n_max + 1);
    SnLogs { ln_s, ln_sigma }
}

/// `log_q s_0..log_q s_N`.
pub fn log_sn(q: u64, n_max: usize) -> Result<LogSeries> {
    check_q(q)?;
    check_n(n_max)?;
    LogSeries::from_ln(q, sn_logs(q, n_max).ln_s)
}

/// `ln ν_n` by the balanced recursion `ν_n = β_n ν_x^{q-y} ν_{x+1}^y`.
pub(crate) fn nu_logs(q: u64, n_max: usize) -> Vec<f64> {
    let qs = q as usize;
    let mut ln_nu = vec![0.0, -(q as f64).ln()];
    for n in 2..=n_max {
        let (x, y) = (n / qs, n % qs);
        let mut v = ln_beta(q, n) + (qs - y) as f64 * ln_nu[x];
        if y > 0 {
            v += y as f64 * ln_nu[x + 1];
        }
        ln_nu.push(v);
    }
    ln_nu.truncate(n_max + 1);
    ln_nu
}

/// `log_q ν_0..log_q ν_N`.
pub fn log_nu(q: u64, n_max: usize) -> Result<LogSeries> {
    check_q(q)?;
    check_n(n_max)?;
    LogSeries::from_ln(q, nu_logs(q, n_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{log_q_rational, rational_to_f64};
    use crate::qtrees::{nu_table, BetaTable};
    use crate::split::corollary_recursion;

    #[test]
    fn small_values() {
        let s = log_sn(2, 3).unwrap();
        assert!((s.logs[1] + 1.0).abs() < 1e-15);
        assert!((s.logs[2] + 24f64.log2()).abs() < 1e-13);
        let nu = log_nu(2, 4).unwrap();
        assert!((nu.logs[4] + 588672f64.log2()).abs() < 1e-12);
        assert!((nu.logs[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn matches_exact_values() {
        for q in [2u64, 3] {
            let exact = corollary_recursion(q, 30).unwrap();
            let betas = BetaTable::new(q, 30).unwrap();
            let nu_exact = nu_table(&betas);
            let s = log_sn(q, 30).unwrap();
            let nu = log_nu(q, 30).unwrap();
            for n in 1..=30 {
                // relative error of the reconstruction = |q^{Δ log} - 1|
                let ds = s.logs[n] - log_q_rational(&exact.svalues()[n], q as f64);
                let dn = nu.logs[n] - log_q_rational(&nu_exact[n], q as f64);
                assert!((ds * (q as f64).ln()).abs() < 1e-10, "q={q} n={n} {ds}");
                assert!((dn * (q as f64).ln()).abs() < 1e-10, "q={q} n={n} {dn}");
            }
            assert!((rational_to_f64(&exact.svalues()[3]) - (q as f64).powf(s.logs[3])).abs() < 1e-15);
        }
    }

    #[test]
    fn strictly_decreasing() {
        let s = log_sn(3, 200).unwrap();
        assert!(s.logs.windows(2).skip(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn nu_at_nine_for_q_three() {
        let nu = log_nu(3, 9).unwrap();
        let expected = ln_beta(3, 9) / 3f64.ln() + 3.0 * nu.logs[3];
        assert!((nu.logs[9] - expected).abs() < 1e-12);
    }

    #[test]
    fn cap() {
        assert!(log_sn(2, LOG_SERIES_CAP + 1).unwrap_err().is_limit());
    }
}
