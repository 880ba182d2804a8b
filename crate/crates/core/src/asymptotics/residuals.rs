use serde::Serialize;

use super::logspace::{ln_beta, nu_logs, sn_logs, LOG_SERIES_CAP};
use crate::error::{Error, Result};
use crate::split::check_q;

/// `w_n = -n²/(2(1-1/q)) - ½ n log_q n`, `w_0 = 0`.
pub fn w_n(q: u64, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let (qf, nf) = (q as f64, n as f64);
    -nf * nf / (2.0 * (1.0 - 1.0 / qf)) - 0.5 * nf * nf.log(qf)
}

/// A sequence `value(n)` together with the largest `|value(n)|/n` seen.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinearBound {
    pub q: u64,
    pub n_max: usize,
    /// entry `n` (from 1) is the residual at `n`; entry 0 is unused
    pub residuals: Vec<f64>,
    /// `max_n |residual(n)| / n`
    pub fitted_constant: f64,
    pub argmax: usize,
}

impl LinearBound {
    fn new(q: u64, residuals: Vec<f64>) -> Self {
        let (mut c, mut arg) = (0.0f64, 1);
        for (n, r) in residuals.iter().enumerate().skip(1) {
            let v = r.abs() / n as f64;
            if v > c {
                c = v;
                arg = n;
            }
        }
        LinearBound { q, n_max: residuals.len() - 1, residuals, fitted_constant: c, argmax: arg }
    }

    pub fn is_finite(&self) -> bool {
        self.fitted_constant.is_finite() && self.residuals.iter().all(|r| r.is_finite())
    }
}

fn check(q: u64, n_max: usize) -> Result<()> {
    check_q(q)?;
    if n_max < 1 {
        return Err(Error::param("need N >= 1"));
    }
    if n_max > LOG_SERIES_CAP {
        return Err(Error::LimitExceeded { what: format!("log-space length N = {n_max}"), limit: LOG_SERIES_CAP });
    }
    Ok(())
}

/// `log_q ν_n + n²/(2(1-1/q)) + ½ n log_q n` for `1 ≤ n ≤ N`.
pub fn wb_leading_terms(q: u64, n_max: usize) -> Result<LinearBound> {
    check(q, n_max)?;
    let lq = (q as f64).ln();
    let ln_nu = nu_logs(q, n_max);
    let res = (0..=n_max).map(|n| if n == 0 { 0.0 } else { ln_nu[n] / lq - w_n(q, n) }).collect();
    Ok(LinearBound::new(q, res))
}

/// `log_q r_0..log_q r_N` through the log-space `s_n`.
pub fn log_rn(q: u64, n_max: usize) -> Result<Vec<f64>> {
    check(q, n_max)?;
    let lq = (q as f64).ln();
    let ln_s = sn_logs(q, n_max).ln_s;
    Ok(ln_s.iter().enumerate().map(|(n, s)| s / lq + (n * (n + 1) / 2) as f64).collect())
}

/// `log_q r_n + n²/(2(q-1)) + ½ n log_q n` for `1 ≤ n ≤ N`; the fitted
/// constant is the empirical `C_q` of the linear bound on this quantity.
pub fn rn_linear_bound(q: u64, n_max: usize) -> Result<LinearBound> {
    let lr = log_rn(q, n_max)?;
    let qf = q as f64;
    let res = (0..=n_max)
        .map(|n| {
            let nf = n as f64;
            if n == 0 { 0.0 } else { lr[n] + nf * nf / (2.0 * (qf - 1.0)) + 0.5 * nf * nf.log(qf) }
        })
        .collect();
    Ok(LinearBound::new(q, res))
}

/// Points `(frac(log_q n), value)` of a period-1 function of `log_q n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodicSample {
    pub q: u64,
    pub which: String,
    pub n_min: usize,
    pub n_max: usize,
    /// `(n, frac(log_q n), value)`
    pub points: Vec<(usize, f64, f64)>,
}

impl PeriodicSample {
    /// Raw points as CSV with header `n,frac_log_q_n,value`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,frac_log_q_n,value\n");
        for (n, x, v) in &self.points {
            out.push_str(&format!("{n},{x:.12},{v:.12}\n"));
        }
        out
    }

    /// Mean value per bin of width `2^-bits` in the fractional part, as CSV
    /// with header `bin_start,mean_value,count`. Presentation only.
    pub fn binned_csv(&self, bits: u32) -> String {
        let bins = 1usize << bits;
        let mut sum = vec![0.0; bins];
        let mut count = vec![0usize; bins];
        for &(_, x, v) in &self.points {
            let b = ((x * bins as f64) as usize).min(bins - 1);
            sum[b] += v;
            count[b] += 1;
        }
        let mut out = String::from("bin_start,mean_value,count\n");
        for b in 0..bins {
            if count[b] > 0 {
                out.push_str(&format!("{:.12},{:.12},{}\n", b as f64 / bins as f64, sum[b] / count[b] as f64, count[b]));
            }
        }
        out
    }

    pub fn value(&self, n: usize) -> Option<f64> {
        self.points.iter().find(|p| p.0 == n).map(|p| p.2)
    }
}

pub(crate) fn frac_log(q: u64, n: usize) -> f64 {
    let x = (n as f64).log(q as f64);
    let f = x - x.floor();
    // powers of q land on 0 even when the logarithm rounds just below an integer
    if f > 1.0 - 1e-12 { 0.0 } else { f }
}

/// `u_n = (log_q r_n + n²/(2(q-1)) + ½ n log_q n)/n - ½` for `n_min ≤ n ≤ N`,
/// an estimate of the periodic term in the linear part of `log_q r_n`.
pub fn moews_residual(q: u64, n_min: usize, n_max: usize) -> Result<PeriodicSample> {
    let bound = rn_linear_bound(q, n_max)?;
    let n_min = n_min.max(1);
    let points = (n_min..=n_max).map(|n| (n, frac_log(q, n), bound.residuals[n] / n as f64 - 0.5)).collect();
    Ok(PeriodicSample { q, which: "W-bar".into(), n_min, n_max, points })
}

/// Largest `|u_n - u_{2n}|` over `lo ≤ n ≤ hi`.
pub fn period_collapse(sample: &PeriodicSample, lo: usize, hi: usize) -> Result<(f64, usize)> {
    if 2 * hi > sample.n_max || lo < sample.n_min {
        return Err(Error::param("sample does not cover the requested range"));
    }
    let u = |n: usize| sample.points[n - sample.n_min].2;
    let mut worst = (0.0f64, lo);
    for n in lo..=hi {
        let d = (u(n) - u(2 * n)).abs();
        if d > worst.0 {
            worst = (d, n);
        }
    }
    Ok(worst)
}

/// `w_n - log_q β_n - Σ w_{a_i}` for a split `a` of `n = Σ a_i` into `q` parts.
pub fn sumit_correction(q: u64, a: &[usize]) -> Result<f64> {
    check_q(q)?;
    if a.len() != q as usize {
        return Err(Error::param(format!("need exactly q = {q} parts, got {}", a.len())));
    }
    let n: usize = a.iter().sum();
    if n < 2 {
        return Err(Error::param("parts must sum to at least 2"));
    }
    let log_beta = ln_beta(q, n) / (q as f64).ln();
    Ok(w_n(q, n) - log_beta - a.iter().map(|&ai| w_n(q, ai)).sum::<f64>())
}

/// As [`sumit_correction`], refusing splits with some `|a_i - n/q| ≥ c_bar`.
pub fn sumit_correction_checked(q: u64, a: &[usize], c_bar: f64) -> Result<f64> {
    let n: usize = a.iter().sum();
    let centre = n as f64 / q as f64;
    if let Some(ai) = a.iter().find(|&&ai| (ai as f64 - centre).abs() >= c_bar) {
        return Err(Error::param(format!("part {ai} is not within {c_bar} of n/q = {centre}")));
    }
    sumit_correction(q, a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u2_at_q_two() {
        let s = moews_residual(2, 1, 4).unwrap();
        let expected = (3.0 - 3f64.log2()) / 2.0 - 0.5;
        assert!((s.value(2).unwrap() - expected).abs() < 1e-12);
        assert_eq!(s.points[0].1, 0.0);
    }

    #[test]
    fn residual_at_one() {
        let wb = wb_leading_terms(2, 8).unwrap();
        // log_2 ν_1 + 1/(2(1 - 1/2)) = -1 + 1
        assert!(wb.residuals[1].abs() < 1e-15);
        assert!(wb.is_finite());
    }

    #[test]
    fn sumit_balanced_and_rejected() {
        let v = sumit_correction(2, &[512, 512]).unwrap();
        assert!(v.is_finite());
        assert!(sumit_correction_checked(2, &[1024, 0], 3.0).is_err());
        assert!(sumit_correction(3, &[1, 2]).is_err());
    }

    #[test]
    fn csv_shapes() {
        let s = moews_residual(2, 1, 64).unwrap();
        assert!(s.to_csv().starts_with("n,frac_log_q_n,value\n1,0.000000000000,"));
        assert!(s.binned_csv(4).lines().count() > 1);
    }
}
