use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::logspace::sn_logs;
use crate::error::{Error, Result};
use crate::split::{euler_split_coefficients, negative_axis_numerator_roots, symbolic_rn, DEFAULT_SYMBOLIC_CAP};

/// Default truncation order of `G`.
pub const DEFAULT_TRUNCATION: usize = 40;
const CONTOUR_POINTS: usize = 8192;

fn integer_q(q: Complex64) -> Option<u64> {
    (q.im == 0.0 && q.re.fract() == 0.0 && q.re >= 2.0 && q.re < 1e6).then_some(q.re as u64)
}

fn check_q(q: Complex64) -> Result<()> {
    if !(q.norm() >= 2.0) || !q.re.is_finite() || !q.im.is_finite() {
        return Err(Error::param(format!("need |q| >= 2, got {q}")));
    }
    Ok(())
}

/// `s_0..s_{M-1}`. Integer `q` uses the cancellation-free log-space route,
/// where terms below the double range vanish harmlessly.
fn g_coefficients(q: Complex64, m: usize) -> Vec<Complex64> {
    match integer_q(q) {
        Some(qi) => sn_logs(qi, m - 1).ln_s.iter().map(|l| Complex64::new(l.exp(), 0.0)).collect(),
        None => euler_split_coefficients(q, m - 1).1,
    }
}

/// `(G(z), G′(z))` by Horner.
fn eval(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut g = Complex64::new(0.0, 0.0);
    let mut dg = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dg = dg * z + g;
        g = g * z + c;
    }
    (g, dg)
}

/// `(1/2πi)∮ z^k G′/G dz` on `|z| = radius` for `k = 0..=k_max`, plus the
/// smallest `|G|` seen on the contour.
fn contour_moments(coeffs: &[Complex64], radius: f64, k_max: usize) -> (Vec<Complex64>, f64) {
    let mut sums = vec![Complex64::new(0.0, 0.0); k_max + 1];
    let mut min_g = f64::INFINITY;
    for i in 0..CONTOUR_POINTS {
        let z = Complex64::from_polar(radius, 2.0 * PI * i as f64 / CONTOUR_POINTS as f64);
        let (g, dg) = eval(coeffs, z);
        min_g = min_g.min(g.norm());
        // dz = i z dθ, so the integrand becomes z G′/G dθ / 2π
        let mut term = z * dg / g;
        for s in sums.iter_mut() {
            *s += term;
            term *= z;
        }
    }
    let n = CONTOUR_POINTS as f64;
    (sums.into_iter().map(|s| s / n).collect(), min_g)
}

fn newton(coeffs: &[Complex64], start: Complex64, radius: f64) -> Option<(Complex64, usize)> {
    let mut z = start;
    let (mut g, _) = eval(coeffs, z);
    for it in 1..=200 {
        let (_, dg) = eval(coeffs, z);
        if dg.norm() == 0.0 {
            return None;
        }
        let step = g / dg;
        let mut lambda = 1.0;
        let mut next = z - step;
        let mut g_next = eval(coeffs, next).0;
        while g_next.norm() > g.norm() && lambda > 1e-6 {
            lambda /= 2.0;
            next = z - step * lambda;
            g_next = eval(coeffs, next).0;
        }
        z = next;
        g = g_next;
        if !z.re.is_finite() || z.norm() > radius {
            return None;
        }
        if (step * lambda).norm() <= 1e-15 * z.norm().max(1.0) || g.norm() == 0.0 {
            return Some((z, it));
        }
    }
    Some((z, 200))
}

/// `Σ_{n≥M} |q|^{-C(n+1,2)} R^n`, bounding the discarded tail of `G` on
/// `|z| = R` since `|r_n| ≤ 1` for `|q| ≥ 2`.
fn tail_bound(q: Complex64, m: usize, radius: f64) -> f64 {
    let (lq, lr) = (q.norm().ln(), radius.ln());
    (m..m + 200).map(|n| (-((n * (n + 1) / 2) as f64) * lq + n as f64 * lr).exp()).sum()
}

/// The zero of truncated `G` in `|z| < |q| + 1` with its certificate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GZero {
    pub q: [f64; 2],
    pub truncation: usize,
    pub z0: [f64; 2],
    pub abs_g_at_z0: f64,
    pub radius: f64,
    /// real part of `(1/2πi)∮ G′/G` on `|z| = radius`
    pub winding: f64,
    pub winding_imag: f64,
    pub tail_bound: f64,
    /// `newton` or `contour-moment` when Newton left the disc
    pub method: String,
    pub newton_iterations: usize,
}

impl GZero {
    pub fn z0(&self) -> Complex64 {
        Complex64::new(self.z0[0], self.z0[1])
    }
}

pub fn find_g_zero(q: Complex64) -> Result<GZero> {
    find_g_zero_with(q, DEFAULT_TRUNCATION)
}

/// Damped Newton from `-q - 1/2` on `G` truncated at order `M`, certified by
/// the winding number of `G` around `|z| = |q| + 1`. When Newton leaves the
/// disc the start point becomes the contour moment `∮ z G′/G`, which is the
/// zero itself when there is exactly one.
pub fn find_g_zero_with(q: Complex64, m: usize) -> Result<GZero> {
    check_q(q)?;
    if m < 4 {
        return Err(Error::param("truncation order must be at least 4"));
    }
    let coeffs = g_coefficients(q, m);
    let radius = q.norm() + 1.0;
    let (moments, _) = contour_moments(&coeffs, radius, 1);
    let winding = moments[0];
    if (winding.re - 1.0).abs() > 1e-2 || winding.im.abs() > 1e-2 {
        return Err(Error::CertificateFailed { winding: winding.re });
    }
    let start = -q - Complex64::new(0.5, 0.0);
    let (found, method) = match newton(&coeffs, start, radius) {
        Some(hit) => (Some(hit), "newton"),
        None => (newton(&coeffs, moments[1], radius), "contour-moment"),
    };
    let (z0, iterations) = found.ok_or_else(|| Error::Numerical("Newton iteration did not converge".into()))?;
    let abs_g = eval(&coeffs, z0).0.norm();
    if abs_g >= 1e-12 {
        return Err(Error::Numerical(format!("|G(z0)| = {abs_g:e} after Newton")));
    }
    Ok(GZero {
        q: [q.re, q.im],
        truncation: m,
        z0: [z0.re, z0.im],
        abs_g_at_z0: abs_g,
        radius,
        winding: winding.re,
        winding_imag: winding.im,
        tail_bound: tail_bound(q, m, radius),
        method: method.into(),
        newton_iterations: iterations,
    })
}

fn regress(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    (my - slope * mx, slope)
}

/// Decay shape of `r_n(q)` against the dominant zero of `G`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Property5Report {
    pub q: [f64; 2],
    pub n_max: usize,
    pub integer_q: bool,
    pub z0: [f64; 2],
    pub inverse_abs_z0: f64,
    /// `|r_{N}/r_{N-1}|`
    pub raw_ratio: f64,
    pub raw_rel_error: f64,
    /// `exp(-L)` from the fit `ln|r_n| - ln|r_{n+1}| = L + c/n` over `[N/2, N)`
    pub extrapolated_ratio: f64,
    pub extrapolated_rel_error: f64,
    /// slope of `ln|r_n z0^n|` against `ln n` over `[N/2, N]`
    pub slope: f64,
    pub expected_slope: f64,
    pub slope_error: f64,
}

impl Property5Report {
    /// Ratio within `ratio_tol` relative and slope within `slope_tol`.
    pub fn matches(&self, ratio_tol: f64, slope_tol: f64) -> bool {
        self.extrapolated_rel_error < ratio_tol && self.slope_error < slope_tol
    }

    /// The raw ratio is far from `1/|z0|`, as for super-geometric decay.
    pub fn ratio_diverges(&self) -> bool {
        self.raw_rel_error > 0.5
    }
}

/// `ln|r_0|..ln|r_N|`.
fn ln_abs_rn(q: Complex64, n_max: usize) -> Vec<f64> {
    match integer_q(q) {
        Some(qi) => {
            let lq = (qi as f64).ln();
            sn_logs(qi, n_max).ln_s.iter().enumerate().map(|(n, l)| l + (n * (n + 1) / 2) as f64 * lq).collect()
        }
        None => euler_split_coefficients(q, n_max).0.iter().map(|r| r.norm().ln()).collect(),
    }
}

/// Compares `r_n(q)`, `n ≤ N`, with `z0^{-n} n^{-q-1}`: a ratio test
/// extrapolated in `1/n`, and a log-log slope after removing `z0^{-n}`.
pub fn property5_check(q: Complex64, n_max: usize) -> Result<Property5Report> {
    if n_max < 16 {
        return Err(Error::param("need N >= 16"));
    }
    let zero = find_g_zero(q)?;
    let z0 = zero.z0();
    let lz = z0.norm().ln();
    let lr = ln_abs_rn(q, n_max);
    if lr.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical("r_n left the double range; lower N".into()));
    }
    let lo = n_max / 2;
    let inv = 1.0 / z0.norm();
    let raw_ratio = (lr[n_max] - lr[n_max - 1]).exp();
    let xs: Vec<f64> = (lo..n_max).map(|n| 1.0 / n as f64).collect();
    let ds: Vec<f64> = (lo..n_max).map(|n| lr[n] - lr[n + 1]).collect();
    let (l, _) = regress(&xs, &ds);
    let extrapolated_ratio = (-l).exp();
    let ln_n: Vec<f64> = (lo..=n_max).map(|n| (n as f64).ln()).collect();
    let scaled: Vec<f64> = (lo..=n_max).map(|n| lr[n] + n as f64 * lz).collect();
    let (_, slope) = regress(&ln_n, &scaled);
    let expected = -q.re - 1.0;
    Ok(Property5Report {
        q: [q.re, q.im],
        n_max,
        integer_q: integer_q(q).is_some(),
        z0: zero.z0,
        inverse_abs_z0: inv,
        raw_ratio,
        raw_rel_error: (raw_ratio / inv - 1.0).abs(),
        extrapolated_ratio,
        extrapolated_rel_error: (extrapolated_ratio / inv - 1.0).abs(),
        slope,
        expected_slope: expected,
        slope_error: (slope - expected).abs(),
    })
}

/// Roots of the monic polynomial with elementary symmetric functions `e`.
fn durand_kerner(e: &[Complex64]) -> Vec<Complex64> {
    let k = e.len() - 1;
    let poly = |z: Complex64| {
        (0..=k).fold(Complex64::new(0.0, 0.0), |acc, i| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            acc * z + e[i] * sign
        })
    };
    let scale = e.iter().map(|c| c.norm()).fold(1.0, f64::max);
    let mut roots: Vec<Complex64> =
        (0..k).map(|i| Complex64::new(0.4, 0.9).powu(i as u32) * scale).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..k {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..k {
                if i != j {
                    den *= roots[i] - roots[j];
                }
            }
            let step = poly(roots[i]) / den;
            roots[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-14 * scale {
            break;
        }
    }
    roots
}

/// Numerical evidence on the two open questions about negative real zeros.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OpenQuestionProbe {
    pub label: String,
    pub q: u64,
    pub n: usize,
    /// real zeros of the numerator of `r_n(q)` on `(-10, 0)`, when `n` is
    /// within the symbolic cap
    pub numerator_negative_zeros: Option<usize>,
    pub radius: f64,
    /// zeros of truncated `G` inside `|z| < radius` by the argument principle
    pub zero_count: usize,
    pub zeros: Vec<[f64; 2]>,
    pub all_real_negative: bool,
}

/// Sturm count of negative real zeros of the numerator of `r_n`, and the
/// first zeros of `G` (at least `wanted` when the truncation allows).
pub fn probe_open_questions(q: u64, n: usize, wanted: usize) -> Result<OpenQuestionProbe> {
    let qc = Complex64::new(q as f64, 0.0);
    check_q(qc)?;
    let numerator_negative_zeros = if (1..=DEFAULT_SYMBOLIC_CAP).contains(&n) {
        Some(negative_axis_numerator_roots(&symbolic_rn(n)?, n, 10)?)
    } else {
        None
    };
    let coeffs = g_coefficients(qc, DEFAULT_TRUNCATION);
    let mut radius = q as f64 + 1.0;
    let (moments, mut count);
    loop {
        let (mut m, mut min_g) = contour_moments(&coeffs, radius, 0);
        // keep the contour away from zeros
        while min_g < 1e-6 {
            radius *= 1.1;
            (m, min_g) = contour_moments(&coeffs, radius, 0);
        }
        count = m[0].re.round().max(0.0) as usize;
        let next = radius * q as f64;
        if count >= wanted || tail_bound(qc, DEFAULT_TRUNCATION, next) > 1e-12 || count >= 8 {
            moments = contour_moments(&coeffs, radius, count).0;
            break;
        }
        radius = next;
    }
    let mut e = vec![Complex64::new(1.0, 0.0)];
    for k in 1..=count {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 1..=k {
            let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
            acc += e[k - i] * moments[i] * sign;
        }
        e.push(acc / k as f64);
    }
    let mut zeros: Vec<Complex64> = if count == 0 { Vec::new() } else { durand_kerner(&e) };
    for z in zeros.iter_mut() {
        if let Some((polished, _)) = newton(&coeffs, *z, 2.0 * radius) {
            *z = polished;
        }
    }
    zeros.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
    let all_real_negative = zeros.iter().all(|z| z.re < 0.0 && z.im.abs() <= 1e-8 * z.norm());
    Ok(OpenQuestionProbe {
        label: "EMPIRICAL EVIDENCE".into(),
        q,
        n,
        numerator_negative_zeros,
        radius,
        zero_count: count,
        zeros: zeros.iter().map(|z| [z.re, z.im]).collect(),
        all_real_negative,
    })
}
