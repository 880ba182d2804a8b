use serde::Serialize;

use super::logspace::ln_beta;
use super::residuals::{frac_log, w_n};
use crate::arith::{rational_to_f64, Field, Rational};
use crate::error::{Error, Result};
use crate::qtrees::well_balanced;
use crate::split::check_q;

/// Nearest double, for growth diagnostics and `ζ` sampling.
pub trait ToDouble {
    fn to_double(&self) -> f64;
    /// Equality for exact types, agreement to rounding for doubles.
    fn agrees(&self, other: &Self) -> bool;
}

impl ToDouble for Rational {
    fn to_double(&self) -> f64 {
        rational_to_f64(self)
    }

    fn agrees(&self, other: &Self) -> bool {
        self == other
    }
}

impl ToDouble for f64 {
    fn to_double(&self) -> f64 {
        *self
    }

    fn agrees(&self, other: &Self) -> bool {
        (self - other).abs() <= 1e-9 * self.abs().max(other.abs()).max(1.0)
    }
}

/// `Ω_n = (q-y)Ω_x + yΩ_{x+1} + ω_n` for `n = qx + y ≥ 2`, `Ω_0 = 0`,
/// `Ω_1 = ω_1`.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaProblem<S> {
    pub q: u64,
    /// `omega[n]` for `1 ≤ n ≤ N`; `omega[0]` is ignored
    pub omega: Vec<S>,
}

impl<S: Field> OmegaProblem<S> {
    pub fn new(q: u64, omega: Vec<S>) -> Result<Self> {
        check_q(q)?;
        if omega.len() < 2 {
            return Err(Error::param("need ω_1 at least"));
        }
        Ok(OmegaProblem { q, omega })
    }

    pub fn n_max(&self) -> usize {
        self.omega.len() - 1
    }

    fn w(&self, n: usize) -> S {
        if n == 0 { S::zero() } else { self.omega[n].clone() }
    }
}

/// `Ω_0..Ω_N` by the recursion.
pub fn omega_direct<S: Field>(p: &OmegaProblem<S>) -> Vec<S> {
    let q = p.q as usize;
    let mut out = vec![S::zero(), p.w(1)];
    for n in 2..=p.n_max() {
        let (x, y) = (n / q, n % q);
        let mut v = out[x].mul_int((q - y) as i64).add(&p.w(n));
        if y > 0 {
            v = v.add(&out[x + 1].mul_int(y as i64));
        }
        out.push(v);
    }
    out.truncate(p.n_max() + 1);
    out
}

/// `Ω_n` as the sum of `ω_{ℓ(v)}` over the vertices of the well-balanced tree.
pub fn omega_tree_sum<S: Field>(p: &OmegaProblem<S>, n: usize) -> Result<S> {
    if n == 0 {
        return Ok(S::zero());
    }
    if n > p.n_max() {
        return Err(Error::param("n beyond the supplied ω"));
    }
    let tree = well_balanced(p.q, n)?;
    let mut acc = S::zero();
    tree.walk(&mut |v, _| acc = acc.add(&p.w(v.leaf_count())));
    Ok(acc)
}

/// `q^k X(n/q^k)`, the depth-`k` contribution, in integer arithmetic.
pub fn level_term<S: Field>(p: &OmegaProblem<S>, n: usize, k: u32) -> S {
    let q = p.q as u128;
    let qk = match q.checked_pow(k) {
        Some(v) if v <= 2 * n as u128 * q => v,
        _ => return S::zero(),
    };
    let n = n as u128;
    if n >= qk {
        let (a, rem) = ((n / qk) as usize, (n % qk) as i64);
        let mut v = p.w(a).mul_int((qk as i64) - rem);
        if rem > 0 {
            v = v.add(&p.w(a + 1).mul_int(rem));
        }
        return v;
    }
    // here k ≥ 1 and q^{k-1} is an integer
    let qk1 = qk / q;
    if n < qk1 {
        S::zero()
    } else if n < 2 * qk1 {
        p.w(1).mul_int(2 * (n - qk1) as i64)
    } else {
        p.w(1).mul_int(n as i64)
    }
}

/// `Σ_k q^k X(n/q^k)`.
pub fn omega_level_formula<S: Field>(p: &OmegaProblem<S>, n: usize) -> S {
    if n == 0 {
        return S::zero();
    }
    let mut acc = S::zero();
    let mut k = 0;
    let mut span = 1usize;
    // the summand vanishes once q^{k-1} > n
    while span / p.q as usize <= n {
        acc = acc.add(&level_term(p, n, k));
        k += 1;
        span = span.saturating_mul(p.q as usize);
        if span == usize::MAX {
            break;
        }
    }
    acc
}

/// `X(m)` for real `m ≥ 0`, linear interpolation of `ω` above 1.
pub fn x_of(q: u64, omega: &[f64], m: f64) -> f64 {
    let qi = 1.0 / q as f64;
    if m < qi {
        0.0
    } else if m < 2.0 * qi {
        2.0 * omega[1] * (m - qi)
    } else if m < 1.0 {
        omega[1] * m
    } else {
        let a = m.floor();
        let f = m - a;
        let a = a as usize;
        let hi = if f > 0.0 { omega[a + 1] } else { 0.0 };
        hi * f + omega[a] * (1.0 - f)
    }
}

/// Partial sum of `ζ(x) = Σ_{k≥-1} X(q^{x+k})/q^{x+k}` over the terms whose
/// argument stays below `N = omega.len() - 1`.
pub fn zeta(q: u64, omega: &[f64], x: f64) -> f64 {
    let qf = q as f64;
    let limit = (omega.len() - 2) as f64;
    let mut acc = 0.0;
    let mut k = -1i32;
    loop {
        let m = qf.powf(x + k as f64);
        if m > limit {
            break;
        }
        acc += x_of(q, omega, m) / m;
        k += 1;
    }
    acc
}

/// Result of [`omega_solve`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OmegaSolution<S> {
    pub q: u64,
    pub n_max: usize,
    #[serde(skip)]
    pub direct: Vec<S>,
    /// first `n` where the recursion, tree sum and level formula disagree
    pub first_disagreement: Option<usize>,
    /// growth exponent of `|ω_n|` estimated over the top two octaves of `n`
    pub kappa_estimate: f64,
    pub warning: Option<String>,
    /// `(x, ζ(x))` on an even grid of `[0, 1]`
    pub w_samples: Vec<(f64, f64)>,
}

impl<S> OmegaSolution<S> {
    pub fn agree(&self) -> bool {
        self.first_disagreement.is_none()
    }

    /// `(x, ζ(x))` as CSV with header `x,zeta`.
    pub fn w_csv(&self) -> String {
        let mut out = String::from("x,zeta\n");
        for (x, z) in &self.w_samples {
            out.push_str(&format!("{x:.12},{z:.12}\n"));
        }
        out
    }
}

fn growth_exponent(mags: &[f64]) -> f64 {
    let n = mags.len() - 1;
    if n < 8 {
        return 0.0;
    }
    let top = |lo: usize, hi: usize| mags[lo..=hi].iter().cloned().fold(0.0f64, f64::max);
    let (a, b) = (top(n / 4, n / 2), top(n / 2 + 1, n));
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    (b / a).ln() / 2f64.ln()
}

/// Solves the recursion three ways (recursion, tree sum, level formula),
/// checks that they agree (exactly for rationals), and samples `ζ` at `w_points + 1` points.
pub fn omega_solve<S: Field + ToDouble>(problem: &OmegaProblem<S>, w_points: usize) -> OmegaSolution<S> {
    let direct = omega_direct(problem);
    let mut first_disagreement = None;
    for n in 1..=problem.n_max() {
        let tree = omega_tree_sum(problem, n).expect("n within range");
        let level = omega_level_formula(problem, n);
        if !tree.agrees(&direct[n]) || !level.agrees(&direct[n]) {
            first_disagreement = Some(n);
            break;
        }
    }
    let floats: Vec<f64> =
        problem.omega.iter().enumerate().map(|(i, w)| if i == 0 { 0.0 } else { w.to_double() }).collect();
    let mags: Vec<f64> = floats.iter().map(|w| w.abs()).collect();
    let kappa = growth_exponent(&mags);
    let warning = (kappa >= 1.0).then(|| {
        format!("ω grows like n^{kappa:.2}; the periodic form needs exponent below 1")
    });
    let w_samples = sample_zeta(problem.q, &floats, w_points);
    OmegaSolution {
        q: problem.q,
        n_max: problem.n_max(),
        direct,
        first_disagreement,
        kappa_estimate: kappa,
        warning,
        w_samples,
    }
}

fn sample_zeta(q: u64, omega: &[f64], points: usize) -> Vec<(f64, f64)> {
    if points == 0 {
        return Vec::new();
    }
    (0..=points)
        .map(|i| {
            let x = i as f64 / points as f64;
            (x, zeta(q, omega, x))
        })
        .collect()
}

/// The `ω` for `Ω_n = log_q ν_n - w_n`: `ω_1 = -1 + q/(2(q-1))` and
/// `ω_n = log_q β_n + Σ w_{a_i} - w_n` over the balanced split of `n`.
pub fn nu_omega(q: u64, n_max: usize) -> Result<OmegaProblem<f64>> {
    check_q(q)?;
    let qf = q as f64;
    let qs = q as usize;
    let mut omega = vec![0.0, -1.0 + qf / (2.0 * (qf - 1.0))];
    for n in 2..=n_max {
        let (x, y) = (n / qs, n % qs);
        let parts = (qs - y) as f64 * w_n(q, x) + y as f64 * w_n(q, x + 1);
        omega.push(ln_beta(q, n) / qf.ln() + parts - w_n(q, n));
    }
    OmegaProblem::new(q, omega)
}

/// `(frac(log_q n), Ω_n/n)` for a solved problem, the points `W` interpolates.
pub fn omega_over_n<S: ToDouble>(q: u64, direct: &[S]) -> Vec<(f64, f64)> {
    direct.iter().enumerate().skip(1).map(|(n, v)| (frac_log(q, n), v.to_double() / n as f64)).collect()
}
