use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::classify::{classify_split_nonmonic_traced, classify_split_traced, Outcome};
use super::{check_prime, TruncatedPadicPoly};
use crate::arith::{rational_to_f64, Rational};
use crate::error::{Error, Result};
use crate::nonmonic::nonmonic_euler;
use crate::split::corollary_recursion;

/// Samples per random stream. Sample `i` always comes from stream
/// `i / CHUNK_SIZE`, so results do not depend on how chunks are scheduled.
pub const CHUNK_SIZE: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Monic,
    Nonmonic,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monic" => Ok(Mode::Monic),
            "nonmonic" => Ok(Mode::Nonmonic),
            _ => Err(Error::param(format!("unknown mode {s:?}; expected monic or nonmonic"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleReport {
    pub p: u64,
    pub n: usize,
    pub precision: u32,
    pub mode: Mode,
    pub seed: u64,
    pub samples: u64,
    pub splits: u64,
    pub not_splits: u64,
    pub indeterminates: u64,
    /// `splits / (splits + not_splits)`
    pub estimate: f64,
    pub std_error: f64,
    pub exact: String,
    pub exact_value: f64,
    /// `None` when the standard error is zero and the estimate differs from the exact value.
    pub z_score: Option<f64>,
    pub indeterminate_rate: f64,
}

#[derive(Default, Clone, Copy)]
struct Counts {
    splits: u64,
    not_splits: u64,
    indeterminates: u64,
}

impl Counts {
    fn add(self, o: Counts) -> Counts {
        Counts {
            splits: self.splits + o.splits,
            not_splits: self.not_splits + o.not_splits,
            indeterminates: self.indeterminates + o.indeterminates,
        }
    }

    fn record(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::Splits => self.splits += 1,
            Outcome::NotSplit => self.not_splits += 1,
            Outcome::Indeterminate => self.indeterminates += 1,
        }
    }
}

/// Uniform residue modulo `p^k`, drawn digit by digit.
fn random_residue(rng: &mut ChaCha8Rng, p: u64, k: u32) -> BigInt {
    let mut value = BigInt::from(0);
    for _ in 0..k {
        value = value * p + rng.random_range(0..p);
    }
    value
}

fn classify_sample(rng: &mut ChaCha8Rng, p: u64, n: usize, k: u32, mode: Mode) -> Outcome {
    let free = match mode {
        Mode::Monic => n,
        Mode::Nonmonic => n + 1,
    };
    let mut coeffs: Vec<BigInt> = (0..free).map(|_| random_residue(rng, p, k)).collect();
    let monic = mode == Mode::Monic;
    if monic {
        coeffs.push(BigInt::from(1));
    }
    let f = TruncatedPadicPoly::new(p, k, coeffs, monic).expect("valid sample");
    let verdict = if monic { classify_split_traced(&f, false) } else { classify_split_nonmonic_traced(&f, false) };
    verdict.expect("classifiable sample").outcome
}

fn exact_value(p: u64, n: usize, mode: Mode) -> Result<Rational> {
    Ok(match mode {
        Mode::Monic => corollary_recursion(p, n)?.values()[n].clone(),
        Mode::Nonmonic => nonmonic_euler(p, n)?.values()[n].clone(),
    })
}

/// Monte Carlo estimate of the splitting probability, compared against the
/// exact value. Uses the global rayon pool.
pub fn monte_carlo(p: u64, n: usize, k: u32, samples: u64, seed: u64, mode: Mode) -> Result<SampleReport> {
    monte_carlo_with_workers(p, n, k, samples, seed, mode, None)
}

/// As [`monte_carlo`], on a dedicated pool of `workers` threads when given.
/// The report is identical for every worker count.
pub fn monte_carlo_with_workers(
    p: u64,
    n: usize,
    k: u32,
    samples: u64,
    seed: u64,
    mode: Mode,
    workers: Option<usize>,
) -> Result<SampleReport> {
    check_prime(p)?;
    if k == 0 {
        return Err(Error::param("precision K must be positive"));
    }
    if samples == 0 {
        return Err(Error::param("need at least one sample"));
    }
    let exact = exact_value(p, n, mode)?;
    let chunks = samples.div_ceil(CHUNK_SIZE);
    let run = || {
        (0..chunks)
            .into_par_iter()
            .map(|chunk| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(chunk);
                let len = CHUNK_SIZE.min(samples - chunk * CHUNK_SIZE);
                let mut counts = Counts::default();
                for _ in 0..len {
                    counts.record(classify_sample(&mut rng, p, n, k, mode));
                }
                counts
            })
            .reduce(Counts::default, Counts::add)
    };
    let counts = match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::Numerical(e.to_string()))?
            .install(run),
        None => run(),
    };
    Ok(report(p, n, k, seed, samples, mode, counts, &exact))
}

#[allow(clippy::too_many_arguments)]
fn report(p: u64, n: usize, k: u32, seed: u64, samples: u64, mode: Mode, c: Counts, exact: &Rational) -> SampleReport {
    let decided = c.splits + c.not_splits;
    let estimate = if decided == 0 { 0.0 } else { c.splits as f64 / decided as f64 };
    let std_error = if decided == 0 { 0.0 } else { (estimate * (1.0 - estimate) / decided as f64).sqrt() };
    let exact_value = rational_to_f64(exact);
    let z_score = if std_error > 0.0 {
        Some((estimate - exact_value) / std_error)
    } else if estimate == exact_value {
        Some(0.0)
    } else {
        None
    };
    SampleReport {
        p,
        n,
        precision: k,
        mode,
        seed,
        samples,
        splits: c.splits,
        not_splits: c.not_splits,
        indeterminates: c.indeterminates,
        estimate,
        std_error,
        exact: exact.to_string(),
        exact_value,
        z_score,
        indeterminate_rate: c.indeterminates as f64 / samples as f64,
    }
}

/// Classification of every monic polynomial of degree `n` with coefficients
/// modulo `p^k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExhaustiveReport {
    pub p: u64,
    pub n: usize,
    pub precision: u32,
    pub total: u64,
    pub splits: u64,
    pub not_splits: u64,
    pub indeterminates: u64,
    pub exact: String,
    /// Fraction of splits among the decided polynomials.
    pub decided_split_fraction: f64,
    /// `r_n - ind` and `r_n + ind`, with `ind` the indeterminate fraction.
    pub lower: f64,
    pub upper: f64,
}

impl ExhaustiveReport {
    pub fn within_bracket(&self) -> bool {
        self.lower <= self.decided_split_fraction && self.decided_split_fraction <= self.upper
    }
}

pub fn exhaustive_bracket(p: u64, n: usize, k: u32) -> Result<ExhaustiveReport> {
    check_prime(p)?;
    let modulus = p.checked_pow(k).ok_or_else(|| Error::param("p^K too large"))?;
    let total = modulus.checked_pow(n as u32).filter(|&t| t <= 1 << 24).ok_or(Error::LimitExceeded {
        what: "exhaustive enumeration size".into(),
        limit: 1 << 24,
    })?;
    let exact = exact_value(p, n, Mode::Monic)?;
    let mut counts = Counts::default();
    for index in 0..total {
        let mut rest = index;
        let mut coeffs = Vec::with_capacity(n + 1);
        for _ in 0..n {
            coeffs.push(BigInt::from(rest % modulus));
            rest /= modulus;
        }
        coeffs.push(BigInt::from(1));
        let f = TruncatedPadicPoly::new(p, k, coeffs, true)?;
        counts.record(classify_split_traced(&f, false)?.outcome);
    }
    let decided = counts.splits + counts.not_splits;
    let ind = counts.indeterminates as f64 / total as f64;
    let r = rational_to_f64(&exact);
    Ok(ExhaustiveReport {
        p,
        n,
        precision: k,
        total,
        splits: counts.splits,
        not_splits: counts.not_splits,
        indeterminates: counts.indeterminates,
        exact: exact.to_string(),
        decided_split_fraction: if decided == 0 { 0.0 } else { counts.splits as f64 / decided as f64 },
        lower: r - ind,
        upper: r + ind,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_always_splits() {
        let r = monte_carlo(3, 1, 8, 500, 1, Mode::Monic).unwrap();
        assert_eq!(r.splits, 500);
        assert_eq!(r.estimate, 1.0);
        assert_eq!(r.z_score, Some(0.0));
    }

    #[test]
    fn counts_add_up_and_are_reproducible() {
        let a = monte_carlo_with_workers(2, 2, 16, 5000, 7, Mode::Monic, Some(1)).unwrap();
        let b = monte_carlo_with_workers(2, 2, 16, 5000, 7, Mode::Monic, Some(3)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.splits + a.not_splits + a.indeterminates, 5000);
        assert!(a.z_score.unwrap().abs() < 5.0);
    }

    #[test]
    fn small_exhaustive_bracket() {
        let r = exhaustive_bracket(2, 2, 4).unwrap();
        assert_eq!(r.total, 256);
        assert!(r.within_bracket(), "{r:?}");
    }
}
