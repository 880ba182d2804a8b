//! Random polynomials over `Z_p` at finite precision: a Hensel-based
//! split/not-split classifier and a reproducible Monte Carlo harness.

mod classify;
mod hensel;
mod modpoly;
mod sample;

pub use classify::{
    classify_split, classify_split_nonmonic, classify_split_nonmonic_traced, classify_split_traced, ClassifierVerdict,
    Outcome, TraceStep,
};
pub use hensel::{hensel_lift_split, roots_mod_p};
pub use sample::{exhaustive_bracket, monte_carlo, monte_carlo_with_workers, ExhaustiveReport, Mode, SampleReport, CHUNK_SIZE};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};

/// Largest prime accepted: roots mod `p` are found by trying every residue.
pub const MAX_PRIME: u64 = 101;

pub(crate) fn check_prime(p: u64) -> Result<()> {
    let prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0);
    if !prime || p > MAX_PRIME {
        return Err(Error::param(format!("p must be a prime at most {MAX_PRIME}, got {p}")));
    }
    Ok(())
}

/// Polynomial whose coefficients are residues modulo `p^K`, stored from the
/// constant term up. A monic polynomial carries its leading 1; a bounded
/// (non-monic) one of degree at most `n` carries all `n + 1` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedPadicPoly {
    p: u64,
    precision: u32,
    coeffs: Vec<BigInt>,
    monic: bool,
}

impl TruncatedPadicPoly {
    pub fn new(p: u64, precision: u32, coeffs: Vec<BigInt>, monic: bool) -> Result<Self> {
        check_prime(p)?;
        if precision == 0 {
            return Err(Error::param("precision K must be positive"));
        }
        if coeffs.is_empty() {
            return Err(Error::param("polynomial needs at least one coefficient"));
        }
        let m = num_traits::pow(BigInt::from(p), precision as usize);
        let coeffs: Vec<BigInt> = coeffs.into_iter().map(|c| c.mod_floor(&m)).collect();
        if monic && !coeffs.last().unwrap().is_one() {
            return Err(Error::NonMonic);
        }
        Ok(TruncatedPadicPoly { p, precision, coeffs, monic })
    }

    /// Monic polynomial from integer coefficients, constant term first.
    pub fn from_i64s(p: u64, precision: u32, coeffs: &[i64]) -> Result<Self> {
        Self::new(p, precision, coeffs.iter().map(|&c| BigInt::from(c)).collect(), true)
    }

    /// Degree-at-most-`n` polynomial from `n + 1` integer coefficients.
    pub fn bounded_from_i64s(p: u64, precision: u32, coeffs: &[i64]) -> Result<Self> {
        Self::new(p, precision, coeffs.iter().map(|&c| BigInt::from(c)).collect(), false)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.monic
    }

    /// Degree (monic) or degree bound (non-monic).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The same residues regarded as known to `precision` digits.
    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        Self::new(self.p, precision, self.coeffs.clone(), self.monic)
    }

    /// `f(x + r)`.
    pub fn shifted(&self, r: &BigInt) -> Self {
        let m = num_traits::pow(BigInt::from(self.p), self.precision as usize);
        let mut coeffs = modpoly::taylor_shift(&self.coeffs, r, &m);
        coeffs.resize(self.coeffs.len(), BigInt::from(0));
        TruncatedPadicPoly { coeffs, ..self.clone() }
    }

    /// Product of two monic polynomials at the smaller precision.
    pub fn mul_monic(&self, other: &Self) -> Result<Self> {
        if self.p != other.p || !self.monic || !other.monic {
            return Err(Error::param("product needs two monic polynomials over the same p"));
        }
        let k = self.precision.min(other.precision);
        let m = num_traits::pow(BigInt::from(self.p), k as usize);
        Self::new(self.p, k, modpoly::mul(&self.coeffs, &other.coeffs, &m), true)
    }
}
