//! Splitting probability `r^nm_n` of a random polynomial of degree at most
//! `n` with arbitrary leading coefficient, by three independent routes.

use num_bigint::BigInt;

use crate::arith::{q_pow, Field, PowerSeries, Rational, RationalFunction};
use crate::combinat::{arrangements, partitions};
use crate::error::{Error, Result};
use crate::split::{check_q, corollary_recursion, euler_split_coefficients, SplitTable, DEFAULT_SYMBOLIC_CAP};

/// Exact `r^nm_0..r^nm_N` and the coefficients `(1 - q^{-n-1}) r^nm_n` of
/// the series `F^nm`.
#[derive(Clone, Debug, PartialEq)]
pub struct NonMonicTable {
    q: u64,
    values: Vec<Rational>,
    fnm_coeffs: Vec<Rational>,
}

impl NonMonicTable {
    fn from_values(q: u64, values: Vec<Rational>) -> Self {
        let fnm_coeffs = values.iter().enumerate().map(|(n, v)| v * tail_factor(q, n)).collect();
        NonMonicTable { q, values, fnm_coeffs }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn fnm_coeffs(&self) -> &[Rational] {
        &self.fnm_coeffs
    }

    pub fn max_n(&self) -> usize {
        self.values.len() - 1
    }
}

/// `1 - q^{-n-1}`.
fn tail_factor(q: u64, n: usize) -> Rational {
    Rational::one() - q_pow(q, n as u64 + 1).recip()
}

fn generic_tail<S: Field>(inv_q: &S, n: usize) -> S {
    S::one().sub(&inv_q.pow(n as u64 + 1))
}

/// `r^nm_n = ((q-1)/q) Σ_j r_{n-j} s_j / (1 - q^{-n-1})` for any scalar.
pub fn nonmonic_from_split<S: Field>(q: &S, r: &[S], s: &[S]) -> Vec<S> {
    let inv_q = S::one().div(q);
    let factor = q.sub(&S::one()).mul(&inv_q);
    (0..r.len())
        .map(|n| {
            let conv = (0..=n).fold(S::zero(), |acc, j| acc.add(&r[n - j].mul(&s[j])));
            factor.mul(&conv).div(&generic_tail(&inv_q, n))
        })
        .collect()
}

/// `r^nm_0..r^nm_N` from the monic table.
pub fn nonmonic_rn(q: u64, n_max: usize, monic: &SplitTable) -> Result<NonMonicTable> {
    check_q(q)?;
    if monic.q() != q || monic.max_n() < n_max {
        return Err(Error::param(format!(
            "monic table (q = {}, n <= {}) does not cover q = {q}, n <= {n_max}",
            monic.q(),
            monic.max_n()
        )));
    }
    let qr = Rational::from_integer(BigInt::from(q));
    let values = nonmonic_from_split(&qr, &monic.values()[..=n_max], &monic.svalues()[..=n_max]);
    Ok(NonMonicTable::from_values(q, values))
}

/// `r^nm_0..r^nm_N` from the Euler-form identity
/// `Σ_j (n - (q+2)j) f_{n-j} s_j = 0` with `f_k = (1 - q^{-k-1}) r^nm_k`.
pub fn nonmonic_euler(q: u64, n_max: usize) -> Result<NonMonicTable> {
    check_q(q)?;
    let monic = corollary_recursion(q, n_max)?;
    let s = monic.svalues();
    let mut f = vec![tail_factor(q, 0)];
    for n in 1..=n_max {
        let mut acc = Rational::zero();
        for j in 1..=n {
            let w = n as i64 - (q as i64 + 2) * j as i64;
            if w != 0 {
                acc += Rational::from_integer(BigInt::from(w)) * &f[n - j] * &s[j];
            }
        }
        f.push(-acc / Rational::from_integer(BigInt::from(n)));
    }
    let values = f.iter().enumerate().map(|(n, fn_)| fn_ / tail_factor(q, n)).collect();
    Ok(NonMonicTable::from_values(q, values))
}

/// `r^nm_n` from the sum over compositions of `n` into `q + 1` parts, one
/// per point of the projective line over the residue field.
pub fn theorem_nm_sum(q: u64, n: usize, monic: &SplitTable) -> Result<Rational> {
    check_q(q)?;
    if monic.q() != q || monic.max_n() < n {
        return Err(Error::param(format!("monic table does not cover q = {q}, n = {n}")));
    }
    let slots = q as usize + 1;
    let mut sum = Rational::zero();
    for parts in partitions(n, slots, n) {
        let product = parts.iter().fold(Rational::one(), |acc, &d| acc * &monic.svalues()[d]);
        sum += product * arrangements(&parts, slots);
    }
    let factor = Rational::new(BigInt::from(q - 1), BigInt::from(q));
    Ok(factor * sum / tail_factor(q, n))
}

/// Whether `F^nm = ((q-1)/q) G^{q+1}` holds coefficient-wise through `t^N`.
pub fn nonmonic_series_identity(q: u64, n_max: usize) -> Result<bool> {
    check_q(q)?;
    let monic = corollary_recursion(q, n_max)?;
    let table = nonmonic_rn(q, n_max, &monic)?;
    let g = PowerSeries::new(monic.svalues().to_vec());
    let rhs = g.pow(q + 1)?.scale(&Rational::new(BigInt::from(q - 1), BigInt::from(q)));
    Ok(rhs.coeffs() == table.fnm_coeffs())
}

/// `r^nm_0(q)..r^nm_N(q)` as rational functions of `q`.
pub fn symbolic_nonmonic(n_max: usize) -> Result<Vec<RationalFunction>> {
    if n_max > DEFAULT_SYMBOLIC_CAP {
        return Err(Error::LimitExceeded { what: format!("symbolic table size n = {n_max}"), limit: DEFAULT_SYMBOLIC_CAP });
    }
    let q = RationalFunction::q();
    let (r, s) = euler_split_coefficients(q.clone(), n_max);
    Ok(nonmonic_from_split(&q, &r, &s))
}
