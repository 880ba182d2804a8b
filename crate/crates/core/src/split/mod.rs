//! Splitting probabilities `r_n` of random monic polynomials, computed at
//! integer `q` and as rational functions of `q`, plus the finite-field
//! analogue `r̄_n`.

mod finite_field;
mod recursion;
mod symbolic;

pub use finite_field::{ff_bruteforce_rbar, finite_field_rbar, SmallField};
pub use recursion::{euler_split_coefficients, EulerRecursion};
pub use symbolic::{
    check_functional_equation, check_pole_locations, cyclotomic, limit_inverse_factorial,
    inverse_factorial, negative_axis_numerator_roots, symbolic_rn, symbolic_rn_with_cap, PoleReport, SymbolicSplitTable,
    DEFAULT_SYMBOLIC_CAP,
};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{binom2, q_pow, PowerSeries, Rational};
use crate::combinat::{arrangements, partitions};
use crate::error::{Error, Result};

pub(crate) fn check_q(q: u64) -> Result<()> {
    if q < 2 {
        return Err(Error::param(format!("q must be at least 2, got {q}")));
    }
    Ok(())
}

/// Exact `r_0..r_N` and `s_0..s_N` at an integer residue-field size `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitTable {
    q: u64,
    values: Vec<Rational>,
    svalues: Vec<Rational>,
}

impl SplitTable {
    /// Table holding `r_0 = r_1 = 1`.
    pub fn new(q: u64) -> Result<Self> {
        check_q(q)?;
        Ok(SplitTable {
            q,
            values: vec![Rational::one(), Rational::one()],
            svalues: vec![Rational::one(), Rational::new(BigInt::one(), BigInt::from(q))],
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Largest `n` in the table.
    pub fn max_n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn svalues(&self) -> &[Rational] {
        &self.svalues
    }

    pub fn r(&self, n: usize) -> Option<&Rational> {
        self.values.get(n)
    }

    pub fn s(&self, n: usize) -> Option<&Rational> {
        self.svalues.get(n)
    }

    /// A new table covering `0..=n_max`, extended with the Euler recursion.
    pub fn extended(&self, n_max: usize) -> SplitTable {
        if n_max <= self.max_n() {
            return self.clone();
        }
        let mut values = self.values.clone();
        let mut svalues = self.svalues.clone();
        let q1 = Rational::from_integer(BigInt::from(self.q + 1));
        for n in values.len()..=n_max {
            let scale = q_pow(self.q, binom2(n as u64 + 1)).recip();
            let mut acc = Rational::zero();
            for j in 1..n {
                let weight = &q1 * BigInt::from(j) - BigInt::from(n);
                if !weight.is_zero() {
                    acc += weight * &values[n - j] * &svalues[j];
                }
            }
            let lead = (Rational::one() - Rational::from_integer(BigInt::from(self.q)) * &scale) * BigInt::from(n);
            let r_n = acc / lead;
            svalues.push(&r_n * scale);
            values.push(r_n);
        }
        SplitTable { q: self.q, values, svalues }
    }

    /// The series `G = Σ s_n t^n` truncated after `t^N`.
    pub fn g_series(&self) -> PowerSeries {
        PowerSeries::new(self.svalues.clone())
    }
}

/// `r_0..r_N` by the Euler-form recursion.
pub fn corollary_recursion(q: u64, n_max: usize) -> Result<SplitTable> {
    let table = SplitTable::new(q)?.extended(n_max);
    Ok(SplitTable {
        q,
        values: table.values[..=n_max].to_vec(),
        svalues: table.svalues[..=n_max].to_vec(),
    })
}

/// `r_n` from the sum over compositions of `n` into `q` parts, given
/// `r_0..r_{n-1}` in `prior`.
///
/// Compositions are grouped by their multiset of nonzero parts. The `q`
/// compositions with a single part equal to `n` contribute `q·s_n`, which
/// is moved to the left-hand side.
pub fn theorem1_rn(q: u64, n: usize, prior: &SplitTable) -> Result<Rational> {
    check_q(q)?;
    if prior.q != q {
        return Err(Error::param(format!("table is for q = {}, asked for q = {q}", prior.q)));
    }
    if n <= 1 {
        return Ok(Rational::one());
    }
    if prior.max_n() + 1 < n {
        return Err(Error::param(format!("table covers n <= {}, need n - 1 = {}", prior.max_n(), n - 1)));
    }
    let mut sum = Rational::zero();
    for parts in partitions(n, q as usize, n - 1) {
        let product = parts.iter().fold(Rational::one(), |acc, &d| acc * &prior.svalues[d]);
        sum += product * arrangements(&parts, q as usize);
    }
    let self_weight = Rational::from_integer(BigInt::from(q)) / q_pow(q, binom2(n as u64 + 1));
    Ok(sum / (Rational::one() - self_weight))
}

/// `r_0..r_N` built from the composition sum alone.
pub fn theorem1_table(q: u64, n_max: usize) -> Result<SplitTable> {
    let mut table = SplitTable::new(q)?;
    for n in 2..=n_max {
        let r_n = theorem1_rn(q, n, &table)?;
        let s_n = &r_n / q_pow(q, binom2(n as u64 + 1));
        table.values.push(r_n);
        table.svalues.push(s_n);
    }
    table.values.truncate(n_max + 1);
    table.svalues.truncate(n_max + 1);
    Ok(table)
}

/// Coefficients of `G^q`, where `G` is built from the `s_n` of `table`.
pub fn series_rn(table: &SplitTable) -> Result<Vec<Rational>> {
    Ok(table.g_series().pow(table.q)?.into_coeffs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn theorem1_small_values() {
        let t = corollary_recursion(2, 1).unwrap();
        assert_eq!(theorem1_rn(2, 2, &t).unwrap(), rat(1, 3));
        let t = corollary_recursion(3, 2).unwrap();
        // (q^2-q+1)(q-1)q^3 / (6(q+1)(q^5-1)) at q = 3: 7*2*27/(6*4*242)
        assert_eq!(theorem1_rn(3, 3, &t).unwrap(), rat(7 * 2 * 27, 6 * 4 * 242));
        assert!(theorem1_rn(7, 1, &t).is_err());
        assert_eq!(theorem1_rn(3, 1, &t).unwrap(), rat(1, 1));
        assert!(theorem1_rn(1, 2, &t).is_err());
    }

    #[test]
    fn recursion_r4_at_two() {
        let t = corollary_recursion(2, 4).unwrap();
        // h(2) = 129; 129 * 1 * 2^6 / (24 * 3^2 * 31 * 511)
        assert_eq!(t.values()[4], rat(129 * 64, 24 * 9 * 31 * 511));
        assert_eq!(corollary_recursion(5, 1).unwrap().values(), &[rat(1, 1), rat(1, 1)]);
        assert_eq!(corollary_recursion(5, 0).unwrap().max_n(), 0);
    }

    #[test]
    fn euler_identity_holds() {
        for q in [2u64, 3, 5] {
            let t = corollary_recursion(q, 8).unwrap();
            for n in 1..=8usize {
                let mut total = Rational::zero();
                for j in 0..=n {
                    let w = BigInt::from(n as i64 - (q as i64 + 1) * j as i64);
                    total += Rational::from_integer(w) * &t.values()[n - j] * &t.svalues()[j];
                }
                assert!(total.is_zero(), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn table_invariants() {
        let t = corollary_recursion(3, 10).unwrap();
        for n in 0..=10 {
            assert!(t.values()[n] > Rational::zero() && t.values()[n] <= Rational::one());
            assert_eq!(&t.svalues()[n] * q_pow(3, binom2(n as u64 + 1)), t.values()[n]);
        }
    }

    #[test]
    fn extension_is_pure() {
        let t = corollary_recursion(2, 3).unwrap();
        let longer = t.extended(6);
        assert_eq!(t.max_n(), 3);
        assert_eq!(longer.values()[..4], t.values()[..]);
        assert_eq!(longer, corollary_recursion(2, 6).unwrap());
    }

    #[test]
    fn generic_driver_agrees_with_rational_table() {
        let (r, s) = euler_split_coefficients(Rational::from_integer(3.into()), 8);
        let t = corollary_recursion(3, 8).unwrap();
        assert_eq!(r, t.values());
        assert_eq!(s, t.svalues());
    }

    #[test]
    fn three_routes_agree() {
        for q in [2u64, 3, 4, 5] {
            let a = corollary_recursion(q, 10).unwrap();
            let b = theorem1_table(q, 10).unwrap();
            assert_eq!(a, b, "q={q}");
        }
        for q in [2u64, 3] {
            let t = corollary_recursion(q, 8).unwrap();
            assert_eq!(series_rn(&t).unwrap(), t.values());
        }
    }
}
