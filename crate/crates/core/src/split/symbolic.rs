use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::recursion::EulerRecursion;
use crate::arith::{binom2, IntPolynomial, Rational, RationalFunction};
use crate::combinat::factorial;
use crate::error::{Error, Result};

/// Largest `n` the symbolic table computes unless told otherwise.
///
/// Measured with an optimised build: `n = 12` takes about 0.2 s (degree 368
/// numerator and denominator), `n = 16` about 2 s, `n = 20` about 18 s.
pub const DEFAULT_SYMBOLIC_CAP: usize = 12;

/// `r_0(q)..r_N(q)` as reduced rational functions of the indeterminate `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicSplitTable {
    entries: Vec<RationalFunction>,
}

impl SymbolicSplitTable {
    pub fn entries(&self) -> &[RationalFunction] {
        &self.entries
    }

    pub fn entry(&self, n: usize) -> Result<&RationalFunction> {
        self.entries
            .get(n)
            .ok_or_else(|| Error::param(format!("n = {n} is outside the table (max {})", self.entries.len() - 1)))
    }

    pub fn max_n(&self) -> usize {
        self.entries.len() - 1
    }

    /// Evaluate every entry at a rational `q`.
    pub fn evaluate(&self, q: &Rational) -> Option<Vec<Rational>> {
        self.entries.iter().map(|f| f.eval_rational(q)).collect()
    }
}

/// Symbolic table up to `n_max`, refusing anything past [`DEFAULT_SYMBOLIC_CAP`].
pub fn symbolic_rn(n_max: usize) -> Result<SymbolicSplitTable> {
    symbolic_rn_with_cap(n_max, DEFAULT_SYMBOLIC_CAP)
}

pub fn symbolic_rn_with_cap(n_max: usize, cap: usize) -> Result<SymbolicSplitTable> {
    if n_max > cap {
        return Err(Error::LimitExceeded { what: format!("symbolic table size n = {n_max}"), limit: cap });
    }
    let rec = EulerRecursion::new(RationalFunction::q()).extended(n_max);
    let mut entries = rec.r().to_vec();
    entries.truncate(n_max + 1);
    Ok(SymbolicSplitTable { entries })
}

/// Whether `r_n(q) = r_n(1/q) q^{C(n,2)}` holds exactly.
pub fn check_functional_equation(table: &SymbolicSplitTable, n: usize) -> Result<bool> {
    let f = table.entry(n)?;
    let mirrored = f.substitute_reciprocal().mul_q_power(binom2(n as u64) as i64);
    Ok(&mirrored == f)
}

/// `Φ_m(q)`, built by dividing `q^m - 1` by the lower cyclotomic factors.
pub fn cyclotomic(m: usize) -> IntPolynomial {
    let mut cache = BTreeMap::new();
    cyclotomic_cached(m, &mut cache)
}

fn cyclotomic_cached(m: usize, cache: &mut BTreeMap<usize, IntPolynomial>) -> IntPolynomial {
    if let Some(p) = cache.get(&m) {
        return p.clone();
    }
    let mut p = IntPolynomial::q_pow_minus_one(m);
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_cached(d, cache);
            p = p.div_exact(&phi_d).expect("cyclotomic factor divides q^m - 1");
        }
    }
    cache.insert(m, p.clone());
    p
}

fn totient(m: usize) -> usize {
    (1..=m).filter(|k| num_integer::gcd(*k, m) == 1).count()
}

/// Factorisation of the denominator of `r_n(q)` into a constant, a power of
/// `q` and cyclotomic polynomials, plus the vanishing order of the numerator.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PoleReport {
    pub n: usize,
    pub constant: String,
    pub q_power: usize,
    /// `(m, e)` meaning `Φ_m(q)^e` divides the denominator exactly.
    pub cyclotomic_factors: Vec<(usize, usize)>,
    /// Whatever is left after removing the factors above; `"1"` when the
    /// denominator is fully accounted for.
    pub residual: String,
    pub numerator_order_at_zero: usize,
    pub required_order: usize,
    pub poles_at_roots_of_unity: bool,
    pub vanishing_ok: bool,
}

impl PoleReport {
    pub fn passed(&self) -> bool {
        self.poles_at_roots_of_unity && self.vanishing_ok
    }
}

/// Check that every root of the denominator of `r_n` is zero or a root of
/// unity, and that the numerator vanishes at 0 to order at least `C(n,2)`.
///
/// Cyclotomic factors are peeled off for every `m` with `φ(m)` no larger
/// than the remaining degree; since `φ(m) ≥ sqrt(m/2)`, the search ends once
/// `m > 2·deg²`.
pub fn check_pole_locations(table: &SymbolicSplitTable, n: usize) -> Result<PoleReport> {
    let f = table.entry(n)?;
    let denom = f.denom();
    let q_power = denom.order_at_zero().unwrap_or(0);
    let mut residual = denom.unshift(q_power);
    let constant = residual.content();
    residual = residual.div_scalar_exact(&constant);
    let mut factors = Vec::new();
    let mut cache = BTreeMap::new();
    let mut m = 1;
    loop {
        let deg = residual.degree().unwrap_or(0);
        if deg == 0 || m > 2 * deg * deg {
            break;
        }
        if totient(m) <= deg {
            let phi = cyclotomic_cached(m, &mut cache);
            let mut e = 0;
            while let Some(quot) = residual.div_exact(&phi) {
                residual = quot;
                e += 1;
            }
            if e > 0 {
                factors.push((m, e));
            }
        }
        m += 1;
    }
    let poles_ok = residual.degree() == Some(0) && residual.leading().abs().is_one();
    let required = binom2(n as u64) as usize;
    let numerator_order = f.numer().order_at_zero().unwrap_or(usize::MAX);
    Ok(PoleReport {
        n,
        constant: constant.to_string(),
        q_power,
        cyclotomic_factors: factors,
        residual: residual.to_string(),
        numerator_order_at_zero: numerator_order,
        required_order: required,
        poles_at_roots_of_unity: poles_ok,
        vanishing_ok: numerator_order >= required,
    })
}

/// `lim_{q→∞} r_n(q)`, the ratio of leading coefficients.
pub fn limit_inverse_factorial(table: &SymbolicSplitTable, n: usize) -> Result<Rational> {
    let f = table.entry(n)?;
    let (dn, dd) = (f.numer().degree(), f.denom().degree());
    if dn != dd {
        return Err(Error::Numerical(format!(
            "numerator degree {dn:?} differs from denominator degree {dd:?} for n = {n}"
        )));
    }
    Ok(Rational::new(f.numer().leading(), f.denom().leading()))
}

/// Number of distinct real zeros of the numerator of `r_n(q)` in `(-bound, 0)`,
/// counted by a Sturm sequence. Reports only.
pub fn negative_axis_numerator_roots(table: &SymbolicSplitTable, n: usize, bound: u64) -> Result<usize> {
    let numer = table.entry(n)?.numer();
    if numer.is_zero() {
        return Err(Error::param("zero numerator"));
    }
    let stripped = numer.unshift(numer.order_at_zero().unwrap_or(0));
    let lo = Rational::from_integer(-BigInt::from(bound));
    if stripped.eval_rational(&lo).is_zero() {
        return Err(Error::param(format!("numerator vanishes at the endpoint -{bound}")));
    }
    stripped.count_real_roots(&lo, &Rational::zero())
}

/// `1/n!`, the expected limit.
pub fn inverse_factorial(n: usize) -> Rational {
    Rational::new(BigInt::one(), factorial(n))
}
