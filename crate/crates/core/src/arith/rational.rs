use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// `n/d` as a reduced rational. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `C(n, 2) = n(n-1)/2`.
pub fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// `q^e` for a positive integer base as an exact integer-valued rational.
pub fn q_pow(q: u64, e: u64) -> Rational {
    Rational::from_integer(num_traits::pow(BigInt::from(q), e as usize))
}

fn log2_bigint(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap().abs().log2();
    }
    let shift = bits - 64;
    let top: BigInt = x.abs() >> shift;
    top.to_f64().unwrap().log2() + shift as f64
}

/// `log_q |x|` for a nonzero rational of any size, accurate to double
/// precision even when `x` itself is far outside the f64 range.
pub fn log_q_rational(x: &Rational, q: f64) -> f64 {
    assert!(!x.is_zero(), "log of zero");
    (log2_bigint(x.numer()) - log2_bigint(x.denom())) / q.log2()
}

/// Nearest f64 to `x`, returning 0 or infinity outside the representable range.
pub fn rational_to_f64(x: &Rational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.numer().bits() < 1000 && x.denom().bits() < 1000 {
        return x.numer().to_f64().unwrap() / x.denom().to_f64().unwrap();
    }
    let sign = if x.is_negative() { -1.0 } else { 1.0 };
    let l2 = log2_bigint(x.numer()) - log2_bigint(x.denom());
    sign * l2.exp2()
}
