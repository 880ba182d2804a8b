use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Dense univariate polynomial in `q` with arbitrary-precision integer
/// coefficients; `coeffs[i]` is the coefficient of `q^i`.
///
/// Never carries a trailing zero coefficient, so the zero polynomial has an
/// empty coefficient list and structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `c * q^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::new(coeffs)
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `q^m - 1`.
    pub fn q_pow_minus_one(m: usize) -> Self {
        let mut p = Self::monomial(1, m);
        p.coeffs[0] -= 1;
        Self::new(p.coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Order of vanishing at `q = 0`; `None` for the zero polynomial.
    pub fn order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn neg(&self) -> Self {
        IntPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    /// Divide by `q^k`; the low `k` coefficients must vanish.
    pub fn unshift(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(Zero::is_zero));
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * i).collect())
    }

    /// `q^d p(1/q)`; `d` must be at least the degree.
    pub fn reversed(&self, d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[d - i] = c.clone();
        }
        Self::new(coeffs)
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        if c.is_one() {
            return self.clone();
        }
        IntPolynomial { coeffs: self.coeffs.iter().map(|a| a / &c).collect() }
    }

    /// Divide every coefficient by `c`, which must divide them exactly.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        IntPolynomial { coeffs: self.coeffs.iter().map(|a| a / c).collect() }
    }

    /// Exact quotient `self / divisor` over the integers, if it exists.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let db = divisor.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let da = self.degree().unwrap();
        if da < db {
            return None;
        }
        let lb = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let top = &rem[k + db];
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(&lb);
            if !r.is_zero() {
                return None;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &qk * b;
            }
            quot[k] = qk;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(Self::new(quot))
        } else {
            None
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    /// Pseudo-remainder of `self` by `divisor` using only positive scalings,
    /// so the sign of the remainder matches the true remainder's sign.
    fn positive_prem(&self, divisor: &Self) -> Self {
        let db = divisor.degree().expect("division by zero polynomial");
        let lb = divisor.leading();
        let lb_abs = lb.abs();
        let lb_sign = if lb.is_negative() { -BigInt::one() } else { BigInt::one() };
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading();
            let g = lr.gcd(&lb_abs);
            let scale = &lb_abs / &g;
            let factor = &lb_sign * (&lr / &g);
            let mut coeffs: Vec<BigInt> = r.coeffs.iter().map(|c| c * &scale).collect();
            for (j, b) in divisor.coeffs.iter().enumerate() {
                coeffs[dr - db + j] -= &factor * b;
            }
            coeffs.pop();
            r = Self::new(coeffs);
        }
        r
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        // Horner on the homogenised form keeps everything integral.
        let (num, den) = (x.numer(), x.denom());
        let Some(d) = self.degree() else {
            return Rational::zero();
        };
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        Rational::new(acc, num_traits::pow(den.clone(), d))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_f64().unwrap_or(f64::NAN))
    }

    fn max_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Greatest common divisor, normalised to be primitive with a positive
    /// leading coefficient.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Err(Error::GcdOfZero),
            (true, false) => return Ok(other.primitive_part()),
            (false, true) => return Ok(self.primitive_part()),
            _ => {}
        }
        let a = self.primitive_part();
        let b = other.primitive_part();
        // Common power of q.
        let k = a.order_at_zero().unwrap().min(b.order_at_zero().unwrap());
        let (a, b) = (a.unshift(a.order_at_zero().unwrap()), b.unshift(b.order_at_zero().unwrap()));
        let g = if a.degree() == Some(0) || b.degree() == Some(0) {
            Self::one()
        } else if let Some(g) = heuristic_gcd(&a, &b) {
            g
        } else {
            prs_gcd(&a, &b)
        };
        Ok(g.shift(k))
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`, by
    /// Sturm sign-variation counting. Neither endpoint may be a root.
    pub fn count_real_roots(&self, lo: &Rational, hi: &Rational) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::param("zero polynomial has infinitely many roots"));
        }
        if self.eval_rational(lo).is_zero() || self.eval_rational(hi).is_zero() {
            return Err(Error::param("interval endpoint is a root"));
        }
        let chain = self.sturm_chain();
        let variations = |x: &Rational| {
            let signs: Vec<Ordering> = chain
                .iter()
                .map(|p| p.eval_rational(x).cmp(&Rational::zero()))
                .filter(|s| *s != Ordering::Equal)
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        Ok(variations(lo).saturating_sub(variations(hi)))
    }

    fn sturm_chain(&self) -> Vec<Self> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            if chain[n - 1].degree() == Some(0) {
                break;
            }
            let r = chain[n - 2].positive_prem(&chain[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            let c = r.content();
            chain.push(r.div_scalar_exact(&c));
        }
        chain
    }
}

fn interpolate_symmetric(mut gamma: BigInt, xi: &BigInt) -> IntPolynomial {
    let half = xi >> 1;
    let mut coeffs = Vec::new();
    while !gamma.is_zero() {
        let mut c = gamma.mod_floor(xi);
        if c > half {
            c -= xi;
        }
        gamma = (gamma - &c) / xi;
        coeffs.push(c);
    }
    IntPolynomial::new(coeffs)
}

/// GCDHEU: evaluate at a large integer, take the integer gcd, read the
/// candidate back off in balanced base-xi and confirm by trial division.
fn heuristic_gcd(a: &IntPolynomial, b: &IntPolynomial) -> Option<IntPolynomial> {
    let mut xi: BigInt = 2 * a.max_norm().min(b.max_norm()) + 29;
    let max_deg = a.degree()?.max(b.degree()?) as u64;
    for _ in 0..6 {
        if xi.bits() * max_deg > 4_000_000 {
            return None;
        }
        let ga = a.eval_bigint(&xi);
        let gb = b.eval_bigint(&xi);
        let gamma = ga.gcd(&gb);
        let g = interpolate_symmetric(gamma, &xi).primitive_part();
        if !g.is_zero() && g.divides(a) && g.divides(b) {
            return Some(g);
        }
        xi = xi * 73794 / 27011;
    }
    None
}

fn prs_gcd(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let (mut a, mut b) = if a.degree() >= b.degree() { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    while !b.is_zero() {
        let r = a.positive_prem(&b);
        a = b;
        b = r.primitive_part();
    }
    a.primitive_part()
}

impl fmt::Display for IntPolynomial {
    /// Expanded form in descending powers, e.g. `q^2-2*q+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            let abs = c.abs();
            match i {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if i == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{i}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}
