use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntPolynomial, Rational};

/// Reduced quotient of two integer polynomials in `q`.
///
/// Canonical form: numerator and denominator are coprime over the rationals,
/// their integer contents are coprime, and the denominator has a positive
/// leading coefficient. Every constructor and operation reduces eagerly, so
/// structural equality is equality of rational functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    numer: IntPolynomial,
    denom: IntPolynomial,
}

impl RationalFunction {
    /// Build and reduce `numer / denom`. Panics if `denom` is zero.
    pub fn new(numer: IntPolynomial, denom: IntPolynomial) -> Self {
        assert!(!denom.is_zero(), "rational function with zero denominator");
        if numer.is_zero() {
            return Self::zero();
        }
        let g = numer.gcd(&denom).expect("denominator is nonzero");
        let (numer, denom) = if g.is_one() {
            (numer, denom)
        } else {
            (numer.div_exact(&g).unwrap(), denom.div_exact(&g).unwrap())
        };
        Self::normalize_contents(numer, denom)
    }

    fn normalize_contents(numer: IntPolynomial, denom: IntPolynomial) -> Self {
        let mut c = numer.content().gcd(&denom.content());
        if denom.leading().is_negative() {
            c = -c;
        }
        if c.is_one() {
            RationalFunction { numer, denom }
        } else {
            RationalFunction { numer: numer.div_scalar_exact(&c), denom: denom.div_scalar_exact(&c) }
        }
    }

    pub fn zero() -> Self {
        RationalFunction { numer: IntPolynomial::zero(), denom: IntPolynomial::one() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        RationalFunction { numer: IntPolynomial::constant(c), denom: IntPolynomial::one() }
    }

    pub fn from_rational(r: &Rational) -> Self {
        RationalFunction {
            numer: IntPolynomial::constant(r.numer().clone()),
            denom: IntPolynomial::constant(r.denom().clone()),
        }
    }

    pub fn from_poly(p: IntPolynomial) -> Self {
        RationalFunction { numer: p, denom: IntPolynomial::one() }
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::from_poly(IntPolynomial::q())
    }

    pub fn numer(&self) -> &IntPolynomial {
        &self.numer
    }

    pub fn denom(&self) -> &IntPolynomial {
        &self.denom
    }

    pub fn neg(&self) -> Self {
        RationalFunction { numer: self.numer.neg(), denom: self.denom.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.numer.is_zero() {
            return other.clone();
        }
        if other.numer.is_zero() {
            return self.clone();
        }
        if self.denom == other.denom {
            return Self::new(self.numer.add(&other.numer), self.denom.clone());
        }
        // Henrici: only the gcd of the denominators can cancel afterwards.
        let g = self.denom.gcd(&other.denom).unwrap();
        let (bd, dd) = (self.denom.div_exact(&g).unwrap(), other.denom.div_exact(&g).unwrap());
        let numer = self.numer.mul(&dd).add(&other.numer.mul(&bd));
        let denom = self.denom.mul(&dd);
        if g.is_one() {
            Self::normalize_contents(numer, denom)
        } else {
            Self::new(numer, denom)
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.numer.is_zero() || other.numer.is_zero() {
            return Self::zero();
        }
        // Cross-cancel first so the products stay small.
        let g1 = self.numer.gcd(&other.denom).unwrap();
        let g2 = other.numer.gcd(&self.denom).unwrap();
        let a = self.numer.div_exact(&g1).unwrap();
        let d = other.denom.div_exact(&g1).unwrap();
        let c = other.numer.div_exact(&g2).unwrap();
        let b = self.denom.div_exact(&g2).unwrap();
        Self::normalize_contents(a.mul(&c), b.mul(&d))
    }

    /// Reciprocal. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.numer.is_zero(), "reciprocal of zero");
        Self::normalize_contents(self.denom.clone(), self.numer.clone())
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.recip())
    }

    /// Multiply by `q^k` (k may be negative).
    pub fn mul_q_power(&self, k: i64) -> Self {
        if self.numer.is_zero() {
            return self.clone();
        }
        if k >= 0 {
            let k = k as usize;
            let z = self.denom.order_at_zero().unwrap().min(k);
            RationalFunction { numer: self.numer.shift(k - z), denom: self.denom.unshift(z) }
        } else {
            let k = (-k) as usize;
            let z = self.numer.order_at_zero().unwrap().min(k);
            RationalFunction { numer: self.numer.unshift(z), denom: self.denom.shift(k - z) }
        }
    }

    /// `f(1/q)`, cleared of denominators.
    pub fn substitute_reciprocal(&self) -> Self {
        let dn = self.numer.degree().unwrap_or(0);
        let dd = self.denom.degree().unwrap();
        // f(1/q) = q^{dd-dn} * rev(N) / rev(D)
        let rn = self.numer.reversed(dn);
        let rd = self.denom.reversed(dd);
        Self::new(rn, rd).mul_q_power(dd as i64 - dn as i64)
    }

    pub fn eval_rational(&self, x: &Rational) -> Option<Rational> {
        let d = self.denom.eval_rational(x);
        if d.is_zero() {
            return None;
        }
        Some(self.numer.eval_rational(x) / d)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.numer.eval_complex(z) / self.denom.eval_complex(z)
    }
}

fn scaled(content: &BigInt, prim: &IntPolynomial, wrap: bool) -> String {
    let body = prim.to_string();
    let multi_term = prim.coeffs().iter().filter(|c| !c.is_zero()).count() > 1;
    let c_abs = content.abs();
    let sign = if content.is_negative() { "-" } else { "" };
    if prim.is_one() {
        return format!("{sign}{c_abs}");
    }
    let inner = if c_abs.is_one() {
        if multi_term && (wrap || !sign.is_empty()) { format!("({body})") } else { body }
    } else if multi_term {
        format!("{c_abs}*({body})")
    } else {
        format!("{c_abs}*{body}")
    };
    format!("{sign}{inner}")
}

impl fmt::Display for RationalFunction {
    /// Canonical text: each side printed as `content*(primitive part)` with
    /// the primitive part expanded, e.g. `q/(2*(q+1))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.numer.is_zero() {
            return write!(f, "0");
        }
        let nc = {
            let c = self.numer.content();
            if self.numer.leading().is_negative() { -c } else { c }
        };
        let np = self.numer.primitive_part();
        let dc = self.denom.content();
        let dp = self.denom.primitive_part();
        if self.denom.is_one() {
            return write!(f, "{}", scaled(&nc, &np, false));
        }
        let num = scaled(&nc, &np, true);
        let den = scaled(&dc, &dp, true);
        let den_needs_parens = den.contains(['*', '+', '-']) && !(den.starts_with('(') && den.ends_with(')'));
        if den_needs_parens {
            write!(f, "{num}/({den})")
        } else {
            write!(f, "{num}/{den}")
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl From<IntPolynomial> for RationalFunction {
    fn from(p: IntPolynomial) -> Self {
        Self::from_poly(p)
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(p(n), p(d))
    }

    #[test]
    fn reduces_on_construction() {
        // (2q^2-2)/(4q-4) = (q+1)/2
        assert_eq!(rf(&[-2, 0, 2], &[-4, 4]), rf(&[1, 1], &[2]));
        assert_eq!(rf(&[1], &[-2]).to_string(), "-1/2");
    }

    #[test]
    fn canonical_text() {
        assert_eq!(rf(&[0, 1], &[2, 2]).to_string(), "q/(2*(q+1))");
        assert_eq!(rf(&[1, 1], &[0, 0, 1]).to_string(), "(q+1)/q^2");
        assert_eq!(rf(&[3, 3], &[1]).to_string(), "3*(q+1)");
        assert_eq!(rf(&[-1, 1], &[1]).to_string(), "q-1");
        assert_eq!(rf(&[1, -1], &[0, 1]).to_string(), "-(q-1)/q");
        assert_eq!(RationalFunction::one().to_string(), "1");
    }

    #[test]
    fn reciprocal_substitution() {
        // q/(2(q+1)) at 1/q is 1/(2(q+1))
        let r2 = rf(&[0, 1], &[2, 2]);
        assert_eq!(r2.substitute_reciprocal(), rf(&[1], &[2, 2]));
    }

    #[test]
    fn q_power_shifts() {
        let f = rf(&[1, 1], &[0, 0, 1]);
        assert_eq!(f.mul_q_power(3), rf(&[0, 1, 1], &[1]));
        assert_eq!(f.mul_q_power(-1), rf(&[1, 1], &[0, 0, 0, 1]));
    }

    fn small_rf() -> impl Strategy<Value = RationalFunction> {
        (prop::collection::vec(-9i64..10, 0..4), prop::collection::vec(-9i64..10, 1..4))
            .prop_filter("nonzero denominator", |(_, d)| d.iter().any(|&c| c != 0))
            .prop_map(|(n, d)| rf(&n, &d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn evaluation_commutes_with_arithmetic(f in small_rf(), g in small_rf()) {
            for q0 in [2i64, 3, 5, 7] {
                let x = rat(q0, 1);
                let (Some(fv), Some(gv)) = (f.eval_rational(&x), g.eval_rational(&x)) else { continue };
                prop_assert_eq!(f.add(&g).eval_rational(&x), Some(&fv + &gv));
                prop_assert_eq!(f.sub(&g).eval_rational(&x), Some(&fv - &gv));
                prop_assert_eq!(f.mul(&g).eval_rational(&x), Some(&fv * &gv));
                if !g.numer().is_zero() && !gv.is_zero() {
                    if let Some(v) = f.div(&g).eval_rational(&x) {
                        prop_assert_eq!(v, &fv / &gv);
                    }
                }
            }
        }

        #[test]
        fn canonical_form_is_unique(f in small_rf(), g in small_rf()) {
            // f*g/g == f structurally
            prop_assume!(!g.numer().is_zero());
            prop_assert_eq!(f.mul(&g).div(&g), f);
        }
    }
}
