use super::{Field, Rational};
use crate::error::{Error, Result};

/// Power series truncated at an explicit order `N`: the coefficients of
/// `t^0 .. t^{N-1}` are known, everything from `t^N` on is discarded.
///
/// The order travels with the value; combining series of different orders
/// is an error rather than a silent truncation.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<T = Rational> {
    coeffs: Vec<T>,
}

impl<T: Field> PowerSeries<T> {
    /// Series with the given leading coefficients; the order is their count.
    pub fn new(coeffs: Vec<T>) -> Self {
        PowerSeries { coeffs }
    }

    /// The constant series 1 at the given order.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![T::zero(); order];
        if order > 0 {
            coeffs[0] = T::one();
        }
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&T> {
        self.coeffs.get(n)
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(PowerSeries::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect()))
    }

    pub fn scale(&self, c: &T) -> Self {
        PowerSeries::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let coeffs = (0..n)
            .map(|k| {
                (0..=k).fold(T::zero(), |acc, j| {
                    let (a, b) = (&self.coeffs[j], &other.coeffs[k - j]);
                    if a.is_zero() || b.is_zero() { acc } else { acc.add(&a.mul(b)) }
                })
            })
            .collect();
        Ok(PowerSeries::new(coeffs))
    }

    /// `self^e` by binary powering under truncation.
    pub fn pow(&self, e: u64) -> Result<Self> {
        if e == 0 {
            if self.order() == 0 {
                return Err(Error::param("zeroth power of an order-0 series"));
            }
            return Ok(Self::one(self.order()));
        }
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base)?,
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc.unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn s(c: &[(i64, i64)]) -> PowerSeries {
        PowerSeries::new(c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn difference_of_squares() {
        let a = s(&[(1, 1), (1, 1), (0, 1)]);
        let b = s(&[(1, 1), (-1, 1), (0, 1)]);
        assert_eq!(a.mul(&b).unwrap(), s(&[(1, 1), (0, 1), (-1, 1)]));
    }

    #[test]
    fn square_of_g_at_q_two() {
        // s_0, s_1, s_2 at q = 2 are 1, 1/2, 1/24
        let g = s(&[(1, 1), (1, 2), (1, 24)]);
        assert_eq!(g.mul(&g).unwrap(), s(&[(1, 1), (1, 1), (1, 3)]));
    }

    #[test]
    fn identity_and_binomial() {
        let a = s(&[(3, 7), (-1, 2), (5, 1), (2, 9)]);
        assert_eq!(a.mul(&PowerSeries::one(4)).unwrap(), a);
        let x = s(&[(1, 1), (1, 1), (0, 1), (0, 1)]);
        assert_eq!(x.pow(3).unwrap(), s(&[(1, 1), (3, 1), (3, 1), (1, 1)]));
        assert_eq!(a.pow(1).unwrap(), a);
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let a = s(&[(1, 1), (1, 1)]);
        let b = s(&[(1, 1)]);
        assert_eq!(a.mul(&b), Err(Error::OrderMismatch { left: 2, right: 1 }));
        assert!(PowerSeries::<Rational>::new(vec![]).pow(0).is_err());
    }

    fn small_series() -> impl Strategy<Value = PowerSeries> {
        prop::collection::vec((-5i64..6, 1i64..5), 5).prop_map(|c| s(&c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn pow_is_iterated_mul(g in small_series(), e in 2u64..=6) {
            let lhs = g.pow(e).unwrap();
            let rhs = g.pow(e - 1).unwrap().mul(&g).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn truncated_product_matches_full_convolution(a in small_series(), b in small_series()) {
            let prod = a.mul(&b).unwrap();
            for n in 0..5 {
                let full: Rational = (0..=n).map(|j| &a.coeffs()[j] * &b.coeffs()[n - j]).sum();
                prop_assert_eq!(&prod.coeffs()[n], &full);
            }
        }

        #[test]
        fn positive_inputs_stay_positive(c in prop::collection::vec(1i64..9, 5), e in 1u64..6) {
            let g = PowerSeries::new(c.iter().map(|&x| rat(x, 1)).collect());
            let p = g.pow(e).unwrap();
            prop_assert!(p.coeffs().iter().all(|x| *x > rat(0, 1)));
        }
    }
}
