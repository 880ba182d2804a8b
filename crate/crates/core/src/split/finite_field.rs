use std::collections::HashSet;

use num_bigint::BigInt;

use crate::arith::{q_pow, Rational};
use crate::combinat::binomial;
use crate::error::{Error, Result};

/// Probability that a random monic degree-`n` polynomial over the field
/// with `q` elements splits: `C(n+q-1, q-1) / q^n`.
pub fn finite_field_rbar(q: u64, n: usize) -> Result<Rational> {
    if q < 2 {
        return Err(Error::param(format!("q must be at least 2, got {q}")));
    }
    let count = binomial(n + q as usize - 1, q as usize - 1);
    Ok(Rational::from_integer(count) / q_pow(q, n as u64))
}

/// Addition and multiplication tables of a field with at most 5 elements.
pub struct SmallField {
    q: usize,
    add: Vec<Vec<u8>>,
    mul: Vec<Vec<u8>>,
}

impl SmallField {
    pub fn new(q: u64) -> Result<Self> {
        let q = q as usize;
        let (add, mul): (Vec<Vec<u8>>, Vec<Vec<u8>>) = match q {
            2 | 3 | 5 => (
                (0..q).map(|a| (0..q).map(|b| ((a + b) % q) as u8).collect()).collect(),
                (0..q).map(|a| (0..q).map(|b| ((a * b) % q) as u8).collect()).collect(),
            ),
            4 => {
                // GF(2)[x]/(x^2+x+1); element b1*x + b0 stored as 2*b1 + b0.
                let mul4 = |a: usize, b: usize| -> u8 {
                    let (a0, a1, b0, b1) = (a & 1, a >> 1, b & 1, b >> 1);
                    let c0 = (a0 * b0) ^ (a1 * b1);
                    let c1 = (a0 * b1) ^ (a1 * b0) ^ (a1 * b1);
                    (c0 | (c1 << 1)) as u8
                };
                (
                    (0..4).map(|a| (0..4).map(|b| (a ^ b) as u8).collect()).collect(),
                    (0..4).map(|a| (0..4).map(|b| mul4(a, b)).collect()).collect(),
                )
            }
            _ => return Err(Error::param(format!("unsupported field size {q}; expected one of 2, 3, 4, 5"))),
        };
        Ok(SmallField { q, add, mul })
    }

    pub fn size(&self) -> usize {
        self.q
    }

    fn neg(&self, a: u8) -> u8 {
        (0..self.q as u8).find(|&b| self.add[a as usize][b as usize] == 0).unwrap()
    }

    /// Coefficients (low to high, monic leading 1 included) of `prod (x - root)`.
    pub fn expand_roots(&self, roots: &[u8]) -> Vec<u8> {
        let mut poly = vec![1u8];
        for &root in roots {
            let minus_root = self.neg(root);
            let mut next = vec![0u8; poly.len() + 1];
            for (i, &c) in poly.iter().enumerate() {
                next[i + 1] = self.add[next[i + 1] as usize][c as usize];
                let t = self.mul[c as usize][minus_root as usize];
                next[i] = self.add[next[i] as usize][t as usize];
            }
            poly = next;
        }
        poly
    }
}

fn multisets(q: u8, n: usize, start: u8, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if prefix.len() == n {
        out.push(prefix.clone());
        return;
    }
    for a in start..q {
        prefix.push(a);
        multisets(q, n, a, prefix, out);
        prefix.pop();
    }
}

/// Independent check of [`finite_field_rbar`]: enumerate every monic
/// degree-`n` polynomial over the field of size `q` and count the ones that
/// are a product of linear factors.
pub fn ff_bruteforce_rbar(q: u64, n: usize) -> Result<Rational> {
    let field = SmallField::new(q)?;
    if n > 6 {
        return Err(Error::LimitExceeded { what: format!("brute-force degree {n}"), limit: 6 });
    }
    let mut roots = Vec::new();
    multisets(q as u8, n, 0, &mut Vec::new(), &mut roots);
    let split: HashSet<Vec<u8>> = roots.iter().map(|r| field.expand_roots(r)).collect();

    let total = (q as usize).pow(n as u32);
    let mut count = 0u64;
    let mut coeffs = vec![0u8; n + 1];
    coeffs[n] = 1;
    for index in 0..total {
        let mut rest = index;
        for c in coeffs.iter_mut().take(n) {
            *c = (rest % q as usize) as u8;
            rest /= q as usize;
        }
        if split.contains(&coeffs) {
            count += 1;
        }
    }
    Ok(Rational::new(BigInt::from(count), BigInt::from(total)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn quadratics_over_two_elements() {
        // x^2, x^2+x, x^2+1 split; x^2+x+1 does not
        assert_eq!(finite_field_rbar(2, 2).unwrap(), rat(3, 4));
        assert_eq!(ff_bruteforce_rbar(2, 2).unwrap(), rat(3, 4));
    }

    #[test]
    fn small_cases() {
        assert_eq!(finite_field_rbar(3, 1).unwrap(), rat(1, 1));
        assert_eq!(finite_field_rbar(2, 3).unwrap(), rat(1, 2));
        assert_eq!(ff_bruteforce_rbar(2, 3).unwrap(), rat(1, 2));
        assert_eq!(ff_bruteforce_rbar(3, 2).unwrap(), rat(2, 3));
        assert_eq!(ff_bruteforce_rbar(2, 1).unwrap(), rat(1, 1));
        assert_eq!(ff_bruteforce_rbar(5, 0).unwrap(), rat(1, 1));
    }

    #[test]
    fn brute_force_matches_stars_and_bars() {
        for q in [2, 3, 4, 5] {
            for n in 0..=6 {
                if q == 5 && n == 6 {
                    continue;
                }
                assert_eq!(ff_bruteforce_rbar(q, n).unwrap(), finite_field_rbar(q, n).unwrap(), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn gf4_is_a_field() {
        let f = SmallField::new(4).unwrap();
        for a in 1..4 {
            assert!((1..4).any(|b| f.mul[a][b] == 1));
        }
    }

    #[test]
    fn unsupported_sizes() {
        assert!(ff_bruteforce_rbar(6, 2).is_err());
        assert!(ff_bruteforce_rbar(7, 2).is_err());
    }
}
