use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::modpoly::{self as mp, Poly};
use super::TruncatedPadicPoly;
use crate::error::{Error, Result};

/// Roots of `f mod p` in `0..p` with multiplicities, found by trial.
pub fn roots_mod_p(coeffs: &[BigInt], p: u64) -> Vec<(u64, usize)> {
    let pb = BigInt::from(p);
    let mut f = mp::reduce(coeffs.to_vec(), &pb);
    let mut roots = Vec::new();
    if f.is_empty() {
        return roots;
    }
    for a in 0..p {
        let lin = mp::linear_power(&BigInt::from(a), 1, &pb);
        let mut mult = 0;
        while mp::degree(&f).is_some_and(|d| d > 0) && mp::eval(&f, &BigInt::from(a), &pb).is_zero() {
            let lead_inv = mp::inv_mod(f.last().unwrap(), &pb).unwrap();
            let monic = mp::scale(&f, &lead_inv, &pb);
            let (q, _) = mp::divrem_monic(&monic, &lin, &pb);
            f = mp::scale(&q, f.last().unwrap(), &pb);
            mult += 1;
        }
        if mult > 0 {
            roots.push((a, mult));
        }
    }
    roots
}

/// Lift `f ≡ g h (mod p)`, with `h` monic and `g`, `h` coprime mod `p`, to
/// a factorisation modulo `p^k` by quadratic Hensel steps. `g` may have any
/// leading coefficient, including one divisible by `p`.
pub(crate) fn hensel_lift(f: &[BigInt], g0: &[BigInt], h0: &[BigInt], p: u64, k: u32) -> Result<(Poly, Poly)> {
    let pb = BigInt::from(p);
    let (gcd, mut s, mut t) = mp::xgcd_mod_p(g0, h0, &pb);
    if gcd != vec![BigInt::one()] {
        return Err(Error::Numerical("Hensel factors are not coprime modulo p".into()));
    }
    // invariants modulo m: f ≡ g h and s g + t h ≡ 1
    let target = num_traits::pow(pb.clone(), k as usize);
    let (mut g, mut h) = (g0.to_vec(), h0.to_vec());
    let mut m = pb;
    while m < target {
        let m2 = &m * &m;
        let e = mp::sub(f, &mp::mul(&g, &h, &m2), &m2);
        let (q, r) = mp::divrem_monic(&mp::mul(&s, &e, &m2), &h, &m2);
        g = mp::add(&g, &mp::add(&mp::mul(&t, &e, &m2), &mp::mul(&q, &g, &m2), &m2), &m2);
        h = mp::add(&h, &r, &m2);
        let b = mp::sub(&mp::add(&mp::mul(&s, &g, &m2), &mp::mul(&t, &h, &m2), &m2), &[BigInt::one()], &m2);
        let (c, d) = mp::divrem_monic(&mp::mul(&s, &b, &m2), &h, &m2);
        s = mp::sub(&s, &d, &m2);
        t = mp::sub(&mp::sub(&t, &mp::mul(&t, &b, &m2), &m2), &mp::mul(&c, &g, &m2), &m2);
        m = m2;
    }
    Ok((mp::reduce(g, &target), mp::reduce(h, &target)))
}

/// Split a monic polynomial whose reduction splits completely mod `p` into
/// pairwise coprime monic factors `f_α ≡ (x - α)^{d_α} (mod p)`, each known
/// modulo `p^K`. Returns `(factor, α, d_α)` triples in increasing `α`.
pub fn hensel_lift_split(f: &TruncatedPadicPoly) -> Result<Vec<(Vec<BigInt>, u64, usize)>> {
    if !f.is_monic() {
        return Err(Error::NonMonic);
    }
    let n = f.degree();
    let roots = roots_mod_p(f.coeffs(), f.p());
    if roots.iter().map(|r| r.1).sum::<usize>() < n {
        return Err(Error::NotSplitModP { p: f.p() });
    }
    split_monic(f.coeffs(), &roots, f.p(), f.precision())
}

pub(crate) fn split_monic(coeffs: &[BigInt], roots: &[(u64, usize)], p: u64, k: u32) -> Result<Vec<(Poly, u64, usize)>> {
    let pb = BigInt::from(p);
    let mut rest: Poly = coeffs.to_vec();
    let mut out = Vec::with_capacity(roots.len());
    for (i, &(alpha, d)) in roots.iter().enumerate() {
        if i + 1 == roots.len() {
            out.push((rest.clone(), alpha, d));
            break;
        }
        let h0 = mp::linear_power(&BigInt::from(alpha), d, &pb);
        let (g0, rem) = mp::divrem_monic(&rest, &h0, &pb);
        debug_assert!(rem.is_empty());
        let (g, h) = hensel_lift(&rest, &g0, &h0, p, k)?;
        out.push((h, alpha, d));
        rest = g;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, k: u32, c: &[i64]) -> TruncatedPadicPoly {
        TruncatedPadicPoly::from_i64s(p, k, c).unwrap()
    }

    fn product(factors: &[(Poly, u64, usize)], m: &BigInt) -> Poly {
        factors.iter().fold(vec![BigInt::one()], |acc, f| mp::mul(&acc, &f.0, m))
    }

    #[test]
    fn distinct_roots() {
        let f = poly(2, 8, &[0, 1, 1]);
        let fs = hensel_lift_split(&f).unwrap();
        assert_eq!(fs[0].0, vec![BigInt::from(0), BigInt::from(1)]);
        assert_eq!(fs[1].0, vec![BigInt::from(1), BigInt::from(1)]);
        let f = poly(5, 4, &[2, 3, 1]);
        let fs = hensel_lift_split(&f).unwrap();
        // roots -1 = 4 and -2 = 3 mod 5: factors x + 2 and x + 1
        assert_eq!(fs.iter().map(|f| f.1).collect::<Vec<_>>(), vec![3, 4]);
        assert_eq!(fs[0].0, vec![BigInt::from(2), BigInt::from(1)]);
    }

    #[test]
    fn square_roots_of_minus_one_mod_625() {
        let m = BigInt::from(625);
        let f = poly(5, 4, &[1, 0, 1]);
        let fs = hensel_lift_split(&f).unwrap();
        assert_eq!(product(&fs, &m), f.coeffs().to_vec());
        // oracle: brute-force square roots of -1 modulo 625
        let sqrt: Vec<i64> = (0..625).filter(|r| (r * r + 1) % 625 == 0).collect();
        for (factor, alpha, d) in &fs {
            assert_eq!(*d, 1);
            let root = (-&factor[0]).modpow(&BigInt::one(), &m);
            let root = ((root % &m) + &m) % &m;
            assert!(sqrt.contains(&i64::try_from(root.clone()).unwrap()));
            assert_eq!(root % 5u32, BigInt::from(*alpha));
        }
    }

    #[test]
    fn repeated_roots() {
        // (x-1)^2 (x-3) (x+1) + 5 x over p = 5
        let m = num_traits::pow(BigInt::from(5), 6);
        let f = poly(5, 6, &[-3, 9, 2, -4, 1]);
        let roots = roots_mod_p(f.coeffs(), 5);
        let fs = hensel_lift_split(&f).unwrap();
        assert_eq!(roots.iter().map(|r| r.1).sum::<usize>(), 4);
        assert_eq!(product(&fs, &m), f.coeffs().to_vec());
    }

    #[test]
    fn errors() {
        assert!(matches!(hensel_lift_split(&poly(2, 4, &[1, 1, 1])), Err(Error::NotSplitModP { p: 2 })));
        let nm = TruncatedPadicPoly::new(3, 4, vec![BigInt::from(1), BigInt::from(2)], false).unwrap();
        assert!(matches!(hensel_lift_split(&nm), Err(Error::NonMonic)));
    }
}
