//! Dense polynomials with coefficients reduced modulo an integer `m`,
//! stored low degree first and kept free of trailing zeros.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub(crate) type Poly = Vec<BigInt>;

pub(crate) fn reduce(mut a: Poly, m: &BigInt) -> Poly {
    for c in a.iter_mut() {
        *c = c.mod_floor(m);
    }
    trim(a)
}

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

pub(crate) fn degree(a: &[BigInt]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            x + b.get(i).cloned().unwrap_or_default()
        })
        .collect();
    reduce(out, m)
}

pub(crate) fn sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            x - b.get(i).cloned().unwrap_or_default()
        })
        .collect();
    reduce(out, m)
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(out, m)
}

pub(crate) fn scale(a: &[BigInt], c: &BigInt, m: &BigInt) -> Poly {
    reduce(a.iter().map(|x| x * c).collect(), m)
}

/// Quotient and remainder on division by a monic polynomial.
pub(crate) fn divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Poly, Poly) {
    let db = degree(b).expect("nonzero divisor");
    debug_assert!(b[db].is_one());
    let mut r: Poly = reduce(a.to_vec(), m);
    let Some(da) = degree(&r) else {
        return (Vec::new(), Vec::new());
    };
    if da < db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = r[k + db].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate().take(db + 1) {
            r[k + i] -= &c * bi;
        }
        q[k] = c;
    }
    (reduce(q, m), reduce(r, m))
}

/// Inverse of `a` modulo a prime `p`.
pub(crate) fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// `(g, s, t)` with `s a + t b = g` over the field `Z/p`, `g` monic.
pub(crate) fn xgcd_mod_p(a: &[BigInt], b: &[BigInt], p: &BigInt) -> (Poly, Poly, Poly) {
    let make_monic = |r: Poly, s: Poly, t: Poly| -> (Poly, Poly, Poly) {
        match degree(&r) {
            None => (r, s, t),
            Some(d) => {
                let inv = inv_mod(&r[d], p).expect("prime modulus");
                (scale(&r, &inv, p), scale(&s, &inv, p), scale(&t, &inv, p))
            }
        }
    };
    let (mut r0, mut s0, mut t0) = (reduce(a.to_vec(), p), vec![BigInt::one()], Vec::new());
    let (mut r1, mut s1, mut t1) = (reduce(b.to_vec(), p), Vec::new(), vec![BigInt::one()]);
    while degree(&r1).is_some() {
        let d = degree(&r1).unwrap();
        let inv = inv_mod(&r1[d], p).expect("prime modulus");
        let monic = scale(&r1, &inv, p);
        let (q, r) = divrem_monic(&r0, &monic, p);
        let q = scale(&q, &inv, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        (r0, s0, t0) = (r1, s1, t1);
        (r1, s1, t1) = (r, s2, t2);
    }
    make_monic(r0, s0, t0)
}

/// Evaluate at an integer point modulo `m`.
pub(crate) fn eval(a: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    a.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

/// `a(x + α)` modulo `m`, by repeated synthetic division.
pub(crate) fn taylor_shift(a: &[BigInt], alpha: &BigInt, m: &BigInt) -> Poly {
    let mut c: Poly = a.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = &c[j + 1] * alpha;
            c[j] = (&c[j] + t).mod_floor(m);
        }
    }
    reduce(c, m)
}

/// `(x - α)^d` modulo `m`.
pub(crate) fn linear_power(alpha: &BigInt, d: usize, m: &BigInt) -> Poly {
    let lin = vec![(-alpha).mod_floor(m), BigInt::one()];
    (0..d).fold(vec![BigInt::one()], |acc, _| mul(&acc, &lin, m))
}
