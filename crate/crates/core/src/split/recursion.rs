use crate::arith::Field;

/// Incremental solver for the Euler-form identity
/// `sum_{0<=j<=n} (n - (q+1)j) r_{n-j} r_j q^{-C(j+1,2)} = 0`,
/// generic over the scalar so the same code runs with exact rationals,
/// rational functions of `q`, and floating/complex `q`.
///
/// Holds `r_0..r_N`, `s_n = r_n q^{-C(n+1,2)}` and the scale factors
/// `q^{-C(n+1,2)}`. Extension returns a new value and never mutates.
#[derive(Clone, Debug)]
pub struct EulerRecursion<S> {
    q: S,
    inv_q: S,
    r: Vec<S>,
    s: Vec<S>,
    scale: Vec<S>,
}

impl<S: Field> EulerRecursion<S> {
    /// Start with `r_0 = r_1 = 1`.
    pub fn new(q: S) -> Self {
        let inv_q = S::one().div(&q);
        EulerRecursion {
            r: vec![S::one(), S::one()],
            s: vec![S::one(), inv_q.clone()],
            scale: vec![S::one(), inv_q.clone()],
            q,
            inv_q,
        }
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    /// Largest `n` computed so far.
    pub fn len(&self) -> usize {
        self.r.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn r(&self) -> &[S] {
        &self.r
    }

    pub fn s(&self) -> &[S] {
        &self.s
    }

    /// `q^{-C(n+1,2)}` for `n` up to the computed length.
    pub fn scale(&self) -> &[S] {
        &self.scale
    }

    pub fn extended(&self, n_max: usize) -> Self {
        let mut next = self.clone();
        next.extend_in_place(n_max);
        next
    }

    pub(crate) fn extend_in_place(&mut self, n_max: usize) {
        let q_plus_one = self.q.add(&S::one());
        while self.len() < n_max {
            let n = self.len() + 1;
            let scale_n = self.scale[n - 1].mul(&self.inv_q.pow(n as u64));
            let mut acc = S::zero();
            for j in 1..n {
                let weight = q_plus_one.mul_int(j as i64).sub(&S::from_int(n as i64));
                if weight.is_zero() || self.s[j].is_zero() {
                    continue;
                }
                acc = acc.add(&weight.mul(&self.r[n - j].mul(&self.s[j])));
            }
            // The j = 0 and j = n terms both carry r_n.
            let lead = S::one().sub(&self.q.mul(&scale_n)).mul_int(n as i64);
            let r_n = acc.div(&lead);
            self.s.push(r_n.mul(&scale_n));
            self.r.push(r_n);
            self.scale.push(scale_n);
        }
    }
}

/// `r_0..r_N` and `s_0..s_N` for an arbitrary scalar `q`.
pub fn euler_split_coefficients<S: Field>(q: S, n_max: usize) -> (Vec<S>, Vec<S>) {
    let mut rec = EulerRecursion::new(q);
    rec.extend_in_place(n_max);
    let mut r = rec.r;
    let mut s = rec.s;
    r.truncate(n_max + 1);
    s.truncate(n_max + 1);
    (r, s)
}
