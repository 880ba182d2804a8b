use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::hensel::{hensel_lift, roots_mod_p, split_monic};
use super::modpoly::{self as mp, Poly};
use super::TruncatedPadicPoly;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Splits,
    NotSplit,
    /// The available digits do not determine the answer.
    Indeterminate,
}

/// One step of the recursive classification.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceStep {
    pub depth: usize,
    /// Precision (in base-`p` digits) of the polynomial at this step.
    pub precision: u32,
    pub action: String,
    pub root: Option<u64>,
    pub multiplicity: Option<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassifierVerdict {
    pub outcome: Outcome,
    /// Largest number of digits used up along any branch.
    pub precision_consumed: u32,
    pub trace: Vec<TraceStep>,
}

impl ClassifierVerdict {
    /// Line-oriented rendering of the trace.
    pub fn trace_text(&self) -> String {
        let mut out = String::new();
        for s in &self.trace {
            let root = s.root.map(|r| format!(" root={r}")).unwrap_or_default();
            let mult = s.multiplicity.map(|d| format!(" mult={d}")).unwrap_or_default();
            out.push_str(&format!(
                "{}{} K={}{root}{mult} {}\n",
                "  ".repeat(s.depth),
                s.action,
                s.precision,
                s.detail
            ));
        }
        out.push_str(&format!("=> {:?} (consumed {})\n", self.outcome, self.precision_consumed));
        out
    }
}

struct Classifier {
    p: u64,
    pb: BigInt,
    start: u32,
    lowest: u32,
    trace: Vec<TraceStep>,
    record: bool,
}

impl Classifier {
    fn new(p: u64, k: u32, record: bool) -> Self {
        Classifier { p, pb: BigInt::from(p), start: k, lowest: k, trace: Vec::new(), record }
    }

    fn note(&mut self, depth: usize, precision: u32, action: &str, root: Option<u64>, mult: Option<usize>, detail: String) {
        self.lowest = self.lowest.min(precision);
        if self.record {
            self.trace.push(TraceStep { depth, precision, action: action.to_string(), root, multiplicity: mult, detail });
        }
    }

    fn finish(self, outcome: Outcome) -> ClassifierVerdict {
        ClassifierVerdict { outcome, precision_consumed: self.start - self.lowest, trace: self.trace }
    }

    fn modulus(&self, k: u32) -> BigInt {
        num_traits::pow(self.pb.clone(), k as usize)
    }

    /// `coeffs` is monic of degree `coeffs.len() - 1`, known modulo `p^k`.
    fn monic(&mut self, coeffs: &[BigInt], k: u32, depth: usize) -> Outcome {
        let n = coeffs.len() - 1;
        if n <= 1 {
            self.note(depth, k, "linear", None, None, format!("degree {n}"));
            return Outcome::Splits;
        }
        let roots = roots_mod_p(coeffs, self.p);
        let found: usize = roots.iter().map(|r| r.1).sum();
        if found < n {
            self.note(depth, k, "reduce", None, None, format!("{found} of {n} roots mod p"));
            return Outcome::NotSplit;
        }
        let factors = if roots.len() == 1 {
            vec![(coeffs.to_vec(), roots[0].0, n)]
        } else {
            match split_monic(coeffs, &roots, self.p, k) {
                Ok(f) => f,
                Err(_) => return Outcome::Indeterminate,
            }
        };
        let mut outcome = Outcome::Splits;
        for (factor, alpha, d) in factors {
            self.note(depth, k, "factor", Some(alpha), Some(d), String::new());
            if d == 1 {
                continue;
            }
            match self.cluster(&factor, alpha, d, k, depth) {
                Outcome::NotSplit => return Outcome::NotSplit,
                Outcome::Indeterminate => outcome = Outcome::Indeterminate,
                Outcome::Splits => {}
            }
        }
        outcome
    }

    /// A monic factor congruent to `(x - α)^d` mod `p`: shift the root to 0,
    /// require `v(c_i) ≥ d - i` for the coefficient of `x^i`, then rescale to
    /// `f(px)/p^d`, which is known to `k - d` digits.
    fn cluster(&mut self, factor: &[BigInt], alpha: u64, d: usize, k: u32, depth: usize) -> Outcome {
        let m = self.modulus(k);
        let mut shifted = mp::taylor_shift(factor, &BigInt::from(alpha), &m);
        shifted.resize(d + 1, BigInt::zero());
        let mut unresolved = false;
        for (i, c) in shifted.iter().enumerate().take(d) {
            let need = (d - i) as u32;
            if c.is_zero() {
                unresolved |= k < need;
                continue;
            }
            let v = valuation(c, &self.pb);
            if v < need {
                self.note(depth, k, "valuation", Some(alpha), Some(d), format!("v(c_{i}) = {v} < {need}"));
                return Outcome::NotSplit;
            }
        }
        if unresolved || k as usize <= d {
            self.note(depth, k, "precision", Some(alpha), Some(d), format!("{k} digits cannot resolve a rescale by p^{d}"));
            self.lowest = 0;
            return Outcome::Indeterminate;
        }
        let k_next = k - d as u32;
        let m_next = self.modulus(k_next);
        let rescaled: Poly = shifted
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let pw = num_traits::pow(self.pb.clone(), d - i);
                (c / pw).mod_floor(&m_next)
            })
            .collect();
        self.note(depth, k, "rescale", Some(alpha), Some(d), format!("precision {k} -> {k_next}"));
        self.monic(&rescaled, k_next, depth + 1)
    }

    /// Degree-at-most-`n` polynomial with arbitrary leading coefficient.
    fn bounded(&mut self, coeffs: &[BigInt], k: u32, depth: usize) -> Outcome {
        let n = coeffs.len() - 1;
        if n <= 1 {
            self.note(depth, k, "linear", None, None, format!("degree bound {n}"));
            return Outcome::Splits;
        }
        if coeffs.iter().all(|c| c.is_multiple_of(&self.pb)) {
            if k <= 1 {
                self.note(depth, k, "precision", None, None, "all coefficients vanish mod p".into());
                self.lowest = 0;
                return Outcome::Indeterminate;
            }
            self.note(depth, k, "divide", None, None, "all coefficients divisible by p".into());
            let divided: Vec<BigInt> = coeffs.iter().map(|c| c / &self.pb).collect();
            return self.bounded(&divided, k - 1, depth + 1);
        }
        let m = self.modulus(k);
        let j = coeffs.iter().rev().take_while(|c| c.is_multiple_of(&self.pb)).count();
        if j == 0 {
            let inv = mp::inv_mod(&coeffs[n], &m).expect("unit leading coefficient");
            let mut monic = mp::scale(coeffs, &inv, &m);
            monic.resize(n + 1, BigInt::zero());
            self.note(depth, k, "normalise", None, None, "unit leading coefficient".into());
            return self.monic(&monic, k, depth);
        }
        // roots of valuation < 0 become roots in pR of the reversed polynomial
        let rev: Poly = mp::trim(coeffs.iter().rev().cloned().collect());
        let g0: Poly = mp::reduce(rev.iter().skip(j).cloned().collect(), &self.pb);
        let mut h0 = vec![BigInt::zero(); j];
        h0.push(BigInt::one());
        let (b, a) = match hensel_lift(&rev, &g0, &h0, self.p, k) {
            Ok(pair) => pair,
            Err(_) => return Outcome::Indeterminate,
        };
        self.note(depth, k, "infinity", None, Some(j), format!("{j} roots at infinity"));
        let mut a = a;
        a.resize(j + 1, BigInt::zero());
        let at_infinity = self.monic(&a, k, depth + 1);
        if at_infinity == Outcome::NotSplit {
            return Outcome::NotSplit;
        }
        let finite = if j == n {
            Outcome::Splits
        } else {
            let mut b = b;
            b.resize(n - j + 1, BigInt::zero());
            let finite_part: Poly = b.iter().rev().cloned().collect();
            let inv = mp::inv_mod(&finite_part[n - j], &m).expect("unit constant term");
            let mut monic = mp::scale(&finite_part, &inv, &m);
            monic.resize(n - j + 1, BigInt::zero());
            self.monic(&monic, k, depth + 1)
        };
        match (at_infinity, finite) {
            (_, Outcome::NotSplit) => Outcome::NotSplit,
            (Outcome::Splits, Outcome::Splits) => Outcome::Splits,
            _ => Outcome::Indeterminate,
        }
    }
}

fn valuation(c: &BigInt, p: &BigInt) -> u32 {
    let mut v = 0;
    let mut c = c.clone();
    while c.is_multiple_of(p) {
        c /= p;
        v += 1;
    }
    v
}

/// Decide whether a monic polynomial known to `K` digits splits completely
/// over `Z_p`.
///
/// The recursion follows the structure of the proof that `r_n` depends only
/// on `q`: reduce mod `p`, separate the root clusters by Hensel lifting,
/// move each cluster's root to 0 and rescale. A step that would need a
/// digit beyond the available precision yields `Indeterminate`; that
/// handling is a design choice of this implementation, not something the
/// underlying mathematics prescribes.
pub fn classify_split(f: &TruncatedPadicPoly) -> Result<ClassifierVerdict> {
    classify_split_traced(f, true)
}

pub fn classify_split_traced(f: &TruncatedPadicPoly, record: bool) -> Result<ClassifierVerdict> {
    if !f.is_monic() {
        return Err(Error::NonMonic);
    }
    let mut c = Classifier::new(f.p(), f.precision(), record);
    let outcome = c.monic(f.coeffs(), f.precision(), 0);
    Ok(c.finish(outcome))
}

/// Classification for a polynomial of degree at most `n` with arbitrary
/// leading coefficient: factor off the roots at infinity (those of negative
/// valuation) and classify both parts as monic polynomials.
pub fn classify_split_nonmonic(f: &TruncatedPadicPoly) -> Result<ClassifierVerdict> {
    classify_split_nonmonic_traced(f, true)
}

pub fn classify_split_nonmonic_traced(f: &TruncatedPadicPoly, record: bool) -> Result<ClassifierVerdict> {
    let mut c = Classifier::new(f.p(), f.precision(), record);
    let outcome = c.bounded(f.coeffs(), f.precision(), 0);
    Ok(c.finish(outcome))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn monic(p: u64, k: u32, c: &[i64]) -> TruncatedPadicPoly {
        TruncatedPadicPoly::from_i64s(p, k, c).unwrap()
    }

    fn bounded(p: u64, k: u32, c: &[i64]) -> TruncatedPadicPoly {
        TruncatedPadicPoly::bounded_from_i64s(p, k, c).unwrap()
    }

    fn outcome(f: &TruncatedPadicPoly) -> Outcome {
        classify_split(f).unwrap().outcome
    }

    #[test]
    fn worked_examples() {
        assert_eq!(outcome(&monic(2, 8, &[0, 1, 1])), Outcome::Splits);
        // no r with r^2 = -1 or r^2 = 2 modulo 8
        assert!((0..8).all(|r: i64| (r * r + 1) % 8 != 0 && (r * r - 2).rem_euclid(8) != 0));
        for k in 3..10 {
            assert_eq!(outcome(&monic(2, k, &[1, 0, 1])), Outcome::NotSplit);
            assert_eq!(outcome(&monic(2, k, &[-2, 0, 1])), Outcome::NotSplit);
        }
        assert_eq!(outcome(&monic(5, 6, &[1, 0, 1])), Outcome::Splits);
        assert_eq!(outcome(&monic(3, 6, &[1, 0, 1])), Outcome::NotSplit);
    }

    #[test]
    fn perfect_squares_need_precision() {
        // x^2 exactly: every rescale keeps the double root at 0
        let v = classify_split(&monic(2, 10, &[0, 0, 1])).unwrap();
        assert_eq!(v.outcome, Outcome::Indeterminate);
        // (x - 4)^2 = x^2 - 8x + 16 over Z_2 resolves once the root separates
        assert_eq!(outcome(&monic(2, 12, &[16 + 2 * 64, -8, 1])), Outcome::NotSplit);
        assert_eq!(outcome(&monic(2, 12, &[4 * 3, -8, 1])), Outcome::Splits);
    }

    #[test]
    fn nonmonic_examples() {
        let v = |f| classify_split_nonmonic(&f).unwrap().outcome;
        assert_eq!(v(bounded(5, 8, &[1, 3, 2])), Outcome::Splits);
        assert_eq!(v(bounded(7, 8, &[4, 2])), Outcome::Splits);
        assert_eq!(v(bounded(3, 1, &[3, 6, 3])), Outcome::Indeterminate);
        // 2x^2 + 1 over Z_3: -1/2 = 1 mod 3 ... x^2 = 1 has roots, so splits
        assert_eq!(v(bounded(3, 8, &[1, 0, 2])), Outcome::Splits);
        // 3x^2 + x + 1: one root near 0 ... reversed is x^2 + x + 3
        assert_eq!(v(bounded(3, 8, &[1, 1, 3])), Outcome::Splits);
        // 2x^2 + 2 over Z_3: x^2 = -1 has no roots mod 3
        assert_eq!(v(bounded(3, 8, &[2, 0, 2])), Outcome::NotSplit);
    }

    #[test]
    fn trace_is_recorded() {
        let v = classify_split(&monic(2, 6, &[1, 0, 1])).unwrap();
        assert!(v.trace_text().contains("valuation"));
        let quiet = classify_split_traced(&monic(2, 6, &[1, 0, 1]), false).unwrap();
        assert!(quiet.trace.is_empty());
        assert_eq!(quiet.outcome, v.outcome);
    }

    #[test]
    fn nonmonic_rejected_by_monic_classifier() {
        assert!(matches!(classify_split(&bounded(3, 4, &[1, 3])), Err(Error::NonMonic)));
    }
}
