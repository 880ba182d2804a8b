use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::enumerate::{count_labellings, enumerate_qtrees_with_cap, default_enumeration_cap};
use super::tree::QTree;
use crate::arith::{binom2, q_pow, Rational};
use crate::error::{Error, Result};
use crate::split::check_q;

/// Vertex weights `β_1 = 1/q`, `β_n = 1/(q^{C(n+1,2)} - q)` for `n ≥ 2`.
/// Index 0 holds 1 and is never used by a tree.
#[derive(Clone, Debug, PartialEq)]
pub struct BetaTable {
    q: u64,
    entries: Vec<Rational>,
}

impl BetaTable {
    pub fn new(q: u64, n_max: usize) -> Result<Self> {
        check_q(q)?;
        let qr = Rational::from_integer(BigInt::from(q));
        let mut entries = vec![Rational::one(), qr.recip()];
        for n in 2..=n_max {
            entries.push((q_pow(q, binom2(n as u64 + 1)) - &qr).recip());
        }
        entries.truncate(n_max.max(1) + 1);
        Ok(BetaTable { q, entries })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn max_n(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn beta(&self, n: usize) -> Result<&Rational> {
        self.entries
            .get(n)
            .ok_or_else(|| Error::param(format!("beta table covers n <= {}, asked for {n}", self.max_n())))
    }
}

/// `H(T) = Π_v β_{ℓ(v)}` over all vertices, leaves included.
pub fn tree_h(tree: &QTree, betas: &BetaTable) -> Result<Rational> {
    let mut h = Rational::one();
    let mut err = None;
    tree.walk(&mut |v, _| match betas.beta(v.leaf_count()) {
        Ok(b) => h *= b,
        Err(e) => err = Some(e),
    });
    match err {
        Some(e) => Err(e),
        None => Ok(h),
    }
}

/// `s_n` as the labelled-tree sum `Σ_T (#labellings of T) · H(T)`.
pub fn tree_sum_sn(q: u64, n: usize, betas: &BetaTable) -> Result<Rational> {
    tree_sum_sn_with_cap(q, n, betas, default_enumeration_cap(q))
}

pub fn tree_sum_sn_with_cap(q: u64, n: usize, betas: &BetaTable, cap: usize) -> Result<Rational> {
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut sum = Rational::zero();
    for t in enumerate_qtrees_with_cap(q, n, cap)? {
        let count = count_labellings(&t, q);
        if !count.is_zero() {
            sum += tree_h(&t, betas)? * count;
        }
    }
    Ok(sum)
}

/// The well-balanced q-tree with `n` leaves.
pub fn well_balanced(q: u64, n: usize) -> Result<QTree> {
    check_q(q)?;
    if n == 0 {
        return Err(Error::param("a q-tree has at least one leaf"));
    }
    let q = q as usize;
    let mut memo: BTreeMap<usize, QTree> = BTreeMap::new();
    Ok(build(q, n, &mut memo))
}

fn build(q: usize, n: usize, memo: &mut BTreeMap<usize, QTree>) -> QTree {
    if let Some(t) = memo.get(&n) {
        return t.clone();
    }
    let t = if n == 1 {
        QTree::leaf()
    } else if n < q {
        QTree::node(vec![QTree::leaf(); n])
    } else {
        let (x, y) = (n / q, n % q);
        let mut children = Vec::with_capacity(q);
        if y > 0 {
            let big = build(q, x + 1, memo);
            children.extend(std::iter::repeat_n(big, y));
        }
        let small = build(q, x, memo);
        children.extend(std::iter::repeat_n(small, q - y));
        QTree::node(children)
    };
    memo.insert(n, t.clone());
    t
}

/// `ν_0..ν_N` with `ν_0 = 1`, `ν_1 = 1/q`, `ν_n = β_n ν_x^{q-y} ν_{x+1}^y`
/// for `n = qx + y`, `0 ≤ y < q`.
pub fn nu_table(betas: &BetaTable) -> Vec<Rational> {
    let q = betas.q() as usize;
    let n_max = betas.max_n();
    let mut nu = vec![Rational::one(), betas.entries()[1].clone()];
    for n in 2..=n_max {
        let (x, y) = (n / q, n % q);
        // for n < q, x = 0 and the children are n leaves
        let value = if x == 0 {
            &betas.entries()[n] * num_traits::pow(nu[1].clone(), n)
        } else {
            let mut v = &betas.entries()[n] * num_traits::pow(nu[x].clone(), q - y);
            if y > 0 {
                v *= num_traits::pow(nu[x + 1].clone(), y);
            }
            v
        };
        nu.push(value);
    }
    nu.truncate(n_max + 1);
    nu
}

pub fn nu(n: usize, betas: &BetaTable) -> Result<Rational> {
    if n > betas.max_n() {
        return Err(Error::param(format!("beta table covers n <= {}, asked for {n}", betas.max_n())));
    }
    Ok(nu_table(betas).swap_remove(n))
}

/// Largest `H(T)` over all q-trees with `n` leaves, by exhaustive search.
pub fn gamma_bruteforce(q: u64, n: usize, betas: &BetaTable) -> Result<Rational> {
    gamma_bruteforce_with_cap(q, n, betas, default_enumeration_cap(q))
}

pub fn gamma_bruteforce_with_cap(q: u64, n: usize, betas: &BetaTable, cap: usize) -> Result<Rational> {
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut best: Option<Rational> = None;
    for t in enumerate_qtrees_with_cap(q, n, cap)? {
        let h = tree_h(&t, betas)?;
        if best.as_ref().is_none_or(|b| h > *b) {
            best = Some(h);
        }
    }
    Ok(best.expect("at least one tree"))
}

/// Vertices at distance `k` from the root of the well-balanced tree,
/// grouped by leaf count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelCensus {
    pub vertices: u64,
    /// leaf count `ℓ(v)` → number of depth-`k` vertices with that count
    pub by_leaf_count: BTreeMap<u64, u64>,
}

impl LevelCensus {
    fn empty() -> Self {
        LevelCensus { vertices: 0, by_leaf_count: BTreeMap::new() }
    }

    fn add(&mut self, leaves: u64, count: u64) {
        if count > 0 {
            self.vertices += count;
            *self.by_leaf_count.entry(leaves).or_insert(0) += count;
        }
    }
}

/// Census of depth `k` from the four-case closed description, without
/// building the tree.
pub fn level_census(q: u64, n: u64, k: u32) -> Result<LevelCensus> {
    check_q(q)?;
    if n == 0 {
        return Err(Error::param("a q-tree has at least one leaf"));
    }
    let mut census = LevelCensus::empty();
    let qk = q.checked_pow(k);
    if k == 0 {
        census.add(n, 1);
        return Ok(census);
    }
    let qk1 = q.pow(k - 1);
    if n < qk1 {
        return Ok(census);
    }
    if n < 2 * qk1 {
        census.add(1, 2 * (n - qk1));
    } else if qk.is_none_or(|qk| n < qk) {
        census.add(1, n);
    } else {
        let qk = qk.unwrap();
        let (x, y) = (n / qk, n % qk);
        census.add(x + 1, y);
        census.add(x, qk - y);
    }
    Ok(census)
}

/// Census of depth `k` by walking the constructed tree.
pub fn level_census_walk(tree: &QTree, k: usize) -> LevelCensus {
    let mut census = LevelCensus::empty();
    tree.walk(&mut |v, depth| {
        if depth == k {
            census.add(v.leaf_count() as u64, 1);
        }
    });
    census
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn beta_values() {
        let b = BetaTable::new(2, 4).unwrap();
        assert_eq!(b.entries()[1], rat(1, 2));
        assert_eq!(b.entries()[2], rat(1, 6));
        assert_eq!(b.entries()[4], rat(1, 1022));
    }

    #[test]
    fn nu_small() {
        let b = BetaTable::new(2, 4).unwrap();
        assert_eq!(nu(0, &b).unwrap(), rat(1, 1));
        assert_eq!(nu(1, &b).unwrap(), rat(1, 2));
        // β_4 ν_2^2 with ν_2 = β_2 β_1^2 = 1/24
        assert_eq!(nu(4, &b).unwrap(), rat(1, 1022 * 24 * 24));
    }

    #[test]
    fn well_balanced_shapes() {
        assert_eq!(well_balanced(2, 1).unwrap(), QTree::leaf());
        assert_eq!(well_balanced(2, 4).unwrap().to_string(), "[[..][..]]");
        let t = well_balanced(3, 5).unwrap();
        let counts: Vec<usize> = t.children().iter().map(QTree::leaf_count).collect();
        assert_eq!(counts, vec![1, 2, 2]);
        assert!(well_balanced(2, 0).is_err());
    }

    #[test]
    fn census_examples() {
        let c = level_census(2, 5, 2).unwrap();
        assert_eq!(c.vertices, 4);
        assert_eq!(c.by_leaf_count, BTreeMap::from([(1, 3), (2, 1)]));
        // T(3) for q = 2 has two leaves at depth 2 (under its 2-leaf child)
        let c = level_census(2, 3, 2).unwrap();
        assert_eq!(c.vertices, 2);
        assert_eq!(c.by_leaf_count, BTreeMap::from([(1, 2)]));
        assert_eq!(level_census(2, 1, 1).unwrap().vertices, 0);
    }
}
