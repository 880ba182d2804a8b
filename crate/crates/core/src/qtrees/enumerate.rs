use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;

use super::tree::QTree;
use crate::combinat::{factorial, partitions};
use crate::error::{Error, Result};

/// Default leaf-count ceiling for exhaustive enumeration.
pub fn default_enumeration_cap(q: u64) -> usize {
    match q {
        2 => 10,
        3 => 8,
        _ => 7,
    }
}

fn check_cap(what: &str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::LimitExceeded { what: format!("{what} with {n} leaves"), limit: cap });
    }
    Ok(())
}

/// All unlabelled q-trees with exactly `n_leaves` leaves, in increasing order.
pub fn enumerate_qtrees(q: u64, n_leaves: usize) -> Result<Vec<QTree>> {
    enumerate_qtrees_with_cap(q, n_leaves, default_enumeration_cap(q))
}

pub fn enumerate_qtrees_with_cap(q: u64, n_leaves: usize, cap: usize) -> Result<Vec<QTree>> {
    crate::split::check_q(q)?;
    if n_leaves == 0 {
        return Err(Error::param("a q-tree has at least one leaf"));
    }
    check_cap("q-tree enumeration", n_leaves, cap)?;
    let mut memo: Vec<Vec<QTree>> = vec![Vec::new(), vec![QTree::leaf()]];
    for n in 2..=n_leaves {
        let mut trees = Vec::new();
        for parts in partitions(n, q as usize, n - 1) {
            // parts are nonincreasing; runs of equal sizes pick a multiset of subtrees
            let mut choices: Vec<Vec<Vec<QTree>>> = Vec::new();
            let mut i = 0;
            while i < parts.len() {
                let k = parts[i..].iter().take_while(|&&p| p == parts[i]).count();
                choices.push(multisets(&memo[parts[i]], k));
                i += k;
            }
            let mut combos: Vec<Vec<QTree>> = vec![Vec::new()];
            for group in &choices {
                let mut next = Vec::with_capacity(combos.len() * group.len());
                for prefix in &combos {
                    for pick in group {
                        let mut v = prefix.clone();
                        v.extend(pick.iter().cloned());
                        next.push(v);
                    }
                }
                combos = next;
            }
            trees.extend(combos.into_iter().map(QTree::node));
        }
        trees.sort();
        memo.push(trees);
    }
    Ok(memo.swap_remove(n_leaves))
}

/// All size-`k` multisets drawn from `items`.
fn multisets(items: &[QTree], k: usize) -> Vec<Vec<QTree>> {
    fn go(items: &[QTree], k: usize, start: usize, prefix: &mut Vec<QTree>, out: &mut Vec<Vec<QTree>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for i in start..items.len() {
            prefix.push(items[i].clone());
            go(items, k, i, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Number of ways to label the out-edges of every vertex with distinct
/// labels from `{0..q-1}`, counting labelled trees up to isomorphism:
/// `Π_v q!/(q-c_v)! / Π mult!`.
pub fn count_labellings(tree: &QTree, q: u64) -> BigInt {
    let q = q as usize;
    let mut total = BigInt::one();
    let mut ok = true;
    tree.walk(&mut |v, _| {
        let c = v.children().len();
        if c == 0 || !ok {
            return;
        }
        if c > q {
            ok = false;
            return;
        }
        let mut term = factorial(q) / factorial(q - c);
        for (_, m) in v.child_multiplicities() {
            term /= factorial(m);
        }
        total *= term;
    });
    if ok { total } else { BigInt::from(0) }
}

/// Every labelled q-tree with `n_leaves` leaves, built directly from label
/// subsets rather than from the unlabelled trees, in its parenthesis
/// encoding: `.` for a leaf; a vertex is the concatenation, over its
/// children in label order, of `(i` + child + `)i`.
pub fn labelled_encodings(q: u64, n_leaves: usize) -> Result<BTreeSet<String>> {
    labelled_encodings_with_cap(q, n_leaves, default_enumeration_cap(q))
}

pub fn labelled_encodings_with_cap(q: u64, n_leaves: usize, cap: usize) -> Result<BTreeSet<String>> {
    crate::split::check_q(q)?;
    if q > 10 {
        return Err(Error::param("labelled encodings use single-digit labels (q <= 10)"));
    }
    if n_leaves == 0 {
        return Err(Error::param("a q-tree has at least one leaf"));
    }
    check_cap("labelled q-tree enumeration", n_leaves, cap)?;
    let q = q as usize;
    let mut memo: Vec<Vec<String>> = vec![Vec::new(), vec![".".to_string()]];
    for n in 2..=n_leaves {
        let mut out = Vec::new();
        // choose a label subset (bitmask) of size >= 2, then a composition of n over it
        for mask in 0u32..(1 << q) {
            let labels: Vec<usize> = (0..q).filter(|i| mask & (1 << i) != 0).collect();
            if labels.len() < 2 {
                continue;
            }
            compose(&memo, &labels, n, 0, String::new(), &mut out);
        }
        memo.push(out);
    }
    let set: BTreeSet<String> = memo[n_leaves].iter().cloned().collect();
    debug_assert_eq!(set.len(), memo[n_leaves].len());
    Ok(set)
}

fn compose(memo: &[Vec<String>], labels: &[usize], remaining: usize, idx: usize, prefix: String, out: &mut Vec<String>) {
    let left = labels.len() - idx;
    if left == 0 {
        if remaining == 0 {
            out.push(prefix);
        }
        return;
    }
    // every remaining label needs at least one leaf
    for part in 1..=remaining.saturating_sub(left - 1) {
        if part >= memo.len() {
            break;
        }
        for sub in &memo[part] {
            let label = labels[idx];
            let s = format!("{prefix}({label}{sub}){label}");
            compose(memo, labels, remaining - part, idx + 1, s, out);
        }
    }
}

/// Decode the parenthesis encoding back to the unlabelled tree.
pub fn decode_labelled(encoding: &str) -> Result<QTree> {
    let bytes = encoding.as_bytes();
    let (tree, end) = parse(bytes, 0)?;
    if end != bytes.len() {
        return Err(Error::param(format!("trailing input at byte {end}")));
    }
    Ok(tree)
}

fn parse(b: &[u8], mut i: usize) -> Result<(QTree, usize)> {
    if b.get(i) == Some(&b'.') {
        return Ok((QTree::leaf(), i + 1));
    }
    let mut children = Vec::new();
    while b.get(i) == Some(&b'(') {
        let label = *b.get(i + 1).ok_or_else(|| Error::param("truncated encoding"))?;
        let (child, j) = parse(b, i + 2)?;
        if b.get(j) != Some(&b')') || b.get(j + 1) != Some(&label) {
            return Err(Error::param(format!("unbalanced label at byte {j}")));
        }
        children.push(child);
        i = j + 2;
    }
    if children.len() < 2 {
        return Err(Error::param(format!("malformed encoding at byte {i}")));
    }
    Ok((QTree::node(children), i))
}

/// Number of labelled q-trees with `leaves` leaves and the comparison with
/// `(2q+1)^{5l-3}`; for `q = 2` also the comparison with the Catalan number.
#[derive(Clone, Debug, PartialEq)]
pub struct LabelledBound {
    pub count: BigInt,
    pub bound: BigInt,
    pub catalan: Option<BigInt>,
}

impl LabelledBound {
    pub fn holds(&self) -> bool {
        self.count <= self.bound && self.catalan.as_ref().is_none_or(|c| *c == self.count)
    }
}

pub fn count_labelled_bound(q: u64, leaves: usize) -> Result<LabelledBound> {
    let trees = enumerate_qtrees(q, leaves)?;
    let count: BigInt = trees.iter().map(|t| count_labellings(t, q)).sum();
    let bound = num_traits::pow(BigInt::from(2 * q + 1), 5 * leaves - 3);
    let catalan = (q == 2).then(|| crate::combinat::binomial(2 * leaves - 2, leaves - 1) / BigInt::from(leaves));
    Ok(LabelledBound { count, bound, catalan })
}
