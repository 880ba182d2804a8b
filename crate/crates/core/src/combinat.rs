//! Small enumeration helpers shared by the composition sums and the tree
//! enumerator.

use num_bigint::BigInt;
use num_traits::One;

/// All partitions of `n` into at most `max_parts` positive parts, each part
/// at most `max_part`, listed as nonincreasing vectors.
pub fn partitions(n: usize, max_parts: usize, max_part: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max_parts: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        if max_parts == 0 {
            return;
        }
        for part in (1..=max_part.min(n)).rev() {
            // remaining parts are each at most `part`
            if part * max_parts < n {
                break;
            }
            prefix.push(part);
            go(n - part, max_parts - 1, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max_parts, max_part, &mut Vec::new(), &mut out);
    out
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Number of ways to place the multiset `parts` (plus zeros) into `slots`
/// ordered positions: `slots! / ((slots - k)! * prod(mult!))`.
pub fn arrangements(parts: &[usize], slots: usize) -> BigInt {
    assert!(parts.len() <= slots);
    let mut denom = factorial(slots - parts.len());
    let mut i = 0;
    while i < parts.len() {
        let j = parts[i..].iter().take_while(|&&p| p == parts[i]).count();
        denom *= factorial(j);
        i += j;
    }
    factorial(slots) / denom
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(5, 5, 5).len(), 7);
        assert_eq!(partitions(5, 2, 5), vec![vec![5], vec![4, 1], vec![3, 2]]);
        assert_eq!(partitions(0, 3, 3), vec![Vec::<usize>::new()]);
        assert_eq!(partitions(6, 3, 2), vec![vec![2, 2, 2]]);
    }

    #[test]
    fn arrangements_count_compositions() {
        // compositions of n into q nonnegative parts number C(n+q-1, q-1)
        for (n, q) in [(5usize, 3usize), (6, 4), (4, 2)] {
            let total: BigInt = partitions(n, q, n).iter().map(|p| arrangements(p, q)).sum();
            assert_eq!(total, binomial(n + q - 1, q - 1));
        }
    }
}
