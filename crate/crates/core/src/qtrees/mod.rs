//! Combinatorics of q-trees: rooted trees whose vertices have no children
//! or between 2 and `q` children, weighted by `H(T) = Π_v β_{ℓ(v)}`.

mod balanced;
mod enumerate;
mod tree;

pub use balanced::{
    gamma_bruteforce, gamma_bruteforce_with_cap, level_census, level_census_walk, nu, nu_table, tree_h,
    tree_sum_sn, tree_sum_sn_with_cap, well_balanced, BetaTable, LevelCensus,
};
pub use enumerate::{
    count_labelled_bound, count_labellings, decode_labelled, default_enumeration_cap, enumerate_qtrees,
    enumerate_qtrees_with_cap, labelled_encodings, labelled_encodings_with_cap, LabelledBound,
};
pub use tree::QTree;

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;
    use crate::arith::rat;
    use crate::split::corollary_recursion;

    fn tau2() -> QTree {
        QTree::node(vec![QTree::leaf(), QTree::leaf()])
    }

    fn tau3a() -> QTree {
        QTree::node(vec![QTree::leaf(); 3])
    }

    fn tau3b() -> QTree {
        QTree::node(vec![tau2(), QTree::leaf()])
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_qtrees(2, 1).unwrap(), vec![QTree::leaf()]);
        assert_eq!(enumerate_qtrees(2, 3).unwrap(), vec![tau3b()]);
        let mut three = enumerate_qtrees(3, 3).unwrap();
        three.sort();
        let mut expected = vec![tau3a(), tau3b()];
        expected.sort();
        assert_eq!(three, expected);
        assert!(enumerate_qtrees(2, 11).unwrap_err().is_limit());
        // Wedderburn-Etherington numbers count unlabelled binary trees
        let counts: Vec<usize> = (1..=10).map(|n| enumerate_qtrees(2, n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 46, 98]);
    }

    #[test]
    fn labelling_counts() {
        assert_eq!(count_labellings(&tau2(), 2), BigInt::from(1));
        assert_eq!(count_labellings(&tau2(), 5), BigInt::from(10));
        assert_eq!(count_labellings(&tau3b(), 2), BigInt::from(2));
        assert_eq!(count_labellings(&tau3a(), 2), BigInt::from(0));
        // q(q-1) C(q,2) and C(q,3) at q = 3
        assert_eq!(count_labellings(&tau3b(), 3), BigInt::from(18));
        assert_eq!(count_labellings(&tau3a(), 3), BigInt::from(1));
    }

    #[test]
    fn orbit_formula_matches_explicit_labellings() {
        for (q, n_max) in [(2u64, 8usize), (3, 6), (4, 5)] {
            for n in 1..=n_max {
                let encodings = labelled_encodings(q, n).unwrap();
                let total: BigInt = enumerate_qtrees(q, n).unwrap().iter().map(|t| count_labellings(t, q)).sum();
                assert_eq!(BigInt::from(encodings.len()), total, "q={q} n={n}");
                for e in &encodings {
                    assert_eq!(decode_labelled(e).unwrap().leaf_count(), n);
                }
            }
        }
    }

    #[test]
    fn encoding_golden() {
        let two: Vec<String> = labelled_encodings(2, 2).unwrap().into_iter().collect();
        assert_eq!(two, vec!["(0.)0(1.)1"]);
        let three: Vec<String> = labelled_encodings(2, 3).unwrap().into_iter().collect();
        assert_eq!(three, vec!["(0(0.)0(1.)1)0(1.)1", "(0.)0(1(0.)0(1.)1)1"]);
        assert!(decode_labelled("(0.)0").is_err());
        assert!(decode_labelled("(0.)1(1.)1").is_err());
    }

    #[test]
    fn h_examples() {
        let b = BetaTable::new(3, 3).unwrap();
        let (b1, b2, b3) = (&b.entries()[1], &b.entries()[2], &b.entries()[3]);
        assert_eq!(tree_h(&QTree::leaf(), &b).unwrap(), rat(1, 3));
        assert_eq!(tree_h(&tau2(), &b).unwrap(), b1 * b1 * b2);
        assert_eq!(tree_h(&tau3b(), &b).unwrap(), b3 * b2 * b1 * b1 * b1);
    }

    #[test]
    fn tree_sum_matches_recursion() {
        for (q, n_max) in [(2u64, 8usize), (3, 6)] {
            let b = BetaTable::new(q, n_max).unwrap();
            let t = corollary_recursion(q, n_max).unwrap();
            for n in 0..=n_max {
                assert_eq!(tree_sum_sn(q, n, &b).unwrap(), t.svalues()[n], "q={q} n={n}");
            }
        }
        let b = BetaTable::new(2, 2).unwrap();
        assert_eq!(tree_sum_sn(2, 2, &b).unwrap(), rat(1, 24));
        assert_eq!(tree_sum_sn(2, 1, &b).unwrap(), rat(1, 2));
    }

    #[test]
    fn gamma_equals_nu() {
        let b = BetaTable::new(2, 8).unwrap();
        assert_eq!(gamma_bruteforce(2, 4, &b).unwrap(), rat(1, 588672));
        for n in 1..=8 {
            assert_eq!(gamma_bruteforce(2, n, &b).unwrap(), nu(n, &b).unwrap());
            assert_eq!(tree_h(&well_balanced(2, n).unwrap(), &b).unwrap(), nu(n, &b).unwrap());
        }
        let b3 = BetaTable::new(3, 3).unwrap();
        let expected = &b3.entries()[3] * num_traits::pow(b3.entries()[1].clone(), 3);
        assert_eq!(gamma_bruteforce(3, 3, &b3).unwrap(), expected);
    }

    #[test]
    fn labelled_bounds() {
        let l4 = count_labelled_bound(2, 4).unwrap();
        assert_eq!(l4.count, BigInt::from(5));
        assert!(l4.holds());
        assert_eq!(count_labelled_bound(2, 1).unwrap().count, BigInt::from(1));
        let l3 = count_labelled_bound(3, 3).unwrap();
        assert_eq!(l3.count, BigInt::from(19));
        assert!(l3.holds());
    }

    #[test]
    fn census_matches_walk() {
        for q in [2u64, 3, 4] {
            for n in 1..=64usize {
                let t = well_balanced(q, n).unwrap();
                for k in 0..=8u32 {
                    assert_eq!(level_census(q, n as u64, k).unwrap(), level_census_walk(&t, k as usize), "q={q} n={n} k={k}");
                }
            }
        }
    }
}
