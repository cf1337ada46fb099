//! Boundary edit distance against brute-force enumeration of every legal
//! pairing, crossing pairings included.

use proptest::prelude::*;
use slate_core::eval::{boundary_edit_distance, boundary_similarity, BoundarySet};

/// Minimum cost in units of `1 / window` over all pairings where paired
/// positions differ by at most `window` and unpaired positions cost 1.
fn brute_cost(a: &[usize], b: &[usize], window: usize) -> usize {
    fn go(i: usize, a: &[usize], b: &[usize], used: &mut Vec<bool>, window: usize) -> usize {
        if i == a.len() {
            return used.iter().filter(|u| !**u).count() * window;
        }
        let mut best = window + go(i + 1, a, b, used, window);
        for j in 0..b.len() {
            let d = a[i].abs_diff(b[j]);
            if !used[j] && d <= window {
                used[j] = true;
                best = best.min(d + go(i + 1, a, b, used, window));
                used[j] = false;
            }
        }
        best
    }
    go(0, a, b, &mut vec![false; b.len()], window)
}

fn set_strategy(n: usize) -> impl Strategy<Value = BoundarySet> {
    prop::collection::btree_set(1..n, 0..=5).prop_map(move |s| BoundarySet::new(n, s).unwrap())
}

fn pair() -> impl Strategy<Value = (BoundarySet, BoundarySet, usize)> {
    (2usize..16).prop_flat_map(|n| (set_strategy(n), set_strategy(n), 1usize..=3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn dp_cost_matches_brute_force((s1, s2, w) in pair()) {
        let e = boundary_edit_distance(&s1, &s2, w).unwrap();
        let scaled = (e.additions + e.deletions) * w + e.transpositions.iter().sum::<usize>();
        prop_assert_eq!(scaled, brute_cost(s1.positions(), s2.positions(), w));
        prop_assert!(e.transpositions.iter().all(|&t| (1..=w).contains(&t)));
        prop_assert_eq!(e.matches + e.deletions + e.transpositions.len(), s1.len());
        prop_assert_eq!(e.matches + e.additions + e.transpositions.len(), s2.len());
    }

    #[test]
    fn similarity_is_symmetric((s1, s2, w) in pair()) {
        let ab = boundary_similarity(&s1, &s2, w).unwrap();
        let ba = boundary_similarity(&s2, &s1, w).unwrap();
        prop_assert_eq!(ab, ba);
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert_eq!(ab == 1.0, s1 == s2);
    }

    #[test]
    fn monotone_in_shift(n in 8usize..20, base in 3usize..5) {
        // One internal boundary of s1 moves away from its match in s2.
        let s2 = BoundarySet::new(n, [base]).unwrap();
        let mut last = f64::INFINITY;
        for shift in 0..=3 {
            let s1 = BoundarySet::new(n, [base + shift]).unwrap();
            let b = boundary_similarity(&s1, &s2, 2).unwrap();
            prop_assert!(b <= last);
            last = b;
        }
    }
}

#[test]
fn shift_sequence_values() {
    let s2 = BoundarySet::new(12, [4]).unwrap();
    let b: Vec<f64> = (0..=3)
        .map(|d| boundary_similarity(&BoundarySet::new(12, [4 + d]).unwrap(), &s2, 2).unwrap())
        .collect();
    // match, t=1, t=2, then one addition plus one deletion
    let expected = [1.0, 1.0 - 0.5 / 3.0, 1.0 - 1.0 / 3.0, 1.0 - 2.0 / 4.0];
    for (got, want) in b.iter().zip(expected) {
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
    }
}
