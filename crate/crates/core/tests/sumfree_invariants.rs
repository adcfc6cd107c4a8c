use homlab::sumfree::{
    census, census_with, circulant_window, is_sum_free, random_sum_free_trial, SumFreeSet,
};
use homlab::Execution;
use proptest::prelude::*;

fn naive_sum_free(set: &[u64]) -> bool {
    set.iter().all(|&x| set.iter().all(|&y| !set.contains(&(x + y))))
}

fn has_triangle(g: &homlab::FiniteGraph) -> bool {
    let n = g.order();
    (0..n).any(|a| (a + 1..n).any(|b| g.has_edge(a, b) && (b + 1..n).any(|c| g.has_edge(a, c) && g.has_edge(b, c))))
}

fn small_set() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::btree_set(1u64..40, 0..8).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn sum_free_iff_circulant_is_triangle_free(set in small_set()) {
        let max = set.iter().copied().max().unwrap_or(1) as usize;
        let g = circulant_window(&set, 3 * max).unwrap();
        prop_assert_eq!(is_sum_free(&set).sum_free, !has_triangle(&g));
        prop_assert_eq!(is_sum_free(&set).sum_free, naive_sum_free(&set));
    }

    #[test]
    fn circulant_adjacency_is_shift_invariant(set in small_set(), shift in 0usize..30) {
        let g = circulant_window(&set, 80).unwrap();
        for x in 0..40 {
            for y in 0..40 {
                if x != y {
                    prop_assert_eq!(g.has_edge(x, y), g.has_edge(x + shift, y + shift));
                }
            }
        }
    }

    #[test]
    fn sum_free_witnesses_are_genuine(set in small_set()) {
        let check = is_sum_free(&set);
        if let Some((x, y, z)) = check.witness {
            prop_assert!(set.contains(&x) && set.contains(&y) && set.contains(&z));
            prop_assert_eq!(x + y, z);
        }
    }

    #[test]
    fn random_sets_are_sum_free(seed in any::<u64>(), trial in 0u64..1000, horizon in 1u64..400) {
        let s = random_sum_free_trial(seed, trial, horizon).unwrap();
        prop_assert!(naive_sum_free(s.elements()));
        prop_assert!(s.elements().iter().all(|&x| 1 <= x && x <= horizon));
        prop_assert_eq!(s, random_sum_free_trial(seed, trial, horizon).unwrap());
    }
}

#[test]
fn census_matches_brute_force() {
    for n in 0..=18usize {
        let mut total = 0u64;
        for mask in 0u32..1 << n {
            let set: Vec<u64> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i as u64 + 1).collect();
            total += naive_sum_free(&set) as u64;
        }
        assert_eq!(census(n).unwrap().total, total, "n = {n}");
    }
}

#[test]
fn census_type_identities() {
    for n in 1..=34usize {
        let c = census_with(n, Execution::Parallel).unwrap();
        assert_eq!(c, census_with(n, Execution::Sequential).unwrap());
        let half_up = (n as u32).div_ceil(2);
        assert_eq!(c.odd_type, 1 << half_up);
        assert_eq!(c.top_type, 1 << half_up);
        let odd_top = (n / 2 + 1..=n).filter(|x| x % 2 == 1).count() as u32;
        assert_eq!(c.both_types, 1 << odd_top);
        assert_eq!(c.total, c.odd_type + c.top_type - c.both_types + c.other);
    }
}

#[test]
fn odd_sets_are_sum_free() {
    let s = SumFreeSet::odds(101);
    assert!(naive_sum_free(s.elements()));
    assert!(!s.has_even());
}
