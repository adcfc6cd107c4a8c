//! Isomorphism-free enumeration of small graphs by vertex addition.

use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::graph_canon::{small_canonical_code, SmallGraph};
use crate::par::{self, Execution};

/// Largest order supported by [`graphs_up_to_iso`].
pub const ENUMERATION_LIMIT: usize = 10;

/// Canonical codes of all graphs on `n` vertices up to isomorphism, sorted.
///
/// Every graph on `k + 1` vertices arises from one on `k` by adding a vertex
/// with some neighbourhood, so extending each class representative in all
/// `2^k` ways and deduplicating canonical codes is complete.
pub fn graph_codes(n: usize, exec: Execution) -> Result<Vec<u128>> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::size("graph enumeration order", ENUMERATION_LIMIT, n));
    }
    let mut level: Vec<u128> = vec![0];
    for k in 0..n {
        let children = par::map(exec, &level, |&code| {
            let g = SmallGraph::from_code(k, code);
            let mut out = Vec::with_capacity(1 << k);
            for mask in 0u32..(1 << k) {
                let mut h = g;
                h.n = k + 1;
                h.rows[k] = mask as u16;
                for v in 0..k {
                    if mask >> v & 1 == 1 {
                        h.rows[v] |= 1 << k;
                    }
                }
                out.push(small_canonical_code(&h));
            }
            out.sort_unstable();
            out.dedup();
            out
        });
        let mut next: Vec<u128> = children.into_iter().flatten().collect();
        next.sort_unstable();
        next.dedup();
        level = next;
    }
    Ok(level)
}

/// All graphs on `n` vertices up to isomorphism, in canonical-code order.
pub fn graphs_up_to_iso(n: usize, exec: Execution) -> Result<Vec<FiniteGraph>> {
    Ok(graph_codes(n, exec)?
        .into_iter()
        .map(|c| SmallGraph::from_code(n, c).to_graph())
        .collect())
}

/// Every labelled graph on `n <= 8` vertices, by edge mask over lexicographic pairs.
pub fn labelled_graphs(n: usize) -> Result<impl Iterator<Item = FiniteGraph>> {
    if n > 8 {
        return Err(Error::size("labelled graph enumeration order", 8, n));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let m = pairs.len();
    Ok((0u64..1 << m).map(move |mask| {
        let mut g = FiniteGraph::new(n);
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.add_edge(u, v);
            }
        }
        g
    }))
}

/// Calls `f` on every `k`-subset of `0..n` as a sorted slice, in lexicographic order.
pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut s: Vec<usize> = (0..k).collect();
    loop {
        f(&s);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if s[i] < n - k + i {
                break;
            }
            if i == 0 {
                return;
            }
        }
        s[i] += 1;
        for j in i + 1..k {
            s[j] = s[j - 1] + 1;
        }
    }
}

/// Calls `f` on every permutation of `items` in lexicographic order of positions.
pub fn for_each_permutation(items: &[usize], mut f: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..items.len()).collect();
    let mut buf = items.to_vec();
    loop {
        for (b, &i) in buf.iter_mut().zip(&idx) {
            *b = items[i];
        }
        f(&buf);
        let Some(i) = (1..idx.len()).rev().find(|&i| idx[i - 1] < idx[i]) else {
            return;
        };
        let j = (i..idx.len()).rev().find(|&j| idx[j] > idx[i - 1]).expect("successor exists");
        idx.swap(i - 1, j);
        idx[i..].reverse();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_up_to_seven() {
        let expected = [1, 1, 2, 4, 11, 34, 156, 1044];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(graph_codes(n, Execution::Sequential).unwrap().len(), e, "n = {n}");
        }
    }

    #[test]
    fn subsets_and_permutations() {
        let mut subs = Vec::new();
        for_each_subset(4, 2, |s| subs.push(s.to_vec()));
        assert_eq!(subs, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        let mut count = 0;
        for_each_subset(5, 0, |_| count += 1);
        assert_eq!(count, 1);
        let mut perms = Vec::new();
        for_each_permutation(&[3, 5, 7], |p| perms.push(p.to_vec()));
        assert_eq!(perms.len(), 6);
        assert_eq!(perms[0], vec![3, 5, 7]);
        assert_eq!(perms[5], vec![7, 5, 3]);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        assert_eq!(
            graph_codes(6, Execution::Sequential).unwrap(),
            graph_codes(6, Execution::Parallel).unwrap()
        );
    }
}
