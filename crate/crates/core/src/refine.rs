//! Isomorphism-invariant vertex colouring by iterated refinement.
//!
//! Colours are 64-bit values computed by a fixed mixing function from
//! isomorphism-invariant data only, so corresponding vertices of isomorphic
//! structures receive identical colours. Hash collisions can only make the
//! partition coarser, never break invariance.

use crate::structure::RelationalStructure;

#[inline]
pub(crate) fn mix(a: u64, b: u64) -> u64 {
    let mut z = a ^ b.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(a << 6).wrapping_add(a >> 2);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub(crate) fn mix_all(seed: u64, values: impl IntoIterator<Item = u64>) -> u64 {
    values.into_iter().fold(seed, mix)
}

/// Colours from diagonal membership only: `(v, v, ..., v)` in each relation.
///
/// These are preserved by embeddings as well as isomorphisms.
pub(crate) fn local_colours(s: &RelationalStructure) -> Vec<u64> {
    let n = s.domain_size();
    (0..n)
        .map(|v| {
            let mut h = 0x51_7cc1_b727_220a;
            for (r, t) in s.tables().iter().enumerate() {
                let diag = vec![v; t.arity()];
                h = mix(h, (r as u64) << 1 | t.contains(&diag) as u64);
            }
            h
        })
        .collect()
}

pub(crate) fn distinct_count(colours: &[u64]) -> usize {
    let mut c = colours.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Refines `colours` until the number of colour classes stops growing.
pub(crate) fn refine(s: &RelationalStructure, mut colours: Vec<u64>) -> Vec<u64> {
    let n = s.domain_size();
    let mut classes = distinct_count(&colours);
    let mut sigs: Vec<Vec<u64>> = vec![Vec::new(); n];
    let mut tuple = Vec::new();
    while classes < n {
        for sig in sigs.iter_mut() {
            sig.clear();
        }
        for (r, table) in s.tables().iter().enumerate() {
            let k = table.arity();
            if k < 2 {
                continue;
            }
            for t in table.tuples() {
                tuple.clear();
                tuple.extend(t.iter().map(|&x| colours[x]));
                let body = mix_all(r as u64, tuple.iter().copied());
                for (p, &v) in t.iter().enumerate() {
                    sigs[v].push(mix(body, p as u64));
                }
            }
        }
        let next: Vec<u64> = (0..n)
            .map(|v| {
                sigs[v].sort_unstable();
                mix_all(colours[v], sigs[v].iter().copied())
            })
            .collect();
        let c = distinct_count(&next);
        colours = next;
        if c <= classes {
            break;
        }
        classes = c;
    }
    colours
}

pub(crate) fn refined_colours(s: &RelationalStructure) -> Vec<u64> {
    refine(s, local_colours(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn path_ends_share_a_colour() {
        let c = refined_colours(&named::path(5).to_structure());
        assert_eq!(c[0], c[4]);
        assert_eq!(c[1], c[3]);
        assert_ne!(c[0], c[1]);
        assert_ne!(c[1], c[2]);
    }

    #[test]
    fn relabelling_permutes_colours() {
        let g = named::path(6);
        let perm = vec![3, 5, 0, 1, 4, 2];
        let c = refined_colours(&g.to_structure());
        let d = refined_colours(&g.relabel(&perm).to_structure());
        for v in 0..6 {
            assert_eq!(c[v], d[perm[v]]);
        }
    }
}
