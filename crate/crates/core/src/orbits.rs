//! Orbits of automorphism groups on injective k-tuples.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iso;
use crate::perm::{Perm, UnionFind};
use crate::structure::RelationalStructure;

/// Largest `n^k` index space for tuple orbit tables.
pub const TUPLE_TABLE_LIMIT: usize = 1 << 25;

const NOT_INJECTIVE: u32 = u32::MAX;

/// Orbit partition of the injective `k`-tuples over `0..n`.
///
/// Orbits are numbered in the lexicographic order of their least tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleOrbits {
    pub n: usize,
    pub k: usize,
    orbit: Vec<u32>,
    representatives: Vec<Vec<usize>>,
}

impl TupleOrbits {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }

    /// Least tuple of each orbit.
    pub fn representatives(&self) -> &[Vec<usize>] {
        &self.representatives
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &x| acc * self.n + x)
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut t = vec![0; self.k];
        for slot in t.iter_mut().rev() {
            *slot = idx % self.n;
            idx /= self.n;
        }
        t
    }

    /// Orbit number of an injective tuple.
    pub fn orbit_of(&self, tuple: &[usize]) -> Option<usize> {
        if tuple.len() != self.k || tuple.iter().any(|&x| x >= self.n) {
            return None;
        }
        match self.orbit[self.index(tuple)] {
            NOT_INJECTIVE => None,
            o => Some(o as usize),
        }
    }

    /// Orbit number by table index (`None` for non-injective tuples).
    pub fn orbit_at(&self, idx: usize) -> Option<usize> {
        match self.orbit[idx] {
            NOT_INJECTIVE => None,
            o => Some(o as usize),
        }
    }

    pub fn table_len(&self) -> usize {
        self.orbit.len()
    }

    /// Orbit sizes in orbit order.
    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.count()];
        for &o in &self.orbit {
            if o != NOT_INJECTIVE {
                sizes[o as usize] += 1;
            }
        }
        sizes
    }
}

fn is_injective(t: &[usize]) -> bool {
    t.iter().enumerate().all(|(i, x)| !t[..i].contains(x))
}

/// Orbits of the group generated by `gens` on injective `k`-tuples of `0..n`.
pub fn group_tuple_orbits(n: usize, gens: &[Perm], k: usize) -> Result<TupleOrbits> {
    let size = (n as u128).pow(k as u32);
    if size > TUPLE_TABLE_LIMIT as u128 {
        return Err(Error::size("tuple orbit table (n^k)", TUPLE_TABLE_LIMIT, size.min(usize::MAX as u128) as usize));
    }
    let size = size as usize;
    let mut uf = UnionFind::new(size);
    let mut injective = vec![false; size];
    let mut t = vec![0usize; k];
    for (idx, inj) in injective.iter_mut().enumerate() {
        let mut r = idx;
        for slot in t.iter_mut().rev() {
            *slot = r % n.max(1);
            r /= n.max(1);
        }
        *inj = is_injective(&t);
    }
    for g in gens {
        for idx in 0..size {
            if !injective[idx] {
                continue;
            }
            let mut r = idx;
            let mut img = 0;
            let mut place = 1;
            for _ in 0..k {
                img += g[r % n] * place;
                place *= n;
                r /= n;
            }
            uf.union(idx, img);
        }
    }
    let mut orbit = vec![NOT_INJECTIVE; size];
    let mut representatives = Vec::new();
    for idx in 0..size {
        if !injective[idx] {
            continue;
        }
        let root = uf.find(idx);
        if root == idx {
            orbit[idx] = representatives.len() as u32;
            let mut r = idx;
            let mut tuple = vec![0; k];
            for slot in tuple.iter_mut().rev() {
                *slot = r % n;
                r /= n;
            }
            representatives.push(tuple);
        } else {
            orbit[idx] = orbit[root];
        }
    }
    Ok(TupleOrbits {
        n,
        k,
        orbit,
        representatives,
    })
}

/// Orbits of `Aut(s)` on injective `k`-tuples (`n <= 30`, `1 <= k <= 4`).
pub fn orbits_on_ktuples(s: &RelationalStructure, k: usize) -> Result<TupleOrbits> {
    if !(1..=4).contains(&k) {
        return Err(Error::size("tuple length", 4, k));
    }
    let group = iso::automorphisms(s)?;
    group_tuple_orbits(s.domain_size(), &group.generators, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn cycle_and_path_vertex_orbits() {
        assert_eq!(orbits_on_ktuples(&named::cycle(5).to_structure(), 1).unwrap().count(), 1);
        let p3 = orbits_on_ktuples(&named::path(3).to_structure(), 1).unwrap();
        assert_eq!(p3.count(), 2);
        assert_eq!(p3.representatives(), &[vec![0], vec![1]]);
    }

    #[test]
    fn c5_pairs() {
        // Ordered adjacent pairs and ordered non-adjacent pairs.
        let o = orbits_on_ktuples(&named::cycle(5).to_structure(), 2).unwrap();
        assert_eq!(o.count(), 2);
        assert_eq!(o.sizes(), vec![10, 10]);
        assert_eq!(o.orbit_of(&[0, 0]), None);
    }
}
