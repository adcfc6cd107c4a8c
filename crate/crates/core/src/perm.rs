//! Permutations of `0..n` and an independent group-order routine.
//!
//! A permutation is stored as its image vector: `p[x]` is the image of `x`.
//! Products read left to right, so `compose(a, b)` applies `a` first.

use serde::{Deserialize, Serialize};

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

pub fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x)
}

/// `a` followed by `b`.
pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    a.iter().map(|&x| b[x]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

/// Generators and exact order of a permutation group on `0..degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermGroupDescription {
    pub degree: usize,
    pub generators: Vec<Perm>,
    pub order: u128,
}

impl PermGroupDescription {
    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Recomputes the order from the generators alone and compares.
    pub fn verify_order(&self) -> bool {
        group_order(self.degree, &self.generators) == self.order
    }

    /// Orbits on points as sorted lists, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        point_orbits(self.degree, &self.generators)
    }
}

pub fn point_orbits(n: usize, gens: &[Perm]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(n);
    for g in gens {
        for (x, &y) in g.iter().enumerate() {
            uf.union(x, y);
        }
    }
    uf.classes()
}

/// Disjoint-set forest with path halving; class ids are least members.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    #[inline]
    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    /// Links the larger root under the smaller so roots are class minima.
    #[inline]
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo as u32;
        true
    }

    pub fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

struct Level {
    base: usize,
    gens: Vec<Perm>,
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

/// Schreier–Sims stabiliser chain used to recompute group orders.
struct StabChain {
    n: usize,
    levels: Vec<Level>,
}

impl StabChain {
    fn new(n: usize) -> Self {
        StabChain { n, levels: Vec::new() }
    }

    fn sift(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for l in from..self.levels.len() {
            let level = &self.levels[l];
            let img = g[level.base];
            match &level.transversal[img] {
                Some(u) => g = compose(&g, &inverse(u)),
                None => return (g, l),
            }
        }
        (g, self.levels.len())
    }

    fn add_strong(&mut self, g: Perm, from: usize, to: usize) {
        if to == self.levels.len() {
            let base = g
                .iter()
                .enumerate()
                .find(|&(i, &x)| i != x)
                .map(|(i, _)| i)
                .expect("non-identity generator");
            self.levels.push(Level {
                base,
                gens: Vec::new(),
                transversal: vec![None; self.n],
                orbit: Vec::new(),
            });
        }
        for l in from..=to {
            self.levels[l].gens.push(g.clone());
        }
        for l in (from..=to).rev() {
            self.close(l);
        }
    }

    fn rebuild_orbit(&mut self, l: usize) {
        let n = self.n;
        let level = &mut self.levels[l];
        level.transversal = vec![None; n];
        level.transversal[level.base] = Some(identity(n));
        level.orbit = vec![level.base];
        let mut i = 0;
        while i < level.orbit.len() {
            let b = level.orbit[i];
            for s in &level.gens {
                let c = s[b];
                if level.transversal[c].is_none() {
                    let u = compose(level.transversal[b].as_ref().expect("orbit point"), s);
                    level.transversal[c] = Some(u);
                    level.orbit.push(c);
                }
            }
            i += 1;
        }
    }

    fn close(&mut self, l: usize) {
        self.rebuild_orbit(l);
        let orbit = self.levels[l].orbit.clone();
        let gens = self.levels[l].gens.clone();
        for &b in &orbit {
            for s in &gens {
                let ub = self.levels[l].transversal[b].clone().expect("orbit point");
                let c = s[b];
                let uc = self.levels[l].transversal[c].clone().expect("orbit closed");
                let schreier = compose(&compose(&ub, s), &inverse(&uc));
                let (h, j) = self.sift(schreier, l + 1);
                if !is_identity(&h) {
                    self.add_strong(h, l + 1, j);
                }
            }
        }
    }

    fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }
}

/// Generators of the pointwise stabiliser of `points` in the group generated by `gens`.
pub fn pointwise_stabiliser(n: usize, gens: &[Perm], points: &[usize]) -> Vec<Perm> {
    let mut chain = StabChain::new(n);
    for &p in points {
        let mut transversal = vec![None; n];
        transversal[p] = Some(identity(n));
        chain.levels.push(Level {
            base: p,
            gens: Vec::new(),
            transversal,
            orbit: vec![p],
        });
    }
    for g in gens {
        let (h, j) = chain.sift(g.clone(), 0);
        if !is_identity(&h) {
            chain.add_strong(h, 0, j);
        }
    }
    chain
        .levels
        .get(points.len())
        .map(|l| l.gens.clone())
        .unwrap_or_default()
}

/// Exact order of the group generated by `gens` on `0..n`.
pub fn group_order(n: usize, gens: &[Perm]) -> u128 {
    let mut chain = StabChain::new(n);
    for g in gens {
        let (h, j) = chain.sift(g.clone(), 0);
        if !is_identity(&h) {
            chain.add_strong(h, 0, j);
        }
    }
    chain.order()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_orders() {
        for n in 2..=8usize {
            let mut cycle: Perm = (1..n).collect();
            cycle.push(0);
            let mut swap = identity(n);
            swap.swap(0, 1);
            let expected: u128 = (1..=n as u128).product();
            assert_eq!(group_order(n, &[cycle, swap]), expected);
        }
    }

    #[test]
    fn dihedral_order() {
        let n = 7;
        let rot: Perm = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Perm = (0..n).map(|i| (n - i) % n).collect();
        assert_eq!(group_order(n, &[rot, refl]), 14);
    }

    #[test]
    fn stabiliser_of_points_in_symmetric_group() {
        let n = 6;
        let mut cycle: Perm = (1..n).collect();
        cycle.push(0);
        let mut swap = identity(n);
        swap.swap(0, 1);
        let stab = pointwise_stabiliser(n, &[cycle, swap], &[2, 4]);
        assert!(stab.iter().all(|g| g[2] == 2 && g[4] == 4));
        assert_eq!(group_order(n, &stab), 24);
    }

    #[test]
    fn trivial_group() {
        assert_eq!(group_order(5, &[]), 1);
        assert_eq!(group_order(5, &[identity(5)]), 1);
    }

    #[test]
    fn compose_applies_left_first() {
        let a = vec![1, 2, 0];
        let b = vec![0, 2, 1];
        // 0 -a-> 1 -b-> 2
        assert_eq!(compose(&a, &b)[0], 2);
        assert!(is_identity(&compose(&a, &inverse(&a))));
    }
}
