//! Undirected loopless graphs with bit-packed adjacency rows.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::structure::{RelationalStructure, Signature};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl FiniteGraph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        FiniteGraph {
            n,
            words,
            rows: vec![0; words * n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = FiniteGraph::new(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + (v >> 6)] >> (v & 63) & 1 == 1
    }

    fn set(&mut self, u: usize, v: usize, on: bool) {
        let (w, b) = (u * self.words + (v >> 6), v & 63);
        if on {
            self.rows[w] |= 1 << b;
        } else {
            self.rows[w] &= !(1 << b);
        }
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::InvalidVertex {
                    vertex: x,
                    domain: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::InvalidInput(format!("loop at vertex {u}")));
        }
        self.add_edge(u, v);
        Ok(())
    }

    /// Adds `{u, v}`. Panics on loops or out-of-range vertices.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n, "bad edge {u}-{v}");
        self.set(u, v, true);
        self.set(v, u, true);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.set(u, v, false);
        self.set(v, u, false);
    }

    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        let on = !self.has_edge(u, v);
        self.set(u, v, on);
        self.set(v, u, on);
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbours(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn complement(&self) -> Self {
        let mut g = FiniteGraph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Induced subgraph on `verts`, re-indexed in the given order.
    pub fn induced(&self, verts: &[usize]) -> Result<Self> {
        if let Some(&v) = verts.iter().find(|&&v| v >= self.n) {
            return Err(Error::InvalidVertex {
                vertex: v,
                domain: self.n,
            });
        }
        let mut g = FiniteGraph::new(verts.len());
        for (i, &a) in verts.iter().enumerate() {
            for (j, &b) in verts.iter().enumerate().skip(i + 1) {
                if a == b {
                    return Err(Error::InvalidInput(format!("vertex {a} repeated in subset")));
                }
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut g = FiniteGraph::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    pub fn disjoint_union(&self, other: &FiniteGraph) -> Self {
        let mut g = FiniteGraph::new(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n);
        }
        g
    }

    /// Number of common neighbours of the given vertices (all vertices when empty).
    pub fn common_neighbour_count(&self, verts: &[usize]) -> usize {
        let mut acc = vec![!0u64; self.words];
        if let Some(last) = acc.last_mut() {
            let rem = self.n % 64;
            if rem != 0 {
                *last = (1u64 << rem) - 1;
            }
            if self.n == 0 {
                *last = 0;
            }
        }
        for &v in verts {
            for (a, r) in acc.iter_mut().zip(self.row(v)) {
                *a &= r;
            }
        }
        acc.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_regular(&self) -> bool {
        let d = self.degrees();
        d.windows(2).all(|w| w[0] == w[1])
    }

    pub fn to_structure(&self) -> RelationalStructure {
        let mut s = RelationalStructure::new(Arc::new(Signature::graph()), self.n)
            .expect("graph tables fit");
        for (u, v) in self.edges() {
            s.add(0, &[u, v]).expect("in range");
            s.add(0, &[v, u]).expect("in range");
        }
        s
    }

    /// Reads a single symmetric irreflexive binary relation as a graph.
    pub fn from_structure(s: &RelationalStructure) -> Result<Self> {
        let sig = s.signature();
        if sig.len() != 1 || sig.relations()[0].arity != 2 {
            return Err(Error::SignatureMismatch(format!(
                "expected one binary relation, got {sig}"
            )));
        }
        let t = s.table(0);
        let mut g = FiniteGraph::new(s.domain_size());
        for tuple in t.tuples() {
            let (u, v) = (tuple[0], tuple[1]);
            if u == v {
                return Err(Error::InvalidInput(format!("loop at vertex {u}")));
            }
            if !t.contains(&[v, u]) {
                return Err(Error::InvalidInput(format!("relation not symmetric at ({u}, {v})")));
            }
            g.set(u, v, true);
        }
        Ok(g)
    }
}

impl fmt::Debug for FiniteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGraph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

/// Named families used throughout the experiments.
pub mod named {
    use super::FiniteGraph;

    pub fn empty(n: usize) -> FiniteGraph {
        FiniteGraph::new(n)
    }

    pub fn complete(n: usize) -> FiniteGraph {
        FiniteGraph::new(n).complement()
    }

    pub fn path(n: usize) -> FiniteGraph {
        let mut g = FiniteGraph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> FiniteGraph {
        let mut g = path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    /// `m` disjoint copies of `K_k`.
    pub fn cliques(m: usize, k: usize) -> FiniteGraph {
        let mut g = FiniteGraph::new(m * k);
        for c in 0..m {
            for i in 0..k {
                for j in i + 1..k {
                    g.add_edge(c * k + i, c * k + j);
                }
            }
        }
        g
    }

    pub fn complete_multipartite(parts: &[usize]) -> FiniteGraph {
        let n = parts.iter().sum();
        let mut part_of = Vec::with_capacity(n);
        for (p, &size) in parts.iter().enumerate() {
            part_of.extend(std::iter::repeat_n(p, size));
        }
        let mut g = FiniteGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if part_of[u] != part_of[v] {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> FiniteGraph {
        complete_multipartite(&[a, b])
    }

    /// Vertices are the edges of `g` in lexicographic order; adjacent when they share an end.
    pub fn line_graph(g: &FiniteGraph) -> FiniteGraph {
        let edges: Vec<_> = g.edges().collect();
        let mut l = FiniteGraph::new(edges.len());
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let (a, b) = edges[i];
                let (c, d) = edges[j];
                if a == c || a == d || b == c || b == d {
                    l.add_edge(i, j);
                }
            }
        }
        l
    }

    pub fn petersen() -> FiniteGraph {
        let mut g = FiniteGraph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    /// The 3-cube `Q3`.
    pub fn cube() -> FiniteGraph {
        let mut g = FiniteGraph::new(8);
        for u in 0..8usize {
            for b in 0..3 {
                let v = u ^ (1 << b);
                if u < v {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn line_graph_of_k33_is_four_regular_on_nine() {
        let l = line_graph(&complete_bipartite(3, 3));
        assert_eq!(l.order(), 9);
        assert!(l.degrees().iter().all(|&d| d == 4));
    }

    #[test]
    fn complement_is_involution() {
        let g = petersen();
        assert_eq!(g.complement().complement(), g);
        assert_eq!(g.complement().edge_count(), 45 - 15);
    }

    #[test]
    fn common_neighbours() {
        let c5 = cycle(5);
        assert_eq!(c5.common_neighbour_count(&[0, 2]), 1);
        assert_eq!(c5.common_neighbour_count(&[0, 1]), 0);
        assert_eq!(c5.common_neighbour_count(&[]), 5);
    }

    #[test]
    fn structure_round_trip() {
        let g = petersen();
        assert_eq!(FiniteGraph::from_structure(&g.to_structure()).unwrap(), g);
    }

    #[test]
    fn wide_graphs_use_multiple_words() {
        let g = cycle(130);
        assert!(g.has_edge(129, 0));
        assert_eq!(g.neighbours(64).collect::<Vec<_>>(), vec![63, 65]);
        assert_eq!(g.common_neighbour_count(&[]), 130);
    }
}
