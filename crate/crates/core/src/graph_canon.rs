//! Fast canonical form for graphs on at most 16 vertices.
//!
//! Same individualisation-refinement scheme as the generic canoniser, but on
//! `u16` adjacency rows with an ordered-partition refinement, and the code is
//! the upper triangle of the relabelled adjacency matrix packed into a `u128`.

use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::perm::{self, Perm};

pub const SMALL_LIMIT: usize = 16;

/// Adjacency rows of a small graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallGraph {
    pub n: usize,
    pub rows: [u16; SMALL_LIMIT],
}

impl SmallGraph {
    pub fn from_graph(g: &FiniteGraph) -> Result<Self> {
        let n = g.order();
        if n > SMALL_LIMIT {
            return Err(Error::size("small graph order", SMALL_LIMIT, n));
        }
        let mut rows = [0u16; SMALL_LIMIT];
        for (v, r) in rows.iter_mut().enumerate().take(n) {
            *r = g.row(v)[0] as u16;
        }
        Ok(SmallGraph { n, rows })
    }

    pub fn to_graph(&self) -> FiniteGraph {
        let mut g = FiniteGraph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.rows[u] >> v & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    /// Upper-triangle code, pair `(0,1)` most significant.
    pub fn code_under(&self, lab: &[usize]) -> u128 {
        let n = self.n;
        let mut inv = [0usize; SMALL_LIMIT];
        for v in 0..n {
            inv[lab[v]] = v;
        }
        let mut code = 0u128;
        for i in 0..n {
            let ri = self.rows[inv[i]];
            for &vj in &inv[i + 1..n] {
                code = code << 1 | (ri >> vj & 1) as u128;
            }
        }
        code
    }

    pub fn from_code(n: usize, code: u128) -> Self {
        let mut rows = [0u16; SMALL_LIMIT];
        let total = n * n.saturating_sub(1) / 2;
        let mut bit = total;
        for i in 0..n {
            for j in i + 1..n {
                bit -= 1;
                if code >> bit & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            }
        }
        SmallGraph { n, rows }
    }
}

/// Equitable refinement of an ordered partition given as cell indices.
fn refine(g: &SmallGraph, cells: &mut [u8]) {
    let n = g.n;
    let mut count = cells[..n].iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    loop {
        if count == n {
            return;
        }
        let mut masks = [0u16; SMALL_LIMIT];
        for v in 0..n {
            masks[cells[v] as usize] |= 1 << v;
        }
        let mut keys = [(0u128, 0usize); SMALL_LIMIT];
        for v in 0..n {
            let mut k = (cells[v] as u128) << 64;
            for (c, m) in masks.iter().enumerate().take(count) {
                k |= ((g.rows[v] & m).count_ones() as u128) << (4 * c);
            }
            keys[v] = (k, v);
        }
        let keys = &mut keys[..n];
        keys.sort_unstable();
        let mut next = 0u8;
        for i in 0..n {
            if i > 0 && keys[i].0 != keys[i - 1].0 {
                next += 1;
            }
            cells[keys[i].1] = next;
        }
        let new_count = next as usize + 1;
        if new_count == count {
            return;
        }
        count = new_count;
    }
}

fn individualise(cells: &[u8], n: usize, v: usize) -> [u8; SMALL_LIMIT] {
    let c = cells[v];
    let mut out = [0u8; SMALL_LIMIT];
    for w in 0..n {
        out[w] = if w == v || cells[w] < c { cells[w] } else { cells[w] + 1 };
    }
    out
}

struct Search<'a> {
    g: &'a SmallGraph,
    first: Option<(u128, Perm)>,
    best: Option<(u128, Perm)>,
    autos: Vec<Perm>,
}

impl Search<'_> {
    fn leaf(&mut self, cells: &[u8]) {
        let n = self.g.n;
        let lab: Perm = cells[..n].iter().map(|&c| c as usize).collect();
        let code = self.g.code_under(&lab);
        match &self.first {
            None => {
                self.first = Some((code, lab.clone()));
                self.best = Some((code, lab));
            }
            Some((fc, fl)) => {
                if *fc == code {
                    let g = perm::compose(fl, &perm::inverse(&lab));
                    self.autos.push(g);
                    return;
                }
                let (bc, bl) = self.best.as_ref().expect("best set with first");
                if code < *bc {
                    self.best = Some((code, lab));
                } else if code == *bc {
                    let g = perm::compose(bl, &perm::inverse(&lab));
                    self.autos.push(g);
                }
            }
        }
    }

    fn node(&mut self, cells: [u8; SMALL_LIMIT], prefix: &mut Vec<usize>) {
        let n = self.g.n;
        let mut sizes = [0usize; SMALL_LIMIT];
        for &c in &cells[..n] {
            sizes[c as usize] += 1;
        }
        let target = (0..n)
            .filter(|&c| sizes[c] > 1)
            .min_by_key(|&c| (sizes[c], c));
        let Some(target) = target else {
            self.leaf(&cells);
            return;
        };
        let mut explored: Vec<usize> = Vec::new();
        for v in 0..n {
            if cells[v] as usize != target {
                continue;
            }
            if !explored.is_empty() && !self.autos.is_empty() {
                let fixing: Vec<Perm> = self
                    .autos
                    .iter()
                    .filter(|g| prefix.iter().all(|&p| g[p] == p))
                    .cloned()
                    .collect();
                let labels = crate::iso::orbit_labels(n, &fixing);
                if explored.iter().any(|&u| labels[u] == labels[v]) {
                    continue;
                }
            }
            explored.push(v);
            let mut c = individualise(&cells, n, v);
            refine(self.g, &mut c);
            prefix.push(v);
            self.node(c, prefix);
            prefix.pop();
        }
    }
}

/// Canonical code and labelling; codes are equal iff the graphs are isomorphic.
pub fn small_canonical_form(g: &SmallGraph) -> (u128, Perm) {
    let mut cells = [0u8; SMALL_LIMIT];
    let n = g.n;
    // Seed with degree classes so the first refinement round does less work.
    let mut degs: Vec<u32> = (0..n).map(|v| g.rows[v].count_ones()).collect();
    let raw = degs.clone();
    degs.sort_unstable();
    degs.dedup();
    for v in 0..n {
        cells[v] = degs.binary_search(&raw[v]).expect("degree present") as u8;
    }
    refine(g, &mut cells);
    let mut search = Search {
        g,
        first: None,
        best: None,
        autos: Vec::new(),
    };
    search.node(cells, &mut Vec::new());
    search.best.unwrap_or((0, Vec::new()))
}

pub fn small_canonical_code(g: &SmallGraph) -> u128 {
    small_canonical_form(g).0
}

/// Canonical code of a graph with at most 16 vertices.
pub fn graph_code(g: &FiniteGraph) -> Result<u128> {
    Ok(small_canonical_code(&SmallGraph::from_graph(g)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn code_round_trip() {
        let g = SmallGraph::from_graph(&named::petersen()).unwrap();
        let (code, lab) = small_canonical_form(&g);
        assert_eq!(g.code_under(&lab), code);
        let h = SmallGraph::from_code(10, code);
        assert_eq!(small_canonical_code(&h), code);
    }

    #[test]
    fn invariant_under_relabelling() {
        let g = named::cube();
        let p = vec![5, 2, 7, 0, 1, 6, 3, 4];
        assert_eq!(graph_code(&g).unwrap(), graph_code(&g.relabel(&p)).unwrap());
        assert_ne!(graph_code(&named::cycle(8)).unwrap(), graph_code(&g).unwrap());
    }
}
