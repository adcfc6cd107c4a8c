//! Canonical codes for small relational structures.
//!
//! Individualisation-refinement: refine an invariant colouring, split the
//! first smallest non-singleton class by individualising each of its points
//! in turn, and take the lexicographically least leaf code. Automorphisms
//! discovered as equal leaves prune sibling branches in the same orbit.

use crate::error::{Error, Result};
use crate::perm::{self, Perm};
use crate::refine::{self, mix};
use crate::structure::RelationalStructure;

/// Largest domain accepted by [`canonical_code`].
pub const CANON_LIMIT: usize = 12;

const INDIVIDUAL: u64 = 0x1d1d_1d1d_1d1d_1d1d;

/// Code bytes: domain size, then for each relation the membership bits of all
/// tuples of the relabelled structure in lexicographic order.
fn leaf_code(s: &RelationalStructure, lab: &[usize]) -> Vec<u8> {
    let n = s.domain_size();
    let mut code = vec![n as u8];
    for t in s.tables() {
        let k = t.arity();
        let size = n.pow(k as u32);
        let mut bits = vec![0u8; size.div_ceil(8)];
        for tuple in t.tuples() {
            let idx = tuple.iter().fold(0, |acc, &x| acc * n + lab[x]);
            bits[idx >> 3] |= 0x80 >> (idx & 7);
        }
        code.extend(bits);
    }
    code
}

struct Search<'a> {
    s: &'a RelationalStructure,
    n: usize,
    first: Option<(Vec<u8>, Perm)>,
    best: Option<(Vec<u8>, Perm)>,
    first_path: Vec<usize>,
    best_path: Vec<usize>,
    autos: Vec<Perm>,
    /// Depth to return to after an automorphism maps the current branch onto an explored one.
    jump: Option<usize>,
}

impl Search<'_> {
    fn labelling(colours: &[u64]) -> Perm {
        let mut idx: Vec<usize> = (0..colours.len()).collect();
        idx.sort_by_key(|&v| colours[v]);
        let mut lab = vec![0; colours.len()];
        for (rank, v) in idx.into_iter().enumerate() {
            lab[v] = rank;
        }
        lab
    }

    /// Automorphism `v -> lab^{-1}(other(v))` from two labellings with equal codes.
    fn record(&mut self, other: &Perm, lab: &Perm) {
        let g = perm::compose(other, &perm::inverse(lab));
        if !perm::is_identity(&g) {
            self.autos.push(g);
        }
    }

    fn common_depth(a: &[usize], b: &[usize]) -> usize {
        a.iter().zip(b).take_while(|(x, y)| x == y).count()
    }

    fn leaf(&mut self, colours: &[u64], path: &[usize]) {
        let lab = Self::labelling(colours);
        let code = leaf_code(self.s, &lab);
        match &self.first {
            None => {
                self.first = Some((code.clone(), lab.clone()));
                self.best = Some((code, lab));
                self.first_path = path.to_vec();
                self.best_path = path.to_vec();
            }
            Some((fc, fl)) => {
                if *fc == code {
                    let fl = fl.clone();
                    self.record(&fl, &lab);
                    self.jump = Some(Self::common_depth(path, &self.first_path));
                    return;
                }
                let (bc, bl) = self.best.as_ref().expect("best set with first");
                match code.cmp(bc) {
                    std::cmp::Ordering::Less => {
                        self.best = Some((code, lab));
                        self.best_path = path.to_vec();
                    }
                    std::cmp::Ordering::Equal => {
                        let bl = bl.clone();
                        self.record(&bl, &lab);
                        self.jump = Some(Self::common_depth(path, &self.best_path));
                    }
                    std::cmp::Ordering::Greater => {}
                }
            }
        }
    }

    fn target_cell(colours: &[u64]) -> Option<Vec<usize>> {
        let mut sorted: Vec<(u64, usize)> = colours.iter().enumerate().map(|(v, &c)| (c, v)).collect();
        sorted.sort_unstable();
        let mut best: Option<(usize, u64)> = None;
        let mut i = 0;
        while i < sorted.len() {
            let mut j = i;
            while j < sorted.len() && sorted[j].0 == sorted[i].0 {
                j += 1;
            }
            let size = j - i;
            if size > 1 && best.is_none_or(|(bs, _)| size < bs) {
                best = Some((size, sorted[i].0));
            }
            i = j;
        }
        best.map(|(_, c)| (0..colours.len()).filter(|&v| colours[v] == c).collect())
    }

    fn node(&mut self, colours: Vec<u64>, prefix: &mut Vec<usize>) {
        let Some(cell) = Self::target_cell(&colours) else {
            self.leaf(&colours, prefix);
            return;
        };
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() {
                let fixing: Vec<Perm> = self
                    .autos
                    .iter()
                    .filter(|g| prefix.iter().all(|&p| g[p] == p))
                    .cloned()
                    .collect();
                let labels = crate::iso::orbit_labels(self.n, &fixing);
                if explored.iter().any(|&u| labels[u] == labels[v]) {
                    continue;
                }
            }
            explored.push(v);
            let mut c = colours.clone();
            c[v] = mix(c[v], INDIVIDUAL);
            let c = refine::refine(self.s, c);
            prefix.push(v);
            self.node(c, prefix);
            prefix.pop();
            match self.jump {
                Some(d) if d < prefix.len() => return,
                Some(_) => self.jump = None,
                None => {}
            }
        }
    }
}

/// A byte string equal for two structures over the same signature iff they are isomorphic.
pub fn canonical_code(s: &RelationalStructure) -> Result<Vec<u8>> {
    Ok(canonical_form(s)?.0)
}

/// Canonical code together with a canonical labelling (`lab[v]` is the new label of `v`).
pub fn canonical_form(s: &RelationalStructure) -> Result<(Vec<u8>, Perm)> {
    let n = s.domain_size();
    if n > CANON_LIMIT {
        return Err(Error::size("canonical code domain", CANON_LIMIT, n));
    }
    let mut search = Search {
        s,
        n,
        first: None,
        best: None,
        first_path: Vec::new(),
        best_path: Vec::new(),
        autos: Vec::new(),
        jump: None,
    };
    let colours = refine::refined_colours(s);
    search.node(colours, &mut Vec::new());
    Ok(search.best.expect("search reaches a leaf"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named, FiniteGraph};

    #[test]
    fn four_vertex_graphs_have_eleven_codes() {
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
        let mut codes = std::collections::BTreeSet::new();
        for mask in 0u32..64 {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = FiniteGraph::from_edges(4, &edges).unwrap();
            codes.insert(canonical_code(&g.to_structure()).unwrap());
        }
        assert_eq!(codes.len(), 11);
    }

    #[test]
    fn code_is_relabelling_invariant() {
        let g = named::petersen().to_structure();
        let c = canonical_code(&g).unwrap();
        let p = vec![3, 7, 1, 0, 9, 2, 8, 4, 6, 5];
        assert_eq!(canonical_code(&g.relabel(&p)).unwrap(), c);
        assert_ne!(
            canonical_code(&named::path(3).to_structure()).unwrap(),
            canonical_code(&named::complete(3).to_structure()).unwrap()
        );
    }

    #[test]
    fn labelling_realises_the_code() {
        let g = named::path(5).to_structure();
        let (code, lab) = canonical_form(&g).unwrap();
        assert_eq!(leaf_code(&g, &lab), code);
    }

    #[test]
    fn empty_graph_on_twelve() {
        let g = named::empty(12).to_structure();
        assert!(canonical_code(&g).is_ok());
        assert!(canonical_code(&named::empty(13).to_structure()).is_err());
    }
}
