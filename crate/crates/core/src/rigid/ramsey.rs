//! Superposition of a tournament with a C-relation, and the colouring that
//! defeats the Ramsey property for the resulting class.

use serde::{Deserialize, Serialize};

use super::ctree::CRelation;
use super::tournament::Tournament;
use crate::error::{Error, Result};
use crate::iso::automorphisms;
use crate::perm::is_permutation;
use crate::structure::RelationalStructure;

pub const SUPERPOSITION_AUT_LIMIT: usize = 12;

/// One structure over `{T/2, C/3}` carrying both relations.
pub fn superpose(t: &Tournament, gamma: &CRelation) -> Result<RelationalStructure> {
    if t.order() != gamma.leaves {
        return Err(Error::DomainMismatch {
            left: t.order(),
            right: gamma.leaves,
        });
    }
    t.to_structure()?.overlay(&gamma.to_structure()?)
}

/// Automorphism-group order of a superposition (or any structure) on at most 12 points.
pub fn superposition_aut_order(s: &RelationalStructure) -> Result<u128> {
    if s.domain_size() > SUPERPOSITION_AUT_LIMIT {
        return Err(Error::size("superposition order", SUPERPOSITION_AUT_LIMIT, s.domain_size()));
    }
    Ok(automorphisms(s)?.order)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicTripleColours {
    pub triple: [usize; 3],
    pub red: usize,
    pub blue: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyColouring {
    /// Arcs `(u, v)` with `u` before `v` in the order.
    pub red: Vec<(usize, usize)>,
    /// Arcs `(u, v)` with `v` before `u` in the order.
    pub blue: Vec<(usize, usize)>,
    pub cyclic_triples: Vec<CyclicTripleColours>,
    /// True iff every cyclic triple carries both colours.
    pub no_monochromatic_cyclic_triple: bool,
}

/// Colours each arc red when `order` (least element first) agrees with it, blue otherwise.
pub fn ramsey_failure_colouring(c: &RelationalStructure, order: &[usize]) -> Result<RamseyColouring> {
    let t = Tournament::from_structure(c)?;
    let n = t.order();
    if order.len() != n || !is_permutation(order) {
        return Err(Error::InvalidInput(format!(
            "order must list each of the {n} domain elements once"
        )));
    }
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let (mut red, mut blue) = (Vec::new(), Vec::new());
    for (u, v) in t.arcs() {
        if rank[u] < rank[v] {
            red.push((u, v));
        } else {
            blue.push((u, v));
        }
    }
    let mut cyclic = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for d in b + 1..n {
                if !t.is_cyclic_triple(a, b, d) {
                    continue;
                }
                let pairs = [(a, b), (a, d), (b, d)];
                let reds = pairs
                    .iter()
                    .filter(|&&(x, y)| {
                        let (u, v) = if t.beats(x, y) { (x, y) } else { (y, x) };
                        rank[u] < rank[v]
                    })
                    .count();
                cyclic.push(CyclicTripleColours {
                    triple: [a, b, d],
                    red: reds,
                    blue: 3 - reds,
                });
            }
        }
    }
    let ok = cyclic.iter().all(|c| c.red > 0 && c.blue > 0);
    Ok(RamseyColouring {
        red,
        blue,
        cyclic_triples: cyclic,
        no_monochromatic_cyclic_triple: ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rigid::ctree::{c_relation_of_tree, RootedBinaryTree};

    #[test]
    fn three_cycle_superposition_is_rigid() {
        let t = Tournament::cyclic(3).unwrap();
        for tree in RootedBinaryTree::all(3).unwrap() {
            let s = superpose(&t, &c_relation_of_tree(&tree)).unwrap();
            assert_eq!(superposition_aut_order(&s).unwrap(), 1);
        }
        let g = c_relation_of_tree(&RootedBinaryTree::caterpillar(4).unwrap());
        assert!(matches!(superpose(&t, &g), Err(Error::DomainMismatch { left: 3, right: 4 })));
    }

    #[test]
    fn colouring_examples() {
        let g3 = c_relation_of_tree(&RootedBinaryTree::caterpillar(3).unwrap());
        let s = superpose(&Tournament::cyclic(3).unwrap(), &g3).unwrap();
        for order in [[0, 1, 2], [2, 1, 0], [1, 0, 2]] {
            let c = ramsey_failure_colouring(&s, &order).unwrap();
            assert!(!c.red.is_empty() && !c.blue.is_empty());
            assert!(c.no_monochromatic_cyclic_triple);
            assert_eq!(c.cyclic_triples.len(), 1);
        }
        let g5 = c_relation_of_tree(&RootedBinaryTree::balanced(5).unwrap());
        let s = superpose(&Tournament::transitive(5).unwrap(), &g5).unwrap();
        let agree = ramsey_failure_colouring(&s, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!((agree.red.len(), agree.blue.len()), (10, 0));
        let reverse = ramsey_failure_colouring(&s, &[4, 3, 2, 1, 0]).unwrap();
        assert_eq!((reverse.red.len(), reverse.blue.len()), (0, 10));
        assert!(ramsey_failure_colouring(&s, &[0, 1, 2]).is_err());
    }
}
