//! t-tuple regularity: isomorphic induced t-tuples have equal common-neighbour counts.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::enumerate::{for_each_permutation, for_each_subset};
use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::graph_canon::{small_canonical_code, SmallGraph};

pub const REGULARITY_ORDER_LIMIT: usize = 30;
pub const REGULARITY_T_LIMIT: usize = 5;

/// Two tuples inducing the same labelled subgraph but with different common-neighbour counts.
///
/// Entries may repeat; `x_i = x_j` exactly when `y_i = y_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityWitness {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub count_x: usize,
    pub count_y: usize,
}

impl RegularityWitness {
    /// Re-checks the witness against `g`.
    pub fn verify(&self, g: &FiniteGraph) -> bool {
        self.x.len() == self.y.len()
            && labelled_type(g, &self.x) == labelled_type(g, &self.y)
            && same_pattern(&self.x, &self.y)
            && g.common_neighbour_count(&self.x) == self.count_x
            && g.common_neighbour_count(&self.y) == self.count_y
            && self.count_x != self.count_y
    }
}

fn same_pattern(x: &[usize], y: &[usize]) -> bool {
    (0..x.len()).all(|i| (0..x.len()).all(|j| (x[i] == x[j]) == (y[i] == y[j])))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub t: usize,
    pub holds: bool,
    pub witness: Option<RegularityWitness>,
}

/// Adjacency bits of the pairs `(i, j)`, `i < j`, of a tuple; pair `(0,1)` most significant.
pub fn labelled_type(g: &FiniteGraph, tuple: &[usize]) -> u128 {
    let mut code = 0u128;
    for i in 0..tuple.len() {
        for j in i + 1..tuple.len() {
            code = code << 1 | g.has_edge(tuple[i], tuple[j]) as u128;
        }
    }
    code
}

/// Isomorphism class id of every labelled graph on `t <= 5` vertices, by type mask.
fn class_table(t: usize) -> &'static [u32] {
    static TABLES: OnceLock<Vec<Vec<u32>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| {
        (0..=REGULARITY_T_LIMIT)
            .map(|t| {
                let bits = t * t.saturating_sub(1) / 2;
                let codes: Vec<u128> = (0..1u128 << bits)
                    .map(|m| small_canonical_code(&SmallGraph::from_code(t, m)))
                    .collect();
                let mut distinct = codes.clone();
                distinct.sort_unstable();
                distinct.dedup();
                codes
                    .iter()
                    .map(|c| distinct.binary_search(c).expect("present") as u32)
                    .collect()
            })
            .collect()
    });
    &tables[t]
}

/// Tests t-tuple regularity (`1 <= t <= 5`, `n <= 30`).
///
/// Tuples may repeat vertices, so a t-tuple regular graph is s-tuple regular
/// for every `s <= t`; a tuple with `s` distinct entries behaves like an
/// injective s-tuple. Levels are therefore checked on injective tuples for
/// `s = 1..=t`, and a witness from the least failing level `s` is padded to
/// length `t` by repeating its last entry.
pub fn is_t_tuple_regular(g: &FiniteGraph, t: usize) -> Result<RegularityReport> {
    let n = g.order();
    if n > REGULARITY_ORDER_LIMIT {
        return Err(Error::size("t-tuple regularity graph order", REGULARITY_ORDER_LIMIT, n));
    }
    if !(1..=REGULARITY_T_LIMIT).contains(&t) {
        return Err(Error::size("t-tuple regularity level", REGULARITY_T_LIMIT, t));
    }
    for s in 1..=t.min(n) {
        if let Some(mut w) = injective_witness(g, s) {
            let (lx, ly) = (w.x[s - 1], w.y[s - 1]);
            w.x.resize(t, lx);
            w.y.resize(t, ly);
            return Ok(RegularityReport {
                t,
                holds: false,
                witness: Some(w),
            });
        }
    }
    Ok(RegularityReport {
        t,
        holds: true,
        witness: None,
    })
}

/// Compares injective t-tuples only. Common-neighbour counts depend only on
/// the underlying set, so t-subsets with isomorphic induced subgraphs are
/// compared. `x` is the least subset (in sorted form) lying in a class with
/// two counts, and `y` the least ordering of a subset with a different count
/// that induces the same labelled graph as `x`.
fn injective_witness(g: &FiniteGraph, t: usize) -> Option<RegularityWitness> {
    let n = g.order();
    let table = class_table(t);
    // class -> (first subset, its count, violated)
    let mut classes: HashMap<u32, (Vec<usize>, usize, bool)> = HashMap::new();
    for_each_subset(n, t, |s| {
        let class = table[labelled_type(g, s) as usize];
        let count = g.common_neighbour_count(s);
        classes
            .entry(class)
            .and_modify(|e| e.2 |= e.1 != count)
            .or_insert_with(|| (s.to_vec(), count, false));
    });
    let worst = classes
        .iter()
        .filter(|(_, e)| e.2)
        .map(|(&c, e)| (e.0.clone(), e.1, c))
        .min();
    let (x, count_x, class) = worst?;
    let target = labelled_type(g, &x);
    let mut best: Option<(Vec<usize>, usize)> = None;
    for_each_subset(n, t, |s| {
        if table[labelled_type(g, s) as usize] != class {
            return;
        }
        let count = g.common_neighbour_count(s);
        if count == count_x {
            return;
        }
        for_each_permutation(s, |p| {
            if labelled_type(g, p) == target && best.as_ref().is_none_or(|(b, _)| p < b.as_slice()) {
                best = Some((p.to_vec(), count));
            }
        });
    });
    let (y, count_y) = best.expect("a violated class has a differing subset");
    Some(RegularityWitness { x, y, count_x, count_y })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn c5_is_strongly_regular() {
        assert!(is_t_tuple_regular(&named::cycle(5), 2).unwrap().holds);
        assert!(is_t_tuple_regular(&named::cycle(5), 5).unwrap().holds);
    }

    #[test]
    fn p3_fails_at_one() {
        let g = named::path(3);
        let r = is_t_tuple_regular(&g, 1).unwrap();
        let w = r.witness.unwrap();
        assert_eq!((w.x.clone(), w.y.clone()), (vec![0], vec![1]));
        assert!(w.verify(&g));
    }

    #[test]
    fn levels_are_cumulative() {
        let star = named::complete_bipartite(1, 4);
        let r = is_t_tuple_regular(&star, 2).unwrap();
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert_eq!(w.x.len(), 2);
        assert_eq!(w.x[0], w.x[1]);
        assert!(w.verify(&star));
        assert!(injective_witness(&star, 2).is_none());
    }

    #[test]
    fn petersen_is_two_but_not_three_tuple_regular() {
        let g = named::petersen();
        assert!(is_t_tuple_regular(&g, 2).unwrap().holds);
        let r = is_t_tuple_regular(&g, 3).unwrap();
        assert!(!r.holds);
        assert!(r.witness.unwrap().verify(&g));
    }
}
