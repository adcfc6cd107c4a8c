//! The Schläfli graph: the 27 lines on a cubic surface, adjacent when they meet.

use std::collections::BTreeSet;

use super::regularity::labelled_type;
use crate::enumerate::{for_each_permutation, for_each_subset};
use crate::graph::FiniteGraph;
use crate::graph_canon::{small_canonical_code, SmallGraph};

/// Vertex labels in index order: `a1..a6`, `b1..b6`, then `c_ij` for `i < j`.
pub fn schlafli_labels() -> Vec<String> {
    let mut labels: Vec<String> = (1..=6).map(|i| format!("a{i}")).collect();
    labels.extend((1..=6).map(|i| format!("b{i}")));
    for i in 1..=6 {
        for j in i + 1..=6 {
            labels.push(format!("c{i}{j}"));
        }
    }
    labels
}

#[derive(Clone, Copy)]
enum Line {
    A(usize),
    B(usize),
    C(usize, usize),
}

fn lines() -> Vec<Line> {
    let mut v: Vec<Line> = (0..6).map(Line::A).collect();
    v.extend((0..6).map(Line::B));
    for i in 0..6 {
        for j in i + 1..6 {
            v.push(Line::C(i, j));
        }
    }
    v
}

fn meet(x: Line, y: Line) -> bool {
    use Line::*;
    match (x, y) {
        (A(i), B(j)) | (B(j), A(i)) => i != j,
        (A(i), C(j, k)) | (C(j, k), A(i)) | (B(i), C(j, k)) | (C(j, k), B(i)) => i == j || i == k,
        (C(i, j), C(k, l)) => i != k && i != l && j != k && j != l,
        (A(_), A(_)) | (B(_), B(_)) => false,
    }
}

/// The 27-vertex, 10-regular graph srg(27, 10, 1, 5); its complement is the 16-regular convention.
pub fn schlafli_graph() -> FiniteGraph {
    let ls = lines();
    let mut g = FiniteGraph::new(ls.len());
    for u in 0..ls.len() {
        for v in u + 1..ls.len() {
            if meet(ls[u], ls[v]) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Labelled `k`-vertex types (upper-triangle masks) realised by injective `k`-tuples.
pub fn realised_labelled_types(g: &FiniteGraph, k: usize) -> BTreeSet<u128> {
    let mut seen = BTreeSet::new();
    for_each_subset(g.order(), k, |s| {
        for_each_permutation(s, |p| {
            seen.insert(labelled_type(g, p));
        });
    });
    seen
}

/// Graphs on `k <= 6` vertices (one per isomorphism class) that are not induced subgraphs of `g`.
pub fn missing_induced_subgraphs(g: &FiniteGraph, k: usize) -> Vec<FiniteGraph> {
    let bits = k * k.saturating_sub(1) / 2;
    let realised: BTreeSet<u128> = realised_labelled_types(g, k)
        .into_iter()
        .map(|m| small_canonical_code(&SmallGraph::from_code(k, m)))
        .collect();
    let all: BTreeSet<u128> = (0..1u128 << bits)
        .map(|m| small_canonical_code(&SmallGraph::from_code(k, m)))
        .collect();
    all.difference(&realised)
        .map(|&c| SmallGraph::from_code(k, c).to_graph())
        .collect()
}
