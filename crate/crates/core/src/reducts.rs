//! Switching of finite graphs and the reducts of a finite linear order.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::iso;
use crate::perm::{self, PermGroupDescription};
use crate::structure::{for_each_tuple, RelationalStructure, Signature};

pub const SWITCHING_LIMIT: usize = 20;

fn check_set(n: usize, set: &[usize]) -> Result<Vec<bool>> {
    let mut inside = vec![false; n];
    for &v in set {
        if v >= n {
            return Err(Error::InvalidVertex { vertex: v, domain: n });
        }
        inside[v] = true;
    }
    Ok(inside)
}

/// Exchanges edges and non-edges between `set` and its complement.
pub fn switch(g: &FiniteGraph, set: &[usize]) -> Result<FiniteGraph> {
    let n = g.order();
    let inside = check_set(n, set)?;
    let mut h = g.clone();
    for x in 0..n {
        for y in x + 1..n {
            if inside[x] != inside[y] {
                h.toggle_edge(x, y);
            }
        }
    }
    Ok(h)
}

/// A set `Y` with `h = switch(g, Y)`, if one exists.
///
/// Of `Y` and its complement the one avoiding vertex 0 is returned, which is
/// the least when sets are encoded as bit strings with vertex 0 as the most
/// significant digit.
pub fn switching_witness(g: &FiniteGraph, h: &FiniteGraph) -> Result<Option<Vec<usize>>> {
    let n = g.order();
    if h.order() != n {
        return Err(Error::DomainMismatch { left: n, right: h.order() });
    }
    if n > SWITCHING_LIMIT {
        return Err(Error::size("switching graph order", SWITCHING_LIMIT, n));
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let differs = |x: usize, y: usize| g.has_edge(x, y) != h.has_edge(x, y);
    let inside: Vec<bool> = (0..n).map(|y| y != 0 && differs(0, y)).collect();
    for x in 1..n {
        for y in x + 1..n {
            if differs(x, y) != (inside[x] != inside[y]) {
                return Ok(None);
            }
        }
    }
    Ok(Some((0..n).filter(|&v| inside[v]).collect()))
}

/// A set `Y` with `π(G) = switch(G, Y)`, where `π(G)` relabels `v` as `π[v]`.
pub fn switching_automorphism_witness(g: &FiniteGraph, pi: &[usize]) -> Result<Option<Vec<usize>>> {
    if pi.len() != g.order() || !perm::is_permutation(pi) {
        return Err(Error::InvalidInput("not a permutation of the vertex set".into()));
    }
    if g.order() > SWITCHING_LIMIT {
        return Err(Error::size("switching graph order", SWITCHING_LIMIT, g.order()));
    }
    switching_witness(g, &g.relabel(pi))
}

/// Relations definable from the natural order on `0..n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductKind {
    Order,
    Betweenness,
    Circular,
    Separation,
    PureSet,
}

impl ReductKind {
    pub const ALL: [ReductKind; 5] = [
        ReductKind::Order,
        ReductKind::Betweenness,
        ReductKind::Circular,
        ReductKind::Separation,
        ReductKind::PureSet,
    ];

    pub fn arity(self) -> usize {
        match self {
            ReductKind::Order => 2,
            ReductKind::Betweenness | ReductKind::Circular => 3,
            ReductKind::Separation => 4,
            ReductKind::PureSet => 0,
        }
    }

    fn symbol(self) -> Option<&'static str> {
        match self {
            ReductKind::Order => Some("L"),
            ReductKind::Betweenness => Some("B"),
            ReductKind::Circular => Some("K"),
            ReductKind::Separation => Some("S"),
            ReductKind::PureSet => None,
        }
    }

    fn holds(self, t: &[usize]) -> bool {
        match self {
            ReductKind::Order => t[0] < t[1],
            ReductKind::Betweenness => between(t[0], t[1], t[2]),
            ReductKind::Circular => circular(t[0], t[1], t[2]),
            ReductKind::Separation => {
                let (x, y, z, w) = (t[0], t[1], t[2], t[3]);
                distinct(t) && circular(x, y, z) != circular(x, w, z)
            }
            ReductKind::PureSet => false,
        }
    }
}

fn distinct(t: &[usize]) -> bool {
    t.iter().enumerate().all(|(i, x)| !t[..i].contains(x))
}

fn between(x: usize, y: usize, z: usize) -> bool {
    (x < y && y < z) || (z < y && y < x)
}

fn circular(x: usize, y: usize, z: usize) -> bool {
    (x < y && y < z) || (y < z && z < x) || (z < x && x < y)
}

impl fmt::Display for ReductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReductKind::Order => "order",
            ReductKind::Betweenness => "betweenness",
            ReductKind::Circular => "circular",
            ReductKind::Separation => "separation",
            ReductKind::PureSet => "pure-set",
        })
    }
}

impl FromStr for ReductKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ReductKind::ALL
            .into_iter()
            .find(|k| k.to_string() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::InvalidInput(format!("unknown reduct kind '{s}'")))
    }
}

/// The relation of `kind` induced on `0..n` by the natural order.
pub fn reduct_relation(n: usize, kind: ReductKind) -> Result<RelationalStructure> {
    if n < kind.arity() {
        return Err(Error::InvalidInput(format!(
            "{kind} needs at least {} points, got {n}",
            kind.arity()
        )));
    }
    let signature = match kind.symbol() {
        Some(name) => Signature::new([(name, kind.arity())])?,
        None => Signature::empty(),
    };
    let mut s = RelationalStructure::new(Arc::new(signature), n)?;
    if kind.symbol().is_some() {
        let mut tuples = Vec::new();
        for_each_tuple(n, kind.arity(), &mut Vec::new(), &mut |t| {
            if kind.holds(t) {
                tuples.push(t.to_vec());
            }
        });
        for t in tuples {
            s.add(0, &t)?;
        }
    }
    Ok(s)
}

/// Covering pairs of the reduct lattice: the automorphism group of the first
/// kind lies inside that of the second.
pub const REDUCT_LATTICE: [(ReductKind, ReductKind); 5] = [
    (ReductKind::Order, ReductKind::Betweenness),
    (ReductKind::Order, ReductKind::Circular),
    (ReductKind::Betweenness, ReductKind::Separation),
    (ReductKind::Circular, ReductKind::Separation),
    (ReductKind::Separation, ReductKind::PureSet),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Containment {
    pub lower: ReductKind,
    pub upper: ReductKind,
    /// Every generator of the lower group preserves the upper relation.
    pub holds: bool,
}

/// Automorphism groups of the five reducts on `0..n` with the containments
/// along the lattice edges.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReductChain {
    pub n: usize,
    pub kinds: Vec<ReductKind>,
    pub groups: Vec<PermGroupDescription>,
    pub containments: Vec<Containment>,
}

impl ReductChain {
    pub fn orders(&self) -> Vec<u128> {
        self.groups.iter().map(|g| g.order).collect()
    }

    pub fn is_chain(&self) -> bool {
        self.containments.iter().all(|c| c.holds)
    }
}

pub fn reduct_chain(n: usize) -> Result<ReductChain> {
    let structures: Vec<RelationalStructure> = ReductKind::ALL
        .iter()
        .map(|&k| reduct_relation(n, k))
        .collect::<Result<_>>()?;
    let groups: Vec<PermGroupDescription> = structures
        .iter()
        .map(iso::automorphisms)
        .collect::<Result<_>>()?;
    let index = |k: ReductKind| ReductKind::ALL.iter().position(|&x| x == k).expect("listed kind");
    let containments = REDUCT_LATTICE
        .iter()
        .map(|&(lower, upper)| Containment {
            lower,
            upper,
            holds: groups[index(lower)]
                .generators
                .iter()
                .all(|g| iso::is_automorphism(&structures[index(upper)], g)),
        })
        .collect();
    Ok(ReductChain {
        n,
        kinds: ReductKind::ALL.to_vec(),
        groups,
        containments,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn brute_aut_order(s: &RelationalStructure) -> u128 {
        let n = s.domain_size();
        let mut count = 0;
        crate::enumerate::for_each_permutation(&(0..n).collect::<Vec<_>>(), |p| {
            if s.relabel(p) == *s {
                count += 1;
            }
        });
        count
    }

    #[test]
    fn switching_basics() {
        let p3 = named::path(3);
        assert_eq!(switch(&p3, &[]).unwrap(), p3);
        let h = switch(&p3, &[0]).unwrap();
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 2), (1, 2)]);
        assert_eq!(switch(&h, &[0]).unwrap(), p3);
        assert_eq!(switch(&p3, &[1, 2]).unwrap(), h);
        assert_eq!(switching_witness(&p3, &h).unwrap(), Some(vec![1, 2]));
        assert!(switch(&p3, &[3]).is_err());
    }

    #[test]
    fn automorphisms_need_no_switching() {
        let c5 = named::cycle(5);
        assert_eq!(switching_automorphism_witness(&c5, &[0, 4, 3, 2, 1]).unwrap(), Some(vec![]));
        let p3 = named::path(3);
        assert_eq!(switching_automorphism_witness(&p3, &[1, 0, 2]).unwrap(), Some(vec![2]));
        let one_edge = FiniteGraph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(switching_witness(&named::empty(3), &one_edge).unwrap(), None);
    }

    #[test]
    fn reduct_orders_small() {
        let expected = [(ReductKind::Order, 1), (ReductKind::Betweenness, 2), (ReductKind::Circular, 4), (ReductKind::Separation, 8), (ReductKind::PureSet, 24)];
        for (kind, order) in expected {
            let s = reduct_relation(4, kind).unwrap();
            assert_eq!(brute_aut_order(&s), order, "{kind}");
        }
        assert!(reduct_relation(3, ReductKind::Separation).is_err());
    }

    #[test]
    fn chain() {
        for n in 4..=6 {
            let c = reduct_chain(n).unwrap();
            let f: u128 = (1..=n as u128).product();
            assert_eq!(c.orders(), vec![1, 2, n as u128, 2 * n as u128, f]);
            assert!(c.is_chain());
            let b = reduct_relation(n, ReductKind::Betweenness).unwrap();
            let k = reduct_relation(n, ReductKind::Circular).unwrap();
            let reversal: Vec<usize> = (0..n).rev().collect();
            assert!(iso::is_automorphism(&b, &reversal));
            assert!(!iso::is_automorphism(&k, &reversal));
        }
    }

    #[test]
    fn kind_names_round_trip() {
        for k in ReductKind::ALL {
            assert_eq!(k.to_string().parse::<ReductKind>().unwrap(), k);
        }
    }
}
