//! t-homogeneity and full homogeneity of finite graphs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::gardiner::family_of;
use super::regularity::labelled_type;
use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::iso::{self, orbit_labels, PartialIsomorphism};
use crate::orbits::{group_tuple_orbits, TUPLE_TABLE_LIMIT};
use crate::perm::{self, Perm};

/// Largest order for [`is_t_homogeneous`].
pub const T_HOMOGENEITY_ORDER_LIMIT: usize = 27;
pub const T_HOMOGENEITY_T_LIMIT: usize = 4;
/// Largest order decided by exhaustive extension search in [`is_homogeneous`].
pub const EXHAUSTIVE_LIMIT: usize = 12;
/// Largest order accepted by [`is_homogeneous`].
pub const HOMOGENEITY_ORDER_LIMIT: usize = 27;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Tuple orbits of the automorphism group, levels `1..=t`.
    TupleOrbits,
    /// Exhaustive search over orbit representatives of all tuple lengths.
    Exhaustive,
    /// Tuple orbits up to the capped level plus an isomorphism to a known family.
    OrbitsAndFamily,
}

/// Verdict with a non-extendable partial isomorphism when it fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneityReport {
    pub holds: bool,
    /// Least tuple length at which extension fails.
    pub failing_level: Option<usize>,
    pub witness: Option<PartialIsomorphism>,
    pub method: Method,
}

impl HomogeneityReport {
    fn pass(method: Method) -> Self {
        HomogeneityReport {
            holds: true,
            failing_level: None,
            witness: None,
            method,
        }
    }
}

/// Checks every level `1..=t` via tuple orbits; returns the first failure.
fn orbit_levels(g: &FiniteGraph, gens: &[Perm], levels: std::ops::RangeInclusive<usize>) -> Result<Option<(usize, PartialIsomorphism)>> {
    for s in levels {
        if s > g.order() {
            break;
        }
        if let Some(w) = level_witness(g, gens, s)? {
            return Ok(Some((s, w)));
        }
    }
    Ok(None)
}

/// Least tuple `x` whose labelled type meets two orbits, paired with the least
/// tuple `y` of the same type in another orbit.
fn level_witness(g: &FiniteGraph, gens: &[Perm], s: usize) -> Result<Option<PartialIsomorphism>> {
    let orbits = group_tuple_orbits(g.order(), gens, s)?;
    let mut by_type: BTreeMap<u128, Vec<&Vec<usize>>> = BTreeMap::new();
    for rep in orbits.representatives() {
        by_type.entry(labelled_type(g, rep)).or_default().push(rep);
    }
    let split = by_type
        .values()
        .filter(|reps| reps.len() > 1)
        .min_by_key(|reps| reps[0]);
    Ok(split.map(|reps| PartialIsomorphism::from_tuples(reps[0], reps[1])))
}

/// Whether every isomorphism between induced subgraphs on at most `t` vertices
/// extends to an automorphism (`n <= 27`, `t <= 4`).
pub fn is_t_homogeneous(g: &FiniteGraph, t: usize) -> Result<HomogeneityReport> {
    let n = g.order();
    if n > T_HOMOGENEITY_ORDER_LIMIT {
        return Err(Error::size("t-homogeneity graph order", T_HOMOGENEITY_ORDER_LIMIT, n));
    }
    if t > T_HOMOGENEITY_T_LIMIT {
        return Err(Error::size("t-homogeneity level", T_HOMOGENEITY_T_LIMIT, t));
    }
    let group = iso::automorphisms(&g.to_structure())?;
    Ok(match orbit_levels(g, &group.generators, 1..=t)? {
        None => HomogeneityReport::pass(Method::TupleOrbits),
        Some((level, w)) => HomogeneityReport {
            holds: false,
            failing_level: Some(level),
            witness: Some(w),
            method: Method::TupleOrbits,
        },
    })
}

/// Whether every isomorphism between finite induced subgraphs extends to an automorphism.
///
/// Up to 12 vertices this is decided exactly: level by level over orbit
/// representatives `x` of the group on tuples, the stabiliser of `x` must
/// have exactly one orbit on the remaining vertices per realised adjacency
/// pattern to `x`. Branches with trivial stabiliser and distinct patterns
/// pass for all longer tuples and are not expanded. From 13 to 27 vertices
/// levels up to 4 are checked by tuple orbits and homogeneity is certified
/// by an isomorphism to a member of the four homogeneous families.
pub fn is_homogeneous(g: &FiniteGraph) -> Result<HomogeneityReport> {
    let n = g.order();
    if n > HOMOGENEITY_ORDER_LIMIT {
        return Err(Error::size("homogeneity graph order", HOMOGENEITY_ORDER_LIMIT, n));
    }
    let group = iso::automorphisms(&g.to_structure())?;
    if n <= EXHAUSTIVE_LIMIT {
        return exhaustive(g, &group.generators);
    }
    if let Some((level, w)) = orbit_levels(g, &group.generators, 1..=T_HOMOGENEITY_T_LIMIT)? {
        return Ok(HomogeneityReport {
            holds: false,
            failing_level: Some(level),
            witness: Some(w),
            method: Method::OrbitsAndFamily,
        });
    }
    if family_of(g)?.is_some() {
        return Ok(HomogeneityReport::pass(Method::OrbitsAndFamily));
    }
    match orbit_levels(g, &group.generators, 5..=5)? {
        Some((level, w)) => Ok(HomogeneityReport {
            holds: false,
            failing_level: Some(level),
            witness: Some(w),
            method: Method::OrbitsAndFamily,
        }),
        None => Err(Error::InvalidInput(
            "5-homogeneous graph outside the known families; no decision within the size cap".into(),
        )),
    }
}

fn exhaustive(g: &FiniteGraph, gens: &[Perm]) -> Result<HomogeneityReport> {
    let n = g.order();
    let mut nodes: Vec<(Vec<usize>, Vec<Perm>)> = vec![(Vec::new(), gens.to_vec())];
    let mut level = 0;
    while !nodes.is_empty() {
        level += 1;
        let mut next = Vec::new();
        for (x, h) in &nodes {
            let labels = orbit_labels(n, h);
            // pattern -> (orbit label, least vertex) of the first vertex seen
            let mut seen: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
            let mut reps = Vec::new();
            for w in (0..n).filter(|w| !x.contains(w)) {
                let pattern = x
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (i, &u)| acc | (g.has_edge(u, w) as u32) << i);
                match seen.get(&pattern) {
                    None => {
                        seen.insert(pattern, (labels[w], w));
                    }
                    Some(&(label, first)) if label != labels[w] => {
                        return failure(g, gens, level, x, first, w);
                    }
                    Some(_) => {}
                }
                if labels[w] == w {
                    reps.push(w);
                }
            }
            let trivial = h.iter().all(|p| perm::is_identity(p));
            if trivial {
                continue;
            }
            for w in reps {
                let mut child = x.clone();
                child.push(w);
                let stab = perm::pointwise_stabiliser(n, h, &[w]);
                next.push((child, stab));
            }
        }
        nodes = next;
    }
    Ok(HomogeneityReport::pass(Method::Exhaustive))
}

/// Builds the least witness at `level` from the group's tuple orbits when the
/// table is small enough, otherwise from the failing node itself.
fn failure(g: &FiniteGraph, gens: &[Perm], level: usize, x: &[usize], u: usize, v: usize) -> Result<HomogeneityReport> {
    let table = (g.order() as u128).pow(level as u32);
    let witness = if table <= TUPLE_TABLE_LIMIT as u128 {
        level_witness(g, gens, level)?.expect("a failing level has a split type")
    } else {
        let mut a = x.to_vec();
        let mut b = x.to_vec();
        a.push(u);
        b.push(v);
        PartialIsomorphism::from_tuples(&a, &b)
    };
    Ok(HomogeneityReport {
        holds: false,
        failing_level: Some(level),
        witness: Some(witness),
        method: Method::Exhaustive,
    })
}

/// Confirms that a witness is an isomorphism of induced subgraphs that no automorphism extends.
pub fn verify_non_extendable(g: &FiniteGraph, w: &PartialIsomorphism) -> Result<bool> {
    let s = g.to_structure();
    if w.verify(&s, &s).is_err() {
        return Ok(false);
    }
    let group = iso::automorphisms(&s)?;
    let x = w.domain();
    let y = w.image();
    let orbits = group_tuple_orbits(g.order(), &group.generators, x.len())?;
    Ok(orbits.orbit_of(&x) != orbits.orbit_of(&y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn gardiner_examples() {
        for g in [
            named::cycle(5),
            named::cliques(2, 3),
            named::cliques(3, 2),
            named::complete_multipartite(&[3, 3, 3]),
            named::line_graph(&named::complete_bipartite(3, 3)),
            named::empty(4),
            named::complete(6),
        ] {
            assert!(is_homogeneous(&g).unwrap().holds, "{g:?}");
        }
    }

    #[test]
    fn k3_plus_k2_fails_with_witness() {
        let g = named::complete(3).disjoint_union(&named::complete(2));
        let r = is_homogeneous(&g).unwrap();
        assert!(!r.holds);
        assert_eq!(r.failing_level, Some(1));
        let w = r.witness.unwrap();
        assert_eq!(w.pairs, vec![(0, 3)]);
        assert!(verify_non_extendable(&g, &w).unwrap());
    }

    #[test]
    fn petersen_is_not_homogeneous() {
        let g = named::petersen();
        let r = is_homogeneous(&g).unwrap();
        assert!(!r.holds);
        assert!(verify_non_extendable(&g, r.witness.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn t_homogeneity() {
        assert!(!is_t_homogeneous(&named::path(3), 1).unwrap().holds);
        assert!(is_t_homogeneous(&named::line_graph(&named::complete_bipartite(3, 3)), 4)
            .unwrap()
            .holds);
        let r = is_t_homogeneous(&named::petersen(), 3).unwrap();
        assert!(!r.holds);
        assert_eq!(r.failing_level, Some(3));
    }

    #[test]
    fn large_family_member() {
        let g = named::cliques(7, 2);
        let r = is_homogeneous(&g).unwrap();
        assert!(r.holds);
        assert_eq!(r.method, Method::OrbitsAndFamily);
    }
}
