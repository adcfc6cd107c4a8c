//! Classification of finite homogeneous graphs into the four known families.

use serde::{Deserialize, Serialize};

use super::homog::{is_homogeneous, HOMOGENEITY_ORDER_LIMIT};
use crate::error::{Error, Result};
use crate::graph::{named, FiniteGraph};
use crate::iso::{are_isomorphic, PartialIsomorphism};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GardinerClass {
    /// `m` disjoint copies of `K_size` (includes complete and edgeless graphs).
    DisjointCliques { m: usize, size: usize },
    /// Complete multipartite with `parts >= 2` parts of equal `size >= 2`.
    CompleteMultipartite { parts: usize, size: usize },
    Pentagon,
    LineGraphK33,
    NotHomogeneous { witness: PartialIsomorphism },
}

/// Sizes of the components if every component is a clique.
fn clique_components(g: &FiniteGraph) -> Option<Vec<usize>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut sizes = Vec::new();
    for v in 0..n {
        if seen[v] {
            continue;
        }
        let comp: Vec<usize> = std::iter::once(v).chain(g.neighbours(v)).collect();
        for &u in &comp {
            if seen[u] || g.degree(u) != comp.len() - 1 {
                return None;
            }
            seen[u] = true;
        }
        for (i, &a) in comp.iter().enumerate() {
            if comp[i + 1..].iter().any(|&b| !g.has_edge(a, b)) {
                return None;
            }
        }
        sizes.push(comp.len());
    }
    Some(sizes)
}

fn equal_cliques(g: &FiniteGraph) -> Option<(usize, usize)> {
    let sizes = clique_components(g)?;
    match sizes.first() {
        None => Some((0, 0)),
        Some(&s) if sizes.iter().all(|&x| x == s) => Some((sizes.len(), s)),
        Some(_) => None,
    }
}

/// The family containing `g`, if any, decided by structure alone.
pub fn family_of(g: &FiniteGraph) -> Result<Option<GardinerClass>> {
    if let Some((m, size)) = equal_cliques(g) {
        return Ok(Some(GardinerClass::DisjointCliques { m, size }));
    }
    if let Some((parts, size)) = equal_cliques(&g.complement()) {
        return Ok(Some(GardinerClass::CompleteMultipartite { parts, size }));
    }
    let s = g.to_structure();
    if g.order() == 5 && are_isomorphic(&s, &named::cycle(5).to_structure())?.is_some() {
        return Ok(Some(GardinerClass::Pentagon));
    }
    let l = named::line_graph(&named::complete_bipartite(3, 3));
    if g.order() == 9 && are_isomorphic(&s, &l.to_structure())?.is_some() {
        return Ok(Some(GardinerClass::LineGraphK33));
    }
    Ok(None)
}

/// Places `g` in one of the four families, or returns a homogeneity-failure witness.
pub fn gardiner_classify(g: &FiniteGraph) -> Result<GardinerClass> {
    if g.order() > HOMOGENEITY_ORDER_LIMIT {
        return Err(Error::size("classification graph order", HOMOGENEITY_ORDER_LIMIT, g.order()));
    }
    if let Some(c) = family_of(g)? {
        return Ok(c);
    }
    let report = is_homogeneous(g)?;
    match report.witness {
        Some(witness) if !report.holds => Ok(GardinerClass::NotHomogeneous { witness }),
        _ => Err(Error::InvalidInput(
            "homogeneous graph outside the four families".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(
            gardiner_classify(&named::cliques(3, 2)).unwrap(),
            GardinerClass::DisjointCliques { m: 3, size: 2 }
        );
        assert_eq!(
            gardiner_classify(&named::complete_multipartite(&[3, 3, 3])).unwrap(),
            GardinerClass::CompleteMultipartite { parts: 3, size: 3 }
        );
        assert_eq!(gardiner_classify(&named::cycle(5)).unwrap(), GardinerClass::Pentagon);
        assert_eq!(
            gardiner_classify(&named::line_graph(&named::complete_bipartite(3, 3))).unwrap(),
            GardinerClass::LineGraphK33
        );
        assert!(matches!(
            gardiner_classify(&named::petersen()).unwrap(),
            GardinerClass::NotHomogeneous { .. }
        ));
        assert_eq!(
            gardiner_classify(&FiniteGraph::new(0)).unwrap(),
            GardinerClass::DisjointCliques { m: 0, size: 0 }
        );
    }
}
