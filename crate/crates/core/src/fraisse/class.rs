//! Built-in hereditary classes of finite structures.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::canon::canonical_code;
use crate::enumerate::{for_each_permutation, graphs_up_to_iso, labelled_graphs};
use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::par::{self, Execution};
use crate::rigid::ctree::{c_relation_of_tree, CRelation, RootedBinaryTree};
use crate::rigid::tournament::Tournament;
use crate::structure::{RelationalStructure, Signature};

/// Largest member size for catalog enumeration.
pub const CATALOG_LIMIT: usize = 6;
/// Largest number of labelled members generated for one size.
pub const LABELLED_LIMIT: usize = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ClassKind {
    AllGraphs,
    /// Graphs with no complete subgraph on `k` vertices.
    KFree { k: usize },
    Tournaments,
    Bipartite,
    /// Graphs of maximum degree at most 1.
    Matchings,
    LinearOrders,
    MultiOrders { m: usize },
    CRelations,
    /// Independent members of two classes on one domain; clashing names of the
    /// right-hand class get the suffix `_2`.
    Superposition { left: Box<ClassKind>, right: Box<ClassKind> },
    /// Graphs with an even number of edges; not hereditary.
    EvenEdges,
}

impl ClassKind {
    fn is_graph_like(&self) -> bool {
        matches!(
            self,
            ClassKind::AllGraphs | ClassKind::KFree { .. } | ClassKind::Bipartite | ClassKind::Matchings | ClassKind::EvenEdges
        )
    }

    /// Parses a keyword: `graphs`, `k3free`, `tournaments`, `bipartite`, `matchings`,
    /// `orders`, `2-orders`, `c-relations`, `even-edges`, or `A+B` for a superposition.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim().to_ascii_lowercase();
        if let Some((a, b)) = t.split_once('+') {
            return Ok(ClassKind::Superposition {
                left: Box::new(ClassKind::parse(a)?),
                right: Box::new(ClassKind::parse(b)?),
            });
        }
        let kind = match t.as_str() {
            "graphs" | "all-graphs" => ClassKind::AllGraphs,
            "tournaments" => ClassKind::Tournaments,
            "bipartite" | "bipartite-graphs" => ClassKind::Bipartite,
            "matchings" => ClassKind::Matchings,
            "orders" | "linear-orders" => ClassKind::LinearOrders,
            "c-relations" | "crelations" => ClassKind::CRelations,
            "even-edges" => ClassKind::EvenEdges,
            _ => {
                let num = |s: &str| s.parse::<usize>().ok();
                if let Some(k) = t.strip_prefix('k').and_then(|r| r.strip_suffix("free")).map(|r| r.trim_end_matches('-')).and_then(num) {
                    ClassKind::KFree { k }
                } else if let Some(m) = t.strip_suffix("-orders").and_then(num) {
                    ClassKind::MultiOrders { m }
                } else {
                    return Err(Error::InvalidInput(format!("unknown class keyword {text:?}")));
                }
            }
        };
        Ok(kind)
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassKind::AllGraphs => write!(f, "graphs"),
            ClassKind::KFree { k } => write!(f, "k{k}free"),
            ClassKind::Tournaments => write!(f, "tournaments"),
            ClassKind::Bipartite => write!(f, "bipartite"),
            ClassKind::Matchings => write!(f, "matchings"),
            ClassKind::LinearOrders => write!(f, "orders"),
            ClassKind::MultiOrders { m } => write!(f, "{m}-orders"),
            ClassKind::CRelations => write!(f, "c-relations"),
            ClassKind::Superposition { left, right } => write!(f, "{left}+{right}"),
            ClassKind::EvenEdges => write!(f, "even-edges"),
        }
    }
}

/// A class kind with its signature and the relation names each component owns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSpec {
    kind: ClassKind,
    signature: Arc<Signature>,
    /// For a superposition, the signature names used by each side (in the side's own order).
    parts: Option<Box<(ClassSpec, Vec<String>, ClassSpec, Vec<String>)>>,
}

impl ClassSpec {
    pub fn new(kind: ClassKind) -> Result<Self> {
        let (signature, parts) = match &kind {
            ClassKind::AllGraphs | ClassKind::Bipartite | ClassKind::Matchings | ClassKind::EvenEdges => (Signature::graph(), None),
            ClassKind::KFree { k } => {
                if *k < 2 {
                    return Err(Error::InvalidInput("K_k-free needs k >= 2".into()));
                }
                (Signature::graph(), None)
            }
            ClassKind::Tournaments => (Tournament::signature(), None),
            ClassKind::LinearOrders => (Signature::new([("L", 2)])?, None),
            ClassKind::MultiOrders { m } => {
                if *m == 0 {
                    return Err(Error::InvalidInput("a multiorder needs at least one order".into()));
                }
                (Signature::new((1..=*m).map(|i| (format!("L{i}"), 2)))?, None)
            }
            ClassKind::CRelations => (CRelation::signature(), None),
            ClassKind::Superposition { left, right } => {
                let l = ClassSpec::new((**left).clone())?;
                let r = ClassSpec::new((**right).clone())?;
                let lnames: Vec<String> = l.signature.relations().iter().map(|s| s.name.clone()).collect();
                let mut rnames = Vec::new();
                for s in r.signature.relations() {
                    let mut name = s.name.clone();
                    while lnames.contains(&name) || rnames.contains(&name) {
                        name.push_str("_2");
                    }
                    rnames.push(name);
                }
                let sig = Signature::new(
                    l.signature
                        .relations()
                        .iter()
                        .map(|s| (s.name.clone(), s.arity))
                        .chain(r.signature.relations().iter().zip(&rnames).map(|(s, n)| (n.clone(), s.arity))),
                )?;
                (sig, Some(Box::new((l, lnames, r, rnames))))
            }
        };
        Ok(ClassSpec {
            kind,
            signature: Arc::new(signature),
            parts,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        ClassSpec::new(ClassKind::parse(text)?)
    }

    pub fn kind(&self) -> &ClassKind {
        &self.kind
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub(crate) fn components(&self) -> Option<(&ClassSpec, &[String], &ClassSpec, &[String])> {
        self.parts.as_deref().map(|(l, ln, r, rn)| (l, ln.as_slice(), r, rn.as_slice()))
    }

    /// Projects a superposition member onto one side, renaming relations back.
    pub(crate) fn side(&self, s: &RelationalStructure, spec: &ClassSpec, names: &[String]) -> Result<RelationalStructure> {
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let part = s.reduct(&refs)?;
        let mut out = RelationalStructure::new(Arc::clone(&spec.signature), s.domain_size())?;
        for r in 0..names.len() {
            for t in part.table(r).tuples() {
                out.add(r, &t)?;
            }
        }
        Ok(out)
    }

    /// Re-labels a side structure into this superposition's signature positions.
    pub(crate) fn combine(&self, left: &RelationalStructure, right: &RelationalStructure) -> Result<RelationalStructure> {
        let mut out = RelationalStructure::new(Arc::clone(&self.signature), left.domain_size())?;
        let offset = left.signature().len();
        for r in 0..offset {
            for t in left.table(r).tuples() {
                out.add(r, &t)?;
            }
        }
        for r in 0..right.signature().len() {
            for t in right.table(r).tuples() {
                out.add(offset + r, &t)?;
            }
        }
        Ok(out)
    }

    /// Membership; structures over another signature are never members.
    pub fn contains(&self, s: &RelationalStructure) -> bool {
        if s.signature() != &*self.signature {
            return false;
        }
        let n = s.domain_size();
        let graph = || -> Option<FiniteGraph> {
            let e = s.table(0);
            for u in 0..n {
                if e.contains(&[u, u]) {
                    return None;
                }
                for v in u + 1..n {
                    if e.contains(&[u, v]) != e.contains(&[v, u]) {
                        return None;
                    }
                }
            }
            FiniteGraph::from_structure(s).ok()
        };
        match &self.kind {
            ClassKind::AllGraphs => graph().is_some(),
            ClassKind::KFree { k } => graph().is_some_and(|g| !has_clique(&g, *k)),
            ClassKind::Bipartite => graph().is_some_and(|g| is_bipartite(&g)),
            ClassKind::Matchings => graph().is_some_and(|g| (0..n).all(|v| g.degree(v) <= 1)),
            ClassKind::EvenEdges => graph().is_some_and(|g| g.edge_count() % 2 == 0),
            ClassKind::Tournaments => is_tournament(s, 0),
            ClassKind::LinearOrders | ClassKind::MultiOrders { .. } => {
                (0..s.signature().len()).all(|r| is_linear_order(s, r))
            }
            ClassKind::CRelations => CRelation::from_structure(s)
                .ok()
                .is_some_and(|g| crate::rigid::ctree::tree_of_c_relation(&g).is_ok()),
            ClassKind::Superposition { .. } => {
                let (l, ln, r, rn) = self.components().expect("superposition has parts");
                match (self.side(s, l, ln), self.side(s, r, rn)) {
                    (Ok(a), Ok(b)) => l.contains(&a) && r.contains(&b),
                    _ => false,
                }
            }
        }
    }

    /// Every member on exactly the domain `0..n` (labelled), in a fixed order.
    pub fn labelled_members(&self, n: usize) -> Result<Vec<RelationalStructure>> {
        if n > CATALOG_LIMIT + 1 {
            return Err(Error::size("labelled member size", CATALOG_LIMIT + 1, n));
        }
        let too_many = |count: u128| -> Result<()> {
            if count > LABELLED_LIMIT as u128 {
                Err(Error::size("labelled members", LABELLED_LIMIT, count.min(usize::MAX as u128) as usize))
            } else {
                Ok(())
            }
        };
        let pairs = n * n.saturating_sub(1) / 2;
        let fact: u128 = (1..=n as u128).product();
        let out = match &self.kind {
            k if k.is_graph_like() => {
                too_many(1u128 << pairs)?;
                labelled_graphs(n)?
                    .map(|g| g.to_structure())
                    .filter(|s| self.contains(s))
                    .collect()
            }
            ClassKind::Tournaments => {
                too_many(1u128 << pairs)?;
                (0..1u64 << pairs)
                    .map(|m| Tournament::from_mask(n, m).and_then(|t| t.to_structure()))
                    .collect::<Result<Vec<_>>>()?
            }
            ClassKind::LinearOrders | ClassKind::MultiOrders { .. } => {
                let m = self.signature.len();
                too_many(fact.saturating_pow(m as u32))?;
                let mut perms = Vec::new();
                for_each_permutation(&(0..n).collect::<Vec<_>>(), |p| perms.push(p.to_vec()));
                let mut out = Vec::new();
                let mut idx = vec![0usize; m];
                loop {
                    let mut s = RelationalStructure::new(Arc::clone(&self.signature), n)?;
                    for (r, &i) in idx.iter().enumerate() {
                        let p = &perms[i];
                        for a in 0..n {
                            for b in a + 1..n {
                                s.add(r, &[p[a], p[b]])?;
                            }
                        }
                    }
                    out.push(s);
                    let mut j = m;
                    loop {
                        if j == 0 {
                            return Ok(out);
                        }
                        j -= 1;
                        idx[j] += 1;
                        if idx[j] < perms.len() {
                            break;
                        }
                        idx[j] = 0;
                    }
                }
            }
            ClassKind::CRelations => {
                if n == 0 {
                    vec![RelationalStructure::new(Arc::clone(&self.signature), 0)?]
                } else {
                    RootedBinaryTree::all(n)?
                        .iter()
                        .map(|t| c_relation_of_tree(t).to_structure())
                        .collect::<Result<Vec<_>>>()?
                }
            }
            ClassKind::Superposition { .. } => {
                let (l, _, r, _) = self.components().expect("superposition has parts");
                let a = l.labelled_members(n)?;
                let b = r.labelled_members(n)?;
                too_many(a.len() as u128 * b.len() as u128)?;
                let mut out = Vec::with_capacity(a.len() * b.len());
                for x in &a {
                    for y in &b {
                        out.push(self.combine(x, y)?);
                    }
                }
                out
            }
            _ => unreachable!("graph-like kinds handled above"),
        };
        Ok(out)
    }

    /// One member per isomorphism class on exactly `n` points, ordered by canonical code.
    pub fn members(&self, n: usize, exec: Execution) -> Result<Vec<RelationalStructure>> {
        if n > CATALOG_LIMIT {
            return Err(Error::size("catalog member size", CATALOG_LIMIT, n));
        }
        let candidates: Vec<RelationalStructure> = if self.kind.is_graph_like() {
            graphs_up_to_iso(n, exec)?
                .into_iter()
                .map(|g| g.to_structure())
                .filter(|s| self.contains(s))
                .collect()
        } else {
            self.labelled_members(n)?
        };
        let coded = par::map(exec, &candidates, canonical_code);
        let mut classes: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
        for (i, c) in coded.into_iter().enumerate() {
            classes.entry(c?).or_insert(i);
        }
        Ok(classes.into_values().map(|i| candidates[i].clone()).collect())
    }

    /// Members of sizes `1..=n`, smallest first; the empty structure is excluded.
    pub fn catalog(&self, n: usize, exec: Execution) -> Result<Vec<RelationalStructure>> {
        let mut out = Vec::new();
        for k in 1..=n {
            out.extend(self.members(k, exec)?);
        }
        Ok(out)
    }
}

fn is_tournament(s: &RelationalStructure, r: usize) -> bool {
    let n = s.domain_size();
    (0..n).all(|u| !s.holds(r, &[u, u]) && (u + 1..n).all(|v| s.holds(r, &[u, v]) != s.holds(r, &[v, u])))
}

fn is_linear_order(s: &RelationalStructure, r: usize) -> bool {
    if !is_tournament(s, r) {
        return false;
    }
    let n = s.domain_size();
    // A tournament is transitive iff its out-degrees are 0..n-1.
    let mut deg: Vec<usize> = (0..n).map(|u| (0..n).filter(|&v| s.holds(r, &[u, v])).count()).collect();
    deg.sort_unstable();
    deg.iter().enumerate().all(|(i, &d)| i == d)
}

pub(crate) fn has_clique(g: &FiniteGraph, k: usize) -> bool {
    fn grow(g: &FiniteGraph, cand: &[usize], need: usize) -> bool {
        if need == 0 {
            return true;
        }
        for (i, &v) in cand.iter().enumerate() {
            let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&u| g.has_edge(u, v)).collect();
            if next.len() + 1 >= need && grow(g, &next, need - 1) {
                return true;
            }
        }
        false
    }
    grow(g, &(0..g.order()).collect::<Vec<_>>(), k)
}

fn is_bipartite(g: &FiniteGraph) -> bool {
    let n = g.order();
    let mut side: Vec<Option<bool>> = vec![None; n];
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let su = side[u].expect("coloured before push");
            for v in g.neighbours(u) {
                match side[v] {
                    None => {
                        side[v] = Some(!su);
                        stack.push(v);
                    }
                    Some(sv) if sv == su => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn count(kind: &str, n: usize) -> usize {
        ClassSpec::parse(kind).unwrap().members(n, Execution::Sequential).unwrap().len()
    }

    #[test]
    fn keywords_round_trip() {
        for k in ["graphs", "k3free", "tournaments", "bipartite", "matchings", "orders", "2-orders", "c-relations", "even-edges", "tournaments+c-relations"] {
            let kind = ClassKind::parse(k).unwrap();
            assert_eq!(kind.to_string(), k);
        }
        assert!(ClassKind::parse("k1free").is_ok());
        assert!(ClassSpec::parse("k1free").is_err());
        assert!(ClassKind::parse("widgets").is_err());
        let s = ClassSpec::parse("graphs+graphs").unwrap();
        let names: Vec<&str> = s.signature().relations().iter().map(|r| r.name.as_str()).collect();
        assert_eq!(names, vec!["E", "E_2"]);
    }

    #[test]
    fn membership() {
        let k3 = ClassSpec::parse("k3free").unwrap();
        assert!(k3.contains(&named::cycle(5).to_structure()));
        assert!(!k3.contains(&named::complete(3).to_structure()));
        let bip = ClassSpec::parse("bipartite").unwrap();
        assert!(bip.contains(&named::cycle(6).to_structure()));
        assert!(!bip.contains(&named::cycle(5).to_structure()));
        let t = ClassSpec::parse("tournaments").unwrap();
        assert!(t.contains(&Tournament::cyclic(5).unwrap().to_structure().unwrap()));
        assert!(!t.contains(&named::path(3).to_structure()));
    }

    #[test]
    fn catalog_sizes() {
        assert_eq!((1..=5).map(|n| count("graphs", n)).collect::<Vec<_>>(), vec![1, 2, 4, 11, 34]);
        assert_eq!((1..=5).map(|n| count("tournaments", n)).collect::<Vec<_>>(), vec![1, 1, 2, 4, 12]);
        assert_eq!((1..=4).map(|n| count("orders", n)).collect::<Vec<_>>(), vec![1, 1, 1, 1]);
        assert_eq!((1..=4).map(|n| count("2-orders", n)).collect::<Vec<_>>(), vec![1, 2, 6, 24]);
        assert_eq!((1..=5).map(|n| count("c-relations", n)).collect::<Vec<_>>(), vec![1, 1, 1, 2, 3]);
        assert_eq!((1..=4).map(|n| count("matchings", n)).collect::<Vec<_>>(), vec![1, 2, 2, 3]);
        assert_eq!(count("tournaments+c-relations", 3), 2 * 2);
    }
}
