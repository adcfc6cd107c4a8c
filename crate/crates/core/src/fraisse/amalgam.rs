//! Hereditary property, joint embedding and amalgamation checks by exhaustive search.

use std::collections::{BTreeSet, BinaryHeap};
use std::cmp::Reverse;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::class::{ClassKind, ClassSpec};
use crate::enumerate::for_each_subset;
use crate::error::{Error, Result};
use crate::iso::{all_embeddings, automorphisms};
use crate::par::{self, Execution};
use crate::perm::Perm;
use crate::rigid::ctree::{insert_everywhere, leaf_paths, meet_depth, tree_of_c_relation, CRelation, Tree};
use crate::structure::{as_document, for_each_tuple, RelationalStructure};

pub const HEREDITARY_LIMIT: usize = 6;
pub const AMALGAMATION_LIMIT: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum AmalgamVerdict {
    Solved {
        #[serde(with = "as_document")]
        c: RelationalStructure,
        g1: Vec<usize>,
        g2: Vec<usize>,
    },
    /// No amalgam on at most `bound` points.
    UnsolvableUpTo { bound: usize },
}

/// An amalgamation instance `f1: A -> B1`, `f2: A -> B2` and its outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmalgamationWitness {
    #[serde(with = "as_document")]
    pub a: RelationalStructure,
    #[serde(with = "as_document")]
    pub b1: RelationalStructure,
    #[serde(with = "as_document")]
    pub b2: RelationalStructure,
    pub f1: Vec<usize>,
    pub f2: Vec<usize>,
    pub verdict: AmalgamVerdict,
}

impl AmalgamationWitness {
    /// Checks that a solved verdict commutes over `A` and embeds both sides into a member.
    pub fn verify(&self, spec: &ClassSpec) -> Result<()> {
        let AmalgamVerdict::Solved { c, g1, g2 } = &self.verdict else {
            return Ok(());
        };
        if !spec.contains(c) {
            return Err(Error::InvalidEmbedding("amalgam is not a member of the class".into()));
        }
        check_embedding(&self.b1, c, g1)?;
        check_embedding(&self.b2, c, g2)?;
        for (x, (&y1, &y2)) in self.f1.iter().zip(&self.f2).enumerate() {
            if g1[y1] != g2[y2] {
                return Err(Error::InvalidEmbedding(format!("square fails to commute at {x}")));
            }
        }
        Ok(())
    }
}

/// Errors unless `f` is an injective map from `a` into `b` preserving and reflecting every relation.
pub fn check_embedding(a: &RelationalStructure, b: &RelationalStructure, f: &[usize]) -> Result<()> {
    if !a.same_signature(b) {
        return Err(Error::SignatureMismatch("embedding between different signatures".into()));
    }
    if f.len() != a.domain_size() {
        return Err(Error::InvalidEmbedding(format!("map has {} entries for {} points", f.len(), a.domain_size())));
    }
    let mut seen = BTreeSet::new();
    for &y in f {
        if y >= b.domain_size() || !seen.insert(y) {
            return Err(Error::InvalidEmbedding(format!("map {f:?} is not injective into 0..{}", b.domain_size())));
        }
    }
    let mut buf = Vec::new();
    for (r, sym) in a.signature().relations().iter().enumerate() {
        let mut bad = None;
        for_each_tuple(a.domain_size(), sym.arity, &mut buf, &mut |t| {
            if bad.is_none() {
                let img: Vec<usize> = t.iter().map(|&x| f[x]).collect();
                if a.holds(r, t) != b.holds(r, &img) {
                    bad = Some(t.to_vec());
                }
            }
        });
        if let Some(t) = bad {
            return Err(Error::InvalidEmbedding(format!("relation {} differs on {t:?}", sym.name)));
        }
    }
    Ok(())
}

/// Free amalgam: the points of `B1`, then those of `B2` outside `f2(A)` in increasing order,
/// carrying exactly the tuples of the two images.
pub fn free_amalgam(
    a: &RelationalStructure,
    b1: &RelationalStructure,
    f1: &[usize],
    b2: &RelationalStructure,
    f2: &[usize],
) -> Result<RelationalStructure> {
    Ok(free_amalgam_with_maps(a, b1, f1, b2, f2)?.0)
}

/// [`free_amalgam`] together with the embedding of `B2` (the one of `B1` is the identity).
pub fn free_amalgam_with_maps(
    a: &RelationalStructure,
    b1: &RelationalStructure,
    f1: &[usize],
    b2: &RelationalStructure,
    f2: &[usize],
) -> Result<(RelationalStructure, Vec<usize>)> {
    check_embedding(a, b1, f1)?;
    check_embedding(a, b2, f2)?;
    let g2 = glue_map(b1.domain_size(), b2.domain_size(), f1, f2, &[]);
    let n = b1.domain_size() + b2.domain_size() - a.domain_size();
    let mut c = RelationalStructure::new(Arc::clone(b1.signature_arc()), n)?;
    for r in 0..b1.signature().len() {
        for t in b1.table(r).tuples() {
            c.add(r, &t)?;
        }
        for t in b2.table(r).tuples() {
            let img: Vec<usize> = t.iter().map(|&x| g2[x]).collect();
            c.add(r, &img)?;
        }
    }
    Ok((c, g2))
}

/// Map of `B2` into the glued domain: `f2(a) -> f1(a)`, identified points to their partner,
/// everything else to fresh indices after `B1` in increasing order.
fn glue_map(n1: usize, n2: usize, f1: &[usize], f2: &[usize], ident: &[(usize, usize)]) -> Vec<usize> {
    let mut g2 = vec![usize::MAX; n2];
    for (&x1, &x2) in f1.iter().zip(f2) {
        g2[x2] = x1;
    }
    for &(y2, y1) in ident {
        g2[y2] = y1;
    }
    let mut next = n1;
    for slot in g2.iter_mut() {
        if *slot == usize::MAX {
            *slot = next;
            next += 1;
        }
    }
    g2
}

/// A partially specified amalgam: the `B1` points are `0..n1`, `B2` enters via `g2`.
struct Glue<'a> {
    b1: &'a RelationalStructure,
    b2: &'a RelationalStructure,
    g2: &'a [usize],
    n: usize,
}

impl Glue<'_> {
    fn in_b1(&self, t: &[usize]) -> bool {
        t.iter().all(|&x| x < self.b1.domain_size())
    }

    fn in_b2(&self, img: &[bool], t: &[usize]) -> bool {
        t.iter().all(|&x| img[x])
    }

    fn b2_image_mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.n];
        for &y in self.g2 {
            m[y] = true;
        }
        m
    }

    /// Both sides agree on every tuple inside the overlap of the two images.
    fn consistent(&self) -> bool {
        let n1 = self.b1.domain_size();
        let shared: Vec<usize> = (0..self.b2.domain_size()).filter(|&x| self.g2[x] < n1).collect();
        let mut buf = Vec::new();
        for (r, sym) in self.b1.signature().relations().iter().enumerate() {
            let mut ok = true;
            for_each_tuple(shared.len(), sym.arity, &mut buf, &mut |t| {
                if ok {
                    let in2: Vec<usize> = t.iter().map(|&i| shared[i]).collect();
                    let in1: Vec<usize> = in2.iter().map(|&x| self.g2[x]).collect();
                    ok = self.b2.holds(r, &in2) == self.b1.holds(r, &in1);
                }
            });
            if !ok {
                return false;
            }
        }
        true
    }

    /// Structure carrying the tuples both sides force.
    fn forced(&self) -> Result<RelationalStructure> {
        let mut c = RelationalStructure::new(Arc::clone(self.b1.signature_arc()), self.n)?;
        for r in 0..self.b1.signature().len() {
            for t in self.b1.table(r).tuples() {
                c.add(r, &t)?;
            }
            for t in self.b2.table(r).tuples() {
                let img: Vec<usize> = t.iter().map(|&x| self.g2[x]).collect();
                c.add(r, &img)?;
            }
        }
        Ok(c)
    }

    /// Pairs `u < v` that neither side decides.
    fn free_pairs(&self) -> Vec<(usize, usize)> {
        let img = self.b2_image_mask();
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.in_b1(&[u, v]) && !self.in_b2(&img, &[u, v]) {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

const MASK_BITS_LIMIT: usize = 24;

fn complete(spec: &ClassSpec, glue: &Glue) -> Result<Option<RelationalStructure>> {
    match spec.kind() {
        ClassKind::Superposition { .. } => {
            let (l, ln, r, rn) = spec.components().expect("superposition has parts");
            let (l1, l2) = (spec.side(glue.b1, l, ln)?, spec.side(glue.b2, l, ln)?);
            let (r1, r2) = (spec.side(glue.b1, r, rn)?, spec.side(glue.b2, r, rn)?);
            let left = complete(l, &Glue { b1: &l1, b2: &l2, g2: glue.g2, n: glue.n })?;
            let Some(left) = left else { return Ok(None) };
            let right = complete(r, &Glue { b1: &r1, b2: &r2, g2: glue.g2, n: glue.n })?;
            let Some(right) = right else { return Ok(None) };
            let c = spec.combine(&left, &right)?;
            Ok(spec.contains(&c).then_some(c))
        }
        ClassKind::LinearOrders | ClassKind::MultiOrders { .. } => {
            let mut c = glue.forced()?;
            for r in 0..c.signature().len() {
                let Some(order) = least_linear_extension(&c, r) else {
                    return Ok(None);
                };
                for (i, &u) in order.iter().enumerate() {
                    for &v in &order[i + 1..] {
                        c.add(r, &[u, v])?;
                    }
                }
            }
            Ok(spec.contains(&c).then_some(c))
        }
        ClassKind::CRelations => complete_c_relation(spec, glue),
        ClassKind::Tournaments => {
            let base = glue.forced()?;
            let free = glue.free_pairs();
            search_masks(spec, &base, &free, |c, (u, v), bit| c.add(0, &if bit { [v, u] } else { [u, v] }))
        }
        _ => {
            let base = glue.forced()?;
            let free = glue.free_pairs();
            search_masks(spec, &base, &free, |c, (u, v), bit| {
                if bit {
                    c.add(0, &[u, v])?;
                    c.add(0, &[v, u])?;
                }
                Ok(())
            })
        }
    }
}

/// Tries every assignment of the free pairs, ascending as a binary number.
fn search_masks(
    spec: &ClassSpec,
    base: &RelationalStructure,
    free: &[(usize, usize)],
    apply: impl Fn(&mut RelationalStructure, (usize, usize), bool) -> Result<()>,
) -> Result<Option<RelationalStructure>> {
    if free.len() > MASK_BITS_LIMIT {
        return Err(Error::size("undecided pairs in amalgam search", MASK_BITS_LIMIT, free.len()));
    }
    for mask in 0u64..1 << free.len() {
        let mut c = base.clone();
        for (i, &p) in free.iter().enumerate() {
            apply(&mut c, p, mask >> i & 1 == 1)?;
        }
        if spec.contains(&c) {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Least-first topological order of relation `r`, or `None` on a cycle.
fn least_linear_extension(c: &RelationalStructure, r: usize) -> Option<Vec<usize>> {
    let n = c.domain_size();
    let mut indeg = vec![0usize; n];
    for t in c.table(r).tuples() {
        indeg[t[1]] += 1;
    }
    let mut heap: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(u)) = heap.pop() {
        order.push(u);
        for v in 0..n {
            if c.holds(r, &[u, v]) {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    heap.push(Reverse(v));
                }
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Inserts the new points into the tree of `B1` and keeps trees whose restriction to the image of `B2` is `B2`.
fn complete_c_relation(spec: &ClassSpec, glue: &Glue) -> Result<Option<RelationalStructure>> {
    let n1 = glue.b1.domain_size();
    if n1 == 0 || glue.n == 0 {
        let c = glue.forced()?;
        return Ok(spec.contains(&c).then_some(c));
    }
    let t1 = tree_of_c_relation(&CRelation::from_structure(glue.b1)?)?;
    let gamma2 = CRelation::from_structure(glue.b2)?;
    let mut inv = vec![None; glue.n];
    for (x, &y) in glue.g2.iter().enumerate() {
        inv[y] = Some(x);
    }
    let agrees = |tree: &Tree, present: usize| -> bool {
        let paths = leaf_paths(tree, glue.n);
        let pts: Vec<(usize, usize)> = (0..present).filter_map(|y| inv[y].map(|x| (y, x))).collect();
        for &(ya, xa) in &pts {
            for &(yb, xb) in &pts {
                for &(yc, xc) in &pts {
                    if ya == yb || yb == yc || ya == yc {
                        continue;
                    }
                    let holds = meet_depth(&paths[ya], &paths[yb]) > meet_depth(&paths[ya], &paths[yc]);
                    if holds != gamma2.holds(xa, xb, xc) {
                        return false;
                    }
                }
            }
        }
        true
    };
    let mut level = vec![t1.root().clone()];
    for x in n1..glue.n {
        let mut next = Vec::new();
        for t in &level {
            let mut grown = Vec::new();
            insert_everywhere(t, x, &mut grown);
            next.extend(grown.into_iter().filter(|g| agrees(g, x + 1)));
        }
        if next.is_empty() {
            return Ok(None);
        }
        level = next;
    }
    let tree = crate::rigid::ctree::RootedBinaryTree::new(level.swap_remove(0))?;
    let c = crate::rigid::ctree::c_relation_of_tree(&tree).to_structure()?;
    Ok((spec.contains(&c) && agrees(tree.root(), glue.n)).then_some(c))
}

/// Injective partial maps from `B2`-only points to `B1`-only points, by size then lexicographically.
fn identification_patterns(only1: &[usize], only2: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let mut out = vec![Vec::new()];
    let max = only1.len().min(only2.len());
    for k in 1..=max {
        for_each_subset(only2.len(), k, |src| {
            for_each_subset(only1.len(), k, |dst| {
                crate::enumerate::for_each_permutation(dst, |p| {
                    out.push(src.iter().zip(p).map(|(&i, &j)| (only2[i], only1[j])).collect());
                });
            });
        });
    }
    out
}

/// Searches for an amalgam of `f1: A -> B1`, `f2: A -> B2` in the class.
pub fn solve_amalgamation(
    spec: &ClassSpec,
    a: &RelationalStructure,
    b1: &RelationalStructure,
    f1: &[usize],
    b2: &RelationalStructure,
    f2: &[usize],
    strong: bool,
) -> Result<AmalgamationWitness> {
    check_embedding(a, b1, f1)?;
    check_embedding(a, b2, f2)?;
    let (n1, n2) = (b1.domain_size(), b2.domain_size());
    let only1: Vec<usize> = (0..n1).filter(|x| !f1.contains(x)).collect();
    let only2: Vec<usize> = (0..n2).filter(|x| !f2.contains(x)).collect();
    let patterns = if strong {
        vec![Vec::new()]
    } else {
        identification_patterns(&only1, &only2)
    };
    let mut verdict = None;
    for ident in patterns {
        let g2 = glue_map(n1, n2, f1, f2, &ident);
        let n = n1 + n2 - a.domain_size() - ident.len();
        let glue = Glue { b1, b2, g2: &g2, n };
        if !glue.consistent() {
            continue;
        }
        if let Some(c) = complete(spec, &glue)? {
            verdict = Some(AmalgamVerdict::Solved {
                c,
                g1: (0..n1).collect(),
                g2,
            });
            break;
        }
    }
    // Hereditary classes cannot gain from extra points: deleting them leaves an amalgam.
    let bound = if matches!(spec.kind(), ClassKind::EvenEdges) {
        n1 + n2 - a.domain_size()
    } else {
        n1 + n2
    };
    Ok(AmalgamationWitness {
        a: a.clone(),
        b1: b1.clone(),
        b2: b2.clone(),
        f1: f1.to_vec(),
        f2: f2.to_vec(),
        verdict: verdict.unwrap_or(AmalgamVerdict::UnsolvableUpTo { bound }),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HereditaryWitness {
    #[serde(with = "as_document")]
    pub member: RelationalStructure,
    pub subset: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HereditaryReport {
    pub n: usize,
    pub holds: bool,
    pub members_checked: usize,
    pub witness: Option<HereditaryWitness>,
}

/// Checks that induced substructures of members on at most `n` points are members.
pub fn check_hereditary(spec: &ClassSpec, n: usize, exec: Execution) -> Result<HereditaryReport> {
    if n > HEREDITARY_LIMIT {
        return Err(Error::size("hereditary check size", HEREDITARY_LIMIT, n));
    }
    let members = spec.catalog(n, exec)?;
    let found = par::map(exec, &members, |m| -> Result<Option<Vec<usize>>> {
        let size = m.domain_size();
        for k in 1..size {
            let mut bad = None;
            for_each_subset(size, k, |s| {
                if bad.is_none() {
                    if let Ok(sub) = m.induced_substructure(s) {
                        if !spec.contains(&sub) {
                            bad = Some(s.to_vec());
                        }
                    }
                }
            });
            if bad.is_some() {
                return Ok(bad);
            }
        }
        Ok(None)
    });
    let mut witness = None;
    for (m, f) in members.iter().zip(found) {
        if let Some(subset) = f? {
            witness = Some(HereditaryWitness {
                member: m.clone(),
                subset,
            });
            break;
        }
    }
    Ok(HereditaryReport {
        n,
        holds: witness.is_none(),
        members_checked: members.len(),
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmalgamationReport {
    pub n: usize,
    pub strong: bool,
    pub holds: bool,
    pub instances: usize,
    /// The first unsolvable instance in catalog order.
    pub witness: Option<AmalgamationWitness>,
}

/// Least element of the orbit of `items` (sorted) under the group, by size then lexicographically.
fn set_orbit_min(gens: &[Perm], set: &[usize]) -> Vec<usize> {
    let start: Vec<usize> = set.to_vec();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([start.clone()]);
    let mut stack = vec![start];
    while let Some(s) = stack.pop() {
        for g in gens {
            let mut img: Vec<usize> = s.iter().map(|&x| g[x]).collect();
            img.sort_unstable();
            if seen.insert(img.clone()) {
                stack.push(img);
            }
        }
    }
    seen.into_iter().next().expect("orbit contains the start")
}

fn tuple_orbit_min(gens: &[Perm], tuple: &[usize]) -> Vec<usize> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([tuple.to_vec()]);
    let mut stack = vec![tuple.to_vec()];
    while let Some(t) = stack.pop() {
        for g in gens {
            let img: Vec<usize> = t.iter().map(|&x| g[x]).collect();
            if seen.insert(img.clone()) {
                stack.push(img);
            }
        }
    }
    seen.into_iter().next().expect("orbit contains the start")
}

/// Every instance `(A ⊆ B1, f2: A -> B2)` over members of size at most `n`, up to the
/// automorphisms of `B1` (on subsets) and `B2` (on embeddings); `A` nonempty.
fn instances_for(
    spec: &ClassSpec,
    b1: &RelationalStructure,
    catalog: &[(RelationalStructure, Vec<Perm>)],
) -> Result<Vec<(RelationalStructure, Vec<usize>, usize, Vec<usize>)>> {
    let gens1 = automorphisms(b1)?.generators;
    let mut out = Vec::new();
    for k in 1..=b1.domain_size() {
        let mut subsets = Vec::new();
        for_each_subset(b1.domain_size(), k, |s| {
            if set_orbit_min(&gens1, s) == s {
                subsets.push(s.to_vec());
            }
        });
        for s in subsets {
            let a = b1.induced_substructure(&s)?;
            if !spec.contains(&a) {
                continue;
            }
            for (j, (b2, gens2)) in catalog.iter().enumerate() {
                if b2.domain_size() < k {
                    continue;
                }
                for e in all_embeddings(&a, b2)? {
                    if tuple_orbit_min(gens2, &e) == e {
                        out.push((a.clone(), s.clone(), j, e));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Checks (strong) amalgamation over all members of size at most `n`.
pub fn check_ap(spec: &ClassSpec, n: usize, strong: bool, exec: Execution) -> Result<AmalgamationReport> {
    if n > AMALGAMATION_LIMIT {
        return Err(Error::size("amalgamation check size", AMALGAMATION_LIMIT, n));
    }
    let members = spec.catalog(n, exec)?;
    let catalog: Vec<(RelationalStructure, Vec<Perm>)> = members
        .iter()
        .map(|m| Ok((m.clone(), automorphisms(m)?.generators)))
        .collect::<Result<_>>()?;
    let per_b1 = par::map(exec, &members, |b1| -> Result<(usize, Option<AmalgamationWitness>)> {
        let inst = instances_for(spec, b1, &catalog)?;
        let count = inst.len();
        for (a, f1, j, f2) in inst {
            let w = solve_amalgamation(spec, &a, b1, &f1, &catalog[j].0, &f2, strong)?;
            if matches!(w.verdict, AmalgamVerdict::UnsolvableUpTo { .. }) {
                return Ok((count, Some(w)));
            }
        }
        Ok((count, None))
    });
    let mut instances = 0;
    let mut witness = None;
    for r in per_b1 {
        let (count, w) = r?;
        instances += count;
        if witness.is_none() {
            witness = w;
        }
    }
    Ok(AmalgamationReport {
        n,
        strong,
        holds: witness.is_none(),
        instances,
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JointEmbeddingReport {
    pub n: usize,
    pub holds: bool,
    pub pairs: usize,
    /// An unsolvable pair, as an amalgamation over the empty structure.
    pub witness: Option<AmalgamationWitness>,
}

/// Checks joint embedding for all pairs of members of size at most `n`, hosts up to `2n` points.
pub fn check_jep(spec: &ClassSpec, n: usize, exec: Execution) -> Result<JointEmbeddingReport> {
    if n > AMALGAMATION_LIMIT {
        return Err(Error::size("joint embedding check size", AMALGAMATION_LIMIT, n));
    }
    let members = spec.catalog(n, exec)?;
    let empty = RelationalStructure::new(Arc::clone(spec.signature()), 0)?;
    let pairs: Vec<(usize, usize)> = (0..members.len()).flat_map(|i| (i..members.len()).map(move |j| (i, j))).collect();
    let results = par::map(exec, &pairs, |&(i, j)| {
        solve_amalgamation(spec, &empty, &members[i], &[], &members[j], &[], false)
    });
    let mut witness = None;
    for r in results {
        let w = r?;
        if witness.is_none() && matches!(w.verdict, AmalgamVerdict::UnsolvableUpTo { .. }) {
            witness = Some(w);
        }
    }
    Ok(JointEmbeddingReport {
        n,
        holds: witness.is_none(),
        pairs: pairs.len(),
        witness,
    })
}
