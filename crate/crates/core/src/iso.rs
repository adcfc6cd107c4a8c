//! Backtracking isomorphism, embedding and automorphism search.
//!
//! Domains are limited to 64 points so candidate sets fit in one `u64`.
//! Binary relations are handled by forward checking on candidate masks;
//! relations of arity three or more are checked when a point is assigned.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{self, Perm, PermGroupDescription, UnionFind};
use crate::refine;
use crate::structure::{for_each_tuple, RelationalStructure};

/// Largest domain the matcher accepts.
pub const MATCH_LIMIT: usize = 64;
/// Largest domain for which automorphism groups are computed.
pub const GROUP_LIMIT: usize = 30;

/// An injective finite map between two domains, stored as `(source, target)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartialIsomorphism {
    pub pairs: Vec<(usize, usize)>,
}

impl PartialIsomorphism {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        PartialIsomorphism { pairs }
    }

    /// The map `x[i] -> y[i]`.
    pub fn from_tuples(x: &[usize], y: &[usize]) -> Self {
        PartialIsomorphism {
            pairs: x.iter().copied().zip(y.iter().copied()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn domain(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    pub fn image(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.1).collect()
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        self.pairs.iter().find(|p| p.0 == x).map(|p| p.1)
    }

    pub fn inverse(&self) -> Self {
        PartialIsomorphism {
            pairs: self.pairs.iter().map(|&(a, b)| (b, a)).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut d = self.domain();
        let mut i = self.image();
        d.sort_unstable();
        i.sort_unstable();
        d.windows(2).all(|w| w[0] != w[1]) && i.windows(2).all(|w| w[0] != w[1])
    }

    /// Checks injectivity and that every relation is preserved and reflected.
    pub fn verify(&self, source: &RelationalStructure, target: &RelationalStructure) -> Result<()> {
        if !source.same_signature(target) {
            return Err(Error::SignatureMismatch(format!(
                "{} vs {}",
                source.signature(),
                target.signature()
            )));
        }
        if !self.is_injective() {
            return Err(Error::InvalidEmbedding("map is not injective".into()));
        }
        for &(a, b) in &self.pairs {
            if a >= source.domain_size() {
                return Err(Error::InvalidVertex {
                    vertex: a,
                    domain: source.domain_size(),
                });
            }
            if b >= target.domain_size() {
                return Err(Error::InvalidVertex {
                    vertex: b,
                    domain: target.domain_size(),
                });
            }
        }
        let d = self.pairs.len();
        let mut idx = Vec::new();
        for (r, rel) in source.signature().relations().iter().enumerate() {
            let mut bad = None;
            for_each_tuple(d, rel.arity, &mut idx, &mut |t| {
                if bad.is_some() {
                    return;
                }
                let x: Vec<usize> = t.iter().map(|&i| self.pairs[i].0).collect();
                let y: Vec<usize> = t.iter().map(|&i| self.pairs[i].1).collect();
                if source.holds(r, &x) != target.holds(r, &y) {
                    bad = Some(x);
                }
            });
            if let Some(x) = bad {
                return Err(Error::InvalidEmbedding(format!(
                    "relation {} not preserved at {x:?}",
                    rel.name
                )));
            }
        }
        Ok(())
    }
}

/// Precomputed adjacency masks of one structure.
pub(crate) struct Prepared<'a> {
    pub s: &'a RelationalStructure,
    pub n: usize,
    pub colours: Vec<u64>,
    /// Per binary relation: out-neighbour and in-neighbour masks.
    out: Vec<Vec<u64>>,
    inn: Vec<Vec<u64>>,
    higher: Vec<usize>,
}

impl<'a> Prepared<'a> {
    pub fn new(s: &'a RelationalStructure, colours: Vec<u64>) -> Result<Self> {
        let n = s.domain_size();
        if n > MATCH_LIMIT {
            return Err(Error::size("matcher domain", MATCH_LIMIT, n));
        }
        let mut out = Vec::new();
        let mut inn = Vec::new();
        let mut higher = Vec::new();
        for (r, t) in s.tables().iter().enumerate() {
            match t.arity() {
                1 => {}
                2 => {
                    let mut o = vec![0u64; n];
                    let mut i = vec![0u64; n];
                    for tuple in t.tuples() {
                        o[tuple[0]] |= 1 << tuple[1];
                        i[tuple[1]] |= 1 << tuple[0];
                    }
                    out.push(o);
                    inn.push(i);
                }
                _ => higher.push(r),
            }
        }
        Ok(Prepared {
            s,
            n,
            colours,
            out,
            inn,
            higher,
        })
    }

    pub fn refined(s: &'a RelationalStructure) -> Result<Self> {
        if s.domain_size() > MATCH_LIMIT {
            return Err(Error::size("matcher domain", MATCH_LIMIT, s.domain_size()));
        }
        Prepared::new(s, refine::refined_colours(s))
    }

    pub fn local(s: &'a RelationalStructure) -> Result<Self> {
        if s.domain_size() > MATCH_LIMIT {
            return Err(Error::size("matcher domain", MATCH_LIMIT, s.domain_size()));
        }
        Prepared::new(s, refine::local_colours(s))
    }

    fn link_mask(&self, v: usize) -> u64 {
        self.out
            .iter()
            .zip(&self.inn)
            .fold(0, |acc, (o, i)| acc | o[v] | i[v])
    }

    fn class_mask(&self, colour: u64) -> u64 {
        (0..self.n)
            .filter(|&v| self.colours[v] == colour)
            .fold(0, |acc, v| acc | 1 << v)
    }

    /// Search order: start in the smallest colour class, then repeatedly take
    /// the point most linked to those already chosen, ties by class size then
    /// index. Points in `first` come before everything else, in that order.
    pub fn static_order(&self, first: &[usize]) -> Vec<usize> {
        let class_size: Vec<usize> = (0..self.n)
            .map(|v| self.colours.iter().filter(|&&c| c == self.colours[v]).count())
            .collect();
        let mut chosen = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        for &v in first {
            chosen[v] = true;
            order.push(v);
        }
        let mut links = vec![0usize; self.n];
        for (v, l) in links.iter_mut().enumerate() {
            *l = order.iter().filter(|&&u| self.link_mask(u) >> v & 1 == 1).count();
        }
        while order.len() < self.n {
            let v = (0..self.n)
                .filter(|&v| !chosen[v])
                .min_by_key(|&v| (usize::MAX - links[v], class_size[v], v))
                .expect("unchosen point remains");
            chosen[v] = true;
            order.push(v);
            let m = self.link_mask(v);
            for (w, l) in links.iter_mut().enumerate() {
                if m >> w & 1 == 1 {
                    *l += 1;
                }
            }
        }
        order
    }
}

/// Depth-first matcher from `src` into `dst`.
pub(crate) struct Matcher<'p, 'a> {
    src: &'p Prepared<'a>,
    dst: &'p Prepared<'a>,
    order: Vec<usize>,
    map: Vec<usize>,
    used: u64,
    cands: Vec<Vec<u64>>,
    scratch: Vec<usize>,
}

impl<'p, 'a> Matcher<'p, 'a> {
    /// `initial[x]` is the candidate mask for source point `x`.
    pub fn new(src: &'p Prepared<'a>, dst: &'p Prepared<'a>, order: Vec<usize>, initial: Vec<u64>) -> Self {
        let depth = order.len();
        let mut cands = vec![vec![0u64; src.n]; depth + 1];
        cands[0] = initial;
        Matcher {
            src,
            dst,
            order,
            map: vec![usize::MAX; src.n],
            used: 0,
            cands,
            scratch: Vec::new(),
        }
    }

    fn higher_ok(&mut self, depth: usize) -> bool {
        if self.src.higher.is_empty() {
            return true;
        }
        let d = depth + 1;
        let mut a = Vec::new();
        let mut b = Vec::new();
        for &r in &self.src.higher {
            let k = self.src.s.table(r).arity();
            let mut ok = true;
            let (order, map, src, dst) = (&self.order, &self.map, self.src.s, self.dst.s);
            for_each_tuple(d, k, &mut self.scratch, &mut |t| {
                if !ok || !t.iter().any(|&i| i == depth) {
                    return;
                }
                a.clear();
                b.clear();
                a.extend(t.iter().map(|&i| order[i]));
                b.extend(a.iter().map(|&v| map[v]));
                if src.holds(r, &a) != dst.holds(r, &b) {
                    ok = false;
                }
            });
            if !ok {
                return false;
            }
        }
        true
    }

    /// Runs the search, calling `visit` on each complete map until it returns `true`.
    pub fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        self.rec(0, visit)
    }

    fn rec(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(&self.map);
        }
        let x = self.order[depth];
        let mut c = self.cands[depth][x] & !self.used;
        while c != 0 {
            let y = c.trailing_zeros() as usize;
            c &= c - 1;
            self.map[x] = y;
            self.used |= 1 << y;
            if self.higher_ok(depth) && self.forward(depth, x, y) && self.rec(depth + 1, visit) {
                return true;
            }
            self.map[x] = usize::MAX;
            self.used &= !(1 << y);
        }
        false
    }

    fn forward(&mut self, depth: usize, x: usize, y: usize) -> bool {
        let (head, tail) = self.cands.split_at_mut(depth + 1);
        let cur = &head[depth];
        let next = &mut tail[0];
        for &z in &self.order[depth + 1..] {
            let mut m = cur[z];
            for r in 0..self.src.out.len() {
                let so = self.src.out[r][x] >> z & 1 == 1;
                let si = self.src.inn[r][x] >> z & 1 == 1;
                let dout = self.dst.out[r][y];
                let dinn = self.dst.inn[r][y];
                m &= if so { dout } else { !dout };
                m &= if si { dinn } else { !dinn };
            }
            if m & !self.used == 0 {
                return false;
            }
            next[z] = m;
        }
        true
    }
}

/// A relation-preserving bijection `S -> T` (`map[x]` is the image of `x`), if any.
pub fn are_isomorphic(s: &RelationalStructure, t: &RelationalStructure) -> Result<Option<Perm>> {
    if !s.same_signature(t) {
        return Err(Error::SignatureMismatch(format!("{} vs {}", s.signature(), t.signature())));
    }
    if s.domain_size() != t.domain_size() {
        return Ok(None);
    }
    let counts_match = s
        .tables()
        .iter()
        .zip(t.tables())
        .all(|(a, b)| a.len() == b.len());
    if !counts_match {
        return Ok(None);
    }
    let ps = Prepared::refined(s)?;
    let pt = Prepared::refined(t)?;
    let mut cs = ps.colours.clone();
    let mut ct = pt.colours.clone();
    cs.sort_unstable();
    ct.sort_unstable();
    if cs != ct {
        return Ok(None);
    }
    let initial = (0..ps.n).map(|x| pt.class_mask(ps.colours[x])).collect();
    let order = ps.static_order(&[]);
    let mut found = None;
    Matcher::new(&ps, &pt, order, initial).run(&mut |m| {
        found = Some(m.to_vec());
        true
    });
    Ok(found)
}

/// Candidate masks for embeddings: same diagonal type, optionally pinned points.
fn embedding_candidates(pa: &Prepared, pb: &Prepared, fixed: &[(usize, usize)]) -> Vec<u64> {
    let mut initial: Vec<u64> = (0..pa.n).map(|x| pb.class_mask(pa.colours[x])).collect();
    for &(a, b) in fixed {
        initial[a] &= 1 << b;
    }
    initial
}

fn check_fixed(a: &RelationalStructure, b: &RelationalStructure, fixed: &[(usize, usize)]) -> Result<()> {
    if !a.same_signature(b) {
        return Err(Error::SignatureMismatch(format!("{} vs {}", a.signature(), b.signature())));
    }
    for &(x, y) in fixed {
        if x >= a.domain_size() {
            return Err(Error::InvalidVertex {
                vertex: x,
                domain: a.domain_size(),
            });
        }
        if y >= b.domain_size() {
            return Err(Error::InvalidVertex {
                vertex: y,
                domain: b.domain_size(),
            });
        }
    }
    Ok(())
}

/// Least-first search for an embedding of `a` into `b` as an induced substructure,
/// extending the pinned pairs in `fixed`.
pub fn extend_embedding(
    a: &RelationalStructure,
    b: &RelationalStructure,
    fixed: &[(usize, usize)],
) -> Result<Option<Vec<usize>>> {
    check_fixed(a, b, fixed)?;
    if a.domain_size() > b.domain_size() {
        return Ok(None);
    }
    let pa = Prepared::local(a)?;
    let pb = Prepared::local(b)?;
    let initial = embedding_candidates(&pa, &pb, fixed);
    let first: Vec<usize> = fixed.iter().map(|p| p.0).collect();
    let mut order = first.clone();
    order.extend((0..pa.n).filter(|v| !first.contains(v)));
    let mut found = None;
    Matcher::new(&pa, &pb, order, initial).run(&mut |m| {
        found = Some(m.to_vec());
        true
    });
    Ok(found)
}

/// An embedding of `a` into `b` as an induced substructure, if one exists.
pub fn find_embedding(a: &RelationalStructure, b: &RelationalStructure) -> Result<Option<Vec<usize>>> {
    extend_embedding(a, b, &[])
}

/// Every embedding of `a` into `b`, in lexicographic order of image vectors.
pub fn all_embeddings(a: &RelationalStructure, b: &RelationalStructure) -> Result<Vec<Vec<usize>>> {
    check_fixed(a, b, &[])?;
    if a.domain_size() > b.domain_size() {
        return Ok(Vec::new());
    }
    let pa = Prepared::local(a)?;
    let pb = Prepared::local(b)?;
    let initial = embedding_candidates(&pa, &pb, &[]);
    let order: Vec<usize> = (0..pa.n).collect();
    let mut all = Vec::new();
    Matcher::new(&pa, &pb, order, initial).run(&mut |m| {
        all.push(m.to_vec());
        false
    });
    Ok(all)
}

/// Automorphism search state: a structure prepared once and searched repeatedly.
pub(crate) struct AutSearch<'a> {
    p: Prepared<'a>,
}

impl<'a> AutSearch<'a> {
    pub fn new(s: &'a RelationalStructure) -> Result<Self> {
        if s.domain_size() > GROUP_LIMIT {
            return Err(Error::size("automorphism group domain", GROUP_LIMIT, s.domain_size()));
        }
        Ok(AutSearch {
            p: Prepared::refined(s)?,
        })
    }

    /// An automorphism sending `order[i]` to `images[i]` for each `i < images.len()`.
    fn find(&self, order: &[usize], images: &[usize]) -> Option<Perm> {
        let n = self.p.n;
        let mut initial: Vec<u64> = (0..n).map(|x| self.p.class_mask(self.p.colours[x])).collect();
        for (&x, &y) in order.iter().zip(images) {
            initial[x] &= 1 << y;
        }
        let mut found = None;
        Matcher::new(&self.p, &self.p, order.to_vec(), initial).run(&mut |m| {
            found = Some(m.to_vec());
            true
        });
        found
    }

    /// Generators and order of the pointwise stabiliser of `fixed`.
    ///
    /// Works down a base from its deepest point: at level `i` every candidate
    /// image of the base point outside the orbit found so far is tried, and
    /// the order is the product of the orbit lengths.
    pub fn group(&self, fixed: &[usize]) -> PermGroupDescription {
        let n = self.p.n;
        let order = self.p.static_order(fixed);
        let mut gens: Vec<Perm> = Vec::new();
        let mut group_order: u128 = 1;
        for i in (fixed.len()..n).rev() {
            let b = order[i];
            let mut orbit = orbit_of(n, &gens, b);
            let colour = self.p.colours[b];
            for v in 0..n {
                if orbit[v] || self.p.colours[v] != colour || order[..i].contains(&v) {
                    continue;
                }
                let mut images = order[..i].to_vec();
                images.push(v);
                if let Some(g) = self.find(&order, &images) {
                    gens.push(g);
                    orbit = orbit_of(n, &gens, b);
                }
            }
            group_order *= orbit.iter().filter(|&&o| o).count() as u128;
        }
        gens.reverse();
        PermGroupDescription {
            degree: n,
            generators: gens,
            order: group_order,
        }
    }
}

fn orbit_of(n: usize, gens: &[Perm], b: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[b] = true;
    let mut stack = vec![b];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g[x];
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

/// The automorphism group of `s` with an exact order (`n <= 30`).
pub fn automorphisms(s: &RelationalStructure) -> Result<PermGroupDescription> {
    Ok(AutSearch::new(s)?.group(&[]))
}

/// The pointwise stabiliser of `fixed` in the automorphism group of `s`.
pub fn stabiliser(s: &RelationalStructure, fixed: &[usize]) -> Result<PermGroupDescription> {
    let search = AutSearch::new(s)?;
    let mut seen = vec![false; s.domain_size()];
    for &v in fixed {
        if v >= s.domain_size() {
            return Err(Error::InvalidVertex {
                vertex: v,
                domain: s.domain_size(),
            });
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidInput(format!("vertex {v} repeated")));
        }
    }
    Ok(search.group(fixed))
}

pub fn is_automorphism(s: &RelationalStructure, p: &[usize]) -> bool {
    p.len() == s.domain_size() && perm::is_permutation(p) && s.relabel(p) == *s
}

/// Orbits of a permutation group on points, as a class label per point.
pub(crate) fn orbit_labels(n: usize, gens: &[Perm]) -> Vec<usize> {
    let mut uf = UnionFind::new(n);
    for g in gens {
        for (x, &y) in g.iter().enumerate() {
            uf.union(x, y);
        }
    }
    (0..n).map(|x| uf.find(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::structure::Signature;
    use std::sync::Arc;

    fn tournament(n: usize, arcs: &[(usize, usize)]) -> RelationalStructure {
        let sig = Arc::new(Signature::new([("T", 2)]).unwrap());
        RelationalStructure::from_tuples(sig, n, &[arcs.iter().map(|&(a, b)| vec![a, b]).collect()]).unwrap()
    }

    #[test]
    fn c5_has_dihedral_group() {
        let g = automorphisms(&named::cycle(5).to_structure()).unwrap();
        assert_eq!(g.order, 10);
        assert!(g.verify_order());
    }

    #[test]
    fn line_graph_of_k33() {
        let l = named::line_graph(&named::complete_bipartite(3, 3));
        let g = automorphisms(&l.to_structure()).unwrap();
        assert_eq!(g.order, 72);
        assert!(g.verify_order());
    }

    #[test]
    fn petersen_group() {
        let g = automorphisms(&named::petersen().to_structure()).unwrap();
        assert_eq!(g.order, 120);
    }

    #[test]
    fn cyclic_and_transitive_triangles_differ() {
        let cyc = tournament(3, &[(0, 1), (1, 2), (2, 0)]);
        let tr = tournament(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(are_isomorphic(&cyc, &tr).unwrap().is_none());
        assert_eq!(automorphisms(&cyc).unwrap().order, 3);
        assert_eq!(automorphisms(&tr).unwrap().order, 1);
    }

    #[test]
    fn isomorphism_of_relabelled_cycle() {
        let g = named::cycle(5).to_structure();
        let p = vec![2, 4, 1, 0, 3];
        let h = g.relabel(&p);
        let m = are_isomorphic(&g, &h).unwrap().unwrap();
        PartialIsomorphism::from_tuples(&[0, 1, 2, 3, 4], &m).verify(&g, &h).unwrap();
        assert!(are_isomorphic(&named::path(3).to_structure(), &named::complete(3).to_structure())
            .unwrap()
            .is_none());
    }

    #[test]
    fn embeddings_of_edge_in_triangle() {
        let k2 = named::complete(2).to_structure();
        let k3 = named::complete(3).to_structure();
        assert_eq!(all_embeddings(&k2, &k3).unwrap().len(), 6);
        assert_eq!(find_embedding(&k3, &named::cycle(5).to_structure()).unwrap(), None);
    }

    #[test]
    fn stabiliser_of_a_vertex_in_c5() {
        let s = named::cycle(5).to_structure();
        assert_eq!(stabiliser(&s, &[0]).unwrap().order, 2);
        assert_eq!(stabiliser(&s, &[0, 1]).unwrap().order, 1);
    }
}
