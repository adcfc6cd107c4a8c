//! Finite approximations of Fraïssé limits and age catalogs.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::class::{ClassKind, ClassSpec};
use crate::canon::canonical_code;
use crate::enumerate::for_each_subset;
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::structure::{as_document, RelationalStructure};

pub const STAGE_LIMIT: usize = 200;
pub const AGE_LIMIT: usize = 5;
pub const AGE_SUBSET_BUDGET: u64 = 5_000_000;
/// Largest size verified when measuring the age of an approximation.
pub const CENSUS_LEVEL_LIMIT: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Approximation {
    #[serde(with = "as_document")]
    pub structure: RelationalStructure,
    pub stages: usize,
    /// Largest `s` such that every one-point extension type over the first `s` points is realised outside them.
    pub window_level: usize,
    /// Largest `k <= 5` such that every member of size at most `k` embeds (checked by search).
    pub guaranteed_level: usize,
}

/// Growing structure with adjacency kept as a square boolean matrix.
struct Growth {
    kind: ClassKind,
    adj: Vec<Vec<bool>>,
}

impl Growth {
    fn n(&self) -> usize {
        self.adj.len()
    }

    /// Whether `z` (outside the window) realises `pattern` over the window.
    fn realises(&self, z: usize, pattern: &[bool]) -> bool {
        pattern.iter().enumerate().all(|(w, &p)| self.adj[z][w] == p)
    }

    fn clique_free_with(&self, nbrs: &[usize], k: usize) -> bool {
        // the new vertex closes a K_k iff its neighbourhood contains a K_{k-1}
        fn grow(adj: &[Vec<bool>], cand: &[usize], need: usize) -> bool {
            if need == 0 {
                return true;
            }
            for (i, &v) in cand.iter().enumerate() {
                let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&u| adj[u][v]).collect();
                if next.len() + 1 >= need && grow(adj, &next, need - 1) {
                    return true;
                }
            }
            false
        }
        !grow(&self.adj, nbrs, k - 1)
    }

    /// Extension patterns over the first `s` points allowed by the class.
    fn patterns(&self, s: usize) -> Vec<Vec<bool>> {
        (0..1u64 << s)
            .map(|m| (0..s).map(|i| m >> i & 1 == 1).collect::<Vec<bool>>())
            .filter(|p| match self.kind {
                ClassKind::KFree { k } => {
                    let nbrs: Vec<usize> = (0..s).filter(|&i| p[i]).collect();
                    self.clique_free_with(&nbrs, k)
                }
                _ => true,
            })
            .collect()
    }

    /// Adds a vertex realising `pattern` over the window; other relations are random where the class allows.
    fn add(&mut self, pattern: &[bool], rng: &mut ChaCha8Rng) {
        let n = self.n();
        let s = pattern.len();
        let mut row = vec![false; n + 1];
        row[..s].copy_from_slice(pattern);
        for z in s..n {
            let coin: bool = rng.random();
            row[z] = match self.kind {
                ClassKind::KFree { k } if coin => {
                    let mut nbrs: Vec<usize> = (0..z).filter(|&i| row[i]).collect();
                    nbrs.push(z);
                    self.clique_free_with(&nbrs, k)
                }
                _ => coin,
            };
        }
        for (z, r) in self.adj.iter_mut().enumerate() {
            // tournaments: row[z] means new -> z
            r.push(match self.kind {
                ClassKind::Tournaments => !row[z],
                _ => row[z],
            });
        }
        self.adj.push(row);
    }

    fn to_structure(&self, spec: &ClassSpec) -> Result<RelationalStructure> {
        let n = self.n();
        let mut s = RelationalStructure::new(Arc::clone(spec.signature()), n)?;
        for u in 0..n {
            for v in 0..n {
                if u != v && self.adj[u][v] {
                    s.add(0, &[u, v])?;
                }
            }
        }
        Ok(s)
    }
}

/// Builds a member of the class one point per stage, realising every extension type over
/// the first `s` points (for `s = 0, 1, 2, ...`) in a seeded shuffled order.
pub fn limit_approximation(spec: &ClassSpec, stages: usize, seed: u64) -> Result<Approximation> {
    if !matches!(spec.kind(), ClassKind::AllGraphs | ClassKind::KFree { .. } | ClassKind::Tournaments) {
        return Err(Error::InvalidInput(format!(
            "limit approximation supports graphs, K_k-free graphs and tournaments, not {}",
            spec.kind()
        )));
    }
    if stages > STAGE_LIMIT {
        return Err(Error::size("approximation stages", STAGE_LIMIT, stages));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Growth {
        kind: spec.kind().clone(),
        adj: Vec::new(),
    };
    let mut window_level = 0;
    let mut s = 0;
    'levels: while g.n() < stages {
        if s > g.n() {
            break;
        }
        let mut demands = g.patterns(s);
        demands.shuffle(&mut rng);
        for p in demands {
            if (s..g.n()).any(|z| g.realises(z, &p)) {
                continue;
            }
            if g.n() == stages {
                break 'levels;
            }
            g.add(&p, &mut rng);
        }
        window_level = s;
        s += 1;
    }
    // a level can also complete without new stages
    while s <= g.n() && g.patterns(s).iter().all(|p| (s..g.n()).any(|z| g.realises(z, p))) {
        window_level = s;
        s += 1;
    }
    let structure = g.to_structure(spec)?;
    let guaranteed_level = age_coverage(spec, &structure)?;
    Ok(Approximation {
        structure,
        stages,
        window_level,
        guaranteed_level,
    })
}

/// Largest `k <= 5` such that every class member on at most `k` points embeds in `s`.
pub fn age_coverage(spec: &ClassSpec, s: &RelationalStructure) -> Result<usize> {
    let mut level = 0;
    for k in 1..=CENSUS_LEVEL_LIMIT.min(s.domain_size()) {
        for m in spec.members(k, Execution::Sequential)? {
            if small_embedding(&m, s).is_none() {
                return Ok(level);
            }
        }
        level = k;
    }
    Ok(level)
}

/// Backtracking embedding search suited to a small pattern in a large host.
pub fn small_embedding(a: &RelationalStructure, b: &RelationalStructure) -> Option<Vec<usize>> {
    fn go(a: &RelationalStructure, b: &RelationalStructure, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = map.len();
        if i == a.domain_size() {
            return true;
        }
        for y in 0..b.domain_size() {
            if used[y] {
                continue;
            }
            map.push(y);
            if consistent_last(a, b, map) {
                used[y] = true;
                if go(a, b, map, used) {
                    return true;
                }
                used[y] = false;
            }
            map.pop();
        }
        false
    }
    if !a.same_signature(b) || a.domain_size() > b.domain_size() {
        return None;
    }
    let mut map = Vec::new();
    let mut used = vec![false; b.domain_size()];
    go(a, b, &mut map, &mut used).then_some(map)
}

/// Checks every tuple over the mapped prefix that uses the newest point.
fn consistent_last(a: &RelationalStructure, b: &RelationalStructure, map: &[usize]) -> bool {
    let last = map.len() - 1;
    let mut buf = Vec::new();
    for (r, sym) in a.signature().relations().iter().enumerate() {
        let mut ok = true;
        crate::structure::for_each_tuple(map.len(), sym.arity, &mut buf, &mut |t| {
            if ok && t.contains(&last) {
                let img: Vec<usize> = t.iter().map(|&x| map[x]).collect();
                ok = a.holds(r, t) == b.holds(r, &img);
            }
        });
        if !ok {
            return false;
        }
    }
    true
}

/// Disjoint pairs `(U, V)` of subsets of the first `m` vertices with no witness adjacent
/// to all of `U` and none of `V`.
pub fn window_extension_failures(s: &RelationalStructure, m: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = s.domain_size();
    let m = m.min(n);
    let mut out = Vec::new();
    let mut pow3 = 1usize;
    for _ in 0..m {
        pow3 *= 3;
    }
    for code in 0..pow3 {
        let (mut u, mut v) = (Vec::new(), Vec::new());
        let mut c = code;
        for w in 0..m {
            match c % 3 {
                1 => u.push(w),
                2 => v.push(w),
                _ => {}
            }
            c /= 3;
        }
        let ok = (0..n).any(|z| {
            !u.contains(&z)
                && !v.contains(&z)
                && u.iter().all(|&x| s.holds(0, &[z, x]))
                && v.iter().all(|&x| !s.holds(0, &[z, x]))
        });
        if !ok {
            out.push((u, v));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgeEntry {
    pub size: usize,
    /// Hex form of the canonical code.
    pub code: String,
    pub count: u64,
    #[serde(with = "as_document")]
    pub example: RelationalStructure,
}

/// Isomorphism types of induced substructures on `1..=k` points with multiplicities,
/// ordered by size then canonical code.
pub fn age(s: &RelationalStructure, k: usize) -> Result<Vec<AgeEntry>> {
    if k > AGE_LIMIT {
        return Err(Error::size("age size", AGE_LIMIT, k));
    }
    let n = s.domain_size();
    let mut subsets: u64 = 0;
    let mut binom: u64 = 1;
    for j in 1..=k.min(n) {
        binom = binom * (n - j + 1) as u64 / j as u64;
        subsets = subsets.saturating_add(binom);
    }
    if subsets > AGE_SUBSET_BUDGET {
        return Err(Error::size("age subsets", AGE_SUBSET_BUDGET as usize, subsets as usize));
    }
    let mut table: BTreeMap<(usize, Vec<u8>), (u64, RelationalStructure)> = BTreeMap::new();
    let mut memo: std::collections::HashMap<RelationalStructure, Vec<u8>> = std::collections::HashMap::new();
    for j in 1..=k.min(n) {
        let mut err = None;
        for_each_subset(n, j, |sub| {
            if err.is_some() {
                return;
            }
            let induced = match s.induced_substructure(sub) {
                Ok(x) => x,
                Err(e) => {
                    err = Some(e);
                    return;
                }
            };
            let code = match memo.get(&induced) {
                Some(c) => c.clone(),
                None => match canonical_code(&induced) {
                    Ok(c) => {
                        memo.insert(induced.clone(), c.clone());
                        c
                    }
                    Err(e) => {
                        err = Some(e);
                        return;
                    }
                },
            };
            table.entry((j, code)).or_insert((0, induced)).0 += 1;
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(table
        .into_iter()
        .map(|((size, code), (count, example))| AgeEntry {
            size,
            code: code.iter().map(|b| format!("{b:02x}")).collect(),
            count,
            example,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named, FiniteGraph};

    #[test]
    fn ages_of_small_graphs() {
        let a = age(&named::complete(3).to_structure(), 2).unwrap();
        assert_eq!(a.iter().map(|e| (e.size, e.count)).collect::<Vec<_>>(), vec![(1, 3), (2, 3)]);
        let a = age(&named::cycle(5).to_structure(), 3).unwrap();
        let threes: Vec<u64> = a.iter().filter(|e| e.size == 3).map(|e| e.count).collect();
        assert_eq!(threes.len(), 2);
        assert_eq!(threes.iter().sum::<u64>(), 10);
    }

    #[test]
    fn approximations() {
        let graphs = ClassSpec::parse("graphs").unwrap();
        let a = limit_approximation(&graphs, 120, 7).unwrap();
        assert_eq!(a.structure.domain_size(), 120);
        assert!(a.window_level >= 4);
        assert!(window_extension_failures(&a.structure, 4).is_empty());
        assert!(a.guaranteed_level >= 3);
        let k3 = ClassSpec::parse("k3free").unwrap();
        let b = limit_approximation(&k3, 80, 1).unwrap();
        assert!(k3.contains(&b.structure));
        let t = ClassSpec::parse("tournaments").unwrap();
        let c = limit_approximation(&t, 60, 3).unwrap();
        assert!(t.contains(&c.structure));
        assert!(c.guaranteed_level >= 3);
        assert!(limit_approximation(&ClassSpec::parse("orders").unwrap(), 5, 0).is_err());
    }

    #[test]
    fn stages_extend_each_other() {
        let graphs = ClassSpec::parse("graphs").unwrap();
        let small = limit_approximation(&graphs, 30, 11).unwrap().structure;
        let big = limit_approximation(&graphs, 45, 11).unwrap().structure;
        let verts: Vec<usize> = (0..30).collect();
        assert_eq!(big.induced_substructure(&verts).unwrap(), small);
        let _ = FiniteGraph::from_structure(&big).unwrap();
    }
}
