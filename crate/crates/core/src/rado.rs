//! Computable oracles for the countable random graph: the bit-digit and
//! prime/quadratic-residue constructions, extension witnesses, back-and-forth
//! and the common-neighbour criterion.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::enumerate::for_each_subset;
use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::par::{self, Execution};

/// A decidable, symmetric, irreflexive adjacency predicate on a set of
/// natural numbers, enumerated in increasing order.
pub trait GraphOracle: Send + Sync {
    fn tag(&self) -> String;

    fn contains(&self, v: u64) -> bool;

    /// Adjacency of two distinct vertices of the universe.
    fn adjacent(&self, x: u64, y: u64) -> Result<bool>;

    /// The least vertex `>= from`, if the universe has one.
    fn next_vertex(&self, from: u64) -> Option<u64>;

    /// The first `count` vertices (fewer if the universe is smaller).
    fn first_vertices(&self, count: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity(count);
        let mut from = 0u64;
        while out.len() < count {
            match self.next_vertex(from) {
                Some(v) => {
                    out.push(v);
                    match v.checked_add(1) {
                        Some(next) => from = next,
                        None => break,
                    }
                }
                None => break,
            }
        }
        out
    }
}

fn invalid(v: u64) -> Error {
    Error::InvalidVertex {
        vertex: usize::try_from(v).unwrap_or(usize::MAX),
        domain: 0,
    }
}

/// `x ~ y` iff bit `min(x,y)` of `max(x,y)` is set.
pub fn rado_adjacent(x: u64, y: u64) -> Result<bool> {
    if x == y {
        return Err(Error::SelfLoop(x));
    }
    let (a, b) = (x.min(y), x.max(y));
    Ok(a < 64 && (b >> a) & 1 == 1)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

const SIEVE_LIMIT: usize = 1 << 22;

fn sieve() -> &'static [bool] {
    static SIEVE: OnceLock<Vec<bool>> = OnceLock::new();
    SIEVE.get_or_init(|| {
        let mut is_prime = vec![true; SIEVE_LIMIT];
        is_prime[0] = false;
        is_prime[1] = false;
        let mut i = 2;
        while i * i < SIEVE_LIMIT {
            if is_prime[i] {
                let mut j = i * i;
                while j < SIEVE_LIMIT {
                    is_prime[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        is_prime
    })
}

/// Deterministic primality test for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if (n as u128) < SIEVE_LIMIT as u128 {
        return sieve()[n as usize];
    }
    if n % 2 == 0 {
        return false;
    }
    let (mut d, mut r) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_prime_vertex(p: u64) -> bool {
    p % 4 == 1 && is_prime_u64(p)
}

/// For primes `p, q ≡ 1 (mod 4)`: `q` is a quadratic residue mod `p`
/// (Euler's criterion).
pub fn prime_graph_adjacent(p: u64, q: u64) -> Result<bool> {
    for v in [p, q] {
        if !is_prime_vertex(v) {
            return Err(invalid(v));
        }
    }
    if p == q {
        return Err(Error::SelfLoop(p));
    }
    Ok(pow_mod(q, (p - 1) / 2, p) == 1)
}

/// The bit-digit oracle on all of ℕ.
#[derive(Clone, Copy, Debug, Default)]
pub struct BitOracle;

impl GraphOracle for BitOracle {
    fn tag(&self) -> String {
        "bit".into()
    }

    fn contains(&self, _v: u64) -> bool {
        true
    }

    fn adjacent(&self, x: u64, y: u64) -> Result<bool> {
        rado_adjacent(x, y)
    }

    fn next_vertex(&self, from: u64) -> Option<u64> {
        Some(from)
    }
}

/// The quadratic-residue oracle on primes congruent to 1 mod 4.
#[derive(Clone, Copy, Debug, Default)]
pub struct PrimeOracle;

impl GraphOracle for PrimeOracle {
    fn tag(&self) -> String {
        "prime".into()
    }

    fn contains(&self, v: u64) -> bool {
        is_prime_vertex(v)
    }

    fn adjacent(&self, x: u64, y: u64) -> Result<bool> {
        prime_graph_adjacent(x, y)
    }

    fn next_vertex(&self, from: u64) -> Option<u64> {
        let mut v = from.max(5);
        v += (5 - v % 4) % 4;
        loop {
            if is_prime_u64(v) {
                return Some(v);
            }
            v = v.checked_add(4)?;
        }
    }
}

/// A finite graph on `0..n` seen as an oracle.
#[derive(Clone, Debug)]
pub struct FiniteOracle {
    graph: FiniteGraph,
    tag: String,
}

impl FiniteOracle {
    pub fn new(graph: FiniteGraph) -> Self {
        let tag = format!("finite({})", graph.order());
        FiniteOracle { graph, tag }
    }

    pub fn with_tag(graph: FiniteGraph, tag: impl Into<String>) -> Self {
        FiniteOracle {
            graph,
            tag: tag.into(),
        }
    }

    pub fn graph(&self) -> &FiniteGraph {
        &self.graph
    }
}

impl GraphOracle for FiniteOracle {
    fn tag(&self) -> String {
        self.tag.clone()
    }

    fn contains(&self, v: u64) -> bool {
        v < self.graph.order() as u64
    }

    fn adjacent(&self, x: u64, y: u64) -> Result<bool> {
        let n = self.graph.order();
        for v in [x, y] {
            if !self.contains(v) {
                return Err(Error::InvalidVertex {
                    vertex: usize::try_from(v).unwrap_or(usize::MAX),
                    domain: n,
                });
            }
        }
        if x == y {
            return Err(Error::SelfLoop(x));
        }
        Ok(self.graph.has_edge(x as usize, y as usize))
    }

    fn next_vertex(&self, from: u64) -> Option<u64> {
        self.contains(from).then_some(from)
    }
}

/// Two disjoint finite vertex sets and a search horizon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionQuery {
    pub u: BTreeSet<u64>,
    pub v: BTreeSet<u64>,
    pub bound: u64,
}

impl ExtensionQuery {
    pub fn new(
        u: impl IntoIterator<Item = u64>,
        v: impl IntoIterator<Item = u64>,
        bound: u64,
    ) -> Result<Self> {
        let u: BTreeSet<u64> = u.into_iter().collect();
        let v: BTreeSet<u64> = v.into_iter().collect();
        if let Some(x) = u.intersection(&v).next() {
            return Err(Error::InvalidInput(format!(
                "vertex {x} lies in both U and V"
            )));
        }
        Ok(ExtensionQuery { u, v, bound })
    }
}

/// Whether `z` is adjacent to all of `u` and none of `v`, `z` outside both.
pub fn is_extension_witness<O: GraphOracle + ?Sized>(
    oracle: &O,
    u: &BTreeSet<u64>,
    v: &BTreeSet<u64>,
    z: u64,
) -> Result<bool> {
    if u.contains(&z) || v.contains(&z) || !oracle.contains(z) {
        return Ok(false);
    }
    for &x in u {
        if !oracle.adjacent(x, z)? {
            return Ok(false);
        }
    }
    for &x in v {
        if oracle.adjacent(x, z)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The least vertex `z <= bound` adjacent to all of U and none of V, or
/// `None` if there is none within the bound (which proves nothing about the
/// infinite graph).
pub fn extension_witness<O: GraphOracle + ?Sized>(
    oracle: &O,
    query: &ExtensionQuery,
) -> Result<Option<u64>> {
    for &x in query.u.iter().chain(&query.v) {
        if !oracle.contains(x) {
            return Err(invalid(x));
        }
    }
    let mut z = match oracle.next_vertex(0) {
        Some(z) => z,
        None => return Ok(None),
    };
    while z <= query.bound {
        if is_extension_witness(oracle, &query.u, &query.v, z)? {
            return Ok(Some(z));
        }
        z = match z.checked_add(1).and_then(|next| oracle.next_vertex(next)) {
            Some(next) => next,
            None => return Ok(None),
        };
    }
    Ok(None)
}

/// A finite injective map between the vertex sets of two oracles.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleMap {
    pub source: String,
    pub target: String,
    pub pairs: Vec<(u64, u64)>,
}

impl OracleMap {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn domain(&self) -> Vec<u64> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    pub fn image(&self) -> Vec<u64> {
        self.pairs.iter().map(|p| p.1).collect()
    }

    /// Checks injectivity and that adjacency is preserved on every pair.
    pub fn verify<A: GraphOracle + ?Sized, B: GraphOracle + ?Sized>(
        &self,
        a: &A,
        b: &B,
    ) -> Result<()> {
        let mut seen_a = BTreeSet::new();
        let mut seen_b = BTreeSet::new();
        for &(x, y) in &self.pairs {
            if !seen_a.insert(x) || !seen_b.insert(y) {
                return Err(Error::InvalidEmbedding(format!(
                    "pair ({x}, {y}) repeats a vertex"
                )));
            }
        }
        for (i, &(x1, y1)) in self.pairs.iter().enumerate() {
            for &(x2, y2) in &self.pairs[..i] {
                if a.adjacent(x1, x2)? != b.adjacent(y1, y2)? {
                    return Err(Error::InvalidEmbedding(format!(
                        "adjacency of ({x1}, {x2}) differs from ({y1}, {y2})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Outcome of a back-and-forth run, including partial progress on failure.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BackAndForthRun {
    pub map: OracleMap,
    pub requested_steps: usize,
    pub completed_steps: usize,
    pub bound: u64,
    /// Set when some extension query exhausted the bound.
    pub failed_step: Option<usize>,
}

impl BackAndForthRun {
    pub fn succeeded(&self) -> bool {
        self.failed_step.is_none()
    }
}

fn least_unmapped<O: GraphOracle + ?Sized>(oracle: &O, mapped: &BTreeSet<u64>) -> Result<u64> {
    let mut v = 0u64;
    loop {
        let next = oracle.next_vertex(v).ok_or_else(|| {
            Error::InvalidInput(format!("oracle {} has no unmapped vertex left", oracle.tag()))
        })?;
        if !mapped.contains(&next) {
            return Ok(next);
        }
        v = next + 1;
    }
}

fn extend_one<S: GraphOracle + ?Sized, T: GraphOracle + ?Sized>(
    src: &S,
    dst: &T,
    forward: &BTreeMap<u64, u64>,
    x: u64,
    bound: u64,
) -> Result<Option<u64>> {
    let mut u = BTreeSet::new();
    let mut v = BTreeSet::new();
    for (&a, &b) in forward {
        if src.adjacent(a, x)? {
            u.insert(b);
        } else {
            v.insert(b);
        }
    }
    let query = ExtensionQuery { u, v, bound };
    let z = extension_witness(dst, &query)?;
    if let Some(z) = z {
        if !is_extension_witness(dst, &query.u, &query.v, z)? {
            return Err(Error::InvalidEmbedding(format!(
                "witness {z} failed re-verification"
            )));
        }
    }
    Ok(z)
}

/// Runs back-and-forth for up to `steps` rounds without failing on an
/// exhausted bound; the returned map is always a verified partial
/// isomorphism.
pub fn back_and_forth_run<A: GraphOracle + ?Sized, B: GraphOracle + ?Sized>(
    a: &A,
    b: &B,
    steps: usize,
    bound: u64,
) -> Result<BackAndForthRun> {
    if steps == 0 {
        return Err(Error::InvalidInput("steps must be at least 1".into()));
    }
    let mut fwd: BTreeMap<u64, u64> = BTreeMap::new();
    let mut bwd: BTreeMap<u64, u64> = BTreeMap::new();
    let mut pairs = Vec::new();
    let mut failed_step = None;
    for step in 0..steps {
        let pair = if step % 2 == 0 {
            let dom: BTreeSet<u64> = fwd.keys().copied().collect();
            let x = least_unmapped(a, &dom)?;
            extend_one(a, b, &fwd, x, bound)?.map(|y| (x, y))
        } else {
            let img: BTreeSet<u64> = bwd.keys().copied().collect();
            let y = least_unmapped(b, &img)?;
            extend_one(b, a, &bwd, y, bound)?.map(|x| (x, y))
        };
        match pair {
            Some((x, y)) => {
                fwd.insert(x, y);
                bwd.insert(y, x);
                pairs.push((x, y));
            }
            None => {
                failed_step = Some(step);
                break;
            }
        }
    }
    let map = OracleMap {
        source: a.tag(),
        target: b.tag(),
        pairs,
    };
    map.verify(a, b)?;
    Ok(BackAndForthRun {
        completed_steps: map.len(),
        map,
        requested_steps: steps,
        bound,
        failed_step,
    })
}

/// Alternately adjoins the least unmapped vertex of `a` and of `b`, solving
/// an extension query in the other oracle each time.
pub fn back_and_forth<A: GraphOracle + ?Sized, B: GraphOracle + ?Sized>(
    a: &A,
    b: &B,
    steps: usize,
    bound: u64,
) -> Result<OracleMap> {
    let run = back_and_forth_run(a, b, steps, bound)?;
    match run.failed_step {
        Some(step) => Err(Error::WitnessNotFound { bound, step }),
        None => Ok(run.map),
    }
}

/// Result of scanning small vertex sets for common neighbours.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CommonNeighbourReport {
    pub oracle: String,
    pub sets_up_to: usize,
    pub window: Vec<u64>,
    pub bound: u64,
    pub checked: usize,
    /// Sets with no common neighbour within the bound.
    pub failures: Vec<Vec<u64>>,
}

impl CommonNeighbourReport {
    pub fn all_succeeded(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every nonempty subset of size at most `sets_up_to` among the first
/// `window` vertices, searches a common neighbour up to `bound`.
pub fn common_neighbour_check<O: GraphOracle + ?Sized>(
    oracle: &O,
    sets_up_to: usize,
    window: usize,
    bound: u64,
    exec: Execution,
) -> Result<CommonNeighbourReport> {
    if sets_up_to > 5 {
        return Err(Error::size("common-neighbour set size", 5, sets_up_to));
    }
    if window > 16 {
        return Err(Error::size("common-neighbour window", 16, window));
    }
    let verts = oracle.first_vertices(window);
    let mut sets: Vec<Vec<u64>> = Vec::new();
    for k in 1..=sets_up_to.min(verts.len()) {
        for_each_subset(verts.len(), k, |idx| {
            sets.push(idx.iter().map(|&i| verts[i]).collect());
        });
    }
    let found = par::map(exec, &sets, |set| {
        let query = ExtensionQuery {
            u: set.iter().copied().collect(),
            v: BTreeSet::new(),
            bound,
        };
        extension_witness(oracle, &query)
    });
    let mut failures = Vec::new();
    for (set, z) in sets.iter().zip(found) {
        if z?.is_none() {
            failures.push(set.clone());
        }
    }
    Ok(CommonNeighbourReport {
        oracle: oracle.tag(),
        sets_up_to,
        window: verts,
        bound,
        checked: sets.len(),
        failures,
    })
}

pub const RECIPROCITY_LIMIT: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReciprocityReport {
    pub below: u64,
    pub primes: usize,
    pub pairs: usize,
    /// Pairs `p < q` where `q` is a residue mod `p` but not conversely, or vice versa.
    pub asymmetric: Vec<(u64, u64)>,
}

/// Compares `(q|p)` with `(p|q)` for all pairs of primes `≡ 1 (mod 4)` below `below`.
pub fn reciprocity_check(below: u64, exec: Execution) -> Result<ReciprocityReport> {
    if below > RECIPROCITY_LIMIT {
        return Err(Error::size("reciprocity bound", RECIPROCITY_LIMIT as usize, below as usize));
    }
    let primes: Vec<u64> = (5..below).filter(|&p| is_prime_vertex(p)).collect();
    let rows = par::map_range(exec, 0..primes.len(), |i| -> Result<Vec<(u64, u64)>> {
        let p = primes[i];
        let mut bad = Vec::new();
        for &q in &primes[i + 1..] {
            if prime_graph_adjacent(p, q)? != prime_graph_adjacent(q, p)? {
                bad.push((p, q));
            }
        }
        Ok(bad)
    });
    let mut asymmetric = Vec::new();
    for r in rows {
        asymmetric.extend(r?);
    }
    Ok(ReciprocityReport {
        below,
        primes: primes.len(),
        pairs: primes.len() * primes.len().saturating_sub(1) / 2,
        asymmetric,
    })
}

pub const PATTERN_BASE_LIMIT: usize = 12;

/// Result of solving every `(U, V)` split of a base vertex set.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtensionPatternReport {
    pub oracle: String,
    pub base: Vec<u64>,
    pub bound: u64,
    pub patterns: usize,
    pub witnessed: usize,
    pub max_witness: Option<u64>,
    pub failure_count: usize,
    /// The first few patterns without a witness, as `(U, V)`.
    pub failures: Vec<(Vec<u64>, Vec<u64>)>,
}

impl ExtensionPatternReport {
    pub fn all_witnessed(&self) -> bool {
        self.failure_count == 0
    }
}

/// Runs the least-witness search for all `3^m` ways of placing each of the
/// first `m` vertices in `U`, in `V`, or in neither.
pub fn extension_pattern_check<O: GraphOracle + ?Sized>(
    oracle: &O,
    m: usize,
    bound: u64,
    exec: Execution,
) -> Result<ExtensionPatternReport> {
    if m > PATTERN_BASE_LIMIT {
        return Err(Error::size("extension pattern base", PATTERN_BASE_LIMIT, m));
    }
    let base = oracle.first_vertices(m);
    let count = 3usize.pow(base.len() as u32);
    let found = par::map_range(exec, 0..count, |code| {
        let (mut u, mut v) = (BTreeSet::new(), BTreeSet::new());
        let mut c = code;
        for &x in &base {
            match c % 3 {
                1 => {
                    u.insert(x);
                }
                2 => {
                    v.insert(x);
                }
                _ => {}
            }
            c /= 3;
        }
        let query = ExtensionQuery { u, v, bound };
        extension_witness(oracle, &query).map(|z| (query, z))
    });
    let mut witnessed = 0;
    let mut max_witness = None;
    let mut failure_count = 0;
    let mut failures = Vec::new();
    for r in found {
        let (query, z) = r?;
        match z {
            Some(z) => {
                witnessed += 1;
                max_witness = max_witness.max(Some(z));
            }
            None => {
                failure_count += 1;
                if failures.len() < 64 {
                    failures.push((query.u.into_iter().collect(), query.v.into_iter().collect()));
                }
            }
        }
    }
    Ok(ExtensionPatternReport {
        oracle: oracle.tag(),
        base,
        bound,
        patterns: count,
        witnessed,
        max_witness,
        failure_count,
        failures,
    })
}

/// Parses an oracle name: `bit`, `prime`, or a named finite graph such as
/// `c5` or `k5`.
pub fn oracle_by_name(name: &str) -> Result<Box<dyn GraphOracle>> {
    use crate::graph::named;
    let lower = name.trim().to_ascii_lowercase();
    match lower.as_str() {
        "bit" => return Ok(Box::new(BitOracle)),
        "prime" => return Ok(Box::new(PrimeOracle)),
        _ => {}
    }
    let (kind, rest) = lower.split_at(1.min(lower.len()));
    let n: usize = rest
        .parse()
        .map_err(|_| Error::InvalidInput(format!("unknown oracle '{name}'")))?;
    if n > 64 {
        return Err(Error::size("finite oracle", 64, n));
    }
    let g = match kind {
        "c" if n >= 3 => named::cycle(n),
        "k" => named::complete(n),
        "p" => named::path(n),
        _ => return Err(Error::InvalidInput(format!("unknown oracle '{name}'"))),
    };
    Ok(Box::new(FiniteOracle::with_tag(g, lower)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn bit_adjacency() {
        assert!(rado_adjacent(0, 1).unwrap());
        assert!(!rado_adjacent(0, 2).unwrap());
        assert!(rado_adjacent(1, 2).unwrap());
        assert!(rado_adjacent(2, 1).unwrap());
        assert_eq!(rado_adjacent(3, 3), Err(Error::SelfLoop(3)));
    }

    #[test]
    fn prime_adjacency() {
        assert!(prime_graph_adjacent(5, 29).unwrap());
        assert!(!prime_graph_adjacent(5, 13).unwrap());
        assert!(matches!(prime_graph_adjacent(5, 7), Err(Error::InvalidVertex { .. })));
        assert!(matches!(prime_graph_adjacent(5, 9), Err(Error::InvalidVertex { .. })));
        assert_eq!(prime_graph_adjacent(13, 13), Err(Error::SelfLoop(13)));
    }

    #[test]
    fn primality_matches_trial_division() {
        let naive = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000 {
            assert_eq!(is_prime_u64(n), naive(n), "{n}");
        }
        for n in [4_194_301u64, 4_194_303, 1_000_000_007, 999_999_999_989] {
            assert_eq!(is_prime_u64(n), naive(n), "{n}");
        }
    }

    #[test]
    fn prime_oracle_enumeration() {
        assert_eq!(PrimeOracle.first_vertices(5), vec![5, 13, 17, 29, 37]);
        assert_eq!(PrimeOracle.next_vertex(30), Some(37));
    }

    #[test]
    fn witness_examples() {
        let q = ExtensionQuery::new([0, 2], [1], 1 << 20).unwrap();
        assert_eq!(extension_witness(&BitOracle, &q).unwrap(), Some(5));
        let q = ExtensionQuery::new([], [], 10).unwrap();
        assert_eq!(extension_witness(&BitOracle, &q).unwrap(), Some(0));
        assert!(ExtensionQuery::new([1], [1], 10).is_err());
    }

    #[test]
    fn self_map_back_and_forth() {
        let map = back_and_forth(&BitOracle, &BitOracle, 10, 1 << 20).unwrap();
        assert_eq!(map.len(), 10);
        map.verify(&BitOracle, &BitOracle).unwrap();
    }

    #[test]
    fn finite_cycle_runs_out_of_witnesses() {
        let c5 = FiniteOracle::new(named::cycle(5));
        let err = back_and_forth(&BitOracle, &c5, 10, 1000).unwrap_err();
        assert!(matches!(err, Error::WitnessNotFound { .. }));
        let run = back_and_forth_run(&BitOracle, &c5, 10, 1000).unwrap();
        assert!(!run.succeeded());
        run.map.verify(&BitOracle, &c5).unwrap();
    }

    #[test]
    fn common_neighbours() {
        let r = common_neighbour_check(&BitOracle, 3, 8, 1 << 12, Execution::Parallel).unwrap();
        assert!(r.all_succeeded());
        assert_eq!(r.checked, 8 + 28 + 56);
        let k5 = FiniteOracle::new(named::complete(5));
        let r = common_neighbour_check(&k5, 5, 5, 100, Execution::Sequential).unwrap();
        assert_eq!(r.failures, vec![vec![0, 1, 2, 3, 4]]);
        let r = common_neighbour_check(&k5, 4, 5, 100, Execution::Sequential).unwrap();
        assert!(r.all_succeeded());
    }

    #[test]
    fn named_oracles() {
        assert_eq!(oracle_by_name("bit").unwrap().tag(), "bit");
        assert_eq!(oracle_by_name("C5").unwrap().first_vertices(10).len(), 5);
        assert!(oracle_by_name("q7").is_err());
    }

    #[test]
    fn extension_patterns() {
        let r = extension_pattern_check(&BitOracle, 4, 1 << 10, Execution::Sequential).unwrap();
        assert_eq!(r.patterns, 81);
        assert!(r.all_witnessed());
        let c5 = extension_pattern_check(&FiniteOracle::new(named::cycle(5)), 3, 10, Execution::Parallel).unwrap();
        assert_eq!(c5.patterns, 27);
        assert!(!c5.all_witnessed());
        assert!(c5.failures.contains(&(vec![0, 1, 2], vec![])));
    }

    #[test]
    fn reciprocity_small() {
        let r = reciprocity_check(200, Execution::Parallel).unwrap();
        assert_eq!(r.primes, 21);
        assert!(r.asymmetric.is_empty());
    }
}
