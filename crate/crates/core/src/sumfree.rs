//! Sum-free sets: exact census, the coin-toss random sum-free measure,
//! circulant windows Γ(S) and window tests for Henson universality.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::enumerate::for_each_subset;
use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::par::{self, Execution};
use crate::rado::GraphOracle;

pub const CENSUS_LIMIT: usize = 42;
pub const RANDOM_HORIZON_LIMIT: u64 = 1_000_000;
pub const WINDOW_LIMIT: usize = 10_000;
/// Upper bound on `trials * N` for a density experiment.
pub const DENSITY_BUDGET: u64 = 4_000_000_000;
pub const DEFAULT_SEED: u64 = 0x5EED_2000;

/// A finite sum-free set of positive integers examined up to `horizon`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SumFreeSet {
    elements: Vec<u64>,
    horizon: u64,
}

/// Outcome of a sum-freeness test; `witness` is the least `(x, y, x + y)`
/// with `x <= y` inside the set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumFreeCheck {
    pub sum_free: bool,
    pub witness: Option<(u64, u64, u64)>,
}

pub fn is_sum_free(set: &[u64]) -> SumFreeCheck {
    let sorted: BTreeSet<u64> = set.iter().copied().collect();
    for &x in &sorted {
        for &y in sorted.range(x..) {
            if let Some(z) = x.checked_add(y) {
                if sorted.contains(&z) {
                    return SumFreeCheck {
                        sum_free: false,
                        witness: Some((x, y, z)),
                    };
                }
            }
        }
    }
    SumFreeCheck {
        sum_free: true,
        witness: None,
    }
}

impl SumFreeSet {
    /// Validates positivity and sum-freeness; the horizon defaults to the
    /// largest element when smaller.
    pub fn new(elements: impl IntoIterator<Item = u64>, horizon: u64) -> Result<Self> {
        let set: BTreeSet<u64> = elements.into_iter().collect();
        if set.contains(&0) {
            return Err(Error::InvalidInput("sum-free sets hold positive integers".into()));
        }
        let elements: Vec<u64> = set.into_iter().collect();
        if let Some((x, y, z)) = is_sum_free(&elements).witness {
            return Err(Error::InvalidInput(format!("not sum-free: {x} + {y} = {z}")));
        }
        let horizon = horizon.max(elements.last().copied().unwrap_or(0));
        Ok(SumFreeSet { elements, horizon })
    }

    /// The odd numbers up to `horizon`.
    pub fn odds(horizon: u64) -> Self {
        SumFreeSet {
            elements: (1..=horizon).step_by(2).collect(),
            horizon,
        }
    }

    /// Parses a comma- or space-separated list such as `1,3,8`.
    pub fn parse(text: &str) -> Result<Self> {
        SumFreeSet::new(parse_integer_set(text)?, 0)
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// `|S ∩ [1, horizon]| / horizon`.
    pub fn density(&self) -> f64 {
        if self.horizon == 0 {
            return 0.0;
        }
        self.elements.iter().filter(|&&x| x <= self.horizon).count() as f64 / self.horizon as f64
    }

    pub fn has_even(&self) -> bool {
        self.elements.iter().any(|x| x % 2 == 0)
    }
}

impl fmt::Display for SumFreeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Parses a list of non-negative integers separated by commas or whitespace.
pub fn parse_integer_set(text: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    let mut column = 1;
    for token in text.split(|c: char| c == ',' || c.is_whitespace()) {
        if !token.is_empty() {
            let x = token
                .parse::<u64>()
                .map_err(|_| Error::parse(1, column, format!("expected an integer, found '{token}'")))?;
            out.push(x);
        }
        column += token.chars().count() + 1;
    }
    Ok(out)
}

/// `total / 2^(n/2)`, kept exactly as `total / (2^power · √2^sqrt_two)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusRatio {
    pub numerator: u64,
    pub power_of_two: u32,
    pub sqrt_two: bool,
    pub value: f64,
}

impl fmt::Display for CensusRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sqrt_two {
            write!(f, "{}/(2^{}*sqrt(2))", self.numerator, self.power_of_two)
        } else {
            write!(f, "{}/2^{}", self.numerator, self.power_of_two)
        }
    }
}

/// Counts of sum-free subsets of `{1..n}`, including the empty set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SumFreeCensus {
    pub n: usize,
    pub total: u64,
    /// Subsets of the odd numbers.
    pub odd_type: u64,
    /// Subsets of `(n/2, n]`.
    pub top_type: u64,
    /// Sets of both types (subsets of the odd numbers in `(n/2, n]`).
    pub both_types: u64,
    /// Sets of neither type.
    pub other: u64,
    pub ratio: CensusRatio,
    /// `total / (odd_type + top_type)`, i.e. `total / 2^(⌈n/2⌉ + 1)`.
    pub per_type_ratio: f64,
}

#[derive(Default, Clone, Copy)]
struct Tally {
    total: u64,
    odd: u64,
    top: u64,
    both: u64,
}

impl Tally {
    fn add(self, o: Tally) -> Tally {
        Tally {
            total: self.total + o.total,
            odd: self.odd + o.odd,
            top: self.top + o.top,
            both: self.both + o.both,
        }
    }
}

struct CensusMasks {
    n: usize,
    evens: u64,
    low: u64,
}

fn census_rec(m: &CensusMasks, i: usize, set: u64, sums: u128, t: &mut Tally) {
    if i > m.n {
        let odd = set & m.evens == 0;
        let top = set & m.low == 0;
        t.total += 1;
        t.odd += odd as u64;
        t.top += top as u64;
        t.both += (odd && top) as u64;
        return;
    }
    census_rec(m, i + 1, set, sums, t);
    if sums >> i & 1 == 0 {
        let set2 = set | 1 << i;
        census_rec(m, i + 1, set2, sums | (set2 as u128) << i, t);
    }
}

/// Exact census by backtracking over `1..=n` in increasing order, pruning
/// integers already forced out as sums.
pub fn census(n: usize) -> Result<SumFreeCensus> {
    census_with(n, Execution::Sequential)
}

/// As [`census`], optionally splitting the search on the first decisions.
pub fn census_with(n: usize, exec: Execution) -> Result<SumFreeCensus> {
    if n > CENSUS_LIMIT {
        return Err(Error::size("sum-free census n", CENSUS_LIMIT, n));
    }
    let mut evens = 0u64;
    let mut low = 0u64;
    for i in 1..=n {
        if i % 2 == 0 {
            evens |= 1 << i;
        }
        if i <= n / 2 {
            low |= 1 << i;
        }
    }
    let masks = CensusMasks { n, evens, low };
    // Enumerate sum-free prefixes over 1..=depth, then finish each in parallel.
    let depth = n.min(12);
    let mut prefixes: Vec<(u64, u128)> = vec![(0, 0)];
    for i in 1..=depth {
        let mut next = Vec::with_capacity(prefixes.len() * 2);
        for &(set, sums) in &prefixes {
            next.push((set, sums));
            if sums >> i & 1 == 0 {
                let set2 = set | 1 << i;
                next.push((set2, sums | (set2 as u128) << i));
            }
        }
        prefixes = next;
    }
    let tallies = par::map(exec, &prefixes, |&(set, sums)| {
        let mut t = Tally::default();
        census_rec(&masks, depth + 1, set, sums, &mut t);
        t
    });
    let t = tallies.into_iter().fold(Tally::default(), Tally::add);
    let power = (n / 2) as u32;
    let sqrt_two = n % 2 == 1;
    let mut value = t.total as f64 / 2f64.powi(power as i32);
    if sqrt_two {
        value /= std::f64::consts::SQRT_2;
    }
    Ok(SumFreeCensus {
        n,
        total: t.total,
        odd_type: t.odd,
        top_type: t.top,
        both_types: t.both,
        other: t.total - (t.odd + t.top - t.both),
        ratio: CensusRatio {
            numerator: t.total,
            power_of_two: power,
            sqrt_two,
            value,
        },
        per_type_ratio: t.total as f64 / (t.odd + t.top) as f64,
    })
}

/// Censuses for every `n` in the range.
pub fn census_sweep(range: std::ops::RangeInclusive<usize>, exec: Execution) -> Result<Vec<SumFreeCensus>> {
    range.map(|n| census_with(n, exec)).collect()
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// ORs `src << shift` into `dst`, dropping bits beyond `dst`.
fn shift_or(dst: &mut [u64], src: &[u64], shift: usize, src_words: usize) {
    let (ws, bs) = (shift / 64, shift % 64);
    for (i, &w) in src[..src_words].iter().enumerate() {
        if w == 0 {
            continue;
        }
        let j = i + ws;
        if j >= dst.len() {
            break;
        }
        dst[j] |= w << bs;
        if bs != 0 && j + 1 < dst.len() {
            dst[j + 1] |= w >> (64 - bs);
        }
    }
}

/// Coin-toss sum-free set on `1..=horizon` as a bitset.
fn coin_toss_bits(rng: &mut ChaCha8Rng, horizon: usize) -> Vec<u64> {
    let words = (horizon + 1).div_ceil(64);
    let mut set = vec![0u64; words];
    let mut sums = vec![0u64; words];
    for x in 1..=horizon {
        if sums[x / 64] >> (x % 64) & 1 == 1 {
            continue;
        }
        if rng.random::<bool>() {
            set[x / 64] |= 1 << (x % 64);
            shift_or(&mut sums, &set, x, x / 64 + 1);
        }
    }
    set
}

fn bits_to_vec(bits: &[u64]) -> Vec<u64> {
    let mut out = Vec::new();
    for (i, &w) in bits.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            out.push(i as u64 * 64 + w.trailing_zeros() as u64);
            w &= w - 1;
        }
    }
    out
}

/// Scans `n = 1..=horizon`, excluding sums of earlier members and otherwise
/// including `n` on a fair coin. Uses stream 0 of `seed`.
pub fn random_sum_free(seed: u64, horizon: u64) -> Result<SumFreeSet> {
    random_sum_free_trial(seed, 0, horizon)
}

/// The coin-toss set for trial `trial` of the experiment seeded by `seed`.
pub fn random_sum_free_trial(seed: u64, trial: u64, horizon: u64) -> Result<SumFreeSet> {
    if horizon > RANDOM_HORIZON_LIMIT {
        return Err(Error::size("random sum-free horizon", RANDOM_HORIZON_LIMIT as usize, horizon as usize));
    }
    let bits = coin_toss_bits(&mut trial_rng(seed, trial), horizon as usize);
    Ok(SumFreeSet {
        elements: bits_to_vec(&bits),
        horizon,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub bin_low: f64,
    pub bin_high: f64,
    pub count: u64,
}

/// Density statistics of the coin-toss measure over independent trials.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub trials: u64,
    pub horizon: u64,
    pub seed: u64,
    pub bin_width: f64,
    pub histogram: Vec<HistogramBin>,
    pub no_even_trials: u64,
    pub p_no_evens: f64,
    pub mean_density: f64,
    /// Mean density over trials with no even element, if any.
    pub mean_density_no_evens: Option<f64>,
    /// Fraction of trials with density below 1/6.
    pub mass_below_sixth: f64,
}

/// Runs `trials` coin-toss sets on `1..=horizon`; trial `t` uses stream `t`
/// of `seed`, so results do not depend on scheduling.
pub fn density_experiment(
    trials: u64,
    horizon: u64,
    seed: u64,
    bin_width: f64,
    exec: Execution,
) -> Result<DensityReport> {
    if horizon == 0 || horizon > RANDOM_HORIZON_LIMIT {
        return Err(Error::InvalidInput(format!(
            "horizon must lie in 1..={RANDOM_HORIZON_LIMIT}"
        )));
    }
    let work = trials.saturating_mul(horizon);
    if work > DENSITY_BUDGET {
        return Err(Error::size("density experiment trials*N", DENSITY_BUDGET as usize, work as usize));
    }
    if !(bin_width > 0.0 && bin_width <= 1.0) {
        return Err(Error::InvalidInput("bin width must lie in (0, 1]".into()));
    }
    let evens = {
        let words = (horizon as usize + 1).div_ceil(64);
        let mut m = vec![0u64; words];
        for x in (2..=horizon as usize).step_by(2) {
            m[x / 64] |= 1 << (x % 64);
        }
        m
    };
    let samples: Vec<(u32, bool)> = par::map_range(exec, 0..trials as usize, |t| {
        let bits = coin_toss_bits(&mut trial_rng(seed, t as u64), horizon as usize);
        let count: u32 = bits.iter().map(|w| w.count_ones()).sum();
        let no_even = bits.iter().zip(&evens).all(|(a, b)| a & b == 0);
        (count, no_even)
    });
    let bins = (1.0 / bin_width).ceil() as usize;
    let mut histogram: Vec<HistogramBin> = (0..bins)
        .map(|i| HistogramBin {
            bin_low: i as f64 * bin_width,
            bin_high: ((i + 1) as f64 * bin_width).min(1.0),
            count: 0,
        })
        .collect();
    let (mut sum, mut sum_no_even, mut no_even_trials, mut below) = (0.0, 0.0, 0u64, 0u64);
    for &(count, no_even) in &samples {
        let d = count as f64 / horizon as f64;
        let bin = ((d / bin_width) as usize).min(bins - 1);
        histogram[bin].count += 1;
        sum += d;
        if no_even {
            no_even_trials += 1;
            sum_no_even += d;
        }
        if d < 1.0 / 6.0 {
            below += 1;
        }
    }
    let n = trials.max(1) as f64;
    Ok(DensityReport {
        trials,
        horizon,
        seed,
        bin_width,
        histogram,
        no_even_trials,
        p_no_evens: no_even_trials as f64 / n,
        mean_density: sum / n,
        mean_density_no_evens: (no_even_trials > 0).then(|| sum_no_even / no_even_trials as f64),
        mass_below_sixth: below as f64 / n,
    })
}

/// The graph on `0..m` joining `x` and `y` when `|y - x|` lies in `set`.
pub fn circulant_window(set: &[u64], m: usize) -> Result<FiniteGraph> {
    if m > WINDOW_LIMIT {
        return Err(Error::size("circulant window", WINDOW_LIMIT, m));
    }
    let mut g = FiniteGraph::new(m);
    for &d in set {
        if d == 0 {
            return Err(Error::InvalidInput("difference set holds positive integers".into()));
        }
        if d as usize >= m {
            continue;
        }
        for x in 0..m - d as usize {
            g.add_edge(x, x + d as usize);
        }
    }
    Ok(g)
}

/// Γ(S) on ℕ as an oracle, for a finite difference set.
#[derive(Clone, Debug)]
pub struct CirculantOracle {
    bits: Vec<u64>,
    max: u64,
    tag: String,
}

impl CirculantOracle {
    pub fn new(set: &[u64]) -> Result<Self> {
        if set.contains(&0) {
            return Err(Error::InvalidInput("difference set holds positive integers".into()));
        }
        let max = set.iter().copied().max().unwrap_or(0);
        let mut bits = vec![0u64; (max as usize + 1).div_ceil(64)];
        for &d in set {
            bits[d as usize / 64] |= 1 << (d % 64);
        }
        Ok(CirculantOracle {
            bits,
            max,
            tag: format!("gamma({} differences)", set.len()),
        })
    }

    #[inline]
    pub fn has_difference(&self, d: u64) -> bool {
        d <= self.max && self.bits[d as usize / 64] >> (d % 64) & 1 == 1
    }

    #[inline]
    fn adj(&self, x: u64, y: u64) -> bool {
        self.has_difference(x.abs_diff(y))
    }

    /// Neighbours of `x` up to `bound`, in increasing order.
    fn neighbours_up_to(&self, x: u64, bound: u64) -> Vec<u64> {
        let mut out = Vec::new();
        for d in (1..=self.max.min(x)).rev() {
            if self.has_difference(d) {
                out.push(x - d);
            }
        }
        for d in 1..=self.max {
            match x.checked_add(d) {
                Some(z) if z <= bound => {
                    if self.has_difference(d) {
                        out.push(z);
                    }
                }
                _ => break,
            }
        }
        out
    }
}

impl GraphOracle for CirculantOracle {
    fn tag(&self) -> String {
        self.tag.clone()
    }

    fn contains(&self, _v: u64) -> bool {
        true
    }

    fn adjacent(&self, x: u64, y: u64) -> Result<bool> {
        if x == y {
            return Err(Error::SelfLoop(x));
        }
        Ok(self.adj(x, y))
    }

    fn next_vertex(&self, from: u64) -> Option<u64> {
        Some(from)
    }
}

pub const HENSON_K_LIMIT: usize = 3;
pub const HENSON_WINDOW_LIMIT: usize = 64;
const OBSTRUCTION_SAMPLE: usize = 64;

/// A `(U, V)` pair with no witness within the bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub u: Vec<u64>,
    pub v: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HensonWindowReport {
    pub k: usize,
    pub window: usize,
    pub bound: u64,
    /// Independent sets U examined.
    pub independent_sets: u64,
    /// `(U, V)` pairs examined.
    pub checked: u64,
    pub obstruction_count: u64,
    /// The first obstruction candidates in enumeration order.
    pub obstructions: Vec<Obstruction>,
}

impl HensonWindowReport {
    pub fn passed(&self) -> bool {
        self.obstruction_count == 0
    }
}

fn small_subsets(m: usize, k: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for size in 1..=k.min(m) {
        for_each_subset(m, size, |s| out.push(s.iter().map(|&x| x as u64).collect()));
    }
    out
}

/// For every independent `U` and disjoint `V` inside `0..m` with
/// `|U|, |V| <= k`, searches `z <= bound` adjacent to all of `U` and none of
/// `V` in Γ(S).
pub fn henson_window_check(
    set: &[u64],
    k: usize,
    m: usize,
    bound: u64,
    exec: Execution,
) -> Result<HensonWindowReport> {
    if k > HENSON_K_LIMIT {
        return Err(Error::size("Henson window set size", HENSON_K_LIMIT, k));
    }
    if m > HENSON_WINDOW_LIMIT {
        return Err(Error::size("Henson window", HENSON_WINDOW_LIMIT, m));
    }
    let oracle = CirculantOracle::new(set)?;
    let subsets = small_subsets(m, k);
    let independent: Vec<&Vec<u64>> = subsets
        .iter()
        .filter(|u| u.iter().enumerate().all(|(i, &a)| u[..i].iter().all(|&b| !oracle.adj(a, b))))
        .collect();
    let per_u = par::map(exec, &independent, |u| {
        // Candidates adjacent to all of U, in increasing order; None means every vertex.
        let candidates: Option<Vec<u64>> = u.first().map(|&first| {
            oracle
                .neighbours_up_to(first, bound)
                .into_iter()
                .filter(|&z| !u.contains(&z) && u.iter().all(|&x| oracle.adj(x, z)))
                .collect()
        });
        let mut checked = 0u64;
        let mut failures = 0u64;
        let mut sample = Vec::new();
        for v in &subsets {
            if v.iter().any(|x| u.contains(x)) {
                continue;
            }
            checked += 1;
            let ok_z = |z: u64| !v.contains(&z) && v.iter().all(|&y| !oracle.adj(y, z));
            let found = match &candidates {
                Some(list) => list.iter().any(|&z| ok_z(z)),
                None => (0..=bound).any(|z| ok_z(z)),
            };
            if !found {
                failures += 1;
                if sample.len() < OBSTRUCTION_SAMPLE {
                    sample.push(Obstruction {
                        u: u.to_vec(),
                        v: v.clone(),
                    });
                }
            }
        }
        (checked, failures, sample)
    });
    let mut report = HensonWindowReport {
        k,
        window: m,
        bound,
        independent_sets: independent.len() as u64,
        checked: 0,
        obstruction_count: 0,
        obstructions: Vec::new(),
    };
    for (checked, failures, sample) in per_u {
        report.checked += checked;
        report.obstruction_count += failures;
        for o in sample {
            if report.obstructions.len() < OBSTRUCTION_SAMPLE {
                report.obstructions.push(o);
            }
        }
    }
    Ok(report)
}

/// Builds a sum-free set whose Γ(S) meets every window requirement of
/// [`henson_window_check`] for `(k, m)`.
///
/// For each independent `U ⊆ 0..m` with `|U| <= k`, in enumeration order,
/// a block `{z - u : u ∈ U}` is appended, where `z` is the least integer
/// beyond `max(S) + m` keeping the set sum-free. Every block lies past all
/// earlier elements, so the window neighbourhood of `z` is exactly `U` and
/// later blocks never disturb it. The gaps between blocks grow as the
/// difference set fills up. Elements stay above `m`, so the window itself
/// is edgeless.
pub fn greedy_gap_set(k: usize, m: usize) -> Result<SumFreeSet> {
    if k > HENSON_K_LIMIT {
        return Err(Error::size("greedy gap set size", HENSON_K_LIMIT, k));
    }
    if m > HENSON_WINDOW_LIMIT {
        return Err(Error::size("greedy gap window", HENSON_WINDOW_LIMIT, m));
    }
    let mut set: BTreeSet<u64> = BTreeSet::new();
    let m64 = m as u64;
    for u in small_subsets(m, k).into_iter().filter(|u| !u.is_empty()) {
        let mut z = set.last().copied().unwrap_or(0) + m64 + 1;
        loop {
            let block: Vec<u64> = u.iter().map(|&x| z - x).collect();
            let clash = block.iter().any(|&d| {
                set.iter()
                    .chain(block.iter())
                    .any(|&a| a < d && (set.contains(&(d - a)) || block.contains(&(d - a))))
            });
            if !clash {
                set.extend(block);
                break;
            }
            z += 1;
        }
    }
    let horizon = set.last().copied().unwrap_or(0);
    SumFreeSet::new(set, horizon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn brute_total(n: usize) -> u64 {
        (0u64..1 << n)
            .filter(|&mask| {
                let set: Vec<u64> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i as u64 + 1).collect();
                set.iter().all(|&x| set.iter().all(|&y| !set.contains(&(x + y))))
            })
            .count() as u64
    }

    #[test]
    fn sum_free_examples() {
        assert!(is_sum_free(&[1, 3, 5, 7, 9]).sum_free);
        assert_eq!(is_sum_free(&[1, 2]).witness, Some((1, 1, 2)));
        assert!(is_sum_free(&[2, 3, 7]).sum_free);
        assert!(SumFreeSet::parse("1,2").is_err());
        assert_eq!(SumFreeSet::parse("8 3,1").unwrap().elements(), &[1, 3, 8]);
    }

    #[test]
    fn census_small() {
        assert_eq!(census(3).unwrap().total, 6);
        assert_eq!(census(4).unwrap().total, 9);
        for n in 0..=14 {
            let c = census_with(n, Execution::Parallel).unwrap();
            assert_eq!(c.total, brute_total(n), "n = {n}");
            assert_eq!(c.odd_type, 1 << n.div_ceil(2));
            assert_eq!(c.top_type, 1 << n.div_ceil(2));
            assert_eq!(c.total, c.odd_type + c.top_type - c.both_types + c.other);
        }
        assert!(census(43).is_err());
    }

    #[test]
    fn coin_toss_is_sum_free_and_deterministic() {
        for seed in 0..50 {
            let s = random_sum_free(seed, 500).unwrap();
            assert!(is_sum_free(s.elements()).sum_free);
            assert_eq!(s, random_sum_free(seed, 500).unwrap());
        }
        assert_ne!(random_sum_free_trial(1, 0, 300).unwrap(), random_sum_free_trial(1, 1, 300).unwrap());
    }

    #[test]
    fn coin_toss_excludes_sums() {
        let s = random_sum_free(3, 200).unwrap();
        let set: BTreeSet<u64> = s.elements().iter().copied().collect();
        for x in 1..=200u64 {
            let forced = set.iter().any(|&a| a < x && set.contains(&(x - a)));
            if forced {
                assert!(!set.contains(&x));
            }
        }
    }

    #[test]
    fn density_experiment_is_schedule_independent() {
        let a = density_experiment(300, 400, 11, 0.05, Execution::Parallel).unwrap();
        let b = density_experiment(300, 400, 11, 0.05, Execution::Sequential).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.histogram.iter().map(|b| b.count).sum::<u64>(), 300);
        assert_eq!(a.histogram.len(), 20);
    }

    #[test]
    fn windows() {
        assert_eq!(circulant_window(&[1], 4).unwrap(), named::path(4));
        let g = circulant_window(&[1, 2], 3).unwrap();
        assert_eq!(g, named::complete(3));
        let g = circulant_window(&[1, 4], 10).unwrap();
        for x in 0..8 {
            for y in 0..8 {
                if x != y {
                    assert_eq!(g.has_edge(x, y), g.has_edge(x + 1, y + 1));
                }
            }
        }
    }

    #[test]
    fn henson_unit_difference_fails() {
        let r = henson_window_check(&[1], 2, 8, 1000, Execution::Sequential).unwrap();
        assert!(!r.passed());
        assert!(r.obstructions.iter().any(|o| o.u == vec![0, 3]));
    }

    #[test]
    fn greedy_gap_set_passes_small_window() {
        let s = greedy_gap_set(2, 10).unwrap();
        assert!(is_sum_free(s.elements()).sum_free);
        let r = henson_window_check(s.elements(), 2, 10, s.horizon() + 20, Execution::Parallel).unwrap();
        assert!(r.passed(), "{:?}", r.obstructions);
    }
}
