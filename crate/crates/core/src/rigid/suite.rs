//! Exhaustive and sampled checks over tournaments, C-relations and their superpositions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ctree::{c_aut_order, c_relation_of_tree, tree_of_c_relation, RootedBinaryTree, TREE_ENUMERATION_LIMIT};
use super::ramsey::{ramsey_failure_colouring, superpose, superposition_aut_order};
use super::tournament::{tournament_aut_order, Tournament};
use super::tournaments_up_to_iso;
use crate::error::{Error, Result};
use crate::par::{self, Execution};

pub const SAMPLE_POINT_LIMIT: usize = 11;
pub const RAMSEY_SWEEP_LIMIT: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TournamentClass {
    pub arcs: Vec<(usize, usize)>,
    pub aut_order: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TournamentCensus {
    pub n: usize,
    pub classes: Vec<TournamentClass>,
    pub all_odd: bool,
}

/// Isomorphism classes of tournaments on exactly `n` vertices with their automorphism orders.
pub fn tournament_census(n: usize, exec: Execution) -> Result<TournamentCensus> {
    let reps = tournaments_up_to_iso(n, exec)?;
    let orders = par::map(exec, &reps, tournament_aut_order);
    let classes = reps
        .iter()
        .zip(orders)
        .map(|(t, o)| {
            Ok(TournamentClass {
                arcs: t.arcs(),
                aut_order: o?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let all_odd = classes.iter().all(|c| c.aut_order % 2 == 1);
    Ok(TournamentCensus { n, classes, all_odd })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeFailure {
    pub tree: String,
    pub aut_order: u128,
    pub round_trip: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeCensus {
    pub leaves: usize,
    pub trees: usize,
    /// Trees whose C-relation group order is a power of two.
    pub two_power_orders: usize,
    /// Trees rebuilt exactly from their C-relation.
    pub round_trips: usize,
    pub failures: Vec<TreeFailure>,
}

impl TreeCensus {
    pub fn passed(&self) -> bool {
        self.two_power_orders == self.trees && self.round_trips == self.trees
    }
}

/// Checks every leaf-labelled tree on `leaves` leaves: 2-power automorphism
/// order of the C-relation and reconstruction of the tree from it.
pub fn tree_census(leaves: usize, exec: Execution) -> Result<TreeCensus> {
    if leaves > TREE_ENUMERATION_LIMIT {
        return Err(Error::size("tree census leaves", TREE_ENUMERATION_LIMIT, leaves));
    }
    let trees = RootedBinaryTree::all(leaves)?;
    let rows = par::map(exec, &trees, |t| -> Result<(u128, bool)> {
        let gamma = c_relation_of_tree(t);
        let order = c_aut_order(&gamma)?;
        let back = tree_of_c_relation(&gamma)?;
        Ok((order, back == t.canonical()))
    });
    let mut census = TreeCensus {
        leaves,
        trees: trees.len(),
        two_power_orders: 0,
        round_trips: 0,
        failures: Vec::new(),
    };
    for (t, row) in trees.iter().zip(rows) {
        let (order, round_trip) = row?;
        let two_power = order.is_power_of_two();
        census.two_power_orders += two_power as usize;
        census.round_trips += round_trip as usize;
        if (!two_power || !round_trip) && census.failures.len() < 64 {
            census.failures.push(TreeFailure {
                tree: t.to_string(),
                aut_order: order,
                round_trip,
            });
        }
    }
    Ok(census)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampledSuperposition {
    pub trial: u64,
    pub points: usize,
    pub tournament: Vec<(usize, usize)>,
    pub tree: String,
    pub aut_order: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperpositionSample {
    pub trials: u64,
    pub max_points: usize,
    pub seed: u64,
    pub rigid: u64,
    /// Samples with a nontrivial automorphism.
    pub non_rigid: Vec<SampledSuperposition>,
}

fn sample_superposition(seed: u64, trial: u64, max_points: usize) -> Result<SampledSuperposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let n = rng.random_range(1..=max_points);
    let pairs = n * (n - 1) / 2;
    let mask = if pairs == 0 { 0 } else { rng.random::<u64>() >> (64 - pairs) };
    let t = Tournament::from_mask(n, mask)?;
    let tree = RootedBinaryTree::random(n, &mut rng)?;
    let s = superpose(&t, &c_relation_of_tree(&tree))?;
    Ok(SampledSuperposition {
        trial,
        points: n,
        tournament: t.arcs(),
        tree: tree.to_string(),
        aut_order: superposition_aut_order(&s)?,
    })
}

/// Superposes `trials` random tournaments with random C-relations on `1..=max_points`
/// points and records which are not rigid. Trial `t` uses stream `t` of the seed.
pub fn superposition_sample(trials: u64, max_points: usize, seed: u64, exec: Execution) -> Result<SuperpositionSample> {
    if max_points == 0 || max_points > SAMPLE_POINT_LIMIT {
        return Err(Error::size("sampled superposition points", SAMPLE_POINT_LIMIT, max_points));
    }
    let count = usize::try_from(trials).map_err(|_| Error::InvalidInput("too many trials".into()))?;
    let rows = par::map_range(exec, 0..count, |t| sample_superposition(seed, t as u64, max_points));
    let mut rigid = 0;
    let mut non_rigid = Vec::new();
    for row in rows {
        let s = row?;
        if s.aut_order == 1 {
            rigid += 1;
        } else {
            non_rigid.push(s);
        }
    }
    Ok(SuperpositionSample {
        trials,
        max_points,
        seed,
        rigid,
        non_rigid,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseySweepLevel {
    pub points: usize,
    pub superpositions: usize,
    pub with_cyclic_triple: usize,
    pub certified: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseySweep {
    pub max_points: usize,
    pub levels: Vec<RamseySweepLevel>,
    /// Tournament masks (with point count) whose colouring left a cyclic triple monochromatic.
    pub failures: Vec<(usize, u64)>,
}

impl RamseySweep {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.levels.iter().all(|l| l.certified == l.with_cyclic_triple)
    }
}

/// Colours every labelled tournament on `n <= max_points` points against the order
/// `0 < 1 < ... < n-1`, after superposing it with a C-relation (the labelled trees
/// are cycled through by mask). Every pair of a tournament and a total order is
/// isomorphic to one of these.
pub fn ramsey_sweep(max_points: usize, exec: Execution) -> Result<RamseySweep> {
    if max_points > RAMSEY_SWEEP_LIMIT {
        return Err(Error::size("Ramsey sweep points", RAMSEY_SWEEP_LIMIT, max_points));
    }
    let mut levels = Vec::new();
    let mut failures = Vec::new();
    for n in 1..=max_points {
        let trees = RootedBinaryTree::all(n)?;
        let order: Vec<usize> = (0..n).collect();
        let pairs = n * (n - 1) / 2;
        let rows = par::map_range(exec, 0..1usize << pairs, |mask| -> Result<(bool, bool)> {
            let t = Tournament::from_mask(n, mask as u64)?;
            let gamma = c_relation_of_tree(&trees[mask % trees.len()]);
            let c = ramsey_failure_colouring(&superpose(&t, &gamma)?, &order)?;
            Ok((!c.cyclic_triples.is_empty(), c.no_monochromatic_cyclic_triple))
        });
        let mut level = RamseySweepLevel {
            points: n,
            superpositions: rows.len(),
            with_cyclic_triple: 0,
            certified: 0,
        };
        for (mask, row) in rows.into_iter().enumerate() {
            let (cyclic, ok) = row?;
            if cyclic {
                level.with_cyclic_triple += 1;
                if ok {
                    level.certified += 1;
                } else {
                    failures.push((n, mask as u64));
                }
            }
        }
        levels.push(level);
    }
    Ok(RamseySweep {
        max_points,
        levels,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_censuses() {
        let t4 = tournament_census(4, Execution::Sequential).unwrap();
        assert_eq!(t4.classes.len(), 4);
        assert!(t4.all_odd);
        let trees = tree_census(5, Execution::Parallel).unwrap();
        assert_eq!(trees.trees, 105);
        assert!(trees.passed());
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = superposition_sample(50, 6, 9, Execution::Parallel).unwrap();
        let b = superposition_sample(50, 6, 9, Execution::Sequential).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rigid, 50);
    }

    #[test]
    fn random_trees_cover_all_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..400 {
            seen.insert(RootedBinaryTree::random(4, &mut rng).unwrap().canonical().to_string());
        }
        assert_eq!(seen.len(), 15);
    }

    #[test]
    fn sweep_to_four_points() {
        let s = ramsey_sweep(4, Execution::Parallel).unwrap();
        assert!(s.passed());
        assert_eq!(s.levels[2].superpositions, 8);
        assert_eq!(s.levels[2].with_cyclic_triple, 2);
    }
}
