//! Rigid structures: tournaments, C-relations of binary trees, their superposition,
//! the Ramsey-failure colouring, multiorders and permutation patterns.

pub mod ctree;
pub mod kronecker;
pub mod pattern;
pub mod ramsey;
pub mod suite;
pub mod tournament;

use std::collections::BTreeMap;

pub use ctree::{c_aut_order, c_relation_of_tree, tree_of_c_relation, CRelation, RootedBinaryTree, Tree};
pub use kronecker::{kronecker_multiorder, pattern_witnesses, Direction, KroneckerWindow, Surd};
pub use pattern::{pattern_contains, MultiOrder, PatternMatch};
pub use ramsey::{ramsey_failure_colouring, superpose, superposition_aut_order, RamseyColouring};
pub use suite::{ramsey_sweep, superposition_sample, tournament_census, tree_census};
pub use tournament::{prime_tournament, tournament_aut_order, Tournament};

use crate::canon::canonical_code;
use crate::error::{Error, Result};
use crate::par::{self, Execution};

pub const TOURNAMENT_CLASS_LIMIT: usize = 7;

/// One tournament per isomorphism class on exactly `n` vertices, ordered by canonical code.
pub fn tournaments_up_to_iso(n: usize, exec: Execution) -> Result<Vec<Tournament>> {
    if n > TOURNAMENT_CLASS_LIMIT {
        return Err(Error::size("tournament enumeration order", TOURNAMENT_CLASS_LIMIT, n));
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let coded = par::map_range(exec, 0..1usize << pairs, |mask| -> Result<(Vec<u8>, usize)> {
        let t = Tournament::from_mask(n, mask as u64)?;
        Ok((canonical_code(&t.to_structure()?)?, mask))
    });
    let mut classes: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    for item in coded {
        let (code, mask): (Vec<u8>, usize) = item?;
        classes.entry(code).or_insert(mask);
    }
    classes
        .into_values()
        .map(|mask| Tournament::from_mask(n, mask as u64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tournament_class_counts() {
        let counts: Vec<usize> = (0..=5)
            .map(|n| tournaments_up_to_iso(n, Execution::Sequential).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 4, 12]);
    }
}
