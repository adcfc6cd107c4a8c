//! Exhaustive comparison of tuple regularity with homogeneity on small graphs.

use serde::{Deserialize, Serialize};

use super::homog::is_homogeneous;
use super::regularity::{is_t_tuple_regular, REGULARITY_T_LIMIT};
use crate::enumerate::graphs_up_to_iso;
use crate::error::{Error, Result};
use crate::io::to_graph6;
use crate::par::{self, Execution};

pub const SWEEP_ORDER_LIMIT: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepLevel {
    pub order: usize,
    pub graphs: usize,
    /// Graphs that are t-tuple regular for every `t` in `1..=t_max`.
    pub tuple_regular: usize,
    pub homogeneous: usize,
    /// graph6 strings of graphs on which the two verdicts differ.
    pub mismatches: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularitySweep {
    pub max_order: usize,
    pub t_max: usize,
    pub levels: Vec<SweepLevel>,
}

impl RegularitySweep {
    pub fn agrees(&self) -> bool {
        self.levels.iter().all(|l| l.mismatches.is_empty())
    }
}

/// Runs the t-tuple regularity test for `t = 1..=t_max` and the homogeneity
/// test on every graph of order at most `max_order`, up to isomorphism.
pub fn regularity_sweep(max_order: usize, t_max: usize, exec: Execution) -> Result<RegularitySweep> {
    if max_order > SWEEP_ORDER_LIMIT {
        return Err(Error::size("regularity sweep order", SWEEP_ORDER_LIMIT, max_order));
    }
    if !(1..=REGULARITY_T_LIMIT).contains(&t_max) {
        return Err(Error::size("regularity sweep level", REGULARITY_T_LIMIT, t_max));
    }
    let mut levels = Vec::new();
    for order in 0..=max_order {
        let graphs = graphs_up_to_iso(order, exec)?;
        let rows = par::map(exec, &graphs, |g| -> Result<(bool, bool)> {
            let mut regular = true;
            for t in 1..=t_max {
                if !is_t_tuple_regular(g, t)?.holds {
                    regular = false;
                    break;
                }
            }
            Ok((regular, is_homogeneous(g)?.holds))
        });
        let mut level = SweepLevel {
            order,
            graphs: graphs.len(),
            tuple_regular: 0,
            homogeneous: 0,
            mismatches: Vec::new(),
        };
        for (g, row) in graphs.iter().zip(rows) {
            let (regular, homogeneous) = row?;
            level.tuple_regular += regular as usize;
            level.homogeneous += homogeneous as usize;
            if regular != homogeneous {
                level.mismatches.push(to_graph6(g));
            }
        }
        levels.push(level);
    }
    Ok(RegularitySweep {
        max_order,
        t_max,
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_tuple_regularity_matches_homogeneity_to_six() {
        let s = regularity_sweep(6, 5, Execution::Parallel).unwrap();
        assert!(s.agrees());
        assert_eq!(s.levels.iter().map(|l| l.graphs).collect::<Vec<_>>(), vec![1, 1, 2, 4, 11, 34, 156]);
        assert_eq!(s.levels[5].homogeneous, 3);
    }

    #[test]
    fn one_tuple_regularity_is_weaker() {
        let s = regularity_sweep(6, 1, Execution::Sequential).unwrap();
        assert!(!s.agrees());
    }
}
