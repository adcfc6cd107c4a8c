//! Multiorders and permutation patterns.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::enumerate::for_each_subset;
use crate::error::{Error, Result};
use crate::perm::is_permutation;
use crate::structure::{RelationalStructure, Signature};

pub const PATTERN_LIMIT: usize = 12;

/// `orders[i][v]` is the rank of point `v` in the `i`-th total order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiOrder {
    pub n: usize,
    pub orders: Vec<Vec<usize>>,
}

impl MultiOrder {
    pub fn new(n: usize, orders: Vec<Vec<usize>>) -> Result<Self> {
        for (i, o) in orders.iter().enumerate() {
            if o.len() != n || !is_permutation(o) {
                return Err(Error::InvalidInput(format!("order {i} is not a ranking of 0..{n}")));
            }
        }
        Ok(MultiOrder { n, orders })
    }

    /// Points are positions; the first order is by position, the second by value.
    pub fn from_permutation(p: &[usize]) -> Result<Self> {
        let zero = one_based(p)?;
        MultiOrder::new(p.len(), vec![(0..p.len()).collect(), zero])
    }

    /// Inverse of [`MultiOrder::from_permutation`] for 2-orders.
    pub fn to_permutation(&self) -> Result<Vec<usize>> {
        if self.orders.len() != 2 {
            return Err(Error::InvalidInput("a permutation needs exactly two orders".into()));
        }
        let mut by_first = vec![0; self.n];
        for v in 0..self.n {
            by_first[self.orders[0][v]] = v;
        }
        Ok(by_first.iter().map(|&v| self.orders[1][v] + 1).collect())
    }

    pub fn signature(m: usize) -> Signature {
        Signature::new((1..=m).map(|i| (format!("L{i}"), 2))).expect("distinct names")
    }

    pub fn to_structure(&self) -> Result<RelationalStructure> {
        let mut s = RelationalStructure::new(Arc::new(Self::signature(self.orders.len())), self.n)?;
        for (i, o) in self.orders.iter().enumerate() {
            for u in 0..self.n {
                for v in 0..self.n {
                    if o[u] < o[v] {
                        s.add(i, &[u, v])?;
                    }
                }
            }
        }
        Ok(s)
    }

    /// The pattern (as a 1-based permutation) of the 2-order induced on `points`.
    pub fn pattern_of(&self, points: &[usize]) -> Vec<usize> {
        let mut pts = points.to_vec();
        pts.sort_by_key(|&v| self.orders[0][v]);
        let mut vals: Vec<usize> = pts.iter().map(|&v| self.orders[1][v]).collect();
        let mut sorted = vals.clone();
        sorted.sort_unstable();
        for x in vals.iter_mut() {
            *x = sorted.binary_search(x).expect("value present") + 1;
        }
        vals
    }
}

fn one_based(p: &[usize]) -> Result<Vec<usize>> {
    let zero: Vec<usize> = p.iter().map(|&x| x.wrapping_sub(1)).collect();
    if !is_permutation(&zero) {
        return Err(Error::InvalidInput(format!("{p:?} is not a permutation of 1..={}", p.len())));
    }
    Ok(zero)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternMatch {
    pub contained: bool,
    /// 1-based positions in `q` of the lexicographically least occurrence.
    pub positions: Option<Vec<usize>>,
}

/// Whether `q` contains the pattern `p` (both 1-based permutations).
pub fn pattern_contains(p: &[usize], q: &[usize]) -> Result<PatternMatch> {
    one_based(p)?;
    one_based(q)?;
    if q.len() > PATTERN_LIMIT {
        return Err(Error::size("pattern text length", PATTERN_LIMIT, q.len()));
    }
    if p.len() > q.len() {
        return Ok(PatternMatch {
            contained: false,
            positions: None,
        });
    }
    let k = p.len();
    let mut found = None;
    for_each_subset(q.len(), k, |idx| {
        if found.is_some() {
            return;
        }
        let order_isomorphic = (0..k).all(|i| (i + 1..k).all(|j| (p[i] < p[j]) == (q[idx[i]] < q[idx[j]])));
        if order_isomorphic {
            found = Some(idx.iter().map(|&i| i + 1).collect());
        }
    });
    Ok(PatternMatch {
        contained: found.is_some(),
        positions: found,
    })
}
