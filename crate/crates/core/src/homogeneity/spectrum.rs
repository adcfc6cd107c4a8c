//! Exact characteristic polynomials and cospectral comparisons.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::regularity::is_t_tuple_regular;
use crate::enumerate::graphs_up_to_iso;
use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::io::to_graph6;
use crate::par::{self, Execution};

pub const SPECTRUM_ORDER_LIMIT: usize = 30;

/// Coefficients of `det(xI - A)`, leading coefficient first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpectralSignature {
    pub coefficients: Vec<i128>,
}

impl SpectralSignature {
    /// Human-readable polynomial, e.g. `x^3 - 3x - 2`.
    pub fn to_polynomial_string(&self) -> String {
        let deg = self.coefficients.len() - 1;
        let mut out = String::new();
        for (i, &c) in self.coefficients.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let p = deg - i;
            let sign = if c < 0 { "-" } else { "+" };
            let mag = c.unsigned_abs();
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let coeff = if mag == 1 && p > 0 { String::new() } else { mag.to_string() };
            let var = match p {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{p}"),
            };
            out.push_str(&coeff);
            out.push_str(&var);
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

fn overflow() -> Error {
    Error::InvalidInput("characteristic polynomial coefficient overflow".into())
}

/// Characteristic polynomial by Berkowitz's division-free recurrence, in checked `i128`.
pub fn spectral_signature(g: &FiniteGraph) -> Result<SpectralSignature> {
    let n = g.order();
    if n > SPECTRUM_ORDER_LIMIT {
        return Err(Error::size("spectral signature graph order", SPECTRUM_ORDER_LIMIT, n));
    }
    let a = |i: usize, j: usize| g.has_edge(i, j) as i128;
    let mut p: Vec<i128> = vec![1];
    for r in 0..n {
        // Toeplitz column: 1, -a_rr, -R C, -R A C, ..., -R A^{r-1} C.
        let mut t: Vec<i128> = vec![1, -a(r, r)];
        let mut v: Vec<i128> = (0..r).map(|i| a(i, r)).collect();
        for _ in 0..r {
            let rc = (0..r).try_fold(0i128, |acc, j| acc.checked_add(a(r, j).checked_mul(v[j])?));
            t.push(rc.ok_or_else(overflow)?.checked_neg().ok_or_else(overflow)?);
            let mut w = vec![0i128; r];
            for (i, wi) in w.iter_mut().enumerate() {
                let mut acc = 0i128;
                for (j, &vj) in v.iter().enumerate() {
                    if a(i, j) == 1 {
                        acc = acc.checked_add(vj).ok_or_else(overflow)?;
                    }
                }
                *wi = acc;
            }
            v = w;
        }
        let mut next = vec![0i128; r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            let mut acc = 0i128;
            for (j, &pj) in p.iter().enumerate() {
                if j <= i {
                    acc = acc
                        .checked_add(t[i - j].checked_mul(pj).ok_or_else(overflow)?)
                        .ok_or_else(overflow)?;
                }
            }
            *slot = acc;
        }
        p = next;
    }
    Ok(SpectralSignature { coefficients: p })
}

/// A cospectral group on which some tested regularity level is not constant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CospectralDisagreement {
    pub order: usize,
    pub polynomial: String,
    pub t: usize,
    /// graph6 strings of members passing, then failing, the level.
    pub passing: Vec<String>,
    pub failing: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CospectralSweep {
    pub max_order: usize,
    pub levels: Vec<usize>,
    pub graphs: usize,
    pub cospectral_groups: usize,
    pub disagreements: Vec<CospectralDisagreement>,
}

/// Groups all graphs on at most `max_order` vertices by characteristic polynomial
/// and reports groups where t-tuple regularity differs, for each `t` in `levels`.
pub fn cospectral_regularity_sweep(max_order: usize, levels: &[usize], exec: Execution) -> Result<CospectralSweep> {
    let mut graphs = 0;
    let mut groups = 0;
    let mut disagreements = Vec::new();
    for order in 0..=max_order {
        let all = graphs_up_to_iso(order, exec)?;
        graphs += all.len();
        let rows: Vec<Result<(SpectralSignature, Vec<bool>)>> = par::map(exec, &all, |g| {
            let sig = spectral_signature(g)?;
            let flags = levels
                .iter()
                .map(|&t| is_t_tuple_regular(g, t).map(|r| r.holds))
                .collect::<Result<Vec<_>>>()?;
            Ok((sig, flags))
        });
        let mut by_sig: BTreeMap<SpectralSignature, Vec<(usize, Vec<bool>)>> = BTreeMap::new();
        for (i, row) in rows.into_iter().enumerate() {
            let (sig, flags) = row?;
            by_sig.entry(sig).or_default().push((i, flags));
        }
        for (sig, members) in &by_sig {
            if members.len() < 2 {
                continue;
            }
            groups += 1;
            for (li, &t) in levels.iter().enumerate() {
                let (pass, fail): (Vec<_>, Vec<_>) = members.iter().partition(|(_, f)| f[li]);
                if !pass.is_empty() && !fail.is_empty() {
                    disagreements.push(CospectralDisagreement {
                        order,
                        polynomial: sig.to_polynomial_string(),
                        t,
                        passing: pass.iter().map(|(i, _)| to_graph6(&all[*i])).collect(),
                        failing: fail.iter().map(|(i, _)| to_graph6(&all[*i])).collect(),
                    });
                }
            }
        }
    }
    Ok(CospectralSweep {
        max_order,
        levels: levels.to_vec(),
        graphs,
        cospectral_groups: groups,
        disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn small_polynomials() {
        assert_eq!(
            spectral_signature(&named::complete(3)).unwrap().coefficients,
            vec![1, 0, -3, -2]
        );
        assert_eq!(
            spectral_signature(&named::empty(4)).unwrap().coefficients,
            vec![1, 0, 0, 0, 0]
        );
        assert_eq!(spectral_signature(&named::complete(3)).unwrap().to_polynomial_string(), "x^3 - 3x - 2");
    }

    #[test]
    fn star_and_square_are_cospectral() {
        let star = named::complete_bipartite(1, 4).disjoint_union(&named::empty(0));
        let a = star.disjoint_union(&named::empty(1));
        let b = named::cycle(4).disjoint_union(&named::empty(2));
        assert_eq!(a.order(), 6);
        let sa = spectral_signature(&a).unwrap();
        assert_eq!(sa, spectral_signature(&b).unwrap());
        assert_eq!(sa.coefficients, vec![1, 0, -4, 0, 0, 0, 0]);
    }

    #[test]
    fn petersen_polynomial() {
        // (x - 3)(x - 1)^5 (x + 2)^4
        let s = spectral_signature(&named::petersen()).unwrap();
        let mut expected = vec![1i128];
        let mut mul = |root: i128| {
            let mut next = vec![0i128; expected.len() + 1];
            for (i, &c) in expected.iter().enumerate() {
                next[i] += c;
                next[i + 1] -= root * c;
            }
            expected = next;
        };
        mul(3);
        for _ in 0..5 {
            mul(1);
        }
        for _ in 0..4 {
            mul(-2);
        }
        assert_eq!(s.coefficients, expected);
    }
}
