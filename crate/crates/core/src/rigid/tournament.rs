//! Tournaments: complete antisymmetric irreflexive binary relations.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iso::automorphisms;
use crate::structure::{RelationalStructure, Signature};

pub const TOURNAMENT_LIMIT: usize = 64;
pub const TOURNAMENT_AUT_LIMIT: usize = 10;

/// `out[u]` has bit `v` set iff there is an arc `u -> v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    out: Vec<u64>,
}

/// Serialized form: the arc list.
#[derive(Serialize, Deserialize)]
struct TournamentDoc {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl Serialize for Tournament {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TournamentDoc {
            n: self.n,
            arcs: self.arcs(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tournament {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = TournamentDoc::deserialize(d)?;
        Tournament::from_arcs(doc.n, &doc.arcs).map_err(serde::de::Error::custom)
    }
}

impl Tournament {
    fn empty(n: usize) -> Result<Self> {
        if n > TOURNAMENT_LIMIT {
            return Err(Error::size("tournament order", TOURNAMENT_LIMIT, n));
        }
        Ok(Tournament { n, out: vec![0; n] })
    }

    /// Arc `u -> v` for every `u < v`.
    pub fn transitive(n: usize) -> Result<Self> {
        Self::from_fn(n, |u, v| u < v)
    }

    /// Arc `u -> v` iff `v - u (mod n)` lies in `1..=n/2`; regular for odd `n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n % 2 == 0 && n > 0 {
            return Err(Error::InvalidInput("rotational tournaments need odd order".into()));
        }
        Self::from_fn(n, |u, v| (v + n - u) % n <= n / 2)
    }

    /// Builds from a predicate consulted once per unordered pair `u < v`.
    pub fn from_fn(n: usize, mut forward: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut t = Self::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                if forward(u, v) {
                    t.out[u] |= 1 << v;
                } else {
                    t.out[v] |= 1 << u;
                }
            }
        }
        Ok(t)
    }

    /// Labelled tournament number `mask` on `n` vertices: bit `i` of the pair list in lex order
    /// set means the arc points from the larger vertex to the smaller.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        let mut i = 0;
        Self::from_fn(n, |_, _| {
            let forward = mask >> i & 1 == 0;
            i += 1;
            forward
        })
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut t = Self::empty(n)?;
        for &(u, v) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::InvalidVertex { vertex: x, domain: n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u as u64));
            }
            if t.beats(u, v) || t.beats(v, u) {
                return Err(Error::InvalidInput(format!("pair {{{u},{v}}} has more than one arc")));
            }
            t.out[u] |= 1 << v;
        }
        t.check_complete()?;
        Ok(t)
    }

    /// Reads a 0/1 matrix where entry `(u,v)` is 1 iff `u -> v`.
    pub fn from_matrix(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        let mut arcs = Vec::new();
        for (u, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput(format!("matrix row {u} has length {}", row.len())));
            }
            for (v, &x) in row.iter().enumerate() {
                match x {
                    0 => {}
                    1 => arcs.push((u, v)),
                    _ => return Err(Error::InvalidInput(format!("matrix entry ({u},{v}) is {x}"))),
                }
            }
        }
        Self::from_arcs(n, &arcs)
    }

    /// Parses either a 0/1 orientation matrix (one row per line) or an arc list
    /// with a leading `n` line and one `u v` arc per line.
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let Some(&(first_no, first)) = lines.first() else {
            return Self::empty(0);
        };
        let tokens: Vec<&str> = first.split_whitespace().collect();
        let matrix_like = tokens.len() > 1 || (lines.len() == 1 && first == "0");
        if matrix_like {
            let rows = lines
                .iter()
                .map(|&(no, l)| {
                    l.split_whitespace()
                        .map(|x| x.parse::<u8>().map_err(|_| Error::parse(no, 1, format!("bad matrix entry {x:?}"))))
                        .collect::<Result<Vec<u8>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            return Self::from_matrix(&rows);
        }
        let n: usize = first
            .parse()
            .map_err(|_| Error::parse(first_no, 1, "expected vertex count"))?;
        let mut arcs = Vec::new();
        for &(no, l) in &lines[1..] {
            let parts: Vec<&str> = l.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(Error::parse(no, 1, "expected `u v`"));
            }
            let u = parts[0].parse().map_err(|_| Error::parse(no, 1, "bad vertex"))?;
            let v = parts[1].parse().map_err(|_| Error::parse(no, 1, "bad vertex"))?;
            arcs.push((u, v));
        }
        Self::from_arcs(n, &arcs)
    }

    fn check_complete(&self) -> Result<()> {
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.beats(u, v) && !self.beats(v, u) {
                    return Err(Error::InvalidInput(format!("pair {{{u},{v}}} has no arc")));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn beats(&self, u: usize, v: usize) -> bool {
        self.out[u] >> v & 1 == 1
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u].count_ones() as usize
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.beats(a, b) {
                    v.push((a, b));
                }
            }
        }
        v
    }

    /// True iff the three vertices form a directed 3-cycle.
    pub fn is_cyclic_triple(&self, a: usize, b: usize, c: usize) -> bool {
        (self.beats(a, b) && self.beats(b, c) && self.beats(c, a))
            || (self.beats(b, a) && self.beats(c, b) && self.beats(a, c))
    }

    pub fn signature() -> Signature {
        Signature::new([("T", 2)]).expect("static signature")
    }

    pub fn to_structure(&self) -> Result<RelationalStructure> {
        let mut s = RelationalStructure::new(Arc::new(Self::signature()), self.n)?;
        for (u, v) in self.arcs() {
            s.add(0, &[u, v])?;
        }
        Ok(s)
    }

    /// Reads the relation named `T`, or the only binary relation.
    pub fn from_structure(s: &RelationalStructure) -> Result<Self> {
        let sig = s.signature();
        let idx = sig.index_of("T").or_else(|| {
            let binary: Vec<usize> = (0..sig.len()).filter(|&i| sig.relations()[i].arity == 2).collect();
            (binary.len() == 1).then(|| binary[0])
        });
        let idx = idx
            .filter(|&i| sig.relations()[i].arity == 2)
            .ok_or_else(|| Error::SignatureMismatch("expected one binary relation T".into()))?;
        let arcs: Vec<(usize, usize)> = s.table(idx).tuples().map(|t| (t[0], t[1])).collect();
        Self::from_arcs(s.domain_size(), &arcs)
    }

    /// Induced subtournament; `verts[i]` becomes vertex `i`.
    pub fn induced(&self, verts: &[usize]) -> Result<Self> {
        Self::from_fn(verts.len(), |i, j| self.beats(verts[i], verts[j]))
    }
}

/// Exact automorphism-group order.
pub fn tournament_aut_order(t: &Tournament) -> Result<u128> {
    if t.order() > TOURNAMENT_AUT_LIMIT {
        return Err(Error::size("tournament order", TOURNAMENT_AUT_LIMIT, t.order()));
    }
    Ok(automorphisms(&t.to_structure()?)?.order)
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Euler's criterion: `a` is a nonzero quadratic residue modulo the odd prime `p`.
pub fn is_quadratic_residue(a: u64, p: u64) -> bool {
    a % p != 0 && pow_mod(a, (p - 1) / 2, p) == 1
}

/// Arc `p -> q` between distinct primes congruent to 3 mod 4 iff `q` is a residue mod `p`.
pub fn prime_arc(p: u64, q: u64) -> bool {
    is_quadratic_residue(q, p)
}

/// Tournament on the given primes (each congruent to 3 mod 4) via quadratic residues.
pub fn prime_tournament(primes: &[u64]) -> Result<Tournament> {
    for &p in primes {
        if p % 4 != 3 || !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not a prime congruent to 3 mod 4")));
        }
    }
    Tournament::from_fn(primes.len(), |i, j| prime_arc(primes[i], primes[j]))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_cycle_and_transitive() {
        let c3 = Tournament::cyclic(3).unwrap();
        assert!(c3.is_cyclic_triple(0, 1, 2));
        assert_eq!(tournament_aut_order(&c3).unwrap(), 3);
        for n in 1..=6 {
            assert_eq!(tournament_aut_order(&Tournament::transitive(n).unwrap()).unwrap(), 1);
        }
        let order = tournament_aut_order(&Tournament::cyclic(7).unwrap()).unwrap();
        assert!(order % 7 == 0 && order % 2 == 1);
    }

    #[test]
    fn validation_and_parsing() {
        assert!(Tournament::from_arcs(2, &[]).is_err());
        assert!(Tournament::from_arcs(2, &[(0, 1), (1, 0)]).is_err());
        assert!(matches!(Tournament::from_arcs(2, &[(0, 0)]), Err(Error::SelfLoop(0))));
        let t = Tournament::parse("3\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(t, Tournament::cyclic(3).unwrap());
        let m = Tournament::parse("0 1 0\n0 0 1\n1 0 0\n").unwrap();
        assert_eq!(m, t);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<Tournament>(&json).unwrap(), t);
    }

    #[test]
    fn prime_tournament_is_a_tournament() {
        let ps: Vec<u64> = (3..200).filter(|&p| p % 4 == 3 && is_prime(p)).collect();
        for &p in &ps {
            for &q in &ps {
                if p != q {
                    assert_ne!(prime_arc(p, q), prime_arc(q, p));
                }
            }
        }
        let t = prime_tournament(&ps[..8]).unwrap();
        assert_eq!(t.order(), 8);
        assert!(prime_tournament(&[5]).is_err());
    }
}
