//! Multiorders on lattice windows from irrational directions: each order ranks
//! integer points by their dot product with a direction vector.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::pattern::MultiOrder;
use crate::error::{Error, Result};

pub const WINDOW_RADIUS_LIMIT: i64 = 20;
pub const WINDOW_POINT_LIMIT: usize = 1 << 20;

/// A finite sum `sum c * sqrt(d)` with squarefree radicands (`d = 1` is the rational part).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Surd {
    pub terms: BTreeMap<u64, i64>,
}

impl Surd {
    pub fn integer(c: i64) -> Self {
        Surd::from_terms([(c, 1)])
    }

    /// Builds `sum c * sqrt(d)`, pulling square factors out of each radicand.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, u64)>) -> Self {
        let mut out: BTreeMap<u64, i64> = BTreeMap::new();
        for (c, d) in terms {
            if d == 0 || c == 0 {
                continue;
            }
            let (k, free) = squarefree_split(d);
            *out.entry(free).or_default() += c * k as i64;
        }
        out.retain(|_, c| *c != 0);
        Surd { terms: out }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms.iter().map(|(&d, &c)| c as f64 * (d as f64).sqrt()).sum()
    }

    /// Parses forms like `1`, `-3`, `sqrt(2)`, `2*sqrt(3)`, `1+sqrt(2)`, `2√5`.
    pub fn parse(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::InvalidInput("empty coordinate".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes: Vec<char> = s.chars().collect();
        for i in 1..=bytes.len() {
            if i == bytes.len() || ((bytes[i] == '+' || bytes[i] == '-') && bytes[i - 1] != '(') {
                let term: String = bytes[start..i].iter().collect();
                terms.push(parse_term(&term)?);
                start = i;
            }
        }
        Ok(Surd::from_terms(terms))
    }
}

fn parse_term(t: &str) -> Result<(i64, u64)> {
    let bad = || Error::InvalidInput(format!("cannot read surd term {t:?}"));
    let (neg, body) = match t.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let root_at = body.find("sqrt").map(|i| (i, 4)).or_else(|| body.find('√').map(|i| (i, '√'.len_utf8())));
    let (coef, rad) = match root_at {
        None => (body.parse::<i64>().map_err(|_| bad())?, 1),
        Some((i, len)) => {
            let c = body[..i].trim_end_matches('*');
            let c = if c.is_empty() { 1 } else { c.parse::<i64>().map_err(|_| bad())? };
            let r = body[i + len..].trim_start_matches('(').trim_end_matches(')');
            (c, r.parse::<u64>().map_err(|_| bad())?)
        }
    };
    Ok((if neg { -coef } else { coef }, rad))
}

fn squarefree_split(mut d: u64) -> (u64, u64) {
    let mut outside = 1;
    let mut p = 2;
    while p * p <= d {
        while d % (p * p) == 0 {
            d /= p * p;
            outside *= p;
        }
        p += 1;
    }
    (outside, d)
}

/// Exact sign of `sum c * sqrt(d)` over distinct squarefree `d`, by integer square-root bracketing.
fn surd_sign(terms: &[(u64, i128)]) -> Ordering {
    let live: Vec<(u64, i128)> = terms.iter().copied().filter(|&(_, c)| c != 0).collect();
    if live.is_empty() {
        return Ordering::Equal;
    }
    let approx: f64 = live.iter().map(|&(d, c)| c as f64 * (d as f64).sqrt()).sum();
    let scale: f64 = live.iter().map(|&(d, c)| (c as f64).abs() * (d as f64).sqrt()).sum();
    if approx.abs() > scale * 1e-9 {
        return approx.partial_cmp(&0.0).expect("finite");
    }
    let mut bits = 64u64;
    loop {
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for &(d, c) in &live {
            let mag = BigUint::from(c.unsigned_abs());
            let sq: BigUint = (&mag * &mag * BigUint::from(d)) << (2 * bits);
            let r = BigInt::from_biguint(Sign::Plus, sq.sqrt());
            if c > 0 {
                lo += &r;
                hi += &r + 1;
            } else {
                lo -= &r + 1;
                hi -= &r;
            }
        }
        if lo.is_positive() {
            return Ordering::Greater;
        }
        if hi.is_negative() {
            return Ordering::Less;
        }
        bits *= 2;
        assert!(bits <= 1 << 16, "nonzero surd combination failed to separate from zero");
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Direction {
    /// Coordinates as integer combinations of square roots; comparisons are exact.
    Exact(Vec<Surd>),
    /// Floating coordinates; near-ties are refused.
    Real(Vec<f64>),
}

impl Direction {
    pub fn dimension(&self) -> usize {
        match self {
            Direction::Exact(v) => v.len(),
            Direction::Real(v) => v.len(),
        }
    }

    /// Comma-separated coordinates; surd syntax when every coordinate parses as one.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.trim().trim_matches(|c| c == '(' || c == ')').split(',').collect();
        if let Ok(v) = parts.iter().map(|p| Surd::parse(p)).collect::<Result<Vec<_>>>() {
            return Ok(Direction::Exact(v));
        }
        parts
            .iter()
            .map(|p| p.trim().parse::<f64>().ok().filter(|x| x.is_finite()))
            .collect::<Option<Vec<f64>>>()
            .map(Direction::Real)
            .ok_or_else(|| Error::InvalidInput(format!("cannot read direction {text:?}")))
    }

    /// Exact rational independence of surd coordinates (rank of their coefficient vectors).
    /// Real directions are only checked at comparison time.
    pub fn check_independent(&self) -> Result<()> {
        let Direction::Exact(coords) = self else {
            return Ok(());
        };
        let radicands: Vec<u64> = coords
            .iter()
            .flat_map(|s| s.terms.keys().copied())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let rows: Vec<Vec<BigInt>> = coords
            .iter()
            .map(|s| radicands.iter().map(|d| BigInt::from(*s.terms.get(d).unwrap_or(&0))).collect())
            .collect();
        if rank(rows) < coords.len() {
            return Err(Error::DegenerateDirection(
                "direction coordinates are rationally dependent".into(),
            ));
        }
        Ok(())
    }

    /// Order of `p` and `q` along this direction.
    pub fn compare(&self, p: &[i64], q: &[i64]) -> Result<Ordering> {
        match self {
            Direction::Exact(coords) => {
                let mut acc: BTreeMap<u64, i128> = BTreeMap::new();
                for ((s, &a), &b) in coords.iter().zip(p).zip(q) {
                    let diff = (a - b) as i128;
                    for (&d, &c) in &s.terms {
                        *acc.entry(d).or_default() += diff * c as i128;
                    }
                }
                let terms: Vec<(u64, i128)> = acc.into_iter().collect();
                let ord = surd_sign(&terms);
                if ord == Ordering::Equal && p != q {
                    return Err(Error::DegenerateDirection(format!("points {p:?} and {q:?} tie")));
                }
                Ok(ord)
            }
            Direction::Real(v) => {
                let mut dot = 0.0;
                let mut mag = 0.0;
                for ((&x, &a), &b) in v.iter().zip(p).zip(q) {
                    let t = x * (a - b) as f64;
                    dot += t;
                    mag += t.abs();
                }
                let bound = (mag + 1.0) * 64.0 * f64::EPSILON;
                if p == q {
                    Ok(Ordering::Equal)
                } else if dot.abs() <= bound {
                    Err(Error::DegenerateDirection(format!(
                        "points {p:?} and {q:?} are inseparable at double precision"
                    )))
                } else {
                    Ok(dot.partial_cmp(&0.0).expect("finite"))
                }
            }
        }
    }
}

fn rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let (a, b) = (m[r][c].clone(), m[i][c].clone());
                for j in 0..cols {
                    let v = &m[i][j] * &a - &m[r][j] * &b;
                    m[i][j] = v;
                }
            }
        }
        r += 1;
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KroneckerWindow {
    pub radius: i64,
    /// Window points in lexicographic coordinate order; point `i` is element `i`.
    pub points: Vec<Vec<i64>>,
    pub multiorder: MultiOrder,
}

/// Ranks the integer points of `[-radius, radius]^n` along each direction.
pub fn kronecker_multiorder(directions: &[Direction], radius: i64) -> Result<KroneckerWindow> {
    let m = directions.len();
    let n = directions.first().map_or(0, Direction::dimension);
    if m == 0 || directions.iter().any(|d| d.dimension() != n) {
        return Err(Error::InvalidInput("directions must be nonempty and share one dimension".into()));
    }
    if m >= n {
        return Err(Error::InvalidInput(format!(
            "need fewer directions ({m}) than dimensions ({n})"
        )));
    }
    if !(0..=WINDOW_RADIUS_LIMIT).contains(&radius) {
        return Err(Error::size("window radius", WINDOW_RADIUS_LIMIT as usize, radius.max(0) as usize));
    }
    let side = (2 * radius + 1) as usize;
    let count = side
        .checked_pow(n as u32)
        .filter(|&c| c <= WINDOW_POINT_LIMIT)
        .ok_or_else(|| Error::size("window points", WINDOW_POINT_LIMIT, usize::MAX))?;
    for d in directions {
        d.check_independent()?;
    }
    let points: Vec<Vec<i64>> = (0..count)
        .map(|mut i| {
            let mut p = vec![0i64; n];
            for k in (0..n).rev() {
                p[k] = (i % side) as i64 - radius;
                i /= side;
            }
            p
        })
        .collect();
    let mut orders = Vec::with_capacity(m);
    for d in directions {
        let mut failure = None;
        let mut idx: Vec<usize> = (0..count).collect();
        idx.sort_by(|&a, &b| match d.compare(&points[a], &points[b]) {
            Ok(o) => o,
            Err(e) => {
                failure.get_or_insert(e);
                a.cmp(&b)
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        let mut rank = vec![0; count];
        for (r, &i) in idx.iter().enumerate() {
            rank[i] = r;
        }
        orders.push(rank);
    }
    Ok(KroneckerWindow {
        radius,
        points,
        multiorder: MultiOrder::new(count, orders)?,
    })
}

/// First occurrence (by lexicographic point subset) of each size-`k` pattern of a 2-order,
/// stopping early once all `k!` patterns are seen.
pub fn pattern_witnesses(mo: &MultiOrder, k: usize) -> BTreeMap<Vec<usize>, Vec<usize>> {
    let total: usize = (1..=k).product();
    let mut found = BTreeMap::new();
    if mo.orders.len() < 2 || k == 0 || k > mo.n {
        return found;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        found.entry(mo.pattern_of(&idx)).or_insert_with(|| idx.clone());
        if found.len() == total {
            return found;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return found;
            }
            i -= 1;
            if idx[i] < mo.n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surd_parsing() {
        assert_eq!(Surd::parse("2*sqrt(8)").unwrap(), Surd::from_terms([(4, 2)]));
        assert_eq!(Surd::parse("1 - √2").unwrap(), Surd::from_terms([(1, 1), (-1, 2)]));
        assert!(Surd::parse("x").is_err());
        assert!((Surd::parse("sqrt(4)").unwrap().to_f64() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn exact_signs() {
        assert_eq!(surd_sign(&[(1, 3), (2, -2)]), Ordering::Greater);
        assert_eq!(surd_sign(&[(2, 1393), (1, -1970)]), Ordering::Less);
        assert_eq!(surd_sign(&[(2, 0)]), Ordering::Equal);
    }

    #[test]
    fn two_dimensional_line() {
        let d = Direction::parse("(1, sqrt(2))").unwrap();
        let w = kronecker_multiorder(&[d], 1).unwrap();
        let pos = |p: [i64; 2]| w.points.iter().position(|q| q == &p).unwrap();
        let r = &w.multiorder.orders[0];
        assert!(r[pos([0, 0])] < r[pos([1, 0])]);
        assert!(r[pos([1, 0])] < r[pos([0, 1])]);
    }

    #[test]
    fn degenerate_directions() {
        let d = Direction::parse("1,2").unwrap();
        assert!(matches!(kronecker_multiorder(&[d], 2), Err(Error::DegenerateDirection(_))));
        let d = Direction::parse("sqrt(2),sqrt(8)").unwrap();
        assert!(matches!(kronecker_multiorder(&[d], 2), Err(Error::DegenerateDirection(_))));
        let d = Direction::parse("0.5,1.0").unwrap();
        assert!(matches!(kronecker_multiorder(&[d], 2), Err(Error::DegenerateDirection(_))));
        let d = Direction::parse("1,sqrt(2)").unwrap();
        assert!(kronecker_multiorder(&[d.clone(), d], 2).is_err());
    }
}
