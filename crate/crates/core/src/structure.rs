//! Finite relational structures over a signature of named relations.
//!
//! Relation tables are stored densely: a relation of arity `k` on a domain of
//! size `n` is a bitset over all `n^k` tuples, indexed in mixed radix. This
//! keeps membership tests branch-free in the isomorphism kernels and gives a
//! canonical representation for equality and hashing.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on `n^arity` for a single dense relation table.
pub const MAX_TABLE_BITS: usize = 1 << 28;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RelationSymbol {
    pub name: String,
    pub arity: usize,
}

/// An ordered list of relation symbols with positive arities and unique names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    relations: Vec<RelationSymbol>,
}

impl Signature {
    pub fn new<S: Into<String>>(relations: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let mut out = Vec::new();
        for (name, arity) in relations {
            let name = name.into();
            if arity == 0 {
                return Err(Error::SignatureMismatch(format!(
                    "relation {name:?} has arity 0; nullary relations are not allowed"
                )));
            }
            if out.iter().any(|r: &RelationSymbol| r.name == name) {
                return Err(Error::SignatureMismatch(format!("duplicate relation name {name:?}")));
            }
            out.push(RelationSymbol { name, arity });
        }
        Ok(Signature { relations: out })
    }

    /// The empty signature (pure sets).
    pub fn empty() -> Self {
        Signature::default()
    }

    /// One binary relation `E`.
    pub fn graph() -> Self {
        Signature::new([("E", 2)]).expect("static signature")
    }

    pub fn relations(&self) -> &[RelationSymbol] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.relations.iter().position(|r| r.name == name)
    }

    pub fn max_arity(&self) -> usize {
        self.relations.iter().map(|r| r.arity).max().unwrap_or(0)
    }

    /// Concatenation of two signatures; names must not collide.
    pub fn union(&self, other: &Signature) -> Result<Signature> {
        Signature::new(
            self.relations
                .iter()
                .chain(other.relations.iter())
                .map(|r| (r.name.clone(), r.arity)),
        )
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .relations
            .iter()
            .map(|r| format!("{}/{}", r.name, r.arity))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Dense bitset over all `n^arity` tuples of a domain.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Table {
    arity: usize,
    n: usize,
    bits: Vec<u64>,
}

impl Table {
    pub fn new(arity: usize, n: usize) -> Result<Self> {
        let size = checked_pow(n, arity)
            .filter(|&s| s <= MAX_TABLE_BITS)
            .ok_or_else(|| Error::size("dense relation table (n^arity)", MAX_TABLE_BITS, usize::MAX))?;
        Ok(Table {
            arity,
            n,
            bits: vec![0; size.div_ceil(64)],
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    #[inline]
    pub(crate) fn index(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.arity);
        tuple.iter().fold(0, |acc, &x| acc * self.n + x)
    }

    #[inline]
    pub(crate) fn get_index(&self, idx: usize) -> bool {
        self.bits[idx >> 6] >> (idx & 63) & 1 == 1
    }

    #[inline]
    pub fn contains(&self, tuple: &[usize]) -> bool {
        self.get_index(self.index(tuple))
    }

    pub(crate) fn set_index(&mut self, idx: usize, value: bool) {
        if value {
            self.bits[idx >> 6] |= 1 << (idx & 63);
        } else {
            self.bits[idx >> 6] &= !(1 << (idx & 63));
        }
    }

    pub fn insert(&mut self, tuple: &[usize]) {
        let idx = self.index(tuple);
        self.set_index(idx, true);
    }

    pub fn remove(&mut self, tuple: &[usize]) {
        let idx = self.index(tuple);
        self.set_index(idx, false);
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub(crate) fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut t = vec![0; self.arity];
        for slot in t.iter_mut().rev() {
            *slot = idx % self.n;
            idx /= self.n;
        }
        t
    }

    /// Tuples in lexicographic order.
    pub fn tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.bits.iter().enumerate().flat_map(move |(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(self.decode(w * 64 + b))
            })
        })
    }
}

impl fmt::Debug for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.tuples()).finish()
    }
}

fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// A finite structure: a domain `0..n` and one table per relation symbol.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RelationalStructure {
    signature: Arc<Signature>,
    n: usize,
    tables: Vec<Table>,
}

impl RelationalStructure {
    pub fn new(signature: Arc<Signature>, n: usize) -> Result<Self> {
        let tables = signature
            .relations()
            .iter()
            .map(|r| Table::new(r.arity, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(RelationalStructure { signature, n, tables })
    }

    /// Builds a structure from explicit tuple lists, one list per relation.
    pub fn from_tuples(
        signature: Arc<Signature>,
        n: usize,
        tuples: &[Vec<Vec<usize>>],
    ) -> Result<Self> {
        if tuples.len() != signature.len() {
            return Err(Error::SignatureMismatch(format!(
                "expected {} tables, got {}",
                signature.len(),
                tuples.len()
            )));
        }
        let mut s = RelationalStructure::new(signature, n)?;
        for (r, list) in tuples.iter().enumerate() {
            for t in list {
                s.add(r, t)?;
            }
        }
        Ok(s)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn signature_arc(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn domain_size(&self) -> usize {
        self.n
    }

    pub fn table(&self, rel: usize) -> &Table {
        &self.tables[rel]
    }

    pub fn tables(&self) -> &[Table] {
        &self.tables
    }

    pub fn table_by_name(&self, name: &str) -> Option<&Table> {
        self.signature.index_of(name).map(|i| &self.tables[i])
    }

    pub fn same_signature(&self, other: &RelationalStructure) -> bool {
        Arc::ptr_eq(&self.signature, &other.signature) || self.signature == other.signature
    }

    fn check_tuple(&self, rel: usize, tuple: &[usize]) -> Result<()> {
        let arity = self.signature.relations()[rel].arity;
        if tuple.len() != arity {
            return Err(Error::SignatureMismatch(format!(
                "relation {} expects arity {arity}, got a tuple of length {}",
                self.signature.relations()[rel].name,
                tuple.len()
            )));
        }
        if let Some(&v) = tuple.iter().find(|&&v| v >= self.n) {
            return Err(Error::InvalidVertex {
                vertex: v,
                domain: self.n,
            });
        }
        Ok(())
    }

    pub fn add(&mut self, rel: usize, tuple: &[usize]) -> Result<()> {
        self.check_tuple(rel, tuple)?;
        self.tables[rel].insert(tuple);
        Ok(())
    }

    pub fn remove(&mut self, rel: usize, tuple: &[usize]) -> Result<()> {
        self.check_tuple(rel, tuple)?;
        self.tables[rel].remove(tuple);
        Ok(())
    }

    #[inline]
    pub fn holds(&self, rel: usize, tuple: &[usize]) -> bool {
        self.tables[rel].contains(tuple)
    }

    /// Substructure induced on `verts`, re-indexed `0..verts.len()` in the given order.
    pub fn induced_substructure(&self, verts: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.n];
        for &v in verts {
            if v >= self.n {
                return Err(Error::InvalidVertex {
                    vertex: v,
                    domain: self.n,
                });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidInput(format!("vertex {v} repeated in subset")));
            }
        }
        let m = verts.len();
        let mut out = RelationalStructure::new(Arc::clone(&self.signature), m)?;
        let mut local = Vec::new();
        let mut global = Vec::new();
        for (r, table) in self.tables.iter().enumerate() {
            let k = table.arity();
            local.clear();
            local.resize(k, 0);
            global.clear();
            global.resize(k, 0);
            for_each_tuple(m, k, &mut local, &mut |t| {
                for (g, &l) in global.iter_mut().zip(t) {
                    *g = verts[l];
                }
                if table.contains(&global) {
                    out.tables[r].insert(t);
                }
            });
        }
        Ok(out)
    }

    /// Image of the structure under `perm`, where `perm[v]` is the new label of `v`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length must equal domain size");
        let mut out = RelationalStructure::new(Arc::clone(&self.signature), self.n)
            .expect("same table sizes as an existing structure");
        for (r, table) in self.tables.iter().enumerate() {
            for t in table.tuples() {
                let img: Vec<usize> = t.iter().map(|&x| perm[x]).collect();
                out.tables[r].insert(&img);
            }
        }
        out
    }

    /// Keeps only the named relations (in the order given).
    pub fn reduct(&self, names: &[&str]) -> Result<Self> {
        let idx: Vec<usize> = names
            .iter()
            .map(|n| {
                self.signature
                    .index_of(n)
                    .ok_or_else(|| Error::SignatureMismatch(format!("no relation named {n:?}")))
            })
            .collect::<Result<_>>()?;
        let sig = Signature::new(idx.iter().map(|&i| {
            let r = &self.signature.relations()[i];
            (r.name.clone(), r.arity)
        }))?;
        Ok(RelationalStructure {
            signature: Arc::new(sig),
            n: self.n,
            tables: idx.iter().map(|&i| self.tables[i].clone()).collect(),
        })
    }

    /// Overlay of two structures on the same domain over the union signature.
    pub fn overlay(&self, other: &RelationalStructure) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DomainMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let sig = self.signature.union(&other.signature)?;
        Ok(RelationalStructure {
            signature: Arc::new(sig),
            n: self.n,
            tables: self.tables.iter().chain(other.tables.iter()).cloned().collect(),
        })
    }

    /// Total number of tuples across all relations.
    pub fn tuple_count(&self) -> usize {
        self.tables.iter().map(Table::len).sum()
    }

    pub fn to_document(&self) -> StructureDoc {
        StructureDoc {
            signature: self.signature.relations().to_vec(),
            n: self.n,
            tables: self
                .signature
                .relations()
                .iter()
                .zip(&self.tables)
                .map(|(r, t)| (r.name.clone(), t.tuples().collect()))
                .collect(),
        }
    }

    pub fn from_document(doc: &StructureDoc) -> Result<Self> {
        let sig = Signature::new(doc.signature.iter().map(|r| (r.name.clone(), r.arity)))?;
        for name in doc.tables.keys() {
            if sig.index_of(name).is_none() {
                return Err(Error::SignatureMismatch(format!(
                    "table {name:?} is not declared in the signature"
                )));
            }
        }
        let tuples: Vec<Vec<Vec<usize>>> = sig
            .relations()
            .iter()
            .map(|r| doc.tables.get(&r.name).cloned().unwrap_or_default())
            .collect();
        RelationalStructure::from_tuples(Arc::new(sig), doc.n, &tuples)
    }
}

impl fmt::Debug for RelationalStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("RelationalStructure");
        d.field("n", &self.n);
        for (r, t) in self.signature.relations().iter().zip(&self.tables) {
            d.field(&r.name, t);
        }
        d.finish()
    }
}

/// Serde adapter storing a [`RelationalStructure`] as its [`StructureDoc`].
pub mod as_document {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::{RelationalStructure, StructureDoc};

    pub fn serialize<S: Serializer>(s: &RelationalStructure, ser: S) -> Result<S::Ok, S::Error> {
        s.to_document().serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<RelationalStructure, D::Error> {
        let doc = StructureDoc::deserialize(de)?;
        RelationalStructure::from_document(&doc).map_err(serde::de::Error::custom)
    }
}

/// JSON document form: `{signature:[{name,arity}...], n, tables:{name:[[...]...]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureDoc {
    pub signature: Vec<RelationSymbol>,
    pub n: usize,
    #[serde(default)]
    pub tables: BTreeMap<String, Vec<Vec<usize>>>,
}

/// Calls `f` on every tuple in `0..n` of length `k`, in lexicographic order.
pub(crate) fn for_each_tuple(n: usize, k: usize, buf: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    buf.clear();
    buf.resize(k, 0);
    if k == 0 {
        f(buf);
        return;
    }
    if n == 0 {
        return;
    }
    loop {
        f(buf);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            buf[i] += 1;
            if buf[i] < n {
                break;
            }
            buf[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph_structure(n: usize, edges: &[(usize, usize)]) -> RelationalStructure {
        let mut s = RelationalStructure::new(Arc::new(Signature::graph()), n).unwrap();
        for &(u, v) in edges {
            s.add(0, &[u, v]).unwrap();
            s.add(0, &[v, u]).unwrap();
        }
        s
    }

    #[test]
    fn rejects_nullary_and_duplicate_relations() {
        assert!(Signature::new([("R", 0)]).is_err());
        assert!(Signature::new([("R", 2), ("R", 3)]).is_err());
    }

    #[test]
    fn induced_path_in_five_cycle() {
        let c5 = graph_structure(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let p = c5.induced_substructure(&[0, 1, 2]).unwrap();
        assert_eq!(p, graph_structure(3, &[(0, 1), (1, 2)]));
    }

    #[test]
    fn induced_full_domain_is_identity() {
        let c5 = graph_structure(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(c5.induced_substructure(&[0, 1, 2, 3, 4]).unwrap(), c5);
    }

    #[test]
    fn induced_pair_of_k4_is_an_edge() {
        let k4 = graph_structure(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(
            k4.induced_substructure(&[1, 3]).unwrap(),
            graph_structure(2, &[(0, 1)])
        );
    }

    #[test]
    fn induced_rejects_out_of_range() {
        let k2 = graph_structure(2, &[(0, 1)]);
        assert!(matches!(
            k2.induced_substructure(&[0, 5]),
            Err(Error::InvalidVertex { vertex: 5, domain: 2 })
        ));
    }

    #[test]
    fn empty_domain_is_valid() {
        let s = RelationalStructure::new(Arc::new(Signature::graph()), 0).unwrap();
        assert_eq!(s.tuple_count(), 0);
        assert_eq!(s.induced_substructure(&[]).unwrap(), s);
    }

    #[test]
    fn document_round_trip() {
        let sig = Arc::new(Signature::new([("T", 2), ("C", 3)]).unwrap());
        let s = RelationalStructure::from_tuples(
            sig,
            3,
            &[vec![vec![0, 1], vec![1, 2], vec![2, 0]], vec![vec![0, 1, 2], vec![1, 0, 2]]],
        )
        .unwrap();
        let json = serde_json::to_string(&s.to_document()).unwrap();
        let doc: StructureDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(RelationalStructure::from_document(&doc).unwrap(), s);
    }
}
