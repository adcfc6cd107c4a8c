//! Rooted binary trees and the C-relations they induce on their leaves.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::iso::automorphisms;
use crate::perm::UnionFind;
use crate::structure::{RelationalStructure, Signature};

pub const C_AUT_LEAF_LIMIT: usize = 10;
pub const TREE_ENUMERATION_LIMIT: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf(usize),
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    fn min_leaf(&self) -> usize {
        match self {
            Tree::Leaf(x) => *x,
            Tree::Node(a, b) => a.min_leaf().min(b.min_leaf()),
        }
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Tree::Leaf(x) => out.push(*x),
            Tree::Node(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    fn canonical(&self) -> Tree {
        match self {
            Tree::Leaf(x) => Tree::Leaf(*x),
            Tree::Node(a, b) => {
                let (a, b) = (a.canonical(), b.canonical());
                if a.min_leaf() <= b.min_leaf() {
                    Tree::Node(Box::new(a), Box::new(b))
                } else {
                    Tree::Node(Box::new(b), Box::new(a))
                }
            }
        }
    }

    /// Unlabelled shape code, children sorted; equal codes mean isomorphic subtrees.
    fn shape(&self) -> String {
        match self {
            Tree::Leaf(_) => "l".into(),
            Tree::Node(a, b) => {
                let (x, y) = (a.shape(), b.shape());
                if x <= y {
                    format!("({x}{y})")
                } else {
                    format!("({y}{x})")
                }
            }
        }
    }

    fn internal_nodes(&self) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node(a, b) => 1 + a.internal_nodes() + b.internal_nodes(),
        }
    }

    /// Ancestor node ids (root first) for every leaf.
    fn paths(&self, next: &mut usize, prefix: &mut Vec<usize>, out: &mut [Vec<usize>]) {
        match self {
            Tree::Leaf(x) => out[*x] = prefix.clone(),
            Tree::Node(a, b) => {
                prefix.push(*next);
                *next += 1;
                a.paths(next, prefix, out);
                b.paths(next, prefix, out);
                prefix.pop();
            }
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf(x) => write!(f, "{x}"),
            Tree::Node(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// A leaf-labelled rooted binary tree with leaves `0..leaves`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootedBinaryTree {
    root: Tree,
    leaves: usize,
}

impl RootedBinaryTree {
    pub fn new(root: Tree) -> Result<Self> {
        let mut labels = Vec::new();
        root.collect_leaves(&mut labels);
        let leaves = labels.len();
        labels.sort_unstable();
        if labels.iter().enumerate().any(|(i, &x)| i != x) {
            return Err(Error::InvalidInput(format!(
                "tree leaves must be labelled bijectively by 0..{leaves}, got {labels:?}"
            )));
        }
        Ok(RootedBinaryTree { root, leaves })
    }

    /// Parses nested parentheses, e.g. `((0,1),2)`.
    pub fn parse(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0;
        let root = parse_tree(&chars, &mut pos)?;
        skip_ws(&chars, &mut pos);
        if pos != chars.len() {
            return Err(Error::parse(1, pos + 1, "trailing input after tree"));
        }
        RootedBinaryTree::new(root)
    }

    /// Left-deep tree `(((0,1),2),...)`.
    pub fn caterpillar(leaves: usize) -> Result<Self> {
        if leaves == 0 {
            return Err(Error::InvalidInput("a tree needs at least one leaf".into()));
        }
        let mut t = Tree::Leaf(0);
        for x in 1..leaves {
            t = Tree::Node(Box::new(t), Box::new(Tree::Leaf(x)));
        }
        RootedBinaryTree::new(t)
    }

    /// Balanced tree splitting the leaf range in halves.
    pub fn balanced(leaves: usize) -> Result<Self> {
        fn build(lo: usize, hi: usize) -> Tree {
            if hi - lo == 1 {
                Tree::Leaf(lo)
            } else {
                let mid = lo + (hi - lo).div_ceil(2);
                Tree::Node(Box::new(build(lo, mid)), Box::new(build(mid, hi)))
            }
        }
        if leaves == 0 {
            return Err(Error::InvalidInput("a tree needs at least one leaf".into()));
        }
        RootedBinaryTree::new(build(0, leaves))
    }

    pub fn root(&self) -> &Tree {
        &self.root
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves
    }

    /// Same tree with the children of every node ordered by least leaf label.
    pub fn canonical(&self) -> Self {
        RootedBinaryTree {
            root: self.root.canonical(),
            leaves: self.leaves,
        }
    }

    /// Depth of the meet of every pair of leaves (root has depth 0).
    pub fn meet_depths(&self) -> Vec<Vec<usize>> {
        let mut paths = vec![Vec::new(); self.leaves];
        self.root.paths(&mut 0, &mut Vec::new(), &mut paths);
        let mut d = vec![vec![0; self.leaves]; self.leaves];
        for x in 0..self.leaves {
            for y in 0..self.leaves {
                let common = paths[x].iter().zip(&paths[y]).take_while(|(a, b)| a == b).count();
                d[x][y] = common.saturating_sub(1);
            }
        }
        d
    }

    /// Automorphism count from the tree shape: one factor 2 per node with isomorphic children.
    pub fn symmetry_order(&self) -> u128 {
        fn go(t: &Tree) -> u32 {
            match t {
                Tree::Leaf(_) => 0,
                Tree::Node(a, b) => go(a) + go(b) + u32::from(a.shape() == b.shape()),
            }
        }
        1u128 << go(&self.root)
    }

    pub fn internal_nodes(&self) -> usize {
        self.root.internal_nodes()
    }

    /// A uniformly random leaf-labelled tree: leaf `x` is inserted above one of
    /// the `2x - 1` nodes present, chosen uniformly.
    pub fn random<R: Rng + ?Sized>(leaves: usize, rng: &mut R) -> Result<Self> {
        if leaves == 0 {
            return Err(Error::InvalidInput("a tree needs at least one leaf".into()));
        }
        let mut root = Tree::Leaf(0);
        for x in 1..leaves {
            let mut k = rng.random_range(0..2 * x - 1);
            root = insert_at(root, x, &mut k);
        }
        Ok(RootedBinaryTree { root, leaves })
    }

    /// Every leaf-labelled rooted binary tree on `leaves` leaves, `(2l-3)!!` of them.
    pub fn all(leaves: usize) -> Result<Vec<RootedBinaryTree>> {
        if leaves == 0 {
            return Ok(Vec::new());
        }
        if leaves > TREE_ENUMERATION_LIMIT {
            return Err(Error::size("tree enumeration leaves", TREE_ENUMERATION_LIMIT, leaves));
        }
        let mut level = vec![Tree::Leaf(0)];
        for x in 1..leaves {
            let mut next = Vec::new();
            for t in &level {
                insert_everywhere(t, x, &mut next);
            }
            level = next;
        }
        Ok(level
            .into_iter()
            .map(|root| RootedBinaryTree { root, leaves })
            .collect())
    }
}

fn insert_at(t: Tree, x: usize, k: &mut usize) -> Tree {
    if *k == usize::MAX {
        return t;
    }
    if *k == 0 {
        *k = usize::MAX;
        return Tree::Node(Box::new(t), Box::new(Tree::Leaf(x)));
    }
    *k -= 1;
    match t {
        Tree::Leaf(y) => Tree::Leaf(y),
        Tree::Node(a, b) => {
            let a = insert_at(*a, x, k);
            let b = insert_at(*b, x, k);
            Tree::Node(Box::new(a), Box::new(b))
        }
    }
}

pub(crate) fn insert_everywhere(t: &Tree, x: usize, out: &mut Vec<Tree>) {
    out.push(Tree::Node(Box::new(t.clone()), Box::new(Tree::Leaf(x))));
    if let Tree::Node(a, b) = t {
        let mut sub = Vec::new();
        insert_everywhere(a, x, &mut sub);
        out.extend(sub.drain(..).map(|a2| Tree::Node(Box::new(a2), b.clone())));
        insert_everywhere(b, x, &mut sub);
        out.extend(sub.into_iter().map(|b2| Tree::Node(a.clone(), Box::new(b2))));
    }
}

/// Root-to-leaf ancestor ids for leaves labelled below `size`; other slots stay empty.
pub(crate) fn leaf_paths(t: &Tree, size: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); size];
    t.paths(&mut 0, &mut Vec::new(), &mut out);
    out
}

/// Meet depth of two leaves from their ancestor paths.
pub(crate) fn meet_depth(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count().saturating_sub(1)
}

fn skip_ws(c: &[char], pos: &mut usize) {
    while *pos < c.len() && c[*pos].is_whitespace() {
        *pos += 1;
    }
}

fn parse_tree(c: &[char], pos: &mut usize) -> Result<Tree> {
    skip_ws(c, pos);
    match c.get(*pos) {
        Some('(') => {
            *pos += 1;
            let a = parse_tree(c, pos)?;
            skip_ws(c, pos);
            if c.get(*pos) != Some(&',') {
                return Err(Error::parse(1, *pos + 1, "expected ','"));
            }
            *pos += 1;
            let b = parse_tree(c, pos)?;
            skip_ws(c, pos);
            if c.get(*pos) != Some(&')') {
                return Err(Error::parse(1, *pos + 1, "expected ')'"));
            }
            *pos += 1;
            Ok(Tree::Node(Box::new(a), Box::new(b)))
        }
        Some(d) if d.is_ascii_digit() => {
            let start = *pos;
            while *pos < c.len() && c[*pos].is_ascii_digit() {
                *pos += 1;
            }
            let s: String = c[start..*pos].iter().collect();
            s.parse()
                .map(Tree::Leaf)
                .map_err(|_| Error::parse(1, start + 1, "leaf label out of range"))
        }
        Some(_) => Err(Error::parse(1, *pos + 1, "expected '(' or a leaf label")),
        None => Err(Error::parse(1, *pos + 1, "unexpected end of tree")),
    }
}

impl fmt::Display for RootedBinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

impl Serialize for RootedBinaryTree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RootedBinaryTree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        RootedBinaryTree::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// A ternary relation `γ(x,y;z)` on leaves `0..leaves`, stored as its triple set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CRelation {
    pub leaves: usize,
    pub triples: BTreeSet<[usize; 3]>,
}

impl CRelation {
    pub fn new(leaves: usize, triples: impl IntoIterator<Item = [usize; 3]>) -> Self {
        CRelation {
            leaves,
            triples: triples.into_iter().collect(),
        }
    }

    pub fn holds(&self, x: usize, y: usize, z: usize) -> bool {
        self.triples.contains(&[x, y, z])
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn signature() -> Signature {
        Signature::new([("C", 3)]).expect("static signature")
    }

    pub fn to_structure(&self) -> Result<RelationalStructure> {
        let mut s = RelationalStructure::new(Arc::new(Self::signature()), self.leaves)?;
        for t in &self.triples {
            s.add(0, t)?;
        }
        Ok(s)
    }

    /// Reads the relation named `C`, or the only ternary relation.
    pub fn from_structure(s: &RelationalStructure) -> Result<Self> {
        let sig = s.signature();
        let idx = sig.index_of("C").or_else(|| {
            let ternary: Vec<usize> = (0..sig.len()).filter(|&i| sig.relations()[i].arity == 3).collect();
            (ternary.len() == 1).then(|| ternary[0])
        });
        let idx = idx
            .filter(|&i| sig.relations()[i].arity == 3)
            .ok_or_else(|| Error::SignatureMismatch("expected one ternary relation C".into()))?;
        Ok(CRelation::new(
            s.domain_size(),
            s.table(idx).tuples().map(|t| [t[0], t[1], t[2]]),
        ))
    }

    /// Triples breaking symmetry, distinctness, range, or the exactly-one-distinguished rule.
    pub fn violations(&self) -> Vec<[usize; 3]> {
        let l = self.leaves;
        let mut bad = BTreeSet::new();
        for &[x, y, z] in &self.triples {
            if x >= l || y >= l || z >= l || x == y || y == z || x == z || !self.holds(y, x, z) {
                bad.insert([x, y, z]);
            }
        }
        for a in 0..l {
            for b in a + 1..l {
                for c in b + 1..l {
                    let hits = [self.holds(a, b, c), self.holds(a, c, b), self.holds(b, c, a)];
                    if hits.iter().filter(|&&h| h).count() != 1 {
                        bad.insert([a, b, c]);
                    }
                }
            }
        }
        bad.into_iter().collect()
    }
}

/// `γ(x,y;z)` iff `x,y,z` are distinct and the meet of `x,y` lies strictly below the meet of `x,z`.
pub fn c_relation_of_tree(t: &RootedBinaryTree) -> CRelation {
    let d = t.meet_depths();
    let l = t.leaf_count();
    let mut triples = BTreeSet::new();
    for x in 0..l {
        for y in 0..l {
            if y == x {
                continue;
            }
            for z in 0..l {
                if z != x && z != y && d[x][y] > d[x][z] {
                    triples.insert([x, y, z]);
                }
            }
        }
    }
    CRelation { leaves: l, triples }
}

/// Rebuilds the tree from its C-relation; children ordered by least leaf.
pub fn tree_of_c_relation(gamma: &CRelation) -> Result<RootedBinaryTree> {
    if gamma.leaves == 0 {
        return Err(Error::InvalidInput("a C-relation needs at least one leaf".into()));
    }
    let bad = gamma.violations();
    if !bad.is_empty() {
        return Err(Error::NotACRelation {
            reason: "symmetry or exactly-one-distinguished condition fails".into(),
            violations: bad,
        });
    }
    let leaves: Vec<usize> = (0..gamma.leaves).collect();
    let root = split(gamma, &leaves)?;
    let tree = RootedBinaryTree::new(root)?.canonical();
    let back = c_relation_of_tree(&tree);
    if back != *gamma {
        return Err(Error::NotACRelation {
            reason: "not induced by any binary tree".into(),
            violations: back.triples.symmetric_difference(&gamma.triples).copied().collect(),
        });
    }
    Ok(tree)
}

fn split(gamma: &CRelation, set: &[usize]) -> Result<Tree> {
    match set.len() {
        1 => return Ok(Tree::Leaf(set[0])),
        2 => {
            return Ok(Tree::Node(Box::new(Tree::Leaf(set[0])), Box::new(Tree::Leaf(set[1]))))
        }
        _ => {}
    }
    let mut uf = UnionFind::new(set.len());
    for (i, &x) in set.iter().enumerate() {
        for (j, &y) in set.iter().enumerate().skip(i + 1) {
            if set.iter().any(|&z| gamma.holds(x, y, z)) {
                uf.union(i, j);
            }
        }
    }
    let classes = uf.classes();
    if classes.len() != 2 {
        let witness: Vec<[usize; 3]> = match classes.first() {
            Some(c) if classes.len() > 2 => vec![[set[c[0]], set[classes[1][0]], set[classes[2][0]]]],
            _ => Vec::new(),
        };
        return Err(Error::NotACRelation {
            reason: format!("root split has {} blocks instead of 2", classes.len()),
            violations: witness,
        });
    }
    let a: Vec<usize> = classes[0].iter().map(|&i| set[i]).collect();
    let b: Vec<usize> = classes[1].iter().map(|&i| set[i]).collect();
    Ok(Tree::Node(Box::new(split(gamma, &a)?), Box::new(split(gamma, &b)?)))
}

/// Exact automorphism-group order of the C-structure.
pub fn c_aut_order(gamma: &CRelation) -> Result<u128> {
    if gamma.leaves > C_AUT_LEAF_LIMIT {
        return Err(Error::size("C-relation leaves", C_AUT_LEAF_LIMIT, gamma.leaves));
    }
    Ok(automorphisms(&gamma.to_structure()?)?.order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let t = RootedBinaryTree::parse(" ((0, 1),2)").unwrap();
        assert_eq!(t.to_string(), "((0,1),2)");
        assert_eq!(t.leaf_count(), 3);
        assert!(RootedBinaryTree::parse("((0,1),3)").is_err());
        assert!(RootedBinaryTree::parse("((0,1),2").is_err());
        assert!(RootedBinaryTree::parse("((0,1),2))").is_err());
        assert_eq!(RootedBinaryTree::parse("0").unwrap().leaf_count(), 1);
    }

    #[test]
    fn three_leaf_relation() {
        // x = 0, y = 1, z = 2
        let g = c_relation_of_tree(&RootedBinaryTree::parse("((0,1),2)").unwrap());
        assert!(g.holds(0, 1, 2) && g.holds(1, 0, 2));
        assert!(!g.holds(0, 2, 1));
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn small_counts() {
        assert!(c_relation_of_tree(&RootedBinaryTree::parse("(0,1)").unwrap()).is_empty());
        assert_eq!(c_relation_of_tree(&RootedBinaryTree::caterpillar(4).unwrap()).len(), 8);
        let counts: Vec<usize> = (1..=7).map(|l| RootedBinaryTree::all(l).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 15, 105, 945, 10395]);
    }

    #[test]
    fn aut_orders() {
        let bal = c_relation_of_tree(&RootedBinaryTree::balanced(4).unwrap());
        assert_eq!(c_aut_order(&bal).unwrap(), 8);
        let cat = c_relation_of_tree(&RootedBinaryTree::caterpillar(4).unwrap());
        assert_eq!(c_aut_order(&cat).unwrap(), 2);
        let two = c_relation_of_tree(&RootedBinaryTree::parse("(1,0)").unwrap());
        assert_eq!(c_aut_order(&two).unwrap(), 2);
    }

    #[test]
    fn round_trip_small() {
        for l in 1..=6 {
            for t in RootedBinaryTree::all(l).unwrap() {
                let g = c_relation_of_tree(&t);
                assert_eq!(tree_of_c_relation(&g).unwrap(), t.canonical());
                assert_eq!(c_aut_order(&g).unwrap(), t.symmetry_order());
            }
        }
    }

    #[test]
    fn rejects_bad_relations() {
        let g = CRelation::new(3, [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 0, 1]]);
        match tree_of_c_relation(&g) {
            Err(Error::NotACRelation { violations, .. }) => assert_eq!(violations, vec![[0, 1, 2]]),
            other => panic!("{other:?}"),
        }
        let asym = CRelation::new(3, [[0, 1, 2]]);
        assert!(matches!(tree_of_c_relation(&asym), Err(Error::NotACRelation { .. })));
        // every 3-subset has one outsider, but no tree fits
        let mut t = BTreeSet::new();
        for (x, y, z) in [(0, 1, 2), (0, 1, 3), (2, 3, 0), (2, 3, 1)] {
            t.insert([x, y, z]);
            t.insert([y, x, z]);
        }
        let g = CRelation { leaves: 4, triples: t };
        assert!(g.violations().is_empty());
        assert!(tree_of_c_relation(&g).is_ok());
        let mut t = BTreeSet::new();
        for (x, y, z) in [(0, 1, 2), (0, 3, 1), (2, 3, 0), (1, 2, 3)] {
            t.insert([x, y, z]);
            t.insert([y, x, z]);
        }
        let g = CRelation { leaves: 4, triples: t };
        assert!(g.violations().is_empty());
        assert!(matches!(tree_of_c_relation(&g), Err(Error::NotACRelation { .. })));
    }
}
