//! Finite model theory toolkit: homogeneous graphs, Fraïssé classes,
//! computable random-graph oracles, sum-free sets, reducts and rigid classes.

pub mod canon;
pub mod enumerate;
pub mod error;
pub mod fraisse;
pub mod graph;
pub mod graph_canon;
pub mod homogeneity;
pub mod io;
pub mod iso;
pub mod orbits;
pub mod par;
pub mod perm;
pub mod rado;
pub mod reducts;
mod refine;
pub mod rigid;
pub mod structure;
pub mod sumfree;

pub use canon::canonical_code;
pub use error::{Error, Result};
pub use graph::FiniteGraph;
pub use iso::{are_isomorphic, automorphisms, find_embedding, PartialIsomorphism};
pub use orbits::{orbits_on_ktuples, TupleOrbits};
pub use par::Execution;
pub use perm::PermGroupDescription;
pub use structure::{RelationSymbol, RelationalStructure, Signature};
