//! Tuple regularity, homogeneity, the homogeneous-graph classification,
//! spectral signatures and the Schläfli graph.

pub mod gardiner;
pub mod homog;
pub mod regularity;
pub mod schlafli;
pub mod spectrum;
pub mod sweep;

pub use gardiner::{gardiner_classify, GardinerClass};
pub use homog::{is_homogeneous, is_t_homogeneous, HomogeneityReport};
pub use regularity::{is_t_tuple_regular, RegularityReport, RegularityWitness};
pub use schlafli::schlafli_graph;
pub use spectrum::{cospectral_regularity_sweep, spectral_signature, CospectralSweep, SpectralSignature};
pub use sweep::{regularity_sweep, RegularitySweep};
