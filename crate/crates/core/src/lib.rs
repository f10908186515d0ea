//! Exact computations on FI-graph families.
//!
//! The crate instantiates families of graphs indexed by `n` together with
//! their transition maps and symmetric-group actions, certifies stability
//! properties at each concrete `n`, and computes the quantities that such
//! families make eventually polynomial: subgraph and homomorphism counts,
//! walk counts, eigenvalue multiplicities, and Betti numbers of Hom-complexes
//! and discretized configuration spaces.

pub mod caps;
pub mod enumeration;
pub mod error;
pub mod families;
pub mod graph;
pub mod orbits;
pub mod polyfit;
pub mod spectra;
pub mod stability;
pub mod topology;

pub use caps::Caps;
pub use error::{Error, Result};
pub use families::{FamilySpec, Label, LabeledGraph};
pub use graph::{are_isomorphic, Extent, Graph, GraphMorphism, Injection};
pub use polyfit::{EventualFit, RationalPolynomial};

/// Version tag written into every serialized artifact.
pub const SCHEMA_VERSION: u32 = 1;
