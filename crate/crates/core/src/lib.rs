//! Randomly perturbed graphs `H ∪ G(n,p)`: sampling, the cluster-partition
//! pipeline that turns them into dense minors, and bounds on minor-monotone
//! parameters.

pub mod error;
pub mod experiment;
pub mod fragment;
pub mod generators;
pub mod graph;
pub mod io;
pub mod params;
pub mod partition;
pub mod path_cover;
pub mod random;

pub use error::{Error, Result};
pub use graph::{ClusterFamily, Graph, VertexSet};
pub use random::Seed;
