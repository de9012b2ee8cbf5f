//! Exact decision procedures for separating two finite sets of lattice
//! points: flag separation, the ray condition and the k-parallelogram
//! condition, together with the lattice convexity notions they depend on.

pub mod catalog;
pub mod conditions;
pub mod constructions;
pub mod convexity;
pub mod error;
pub mod exact;
pub mod explorer;
pub mod geometry;
pub mod instance;
pub mod lp;
pub mod verdict;

pub use conditions::{Partition, Residual, SeparatingFlag, Side};
pub use error::{ConstructionError, FlagError, GeometryError, PartitionError};
pub use exact::Rational;
pub use geometry::{AffineFunctional, IntPoint, Line, PointSet};
pub use verdict::Verdict;
