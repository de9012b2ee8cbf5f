use thiserror::Error;

use crate::geometry::IntPoint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point set is empty")]
    Empty,
    #[error("points must have at least one coordinate")]
    ZeroDimension,
    #[error("unsupported dimension {dim} (at most {max} supported)")]
    UnsupportedDimension { dim: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("side {0} of the partition is empty")]
    EmptySide(char),
    #[error("point {0} belongs to both A and B")]
    Overlap(IntPoint),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlagError {
    #[error("functional at level {level} is constant on the flat cut out by the previous levels")]
    ConstantAtLevel { level: usize },
    #[error("flag has {levels} levels but the ambient dimension is {dim}")]
    TooManyLevels { levels: usize, dim: usize },
    #[error("flag functional dimension {found} does not match the instance dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("triangle vertices must be points of the plane")]
    NotPlanar,
    #[error("triangle vertices are collinear")]
    Collinear,
    #[error("edge {0} -- {1} contains a lattice point other than its endpoints")]
    EdgeNotPrimitive(IntPoint, IntPoint),
    #[error("triangle has no lattice points besides its vertices")]
    NoInteriorPoints,
}
