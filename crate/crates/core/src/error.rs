use thiserror::Error;

use crate::grid::GridPoint;

/// Errors raised by the library surface.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation is undefined at the origin")]
    OriginInput,
    #[error("negative diagonal {0}")]
    NegativeDiagonal(i64),
    #[error("point {point} lies outside the first-quadrant triangle of bound {bound}")]
    OutOfBounds { point: GridPoint, bound: u32 },
    #[error("point {0} is not in the first quadrant")]
    NotInFirstQuadrant(GridPoint),
    #[error("axis point {point} cannot take parent {parent}")]
    AxisViolation { point: GridPoint, parent: &'static str },
    #[error("no parent choice given for {0}")]
    MissingChoice(GridPoint),
    #[error("duplicate parent choice for {0}")]
    DuplicateChoice(GridPoint),
    #[error("choices are not sorted by (diagonal, x) at {0}")]
    UnsortedChoices(GridPoint),
    #[error("empty point set")]
    EmptySet,
    #[error("diagonal {diagonal} is outside ring level {level}")]
    DiagonalOutsideRing { diagonal: i64, level: u32 },
    #[error("invalid zone ({level}, {index})")]
    InvalidZone { level: u32, index: i64 },
    #[error("diagonal {diagonal} outside 0..{bound}")]
    DiagonalOutOfRange { diagonal: i64, bound: u32 },
    #[error("bound {bound} exceeds the limit {limit} for {what}")]
    BoundTooLarge { bound: u32, limit: u32, what: &'static str },
    #[error("malformed parent map: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
