use thiserror::Error;

use crate::geom::Point;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("point ({}, {}) lies outside the polygon", .0.x, .0.y)]
    ExteriorPoint(Point),

    #[error("decomposition produced {cells} cells, over the cap of {cap}")]
    DecompositionOverflow { cells: usize, cap: usize },

    #[error("robustness failure: {0}")]
    RobustnessFailure(String),

    #[error("polygon is not weakly visible from edge ({u}, {v}): {reason}")]
    NonWeakVisible { u: usize, v: usize, reason: String },

    #[error("guard loop exceeded {0} iterations")]
    IterationOverflow(usize),

    #[error("exact search supports at most {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },

    #[error("generation failed after {attempts} attempts: {reason}")]
    GenerationFailed { attempts: usize, reason: String },

    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
