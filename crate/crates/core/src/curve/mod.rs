//! Curve models, brute-force point counts and the closed-point spectrum.

mod cache;
mod count;
mod model;
mod spectrum;

pub use cache::CountCache;
pub use count::{count_points, count_points_with, count_range};
pub use model::{parse_curve, CurveKind, CurveModel, PlaneTerm};
pub use spectrum::{closed_point_spectrum, mobius, PointCountTable, Spectrum};

use thiserror::Error;

use crate::field::FieldError;

#[derive(Debug, Error)]
pub enum CurveError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("inconsistent point counts: {0}")]
    InconsistentCounts(String),
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CurveError {
    pub fn is_too_large(&self) -> bool {
        matches!(self, CurveError::Field(FieldError::TooLarge { .. }))
    }
}
