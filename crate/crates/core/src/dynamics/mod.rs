//! Projective dynamics of integer matrices and the random-word sampling
//! harness.

mod iterate;
mod sample;

use thiserror::Error;

use crate::intmat::MatError;

pub use iterate::{
    estimate_rate, matrix_id, north_south_check, project_iterate, project_iterate_exact, random_positive_ray,
    IterationTrace, NorthSouthReport, Ray, DISTANCE_FLOOR,
};
pub use sample::{
    log_ratio_histogram, quantile, quartiles, sample_words, write_histogram_csv, write_quartiles_csv,
    write_samples_csv, HistogramBin, QuartileRow, SamplePlan, SampleRecord, SAMPLE_HEADER, SUMMARY_HEADER,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error("bad ray: {0}")]
    BadRay(String),
    #[error("matrix has dimension {0} but the ray has {1} coordinates")]
    Dimension(usize, usize),
    #[error("exact iteration is limited to 100 steps, asked for {0}")]
    TooManySteps(usize),
    #[error("only {0} usable post-transient steps; need 10")]
    InsufficientSteps(usize),
    #[error("matrix is not primitive")]
    NotPrimitive,
    #[error("dominant eigenvalue not simple: {0}")]
    NotSimple(String),
    #[error("trial {0} did not converge")]
    Divergent(usize),
    #[error("empty generator set")]
    EmptyGenerators,
    #[error("signed sampling needs an inverse-closed generator set")]
    NotInverseClosed,
    #[error("word length must be at least 1")]
    ZeroLength,
    #[error("count must be at least 1")]
    ZeroCount,
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error("csv: {0}")]
    Csv(String),
}

impl From<csv::Error> for DynamicsError {
    fn from(e: csv::Error) -> Self {
        DynamicsError::Csv(e.to_string())
    }
}
