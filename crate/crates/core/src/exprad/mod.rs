//! Exponential radical, cone dimension, triangulability verdicts and the
//! Cartan section with its BCH correction term.

pub mod bch;
mod radical;
mod section;

pub use radical::{
    cat0_verdict, cat0_verdict_with, conedim, conedim_with, exponential_radical, is_weakly_triangulable, radical_by_route,
    Cat0Reason, Cat0Verdict, ConeDimReport, ConeDimRoute, ExpRadicalReport, RadicalMethod,
};
pub use section::{dyadic_scales, lift_probe, sample_pairs, section_data, LiftProbe, LiftRow, SectionData};

use thiserror::Error;

use crate::liealg::LieError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpradError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("annotation required: {0}")]
    AnnotationRequired(String),
    #[error("quotient by the exponential radical is not nilpotent")]
    NotWeaklyTriangulable,
    #[error("sample pair {index} is degenerate (x = y)")]
    DegenerateSample { index: usize },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
