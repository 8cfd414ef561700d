//! Error type shared by all pipelines.

use crate::C64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Root iteration hit its sweep cap; best iterates are attached so the
    /// caller can retry from a different initialization.
    #[error("root finder did not converge within {iterations} sweeps")]
    NotConverged { iterations: u32, best: Vec<C64> },

    /// Newton polishing kept growing its step.
    #[error("polish diverged after {iterations} iterations")]
    Diverged {
        iterations: u32,
        last: (C64, C64),
        residual: f64,
    },

    /// Two clusters are separated by less than 10x the clustering distance,
    /// so multiplicities cannot be trusted at this tolerance.
    #[error("ambiguous clustering: inter-cluster gap {gap:.3e} < 10 * eps {eps:.3e}")]
    ToleranceAmbiguity { gap: f64, eps: f64 },

    /// Both polynomials lost the eliminated variable in this chart.
    #[error("chart degenerate: nothing to eliminate in chart {chart}")]
    ChartDegenerate { chart: &'static str },

    /// Every chart produced an identically-zero eliminant: the two curves
    /// almost certainly share a component.
    #[error("curves appear to share a component")]
    SharedComponent,

    /// The merged intersection does not reach the Bezout count.
    #[error("incomplete intersection: found total multiplicity {found}, expected {expected} ({diagnostic})")]
    IncompleteIntersection {
        found: usize,
        expected: usize,
        diagnostic: String,
    },

    /// A group image of a point left the supplied set.
    #[error("point set is not invariant under the group")]
    SetNotInvariant { point: [C64; 3] },

    #[error("group closure exceeded cap {cap} (reached {reached})")]
    NotClosedWithinCap { cap: usize, reached: usize },

    #[error("element order exceeds cap {cap}")]
    OrderExceedsCap { cap: u32 },

    #[error("singular point of the curve at [{0:?}]")]
    SingularPoint([C64; 3]),

    #[error("curve is singular")]
    SingularCurve { witness: [C64; 3] },

    /// Two independent computations of the same quantity disagree. Never
    /// resolved by preference: always surfaced.
    #[error("numerical inconsistency: {0}")]
    NumericalInconsistency(String),

    /// Branch data does not balance Riemann-Hurwitz to an integer genus.
    #[error("inconsistent branch data: {0}")]
    BranchDataInconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
