//! Error type shared by all modules.

use thiserror::Error;

/// Errors raised by curve construction, quadrature and regularization.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parametrization with a (near-)vanishing first derivative.
    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),

    /// Operation requires strictly positive curvature everywhere.
    #[error("unsupported curve: {0}")]
    UnsupportedCurve(String),

    /// Offset distance too large or curves closer than the safety threshold.
    #[error("separation error: {0}")]
    Separation(String),

    /// Curves touch or pass below the proximity threshold.
    #[error("proximity error: minimal distance {min_dist} below threshold {threshold}")]
    Proximity { min_dist: f64, threshold: f64 },

    /// Self-energy integral requested over the full diagonal (epsilon = 0).
    #[error("divergent domain: identical loops require a positive exclusion width")]
    DivergentDomain,

    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Quadrature failed to converge within the allowed refinement budget.
    #[error("tolerance error: {0}")]
    Tolerance(String),

    /// Free-fit log coefficient disagrees with the predicted counter term.
    #[error("counter-term mismatch: fitted {fitted} vs predicted {predicted} (relative deviation {deviation})")]
    CounterTermMismatch {
        fitted: f64,
        predicted: f64,
        deviation: f64,
    },

    /// Regression failure: schedule too short or residual too large.
    #[error("fit error: {0}")]
    Fit(String),

    /// Chord ball captures strands that are distant in arc length.
    #[error("locality error: {0}")]
    Locality(String),

    /// Local expansion fit outside its validity range.
    #[error("expansion-range error: {0}")]
    ExpansionRange(String),

    /// Invalid quadrature or run configuration.
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<V> = core::result::Result<V, Error>;
