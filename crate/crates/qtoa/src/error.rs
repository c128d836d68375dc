//! Error type shared by every stage of the pipeline.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// Classical arrival time is undefined at p = 0.
    #[error("stationary-turning input: p = 0 has no time of arrival")]
    StationaryTurningInput,

    /// Three consecutive non-decreasing terms in the local-time expansion.
    #[error(
        "series diverging at this phase-space point (last |terms| {t0:.3e}, {t1:.3e}, {t2:.3e})"
    )]
    SeriesDiverging { t0: f64, t1: f64, t2: f64 },

    #[error("hypergeometric series did not converge within {max_terms} terms at |z| = {z_abs:.3e}")]
    HypergeometricNonConvergence { z_abs: f64, max_terms: usize },

    /// Adaptive quadrature gave up; carries the worst remaining subinterval.
    #[error(
        "quadrature failed to converge; worst subinterval [{lo:.6e}, {hi:.6e}] with error estimate {estimate:.3e}"
    )]
    QuadratureNonConvergence { lo: f64, hi: f64, estimate: f64 },

    #[error("kernel-factor series did not converge within {k_max} terms")]
    KernelSeriesNonConvergence { k_max: usize },

    #[error("no quantization coefficient row supplied for order {order}")]
    MissingCoefficientRow { order: usize },

    #[error("hyperbolic argument of magnitude {argument:.3e} overflows double precision")]
    HyperbolicOverflow { argument: f64 },

    #[error("no closed form for this scheme/potential combination: {detail}")]
    ClosedFormUnavailable { detail: String },

    #[error("evaluation route {route} is not supported for this scheme: {detail}")]
    UnsupportedRoute { route: &'static str, detail: String },

    #[error("kernel evaluation failed at grid entry ({i}, {j}): {source}")]
    KernelEntry {
        i: usize,
        j: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("matrix is not hermitian: residual {residual:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { residual: f64, tolerance: f64 },

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("norm drift {drift:.3e} exceeds 1e-6 at t = {t:.6e}; aborting evolution")]
    NormDrift { t: f64, drift: f64 },

    /// Probability reached the outer 5% of the box, so periodic wraparound
    /// would contaminate any later arrival analysis.
    #[error("probability mass {mass:.3e} reached the outer 5% of the box at t = {t:.6e}")]
    BoundaryMass { t: f64, mass: f64 },

    #[error("no arrival detected: position variance has no interior minimum")]
    NoArrivalDetected,

    #[error("eigenfunction tracking lost: best overlap {overlap:.3e} below 0.5")]
    TrackingLost { overlap: f64 },

    #[error("{0}")]
    Domain(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// Wrap an evaluation failure with the matrix entry it occurred at.
    pub(crate) fn at_entry(self, i: usize, j: usize) -> Self {
        Error::KernelEntry {
            i,
            j,
            source: Box::new(self),
        }
    }
}
