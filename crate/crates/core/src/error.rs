//! Error type shared by all solver modules.

use thiserror::Error;

/// Errors produced by shape construction, shock relations, quadrature and
/// reference-field comparison.
#[derive(Debug, Error)]
pub enum Error {
    /// The queried shock point is beyond oblique-shock validity
    /// (`M sin(beta) < 1`).
    #[error("weak shock: M sin(beta) = {m_sin_beta:.6} < 1 at beta = {beta:.6} rad")]
    WeakShock { beta: f64, m_sin_beta: f64 },

    /// Query outside the domain a shape is defined on.
    #[error("out of domain: {0}")]
    OutOfDomain(String),

    /// A shock shape violated a family invariant (non-monotone angle,
    /// non-positive parameter, ...).
    #[error("invalid shock shape: {0}")]
    InvalidShape(String),

    /// Input data too small or ill-formed to operate on.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// A square-root argument went negative; the shape produces an
    /// unphysical layer at the queried point.
    #[error("negative radicand {value:.3e} in {context}")]
    NegativeRadicand { context: &'static str, value: f64 },

    /// Panel-doubling quadrature hit the refinement cap.
    #[error("quadrature did not converge within {max_panels} panels (last change {last_change:.3e})")]
    NonConvergence { max_panels: usize, last_change: f64 },

    /// File-format error with the offending line number.
    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },

    /// Ingested data violated a documented invariant.
    #[error("validation error: {0}")]
    Validation(String),

    /// Interpolation query farther than the hull radius from any
    /// reference point.
    #[error("point ({z:.4}, {r:.4}) outside reference hull: nearest point {nearest:.4} away (limit {limit})")]
    OutOfHull { z: f64, r: f64, nearest: f64, limit: f64 },

    /// Every solution sample fell outside the reference hull.
    #[error("no overlap between solution samples and reference field")]
    NoOverlap,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
