use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole at {at}")]
    Pole { at: Complex64 },
    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("overflow evaluating {0}")]
    Overflow(&'static str),
    #[error("ODE step size underflow at r = {at}")]
    StepUnderflow { at: f64 },
    #[error("quadrature tolerance not met: value {estimate:e}, error {achieved:e} > requested {requested:e}")]
    Quadrature { estimate: f64, requested: f64, achieved: f64 },
    #[error("branch tracking failed: {0}")]
    Branch(String),
    #[error("contour passes through a zero near {near} (mode {mode})")]
    ContourThroughZero { near: Complex64, mode: u32 },
    #[error("mode {mode}: winding count {winding} but {found} zeros refined")]
    CountMismatch { mode: u32, winding: i64, found: i64 },
    #[error("near-singular mode quotient at k = {k}, s = {s}")]
    NearSingular { k: u32, s: Complex64 },
}

impl Error {
    /// Short machine-readable tag used in CLI error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Pole { .. } => "pole",
            Error::NoConvergence { .. } => "no_convergence",
            Error::Domain(_) => "domain",
            Error::Overflow(_) => "overflow",
            Error::StepUnderflow { .. } => "step_underflow",
            Error::Quadrature { .. } => "quadrature",
            Error::Branch(_) => "branch",
            Error::ContourThroughZero { .. } => "contour_through_zero",
            Error::CountMismatch { .. } => "count_mismatch",
            Error::NearSingular { .. } => "near_singular",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
