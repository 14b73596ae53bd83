//! Complex log-Gamma, the regularized Gauss function 𝐅 and the Airy function.

mod airy;
mod gamma;
mod hyp2f1;

pub use airy::{airy_ai, MACLAURIN_RADIUS};
pub use gamma::{ln_gamma_value, ln_rgamma, log_gamma, rgamma};
pub(crate) use hyp2f1::hyp2f1_reg_unit;
pub use hyp2f1::{hyp2f1_reg, hyp2f1_reg_diag, hyp2f1_reg_opts, HypValue};

use crate::error::{Error, Result};

/// Tolerances for series-based evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { abs_tol: 1e-15, rel_tol: 2e-15, max_terms: 20_000 }
    }
}

impl EvalOptions {
    pub fn validated(self) -> Result<Self> {
        let floor = 8.0 * f64::EPSILON;
        if !(self.abs_tol >= floor && self.rel_tol >= floor) || self.max_terms == 0 {
            return Err(Error::Domain(format!("tolerances must be at least {floor:e}")));
        }
        Ok(self)
    }
}
