//! Fourier-mode solutions of the funnel equation
//!
//!   w'' + tanh r·w' + [s(1−s) − k²ω²/cosh²r] w = 0,
//!
//! and the mode scattering elements built from them.

mod basis;
mod boundary;
mod elements;

pub use basis::{mode_basis, ode_reference, ModeBasisEval, R_MAX};
pub use boundary::{boundary_function, mode_ratio_ln};
pub use elements::{
    f_k_eval, g_k_eval, poisson_coeff_ak, s_extended, s_funnel, s_plane, s_truncated, Model, ScatteringElement,
};

pub(crate) use basis::ln_cosh;

use crate::error::{Error, Result};
use crate::logval::LogValue;
use crate::specfun::ln_rgamma;
use num_complex::Complex64;
use std::f64::consts::PI;

/// A model funnel [r0, ∞) × S¹ with boundary length ℓ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Funnel {
    pub ell: f64,
    pub omega: f64,
    /// r0 > 0 truncated, r0 < 0 extended, 0 standard.
    pub r0: f64,
}

impl Funnel {
    pub fn new(ell: f64, r0: f64) -> Result<Funnel> {
        if !(ell.is_finite() && ell > 0.0) {
            return Err(Error::Domain(format!("funnel length must be positive, got {ell}")));
        }
        if !r0.is_finite() || r0.abs() > R_MAX - 1.0 {
            return Err(Error::Domain(format!("boundary location {r0} out of range")));
        }
        Ok(Funnel { ell, omega: 2.0 * PI / ell, r0 })
    }

    pub fn with_r0(&self, r0: f64) -> Result<Funnel> {
        Funnel::new(self.ell, r0)
    }
}

/// Mode index and spectral parameter; α = (s − ½)/k for k ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeContext {
    pub k: u32,
    pub s: Complex64,
    pub alpha: Option<Complex64>,
}

impl ModeContext {
    pub fn new(k: u32, s: Complex64) -> Self {
        let alpha = (k > 0).then(|| (s - 0.5) / k as f64);
        ModeContext { k, s, alpha }
    }

    /// s = ½ + kα; k must be positive.
    pub fn from_alpha(k: u32, alpha: Complex64) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("α is undefined for k = 0".into()));
        }
        Ok(ModeContext { k, s: 0.5 + alpha * k as f64, alpha: Some(alpha) })
    }
}

/// β_k(s) = 1/(Γ((s+ikω)/2) Γ((s−ikω)/2)).
pub fn beta_log(k: u32, omega: f64, s: Complex64) -> LogValue {
    let m = Complex64::new(0.0, omega * k as f64);
    ln_rgamma((s + m) * 0.5) * ln_rgamma((s - m) * 0.5)
}
