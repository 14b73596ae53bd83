use super::basis::{mode_basis_diag, ode_reference, ModeBasisEval};
use super::boundary::boundary_function;
use super::{beta_log, Funnel, ModeContext};
use crate::error::{Error, Result};
use crate::logval::LogValue;
use crate::specfun::ln_rgamma;
use num_complex::Complex64;
use serde::Serialize;

type C = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    StandardFunnel,
    TruncatedFunnel,
    ExtendedFunnel,
    HyperbolicPlane,
}

/// One diagonal entry [S(s)]_k of a model scattering matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringElement {
    pub value: C,
    pub log: LogValue,
    pub model: Model,
}

impl ScatteringElement {
    fn from_log(log: LogValue, model: Model, s: C) -> Result<Self> {
        if !log.is_finite() {
            return Err(Error::Pole { at: s });
        }
        let value = log.value();
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::Overflow("scattering element"));
        }
        Ok(ScatteringElement { value, log, model })
    }
}

/// Γ(½−s)/Γ(s−½), with the removable point s = ½ filled in.
fn gamma_flip(s: C) -> LogValue {
    let t = s - 0.5;
    if t.norm() == 0.0 {
        return LogValue::real(-1.0);
    }
    ln_rgamma(t) / ln_rgamma(-t)
}

fn quotient(num: LogValue, den: LogValue, s: C) -> Result<LogValue> {
    if den.is_zero() {
        return Err(Error::Pole { at: s });
    }
    Ok(num / den)
}

/// Standard funnel: Γ(½−s)β_k(2−s) / (Γ(s−½)β_k(1+s)).
pub fn s_funnel(s: C, k: u32, omega: f64) -> Result<ScatteringElement> {
    let v = quotient(gamma_flip(s) * beta_log(k, omega, 2.0 - s), beta_log(k, omega, 1.0 + s), s)?;
    ScatteringElement::from_log(v, Model::StandardFunnel, s)
}

fn cut_funnel(s: C, k: u32, omega: f64, r: f64, model: Model) -> Result<ScatteringElement> {
    let num = boundary_function(k, omega, 1.0 - s, r)?;
    let den = boundary_function(k, omega, s, r)?;
    let v = quotient(gamma_flip(s) * num, den, s)?;
    ScatteringElement::from_log(v, model, s)
}

/// Truncated funnel (r0 > 0): f_k(1−s; r0)/f_k(s; r0).
pub fn s_truncated(s: C, k: u32, fun: &Funnel) -> Result<ScatteringElement> {
    if fun.r0 <= 0.0 {
        return Err(Error::Domain(format!("truncated funnel needs r0 > 0, got {}", fun.r0)));
    }
    cut_funnel(s, k, fun.omega, fun.r0, Model::TruncatedFunnel)
}

/// Extended funnel (r0 < 0): g_k(1−s; |r0|)/g_k(s; |r0|).
pub fn s_extended(s: C, k: u32, fun: &Funnel) -> Result<ScatteringElement> {
    if fun.r0 >= 0.0 {
        return Err(Error::Domain(format!("extended funnel needs r0 < 0, got {}", fun.r0)));
    }
    cut_funnel(s, k, fun.omega, -fun.r0.abs(), Model::ExtendedFunnel)
}

/// Hyperbolic plane: 2^{1−2s} Γ(½−s)/Γ(s−½) · Γ(s+|k|)/Γ(1−s+|k|).
pub fn s_plane(s: C, k: u32) -> Result<ScatteringElement> {
    let kf = k as f64;
    let two = LogValue::from_ln((1.0 - 2.0 * s) * std::f64::consts::LN_2);
    let v = quotient(two * gamma_flip(s) * ln_rgamma(1.0 - s + kf), ln_rgamma(s + kf), s)?;
    ScatteringElement::from_log(v, Model::HyperbolicPlane, s)
}

fn finite(v: LogValue, what: &'static str, s: C) -> Result<C> {
    if !v.is_finite() {
        return Err(Error::Pole { at: s });
    }
    let z = v.value();
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Overflow(what));
    }
    Ok(z)
}

/// f_k(s; r) = Γ(s−½)[β_k(1+s)w⁺ − β_k(s)w⁻].
pub fn f_k_eval(ctx: &ModeContext, fun: &Funnel, r: f64) -> Result<C> {
    let e = boundary_function(ctx.k, fun.omega, ctx.s, r)?;
    let rg = ln_rgamma(ctx.s - 0.5);
    if rg.is_zero() {
        return Err(Error::Pole { at: ctx.s });
    }
    finite(e / rg, "f_k", ctx.s)
}

/// g_k(s; r) = Γ(s−½)[β_k(1+s)w⁺ + β_k(s)w⁻] = f_k(s; −r).
pub fn g_k_eval(ctx: &ModeContext, fun: &Funnel, r: f64) -> Result<C> {
    f_k_eval(ctx, fun, -r)
}

/// Fourier coefficient a_k(s; r) = c_k(s) w⁻_k(s; r) of the Poisson kernel,
/// c_k = 1/((2s−1)Γ(s−½)β_k(1+s)) = 1/(2Γ(s+½)β_k(1+s)).
pub fn poisson_coeff_ak(ctx: &ModeContext, fun: &Funnel, r: f64) -> Result<C> {
    if r < 0.0 {
        return Err(Error::Domain(format!("a_k needs r >= 0, got {r}")));
    }
    let b = beta_log(ctx.k, fun.omega, 1.0 + ctx.s);
    if b.is_zero() {
        return Err(Error::Pole { at: ctx.s });
    }
    let ck = ln_rgamma(ctx.s + 0.5) / b * LogValue::real(0.5);
    let w_minus = match mode_basis_diag(ctx.k, fun.omega, ctx.s, r) {
        Ok((m, canc)) if canc < 1e6 => m.w_minus,
        _ => ode_reference(ctx, fun, r, &ModeBasisEval::at_origin())?.w_minus,
    };
    finite(ck * w_minus, "a_k", ctx.s)
}
