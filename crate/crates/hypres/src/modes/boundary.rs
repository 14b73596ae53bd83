//! The entire boundary function
//!
//!   E(s; r) = β(1+s) w⁺(r) − β(s) w⁻(r),
//!
//! whose zeros in s are the Dirichlet resonances of the funnel cut at r
//! (r > 0 truncated, r < 0 extended). For r > 0 it has the closed form
//!
//!   E = π⁻¹ sinh r (cosh r)^{−1−s} 𝐅((1+s+iωk)/2, (1+s−iωk)/2; s+½; 1/cosh²r),
//!
//! which is well conditioned. Elsewhere E is carried in from large r by the
//! ODE, always in the direction where it dominates: for Re s ≥ ½ the outgoing
//! solution itself, for Re s < ½ the outgoing solution at 1−s plus a
//! reduction-of-order correction.

use super::basis::{ln_cosh, mode_rhs, R_MAX};
use super::beta_log;
use crate::error::{Error, Result};
use crate::logval::{ln_1p, LogValue};
use crate::ode::{integrate, GbsOptions};
use crate::specfun::{hyp2f1_reg_unit, ln_rgamma, EvalOptions, HypValue};
use num_complex::Complex64;
use std::f64::consts::PI;

type C = Complex64;

/// Series cancellation beyond which the closed form is abandoned.
const SERIES_CANCELLATION_LIMIT: f64 = 1e5;
/// Cancellation accepted at the ODE starting point.
const START_CANCELLATION_LIMIT: f64 = 10.0;

fn params(k: u32, omega: f64, s: C) -> (C, C, C) {
    let m = C::new(0.0, omega * k as f64);
    ((1.0 + s + m) * 0.5, (1.0 + s - m) * 0.5, s + 0.5)
}

/// Closed form for r > 0, with the cancellation diagnostic.
pub(crate) fn boundary_series(k: u32, omega: f64, s: C, r: f64, opts: &EvalOptions) -> Result<HypValue> {
    debug_assert!(r > 0.0);
    let (a, b, c) = params(k, omega, s);
    let lch = ln_cosh(r);
    let x = (-2.0 * lch).exp();
    let y = r.tanh().powi(2);
    let f = hyp2f1_reg_unit(a, b, c, C::new(x, 0.0), C::new(y, 0.0), opts)?;
    let pre = LogValue::from_ln(C::new(r.sinh().ln() - PI.ln(), 0.0) - (1.0 + s) * lch);
    Ok(HypValue { value: pre * f.value, cancellation: f.cancellation })
}

/// E and its r-derivative at a starting radius R, from the closed form.
fn start_data(k: u32, omega: f64, s: C, r_from: f64) -> Result<(f64, LogValue, C)> {
    let opts = EvalOptions::default();
    let (a, b, c) = params(k, omega, s);
    let mut big_r = r_from.max(0.0) + 0.5;
    while big_r <= R_MAX {
        let lch = ln_cosh(big_r);
        let x = C::new((-2.0 * lch).exp(), 0.0);
        let y = C::new(big_r.tanh().powi(2), 0.0);
        let f = hyp2f1_reg_unit(a, b, c, x, y, &opts)?;
        let df = hyp2f1_reg_unit(a + 1.0, b + 1.0, c + 1.0, x, y, &opts)?;
        if f.cancellation <= START_CANCELLATION_LIMIT && df.cancellation <= START_CANCELLATION_LIMIT && !f.value.is_zero() {
            let (sh, ch) = (big_r.sinh(), big_r.cosh());
            let e = LogValue::from_ln(C::new(sh.ln() - PI.ln(), 0.0) - (1.0 + s) * lch) * f.value;
            let dlog = ch / sh - (1.0 + s) * (sh / ch) - (df.value / f.value).value() * (a * b) * (2.0 * sh / (ch * ch * ch));
            return Ok((big_r, e, dlog));
        }
        big_r += if big_r < 4.0 { 0.5 } else { 2.0 };
    }
    Err(Error::NoConvergence { what: "outgoing start point", iterations: 0 })
}

/// E(s; r) for Re s ≥ ½ integrated in from large r, plus
/// J(r) = ∫_r^0 dt / (cosh t · E(s;t)²) when requested.
pub(crate) struct Outgoing {
    pub e: LogValue,
    pub j: LogValue,
}

pub(crate) fn outgoing(k: u32, omega: f64, s: C, r: f64, want_j: bool) -> Result<Outgoing> {
    if !r.is_finite() || r.abs() > R_MAX - 1.0 {
        return Err(Error::Domain(format!("boundary radius {r} out of range")));
    }
    let (big_r, e_start, dlog) = start_data(k, omega, s, r)?;
    let acc = mode_rhs(k, omega, s);
    let opts = GbsOptions { rtol: 1e-12, atol: 1e-300, first_step: 0.02, ..GbsOptions::default() };
    // the state is normalized after every step; `scale` holds the log of
    // the removed factor, so E = u · exp(scale) · e_start
    let mut scale = 0.0f64;
    let r1 = r.max(0.0);
    let rhs2 = |x: f64, y: &[C; 2]| [y[1], acc(x, y[0], y[1])];
    let y = integrate(rhs2, big_r, [C::new(1.0, 0.0), dlog], r1, &opts, |_, y: &mut [C; 2]| {
        let q = y[0].norm() + y[1].norm() / (1.0 + s.norm());
        y[0] /= q;
        y[1] /= q;
        scale += q.ln();
    })?;
    let at_r1 = e_start * LogValue::from_ln(C::new(scale, 0.0)) * y[0];
    if !want_j || r == 0.0 {
        let e = if r >= 0.0 { at_r1 } else { outgoing_tail(k, omega, s, r, y, scale, e_start)? };
        return Ok(Outgoing { e, j: LogValue::ZERO });
    }
    // second leg between 0 and r, accumulating J in units of the current scale
    let r2 = r.min(0.0);
    let mut scale2 = scale;
    let rhs3 = |x: f64, v: &[C; 3]| {
        let ch = x.cosh();
        [v[1], acc(x, v[0], v[1]), (v[0] * v[0] * ch).inv()]
    };
    let (from, to) = if r > 0.0 { (r, 0.0) } else { (0.0, r2) };
    let v = integrate(rhs3, from, [y[0], y[1], C::new(0.0, 0.0)], to, &opts, |_, v: &mut [C; 3]| {
        let q = v[0].norm() + v[1].norm() / (1.0 + s.norm());
        v[0] /= q;
        v[1] /= q;
        v[2] *= q * q;
        scale2 += q.ln();
    })?;
    // v[2] integrates 1/(cosh·u²) with E = u·exp(scale)·e_start; undo the scaling
    let ln_s = LogValue::from_ln(C::new(scale2, 0.0)) * e_start;
    let path = LogValue::new(v[2]) / (ln_s * ln_s);
    let (e, j) = if r > 0.0 { (at_r1, path) } else { (ln_s * v[0], path.neg()) };
    Ok(Outgoing { e, j })
}

fn outgoing_tail(k: u32, omega: f64, s: C, r: f64, y: [C; 2], scale: f64, e_start: LogValue) -> Result<LogValue> {
    let acc = mode_rhs(k, omega, s);
    let opts = GbsOptions { rtol: 1e-12, atol: 1e-300, first_step: 0.02, ..GbsOptions::default() };
    let mut sc = scale;
    let rhs2 = |x: f64, v: &[C; 2]| [v[1], acc(x, v[0], v[1])];
    let v = integrate(rhs2, 0.0, y, r, &opts, |_, v: &mut [C; 2]| {
        let q = v[0].norm() + v[1].norm() / (1.0 + s.norm());
        v[0] /= q;
        v[1] /= q;
        sc += q.ln();
    })?;
    Ok(e_start * LogValue::from_ln(C::new(sc, 0.0)) * v[0])
}

/// E(s; r) by the ODE route only.
pub(crate) fn boundary_ode(k: u32, omega: f64, s: C, r: f64) -> Result<LogValue> {
    if s.re >= 0.5 {
        return Ok(outgoing(k, omega, s, r, false)?.e);
    }
    let sp = C::new(1.0, 0.0) - s;
    let out = outgoing(k, omega, sp, r, true)?;
    // E(s) = E(1−s)·[β(1+s)/β(2−s) + (2/π²)·J·rg(3/2−s)·rg(s−½)]
    let first = beta_log(k, omega, 1.0 + s) / beta_log(k, omega, 2.0 - s);
    let second = out.j * ln_rgamma(1.5 - s) * ln_rgamma(s - 0.5) * LogValue::real(2.0 / (PI * PI));
    Ok(out.e * first.add(second))
}

/// cos(πs) in log form.
fn cos_pi_log(s: C) -> LogValue {
    let i_pi_s = C::new(0.0, PI) * s;
    LogValue::from_ln(i_pi_s).add(LogValue::from_ln(-i_pi_s)) * LogValue::real(0.5)
}

/// cos(πs)·E(s;−ρ) from the closed forms at +ρ:
///
///   cosh(πkω)·E(s;ρ) − (cosh(πkω) − cos(πs))·β(1+s)/β(2−s)·E(1−s;ρ),
///
/// with the cancellation between the two terms. The terms stay apart where
/// the inward ODE loses E to the other solution; for large kω they cancel
/// and the ODE is the better route.
fn reflected_numerator(k: u32, omega: f64, s: C, rho: f64) -> Result<(LogValue, f64)> {
    let x = PI * k as f64 * omega;
    let ch = LogValue::from_ln(C::new(ln_cosh(x), 0.0));
    let e1 = boundary_function(k, omega, s, rho)?;
    let e2 = boundary_function(k, omega, 1.0 - s, rho)?;
    let ratio = beta_log(k, omega, 1.0 + s) / beta_log(k, omega, 2.0 - s);
    let t1 = ch * e1;
    let t2 = ch.sub(cos_pi_log(s)) * ratio * e2;
    let v = t1.sub(t2);
    Ok((v, (t1.ln_abs().max(t2.ln_abs()) - v.ln_abs()).exp()))
}

/// Cancellation accepted in the reflected formula before falling back.
const REFLECTED_CANCELLATION_LIMIT: f64 = 1e4;

/// E(s; −ρ) for Re s < ½, or None when the formula cancels. Within δ of a
/// half-integer, where cos(πs) vanishes, the value is the mean over a
/// circle of radius 2δ.
fn boundary_reflected(k: u32, omega: f64, s: C, rho: f64) -> Result<Option<LogValue>> {
    let delta = 0.05 / (1.0 + s.norm());
    let c = cos_pi_log(s);
    if c.ln_abs() > (PI * delta).ln() {
        let (v, canc) = reflected_numerator(k, omega, s, rho)?;
        return Ok((canc <= REFLECTED_CANCELLATION_LIMIT).then(|| v / c));
    }
    const N: usize = 16;
    let mut vals = Vec::with_capacity(N);
    for j in 0..N {
        let z = s + C::from_polar(2.0 * delta, 2.0 * PI * (j as f64 + 0.5) / N as f64);
        let (v, canc) = reflected_numerator(k, omega, z, rho)?;
        if canc > REFLECTED_CANCELLATION_LIMIT {
            return Ok(None);
        }
        vals.push(v / cos_pi_log(z));
    }
    // common scale keeps the average representable
    let shift = vals.iter().map(|v| v.ln_abs()).fold(f64::NEG_INFINITY, f64::max);
    let sum: C = vals.iter().map(|v| v.scaled(shift)).sum();
    Ok(Some(LogValue::new(sum / N as f64) * LogValue::from_ln(C::new(shift, 0.0))))
}

/// The boundary function E(s; r) in log form.
pub fn boundary_function(k: u32, omega: f64, s: C, r: f64) -> Result<LogValue> {
    if r == 0.0 {
        return Ok(beta_log(k, omega, 1.0 + s) * LogValue::real(1.0 / PI.sqrt()));
    }
    if r > 0.0 && r <= R_MAX {
        let v = boundary_series(k, omega, s, r, &EvalOptions::default());
        if let Ok(v) = v {
            if v.cancellation <= SERIES_CANCELLATION_LIMIT {
                return Ok(v.value);
            }
        }
    }
    if r < 0.0 && s.re < 0.5 && r >= -R_MAX {
        if let Some(v) = boundary_reflected(k, omega, s, -r)? {
            return Ok(v);
        }
    }
    boundary_ode(k, omega, s, r)
}

/// log of [S_model(s)]_k / [S_F(s)]_k for the funnel with boundary at signed r.
///
/// For Re s ≥ ½ the ratio is 1 + w with w an explicit multiple of J, so the
/// logarithm stays accurate when the mode barely feels the boundary.
pub fn mode_ratio_ln(k: u32, omega: f64, s: C, r: f64) -> Result<C> {
    if r == 0.0 {
        return Ok(C::new(0.0, 0.0));
    }
    if s.re < 0.5 {
        return Ok(-mode_ratio_ln(k, omega, 1.0 - s, r)?);
    }
    let out = outgoing(k, omega, s, r, true)?;
    // w = (2/π²)·J·rg(s+½)·rg(½−s)·β(1+s)/β(2−s)
    let w = out.j
        * ln_rgamma(s + 0.5)
        * ln_rgamma(0.5 - s)
        * beta_log(k, omega, 1.0 + s)
        / beta_log(k, omega, 2.0 - s)
        * LogValue::real(2.0 / (PI * PI));
    if !w.is_finite() {
        return Err(Error::NearSingular { k, s });
    }
    if w.ln_abs() < 0.0 {
        Ok(ln_1p(w.value()))
    } else {
        // ln(1+w) = ln w + ln(1 + 1/w)
        Ok(w.ln + ln_1p(w.recip().value()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn ode_route_matches_closed_form() {
        for &(k, s) in &[(0u32, c(-1.3, 2.0)), (3, c(-2.5, 4.0)), (2, c(0.8, 3.0)), (5, c(0.2, -1.0))] {
            let a = boundary_series(k, 1.0, s, 1.0, &EvalOptions::default()).unwrap().value.value();
            let b = boundary_ode(k, 1.0, s, 1.0).unwrap().value();
            assert!((a - b).norm() < 1e-9 * a.norm(), "{k} {s}: {a} {b}");
        }
    }

    #[test]
    fn ratio_matches_quotient() {
        for &(k, s, r) in &[(0u32, c(0.9, 2.0), 1.0), (3, c(0.5, 6.0), 1.0), (2, c(0.7, 4.0), -1.0), (4, c(0.3, 3.0), -0.5)] {
            let e1 = boundary_function(k, 1.0, 1.0 - s, r).unwrap();
            let e0 = boundary_function(k, 1.0, s, r).unwrap();
            let direct = (e1 / e0 * beta_log(k, 1.0, 1.0 + s) / beta_log(k, 1.0, 2.0 - s)).value();
            let via = mode_ratio_ln(k, 1.0, s, r).unwrap().exp();
            assert!((direct - via).norm() < 1e-9 * direct.norm(), "{k} {s} {r}: {direct} {via}");
        }
    }

    #[test]
    fn extended_far_left_reference_values() {
        // mpmath, integrating the mode equation from r = 0 at 40 digits
        for &(k, s, want) in &[
            (0u32, c(-8.0, 15.0), c(-824_374_527_578.23, 3_450_482_218_090.13)),
            (0, c(-8.9, 20.3), c(-4.986_575_147_632_87e17, 3.617_610_832_475_7e15)),
            (3, c(-12.0, 12.0), c(113_042_827_770.182_02, 293_245_422_716.168)),
            (0, c(-2.5, 0.0), c(0.404_035_329_055_640_81, 0.0)),
            (2, c(-4.5, 0.001), c(2155.425_891_806_521, -3.967_785_792_815_710_6)),
        ] {
            let v = boundary_function(k, 1.0, s, -1.0).unwrap().value();
            assert!((v - want).norm() < 1e-11 * want.norm(), "{k} {s}: {v}");
        }
    }
}
