//! The relative scattering determinant τ(s) = Π_k [S_model(s)]_k/[S_F(s)]_k
//! of a truncated or extended funnel against the standard funnel, its phase
//! σ(ξ) on the critical line, and the counting identity tying them to the
//! resonance sets.

use crate::error::{Error, Result};
use crate::logval::{exp_m1, wrap_angle};
use crate::modes::{mode_ratio_ln, poisson_coeff_ak, Funnel, Model, ModeContext};
use crate::phase::rho_min;
use crate::quad::integrate;
use crate::resonances::{background_lattice, resonance_set, Background};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};

type C = Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetSample {
    pub a: f64,
    pub theta: f64,
    pub log_abs_tau: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSample {
    pub xi: f64,
    pub sigma: f64,
}

/// Collar windows r_k = base + k·η.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub base: f64,
    pub eta: f64,
}

impl Window {
    pub fn new(base: f64, eta: f64) -> Result<Window> {
        if !(eta > 0.0 && eta <= 1.0 && base.is_finite()) {
            return Err(Error::Domain(format!("window needs 0 < η ≤ 1, got η = {eta}")));
        }
        Ok(Window { base, eta })
    }

    pub fn r(&self, k: u32) -> f64 {
        self.base + k as f64 * self.eta
    }
}

/// How far the mode sum runs: at least ceil(2|s−½|/ϱ_min) modes, then on
/// until a mode contributes less than abs_tol/10.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSumPolicy {
    pub abs_tol: f64,
    pub max_modes: u32,
}

impl Default for ModeSumPolicy {
    fn default() -> Self {
        ModeSumPolicy { abs_tol: 1e-10, max_modes: 4000 }
    }
}

fn signed_radius(model: Model, fun: &Funnel) -> Result<f64> {
    match model {
        Model::TruncatedFunnel if fun.r0 > 0.0 => Ok(fun.r0),
        Model::ExtendedFunnel if fun.r0 != 0.0 => Ok(-fun.r0.abs()),
        _ => Err(Error::Domain(format!("no relative determinant for {model:?} with r0 = {}", fun.r0))),
    }
}

fn weight(k: u32) -> f64 {
    if k == 0 {
        1.0
    } else {
        2.0
    }
}

/// Log of the relative determinant, per-mode principal logarithms summed.
pub fn log_tau_complex(s: C, model: Model, fun: &Funnel, policy: &ModeSumPolicy) -> Result<C> {
    let r = signed_radius(model, fun)?;
    let rho = rho_min(fun.omega, r.abs())?;
    let base = (2.0 * (s - 0.5).norm() / rho).ceil() as u32;
    let ratio = |k: u32| -> Result<C> {
        let v = mode_ratio_ln(k, fun.omega, s, r)?;
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NearSingular { k, s });
        }
        Ok(v)
    };
    let head: Vec<Result<C>> = (0..=base).into_par_iter().map(ratio).collect();
    let mut total = C::new(0.0, 0.0);
    for (k, v) in head.into_iter().enumerate() {
        total += weight(k as u32) * v?;
    }
    let mut k = base;
    loop {
        k += 1;
        if k > policy.max_modes {
            return Err(Error::NoConvergence { what: "mode sum tail", iterations: k as usize });
        }
        let v = ratio(k)?;
        total += 2.0 * v;
        if v.norm() <= policy.abs_tol / 10.0 {
            return Ok(total);
        }
    }
}

/// log|τ(s)|.
pub fn log_tau(s: C, model: Model, fun: &Funnel, policy: &ModeSumPolicy) -> Result<f64> {
    Ok(log_tau_complex(s, model, fun, policy)?.re)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepPolicy {
    /// Spacing of the returned samples.
    pub output_step: f64,
    /// Steps are halved while a mode phase jumps by more than π/2; below
    /// this size tracking gives up.
    pub min_step: f64,
    pub abs_tol: f64,
}

impl Default for StepPolicy {
    fn default() -> Self {
        StepPolicy { output_step: 0.25, min_step: 1e-6, abs_tol: 1e-9 }
    }
}

/// Continuous phase θ_k(ξ) = Im log ratio_k(½+iξ) on the grid ξ_j = j·h,
/// starting from index `start` where the phase is still small.
fn mode_phase_track(k: u32, fun: &Funnel, r: f64, grid: &[f64], start: usize, step: &StepPolicy) -> Result<Vec<f64>> {
    let phase = |xi: f64| -> Result<f64> { Ok(mode_ratio_ln(k, fun.omega, C::new(0.5, xi), r)?.im) };
    let mut out = vec![0.0; grid.len()];
    let mut prev_raw = phase(grid[start])?;
    if prev_raw.abs() > FRAC_PI_2 {
        return Err(Error::Branch(format!("mode {k} phase {prev_raw} already large at ξ = {}", grid[start])));
    }
    let mut acc = prev_raw;
    out[start] = acc;
    let mut xi = grid[start];
    for j in start + 1..grid.len() {
        let target = grid[j];
        let mut h = target - xi;
        while xi < target {
            let next = (xi + h).min(target);
            let raw = phase(next)?;
            let d = wrap_angle(raw - prev_raw);
            if d.abs() > FRAC_PI_2 {
                h *= 0.5;
                if h < step.min_step {
                    return Err(Error::Branch(format!("phase of mode {k} not resolved near ξ = {xi}")));
                }
                continue;
            }
            acc += d;
            prev_raw = raw;
            xi = next;
            h = (2.0 * h).min(target - xi).max(0.0);
            if h == 0.0 {
                break;
            }
        }
        out[j] = acc;
    }
    Ok(out)
}

/// σ(ξ) = (i/2π) log τ(½+iξ) on ξ ∈ [−xi_max, xi_max], continuous with
/// σ(0) = 0. Each mode phase is unwrapped separately and the modes are
/// summed in index order; negative ξ are filled in by oddness.
pub fn sigma_phase(xi_max: f64, model: Model, fun: &Funnel, step: &StepPolicy) -> Result<Vec<PhaseSample>> {
    if !(xi_max > 0.0 && xi_max <= 200.0) {
        return Err(Error::Domain(format!("xi_max must lie in (0, 200], got {xi_max}")));
    }
    let r = signed_radius(model, fun)?;
    let rho = rho_min(fun.omega, r.abs())?;
    let n = (xi_max / step.output_step).ceil() as usize;
    let grid: Vec<f64> = (0..=n).map(|j| xi_max * j as f64 / n as f64).collect();
    // modes are switched on well before they matter: mode k is negligible
    // while ξ < k·ϱ_min/2
    let start_of = |k: u32| -> usize {
        let xi0 = 0.25 * k as f64 * rho;
        grid.partition_point(|&x| x < xi0).saturating_sub(2)
    };
    let base = (2.0 * xi_max / rho).ceil() as u32;
    let mut tracks: Vec<Vec<f64>> = (0..=base)
        .into_par_iter()
        .map(|k| mode_phase_track(k, fun, r, &grid, start_of(k), step))
        .collect::<Result<_>>()?;
    let mut k = base;
    loop {
        k += 1;
        if k > 20 * base + 100 {
            return Err(Error::NoConvergence { what: "phase mode tail", iterations: k as usize });
        }
        let t = mode_phase_track(k, fun, r, &grid, start_of(k).min(n), step)?;
        let last = t.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        tracks.push(t);
        if last <= step.abs_tol / 10.0 {
            break;
        }
    }
    let mut pos = Vec::with_capacity(grid.len());
    for (j, &xi) in grid.iter().enumerate() {
        let theta: f64 = tracks.iter().enumerate().map(|(k, t)| weight(k as u32) * t[j]).sum();
        // σ = (i/2π)·(i Σθ)
        pos.push(PhaseSample { xi, sigma: if j == 0 { 0.0 } else { -theta / (2.0 * PI) } });
    }
    let mut out: Vec<PhaseSample> = pos.iter().skip(1).rev().map(|p| PhaseSample { xi: -p.xi, sigma: -p.sigma }).collect();
    out.extend(pos);
    Ok(out)
}

/// Least-squares fit σ ≈ Aξ² + Bξ over samples with ξ in [lo, hi].
pub fn fit_quadratic(samples: &[PhaseSample], lo: f64, hi: f64) -> Result<(f64, f64)> {
    let (mut s4, mut s3, mut s2, mut y2, mut y1) = (0.0, 0.0, 0.0, 0.0, 0.0);
    let mut count = 0;
    for p in samples.iter().filter(|p| p.xi >= lo && p.xi <= hi) {
        let x = p.xi;
        s4 += x.powi(4);
        s3 += x.powi(3);
        s2 += x * x;
        y2 += p.sigma * x * x;
        y1 += p.sigma * x;
        count += 1;
    }
    let det = s4 * s2 - s3 * s3;
    if count < 3 || det.abs() <= 1e-12 * s4 * s2 {
        return Err(Error::Domain(format!("too few samples in [{lo}, {hi}] to fit")));
    }
    Ok(((y2 * s2 - y1 * s3) / det, (s4 * y1 - s3 * y2) / det))
}

/// Singular value λ_k(s) of the funnel collar operator:
/// |2s−1|·‖a_k(1−s)‖_{[r1,r2]}·‖a_k(s)‖_{[r2,r3]} in L²(cosh r dr).
pub fn lambda_k(s: C, k: u32, fun: &Funnel, win: &Window) -> Result<f64> {
    let (r1, r2, r3) = (win.r(1), win.r(2), win.r(3));
    if r1 < 0.0 {
        return Err(Error::Domain(format!("collar must start at r ≥ 0, got {r1}")));
    }
    let norm2 = |z: C, a: f64, b: f64| -> Result<f64> {
        let ctx = ModeContext::new(k, z);
        let mut failure = None;
        let f = |r: f64| match poisson_coeff_ak(&ctx, fun, r) {
            Ok(v) => v.norm_sqr() * r.cosh(),
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        };
        let est = integrate(f, a, b, 0.0, 1e-8, 500);
        match failure {
            Some(e) => Err(e),
            None => Ok(est?.value),
        }
    };
    let left = norm2(1.0 - s, r1, r2)?;
    let right = norm2(s, r2, r3)?;
    Ok((2.0 * s - 1.0).norm() * (left * right).sqrt())
}

/// ∫_u^v e^{cr} dr without cancellation, including c = 0.
fn exp_integral(c: f64, u: f64, v: f64) -> f64 {
    if c == 0.0 {
        return v - u;
    }
    (c * u).exp() * exp_m1(C::new(c * (v - u), 0.0)).re / c
}

/// The single singular value of the rank-one cusp collar operator.
pub fn cusp_mu1(s: C, b: f64, eta: f64) -> Result<f64> {
    let d = (2.0 * s - 1.0).norm();
    if d == 0.0 {
        return Err(Error::Pole { at: s });
    }
    let c = 2.0 * s.re - 1.0;
    let first = exp_integral(c, b + eta, b + 2.0 * eta);
    let second = exp_integral(c, b + 2.0 * eta, b + 3.0 * eta);
    Ok((first * second).sqrt() / d)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountingReport {
    pub a: f64,
    /// Ñ_P(a) − Ñ_0(a).
    pub lhs: f64,
    pub sigma_term: f64,
    pub tau_term: f64,
    pub rhs: f64,
    pub defect: f64,
    /// Size estimate of the θ sliver left out next to π/2.
    pub sliver: f64,
}

/// Both sides of the relative counting identity at radius a.
pub fn verify_counting_identity(a: f64, model: Model, fun: &Funnel) -> Result<CountingReport> {
    if !(a >= 1.0 && a <= 40.0) {
        return Err(Error::Domain(format!("identity radius must lie in [1, 40], got {a}")));
    }
    let set = resonance_set(model, fun, a)?;
    let back = background_lattice(Background::StandardFunnel { ell: fun.ell }, a)?;
    let lhs = set.counting().n_tilde(a)? - back.counting().n_tilde(a)?;

    let step = StepPolicy { output_step: 0.05, ..StepPolicy::default() };
    let samples: Vec<PhaseSample> = sigma_phase(a, model, fun, &step)?.into_iter().filter(|p| p.xi >= 0.0).collect();
    // σ(t)/t → σ'(0) at 0; the first cell uses σ(h)/h
    let mut sigma_int = samples[1].sigma;
    for w in samples[1..].windows(2) {
        sigma_int += 0.5 * (w[1].xi - w[0].xi) * (w[0].sigma / w[0].xi + w[1].sigma / w[1].xi);
    }
    let sigma_term = 4.0 * sigma_int;

    let policy = ModeSumPolicy { abs_tol: 1e-8, ..ModeSumPolicy::default() };
    let top = FRAC_PI_2 - 1.0 / (a * a);
    let mut failure = None;
    let g = |t: f64| match log_tau(C::new(0.5, 0.0) + C::from_polar(a, t), model, fun, &policy) {
        Ok(v) => v,
        Err(e) => {
            failure.get_or_insert(e);
            0.0
        }
    };
    let est = integrate(g, 0.0, top, 1e-5 * a * a, 1e-6, 400);
    if let Some(e) = failure {
        return Err(e);
    }
    let tau_term = 2.0 / PI * est?.value;
    let edge = log_tau(C::new(0.5, 0.0) + C::from_polar(a, top), model, fun, &policy)?;
    let sliver = 2.0 / PI * edge.abs() / (a * a);
    let rhs = sigma_term + tau_term;
    Ok(CountingReport { a, lhs, sigma_term, tau_term, rhs, defect: lhs - rhs, sliver })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn trunc() -> Funnel {
        Funnel::new(2.0 * PI, 1.0).unwrap()
    }

    #[test]
    fn critical_line_and_reciprocity() {
        let p = ModeSumPolicy::default();
        for m in [Model::TruncatedFunnel, Model::ExtendedFunnel] {
            let f = Funnel::new(2.0 * PI, if m == Model::TruncatedFunnel { 1.0 } else { -0.5 }).unwrap();
            assert!(log_tau(c(0.5, 3.7), m, &f, &p).unwrap().abs() < 1e-8);
            let s = c(1.3, 2.2);
            let sum = log_tau(s, m, &f, &p).unwrap() + log_tau(1.0 - s, m, &f, &p).unwrap();
            assert!(sum.abs() < 1e-8, "{m:?} {sum}");
        }
    }

    #[test]
    fn phase_is_odd_and_starts_at_zero() {
        let v = sigma_phase(3.0, Model::TruncatedFunnel, &trunc(), &StepPolicy::default()).unwrap();
        let zero = v.iter().find(|p| p.xi == 0.0).unwrap();
        assert_eq!(zero.sigma, 0.0);
        let n = v.len();
        for i in 0..n / 2 {
            assert_eq!(v[i].xi, -v[n - 1 - i].xi);
            assert_eq!(v[i].sigma, -v[n - 1 - i].sigma);
        }
    }

    #[test]
    fn fit_recovers_quadratic() {
        let v: Vec<PhaseSample> = (0..50).map(|i| i as f64).map(|x| PhaseSample { xi: x, sigma: -0.3 * x * x + 2.0 * x }).collect();
        let (a, b) = fit_quadratic(&v, 10.0, 40.0).unwrap();
        assert!((a + 0.3).abs() < 1e-12 && (b - 2.0).abs() < 1e-9);
    }

    #[test]
    fn cusp_closed_form() {
        let (s, b, eta) = (c(2.0, 3.0), 0.0, 0.5);
        let q = |lo: f64, hi: f64| integrate(|r: f64| (2.0 * r * s.re).exp() * (-r).exp(), lo, hi, 0.0, 1e-15, 100).unwrap().value;
        let direct = (q(b + eta, b + 2.0 * eta) * q(b + 2.0 * eta, b + 3.0 * eta)).sqrt() / (2.0 * s - 1.0).norm();
        assert!((cusp_mu1(s, b, eta).unwrap() - direct).abs() <= 1e-12 * direct);
        // continuity across Re s = 1/2
        let mid = cusp_mu1(c(0.5, 2.0), b, eta).unwrap();
        let near = cusp_mu1(c(0.5 + 1e-9, 2.0), b, eta).unwrap();
        assert!((mid - near).abs() < 1e-8);
        let a = 10.0;
        assert!(cusp_mu1(c(0.5 + a, 0.0), b, eta).unwrap() <= (2.0 * a * (b + 3.0 * eta)).exp() / (2.0 * a));
    }

    #[test]
    fn lambda_is_nonnegative() {
        let w = Window::new(1.0, 0.5).unwrap();
        for k in [0, 3] {
            let v = lambda_k(c(0.5, 0.0) + C::from_polar(3.0, PI / 4.0), k, &trunc(), &w).unwrap();
            assert!(v >= 0.0 && v.is_finite());
        }
        assert!(Window::new(0.0, 1.5).is_err());
    }
}
