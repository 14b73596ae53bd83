//! Airy-type uniform approximations to the mode solutions.
//!
//! With (2/3)ζ^{3/2} = φ(α; r) the mode equation at s = ½ + kα becomes an
//! Airy equation up to O(1/k), giving the approximate solutions
//!
//!   w_σ ≈ 2√π e^{iπσ/6} k^{1/6} ζ^{1/4} (ω²+α²cosh²r)^{−1/4} Ai(k^{2/3} e^{2πiσ/3} ζ),
//!
//! σ ∈ {0, 1}. Here they are checked against the exact modes.

use crate::error::{Error, Result};
use crate::modes::{poisson_coeff_ak, Funnel, ModeContext};
use crate::phase::{gamma_factor, phi};
use crate::specfun::airy_ai;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

type C = Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformEval {
    pub zeta: C,
    /// f = (ω² + α²cosh²r)/cosh²r.
    pub prefactor_f: C,
    pub w0_approx: C,
    pub w1_approx: C,
}

const SECTOR_SLACK: f64 = 1e-9;

/// ζ with (2/3)ζ^{3/2} = φ(α; r) and arg ζ ∈ [−2π/3, π/3].
///
/// Of the three cube-root candidates the one whose principal 3/2 power
/// reproduces φ is taken; inside the sector that choice is unique.
pub fn liouville_zeta(alpha: C, omega: f64, r: f64) -> Result<C> {
    let p = phi(alpha, omega, r)?;
    if p.norm() == 0.0 {
        return Ok(C::new(0.0, 0.0));
    }
    let base = (1.5 * p).powf(2.0 / 3.0);
    let mut best: Option<(f64, C)> = None;
    for j in 0..3 {
        let z = base * C::from_polar(1.0, 2.0 * PI * j as f64 / 3.0);
        let a = z.arg();
        if a < -2.0 * PI / 3.0 - SECTOR_SLACK || a > PI / 3.0 + SECTOR_SLACK {
            continue;
        }
        let miss = (z.powf(1.5) / 1.5 - p).norm();
        if best.is_none_or(|(m, _)| miss < m) {
            best = Some((miss, z));
        }
    }
    match best {
        Some((miss, z)) if miss <= 1e-10 * (1.0 + p.norm()) => Ok(z),
        _ => Err(Error::Branch(format!("no ζ in the sector reproduces φ = {p} at α = {alpha}, r = {r}"))),
    }
}

fn alpha_of(ctx: &ModeContext) -> Result<C> {
    match ctx.alpha {
        Some(a) if ctx.k >= 1 => Ok(a),
        _ => Err(Error::Domain("uniform approximations need k ≥ 1".into())),
    }
}

fn w_from_zeta(sigma: u8, k: u32, alpha: C, omega: f64, r: f64, zeta: C) -> Result<C> {
    let kf = k as f64;
    let ch = r.cosh();
    let big = alpha * alpha * (ch * ch) + omega * omega;
    let rot = C::from_polar(1.0, 2.0 * PI * sigma as f64 / 3.0);
    let ai = airy_ai(kf.powf(2.0 / 3.0) * rot * zeta)?;
    let pre = 2.0 * PI.sqrt() * C::from_polar(1.0, PI * sigma as f64 / 6.0) * kf.powf(1.0 / 6.0);
    // ζ^{1/4} f^{−1/4} has a finite limit at the turning point, but it is
    // never needed there
    if zeta.norm() == 0.0 {
        return Err(Error::Domain("w_σ evaluated exactly at the turning point".into()));
    }
    Ok(pre * zeta.powf(0.25) * big.powf(-0.25) * ai)
}

/// The approximate solution w_σ, σ ∈ {0, 1}, at s = ½ + kα.
pub fn w_sigma_approx(sigma: u8, ctx: &ModeContext, fun: &Funnel, r: f64) -> Result<C> {
    if sigma > 1 {
        return Err(Error::Domain(format!("σ must be 0 or 1, got {sigma}")));
    }
    let alpha = alpha_of(ctx)?;
    let z = liouville_zeta(alpha, fun.omega, r)?;
    w_from_zeta(sigma, ctx.k, alpha, fun.omega, r, z)
}

pub fn uniform_eval(ctx: &ModeContext, fun: &Funnel, r: f64) -> Result<UniformEval> {
    let alpha = alpha_of(ctx)?;
    let z = liouville_zeta(alpha, fun.omega, r)?;
    let ch = r.cosh();
    Ok(UniformEval {
        zeta: z,
        prefactor_f: (alpha * alpha * (ch * ch) + fun.omega * fun.omega) / (ch * ch),
        w0_approx: w_from_zeta(0, ctx.k, alpha, fun.omega, r, z)?,
        w1_approx: w_from_zeta(1, ctx.k, alpha, fun.omega, r, z)?,
    })
}

/// a_k(½+kα; r) ≈ (2k w0(0))⁻¹ α^{−1/2} e^{−k(φ0+γ)} [w0(0)w1(r) − w1(0)w0(r)].
pub fn ak_reconstruction(ctx: &ModeContext, fun: &Funnel, r: f64) -> Result<C> {
    let alpha = alpha_of(ctx)?;
    let kf = ctx.k as f64;
    let at0 = uniform_eval(ctx, fun, 0.0)?;
    let at = uniform_eval(ctx, fun, r)?;
    let phi0 = phi(alpha, fun.omega, 0.0)?;
    let g = gamma_factor(alpha, fun.omega)?;
    let lead = alpha.powf(-0.5) * (-kf * (phi0 + g)).exp() / (2.0 * kf * at0.w0_approx);
    Ok(lead * (at0.w0_approx * at.w1_approx - at0.w1_approx * at.w0_approx))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformErrorEntry {
    pub k: u32,
    pub alpha: C,
    /// max over the radii of |approximation/exact − 1|.
    pub max_error: f64,
    pub radii_used: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniformErrorReport {
    pub entries: Vec<UniformErrorEntry>,
    /// Least-squares slope of log(max error) against log|kα|.
    pub slope: f64,
}

/// Compares the reconstruction of a_k with the exact coefficient on the
/// product grid, skipping radii with |ζ| < 0.1.
pub fn uniform_error_report(fun: &Funnel, k_list: &[u32], alpha_list: &[C], r_range: (f64, f64, usize)) -> Result<UniformErrorReport> {
    let (r_lo, r_hi, n) = r_range;
    if n < 1 || !(r_lo <= r_hi) {
        return Err(Error::Domain(format!("bad radius range {r_range:?}")));
    }
    let radii: Vec<f64> = (0..n).map(|i| if n == 1 { r_lo } else { r_lo + (r_hi - r_lo) * i as f64 / (n - 1) as f64 }).collect();
    let configs: Vec<(u32, C)> = k_list.iter().flat_map(|&k| alpha_list.iter().map(move |&a| (k, a))).collect();
    let entries = configs
        .par_iter()
        .map(|&(k, alpha)| -> Result<UniformErrorEntry> {
            let ctx = ModeContext::from_alpha(k, alpha)?;
            let mut worst = 0.0f64;
            let mut used = 0;
            for &r in &radii {
                if liouville_zeta(alpha, fun.omega, r)?.norm() < 0.1 {
                    continue;
                }
                let exact = poisson_coeff_ak(&ctx, fun, r)?;
                let approx = ak_reconstruction(&ctx, fun, r)?;
                worst = worst.max((approx / exact - 1.0).norm());
                used += 1;
            }
            Ok(UniformErrorEntry { k, alpha, max_error: worst, radii_used: used })
        })
        .collect::<Result<Vec<_>>>()?;
    let pts: Vec<(f64, f64)> = entries
        .iter()
        .filter(|e| e.radii_used > 0 && e.max_error > 0.0)
        .map(|e| ((e.k as f64 * e.alpha.norm()).ln(), e.max_error.ln()))
        .collect();
    let slope = if pts.len() >= 2 {
        let m = pts.len() as f64;
        let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / m, pts.iter().map(|p| p.1).sum::<f64>() / m);
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        if sxx > 0.0 {
            sxy / sxx
        } else {
            f64::NAN
        }
    } else {
        f64::NAN
    };
    Ok(UniformErrorReport { entries, slope })
}
