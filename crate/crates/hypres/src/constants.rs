//! Positive-part integrals ∫∫ [F(xe^{iθ})]₊ x⁻³ dx dθ and the geometric
//! constants assembled from them.

use crate::error::{Error, Result};
use crate::phase::{h_eval, i_eval};
use crate::quad::{integrate, Estimate};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Initial θ panels; the one next to π/2 is split once more.
    pub theta_panels: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { abs_tol: 1e-9, rel_tol: 1e-9, theta_panels: 8 }
    }
}

// log-spaced sign scan over [X_LO, X_HI]; the odd offset keeps x = 1 off the grid
const X_LO: f64 = 1e-3 * 1.000_123_456_7;
const X_HI: f64 = 1e4;
const SCAN: usize = 112;

fn bisect<F: FnMut(f64) -> f64>(f: &mut F, mut lo: f64, mut hi: f64) -> f64 {
    // f(lo) and f(hi) have opposite signs
    let slo = f(lo) > 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) > 0.0) == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// ∫₀^∞ [f(x)]₊ x⁻³ dx for f ≤ 0 near 0 and f = O(x log x) at infinity.
///
/// Sign changes are located on a log grid and refined by bisection, so the
/// kinks of the positive part fall on panel ends. The unbounded piece is
/// mapped by y = 1/x.
pub fn inner_positive_part<F: FnMut(f64) -> f64>(mut f: F, abs_tol: f64, rel_tol: f64) -> Result<Estimate> {
    let ratio = (X_HI / X_LO).powf(1.0 / SCAN as f64);
    let xs: Vec<f64> = (0..=SCAN).map(|i| X_LO * ratio.powi(i as i32)).collect();
    let vals: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    if let Some(i) = vals.iter().position(|v| v.is_nan()) {
        return Err(Error::Domain(format!("integrand undefined at x = {}", xs[i])));
    }
    if vals[0] > 0.0 {
        return Err(Error::Domain(format!("integrand positive near x = 0 ({} at {})", vals[0], xs[0])));
    }
    let mut segments: Vec<(f64, Option<f64>)> = Vec::new();
    let mut start: Option<f64> = None;
    for i in 1..=SCAN {
        let (a, b) = (vals[i - 1] > 0.0, vals[i] > 0.0);
        if a != b {
            let root = bisect(&mut f, xs[i - 1], xs[i]);
            if b {
                start = Some(root);
            } else {
                segments.push((start.take().unwrap(), Some(root)));
            }
        }
    }
    if let Some(a) = start {
        segments.push((a, None));
    }
    let n = segments.len().max(1) as f64;
    let mut total = Estimate::ZERO;
    for (a, b) in segments {
        let piece = match b {
            Some(b) => {
                let mut g = |x: f64| f(x).max(0.0) / (x * x * x);
                let split = if a < 1.0 && b > 1.0 { 1.0 } else { 0.5 * (a + b) };
                integrate(&mut g, a, split, abs_tol / (2.0 * n), rel_tol, 2000)? + integrate(&mut g, split, b, abs_tol / (2.0 * n), rel_tol, 2000)?
            }
            None => {
                let mut g = |y: f64| f(1.0 / y).max(0.0) * y;
                let top = 1.0 / a;
                if a < 1.0 {
                    integrate(&mut g, 0.0, 1.0, abs_tol / (2.0 * n), rel_tol, 2000)? + integrate(&mut g, 1.0, top, abs_tol / (2.0 * n), rel_tol, 2000)?
                } else {
                    integrate(&mut g, 0.0, top, abs_tol / n, rel_tol, 2000)?
                }
            }
        };
        total = total + piece;
    }
    Ok(total)
}

/// ∫₀^{π/2} ∫₀^∞ [F(x, θ)]₊ x⁻³ dx dθ.
pub fn quad_positive_part<F>(integrand: F, spec: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let n = spec.theta_panels.max(1);
    let mut edges: Vec<f64> = (0..=n).map(|i| FRAC_PI_2 * i as f64 / n as f64).collect();
    edges.insert(n, 0.5 * (edges[n - 1] + edges[n]));
    let panels = edges.len() - 1;
    let inner_tol = spec.abs_tol / (20.0 * FRAC_PI_2);
    let results: Vec<Result<Estimate>> = (0..panels)
        .into_par_iter()
        .map(|p| {
            let mut failure = None;
            let outer = |t: f64| match inner_positive_part(|x| integrand(x, t), inner_tol, spec.rel_tol * 0.1) {
                Ok(e) => e.value,
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            };
            let est = integrate(outer, edges[p], edges[p + 1], spec.abs_tol / panels as f64, spec.rel_tol, 400);
            match failure {
                Some(e) => Err(e),
                None => est,
            }
        })
        .collect();
    let mut total = Estimate::ZERO;
    for r in results {
        total = total + r?;
    }
    // inner errors are a small fixed share of the budget
    total.error += inner_tol * FRAC_PI_2;
    Ok(total)
}

/// A(F_{ℓ,r0}) = −(ℓ/2π) sinh r0 + (4/π) ∫∫ [I(xe^{iθ}, ℓ, r0)]₊ x⁻³.
pub fn a_funnel(ell: f64, r0: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    if !(ell > 0.0 && ell.is_finite() && r0.is_finite()) {
        return Err(Error::Domain(format!("bad funnel parameters ℓ = {ell}, r0 = {r0}")));
    }
    let q = quad_positive_part(|x, t| i_eval(Complex64::from_polar(x, t), ell, r0).unwrap_or(f64::NAN), spec)?;
    Ok(Estimate { value: -ell / (2.0 * PI) * r0.sinh() + 4.0 / PI * q.value, error: 4.0 / PI * q.error })
}

fn h_integrand(r0: f64) -> impl Fn(f64, f64) -> f64 + Sync {
    // the branch point α = 1 is only reachable at θ = 0, which the rules never sample
    move |x, t| h_eval(Complex64::from_polar(x, t), r0).unwrap_or(f64::NAN)
}

/// A(Ω_{r0}) = 2 − cosh r0 + (4/π) ∫∫ [H(xe^{iθ}, r0)]₊ x⁻³.
pub fn a_obstacle(r0: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    if !(r0 >= 0.0 && r0.is_finite()) {
        return Err(Error::Domain(format!("obstacle radius must be non-negative, got {r0}")));
    }
    if r0 == 0.0 {
        return Ok(Estimate { value: 1.0, error: 0.0 });
    }
    let q = quad_positive_part(h_integrand(r0), spec)?;
    Ok(Estimate { value: 2.0 - r0.cosh() + 4.0 / PI * q.value, error: 4.0 / PI * q.error })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndKind {
    Funnel,
    Planar,
    Cusp,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EndDescriptor {
    pub kind: EndKind,
    /// Funnel only; planar ends use 2π.
    #[serde(default)]
    pub ell: f64,
    /// Boundary location b ≥ 0 (signed r0 for a model funnel).
    #[serde(default)]
    pub b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceDescriptor {
    pub euler_characteristic: i64,
    pub core_volume: f64,
    pub ends: Vec<EndDescriptor>,
}

/// B(Y) for a funnel or planar end; cusps contribute nothing and are rejected.
pub fn b_end(end: &EndDescriptor, spec: &QuadratureSpec) -> Result<Estimate> {
    match end.kind {
        EndKind::Funnel => {
            let a = a_funnel(end.ell, end.b, spec)?;
            Ok(Estimate { value: a.value + end.ell / (2.0 * PI) * end.b.sinh() - end.ell / 4.0, error: a.error })
        }
        EndKind::Planar => {
            if end.b == 0.0 {
                return Ok(Estimate::ZERO);
            }
            let q = quad_positive_part(h_integrand(end.b), spec)?;
            Ok(Estimate { value: 4.0 / PI * q.value, error: 4.0 / PI * q.error })
        }
        EndKind::Cusp => Err(Error::Domain("B is not defined for a cusp".into())),
    }
}

/// Hadamard-regularized volume of the end.
pub fn zero_volume(end: &EndDescriptor) -> Result<f64> {
    match end.kind {
        EndKind::Funnel => Ok(-end.ell * end.b.sinh()),
        EndKind::Planar => Ok(-2.0 * PI * end.b.cosh()),
        EndKind::Cusp => Err(Error::Domain("cusps enter through the core volume".into())),
    }
}

/// vol(X_c)/2π + Σ A(funnels) + Σ A(planar ends).
pub fn upper_bound_surface(surf: &SurfaceDescriptor, spec: &QuadratureSpec) -> Result<Estimate> {
    let mut total = Estimate { value: surf.core_volume / (2.0 * PI), error: 0.0 };
    for end in &surf.ends {
        total = total
            + match end.kind {
                EndKind::Funnel => a_funnel(end.ell, end.b, spec)?,
                EndKind::Planar => a_obstacle(end.b, spec)?,
                EndKind::Cusp => Estimate::ZERO,
            };
    }
    Ok(total)
}

/// |χ| + Σ ℓ_j/4: the bound for a hyperbolic surface cut at its geodesics.
pub fn upper_bound_hyperbolic(euler_characteristic: i64, funnel_lengths: &[f64]) -> f64 {
    euler_characteristic.unsigned_abs() as f64 + funnel_lengths.iter().sum::<f64>() / 4.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarlo {
    pub mean: f64,
    pub std_error: f64,
}

/// Plain Monte Carlo for ∫∫ [F]₊ x⁻³ with θ uniform and x = u/(1−u).
/// Blocks use independent ChaCha streams, so the result does not depend on
/// the thread count.
pub fn monte_carlo_positive_part<F>(integrand: F, samples: usize, seed: u64) -> MonteCarlo
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    const BLOCK: usize = 1 << 16;
    let blocks = samples.div_ceil(BLOCK);
    let sums: Vec<(f64, f64, usize)> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b as u64);
            let n = BLOCK.min(samples - b * BLOCK);
            let (mut s1, mut s2) = (0.0, 0.0);
            for _ in 0..n {
                let t = FRAC_PI_2 * rng.gen::<f64>();
                let u: f64 = rng.gen();
                if u <= 0.0 {
                    continue;
                }
                let x = u / (1.0 - u);
                let jac = 1.0 / ((1.0 - u) * (1.0 - u));
                let f = integrand(x, t);
                let w = if f > 0.0 { FRAC_PI_2 * f / (x * x * x) * jac } else { 0.0 };
                s1 += w;
                s2 += w * w;
            }
            (s1, s2, n)
        })
        .collect();
    let (mut s1, mut s2, mut n) = (0.0, 0.0, 0usize);
    for (a, b, m) in sums {
        s1 += a;
        s2 += b;
        n += m;
    }
    let nf = n as f64;
    let mean = s1 / nf;
    let var = (s2 / nf - mean * mean).max(0.0);
    MonteCarlo { mean, std_error: (var / nf).sqrt() }
}

/// Monte Carlo oracle for [`a_funnel`].
pub fn a_funnel_monte_carlo(ell: f64, r0: f64, samples: usize, seed: u64) -> MonteCarlo {
    let m = monte_carlo_positive_part(|x, t| i_eval(Complex64::from_polar(x, t), ell, r0).unwrap_or(0.0), samples, seed);
    MonteCarlo { mean: -ell / (2.0 * PI) * r0.sinh() + 4.0 / PI * m.mean, std_error: 4.0 / PI * m.std_error }
}

/// Monte Carlo oracle for [`a_obstacle`].
pub fn a_obstacle_monte_carlo(r0: f64, samples: usize, seed: u64) -> MonteCarlo {
    let h = h_integrand(r0);
    let m = monte_carlo_positive_part(|x, t| { let v = h(x, t); if v.is_nan() { 0.0 } else { v } }, samples, seed);
    MonteCarlo { mean: 2.0 - r0.cosh() + 4.0 / PI * m.mean, std_error: 4.0 / PI * m.std_error }
}
