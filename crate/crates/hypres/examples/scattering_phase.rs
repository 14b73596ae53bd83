//! Relative scattering determinant log|τ| and phase σ(ξ) of a truncated
//! funnel against the standard one.

use hypres::modes::{Funnel, Model};
use hypres::scatdet::{fit_quadratic, log_tau, sigma_phase, ModeSumPolicy, StepPolicy};
use hypres::Complex64 as C;
use std::f64::consts::PI;

fn main() -> hypres::Result<()> {
    let fun = Funnel::new(2.0 * PI, 1.0)?;
    let policy = ModeSumPolicy::default();
    for th in [0.3, 0.8, 1.3] {
        let s = C::new(0.5, 0.0) + C::from_polar(8.0, th);
        println!("log|τ({s:.4})| = {:.8}", log_tau(s, Model::TruncatedFunnel, &fun, &policy)?);
    }

    let sigma = sigma_phase(20.0, Model::TruncatedFunnel, &fun, &StepPolicy::default())?;
    for p in sigma.iter().filter(|p| p.xi >= 0.0 && p.xi.fract() == 0.0 && p.xi as u32 % 5 == 0) {
        println!("σ({:>4}) = {:.8}", p.xi, p.sigma);
    }
    let (a, b) = fit_quadratic(&sigma, 10.0, 20.0)?;
    println!("σ ≈ {a:.4} ξ² + {b:.4} ξ on [10, 20]; −sinh(1)/2 = {:.4}", -1f64.sinh() / 2.0);
    Ok(())
}
