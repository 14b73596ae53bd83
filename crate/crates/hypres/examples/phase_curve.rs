//! The phase φ(α; r) and the curve Re φ = 0 that localizes mode zeros.

use hypres::phase::{phase_phi, rho_curve, rho_min};
use hypres::Complex64 as C;
use std::f64::consts::FRAC_PI_2;

fn main() -> hypres::Result<()> {
    let omega = 1.0;
    let r = 1.0;
    let alpha = C::from_polar(0.8, 0.6);
    let p = phase_phi(alpha, omega, r)?;
    println!("φ = {:.10}, I = 2 Re φ = {:.10}", p.phi, p.i_value);

    println!("theta      rho(theta)");
    for i in 0..=8 {
        let th = FRAC_PI_2 * i as f64 / 8.0;
        match rho_curve(th, omega, r)? {
            Some(x) => println!("{th:.4}   {x:.10}"),
            None => println!("{th:.4}   (no crossing)"),
        }
    }
    println!("min rho = {:.10}", rho_min(omega, r)?);
    Ok(())
}
