//! Airy-type uniform approximation of the mode coefficients and its error
//! decay in |kα|.

use hypres::modes::{Funnel, ModeContext};
use hypres::uniform::{liouville_zeta, uniform_error_report, uniform_eval};
use hypres::Complex64 as C;
use std::f64::consts::PI;

fn main() -> hypres::Result<()> {
    let fun = Funnel::new(2.0 * PI, 0.0)?;
    let alpha = C::from_polar(1.2, PI / 4.0);
    for r in [0.0, 1.0, 2.0] {
        println!("ζ(α, r = {r}) = {:.8}", liouville_zeta(alpha, fun.omega, r)?);
    }
    let u = uniform_eval(&ModeContext::from_alpha(10, alpha)?, &fun, 1.0)?;
    println!("k = 10, r = 1: w0 ≈ {:.6e}, w1 ≈ {:.6e}", u.w0_approx, u.w1_approx);

    let alphas = [C::from_polar(1.0, 0.3), C::from_polar(1.0, PI / 4.0)];
    let rep = uniform_error_report(&fun, &[10, 20, 40, 80], &alphas, (0.5, 3.0, 11))?;
    for e in &rep.entries {
        println!("k = {:>2}, |kα| = {:>5.1}: max error {:.3e}", e.k, (e.alpha * e.k as f64).norm(), e.max_error);
    }
    println!("fitted decay exponent {:.3}", rep.slope);
    Ok(())
}
