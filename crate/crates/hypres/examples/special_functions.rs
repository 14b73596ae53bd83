//! Complex log-Gamma, the regularized Gauss function and Airy Ai.

use hypres::specfun::{airy_ai, hyp2f1_reg, log_gamma, rgamma};
use hypres::Complex64 as C;
use std::f64::consts::PI;

fn main() -> hypres::Result<()> {
    let z = C::new(0.5, 10.0);
    println!("ln Γ({z}) = {}", log_gamma(z)?);

    // reflection: Γ(z)Γ(1−z) = π / sin πz
    let lhs = 1.0 / (rgamma(z) * rgamma(1.0 - z));
    println!("Γ(z)Γ(1−z) = {lhs}, π/sin πz = {}", PI / (z * PI).sin());

    // 𝐅(a,b;c;z) stays finite at c = −2, where ₂F₁ itself has a pole
    let f = hyp2f1_reg(C::new(1.0, 0.5), C::new(2.0, 0.0), C::new(-2.0, 0.0), C::new(0.3, 0.1))?;
    println!("F(1+i/2, 2; −2; 0.3+0.1i) = {f}");

    for x in [0.0, 2.0, 10.0] {
        println!("Ai({x}) = {}", airy_ai(C::new(x, 0.0))?.re);
    }
    Ok(())
}
