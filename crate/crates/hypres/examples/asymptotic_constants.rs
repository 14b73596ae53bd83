//! Weyl constants of funnel and obstacle ends, with a Monte-Carlo cross-check.

use hypres::constants::{a_funnel, a_funnel_monte_carlo, a_obstacle, a_obstacle_monte_carlo, QuadratureSpec};
use std::f64::consts::PI;

fn main() -> hypres::Result<()> {
    let spec = QuadratureSpec::default();
    for r0 in [-1.0, 0.0, 1.0] {
        let a = a_funnel(2.0 * PI, r0, &spec)?;
        println!("A(F_2π, r0 = {r0:>4}) = {:.10} ± {:.1e}", a.value, a.error);
    }
    let mc = a_funnel_monte_carlo(2.0 * PI, 1.0, 200_000, 1);
    println!("Monte-Carlo, r0 = 1:   {:.5} ± {:.5}", mc.mean, mc.std_error);

    let a = a_obstacle(1.0, &spec)?;
    let mc = a_obstacle_monte_carlo(1.0, 200_000, 1);
    println!("A(obstacle, 1) = {:.10}; Monte-Carlo {:.5} ± {:.5}", a.value, mc.mean, mc.std_error);
    Ok(())
}
