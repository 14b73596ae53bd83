//! Even/odd mode solutions on a funnel and the diagonal scattering elements
//! of the four model ends.

use hypres::modes::{mode_basis, s_extended, s_funnel, s_plane, s_truncated, Funnel, ModeContext};
use hypres::Complex64 as C;
use std::f64::consts::PI;

fn main() -> hypres::Result<()> {
    let fun = Funnel::new(2.0 * PI, 0.0)?;
    let ctx = ModeContext::new(3, C::new(0.3, 4.0));
    for r in [0.0, 1.0, 3.0] {
        let b = mode_basis(&ctx, &fun, r)?;
        println!("r = {r}: w+ = {:.6}, w- = {:.6}, cosh r·W = {:.12}", b.w_plus, b.w_minus, b.scaled_wronskian(r));
    }
    println!("2/π = {:.12}", 2.0 / PI);

    let truncated = Funnel::new(2.0 * PI, 1.0)?;
    let extended = Funnel::new(2.0 * PI, -1.0)?;
    let s = C::new(0.5, 7.0);
    let k = 2;
    let values = [
        ("funnel", s_funnel(s, k, 1.0)?.value),
        ("plane", s_plane(s, k)?.value),
        ("truncated", s_truncated(s, k, &truncated)?.value),
        ("extended", s_extended(s, k, &extended)?.value),
    ];
    for (name, v) in values {
        println!("{name:>9}: S_k(1/2 + 7i) = {v:.8}  |S| = {:.12}", v.norm());
    }
    Ok(())
}
