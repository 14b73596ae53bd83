//! Resonances of a truncated funnel by argument-principle root finding, and
//! the counting functions N(t), Ñ(t).

use hypres::modes::{Funnel, Model};
use hypres::resonances::{background_lattice, resonance_set, Background};
use std::f64::consts::PI;

fn main() -> hypres::Result<()> {
    let fun = Funnel::new(2.0 * PI, 1.0)?;
    let set = resonance_set(Model::TruncatedFunnel, &fun, 8.0)?;
    println!("{} resonances (with multiplicity) in |s − 1/2| ≤ 8", set.total());
    for e in set.entries.iter().filter(|e| e.mode <= 1 && e.s.im >= 0.0).take(10) {
        println!("  k = {:>2}  s = {:>24.10}  m = {}", e.mode, e.s, e.multiplicity);
    }

    let n = set.counting();
    let bg = background_lattice(Background::StandardFunnel { ell: 2.0 * PI }, 8.0)?.counting();
    println!("   t      N   N_bg    Ñ(t)");
    for t in [2.0, 4.0, 6.0, 8.0] {
        println!("{t:>4} {:>6} {:>6} {:>8.3}", n.n(t)?, bg.n(t)?, n.n_tilde(t)?);
    }
    Ok(())
}
