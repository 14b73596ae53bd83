//! Gragg-Bulirsch-Stoer extrapolation for small complex linear systems.

use crate::error::{Error, Result};
use num_complex::Complex64;

type C = Complex64;

#[derive(Debug, Clone, Copy)]
pub struct GbsOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Initial step as a fraction of the interval length.
    pub first_step: f64,
    pub max_steps: usize,
}

impl Default for GbsOptions {
    fn default() -> Self {
        GbsOptions { rtol: 1e-12, atol: 1e-14, first_step: 0.05, max_steps: 200_000 }
    }
}

const SEQ: [usize; 9] = [2, 4, 6, 8, 10, 12, 14, 16, 18];
const KMAX: usize = SEQ.len();

fn midpoint<const N: usize, F>(f: &mut F, x: f64, y: &[C; N], dy: &[C; N], big_h: f64, n: usize) -> [C; N]
where
    F: FnMut(f64, &[C; N]) -> [C; N],
{
    let h = big_h / n as f64;
    let mut z0 = *y;
    let mut z1 = [C::new(0.0, 0.0); N];
    for i in 0..N {
        z1[i] = y[i] + dy[i] * h;
    }
    for m in 1..n {
        let d = f(x + m as f64 * h, &z1);
        let mut z2 = [C::new(0.0, 0.0); N];
        for i in 0..N {
            z2[i] = z0[i] + d[i] * (2.0 * h);
        }
        z0 = z1;
        z1 = z2;
    }
    let d = f(x + big_h, &z1);
    let mut out = [C::new(0.0, 0.0); N];
    for i in 0..N {
        out[i] = (z1[i] + z0[i] + d[i] * h) * 0.5;
    }
    out
}

/// Integrate y' = f(x, y) from `x0` to `x1` (either direction).
///
/// `after_step` runs after every accepted step and may rescale the state,
/// which is how callers keep exponentially growing solutions in range.
pub fn integrate<const N: usize, F, G>(
    mut f: F,
    x0: f64,
    y0: [C; N],
    x1: f64,
    opts: &GbsOptions,
    mut after_step: G,
) -> Result<[C; N]>
where
    F: FnMut(f64, &[C; N]) -> [C; N],
    G: FnMut(f64, &mut [C; N]),
{
    let span = x1 - x0;
    if span == 0.0 {
        return Ok(y0);
    }
    let dir = span.signum();
    let mut x = x0;
    let mut y = y0;
    let mut h = span.abs() * opts.first_step.clamp(1e-6, 1.0);
    let h_floor = span.abs() * 1e-14;
    let mut target = 5usize;
    let mut steps = 0usize;
    while (x1 - x) * dir > 0.0 {
        steps += 1;
        if steps > opts.max_steps {
            return Err(Error::NoConvergence { what: "GBS integration", iterations: opts.max_steps });
        }
        let last = (x1 - x).abs() <= h * 1.000_000_1;
        let hh = if last { x1 - x } else { h * dir };
        let dy = f(x, &y);
        let mut table: [[C; N]; KMAX] = [[C::new(0.0, 0.0); N]; KMAX];
        let mut accepted: Option<(usize, f64)> = None;
        let mut last_err = f64::INFINITY;
        let kstop = (target + 2).min(KMAX);
        for j in 0..kstop {
            let t = midpoint(&mut f, x, &y, &dy, hh, SEQ[j]);
            // Neville in (h/n)^2, stored in place along the diagonal row
            let mut row = [[C::new(0.0, 0.0); N]; KMAX];
            row[0] = t;
            for m in 1..=j {
                let r = (SEQ[j] as f64 / SEQ[j - m] as f64).powi(2) - 1.0;
                for i in 0..N {
                    row[m][i] = row[m - 1][i] + (row[m - 1][i] - table[m - 1][i]) / r;
                }
            }
            if j >= 1 {
                let mut err = 0.0f64;
                for i in 0..N {
                    let sc = opts.atol + opts.rtol * y[i].norm().max(row[j][i].norm());
                    err = err.max((row[j][i] - row[j - 1][i]).norm() / sc);
                }
                last_err = err;
                if !err.is_finite() {
                    break;
                }
                if err <= 1.0 && j >= 2 {
                    table[..=j].copy_from_slice(&row[..=j]);
                    accepted = Some((j, err));
                    break;
                }
            }
            table[..=j].copy_from_slice(&row[..=j]);
        }
        match accepted {
            Some((j, err)) => {
                x = if last { x1 } else { x + hh };
                y = table[j];
                after_step(x, &mut y);
                let expo = 1.0 / (2.0 * j as f64 + 1.0);
                let mut fac = 0.94 * (0.65 / err.max(1e-12)).powf(expo);
                fac = fac.clamp(0.2, 4.0);
                if j + 1 < target {
                    target = (target - 1).max(3);
                    fac *= 0.9;
                } else if j + 1 >= target && j + 1 < KMAX - 1 {
                    target = (target + 1).min(KMAX - 2);
                }
                h = hh.abs() * fac;
            }
            None => {
                let fac = if last_err.is_finite() { (0.65 / last_err).powf(0.2).clamp(0.1, 0.5) } else { 0.1 };
                h = hh.abs() * fac;
                if h < h_floor {
                    return Err(Error::StepUnderflow { at: x });
                }
            }
        }
    }
    Ok(y)
}
