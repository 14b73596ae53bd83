use super::gamma::{ln_rgamma, ln_sin_pi};
use super::EvalOptions;
use crate::error::{Error, Result};
use crate::logval::LogValue;
use crate::ode::{integrate, GbsOptions};
use num_complex::Complex64;
use std::f64::consts::PI;

type C = Complex64;

/// A hypergeometric value with the cancellation seen while summing it
/// (largest term magnitude over the magnitude of the result).
#[derive(Debug, Clone, Copy)]
pub struct HypValue {
    pub value: LogValue,
    pub cancellation: f64,
}

/// Σ (a)_n (b)_n z^n / (n! Γ(c+n)), valid for every c.
///
/// 1/Γ(c+n) is obtained from a single reciprocal Gamma at an index where
/// Re(c+n) ≥ 1 and recurrences that only multiply on the way down, so the
/// exact zeros at c+n ∈ -ℕ0 come out exactly.
pub(crate) fn series_reg(a: C, b: C, c: C, z: C, opts: &EvalOptions) -> Result<HypValue> {
    let n0 = if c.re < 1.0 { (1.0 - c.re).ceil() as usize } else { 0 };
    let base = ln_rgamma(c + n0 as f64);
    let mut down = vec![C::new(1.0, 0.0); n0 + 1];
    for n in (0..n0).rev() {
        down[n] = down[n + 1] * (c + n as f64);
    }
    // past n0 the 1/(c)_n factor is folded into `poch` so the raw
    // Pochhammer products never overflow on their own
    let mut poch = C::new(1.0, 0.0);
    let mut sum = C::new(0.0, 0.0);
    let mut max_term = 0.0f64;
    let mut quiet = 0;
    for n in 0..opts.max_terms {
        let nf = n as f64;
        let rel = if n < n0 { down[n] } else { C::new(1.0, 0.0) };
        let t = poch * rel;
        sum += t;
        let tn = t.norm();
        max_term = max_term.max(tn);
        if !sum.re.is_finite() || !sum.im.is_finite() {
            return Err(Error::Overflow("hypergeometric series"));
        }
        let step = (a + nf) * (b + nf) * z / (nf + 1.0);
        if n >= n0 {
            poch *= step / (c + nf);
        } else {
            poch *= step;
        }
        if poch.norm() == 0.0 {
            return finish(sum, base, max_term);
        }
        if n > n0 + 2 {
            let ratio = (step / (c + nf)).norm();
            let tail = if ratio < 1.0 { tn * ratio / (1.0 - ratio) } else { f64::INFINITY };
            if tail <= opts.rel_tol * sum.norm() + opts.abs_tol * max_term {
                quiet += 1;
                if quiet >= 2 {
                    return finish(sum, base, max_term);
                }
            } else {
                quiet = 0;
            }
        }
    }
    Err(Error::NoConvergence { what: "hypergeometric series", iterations: opts.max_terms })
}

fn finish(sum: C, base: LogValue, max_term: f64) -> Result<HypValue> {
    let s = sum.norm();
    let cancellation = if s > 0.0 { (max_term / s).max(1.0) } else { f64::INFINITY };
    Ok(HypValue { value: LogValue::new(sum) * base, cancellation })
}

/// Two-term connection formula about x = 1, non-degenerate c-a-b.
/// Takes y = 1-x directly so callers can supply it without cancellation.
fn connection(a: C, b: C, c: C, y: C, opts: &EvalOptions) -> Result<HypValue> {
    let one = C::new(1.0, 0.0);
    let d = c - a - b;
    let f1 = series_reg(a, b, one - d, y, opts)?;
    let f2 = series_reg(c - a, c - b, one + d, y, opts)?;
    let t1 = f1.value * ln_rgamma(c - a) * ln_rgamma(c - b);
    let t2 = f2.value * ln_rgamma(a) * ln_rgamma(b) * LogValue::from_ln(d * y.ln());
    let pref = LogValue::from_ln(C::new(PI.ln(), 0.0) - ln_sin_pi(d));
    let diff = t1.sub(t2);
    let big = t1.ln_abs().max(t2.ln_abs());
    let canc = (big - diff.ln_abs()).exp().max(1.0) * f1.cancellation.max(f2.cancellation);
    Ok(HypValue { value: pref * diff, cancellation: canc })
}

/// Regularized value near x = 1, given y = 1-x.
fn near_one(a: C, b: C, c: C, y: C, opts: &EvalOptions) -> Result<HypValue> {
    let d = c - a - b;
    let dist = ((d.re - d.re.round()).powi(2) + d.im * d.im).sqrt();
    if dist > 0.05 {
        return connection(a, b, c, y, opts);
    }
    degenerate(a, b, c, y, opts).or_else(|_| ode_fallback(a, b, c, y, opts))
}

/// Integer c-a-b: symmetric perturbation of c and Richardson extrapolation in ε².
fn degenerate(a: C, b: C, c: C, y: C, opts: &EvalOptions) -> Result<HypValue> {
    const LEVELS: usize = 5;
    let mut table = [[C::new(0.0, 0.0); LEVELS]; LEVELS];
    let mut canc: f64 = 1.0;
    let mut scale: Option<LogValue> = None;
    for j in 0..LEVELS {
        let eps = 0.2 / (1u32 << j) as f64;
        let up = connection(a, b, c + eps, y, opts)?;
        let dn = connection(a, b, c - eps, y, opts)?;
        let sc = *scale.get_or_insert(up.value);
        canc = canc.max(up.cancellation).max(dn.cancellation);
        table[j][0] = (up.value / sc).value() * 0.5 + (dn.value / sc).value() * 0.5;
        for m in 1..=j {
            let f = 4f64.powi(m as i32) - 1.0;
            table[j][m] = table[j][m - 1] + (table[j][m - 1] - table[j - 1][m - 1]) / f;
        }
    }
    let best = table[LEVELS - 1][LEVELS - 1];
    let prev = table[LEVELS - 2][LEVELS - 2];
    if (best - prev).norm() > 1e-10 * best.norm().max(1e-300) {
        return Err(Error::NoConvergence { what: "degenerate hypergeometric limit", iterations: LEVELS });
    }
    Ok(HypValue { value: scale.unwrap() * best, cancellation: canc * 100.0 })
}

/// Integrate the hypergeometric equation from |x| = 1/2 out to x = 1-y.
fn ode_fallback(a: C, b: C, c: C, y: C, opts: &EvalOptions) -> Result<HypValue> {
    let one = C::new(1.0, 0.0);
    let x = one - y;
    let x0 = x * (0.5 / x.norm());
    let f0 = series_reg(a, b, c, x0, opts)?;
    let df0 = series_reg(a + 1.0, b + 1.0, c + 1.0, x0, opts)?;
    let sc = f0.value;
    let y0 = [one, (df0.value * (a * b) / sc).value()];
    // parametrize the segment x0 -> x by t in [0, 1]
    let dx = x - x0;
    let rhs = |t: f64, v: &[C; 2]| {
        let xx = x0 + dx * t;
        let d2 = (a * b * v[0] - (c - (a + b + 1.0) * xx) * v[1]) / (xx * (one - xx));
        [v[1] * dx, d2 * dx]
    };
    let gopts = GbsOptions { rtol: 1e-13, atol: 1e-15, ..GbsOptions::default() };
    let v = integrate(rhs, 0.0, y0, 1.0, &gopts, |_, _| {})?;
    Ok(HypValue { value: sc * v[0], cancellation: f0.cancellation * 10.0 })
}

/// 𝐅(a,b;c;x) for x in the unit disk given together with y = 1-x; series
/// for |x| ≤ 0.9, the expansion about 1 beyond.
pub(crate) fn hyp2f1_reg_unit(a: C, b: C, c: C, x: C, y: C, opts: &EvalOptions) -> Result<HypValue> {
    if x.norm() <= 0.9 {
        series_reg(a, b, c, x, opts)
    } else {
        near_one(a, b, c, y, opts)
    }
}

/// Regularized Gauss function 𝐅(a,b;c;z) = ₂F₁(a,b;c;z)/Γ(c), with the
/// cancellation diagnostic.
pub fn hyp2f1_reg_diag(a: C, b: C, c: C, z: C, opts: &EvalOptions) -> Result<HypValue> {
    if z.norm() == 0.0 {
        return Ok(HypValue { value: ln_rgamma(c), cancellation: 1.0 });
    }
    if z.norm() <= 0.5 {
        return series_reg(a, b, c, z, opts);
    }
    let one = C::new(1.0, 0.0);
    // Pfaff: 𝐅(a,b;c;z) = (1-z)^{-a} 𝐅(a, c-b; c; z/(z-1)), and 1 - z/(z-1) = 1/(1-z)
    let x = z / (z - one);
    if x.norm() <= 0.9 || (one - z).norm() > 1.0 {
        let pre = LogValue::from_ln(-a * (one - z).ln());
        let inner = hyp2f1_reg_unit(a, c - b, c, x, (one - z).inv(), opts)?;
        return Ok(HypValue { value: pre * inner.value, cancellation: inner.cancellation });
    }
    if (one - z).norm() < 0.9 {
        return near_one(a, b, c, one - z, opts);
    }
    Err(Error::Domain(format!("hyp2f1_reg argument {z} outside supported region")))
}

/// Regularized Gauss hypergeometric function 𝐅(a,b;c;z).
pub fn hyp2f1_reg(a: C, b: C, c: C, z: C) -> Result<C> {
    hyp2f1_reg_opts(a, b, c, z, &EvalOptions::default())
}

pub fn hyp2f1_reg_opts(a: C, b: C, c: C, z: C, opts: &EvalOptions) -> Result<C> {
    let v = hyp2f1_reg_diag(a, b, c, z, opts)?.value.value();
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::Overflow("hyp2f1_reg"));
    }
    Ok(v)
}
