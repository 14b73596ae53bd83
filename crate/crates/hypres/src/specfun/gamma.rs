use crate::error::{Error, Result};
use crate::logval::{exp_m1, LogValue};
use num_complex::Complex64;
use std::f64::consts::{LN_2, PI};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;
const LN_PI: f64 = 1.144_729_885_849_400_2;

// B_{2m} / (2m (2m-1)), m = 1..10
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

fn stirling(z: Complex64) -> Complex64 {
    let zi = z.inv();
    let zi2 = zi * zi;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut p = zi;
    for c in STIRLING {
        acc += p * c;
        p *= zi2;
    }
    (z - 0.5) * z.ln() - z + LN_SQRT_2PI + acc
}

/// log sin(πz), continuous in the upper half plane and equal to 0 at z = 1/2.
fn ln_sin_pi_upper(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let w = Complex64::new(z.re - n, z.im);
    let e = exp_m1(Complex64::new(0.0, 2.0 * PI) * w);
    -Complex64::new(0.0, PI) * z + (-e).ln() + Complex64::new(-LN_2, 0.5 * PI)
}

pub(crate) fn ln_sin_pi(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        ln_sin_pi_upper(z.conj()).conj()
    } else {
        ln_sin_pi_upper(z)
    }
}

fn near_nonpositive_integer(z: Complex64, tol: f64) -> bool {
    z.re < 0.5 && z.im.abs() < tol && (z.re - z.re.round()).abs() < tol
}

fn ln_gamma_upper(z: Complex64) -> Complex64 {
    if z.re < 0.0 {
        return Complex64::new(LN_PI, 0.0) - ln_sin_pi_upper(z) - ln_gamma_unchecked(Complex64::new(1.0, 0.0) - z);
    }
    // Γ(z) = Γ(z+n) / Π(z+j); one log of the product, branch fixed by the
    // summed arguments
    let mut z = z;
    let mut prod = Complex64::new(1.0, 0.0);
    let mut args = 0.0;
    while z.re < 10.0 && z.norm() < 15.0 {
        prod *= z;
        args += z.arg();
        z += 1.0;
    }
    let mut shift = prod.ln();
    shift.im += 2.0 * PI * ((args - shift.im) / (2.0 * PI)).round();
    stirling(z) - shift
}

fn ln_gamma_unchecked(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        ln_gamma_upper(z.conj()).conj()
    } else {
        ln_gamma_upper(z)
    }
}

/// Principal branch of log Γ(z).
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("log_gamma of non-finite {z}")));
    }
    if near_nonpositive_integer(z, 1e-12) {
        return Err(Error::Pole { at: z });
    }
    Ok(ln_gamma_unchecked(z))
}

/// 1/Γ(z) in log form; entire, exact zeros at the non-positive integers.
pub fn ln_rgamma(z: Complex64) -> LogValue {
    if z.re < 0.5 {
        // 1/Γ(z) = Γ(1-z) sin(πz) / π
        let s = ln_sin_pi(z);
        if s.re == f64::NEG_INFINITY {
            return LogValue::ZERO;
        }
        LogValue::from_ln(ln_gamma_unchecked(Complex64::new(1.0, 0.0) - z) + s - LN_PI)
    } else {
        LogValue::from_ln(-ln_gamma_unchecked(z))
    }
}

/// 1/Γ(z).
pub fn rgamma(z: Complex64) -> Complex64 {
    ln_rgamma(z).value()
}

/// Γ(z) in log form, with a pole error near the non-positive integers.
pub fn ln_gamma_value(z: Complex64) -> Result<LogValue> {
    Ok(LogValue::from_ln(log_gamma(z)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trivial_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 4e-15);
        assert!((log_gamma(c(0.5, 0.0)).unwrap().re - 0.572_364_942_924_700_1).abs() < 4e-15);
        assert!((log_gamma(c(10.0, 0.0)).unwrap().re - 362_880f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn reference_values() {
        // mpmath loggamma
        let cases = [
            (c(3.0, 4.0), c(-1.756_626_784_603_78, 4.742_664_438_034_66)),
            (c(-2.3, 0.7), c(-1.266_429_485_193_089_4, -8.076_782_366_712_056)),
            (c(0.2, -9.0), c(-13.877_296_834_126_959, -10.303_411_039_664_264)),
        ];
        for (z, want) in cases {
            let v = log_gamma(z).unwrap();
            assert!((v - want).norm() < 1e-13, "{z}: {v}");
        }
    }

    #[test]
    fn poles_and_zeros() {
        assert!(matches!(log_gamma(c(-3.0, 0.0)), Err(Error::Pole { .. })));
        assert!(ln_rgamma(c(-3.0, 0.0)).is_zero());
        assert!(ln_rgamma(c(0.0, 0.0)).is_zero());
        // 1/Γ near -2: derivative is (-1)^2 2! = 2
        let d = 1e-9;
        let v = rgamma(c(-2.0 + d, 0.0));
        assert!((v.re / d - 2.0).abs() < 1e-6, "{v}");
    }

    #[test]
    fn negative_real_axis_matches_real_gamma() {
        // Γ(-2.5) = -0.9453087205...
        let v = rgamma(c(-2.5, 0.0)).inv();
        assert!((v.re + 0.945_308_720_482_941_9).abs() < 1e-13, "{v}");
        assert!(v.im.abs() < 1e-13);
    }
}
