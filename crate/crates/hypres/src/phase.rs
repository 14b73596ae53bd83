//! The turning-point phase φ(α; r) = ∫ √f dr of the mode equation, its
//! limits φ0 and γ, and the integrands I, H and κ built from them.

use crate::constants::inner_positive_part;
use crate::error::{Error, Result};
use crate::modes::Funnel;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

type C = Complex64;

/// Values of the phase functions at one (α, r).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseEval {
    pub phi: C,
    pub phi0: C,
    /// Undefined at the branch points α = 0, ±iω.
    pub gamma: Option<C>,
    /// I = 2 Re φ.
    pub i_value: f64,
    /// ω² + α² cosh² r.
    pub turning_radicand: C,
}

const ARG_SLACK: f64 = 1e-12;

fn check_alpha(alpha: C) -> Result<()> {
    let a = alpha.arg();
    if !(alpha.re.is_finite() && alpha.im.is_finite()) || (alpha.norm() > 0.0 && !(-ARG_SLACK..=FRAC_PI_2 + ARG_SLACK).contains(&a)) {
        return Err(Error::Domain(format!("arg α must lie in [0, π/2], got α = {alpha}")));
    }
    Ok(())
}

/// φ0(α) = −(π/2)(iα + ω).
pub fn phi0(alpha: C, omega: f64) -> C {
    -(C::i() * alpha + omega) * FRAC_PI_2
}

/// φ for r ≥ 0 by the explicit formula.
fn phi_nonneg(alpha: C, omega: f64, r: f64) -> C {
    let (sh, ch) = (r.sinh(), r.cosh());
    if (alpha - C::new(0.0, omega)).norm() <= 1e-12 * omega {
        return C::new(0.0, omega * crate::modes::ln_cosh(r));
    }
    let rad = alpha * alpha * (ch * ch) + omega * omega;
    let big = rad.sqrt();
    let t1 = if alpha.norm() == 0.0 { C::new(0.0, 0.0) } else { alpha * ((alpha * sh + big) / (alpha * alpha + omega * omega).sqrt()).ln() };
    let iw = C::new(0.0, omega * sh);
    let t2 = C::new(0.0, 0.5 * omega) * ((big - iw) / (big + iw)).ln();
    t1 + t2 + phi0(alpha, omega)
}

/// φ(α; r). For r < 0 the parity φ(α, −r) = 2φ0 − φ(α, r) is used.
pub fn phi(alpha: C, omega: f64, r: f64) -> Result<C> {
    check_alpha(alpha)?;
    if r >= 0.0 {
        Ok(phi_nonneg(alpha, omega, r))
    } else {
        Ok(2.0 * phi0(alpha, omega) - phi_nonneg(alpha, omega, -r))
    }
}

/// γ(α) = α log(2α/√(ω²+α²)) + (iω/2) log((α−iω)/(α+iω)).
pub fn gamma_factor(alpha: C, omega: f64) -> Result<C> {
    let iw = C::new(0.0, omega);
    if (alpha - iw).norm() < 1e-12 || (alpha + iw).norm() < 1e-12 || alpha.norm() == 0.0 {
        return Err(Error::Branch(format!("γ has a branch point at α = {alpha}")));
    }
    if alpha.re < 0.0 {
        return Err(Error::Domain(format!("γ needs Re α ≥ 0, got {alpha}")));
    }
    Ok(alpha * (2.0 * alpha / (alpha * alpha + omega * omega).sqrt()).ln() + C::new(0.0, 0.5 * omega) * ((alpha - iw) / (alpha + iw)).ln())
}

pub fn phase_phi(alpha: C, omega: f64, r: f64) -> Result<PhaseEval> {
    let p = phi(alpha, omega, r)?;
    let ch = r.cosh();
    Ok(PhaseEval {
        phi: p,
        phi0: phi0(alpha, omega),
        gamma: gamma_factor(alpha, omega).ok(),
        i_value: 2.0 * p.re,
        turning_radicand: alpha * alpha * (ch * ch) + omega * omega,
    })
}

/// I(α, ℓ, r) := 2 Re φ(α; r).
pub fn i_eval(alpha: C, ell: f64, r: f64) -> Result<f64> {
    Ok(2.0 * phi(alpha, 2.0 * PI / ell, r)?.re)
}

/// The same integrand written with +ω·arg u for the middle term, where
/// u = (R − iω sinh r)/(R + iω sinh r). Principal branches give
/// 2 Re[(iω/2) log u] = −ω arg u, so this differs from [`i_eval`] by 2ω arg u.
pub fn i_eval_arg_plus(alpha: C, ell: f64, r: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let omega = 2.0 * PI / ell;
    let (sh, ch) = (r.sinh(), r.cosh());
    let big = (alpha * alpha * (ch * ch) + omega * omega).sqrt();
    let first = if alpha.norm() == 0.0 { 0.0 } else { (2.0 * alpha * ((alpha * sh + big) / (alpha * alpha + omega * omega).sqrt()).ln()).re };
    let iw = C::new(0.0, omega * sh);
    let u = (big - iw) / (big + iw);
    Ok(first + omega * u.arg() + PI * (alpha.im - omega))
}

/// H(α, r) for the exterior of a disk of radius r.
pub fn h_eval(alpha: C, r: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if (alpha - 1.0).norm() < 1e-8 {
        return Err(Error::Branch(format!("H has a branch point at α = 1, got {alpha}")));
    }
    if r <= 0.0 {
        return Err(Error::Domain(format!("H needs r > 0, got {r}")));
    }
    let (sh, ch) = (r.sinh(), r.cosh());
    let q = (alpha * alpha * (sh * sh) + 1.0).sqrt();
    let first = if alpha.norm() == 0.0 { 0.0 } else { (2.0 * alpha * ((alpha * ch + q) / (alpha * alpha - 1.0).sqrt()).ln()).re };
    let second = ((ch - q) / (ch + q)).norm().ln();
    Ok(first + second)
}

/// κ(θ, r) = 2∫₀^∞ [I(xe^{iθ}, ℓ, r)]₊ x⁻³ dx − ½ ℓ sin²θ.
pub fn kappa_eval(theta: f64, fun: &Funnel, r: f64) -> Result<f64> {
    if !(0.0..=FRAC_PI_2).contains(&theta) {
        return Err(Error::Domain(format!("θ must lie in [0, π/2], got {theta}")));
    }
    let ell = fun.ell;
    let inner = inner_positive_part(|x| i_eval(C::from_polar(x, theta), ell, r).unwrap_or(f64::NAN), 1e-11, 1e-10)?;
    Ok(2.0 * inner.value - 0.5 * ell * theta.sin().powi(2))
}

/// The radius x = ϱ(θ) where Re φ(xe^{iθ}; r) changes sign, if any.
pub fn rho_curve(theta: f64, omega: f64, r: f64) -> Result<Option<f64>> {
    let f = |x: f64| phi(C::from_polar(x, theta), omega, r).map(|p| p.re);
    let mut lo = 1e-6;
    if f(lo)? >= 0.0 {
        return Err(Error::Domain(format!("Re φ is not negative near α = 0 at θ = {theta}")));
    }
    let mut hi = 1.0;
    // on the imaginary axis Re φ vanishes on a whole segment; take its start
    let nonneg = |x: f64| -> Result<bool> { Ok(f(x)? > -1e-13 * (omega + x)) };
    while !nonneg(hi)? {
        lo = hi;
        hi *= 2.0;
        if hi > 1e6 {
            return Ok(None);
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if nonneg(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

/// min over θ ∈ [0, π/2] of ϱ(θ): coarse scan, then golden section.
pub fn rho_min(omega: f64, r: f64) -> Result<f64> {
    let n = 32;
    let val = |t: f64| -> Result<f64> { Ok(rho_curve(t, omega, r)?.unwrap_or(f64::INFINITY)) };
    let mut best = (0usize, f64::INFINITY);
    for i in 0..=n {
        let v = val(FRAC_PI_2 * i as f64 / n as f64)?;
        if v < best.1 {
            best = (i, v);
        }
    }
    if !best.1.is_finite() {
        return Err(Error::Domain("Re φ has no zero curve".into()));
    }
    let h = FRAC_PI_2 / n as f64;
    let (mut a, mut b) = ((best.0 as f64 - 1.0).max(0.0) * h, ((best.0 + 1) as f64 * h).min(FRAC_PI_2));
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut c, mut d) = (b - g * (b - a), a + g * (b - a));
    let (mut fc, mut fd) = (val(c)?, val(d)?);
    while b - a > 1e-9 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = val(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = val(d)?;
        }
    }
    Ok(best.1.min(fc.min(fd)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn phi0_vanishes_at_i_omega() {
        assert_eq!(phi0(c(0.0, 1.3), 1.3).norm(), 0.0);
        let p = phase_phi(c(0.3, 0.8), 1.0, 0.0).unwrap();
        assert!((p.phi - p.phi0).norm() < 1e-12);
    }

    #[test]
    fn phi_on_imaginary_omega() {
        let p = phi(c(0.0, 1.0), 1.0, 2.0).unwrap();
        assert!((p - c(0.0, 2f64.cosh().ln())).norm() < 1e-12);
        // and continuity towards it
        let q = phi(c(1e-9, 1.0), 1.0, 2.0).unwrap();
        assert!((p - q).norm() < 1e-6);
    }

    #[test]
    fn gamma_reference() {
        let g = gamma_factor(c(1.0, 0.0), 1.0).unwrap();
        assert!((g - c(0.5 * 2f64.ln() + FRAC_PI_2 / 2.0, 0.0)).norm() < 1e-12, "{g}");
        let a = c(0.7, 0.4);
        assert!((gamma_factor(a.conj(), 1.0).unwrap() - gamma_factor(a, 1.0).unwrap().conj()).norm() < 1e-12);
        assert!(gamma_factor(c(0.0, 1.0), 1.0).is_err());
    }

    #[test]
    fn large_r_expansion() {
        // φ − [αr + φ0 + α log(α/√(ω²+α²)) + (iω/2) log((α−iω)/(α+iω))] = O(1/r)
        let (a, w) = (c(1.0, 0.5), 1.0);
        let lead = |r: f64| {
            a * r + phi0(a, w) + a * (a / (a * a + w * w).sqrt()).ln() + c(0.0, 0.5 * w) * ((a - c(0.0, w)) / (a + c(0.0, w))).ln()
        };
        let d: Vec<f64> = [5.0, 10.0, 20.0].iter().map(|&r| (phi(a, w, r).unwrap() - lead(r)).norm()).collect();
        assert!(d[1] < d[0] && d[2] < d[1] && d[2] < 1e-6, "{d:?}");
    }

    #[test]
    fn gamma_is_the_far_limit() {
        let (a, w) = (c(1.1, 0.6), 1.0);
        let r = 25.0;
        let lim = phi(a, w, r).unwrap() - a * r - phi0(a, w) - (gamma_factor(a, w).unwrap() - a * 2f64.ln());
        assert!(lim.norm() < 1e-6, "{lim}");
    }

    #[test]
    fn i_on_geodesic_and_near_zero() {
        let v = i_eval(c(0.0, 2.0), 2.0 * PI, 0.0).unwrap();
        assert!((v - PI).abs() < 1e-12);
        let v = i_eval(c(1e-4, 0.0), 2.0 * PI, 1.0).unwrap();
        let lim = 2.0 * 1f64.sinh().atan() - PI;
        assert!((v - lim).abs() < 1e-3, "{v} {lim}");
    }

    #[test]
    fn derivative_is_root_f() {
        for &(a, r) in &[(c(1.0, 0.5), 0.3), (c(0.5, 1.0), 1.0), (c(0.1, 0.6), 2.0), (c(0.0, 1.7), 0.8), (c(0.9, 0.9), -1.0)] {
            let h = 1e-5;
            let d = (phi(a, 1.0, r + h).unwrap() - phi(a, 1.0, r - h).unwrap()) / (2.0 * h);
            let ch = r.cosh();
            let want = (a * a * (ch * ch) + 1.0).sqrt() / ch;
            assert!((d - want).norm() < 1e-7, "{a} {r}: {d} {want}");
        }
    }

    #[test]
    fn h_reference_and_sign() {
        let v = h_eval(C::from_polar(2.0, PI / 4.0), 1.0).unwrap();
        assert!((v - 2.377_941_981_970_705).abs() < 1e-12, "{v}");
        assert!(h_eval(c(1e-6, 0.0), 1.0).unwrap() < 0.0);
        assert!(h_eval(c(1.0, 0.0), 1.0).is_err());
    }

    #[test]
    fn zero_curve() {
        let w = 1.0;
        let r = rho_curve(FRAC_PI_2, w, 1.0).unwrap().unwrap();
        assert!((r - 1.0 / 1f64.cosh()).abs() < 1e-8, "{r}");
        let t = rho_curve(0.7, w, 1.0).unwrap().unwrap();
        assert!(phi(C::from_polar(t, 0.7), w, 1.0).unwrap().re.abs() < 1e-12);
        let m = rho_min(w, 1.0).unwrap();
        assert!(m <= r && m > 0.4, "{m} {r}");
    }

    #[test]
    fn kappa_closed_form_on_geodesic() {
        let fun = Funnel::new(2.0 * PI, 0.0).unwrap();
        for &t in &[0.0, 0.4, 1.2, FRAC_PI_2] {
            assert!(kappa_eval(t, &fun, 0.0).unwrap().abs() < 1e-8);
        }
        assert!(kappa_eval(FRAC_PI_2, &fun, 1.0).unwrap() > kappa_eval(FRAC_PI_2, &fun, 0.0).unwrap());
    }
}
