use super::{Funnel, ModeContext};
use crate::error::{Error, Result};
use crate::logval::LogValue;
use crate::ode::{integrate, GbsOptions};
use crate::specfun::{hyp2f1_reg_diag, EvalOptions};
use num_complex::Complex64;
use std::f64::consts::PI;

type C = Complex64;

/// Largest |r| accepted before cosh²r leaves double range.
pub const R_MAX: f64 = 30.0;

/// Even and odd solutions of the mode equation and their r-derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeBasisEval {
    pub w_plus: C,
    pub w_minus: C,
    pub dw_plus: C,
    pub dw_minus: C,
}

impl ModeBasisEval {
    /// Values forced at r = 0.
    pub fn at_origin() -> Self {
        let sp = PI.sqrt();
        ModeBasisEval {
            w_plus: C::new(1.0 / sp, 0.0),
            w_minus: C::new(0.0, 0.0),
            dw_plus: C::new(0.0, 0.0),
            dw_minus: C::new(2.0 / sp, 0.0),
        }
    }

    /// cosh r · W(w⁺, w⁻), identically 2/π.
    pub fn scaled_wronskian(&self, r: f64) -> C {
        (self.w_plus * self.dw_minus - self.dw_plus * self.w_minus) * r.cosh()
    }
}

/// log cosh r without overflow.
pub(crate) fn ln_cosh(r: f64) -> f64 {
    let a = r.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

fn check_r(r: f64) -> Result<()> {
    if !r.is_finite() || r.abs() > R_MAX {
        return Err(Error::Domain(format!("|r| = {r} exceeds the supported range {R_MAX}")));
    }
    Ok(())
}

/// Hypergeometric evaluation, together with the worst series cancellation.
pub(crate) fn mode_basis_diag(k: u32, omega: f64, s: C, r: f64) -> Result<(ModeBasisEval, f64)> {
    check_r(r)?;
    if r == 0.0 {
        return Ok((ModeBasisEval::at_origin(), 1.0));
    }
    let opts = EvalOptions::default();
    let m = C::new(0.0, omega * k as f64);
    let (sh, ch) = (r.sinh(), r.cosh());
    let z = C::new(-sh * sh, 0.0);
    let a1 = (s + m) * 0.5;
    let b1 = (1.0 - s + m) * 0.5;
    let a2 = (1.0 + s + m) * 0.5;
    let b2 = (2.0 - s + m) * 0.5;
    let half = C::new(0.5, 0.0);
    let f1 = hyp2f1_reg_diag(a1, b1, half, z, &opts)?;
    let g1 = hyp2f1_reg_diag(a1 + 1.0, b1 + 1.0, half + 1.0, z, &opts)?;
    let f2 = hyp2f1_reg_diag(a2, b2, half + 1.0, z, &opts)?;
    let g2 = hyp2f1_reg_diag(a2 + 1.0, b2 + 1.0, half + 2.0, z, &opts)?;
    let canc = f1.cancellation.max(g1.cancellation).max(f2.cancellation).max(g2.cancellation);
    let p = LogValue::from_ln(m * ln_cosh(r));
    let th = r.tanh();
    let lsh = LogValue::real(sh);
    let lch = LogValue::real(ch);
    let w_plus = p * f1.value;
    let dw_plus = (p * f1.value * (m * th)).sub(p * g1.value * lsh * lch * (a1 * b1 * 2.0));
    let w_minus = p * f2.value * lsh;
    let dw_minus = (p * f2.value * (m * th * sh + ch)).sub(p * g2.value * lsh * lsh * lch * (a2 * b2 * 2.0));
    let out = ModeBasisEval {
        w_plus: w_plus.value(),
        w_minus: w_minus.value(),
        dw_plus: dw_plus.value(),
        dw_minus: dw_minus.value(),
    };
    for v in [out.w_plus, out.w_minus, out.dw_plus, out.dw_minus] {
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::Overflow("mode basis"));
        }
    }
    Ok((out, canc))
}

/// w⁺ and w⁻ from their hypergeometric closed forms.
pub fn mode_basis(ctx: &ModeContext, fun: &Funnel, r: f64) -> Result<ModeBasisEval> {
    Ok(mode_basis_diag(ctx.k, fun.omega, ctx.s, r)?.0)
}

/// Right-hand side of the mode equation as a first-order system.
pub(crate) fn mode_rhs(k: u32, omega: f64, s: C) -> impl Fn(f64, C, C) -> C {
    let q = s * (1.0 - s);
    let kw2 = (k as f64 * omega).powi(2);
    move |r: f64, w: C, dw: C| {
        let ch = r.cosh();
        -dw * r.tanh() - w * (q - kw2 / (ch * ch))
    }
}

/// Direct adaptive integration of the mode equation from r = 0 with the
/// given initial data; the independent check on the hypergeometric forms.
pub fn ode_reference(ctx: &ModeContext, fun: &Funnel, r: f64, init: &ModeBasisEval) -> Result<ModeBasisEval> {
    if !r.is_finite() || r.abs() > 10.0 {
        return Err(Error::Domain(format!("ode_reference needs |r| <= 10, got {r}")));
    }
    if r == 0.0 {
        return Ok(*init);
    }
    let acc = mode_rhs(ctx.k, fun.omega, ctx.s);
    let rhs = |x: f64, y: &[C; 4]| [y[1], acc(x, y[0], y[1]), y[3], acc(x, y[2], y[3])];
    let opts = GbsOptions { rtol: 1e-12, atol: 1e-300, ..GbsOptions::default() };
    let y0 = [init.w_plus, init.dw_plus, init.w_minus, init.dw_minus];
    let y = integrate(rhs, 0.0, y0, r, &opts, |_, _| {})?;
    Ok(ModeBasisEval { w_plus: y[0], dw_plus: y[1], w_minus: y[2], dw_minus: y[3] })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(k: u32, s: C) -> ModeContext {
        ModeContext::new(k, s)
    }

    #[test]
    fn origin_values() {
        let fun = Funnel::new(1.3, 0.0).unwrap();
        let b = mode_basis(&ctx(2, C::new(0.3, 1.0)), &fun, 0.0).unwrap();
        assert_eq!(b, ModeBasisEval::at_origin());
    }

    #[test]
    fn wronskian_at_sample_point() {
        let fun = Funnel::new(2.0 * PI, 0.0).unwrap();
        let b = mode_basis(&ctx(3, C::new(0.3, 2.0)), &fun, 1.5).unwrap();
        let w = b.scaled_wronskian(1.5);
        assert!((w - C::new(2.0 / PI, 0.0)).norm() < 1e-9, "{w}");
    }

    #[test]
    fn agrees_with_ode() {
        let fun = Funnel::new(2.0 * PI, 0.0).unwrap();
        let c = ctx(2, C::new(-1.0, 4.0));
        let h = mode_basis(&c, &fun, 2.0).unwrap();
        let o = ode_reference(&c, &fun, 2.0, &ModeBasisEval::at_origin()).unwrap();
        for (a, b) in [(h.w_plus, o.w_plus), (h.w_minus, o.w_minus), (h.dw_plus, o.dw_plus), (h.dw_minus, o.dw_minus)] {
            assert!((a - b).norm() < 1e-8 * b.norm(), "{a} {b}");
        }
    }

    #[test]
    fn ode_is_self_consistent_and_keeps_wronskian() {
        let fun = Funnel::new(2.0 * PI, 0.0).unwrap();
        let c = ctx(2, C::new(-1.0, 4.0));
        let o = ode_reference(&c, &fun, 2.0, &ModeBasisEval::at_origin()).unwrap();
        assert!((o.scaled_wronskian(2.0) - C::new(2.0 / PI, 0.0)).norm() < 1e-10);
        assert_eq!(ode_reference(&c, &fun, 0.0, &ModeBasisEval::at_origin()).unwrap(), ModeBasisEval::at_origin());
    }
}
