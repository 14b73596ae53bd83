//! Quick invariant checks, one group per module.

use crate::constants::{a_funnel, a_funnel_monte_carlo, QuadratureSpec};
use crate::modes::{mode_basis, s_extended, s_funnel, s_plane, s_truncated, Funnel, Model, ModeContext};
use crate::phase::rho_curve;
use crate::resonances::{background_lattice, resonance_set, Background};
use crate::scatdet::{log_tau, sigma_phase, ModeSumPolicy, StepPolicy};
use crate::specfun::{airy_ai, hyp2f1_reg, log_gamma, rgamma};
use crate::uniform::uniform_error_report;
use crate::Complex64;
use clap::ValueEnum;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};

type C = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    All,
    Specfun,
    Modes,
    Phase,
    Constants,
    Resonances,
    Scatdet,
    Uniform,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: &'static str,
    pub passed: bool,
    /// Worst deviation seen, or the error message.
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Worst deviation against a tolerance; module errors count as failures.
fn within(suite: Suite, name: &'static str, tol: f64, f: impl FnOnce() -> crate::Result<f64>) -> Check {
    match f() {
        Ok(dev) => Check { suite, name, passed: dev.is_finite() && dev <= tol, detail: format!("{:.3e} (tol {tol:.0e})", dev) },
        Err(e) => Check { suite, name, passed: false, detail: e.to_string() },
    }
}

fn specfun() -> Vec<Check> {
    let s = Suite::Specfun;
    let pts = [c(0.3, 0.2), c(-2.7, 1.1), c(5.5, -8.0), c(0.5, 30.0)];
    vec![
        within(s, "gamma_recurrence", 1e-12, || {
            let mut worst: f64 = 0.0;
            for z in pts {
                let d = log_gamma(z + 1.0)? - log_gamma(z)? - z.ln();
                let d = d.im.rem_euclid(2.0 * PI);
                worst = worst.max(((log_gamma(z + 1.0)? - log_gamma(z)? - z.ln()).re).abs()).max(d.min(2.0 * PI - d));
            }
            Ok(worst)
        }),
        within(s, "gamma_reflection", 1e-12, || {
            let mut worst: f64 = 0.0;
            for z in pts {
                let lhs = rgamma(z) * rgamma(1.0 - z) * PI;
                worst = worst.max((lhs - (z * PI).sin()).norm() / (z * PI).sin().norm());
            }
            Ok(worst)
        }),
        within(s, "hyp2f1_at_origin", 1e-14, || {
            let cc = c(1.3, 0.4);
            Ok((hyp2f1_reg(c(0.2, 1.0), c(-0.4, 2.0), cc, C::new(0.0, 0.0))? - rgamma(cc)).norm())
        }),
        within(s, "airy_at_origin", 1e-14, || Ok((airy_ai(C::new(0.0, 0.0))? - 0.355_028_053_887_817_2).norm())),
    ]
}

fn modes() -> Vec<Check> {
    let s = Suite::Modes;
    vec![
        within(s, "wronskian", 1e-9, || {
            let fun = Funnel::new(2.0 * PI, 0.0)?;
            let mut worst: f64 = 0.0;
            for (k, sv, r) in [(0, c(0.3, 2.0), 1.0), (3, c(-1.5, 4.0), 2.5), (7, c(0.5, 9.0), 0.4)] {
                let w = mode_basis(&ModeContext::new(k, sv), &fun, r)?.scaled_wronskian(r);
                worst = worst.max((w - 2.0 / PI).norm());
            }
            Ok(worst)
        }),
        within(s, "reciprocity", 1e-9, || {
            let tr = Funnel::new(2.0 * PI, 1.0)?;
            let ex = Funnel::new(2.0 * PI, -1.0)?;
            let sv = c(0.2, 2.3);
            let mut worst: f64 = 0.0;
            for k in [0, 1, 4] {
                worst = worst
                    .max((s_funnel(sv, k, 1.0)?.value * s_funnel(1.0 - sv, k, 1.0)?.value - 1.0).norm())
                    .max((s_plane(sv, k)?.value * s_plane(1.0 - sv, k)?.value - 1.0).norm())
                    .max((s_truncated(sv, k, &tr)?.value * s_truncated(1.0 - sv, k, &tr)?.value - 1.0).norm())
                    .max((s_extended(sv, k, &ex)?.value * s_extended(1.0 - sv, k, &ex)?.value - 1.0).norm());
            }
            Ok(worst)
        }),
        within(s, "unitarity", 1e-9, || {
            let tr = Funnel::new(2.0 * PI, 1.0)?;
            let ex = Funnel::new(2.0 * PI, -1.0)?;
            let mut worst: f64 = 0.0;
            for (k, t) in [(0, 3.0), (2, 7.5), (6, 12.0)] {
                let sv = c(0.5, t);
                for v in [s_funnel(sv, k, 1.0)?.value, s_plane(sv, k)?.value, s_truncated(sv, k, &tr)?.value, s_extended(sv, k, &ex)?.value] {
                    worst = worst.max((v.norm() - 1.0).abs());
                }
            }
            Ok(worst)
        }),
    ]
}

fn phase() -> Vec<Check> {
    vec![within(Suite::Phase, "zero_curve_on_axis", 1e-8, || {
        let x = rho_curve(FRAC_PI_2, 1.0, 1.0)?.ok_or_else(|| crate::Error::Domain("no crossing".into()))?;
        Ok((x - 1.0 / 1f64.cosh()).abs())
    })]
}

fn constants() -> Vec<Check> {
    let s = Suite::Constants;
    let spec = QuadratureSpec::default();
    vec![
        within(s, "standard_funnel", 1e-8, || Ok((a_funnel(2.0 * PI, 0.0, &spec)?.value - FRAC_PI_2).abs())),
        within(s, "monte_carlo_agreement", 4.0, || {
            let q = a_funnel(2.0 * PI, 1.0, &spec)?;
            let mc = a_funnel_monte_carlo(2.0 * PI, 1.0, 200_000, 7);
            Ok((q.value - mc.mean).abs() / mc.std_error)
        }),
    ]
}

fn resonances() -> Vec<Check> {
    let s = Suite::Resonances;
    vec![
        within(s, "conjugation_closure", 1e-9, || {
            let fun = Funnel::new(2.0 * PI, 1.0)?;
            let set = resonance_set(Model::TruncatedFunnel, &fun, 6.0)?;
            let mut worst: f64 = 0.0;
            for e in &set.entries {
                let d = set
                    .entries
                    .iter()
                    .filter(|o| o.multiplicity == e.multiplicity)
                    .map(|o| (o.s - e.s.conj()).norm())
                    .fold(f64::INFINITY, f64::min);
                worst = worst.max(d);
            }
            Ok(worst)
        }),
        within(s, "plane_lattice_count", 0.0, || {
            // Σ_{n ≤ 9} (2n+1) = 100
            let set = background_lattice(Background::HyperbolicPlane, 9.6)?;
            Ok((set.total() as f64 - 100.0).abs())
        }),
    ]
}

fn scatdet() -> Vec<Check> {
    let s = Suite::Scatdet;
    vec![
        within(s, "critical_line_modulus", 1e-8, || {
            let fun = Funnel::new(2.0 * PI, 1.0)?;
            let policy = ModeSumPolicy::default();
            let mut worst: f64 = 0.0;
            for t in [1.0, 4.5, 9.0] {
                worst = worst.max(log_tau(c(0.5, t), Model::TruncatedFunnel, &fun, &policy)?.abs());
            }
            Ok(worst)
        }),
        within(s, "phase_odd", 1e-12, || {
            let fun = Funnel::new(2.0 * PI, 1.0)?;
            let v = sigma_phase(4.0, Model::TruncatedFunnel, &fun, &StepPolicy::default())?;
            let mut worst: f64 = 0.0;
            for p in &v {
                if let Some(q) = v.iter().find(|q| (q.xi + p.xi).abs() < 1e-12) {
                    worst = worst.max((p.sigma + q.sigma).abs());
                }
            }
            Ok(worst)
        }),
    ]
}

fn uniform() -> Vec<Check> {
    vec![within(Suite::Uniform, "k7_reconstruction", 0.02, || {
        let fun = Funnel::new(2.0 * PI, 0.0)?;
        let rep = uniform_error_report(&fun, &[7], &[C::from_polar(1.2, PI / 4.0)], (0.5, 3.0, 11))?;
        Ok(rep.entries.iter().map(|e| e.max_error).fold(0.0, f64::max))
    })]
}

/// Runs the selected group, or every group for [`Suite::All`].
pub fn run_suite(suite: Suite) -> SuiteReport {
    let groups: [(Suite, fn() -> Vec<Check>); 7] = [
        (Suite::Specfun, specfun),
        (Suite::Modes, modes),
        (Suite::Phase, phase),
        (Suite::Constants, constants),
        (Suite::Resonances, resonances),
        (Suite::Scatdet, scatdet),
        (Suite::Uniform, uniform),
    ];
    let checks: Vec<Check> = groups.iter().filter(|(g, _)| suite == Suite::All || suite == *g).flat_map(|(_, f)| f()).collect();
    let passed = checks.iter().filter(|c| c.passed).count();
    SuiteReport { failed: checks.len() - passed, passed, checks }
}
