//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fails.

use hypres::constants::{a_funnel, a_funnel_monte_carlo, a_obstacle, a_obstacle_monte_carlo, QuadratureSpec};
use hypres::modes::{mode_basis, ode_reference, s_extended, s_funnel, s_plane, s_truncated, Funnel, Model, ModeBasisEval, ModeContext};
use hypres::phase::{phase_phi, rho_curve};
use hypres::resonances::{background_lattice, find_mode_zeros, resonance_set, Background, SearchRegion};
use hypres::scatdet::{fit_quadratic, sigma_phase, verify_counting_identity, StepPolicy};
use hypres::uniform::uniform_error_report;
use hypres::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI};
use std::time::{Duration, Instant};

const TWO_PI: f64 = 2.0 * PI;

struct Outcome {
    pass: bool,
    detail: String,
}

type Check = fn() -> hypres::Result<Outcome>;

fn outcome(pass: bool, detail: String) -> hypres::Result<Outcome> {
    Ok(Outcome { pass, detail })
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn c1_standard_funnel() -> hypres::Result<Outcome> {
    let a = a_funnel(TWO_PI, 0.0, &QuadratureSpec::default())?;
    let err = (a.value - FRAC_PI_2).abs();
    outcome(err <= 1e-4, format!("A = {:.10}, |A − π/2| = {err:.2e}", a.value))
}

/// Literal closed form of I with the middle term read as −ω·arg u.
fn i_literal(alpha: C, ell: f64, r: f64) -> f64 {
    let omega = TWO_PI / ell;
    let (sh, ch) = (r.sinh(), r.cosh());
    let big = (alpha * alpha * (ch * ch) + omega * omega).sqrt();
    let first = (2.0 * alpha * ((alpha * sh + big) / (alpha * alpha + omega * omega).sqrt()).ln()).re;
    let iw = C::new(0.0, omega * sh);
    let u = (big - iw) / (big + iw);
    first - omega * u.arg() + PI * (alpha.im - omega)
}

fn c2_phase_identity() -> hypres::Result<Outcome> {
    let mut g = rng(2);
    let mut worst: f64 = 0.0;
    let mut printed: f64 = 0.0;
    for _ in 0..200 {
        let alpha = C::from_polar(g.gen_range(0.05..5.0), g.gen_range(0.0..FRAC_PI_2));
        let ell = g.gen_range(1.0..12.0);
        let r = g.gen_range(0.0..4.0);
        let two_re_phi = phase_phi(alpha, TWO_PI / ell, r)?.i_value;
        worst = worst.max((i_literal(alpha, ell, r) - two_re_phi).abs());
        printed = printed.max((hypres::phase::i_eval_arg_plus(alpha, ell, r)? - two_re_phi).abs());
    }
    outcome(worst <= 1e-12, format!("max |I − 2Re φ| = {worst:.2e} (with +ω arg u: {printed:.2e})"))
}

fn c3_mode_exactness() -> hypres::Result<Outcome> {
    let mut g = rng(3);
    let fun = Funnel::new(TWO_PI, 0.0)?;
    // Grid over the strip 0 ≤ Re s ≤ 1 with kω ≤ 3. Outside it the basis pair
    // becomes nearly dependent at large r and the Wronskian loses ~log10(cond) digits.
    let (mut wr, mut worst_cond): (f64, f64) = (0.0, 0.0);
    for _ in 0..50 {
        let ctx = ModeContext::new(g.gen_range(0..4), C::new(g.gen_range(0.0..1.0), g.gen_range(-12.0..12.0)));
        let r = g.gen_range(0.0..5.0);
        let f = Funnel::new(TWO_PI / g.gen_range(0.5..1.0), 0.0)?;
        let b = mode_basis(&ctx, &f, r)?;
        wr = wr.max((b.scaled_wronskian(r) - 2.0 / PI).norm());
        worst_cond = worst_cond.max(((b.w_plus * b.dw_minus).norm() + (b.dw_plus * b.w_minus).norm()) * r.cosh() * FRAC_PI_2);
    }
    let mut rel: f64 = 0.0;
    for _ in 0..20 {
        let ctx = ModeContext::new(g.gen_range(0..10), C::new(g.gen_range(-2.0..3.0), g.gen_range(-8.0..8.0)));
        let h = mode_basis(&ctx, &fun, 3.0)?;
        let o = ode_reference(&ctx, &fun, 3.0, &ModeBasisEval::at_origin())?;
        for (a, b) in [(h.w_plus, o.w_plus), (h.w_minus, o.w_minus), (h.dw_plus, o.dw_plus), (h.dw_minus, o.dw_minus)] {
            rel = rel.max((a - b).norm() / b.norm());
        }
    }
    outcome(wr <= 1e-9 && rel <= 1e-8, format!("Wronskian dev {wr:.2e} (50 configs, max cond {worst_cond:.1e}); hypergeometric vs ODE at r = 3: {rel:.2e}"))
}

fn c4_element_laws() -> hypres::Result<Outcome> {
    let mut g = rng(4);
    let tr = Funnel::new(TWO_PI, 1.0)?;
    let ex = Funnel::new(TWO_PI, -1.0)?;
    let all = |s: C, k: u32| -> hypres::Result<[C; 4]> {
        Ok([s_funnel(s, k, 1.0)?.value, s_plane(s, k)?.value, s_truncated(s, k, &tr)?.value, s_extended(s, k, &ex)?.value])
    };
    let (mut recip, mut unit): (f64, f64) = (0.0, 0.0);
    for _ in 0..50 {
        let k = g.gen_range(0..10);
        let s = C::new(g.gen_range(-2.0..3.0), g.gen_range(0.2..12.0));
        let (a, b) = (all(s, k)?, all(1.0 - s, k)?);
        for i in 0..4 {
            recip = recip.max((a[i] * b[i] - 1.0).norm());
        }
        for v in all(C::new(0.5, g.gen_range(0.05..30.0)), k)? {
            unit = unit.max((v.norm() - 1.0).abs());
        }
    }
    outcome(recip <= 1e-9 && unit <= 1e-9, format!("reciprocity {recip:.2e}, unimodularity {unit:.2e}"))
}

fn c5_geodesic_reduction() -> hypres::Result<Outcome> {
    let tr = Funnel::new(TWO_PI, 1e-6)?;
    let ex = Funnel::new(TWO_PI, -1e-6)?;
    let mut worst: f64 = 0.0;
    for &(k, s) in &[(0, C::new(0.6, 2.0)), (1, C::new(-0.7, 1.3)), (3, C::new(0.5, 5.0)), (5, C::new(1.4, -2.0))] {
        let base = s_funnel(s, k, 1.0)?.value;
        worst = worst.max((s_truncated(s, k, &tr)?.value - base).norm()).max((s_extended(s, k, &ex)?.value - base).norm());
    }
    outcome(worst <= 1e-4, format!("max |S_r0 − S_F| at |r0| = 1e−6: {worst:.2e}"))
}

fn c6_background_weyl() -> hypres::Result<Outcome> {
    let f = background_lattice(Background::StandardFunnel { ell: TWO_PI }, 200.0)?.counting().n(200.0)? as f64 / 40000.0;
    let p = background_lattice(Background::HyperbolicPlane, 200.0)?.counting().n(200.0)? as f64 / 40000.0;
    let (ef, ep) = ((f / FRAC_PI_2 - 1.0).abs(), (p - 1.0).abs());
    outcome(ef <= 0.05 && ep <= 0.02, format!("funnel N/t² = {f:.5} ({:.2}% off π/2), plane N/t² = {p:.5} ({:.2}% off 1)", 100.0 * ef, 100.0 * ep))
}

fn c7_truncated_weyl() -> hypres::Result<Outcome> {
    let fun = Funnel::new(TWO_PI, 1.0)?;
    let a = a_funnel(TWO_PI, 1.0, &QuadratureSpec::default())?.value;
    let n = resonance_set(Model::TruncatedFunnel, &fun, 25.0)?.counting();
    let ts = [10.0, 15.0, 20.0, 25.0];
    let ratios: Vec<f64> = ts.iter().map(|&t| Ok(n.n(t)? as f64 / (t * t))).collect::<hypres::Result<_>>()?;
    let tilde: Vec<f64> = ts.iter().map(|&t| Ok(n.n_tilde(t)? / (t * t))).collect::<hypres::Result<_>>()?;
    let off = (ratios[3] / a - 1.0).abs();
    let gaps: Vec<f64> = ratios.iter().map(|r| (r - a).abs()).collect();
    let monotone = gaps.windows(2).all(|w| w[1] < w[0]);
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(", ");
    outcome(
        off <= 0.10 && monotone,
        format!(
            "A = {a:.5}; N(t)/t² at t = 10,15,20,25: [{}], 10% check {} ({:.2}%), monotone approach {}; Ñ(t)/t²: [{}]",
            fmt(&ratios),
            if off <= 0.10 { "ok" } else { "FAIL" },
            100.0 * off,
            if monotone { "ok" } else { "FAIL" },
            fmt(&tilde)
        ),
    )
}

fn c8_extended() -> hypres::Result<Outcome> {
    let a = a_funnel(TWO_PI, -1.0, &QuadratureSpec::default())?.value;
    let mc = a_funnel_monte_carlo(TWO_PI, -1.0, 1_000_000, 8);
    let off = (a / mc.mean - 1.0).abs();
    let bound = 1f64.sinh() + FRAC_PI_2;
    let fun = Funnel::new(TWO_PI, -1.0)?;
    let set = resonance_set(Model::ExtendedFunnel, &fun, 22.0)?;
    let dist = |im: f64| {
        set.entries.iter().filter(|e| (e.s.im - im).abs() <= 1.0).map(|e| 0.5 - e.s.re).fold(f64::INFINITY, f64::min)
    };
    let d: Vec<f64> = [5.0, 10.0, 15.0, 20.0].iter().map(|&y| dist(y)).collect();
    let approach = d[3] < d[0] && d.windows(2).all(|w| w[1] <= w[0]);
    outcome(
        off <= 0.01 && a <= bound && approach,
        format!(
            "A = {a:.6} vs MC {:.5} ± {:.5} ({:.2}%); bound {bound:.5}; closest distance to Re s = 1/2 near Im s = 5,10,15,20: {:.2e}, {:.2e}, {:.2e}, {:.2e}",
            mc.mean,
            mc.std_error,
            100.0 * off,
            d[0],
            d[1],
            d[2],
            d[3]
        ),
    )
}

fn c9_mode_seven() -> hypres::Result<Outcome> {
    let fun = Funnel::new(TWO_PI, 1.0)?;
    let region = SearchRegion { re_min: -16.0, re_max: 0.4, im_min: 0.05, im_max: 16.0, grid_step: 0.25, disk: None };
    let zeros = find_mode_zeros(Model::TruncatedFunnel, &fun, 7, &region)?;
    // the curve in the s-plane, mirrored to Im s > 0
    let mut curve = Vec::new();
    for i in 0..=4000 {
        let th = FRAC_PI_2 * i as f64 / 4000.0;
        if let Some(x) = rho_curve(th, fun.omega, 1.0)? {
            curve.push((C::new(0.5, 0.0) - 7.0 * C::from_polar(x, th)).conj());
        }
    }
    let dist = |s: C| curve.iter().map(|p| (p - s).norm()).fold(f64::INFINITY, f64::min);
    let band: Vec<f64> = zeros.iter().filter(|e| (5.0..=15.0).contains(&e.s.im)).map(|e| dist(e.s)).collect();
    let all: Vec<f64> = zeros.iter().map(|e| dist(e.s)).collect();
    let band_max = band.iter().cloned().fold(0.0, f64::max);
    let all_max = all.iter().cloned().fold(0.0, f64::max);
    let im_max = zeros.iter().map(|e| e.s.im).fold(0.0, f64::max);
    outcome(
        band_max <= 0.5 && all_max <= 0.5 && !zeros.is_empty(),
        format!(
            "{} zeros with Im s in [5, 15] (vacuous: largest Im s is {im_max:.3}); all {} non-real k = 7 zeros within {all_max:.3} of the curve",
            band.len(),
            all.len()
        ),
    )
}

fn c10_counting_identity() -> hypres::Result<Outcome> {
    let fun = Funnel::new(TWO_PI, 1.0)?;
    let mut defects = Vec::new();
    for a in [6.0, 10.0, 14.0] {
        defects.push((a, verify_counting_identity(a, Model::TruncatedFunnel, &fun)?.defect));
    }
    let scaled: Vec<f64> = defects.iter().map(|(a, d)| d.abs() / (a * a)).collect();
    let decreasing = scaled.windows(2).all(|w| w[1] < w[0]);
    let c = defects[0].1.abs() / defects[0].0.ln();
    let honored = defects[1..].iter().all(|(a, d)| d.abs() <= 3.0 * c * a.ln());
    outcome(
        decreasing && honored,
        format!(
            "defect at a = 6,10,14: {:.4}, {:.4}, {:.4}; |defect|/a²: {:.2e}, {:.2e}, {:.2e}; C = {c:.4}",
            defects[0].1, defects[1].1, defects[2].1, scaled[0], scaled[1], scaled[2]
        ),
    )
}

fn c11_phase_weyl() -> hypres::Result<Outcome> {
    let fun = Funnel::new(TWO_PI, 1.0)?;
    let sigma = sigma_phase(60.0, Model::TruncatedFunnel, &fun, &StepPolicy::default())?;
    let (a, b) = fit_quadratic(&sigma, 20.0, 60.0)?;
    let want = -1f64.sinh() / 2.0;
    let off = (a / want - 1.0).abs();
    outcome(off <= 0.10, format!("ξ² coefficient {a:.6} (linear {b:.4}) vs −sinh(1)/2 = {want:.6}: {:.3}% off", 100.0 * off))
}

fn c12_uniform_decay() -> hypres::Result<Outcome> {
    let fun = Funnel::new(TWO_PI, 0.0)?;
    let alphas = [C::from_polar(1.0, 0.3), C::from_polar(1.0, PI / 4.0), C::from_polar(1.0, 1.2)];
    let rep = uniform_error_report(&fun, &[10, 20, 40, 80], &alphas, (0.5, 3.0, 11))?;
    outcome((-1.3..=-0.7).contains(&rep.slope), format!("error-decay exponent {:.4} over {} (k, α) pairs", rep.slope, rep.entries.len()))
}

fn c13_obstacle() -> hypres::Result<Outcome> {
    let spec = QuadratureSpec::default();
    let a = a_obstacle(1.0, &spec)?.value;
    let mc = a_obstacle_monte_carlo(1.0, 1_000_000, 13);
    let off = (a / mc.mean - 1.0).abs();
    let mut vals = Vec::new();
    for r0 in [0.5, 1.0, 2.0] {
        vals.push(a_obstacle(r0, &spec)?.value);
    }
    let positive = vals.iter().all(|&v| v > 0.0);
    outcome(
        off <= 0.01 && positive,
        format!("A(1) = {a:.6} vs MC {:.5} ± {:.5} ({:.2}%); A(0.5, 1, 2) = {:.5}, {:.5}, {:.5}", mc.mean, mc.std_error, 100.0 * off, vals[0], vals[1], vals[2]),
    )
}

fn main() {
    let criteria: [(u32, &str, Duration, Check); 13] = [
        (1, "standard-funnel constant", Duration::from_secs(10), c1_standard_funnel),
        (2, "phase identity", Duration::from_secs(1), c2_phase_identity),
        (3, "mode exactness", Duration::from_secs(30), c3_mode_exactness),
        (4, "scattering-element laws", Duration::from_secs(10), c4_element_laws),
        (5, "geodesic reduction", Duration::from_secs(10), c5_geodesic_reduction),
        (6, "background Weyl laws", Duration::from_secs(5), c6_background_weyl),
        (7, "truncated-funnel Weyl law", Duration::from_secs(900), c7_truncated_weyl),
        (8, "extended funnel", Duration::from_secs(900), c8_extended),
        (9, "mode-zero localization", Duration::from_secs(120), c9_mode_seven),
        (10, "counting identity", Duration::from_secs(1200), c10_counting_identity),
        (11, "scattering-phase Weyl law", Duration::from_secs(600), c11_phase_weyl),
        (12, "uniform asymptotics", Duration::from_secs(120), c12_uniform_decay),
        (13, "obstacle constant", Duration::from_secs(60), c13_obstacle),
    ];
    let mut failed = 0;
    for (n, name, budget, check) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let (pass, detail) = match result {
            Ok(o) => (o.pass && took <= budget, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {n:>2} {}: {name}: {detail} [{:.1} s, budget {} s]",
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 13 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
