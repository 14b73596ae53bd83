//! Resonance sets of the model ends and their counting functions.
//!
//! Truncated and extended funnel resonances are the zeros in s of the
//! boundary functions E_k(s; r0), mode by mode. They are isolated by the
//! argument principle on a quadtree of boxes and polished by Newton.

use crate::error::{Error, Result};
use crate::logval::{wrap_angle, LogValue};
use crate::modes::{boundary_function, Funnel, Model};
use crate::phase::rho_min;
use num_complex::Complex64;
use rayon::prelude::*;
use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_4, PI};

type C = Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceEntry {
    pub s: C,
    pub multiplicity: u32,
    /// Originating |k|; −1 for background aggregates.
    pub mode: i64,
    /// Within 1e−4 of a half-integer 1/2 − n, where the zero sits next to a
    /// Gamma zero of the scattering element.
    pub near_half_integer: bool,
    /// Merged with a zero of another mode.
    pub coincident: bool,
}

impl ResonanceEntry {
    fn new(s: C, multiplicity: u32, mode: i64) -> Self {
        ResonanceEntry { s, multiplicity, mode, near_half_integer: near_half_integer(s), coincident: false }
    }
}

fn near_half_integer(s: C) -> bool {
    let t = s.re - 0.5;
    t <= 1e-4 && (t - t.round()).abs() < 1e-4 && s.im.abs() < 1e-4
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResonanceSet {
    pub entries: Vec<ResonanceEntry>,
    /// Complete for |s − 1/2| ≤ radius.
    pub radius: f64,
}

impl ResonanceSet {
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|e| e.multiplicity as u64).sum()
    }

    pub fn counting(&self) -> CountingFunction {
        counting_functions(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Background {
    StandardFunnel { ell: f64 },
    HyperbolicPlane,
}

/// Gamma-pole lattices of the explicit background elements, cut to
/// |s − 1/2| ≤ radius.
pub fn background_lattice(model: Background, radius: f64) -> Result<ResonanceSet> {
    if !(radius >= 1.0 && radius.is_finite()) {
        return Err(Error::Domain(format!("lattice radius must be ≥ 1, got {radius}")));
    }
    let mut entries = Vec::new();
    match model {
        Background::StandardFunnel { ell } => {
            if !(ell > 0.0 && ell.is_finite()) {
                return Err(Error::Domain(format!("funnel length must be positive, got {ell}")));
            }
            let omega = 2.0 * PI / ell;
            let mut n = 0u32;
            while 1.5 + 2.0 * n as f64 <= radius {
                let re = -1.0 - 2.0 * n as f64;
                let dre = re - 0.5;
                let kmax = ((radius * radius - dre * dre).max(0.0).sqrt() / omega).floor() as i64;
                for k in -kmax..=kmax {
                    let s = C::new(re, k as f64 * omega);
                    if (s - 0.5).norm() <= radius {
                        entries.push(ResonanceEntry::new(s, 2, k.abs()));
                    }
                }
                n += 1;
            }
        }
        Background::HyperbolicPlane => {
            let mut n = 0u32;
            while n as f64 + 0.5 <= radius {
                entries.push(ResonanceEntry::new(C::new(-(n as f64), 0.0), 2 * n + 1, -1));
                n += 1;
            }
        }
    }
    sort_entries(&mut entries);
    Ok(ResonanceSet { entries, radius })
}

fn sort_entries(v: &mut [ResonanceEntry]) {
    v.sort_by(|a, b| a.mode.cmp(&b.mode).then(a.s.im.total_cmp(&b.s.im)).then(a.s.re.total_cmp(&b.s.re)));
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchRegion {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    /// Initial sample spacing on box edges.
    pub grid_step: f64,
    /// Boxes entirely outside |s − 1/2| ≤ disk are not searched.
    pub disk: Option<f64>,
}

impl SearchRegion {
    /// The box used for one mode of [`resonance_set`]: it covers the upper
    /// half disk of the given radius and reaches a little below the real axis.
    pub fn for_radius(radius: f64) -> Self {
        SearchRegion {
            re_min: 0.5 - radius - 0.31,
            re_max: 0.73,
            im_min: -0.37,
            im_max: radius + 0.31,
            grid_step: 0.25,
            disk: Some(radius + 0.2),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Rect {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Rect {
    fn diameter(&self) -> f64 {
        (self.x1 - self.x0).hypot(self.y1 - self.y0)
    }

    fn contains(&self, s: C, slack: f64) -> bool {
        s.re >= self.x0 - slack && s.re <= self.x1 + slack && s.im >= self.y0 - slack && s.im <= self.y1 + slack
    }

    fn distance_to(&self, p: C) -> f64 {
        let dx = (self.x0 - p.re).max(p.re - self.x1).max(0.0);
        let dy = (self.y0 - p.im).max(p.im - self.y1).max(0.0);
        dx.hypot(dy)
    }

    fn corners(&self) -> [C; 4] {
        [C::new(self.x0, self.y0), C::new(self.x1, self.y0), C::new(self.x1, self.y1), C::new(self.x0, self.y1)]
    }
}

fn key(s: C) -> (u64, u64) {
    (s.re.to_bits(), s.im.to_bits())
}

const SPLIT_OFFSETS: [f64; 6] = [0.0, 0.0731, -0.0917, 0.1193, -0.1371, 0.1557];
const MAX_DEPTH: u32 = 40;

struct Searcher<F> {
    f: F,
    k: u32,
    step: f64,
    disk: Option<f64>,
    values: HashMap<(u64, u64), LogValue>,
    edges: HashMap<((u64, u64), (u64, u64)), f64>,
}

impl<F: Fn(C) -> Result<LogValue>> Searcher<F> {
    fn eval(&mut self, s: C) -> Result<LogValue> {
        if let Some(v) = self.values.get(&key(s)) {
            return Ok(*v);
        }
        let v = (self.f)(s)?;
        if !v.is_finite() {
            return Err(Error::Overflow("boundary function on a contour"));
        }
        self.values.insert(key(s), v);
        Ok(v)
    }

    /// Change of arg f along the segment a → b.
    fn edge(&mut self, a: C, b: C) -> Result<f64> {
        let (lo, hi, sign) = if (a.re, a.im) <= (b.re, b.im) { (a, b, 1.0) } else { (b, a, -1.0) };
        let ek = (key(lo), key(hi));
        if let Some(d) = self.edges.get(&ek) {
            return Ok(sign * d);
        }
        let len = (hi - lo).norm();
        let n = ((len / self.step).ceil() as usize).max(2);
        let pts: Vec<C> = (0..=n).map(|i| lo + (hi - lo) * (i as f64 / n as f64)).collect();
        let mut total = 0.0;
        let min_len = 1e-4 * self.step.min(len);
        for w in pts.windows(2) {
            let mut stack = vec![(w[0], w[1])];
            while let Some((p, q)) = stack.pop() {
                let (fp, fq) = (self.eval(p)?, self.eval(q)?);
                let d = wrap_angle(fq.ln.im - fp.ln.im);
                if d.abs() > FRAC_PI_4 || (fq.ln.re - fp.ln.re).abs() > 1.0 {
                    if (q - p).norm() < min_len {
                        return Err(Error::ContourThroughZero { near: (p + q) * 0.5, mode: self.k });
                    }
                    let m = (p + q) * 0.5;
                    // left half first so the sum is formed in path order
                    stack.push((m, q));
                    stack.push((p, m));
                } else {
                    total += d;
                }
            }
        }
        self.edges.insert(ek, total);
        Ok(sign * total)
    }

    fn winding(&mut self, r: &Rect) -> Result<i64> {
        let c = r.corners();
        let mut total = 0.0;
        for i in 0..4 {
            total += self.edge(c[i], c[(i + 1) % 4])?;
        }
        let w = total / (2.0 * PI);
        if (w - w.round()).abs() > 0.2 {
            return Err(Error::Branch(format!("non-integer winding {w} around box {r:?}")));
        }
        Ok(w.round() as i64)
    }

    fn pruned(&self, r: &Rect) -> bool {
        self.disk.is_some_and(|d| r.distance_to(C::new(0.5, 0.0)) > d)
    }

    /// Newton with a Richardson-extrapolated central difference. `mult`
    /// scales the step for a known multiple zero.
    fn newton(&mut self, s0: C, mult: f64) -> Result<Option<C>> {
        let mut s = s0;
        for _ in 0..60 {
            let f0 = (self.f)(s)?;
            if f0.is_zero() {
                return Ok(Some(s));
            }
            let d = self.derivative(s)?;
            if d.is_zero() || !d.is_finite() {
                return Ok(None);
            }
            let step = (f0 / d).value() * mult;
            if !(step.re.is_finite() && step.im.is_finite()) {
                return Ok(None);
            }
            s -= step;
            if step.norm() <= 1e-13 * (1.0 + s.norm()) {
                return Ok(Some(s));
            }
            if (s - s0).norm() > 50.0 {
                return Ok(None);
            }
        }
        Ok(None)
    }

    fn derivative(&self, s: C) -> Result<LogValue> {
        let h = 1e-3;
        let diff = |h: f64| -> Result<LogValue> {
            let p = (self.f)(s + h)?;
            let m = (self.f)(s - h)?;
            Ok(p.sub(m) * LogValue::real(0.5 / h))
        };
        let (d1, d2) = (diff(h)?, diff(0.5 * h)?);
        // (4 D(h/2) − D(h)) / 3
        Ok((d2 * LogValue::real(4.0 / 3.0)).sub(d1 * LogValue::real(1.0 / 3.0)))
    }

    /// |f(s)| relative to |f'(s)|·1, the size of the last Newton step.
    fn residual_ok(&self, s: C) -> Result<bool> {
        let f0 = (self.f)(s)?;
        if f0.is_zero() {
            return Ok(true);
        }
        let d = self.derivative(s)?;
        Ok(f0.ln_abs() - d.ln_abs() < (1e-10f64).ln())
    }

    fn search(&mut self, r: Rect, n: i64, depth: u32, out: &mut Vec<ResonanceEntry>) -> Result<()> {
        if n == 0 {
            return Ok(());
        }
        if n < 0 {
            return Err(Error::CountMismatch { mode: self.k, winding: n, found: 0 });
        }
        let centre = C::new(0.5 * (r.x0 + r.x1), 0.5 * (r.y0 + r.y1));
        let tiny = r.diameter() < 1e-7 * (1.0 + centre.norm());
        if n == 1 || tiny {
            let mult = if n == 1 { 1.0 } else { n as f64 };
            if let Some(z) = self.newton(centre, mult)? {
                if r.contains(z, 1e-9 * (1.0 + z.norm())) && self.residual_ok(z)? {
                    out.push(ResonanceEntry::new(z, n as u32, self.k as i64));
                    return Ok(());
                }
            }
            if tiny {
                if n >= 2 {
                    // an unresolved cluster: keep the box centre with its winding
                    out.push(ResonanceEntry::new(centre, n as u32, self.k as i64));
                    return Ok(());
                }
                return Err(Error::CountMismatch { mode: self.k, winding: n, found: 0 });
            }
        }
        if depth >= MAX_DEPTH {
            return Err(Error::CountMismatch { mode: self.k, winding: n, found: 0 });
        }
        let mut last_err = None;
        for off in SPLIT_OFFSETS {
            let xm = r.x0 + (0.5 + off) * (r.x1 - r.x0);
            let ym = r.y0 + (0.5 - off) * (r.y1 - r.y0);
            let kids = [
                Rect { x0: r.x0, x1: xm, y0: r.y0, y1: ym },
                Rect { x0: xm, x1: r.x1, y0: r.y0, y1: ym },
                Rect { x0: r.x0, x1: xm, y0: ym, y1: r.y1 },
                Rect { x0: xm, x1: r.x1, y0: ym, y1: r.y1 },
            ];
            let mut ws = [0i64; 4];
            let mut failed = false;
            for (i, kid) in kids.iter().enumerate() {
                if self.pruned(kid) {
                    continue;
                }
                match self.winding(kid) {
                    Ok(w) => ws[i] = w,
                    Err(e @ Error::ContourThroughZero { .. }) => {
                        last_err = Some(e);
                        failed = true;
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
            if failed {
                continue;
            }
            for (kid, w) in kids.iter().zip(ws) {
                self.search(*kid, w, depth + 1, out)?;
            }
            return Ok(());
        }
        Err(last_err.unwrap())
    }
}

fn zero_function(model: Model, fun: &Funnel, k: u32) -> Result<impl Fn(C) -> Result<LogValue>> {
    let r = match model {
        Model::TruncatedFunnel if fun.r0 > 0.0 => fun.r0,
        Model::ExtendedFunnel if fun.r0 != 0.0 => -fun.r0.abs(),
        _ => return Err(Error::Domain(format!("no boundary zeros to search for {model:?} with r0 = {}", fun.r0))),
    };
    let omega = fun.omega;
    Ok(move |s: C| boundary_function(k, omega, s, r))
}

/// All zeros of the mode-k boundary function in the region, each with the
/// winding number of its isolating box as multiplicity.
pub fn find_mode_zeros(model: Model, fun: &Funnel, k: u32, region: &SearchRegion) -> Result<Vec<ResonanceEntry>> {
    if !(region.re_min < region.re_max && region.im_min < region.im_max && region.grid_step > 0.0) {
        return Err(Error::Domain(format!("degenerate search region {region:?}")));
    }
    let f = zero_function(model, fun, k)?;
    let mut searcher = Searcher { f, k, step: region.grid_step, disk: region.disk, values: HashMap::new(), edges: HashMap::new() };
    let mut last_err = None;
    for attempt in 0..6 {
        // nudge the outer contour outwards on retries
        let d = attempt as f64 * region.grid_step / 10.0;
        let root = Rect { x0: region.re_min - d, x1: region.re_max + d * 0.7, y0: region.im_min - d * 0.3, y1: region.im_max + d };
        let n = match searcher.winding(&root) {
            Ok(n) => n,
            Err(e @ Error::ContourThroughZero { .. }) => {
                last_err = Some(e);
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut out = Vec::new();
        searcher.search(root, n, 0, &mut out)?;
        let mut out = dedupe(out, 1e-8);
        out.retain(|e| e.s.re >= region.re_min && e.s.re <= region.re_max && e.s.im >= region.im_min && e.s.im <= region.im_max);
        sort_entries(&mut out);
        return Ok(out);
    }
    Err(last_err.unwrap())
}

fn dedupe(mut v: Vec<ResonanceEntry>, tol: f64) -> Vec<ResonanceEntry> {
    v.sort_by(|a, b| a.s.re.total_cmp(&b.s.re).then(a.s.im.total_cmp(&b.s.im)));
    let mut out: Vec<ResonanceEntry> = Vec::with_capacity(v.len());
    for e in v {
        if let Some(prev) = out.iter_mut().rev().take_while(|p| e.s.re - p.s.re <= tol).find(|p| (p.s - e.s).norm() <= tol) {
            prev.multiplicity = prev.multiplicity.max(e.multiplicity);
            continue;
        }
        out.push(e);
    }
    out
}

/// Number of modes searched for a given radius.
pub fn mode_cutoff(fun: &Funnel, radius: f64) -> Result<u32> {
    let rho = rho_min(fun.omega, fun.r0.abs())?;
    Ok((radius / rho).ceil() as u32)
}

/// Resonances of a truncated or extended funnel with |s − 1/2| ≤ radius.
///
/// Modes k ≥ 1 stand for the pair ±k, so their zeros carry twice the
/// winding number.
pub fn resonance_set(model: Model, fun: &Funnel, radius: f64) -> Result<ResonanceSet> {
    resonance_set_with_cutoff(model, fun, radius, None)
}

/// As [`resonance_set`], with an explicit highest mode.
pub fn resonance_set_with_cutoff(model: Model, fun: &Funnel, radius: f64, k_max: Option<u32>) -> Result<ResonanceSet> {
    if !(radius > 0.0 && radius <= 60.0) {
        return Err(Error::Domain(format!("resonance radius must lie in (0, 60], got {radius}")));
    }
    let k_max = match k_max {
        Some(k) => k,
        None => mode_cutoff(fun, radius)?,
    };
    let region = SearchRegion::for_radius(radius);
    let per_mode: Vec<Result<Vec<ResonanceEntry>>> =
        (0..=k_max).into_par_iter().map(|k| find_mode_zeros(model, fun, k, &region)).collect();
    let mut entries = Vec::new();
    for (k, zs) in per_mode.into_iter().enumerate() {
        for mut e in zs? {
            let tol = 1e-9 * (1.0 + e.s.norm());
            if e.s.im < -tol || (e.s - 0.5).norm() > radius {
                continue;
            }
            if k > 0 {
                e.multiplicity *= 2;
            }
            if e.s.im.abs() <= tol {
                e.s.im = 0.0;
                entries.push(e);
            } else {
                entries.push(e);
                entries.push(ResonanceEntry { s: e.s.conj(), ..e });
            }
        }
    }
    let entries = merge_across_modes(entries, 1e-8);
    Ok(ResonanceSet { entries, radius })
}

/// Zeros of different modes closer than `tol` are merged into the lower
/// mode with summed multiplicity and flagged.
fn merge_across_modes(mut v: Vec<ResonanceEntry>, tol: f64) -> Vec<ResonanceEntry> {
    v.sort_by(|a, b| a.s.re.total_cmp(&b.s.re).then(a.s.im.total_cmp(&b.s.im)).then(a.mode.cmp(&b.mode)));
    let mut out: Vec<ResonanceEntry> = Vec::with_capacity(v.len());
    for e in v {
        if let Some(prev) = out.iter_mut().rev().take_while(|p| e.s.re - p.s.re <= tol).find(|p| (p.s - e.s).norm() <= tol) {
            prev.multiplicity += e.multiplicity;
            prev.mode = prev.mode.min(e.mode);
            prev.coincident = true;
            continue;
        }
        out.push(e);
    }
    sort_entries(&mut out);
    out
}

/// N(t) and Ñ(a) of a resonance set, valid up to its radius.
#[derive(Debug, Clone)]
pub struct CountingFunction {
    /// (|ζ − 1/2|, multiplicity), sorted.
    jumps: Vec<(f64, u64)>,
    radius: f64,
}

pub fn counting_functions(set: &ResonanceSet) -> CountingFunction {
    let mut jumps: Vec<(f64, u64)> = set.entries.iter().map(|e| ((e.s - 0.5).norm(), e.multiplicity as u64)).collect();
    jumps.sort_by(|a, b| a.0.total_cmp(&b.0));
    CountingFunction { jumps, radius: set.radius }
}

impl CountingFunction {
    fn check(&self, t: f64) -> Result<()> {
        if !(t >= 0.0 && t <= self.radius * (1.0 + 1e-12)) {
            return Err(Error::Domain(format!("counting query {t} outside [0, {}]", self.radius)));
        }
        Ok(())
    }

    /// Σ multiplicities with |ζ − 1/2| ≤ t.
    pub fn n(&self, t: f64) -> Result<u64> {
        self.check(t)?;
        let end = self.jumps.partition_point(|j| j.0 <= t);
        Ok(self.jumps[..end].iter().map(|j| j.1).sum())
    }

    /// Ñ(a) = ∫₀^a 2N(t)/t dt, integrated exactly over the staircase:
    /// each jump at d contributes 2m·log(a/d). This is the normalization
    /// for which Ñ(a) ~ Ba² exactly when N(t) ~ Bt².
    pub fn n_tilde(&self, a: f64) -> Result<f64> {
        self.check(a)?;
        if a == 0.0 {
            return Ok(0.0);
        }
        let end = self.jumps.partition_point(|j| j.0 <= a);
        Ok(self.jumps[..end].iter().map(|&(d, m)| 2.0 * m as f64 * (a / d).ln()).sum())
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn lattices() {
        let f = background_lattice(Background::StandardFunnel { ell: 2.0 * PI }, 1.0).unwrap();
        assert!(f.entries.is_empty());
        let p = background_lattice(Background::HyperbolicPlane, 10.0).unwrap().counting();
        for t in [1.0, 3.7, 9.5, 10.0] {
            let want = ((t - 0.5f64).floor() as u64 + 1).pow(2);
            assert_eq!(p.n(t).unwrap(), want);
        }
        assert!(background_lattice(Background::HyperbolicPlane, 0.5).is_err());
    }

    #[test]
    fn counting_staircase() {
        let empty = ResonanceSet { entries: vec![], radius: 5.0 }.counting();
        assert_eq!(empty.n(5.0).unwrap(), 0);
        assert_eq!(empty.n_tilde(5.0).unwrap(), 0.0);
        let one = ResonanceSet { entries: vec![ResonanceEntry::new(c(-0.5, 0.0), 1, 0)], radius: 5.0 }.counting();
        assert!((one.n_tilde(4.0).unwrap() - 2.0 * 4f64.ln()).abs() < 1e-15);
        assert_eq!(one.n(0.99).unwrap(), 0);
        assert!(one.n(6.0).is_err());
    }

    #[test]
    fn truncated_mode_seven() {
        let fun = Funnel::new(2.0 * PI, 1.0).unwrap();
        let region = SearchRegion { re_min: -8.0, re_max: 0.4, im_min: 0.1, im_max: 4.0, grid_step: 0.25, disk: None };
        let z = find_mode_zeros(Model::TruncatedFunnel, &fun, 7, &region).unwrap();
        let want = [c(-7.347, 0.681), c(-5.694, 1.509), c(-3.924, 2.361), c(-1.906, 3.309)];
        assert_eq!(z.len(), want.len(), "{z:?}");
        for w in want {
            assert!(z.iter().any(|e| (e.s - w).norm() < 2e-3 && e.multiplicity == 1), "{w} {z:?}");
        }
    }

    #[test]
    fn extended_low_modes() {
        let fun = Funnel::new(2.0 * PI, -1.0).unwrap();
        let region = SearchRegion { re_min: -4.0, re_max: 0.73, im_min: 0.2, im_max: 3.0, grid_step: 0.25, disk: None };
        let z = find_mode_zeros(Model::ExtendedFunnel, &fun, 0, &region).unwrap();
        let want = [c(-0.468293, 0.874813), c(-1.89132, 1.7596), c(-3.31418, 2.65955)];
        assert_eq!(z.len(), 3, "{z:?}");
        for (e, w) in z.iter().zip(want) {
            assert!((e.s - w).norm() < 1e-5, "{e:?} {w}");
        }
    }

    #[test]
    fn real_zeros_and_conjugates() {
        let fun = Funnel::new(2.0 * PI, 1.0).unwrap();
        let set = resonance_set_with_cutoff(Model::TruncatedFunnel, &fun, 5.5, Some(2)).unwrap();
        for e in &set.entries {
            assert!(e.s.re < 0.5);
            if e.s.im != 0.0 {
                assert!(set.entries.iter().any(|f| f.s == e.s.conj() && f.multiplicity == e.multiplicity));
            }
        }
        // k = 0 real zeros next to −1/2, ..., −9/2
        let reals: Vec<_> = set.entries.iter().filter(|e| e.mode == 0 && e.s.im == 0.0).collect();
        assert_eq!(reals.len(), 5, "{reals:?}");
        assert!(reals.iter().any(|e| e.near_half_integer));
    }
}
