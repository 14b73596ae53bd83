//! Adaptive Gauss–Kronrod (7/15) quadrature on finite intervals.

use crate::error::{Error, Result};
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Integral with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

impl std::ops::Add for Estimate {
    type Output = Estimate;
    fn add(self, o: Estimate) -> Estimate {
        Estimate { value: self.value + o.value, error: self.error + o.error }
    }
}

impl Estimate {
    pub const ZERO: Estimate = Estimate { value: 0.0, error: 0.0 };
}

/// One 15-point Kronrod rule with the embedded 7-point Gauss error estimate.
pub fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Estimate {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    Estimate { value: k * h, error: ((k - g) * h).abs() }
}

struct Piece {
    a: f64,
    b: f64,
    est: Estimate,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.est.error == o.est.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.est.error.total_cmp(&o.est.error)
    }
}

/// Globally adaptive bisection until the summed error meets
/// max(abs_tol, rel_tol·|I|).
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64, max_pieces: usize) -> Result<Estimate> {
    if a == b {
        return Ok(Estimate::ZERO);
    }
    let first = gk15(&mut f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, est: first });
    let mut total = first;
    while total.error > abs_tol.max(rel_tol * total.value.abs()) {
        if heap.len() >= max_pieces {
            return Err(Error::Quadrature { estimate: total.value, requested: abs_tol.max(rel_tol * total.value.abs()), achieved: total.error });
        }
        let p = heap.pop().unwrap();
        let m = 0.5 * (p.a + p.b);
        if m <= p.a || m >= p.b {
            return Err(Error::Quadrature { estimate: total.value, requested: abs_tol, achieved: total.error });
        }
        let l = gk15(&mut f, p.a, m);
        let r = gk15(&mut f, m, p.b);
        total.value += l.value + r.value - p.est.value;
        total.error += l.error + r.error - p.est.error;
        heap.push(Piece { a: p.a, b: m, est: l });
        heap.push(Piece { a: m, b: p.b, est: r });
    }
    // resum to shed accumulated rounding from the running updates
    let mut pieces: Vec<Piece> = heap.into_vec();
    pieces.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = pieces.iter().map(|p| p.est.value).sum();
    let error = pieces.iter().map(|p| p.est.error).sum();
    Ok(Estimate { value, error })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let e = integrate(|x| x.powi(9) - 3.0 * x, 0.0, 2.0, 1e-14, 1e-14, 10).unwrap();
        assert!((e.value - (102.4 - 6.0)).abs() < 1e-12);
    }

    #[test]
    fn log_endpoint_singularity() {
        let e = integrate(|x: f64| x.ln(), 0.0, 1.0, 1e-12, 1e-12, 500).unwrap();
        assert!((e.value + 1.0).abs() < 1e-11, "{e:?}");
    }

    #[test]
    fn kink() {
        let e = integrate(|x: f64| (x - 0.3).max(0.0), 0.0, 1.0, 1e-13, 1e-13, 500).unwrap();
        assert!((e.value - 0.245).abs() < 1e-12);
    }
}
