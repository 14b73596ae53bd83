use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Radius below which the Maclaurin series (in double-double) is used.
pub const MACLAURIN_RADIUS: f64 = 8.0;

// Ai(0) and -Ai'(0) as unevaluated sums hi + lo
const C1: Dd = Dd { hi: 0.355_028_053_887_817_2, lo: 2.052_336_324_362_12e-17 };
const C2: Dd = Dd { hi: 0.258_819_403_792_806_8, lo: -2.522_243_111_610_832e-17 };

#[derive(Clone, Copy, Debug)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

impl Dd {
    fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = two_sum(s, e + t);
        let (hi, lo) = two_sum(s, e + f);
        Dd { hi, lo }
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        let e = e + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = two_sum(p, e);
        Dd { hi, lo }
    }

    fn div_f64(self, d: f64) -> Dd {
        let q1 = self.hi / d;
        let p = q1 * d;
        let e = q1.mul_add(d, -p);
        let r = (self.hi - p - e + self.lo) / d;
        let (hi, lo) = two_sum(q1, r);
        Dd { hi, lo }
    }
}

#[derive(Clone, Copy, Debug)]
struct Cdd {
    re: Dd,
    im: Dd,
}

impl Cdd {
    fn from(z: Complex64) -> Cdd {
        Cdd { re: Dd::from(z.re), im: Dd::from(z.im) }
    }
    fn add(self, o: Cdd) -> Cdd {
        Cdd { re: self.re.add(o.re), im: self.im.add(o.im) }
    }
    fn mul(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re.mul(o.re).add(self.im.mul(o.im).neg()),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }
    fn scale(self, d: Dd) -> Cdd {
        Cdd { re: self.re.mul(d), im: self.im.mul(d) }
    }
    fn div_f64(self, d: f64) -> Cdd {
        Cdd { re: self.re.div_f64(d), im: self.im.div_f64(d) }
    }
    fn norm_hi(self) -> f64 {
        self.re.hi.hypot(self.im.hi)
    }
    fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.hi + self.re.lo, self.im.hi + self.im.lo)
    }
}

/// Ai(z) = c1 f(z) - c2 g(z); the two series grow like Bi, so the
/// subtraction is carried out in double-double.
fn maclaurin(z: Complex64) -> Complex64 {
    let zd = Cdd::from(z);
    let z3 = zd.mul(zd).mul(zd);
    let mut f = Cdd::from(Complex64::new(1.0, 0.0));
    let mut g = zd;
    let mut tf = f;
    let mut tg = g;
    for k in 0..200 {
        let k3 = 3.0 * k as f64;
        tf = tf.mul(z3).div_f64((k3 + 2.0) * (k3 + 3.0));
        tg = tg.mul(z3).div_f64((k3 + 3.0) * (k3 + 4.0));
        f = f.add(tf);
        g = g.add(tg);
        if tf.norm_hi() < 1e-34 * f.norm_hi().max(1e-300) && tg.norm_hi() < 1e-34 * g.norm_hi().max(1e-300) {
            break;
        }
    }
    f.scale(C1).add(g.scale(C2.neg())).to_c64()
}

/// Leading-sector asymptotic series, |arg z| ≤ 2π/3.
fn asymptotic(z: Complex64) -> Complex64 {
    let zeta = z.powf(1.5) * (2.0 / 3.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut last = f64::INFINITY;
    for k in 1..80 {
        let kf = k as f64;
        // u_k / u_{k-1}
        let ratio = (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        let next = -term * ratio / zeta;
        let n = next.norm();
        if n > last {
            break;
        }
        term = next;
        sum += term;
        last = n;
        if n < 1e-17 * sum.norm() {
            break;
        }
    }
    (-zeta).exp() * sum / (2.0 * PI.sqrt() * z.powf(0.25))
}

/// Airy function Ai(z).
pub fn airy_ai(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("airy_ai of non-finite {z}")));
    }
    let v = if z.norm() <= MACLAURIN_RADIUS {
        maclaurin(z)
    } else if z.arg().abs() <= 2.0 * PI / 3.0 {
        asymptotic(z)
    } else {
        // Ai(z) = -ω Ai(ωz) - ω̄ Ai(ω̄z), ω = e^{2πi/3}
        let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        -w * asymptotic(z * w) - w.conj() * asymptotic(z * w.conj())
    };
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::Overflow("airy_ai"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_zero() {
        let v = airy_ai(Complex64::new(0.0, 0.0)).unwrap();
        assert!((v.re - 0.355_028_053_887_817_2).abs() < 1e-16);
    }

    #[test]
    fn methods_agree_on_radius() {
        let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        for &t in &[0.0, 0.7, 1.9, 2.5, 3.1] {
            let z = Complex64::from_polar(MACLAURIN_RADIUS, t);
            let a = maclaurin(z);
            let b = if t <= 2.0 * PI / 3.0 {
                asymptotic(z)
            } else {
                -w * asymptotic(z * w) - w.conj() * asymptotic(z * w.conj())
            };
            assert!((a - b).norm() < 1e-12 * a.norm(), "{t}: {a} {b}");
        }
    }

    #[test]
    fn reference_values() {
        // mpmath airyai
        let v = airy_ai(Complex64::new(1.0, 0.0)).unwrap();
        assert!((v.re - 0.135_292_416_312_881_4).abs() < 1e-16);
        let v = airy_ai(Complex64::new(8.0, 0.0)).unwrap();
        assert!((v.re / 4.692_207_616_099_23e-8 - 1.0).abs() < 1e-12);
        let v = airy_ai(Complex64::from_polar(12.0, 2.5)).unwrap();
        let r = Complex64::new(-1_004_286_355.230_897_6, 541_970_216.496_557_76);
        assert!((v - r).norm() < 1e-12 * r.norm(), "{v}");
    }
}
