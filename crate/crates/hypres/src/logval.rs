//! Complex numbers carried as logarithms, so that Gamma quotients and mode
//! functions with magnitudes like e^{±500} can be combined without overflow.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::ops::{Div, Mul};

/// `exp(ln)`; an exact zero is encoded by `ln.re == -inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    pub ln: Complex64,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue { ln: Complex64::new(f64::NEG_INFINITY, 0.0) };
    pub const ONE: LogValue = LogValue { ln: Complex64::new(0.0, 0.0) };

    pub fn from_ln(ln: Complex64) -> Self {
        LogValue { ln }
    }

    pub fn new(z: Complex64) -> Self {
        if z.re == 0.0 && z.im == 0.0 {
            Self::ZERO
        } else {
            LogValue { ln: z.ln() }
        }
    }

    pub fn real(x: f64) -> Self {
        Self::new(Complex64::new(x, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.ln.re == f64::NEG_INFINITY
    }

    pub fn is_finite(&self) -> bool {
        self.ln.re < f64::INFINITY && !self.ln.re.is_nan() && self.ln.im.is_finite()
    }

    pub fn value(&self) -> Complex64 {
        if self.is_zero() {
            Complex64::new(0.0, 0.0)
        } else {
            self.ln.exp()
        }
    }

    pub fn ln_abs(&self) -> f64 {
        self.ln.re
    }

    /// Argument reduced to (-π, π].
    pub fn arg(&self) -> f64 {
        wrap_angle(self.ln.im)
    }

    pub fn recip(self) -> Self {
        LogValue { ln: -self.ln }
    }

    pub fn powf(self, p: f64) -> Self {
        if self.is_zero() {
            return self;
        }
        LogValue { ln: self.ln * p }
    }

    pub fn neg(self) -> Self {
        if self.is_zero() {
            return self;
        }
        LogValue { ln: self.ln + Complex64::new(0.0, PI) }
    }

    /// Sum of two values, scaled by the larger magnitude.
    pub fn add(self, other: LogValue) -> LogValue {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (big, small) = if self.ln.re >= other.ln.re { (self, other) } else { (other, self) };
        let w = (small.ln - big.ln).exp();
        let t = ln_1p(w);
        if t.re == f64::NEG_INFINITY {
            return LogValue::ZERO;
        }
        LogValue { ln: big.ln + t }
    }

    pub fn sub(self, other: LogValue) -> LogValue {
        self.add(other.neg())
    }

    /// Rescale to a plain complex number times `exp(shift)`.
    pub fn scaled(&self, shift: f64) -> Complex64 {
        if self.is_zero() {
            Complex64::new(0.0, 0.0)
        } else {
            (self.ln - shift).exp()
        }
    }
}

impl Mul for LogValue {
    type Output = LogValue;
    fn mul(self, rhs: LogValue) -> LogValue {
        if self.is_zero() || rhs.is_zero() {
            return LogValue::ZERO;
        }
        LogValue { ln: self.ln + rhs.ln }
    }
}

impl Div for LogValue {
    type Output = LogValue;
    fn div(self, rhs: LogValue) -> LogValue {
        if self.is_zero() {
            return LogValue::ZERO;
        }
        LogValue { ln: self.ln - rhs.ln }
    }
}

impl Mul<Complex64> for LogValue {
    type Output = LogValue;
    fn mul(self, rhs: Complex64) -> LogValue {
        self * LogValue::new(rhs)
    }
}

pub fn wrap_angle(x: f64) -> f64 {
    if x > -PI && x <= PI {
        return x;
    }
    let t = PI * 2.0;
    let mut y = x.rem_euclid(t);
    if y > PI {
        y -= t;
    }
    y
}

/// log(1 + w) accurate for small |w|.
pub fn ln_1p(w: Complex64) -> Complex64 {
    let re = 0.5 * (2.0 * w.re + w.norm_sqr()).ln_1p();
    let im = w.im.atan2(1.0 + w.re);
    Complex64::new(re, im)
}

/// exp(z) - 1 accurate for small |z|.
pub fn exp_m1(z: Complex64) -> Complex64 {
    let em1 = z.re.exp_m1();
    let s = (0.5 * z.im).sin();
    let re = em1 * z.im.cos() - 2.0 * s * s;
    let im = z.re.exp() * z.im.sin();
    Complex64::new(re, im)
}
