//! Double-double arithmetic.
//!
//! A value is the unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`, giving
//! roughly 106 bits of precision. Only the four operations and `sin`/`cos`
//! of `2πt` are implemented.
//!
//! Exponential functions near the walls of the fundamental domain are sums
//! with heavy cancellation, and high-order stencils divide by `h^{2k}`; both
//! are evaluated in this precision.

use core::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

const TAU: DoubleDouble = DoubleDouble {
    hi: core::f64::consts::TAU,
    lo: 2.449_293_598_294_706_4e-16,
};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, libm::fma(a, b, -p))
}

impl DoubleDouble {
    pub const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };
    pub const ONE: DoubleDouble = DoubleDouble { hi: 1.0, lo: 0.0 };

    #[inline]
    pub const fn from_f64(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Exact product of two doubles.
    #[inline]
    pub fn product(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        DoubleDouble { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }

    #[inline]
    pub fn div_f64(self, b: f64) -> Self {
        self / DoubleDouble::from_f64(b)
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Nearest integer, ties away from zero.
    pub fn round(self) -> Self {
        let hi = libm::round(self.hi);
        if hi == self.hi {
            // hi is already integral; the fractional part lives in lo
            let lo = libm::round(self.lo);
            let (hi, lo) = quick_two_sum(hi, lo);
            DoubleDouble { hi, lo }
        } else if libm::fabs(hi - self.hi) == 0.5 && self.lo != 0.0 {
            // exact tie in hi broken by lo
            let hi = if (self.lo > 0.0) == (hi > self.hi) {
                hi
            } else if hi > self.hi {
                hi - 1.0
            } else {
                hi + 1.0
            };
            DoubleDouble { hi, lo: 0.0 }
        } else {
            DoubleDouble { hi, lo: 0.0 }
        }
    }

    pub fn powi(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = DoubleDouble::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// `(sin 2πt, cos 2πt)`.
    pub fn sincos_turns(t: DoubleDouble) -> (DoubleDouble, DoubleDouble) {
        // reduce to |r| ≤ 1/8 turn; both subtractions are exact
        let r = t - t.round();
        let quadrant = libm::round(4.0 * r.hi);
        let r = r - DoubleDouble::from_f64(quadrant * 0.25);
        let theta = TAU * r;
        let (s, c) = sincos_small(theta);
        match (quadrant as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }
}

/// Taylor series for `|θ| ≤ π/4`.
fn sincos_small(theta: DoubleDouble) -> (DoubleDouble, DoubleDouble) {
    let x2 = theta * theta;
    let mut sin = theta;
    let mut cos = DoubleDouble::ONE;
    let mut s_term = theta;
    let mut c_term = DoubleDouble::ONE;
    for k in 1..=16u32 {
        let k = f64::from(k);
        s_term = -(s_term * x2).div_f64((2.0 * k) * (2.0 * k + 1.0));
        c_term = -(c_term * x2).div_f64((2.0 * k - 1.0) * (2.0 * k));
        sin = sin + s_term;
        cos = cos + c_term;
        if libm::fabs(s_term.hi) < 1e-34 && libm::fabs(c_term.hi) < 1e-34 {
            break;
        }
    }
    (sin, cos)
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        DoubleDouble::from_f64(x)
    }
}

impl Neg for DoubleDouble {
    type Output = DoubleDouble;
    #[inline]
    fn neg(self) -> Self {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DoubleDouble {
    type Output = DoubleDouble;
    #[inline]
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        DoubleDouble { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = DoubleDouble;
    #[inline]
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = DoubleDouble;
    #[inline]
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = DoubleDouble;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        DoubleDouble { hi: q1, lo: q2 } + DoubleDouble::from_f64(q3)
    }
}

/// Complex number with double-double parts.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexDD {
    pub re: DoubleDouble,
    pub im: DoubleDouble,
}

impl ComplexDD {
    pub const ZERO: ComplexDD = ComplexDD {
        re: DoubleDouble::ZERO,
        im: DoubleDouble::ZERO,
    };

    pub fn new(re: DoubleDouble, im: DoubleDouble) -> Self {
        ComplexDD { re, im }
    }

    /// `e^{2πit}`.
    pub fn cis_turns(t: DoubleDouble) -> Self {
        let (s, c) = DoubleDouble::sincos_turns(t);
        ComplexDD { re: c, im: s }
    }

    pub fn scale(self, k: DoubleDouble) -> Self {
        ComplexDD {
            re: self.re * k,
            im: self.im * k,
        }
    }

    pub fn to_c64(self) -> crate::C64 {
        crate::C64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn conj(self) -> Self {
        ComplexDD {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn norm_sqr(self) -> DoubleDouble {
        self.re * self.re + self.im * self.im
    }

    pub fn is_zero(self) -> bool {
        self.re.hi == 0.0 && self.im.hi == 0.0
    }

    /// `1/z`; infinite components for `z = 0`.
    pub fn inv(self) -> Self {
        let d = self.norm_sqr();
        ComplexDD {
            re: self.re / d,
            im: -self.im / d,
        }
    }
}

impl Neg for ComplexDD {
    type Output = ComplexDD;
    fn neg(self) -> Self {
        ComplexDD {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl From<crate::C64> for ComplexDD {
    fn from(z: crate::C64) -> Self {
        ComplexDD {
            re: z.re.into(),
            im: z.im.into(),
        }
    }
}

impl Add for ComplexDD {
    type Output = ComplexDD;
    fn add(self, b: Self) -> Self {
        ComplexDD {
            re: self.re + b.re,
            im: self.im + b.im,
        }
    }
}

impl Sub for ComplexDD {
    type Output = ComplexDD;
    fn sub(self, b: Self) -> Self {
        ComplexDD {
            re: self.re - b.re,
            im: self.im - b.im,
        }
    }
}

impl Mul for ComplexDD {
    type Output = ComplexDD;
    fn mul(self, b: Self) -> Self {
        ComplexDD {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}
