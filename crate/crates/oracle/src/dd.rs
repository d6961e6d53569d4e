//! Double-double floats (`hi + lo`, about 32 significant digits) for running
//! the generic simulator below the f64 round-off floor.
//!
//! Arithmetic, `sqrt` and `exp` carry full double-double precision. Other
//! transcendental functions are only f64-accurate; that is enough where they
//! just shape an input signal.

use std::cmp::Ordering;
use std::fmt;
use std::num::FpCategory;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_traits::{Float, FloatConst, Num, NumCast, One, ToPrimitive, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

const LN2: DoubleDouble = DoubleDouble { hi: std::f64::consts::LN_2, lo: 2.319_046_813_846_299_6e-17 };

impl DoubleDouble {
    pub const fn from_f64(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        let (hi, lo) = quick_two_sum(hi, lo);
        DoubleDouble { hi, lo }
    }

    fn ldexp(self, e: i32) -> Self {
        let f = 2f64.powi(e);
        DoubleDouble { hi: self.hi * f, lo: self.lo * f }
    }

    fn exp_dd(self) -> Self {
        if self.hi > 709.0 {
            return Self::infinity();
        }
        if self.hi < -745.0 {
            return Self::zero();
        }
        let k = (self.hi / LN2.hi).round();
        let r = (self - LN2 * Self::from_f64(k)).ldexp(-10);
        // Taylor series of exp(r) - 1 for |r| < 2^-11.
        let mut term = r;
        let mut sum = r;
        for n in 2..=12 {
            term = term * r / Self::from_f64(n as f64);
            sum = sum + term;
        }
        // (1 + e)^2 - 1 = e (2 + e), ten times.
        for _ in 0..10 {
            sum = sum * (sum + Self::from_f64(2.0));
        }
        (sum + Self::one()).ldexp(k as i32)
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == 0.0 {
            write!(f, "{}", self.hi)
        } else {
            write!(f, "{}{:+e}", self.hi, self.lo)
        }
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            o => Some(o),
        }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        Self::renorm(s, e + f)
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        Self::renorm(p, e + (self.hi * b.lo + self.lo * b.hi))
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b * Self::from_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Self::from_f64(q2);
        let q3 = r.hi / b.hi;
        Self::renorm(q1, q2) + Self::from_f64(q3)
    }
}

impl Rem for DoubleDouble {
    type Output = Self;
    fn rem(self, b: Self) -> Self {
        self - b * (self / b).trunc()
    }
}

impl Zero for DoubleDouble {
    fn zero() -> Self {
        Self::from_f64(0.0)
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        Self::from_f64(1.0)
    }
}

impl Num for DoubleDouble {
    type FromStrRadixErr = <f64 as Num>::FromStrRadixErr;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        f64::from_str_radix(s, radix).map(Self::from_f64)
    }
}

impl ToPrimitive for DoubleDouble {
    fn to_i64(&self) -> Option<i64> {
        let t = self.trunc();
        t.hi.to_i64().and_then(|h| h.checked_add(t.lo.to_i64()?))
    }
    fn to_u64(&self) -> Option<u64> {
        let t = self.trunc();
        t.hi.to_i128().and_then(|h| u64::try_from(h + t.lo.to_i128()?).ok())
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.hi + self.lo)
    }
}

impl NumCast for DoubleDouble {
    fn from<T: ToPrimitive>(n: T) -> Option<Self> {
        if let Some(i) = n.to_i64() {
            if i.unsigned_abs() > 1 << 53 {
                let hi = i as f64;
                return Some(Self::renorm(hi, (i - hi as i64) as f64));
            }
        }
        n.to_f64().map(Self::from_f64)
    }
}

impl FloatConst for DoubleDouble {
    fn PI() -> Self {
        DoubleDouble { hi: std::f64::consts::PI, lo: 1.224_646_799_147_353_2e-16 }
    }
    fn E() -> Self {
        Self::one().exp_dd()
    }
    fn LN_2() -> Self {
        LN2
    }
    fn TAU() -> Self {
        Self::PI() + Self::PI()
    }
    fn FRAC_PI_2() -> Self {
        Self::PI().ldexp(-1)
    }
    fn FRAC_PI_3() -> Self {
        Self::PI() / Self::from_f64(3.0)
    }
    fn FRAC_PI_4() -> Self {
        Self::PI().ldexp(-2)
    }
    fn FRAC_PI_6() -> Self {
        Self::PI() / Self::from_f64(6.0)
    }
    fn FRAC_PI_8() -> Self {
        Self::PI().ldexp(-3)
    }
    fn FRAC_1_PI() -> Self {
        Self::one() / Self::PI()
    }
    fn FRAC_2_PI() -> Self {
        Self::from_f64(2.0) / Self::PI()
    }
    fn FRAC_2_SQRT_PI() -> Self {
        Self::from_f64(2.0) / Self::PI().sqrt()
    }
    fn SQRT_2() -> Self {
        Self::from_f64(2.0).sqrt()
    }
    fn FRAC_1_SQRT_2() -> Self {
        Self::SQRT_2().ldexp(-1)
    }
    fn LN_10() -> Self {
        Self::from_f64(10.0).ln()
    }
    fn LOG2_E() -> Self {
        Self::one() / LN2
    }
    fn LOG10_E() -> Self {
        Self::one() / Self::LN_10()
    }
    fn LOG2_10() -> Self {
        Self::LN_10() / LN2
    }
    fn LOG10_2() -> Self {
        LN2 / Self::LN_10()
    }
}

/// f64-accurate fallback for functions the simulator never relies on.
fn lift(f: impl Fn(f64) -> f64, x: DoubleDouble) -> DoubleDouble {
    DoubleDouble::from_f64(f(x.hi + x.lo))
}

impl Float for DoubleDouble {
    fn nan() -> Self {
        Self::from_f64(f64::NAN)
    }
    fn infinity() -> Self {
        Self::from_f64(f64::INFINITY)
    }
    fn neg_infinity() -> Self {
        Self::from_f64(f64::NEG_INFINITY)
    }
    fn neg_zero() -> Self {
        Self::from_f64(-0.0)
    }
    fn min_value() -> Self {
        Self::from_f64(f64::MIN)
    }
    fn min_positive_value() -> Self {
        Self::from_f64(f64::MIN_POSITIVE)
    }
    fn max_value() -> Self {
        Self::from_f64(f64::MAX)
    }
    fn is_nan(self) -> bool {
        self.hi.is_nan()
    }
    fn is_infinite(self) -> bool {
        self.hi.is_infinite()
    }
    fn is_finite(self) -> bool {
        self.hi.is_finite()
    }
    fn is_normal(self) -> bool {
        self.hi.is_normal()
    }
    fn classify(self) -> FpCategory {
        self.hi.classify()
    }
    fn floor(self) -> Self {
        let h = self.hi.floor();
        if h == self.hi {
            Self::renorm(h, self.lo.floor())
        } else {
            Self::from_f64(h)
        }
    }
    fn ceil(self) -> Self {
        -(-self).floor()
    }
    fn round(self) -> Self {
        (self + Self::from_f64(0.5)).floor()
    }
    fn trunc(self) -> Self {
        if self.hi < 0.0 {
            self.ceil()
        } else {
            self.floor()
        }
    }
    fn fract(self) -> Self {
        self - self.trunc()
    }
    fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }
    fn signum(self) -> Self {
        Self::from_f64(self.hi.signum())
    }
    fn is_sign_positive(self) -> bool {
        self.hi.is_sign_positive()
    }
    fn is_sign_negative(self) -> bool {
        self.hi.is_sign_negative()
    }
    fn mul_add(self, a: Self, b: Self) -> Self {
        self * a + b
    }
    fn recip(self) -> Self {
        Self::one() / self
    }
    fn powi(self, n: i32) -> Self {
        let mut base = if n < 0 { self.recip() } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
    fn powf(self, n: Self) -> Self {
        (n * self.ln()).exp()
    }
    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Self::from_f64(self.hi.sqrt());
        }
        let y = Self::from_f64(self.hi.sqrt());
        y + (self - y * y) / (y + y)
    }
    fn exp(self) -> Self {
        self.exp_dd()
    }
    fn exp2(self) -> Self {
        (self * LN2).exp()
    }
    fn ln(self) -> Self {
        // One Newton step on exp(y) = x.
        let y = Self::from_f64(self.hi.ln());
        y + self * (-y).exp() - Self::one()
    }
    fn log(self, base: Self) -> Self {
        self.ln() / base.ln()
    }
    fn log2(self) -> Self {
        self.ln() / LN2
    }
    fn log10(self) -> Self {
        self.ln() / Self::LN_10()
    }
    fn max(self, other: Self) -> Self {
        if self.is_nan() || other > self {
            other
        } else {
            self
        }
    }
    fn min(self, other: Self) -> Self {
        if self.is_nan() || other < self {
            other
        } else {
            self
        }
    }
    fn abs_sub(self, other: Self) -> Self {
        if self > other {
            self - other
        } else {
            Self::zero()
        }
    }
    fn cbrt(self) -> Self {
        lift(f64::cbrt, self)
    }
    fn hypot(self, other: Self) -> Self {
        (self * self + other * other).sqrt()
    }
    fn sin(self) -> Self {
        lift(f64::sin, self)
    }
    fn cos(self) -> Self {
        lift(f64::cos, self)
    }
    fn tan(self) -> Self {
        lift(f64::tan, self)
    }
    fn asin(self) -> Self {
        lift(f64::asin, self)
    }
    fn acos(self) -> Self {
        lift(f64::acos, self)
    }
    fn atan(self) -> Self {
        lift(f64::atan, self)
    }
    fn atan2(self, other: Self) -> Self {
        Self::from_f64((self.hi + self.lo).atan2(other.hi + other.lo))
    }
    fn sin_cos(self) -> (Self, Self) {
        (self.sin(), self.cos())
    }
    fn exp_m1(self) -> Self {
        self.exp() - Self::one()
    }
    fn ln_1p(self) -> Self {
        (self + Self::one()).ln()
    }
    fn sinh(self) -> Self {
        (self.exp() - (-self).exp()).ldexp(-1)
    }
    fn cosh(self) -> Self {
        (self.exp() + (-self).exp()).ldexp(-1)
    }
    fn tanh(self) -> Self {
        lift(f64::tanh, self)
    }
    fn asinh(self) -> Self {
        lift(f64::asinh, self)
    }
    fn acosh(self) -> Self {
        lift(f64::acosh, self)
    }
    fn atanh(self) -> Self {
        lift(f64::atanh, self)
    }
    fn integer_decode(self) -> (u64, i16, i8) {
        self.hi.integer_decode()
    }
}
