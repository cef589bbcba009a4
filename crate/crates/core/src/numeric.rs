//! Arbitrary-precision complex numbers over MPFR floats.

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Smallest precision (in bits) a [`BigComplex`] is created with.
pub const MIN_PRECISION: u32 = 64;

/// A complex number with MPFR real and imaginary parts. Binary operations
/// produce results at the larger of the two operand precisions.
#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    re: Float,
    im: Float,
}

impl BigComplex {
    pub fn zero(prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        BigComplex { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(prec, 1.0, 0.0)
    }

    /// `i`
    pub fn i(prec: u32) -> Self {
        Self::from_f64(prec, 0.0, 1.0)
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        let prec = prec.max(MIN_PRECISION);
        BigComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_real(re: Float) -> Self {
        let prec = re.prec().max(MIN_PRECISION);
        BigComplex { re: Float::with_val(prec, re), im: Float::new(prec) }
    }

    pub fn from_parts(re: Float, im: Float) -> Self {
        let prec = re.prec().max(im.prec()).max(MIN_PRECISION);
        BigComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_int(prec: u32, n: &rug::Integer) -> Self {
        let prec = prec.max(MIN_PRECISION);
        BigComplex { re: Float::with_val(prec, n), im: Float::new(prec) }
    }

    /// Parses decimal strings for the real and imaginary parts.
    pub fn parse(prec: u32, re: &str, im: &str) -> Option<Self> {
        let prec = prec.max(MIN_PRECISION);
        let re = Float::parse(re.trim()).ok()?;
        let im = Float::parse(im.trim()).ok()?;
        Some(BigComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) })
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn into_parts(self) -> (Float, Float) {
        (self.re, self.im)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// Copy at a different precision (rounding if lower).
    pub fn with_prec(&self, prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        BigComplex { re: Float::with_val(prec, &self.re), im: Float::with_val(prec, &self.im) }
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|^2`
    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn powu(&self, n: u32) -> Self {
        let mut result = BigComplex::one(self.prec());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            base = base.square();
            n >>= 1;
        }
        result
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        BigComplex {
            re: Float::with_val(self.prec(), &self.re / &n),
            im: -(Float::with_val(self.prec(), &self.im / &n)),
        }
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let r = Float::with_val(p, self.re.exp_ref());
        let (s, c) = Float::with_val(p, &self.im).sin_cos(Float::new(p));
        BigComplex { re: Float::with_val(p, &r * &c), im: Float::with_val(p, &r * &s) }
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        let m = self.abs();
        let mut re = Float::with_val(p, &m + &self.re);
        re /= 2;
        re.sqrt_mut();
        let mut im = Float::with_val(p, &m - &self.re);
        im /= 2;
        im.sqrt_mut();
        if self.im.is_sign_negative() {
            im = -im;
        }
        BigComplex { re, im }
    }

    pub fn mul_real(&self, x: &Float) -> Self {
        let p = self.prec().max(x.prec());
        BigComplex { re: Float::with_val(p, &self.re * x), im: Float::with_val(p, &self.im * x) }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        let p = self.prec();
        BigComplex { re: Float::with_val(p, &self.re * k), im: Float::with_val(p, &self.im * k) }
    }

    pub fn div_real(&self, x: &Float) -> Self {
        let p = self.prec().max(x.prec());
        BigComplex { re: Float::with_val(p, &self.re / x), im: Float::with_val(p, &self.im / x) }
    }

    /// `|self - other|`
    pub fn dist(&self, other: &BigComplex) -> Float {
        (self - other).abs()
    }

    /// Shortest decimal strings that read back to the same binary values.
    pub fn to_decimal_strings(&self) -> (String, String) {
        (float_to_decimal(&self.re), float_to_decimal(&self.im))
    }

    /// Lossy conversion for diagnostics.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// Decimal representation that round-trips at the float's precision.
pub fn float_to_decimal(x: &Float) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, None)
}

/// `pi` at `prec` bits.
pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// `2^e` as a float.
pub fn pow2(prec: u32, e: i32) -> Float {
    Float::with_val(prec, Float::with_val(prec, 2).pow(e))
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_decimal_strings();
        write!(f, "({re}, {im})")
    }
}

impl Add for &BigComplex {
    type Output = BigComplex;
    fn add(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        BigComplex { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }
}

impl Sub for &BigComplex {
    type Output = BigComplex;
    fn sub(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        BigComplex { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }
}

impl Mul for &BigComplex {
    type Output = BigComplex;
    fn mul(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        BigComplex { re, im }
    }
}

impl Div for &BigComplex {
    type Output = BigComplex;
    fn div(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        let n = o.norm_sqr();
        let re = Float::with_val(p, &self.re * &o.re) + Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.im * &o.re) - Float::with_val(p, &self.re * &o.im);
        BigComplex { re: re / &n, im: im / &n }
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { re: -self.re, im: -self.im }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for BigComplex {
            type Output = BigComplex;
            fn $m(self, o: BigComplex) -> BigComplex { (&self).$m(&o) }
        }
        impl $tr<&BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, o: &BigComplex) -> BigComplex { (&self).$m(o) }
        }
        impl $tr<BigComplex> for &BigComplex {
            type Output = BigComplex;
            fn $m(self, o: BigComplex) -> BigComplex { self.$m(&o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&BigComplex> for BigComplex {
    fn add_assign(&mut self, o: &BigComplex) {
        *self = &*self + o;
    }
}

impl SubAssign<&BigComplex> for BigComplex {
    fn sub_assign(&mut self, o: &BigComplex) {
        *self = &*self - o;
    }
}

impl MulAssign<&BigComplex> for BigComplex {
    fn mul_assign(&mut self, o: &BigComplex) {
        *self = &*self * o;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_floor_and_promotion() {
        let a = BigComplex::from_f64(10, 1.0, 2.0);
        assert_eq!(a.prec(), MIN_PRECISION);
        let b = BigComplex::from_f64(300, 0.5, -1.0);
        assert_eq!((&a * &b).prec(), 300);
        assert_eq!((&a + &b).prec(), 300);
    }

    #[test]
    fn exp_of_i_pi_is_minus_one() {
        let p = 256;
        let z = BigComplex::from_parts(Float::new(p), pi(p));
        let e = z.exp();
        let err = e.dist(&BigComplex::from_f64(p, -1.0, 0.0));
        assert!(err < 1e-70);
    }

    #[test]
    fn division_and_sqrt() {
        let p = 200;
        let a = BigComplex::from_f64(p, 3.0, -4.0);
        let b = BigComplex::from_f64(p, 0.25, 2.0);
        let q = &a / &b;
        assert!((&q * &b).dist(&a) < 1e-55);
        let s = a.sqrt();
        assert!(s.square().dist(&a) < 1e-55);
        assert!((a.recip() * &a).dist(&BigComplex::one(p)) < 1e-55);
        assert!(a.powu(5).dist(&(&a * &a * &a * &a * &a)) < 1e-50);
    }

    #[test]
    fn decimal_strings_round_trip() {
        let p = 256;
        let z = BigComplex::from_parts(pi(p), Float::with_val(p, 2).sqrt());
        let (re, im) = z.to_decimal_strings();
        let back = BigComplex::parse(p, &re, &im).unwrap();
        assert_eq!(back, z);
    }
}
