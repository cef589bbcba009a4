use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rug::Float;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::squarefree_decomposition;
use crate::numeric::BigComplex;

/// `(num_rational + num_radical * sqrt(disc)) / den`, stored exactly.
///
/// After construction `den > 0`, `disc` is squarefree and negative, and
/// `gcd(num_rational, num_radical, den) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    num_rational: i64,
    num_radical: i64,
    den: i64,
    disc: i64,
}

impl QuadraticSurd {
    /// Panics if `den == 0` or `disc >= 0`.
    pub fn new(num_rational: i64, num_radical: i64, den: i64, disc: i64) -> Self {
        assert!(den != 0, "surd denominator must be non-zero");
        assert!(disc < 0, "surds here live in imaginary quadratic fields");
        let (f, core) = squarefree_decomposition(disc);
        let (mut x, mut y, mut z) = (num_rational, num_radical * f, den);
        if z < 0 {
            x = -x;
            y = -y;
            z = -z;
        }
        let g = x.gcd(&y).gcd(&z);
        QuadraticSurd { num_rational: x / g, num_radical: y / g, den: z / g, disc: core }
    }

    pub fn num_rational(&self) -> i64 {
        self.num_rational
    }

    pub fn num_radical(&self) -> i64 {
        self.num_radical
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn is_upper_half_plane(&self) -> bool {
        self.num_radical > 0
    }

    pub fn to_element(&self) -> QuadraticElement {
        let den = BigInt::from(self.den);
        QuadraticElement {
            d: self.disc,
            re: BigRational::new(self.num_rational.into(), den.clone()),
            rad: BigRational::new(self.num_radical.into(), den),
        }
    }

    pub fn to_big_complex(&self, prec: u32) -> BigComplex {
        let re = Float::with_val(prec, self.num_rational) / self.den;
        let mut im = Float::with_val(prec, -self.disc);
        im.sqrt_mut();
        im *= self.num_radical;
        im /= self.den;
        BigComplex::from_parts(re, im)
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}·√−{})/{}", self.num_rational, self.num_radical, -self.disc, self.den)
    }
}

/// An element `re + rad * sqrt(d)` of the quadratic field `Q(sqrt(d))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticElement {
    pub d: i64,
    pub re: BigRational,
    pub rad: BigRational,
}

impl QuadraticElement {
    pub fn from_integer(d: i64, n: i64) -> Self {
        QuadraticElement { d, re: BigRational::from_integer(n.into()), rad: BigRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.rad.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadraticElement { d: self.d, re: self.re.clone(), rad: -self.rad.clone() }
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = BigRational::from_integer(k.into());
        QuadraticElement { d: self.d, re: &self.re * &k, rad: &self.rad * &k }
    }

    /// Field norm `re^2 - d rad^2`; for `d < 0` this is `|self|^2`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re - BigRational::from_integer(self.d.into()) * &self.rad * &self.rad
    }

    pub fn is_positive_rational(&self) -> bool {
        self.is_rational() && self.re.is_positive()
    }

    pub fn one(d: i64) -> Self {
        QuadraticElement { d, re: BigRational::one(), rad: BigRational::zero() }
    }
}

impl Add for &QuadraticElement {
    type Output = QuadraticElement;
    fn add(self, o: &QuadraticElement) -> QuadraticElement {
        debug_assert_eq!(self.d, o.d);
        QuadraticElement { d: self.d, re: &self.re + &o.re, rad: &self.rad + &o.rad }
    }
}

impl Sub for &QuadraticElement {
    type Output = QuadraticElement;
    fn sub(self, o: &QuadraticElement) -> QuadraticElement {
        debug_assert_eq!(self.d, o.d);
        QuadraticElement { d: self.d, re: &self.re - &o.re, rad: &self.rad - &o.rad }
    }
}

impl Mul for &QuadraticElement {
    type Output = QuadraticElement;
    fn mul(self, o: &QuadraticElement) -> QuadraticElement {
        debug_assert_eq!(self.d, o.d);
        let d = BigRational::from_integer(self.d.into());
        QuadraticElement {
            d: self.d,
            re: &self.re * &o.re + d * &self.rad * &o.rad,
            rad: &self.re * &o.rad + &self.rad * &o.re,
        }
    }
}

impl Neg for &QuadraticElement {
    type Output = QuadraticElement;
    fn neg(self) -> QuadraticElement {
        QuadraticElement { d: self.d, re: -self.re.clone(), rad: -self.rad.clone() }
    }
}

impl fmt::Display for QuadraticElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})·√{}", self.re, self.rad, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let s = QuadraticSurd::new(0, 1, 1, -4);
        assert_eq!((s.num_rational(), s.num_radical(), s.den(), s.disc()), (0, 2, 1, -1));
        let s = QuadraticSurd::new(2, 2, 4, -5);
        assert_eq!((s.num_rational(), s.num_radical(), s.den(), s.disc()), (1, 1, 2, -5));
        let s = QuadraticSurd::new(-2, -2, -4, -5);
        assert_eq!(s, QuadraticSurd::new(1, 1, 2, -5));
        assert!(s.is_upper_half_plane());
        assert_eq!(s.to_string(), "(1 + 1·√−5)/2");
    }

    #[test]
    fn field_arithmetic() {
        // tau = (1 + sqrt(-5))/2 satisfies 2 tau^2 - 2 tau + 3 = 0
        let tau = QuadraticSurd::new(1, 1, 2, -5).to_element();
        let lhs = &(&(&tau * &tau).scale(2) - &tau.scale(2)) + &QuadraticElement::from_integer(-5, 3);
        assert!(lhs.is_zero());
        assert_eq!(tau.norm(), BigRational::new(3.into(), 2.into()));
        assert_eq!(tau.conj().conj(), tau);
    }
}
