//! Eisenstein series, the modular discriminant and the j-invariant as
//! q-expansions evaluated in MPFR; Hilbert class polynomials and the
//! algebraic-integer certificate for `j` at an attractor point.

use rayon::prelude::*;
use rug::{Float, Integer};
use std::f64::consts::{LN_2, PI};

use crate::arith::{class_group_forms, squarefree_decomposition, IntMatrix, QuadraticSurd};
use crate::attractor::{attractor_point, AttractorPoint, ChargeData};
use crate::error::{Error, Result};
use crate::numeric::{pi, pow2, BigComplex};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 256;

/// Largest q-expansion length the evaluator will use.
pub const MAX_TRUNCATION: usize = 50_000;

const MAX_REDUCTION_STEPS: usize = 10_000;

/// A truncated q-expansion with exact integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    pub weight: i32,
    coefficients: Vec<Integer>,
}

impl QSeries {
    pub fn new(weight: i32, coefficients: Vec<Integer>) -> Self {
        assert!(!coefficients.is_empty());
        QSeries { weight, coefficients }
    }

    pub fn truncation_order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[Integer] {
        &self.coefficients
    }

    pub fn coefficient(&self, n: usize) -> &Integer {
        &self.coefficients[n]
    }

    /// Product truncated at the shorter of the two orders.
    pub fn mul_truncated(&self, other: &QSeries) -> QSeries {
        let n = self.truncation_order().min(other.truncation_order());
        let mut out = vec![Integer::new(); n + 1];
        for (i, a) in self.coefficients.iter().take(n + 1).enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coefficients.iter().take(n + 1 - i).enumerate() {
                out[i + j] += Integer::from(a * b);
            }
        }
        QSeries { weight: self.weight + other.weight, coefficients: out }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        let n = self.truncation_order().min(other.truncation_order());
        let coefficients = (0..=n).map(|i| Integer::from(&self.coefficients[i] - &other.coefficients[i])).collect();
        QSeries { weight: self.weight, coefficients }
    }

    /// Horner evaluation at `q` in the precision of `q`.
    pub fn evaluate(&self, q: &BigComplex) -> BigComplex {
        horner(&self.coefficients, q)
    }
}

fn horner(coefficients: &[Integer], q: &BigComplex) -> BigComplex {
    let prec = q.prec();
    let mut acc = BigComplex::zero(prec);
    for c in coefficients.iter().rev() {
        acc = &acc * q;
        acc = &acc + &BigComplex::from_int(prec, c);
    }
    acc
}

/// `sigma_k(n)` for `n = 0..=n_max` (with `sigma_k(0) = 0`).
fn divisor_sums(k: u32, n_max: usize) -> Vec<Integer> {
    let mut sums = vec![Integer::new(); n_max + 1];
    for d in 1..=n_max {
        let dk = Integer::from(Integer::u_pow_u(d as u32, k));
        let mut m = d;
        while m <= n_max {
            sums[m] += &dk;
            m += d;
        }
    }
    sums
}

/// `E_4 = 1 + 240 sum sigma_3(n) q^n` or `E_6 = 1 - 504 sum sigma_5(n) q^n`,
/// truncated at `q^order`.
pub fn eisenstein_series(k: u32, order: usize) -> Result<QSeries> {
    let (scale, power) = match k {
        4 => (240i64, 3u32),
        6 => (-504i64, 5u32),
        _ => return Err(Error::UnsupportedWeight(k)),
    };
    let order = order.max(1);
    let mut coefficients = divisor_sums(power, order);
    for c in coefficients.iter_mut() {
        *c *= scale;
    }
    coefficients[0] = Integer::from(1);
    Ok(QSeries { weight: k as i32, coefficients })
}

/// `Delta = (E_4^3 - E_6^2) / 1728`, exact. Panics if the division is not exact.
pub fn delta_series(order: usize) -> QSeries {
    let (lhs, _) = discriminant_identity(order);
    let coefficients = lhs
        .coefficients
        .iter()
        .map(|c| {
            let (quot, rem) = c.clone().div_rem(Integer::from(1728));
            assert_eq!(rem, 0, "E4^3 - E6^2 not divisible by 1728");
            quot
        })
        .collect();
    QSeries { weight: 12, coefficients }
}

/// `(E_4^3 - E_6^2, E_4^3)` as exact series.
pub fn discriminant_identity(order: usize) -> (QSeries, QSeries) {
    let e4 = eisenstein_series(4, order).expect("weight 4");
    let e6 = eisenstein_series(6, order).expect("weight 6");
    let e4_cubed = e4.mul_truncated(&e4).mul_truncated(&e4);
    let e6_sq = e6.mul_truncated(&e6);
    (e4_cubed.sub(&e6_sq), e4_cubed)
}

/// `(a tau + b) / (c tau + d)`
pub fn mobius(m: &IntMatrix, tau: &BigComplex) -> BigComplex {
    let num = &tau.mul_i64(m.a) + &BigComplex::from_f64(tau.prec(), m.b as f64, 0.0);
    let den = &tau.mul_i64(m.c) + &BigComplex::from_f64(tau.prec(), m.d as f64, 0.0);
    &num / &den
}

/// `c tau + d`
pub fn automorphy_factor(m: &IntMatrix, tau: &BigComplex) -> BigComplex {
    &tau.mul_i64(m.c) + &BigComplex::from_f64(tau.prec(), m.d as f64, 0.0)
}

fn check_upper(tau: &BigComplex) -> Result<()> {
    if tau.is_finite() && tau.im().is_sign_positive() && !tau.im().is_zero() {
        Ok(())
    } else {
        Err(Error::NotUpperHalfPlane)
    }
}

/// Moves `tau` into the standard fundamental domain `|Re| <= 1/2`, `|tau| >= 1`.
/// Returns the image and the matrix `m` with `image = m . tau`.
///
/// Boundary comparisons allow a slack of `2^(8 - prec)` so points on the
/// boundary do not oscillate.
pub fn reduce_to_fundamental(tau: &BigComplex) -> Result<(BigComplex, IntMatrix)> {
    check_upper(tau)?;
    let prec = tau.prec();
    let slack = pow2(prec, 8 - prec as i32);
    let half = Float::with_val(prec, 0.5) + &slack;
    let one = Float::with_val(prec, 1) - &slack;
    let mut z = tau.clone();
    let mut m = IntMatrix::IDENTITY;
    for _ in 0..MAX_REDUCTION_STEPS {
        if Float::with_val(prec, z.re().abs_ref()) > half {
            let shift = Float::with_val(prec, z.re() + 0.5).floor();
            let k = -shift
                .to_integer()
                .and_then(|i| i.to_i64())
                .ok_or_else(|| Error::PrecisionExhausted("real part too large to reduce".into()))?;
            z = &z + &BigComplex::from_f64(prec, k as f64, 0.0);
            m = IntMatrix::translation(k) * m;
        }
        if z.norm_sqr() < one {
            z = -z.recip();
            m = IntMatrix::S * m;
        } else {
            return Ok((z, m));
        }
    }
    Err(Error::PrecisionExhausted("fundamental-domain reduction did not terminate".into()))
}

/// Error bookkeeping for one Horner evaluation: truncation order and base-2
/// logarithms of the tail and rounding bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesBound {
    pub truncation: usize,
    pub tail_log2: f64,
    pub rounding_log2: f64,
}

impl SeriesBound {
    pub fn total_log2(&self) -> f64 {
        let m = self.tail_log2.max(self.rounding_log2);
        m + (1.0 + (self.tail_log2.min(self.rounding_log2) - m).exp2()).log2()
    }
}

/// Smallest `N` with `C (N+1)^k r^(N+1) / (1 - ((N+2)/(N+1))^k r) < 2^-target`,
/// which bounds `sum_{n > N} C n^k r^n`.
fn truncation_for(r: f64, c: f64, k: i32, target_bits: f64) -> Option<(usize, f64)> {
    let lr = r.log2();
    for n in 1..=MAX_TRUNCATION {
        let n1 = (n + 1) as f64;
        let ratio = ((n1 + 1.0) / n1).powi(k) * r;
        if ratio >= 1.0 {
            continue;
        }
        let tail = c.log2() + k as f64 * n1.log2() + n1 * lr - (1.0 - ratio).log2();
        if tail < -target_bits {
            return Some((n, tail));
        }
    }
    None
}

/// `E_4` and `E_6` evaluated at a point already in the fundamental domain.
fn eisenstein_reduced(tau: &BigComplex, prec: u32) -> Result<(BigComplex, BigComplex, SeriesBound)> {
    let wp = prec + 32;
    let tau = tau.with_prec(wp);
    let two_pi_i = BigComplex::from_parts(Float::new(wp), pi(wp) * 2u32);
    let q = (&two_pi_i * &tau).exp();
    let r = (-2.0 * PI * tau.im().to_f64()).exp();
    // sigma_3(n) <= zeta(3) n^3, sigma_5(n) <= zeta(5) n^5
    let (n, tail) = truncation_for(r, 504.0 * 1.04, 5, prec as f64 + 16.0)
        .ok_or_else(|| Error::PrecisionExhausted(format!("no truncation within {MAX_TRUNCATION} terms")))?;
    let e4 = eisenstein_series(4, n)?;
    let e6 = eisenstein_series(6, n)?;
    let v4 = e4.evaluate(&q);
    let v6 = e6.evaluate(&q);
    let abs_sum: f64 = e6.coefficients().iter().enumerate().map(|(i, c)| c.to_f64().abs() * r.powi(i as i32)).sum();
    let rounding = (2.0 * n as f64 * abs_sum.max(1.0)).log2() - wp as f64;
    Ok((v4, v6, SeriesBound { truncation: n, tail_log2: tail, rounding_log2: rounding }))
}

/// `(E_4(tau), E_6(tau))` for any `tau` in the upper half-plane.
pub fn eisenstein_values(tau: &BigComplex, prec: u32) -> Result<(BigComplex, BigComplex, SeriesBound)> {
    check_upper(tau)?;
    let tau = tau.with_prec(prec.max(tau.prec()));
    let (reduced, m) = reduce_to_fundamental(&tau)?;
    // Growth of E_k at tau from E_k at the reduced point: (c tau + d)^-k.
    let factor = automorphy_factor(&m, &tau);
    let extra = factor.abs().to_f64().log2().abs().ceil() as u32 * 6;
    let (v4, v6, bound) = eisenstein_reduced(&reduced, prec + extra)?;
    if m.is_identity() {
        return Ok((v4, v6, bound));
    }
    let f2 = factor.square();
    let f4 = f2.square();
    let f6 = &f4 * &f2;
    Ok((&v4 / &f4, &v6 / &f6, bound))
}

/// Result of [`j_value_with_bound`].
#[derive(Clone, Debug)]
pub struct JEvaluation {
    pub value: BigComplex,
    pub reduced_tau: BigComplex,
    pub matrix: IntMatrix,
    pub series: SeriesBound,
    pub working_precision: u32,
}

/// `j(tau) = 1728 E_4^3 / (E_4^3 - E_6^2)`.
///
/// The result carries enough precision that its absolute error is below
/// `2^(-prec/2)`; large `|j|` raise the returned precision accordingly.
pub fn j_value(tau: &BigComplex, prec: u32) -> Result<BigComplex> {
    j_value_with_bound(tau, prec).map(|e| e.value)
}

pub fn j_value_with_bound(tau: &BigComplex, prec: u32) -> Result<JEvaluation> {
    check_upper(tau)?;
    let (reduced, matrix) = reduce_to_fundamental(&tau.with_prec(prec.max(tau.prec())))?;
    // |j| ~ 1/|q| = e^(2 pi Im); E4^3 - E6^2 ~ 1728 q loses as many bits.
    let growth = (2.0 * PI * reduced.im().to_f64() / LN_2).ceil() as u32;
    let working_precision = prec + 2 * growth + 64;
    let (e4, e6, series) = eisenstein_reduced(&reduced, working_precision)?;
    let e4_cubed = &e4.square() * &e4;
    let den = &e4_cubed - &e6.square();
    if den.is_zero() {
        return Err(Error::PrecisionExhausted("discriminant underflow".into()));
    }
    let value = (&e4_cubed / &den).mul_i64(1728);
    Ok(JEvaluation { value, reduced_tau: reduced, matrix, series, working_precision })
}

/// `|Delta(tau)|` lower bound check: returns `Delta(tau)` and whether its
/// modulus exceeds the accumulated error bound.
pub fn delta_value(tau: &BigComplex, prec: u32) -> Result<(BigComplex, bool)> {
    let (e4, e6, bound) = eisenstein_values(tau, prec)?;
    let e4_cubed = &e4.square() * &e4;
    let delta = (&e4_cubed - &e6.square()).div_real(&Float::with_val(e4.prec(), 1728));
    // Certified non-zero when |Delta| clears 16x the accumulated error bound.
    let nonzero = !delta.is_zero() && delta.abs().log2().to_f64() > bound.total_log2() + 4.0;
    Ok((delta, nonzero))
}

/// A Hilbert (ring) class polynomial with integer coefficients in
/// ascending degree, monic.
#[derive(Clone, Debug, PartialEq)]
pub struct HilbertClassPolynomial {
    pub disc: i64,
    pub coeffs: Vec<Integer>,
    /// Largest distance of a computed coefficient from its rounded value.
    pub residual: f64,
    pub precision_bits: u32,
}

impl HilbertClassPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn evaluate(&self, x: &BigComplex) -> BigComplex {
        horner(&self.coeffs, x)
    }
}

/// `max(256, ceil(pi sqrt|D| h / ln 2) + 64 h)`
pub fn hcp_precision(disc: i64, class_number: usize) -> u32 {
    let h = class_number as f64;
    let bits = (PI * (disc.unsigned_abs() as f64).sqrt() * h / LN_2).ceil() + 64.0 * h;
    (bits as u32).max(DEFAULT_PRECISION)
}

/// Product of `x - j(tau_f)` over the primitive reduced forms `f` of
/// discriminant `disc`, rounded to integers.
pub fn hilbert_class_polynomial(disc: i64) -> Result<HilbertClassPolynomial> {
    let forms = class_group_forms(disc)?;
    let bits = hcp_precision(disc, forms.len());
    let roots: Vec<BigComplex> = forms
        .par_iter()
        .map(|f| {
            let tau = QuadraticSurd::new(-f.b, 1, 2 * f.a, disc).to_big_complex(bits);
            j_value(&tau, bits)
        })
        .collect::<Result<_>>()?;
    let wp = roots.iter().map(|r| r.prec()).max().unwrap_or(bits);
    // Ascending coefficients of prod (x - j_i), multiplied in form order.
    let mut poly = vec![BigComplex::one(wp)];
    for root in &roots {
        let mut next = vec![BigComplex::zero(wp); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] - &(c * root);
        }
        poly = next;
    }
    let mut residual = 0f64;
    let mut coeffs = Vec::with_capacity(poly.len());
    for c in &poly {
        let rounded = Float::with_val(wp, c.re().round_ref());
        let dist_re = Float::with_val(wp, c.re() - &rounded).abs().to_f64();
        let dist_im = Float::with_val(wp, c.im().abs_ref()).to_f64();
        residual = residual.max(dist_re).max(dist_im);
        coeffs.push(rounded.to_integer().ok_or_else(|| Error::PrecisionExhausted("non-finite coefficient".into()))?);
    }
    if residual >= 0.25 {
        return Err(Error::RoundingFailed { disc, residual });
    }
    Ok(HilbertClassPolynomial { disc, coeffs, residual, precision_bits: bits })
}

/// `D_K` and conductor `f` with `disc = f^2 D_K`.
pub fn fundamental_discriminant(disc: i64) -> (i64, i64) {
    let (_, core) = squarefree_decomposition(disc);
    let dk = if core.rem_euclid(4) == 1 { core } else { 4 * core };
    let f2 = disc / dk;
    let f = (f2 as f64).sqrt().round() as i64;
    debug_assert_eq!(f * f * dk, disc);
    (dk, f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassFieldKind {
    /// Conductor 1: `K_D(j)` is the Hilbert class field.
    Hilbert,
    /// Conductor > 1: the ring class field of the order of that conductor.
    RingClass,
}

impl ClassFieldKind {
    pub fn label(&self) -> &'static str {
        match self {
            ClassFieldKind::Hilbert => "Hilbert class field",
            ClassFieldKind::RingClass => "ring class field",
        }
    }
}

/// Numerical certificate that `j(tau_{p,q})` is a root of `H_{4D}`.
#[derive(Clone, Debug)]
pub struct CmCertificate {
    pub point: AttractorPoint,
    pub form_disc: i64,
    pub fundamental_disc: i64,
    pub conductor: i64,
    pub field: ClassFieldKind,
    /// Degree of `K_D(j(tau))` over `K_D`.
    pub class_number: usize,
    pub j: BigComplex,
    pub polynomial: HilbertClassPolynomial,
    /// `|H_{4D}(j(tau))|`
    pub residual: Float,
    /// `2^(-prec/4)`
    pub threshold: Float,
    pub series: SeriesBound,
    pub precision_bits: u32,
}

pub fn certify_attractor_cm(c: &ChargeData, prec: u32) -> Result<CmCertificate> {
    let point = attractor_point(c)?;
    let form_disc = 4 * point.disc;
    let polynomial = hilbert_class_polynomial(form_disc)?;
    let wp = prec.max(polynomial.precision_bits) + 64;
    let tau = point.tau.to_big_complex(wp);
    let eval = j_value_with_bound(&tau, wp)?;
    let value = polynomial.evaluate(&eval.value);
    let residual = value.abs();
    let threshold = pow2(prec, -(prec as i32) / 4);
    if residual >= threshold {
        return Err(Error::PrecisionExhausted(format!("|H(j)| = {:e} not below 2^-{}", residual.to_f64(), prec / 4)));
    }
    let (fundamental_disc, conductor) = fundamental_discriminant(form_disc);
    let field = if conductor == 1 { ClassFieldKind::Hilbert } else { ClassFieldKind::RingClass };
    Ok(CmCertificate {
        class_number: polynomial.degree(),
        point,
        form_disc,
        fundamental_disc,
        conductor,
        field,
        j: eval.value,
        polynomial,
        residual,
        threshold,
        series: eval.series,
        precision_bits: prec,
    })
}
