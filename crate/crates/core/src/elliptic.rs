//! Weierstrass models `y^2 = x^3 + A x + B` of complex tori, their torsion
//! points via the Weierstrass `p`-function, and Weber function values.

use rayon::prelude::*;
use rug::Float;
use std::f64::consts::{LN_2, PI};

use crate::arith::IntMatrix;
use crate::error::{Error, Result};
use crate::modular::{eisenstein_values, reduce_to_fundamental};
use crate::numeric::{pi, pow2, BigComplex};

/// Lattice `omega (Z + Z source_tau)` together with its reduction
/// `reduced = matrix . source_tau`.
#[derive(Clone, Debug, PartialEq)]
struct LatticeFrame {
    reduced: BigComplex,
    matrix: IntMatrix,
    omega: BigComplex,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassModel {
    pub a: BigComplex,
    pub b: BigComplex,
    /// `-16 (4 A^3 + 27 B^2)`
    pub delta: BigComplex,
    pub j: BigComplex,
    /// Modulus the model was built from; `None` for models given by coefficients.
    pub source_tau: Option<BigComplex>,
    /// Requested precision; case tolerances derive from it.
    pub precision: u32,
    frame: Option<LatticeFrame>,
}

impl WeierstrassModel {
    /// A model from its coefficients, without an attached period lattice.
    pub fn from_coefficients(a: BigComplex, b: BigComplex, precision: u32) -> Result<Self> {
        let delta = model_discriminant(&a, &b);
        if delta.is_zero() {
            return Err(Error::InvalidInput("singular cubic: 4A^3 + 27B^2 = 0".into()));
        }
        let j = model_j(&a, &delta);
        Ok(WeierstrassModel { a, b, delta, j, source_tau: None, precision, frame: None })
    }

    /// `g_2 = -4A`
    pub fn g2(&self) -> BigComplex {
        self.a.mul_i64(-4)
    }

    /// `g_3 = -4B`
    pub fn g3(&self) -> BigComplex {
        self.b.mul_i64(-4)
    }

    /// `x^3 + A x + B`
    pub fn cubic(&self, x: &BigComplex) -> BigComplex {
        &(&(&x.square() * x) + &(&self.a * x)) + &self.b
    }

    /// `|y^2 - (x^3 + A x + B)|`
    pub fn curve_residual(&self, x: &BigComplex, y: &BigComplex) -> Float {
        (&y.square() - &self.cubic(x)).abs()
    }

    /// `|(2y)^2 - (4 x^3 - g_2 x - g_3)|`
    pub fn ode_residual(&self, x: &BigComplex, y: &BigComplex) -> Float {
        let lhs = y.mul_i64(2).square();
        let rhs = &(&(&x.square() * x).mul_i64(4) - &(&self.g2() * x)) - &self.g3();
        (&lhs - &rhs).abs()
    }

    /// `2^(-precision/4)`, the tolerance used to select the Weber case.
    pub fn case_tolerance(&self) -> Float {
        pow2(64, -(self.precision as i32) / 4)
    }

    pub fn weber_case(&self) -> Result<WeberCase> {
        let tol = self.case_tolerance();
        let near_zero = self.j.abs() < tol;
        let near_1728 = (&self.j - &BigComplex::from_f64(self.j.prec(), 1728.0, 0.0)).abs() < tol;
        match (near_zero, near_1728) {
            (true, true) => Err(Error::AmbiguousCase),
            (true, false) => Ok(WeberCase::JZero),
            (false, true) => Ok(WeberCase::J1728),
            (false, false) => Ok(WeberCase::Generic),
        }
    }
}

fn model_discriminant(a: &BigComplex, b: &BigComplex) -> BigComplex {
    let a3 = &a.square() * a;
    (&a3.mul_i64(4) + &b.square().mul_i64(27)).mul_i64(-16)
}

/// `j = -1728 (4A)^3 / delta`
fn model_j(a: &BigComplex, delta: &BigComplex) -> BigComplex {
    let a4 = a.mul_i64(4);
    (&(&a4.square() * &a4) / delta).mul_i64(-1728)
}

fn working_precision(prec: u32, reduced: &BigComplex) -> u32 {
    let growth = (2.0 * PI * reduced.im().to_f64() / LN_2).ceil() as u32;
    prec + 2 * growth + 64
}

/// Model of `C / (Z + Z tau)` with `g_2 = (4 pi^4 / 3) E_4`, `g_3 = (8 pi^6 / 27) E_6`,
/// `A = -g_2 / 4`, `B = -g_3 / 4`.
pub fn model_from_tau(tau: &BigComplex, prec: u32) -> Result<WeierstrassModel> {
    let (reduced, matrix) = reduce_to_fundamental(&tau.with_prec(prec.max(tau.prec())))?;
    let wp = working_precision(prec, &reduced);
    let tau_wp = tau.with_prec(wp);
    let (e4, e6, _) = eisenstein_values(&tau_wp, wp)?;
    let p = pi(wp);
    let pi2 = Float::with_val(wp, p.square_ref());
    let pi4 = Float::with_val(wp, pi2.square_ref());
    let pi6 = Float::with_val(wp, &pi4 * &pi2);
    let g2 = e4.mul_real(&(pi4 * 4u32 / 3u32));
    let g3 = e6.mul_real(&(pi6 * 8u32 / 27u32));
    let a = g2.div_real(&Float::with_val(wp, -4));
    let b = g3.div_real(&Float::with_val(wp, -4));
    let delta = model_discriminant(&a, &b);
    if delta.is_zero() {
        return Err(Error::PrecisionExhausted("model discriminant underflow".into()));
    }
    let g2_cubed = &g2.square() * &g2;
    let j = (&g2_cubed / &(&g2_cubed - &g3.square().mul_i64(27))).mul_i64(1728);
    let frame = LatticeFrame { reduced: reduced.with_prec(wp), matrix, omega: BigComplex::one(wp) };
    Ok(WeierstrassModel { a, b, delta, j, source_tau: Some(tau_wp), precision: prec, frame: Some(frame) })
}

/// The isomorphic model `(x, y) -> (u^2 x, u^3 y)`: `A -> u^4 A`, `B -> u^6 B`.
pub fn twist_model(model: &WeierstrassModel, u: &BigComplex) -> Result<WeierstrassModel> {
    if u.is_zero() {
        return Err(Error::ZeroTwist);
    }
    let u2 = u.square();
    let u4 = u2.square();
    let u6 = &u4 * &u2;
    let u12 = u6.square();
    let frame = model.frame.as_ref().map(|f| LatticeFrame {
        reduced: f.reduced.clone(),
        matrix: f.matrix,
        omega: &f.omega / u,
    });
    Ok(WeierstrassModel {
        a: &model.a * &u4,
        b: &model.b * &u6,
        delta: &model.delta * &u12,
        j: model.j.clone(),
        source_tau: model.source_tau.clone(),
        precision: model.precision,
        frame,
    })
}

/// The image of `z = (a tau + b) / n` on the model.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionPoint {
    /// `(a, b, n)`: lattice coordinates `(a/n, b/n)` in the basis `(tau, 1)`.
    pub coords: (i64, i64, i64),
    pub x: BigComplex,
    pub y: BigComplex,
}

impl TorsionPoint {
    pub fn lattice_coords(&self) -> ((i64, i64), (i64, i64)) {
        let (a, b, n) = self.coords;
        ((a, n), (b, n))
    }
}

/// `p(z)` and `p'(z)` on `Z + Z tau` via the q-expansion
/// `(2 pi i)^2 [1/12 + sum_n q^n w / (1 - q^n w)^2 - 2 sum_{m>=1} q^m / (1 - q^m)^2]`
/// with `w = e^(2 pi i z)`. Needs `|Im z| <= Im(tau)/2`.
fn weierstrass_p(tau: &BigComplex, z: &BigComplex, wp: u32) -> (BigComplex, BigComplex) {
    let two_pi_i = BigComplex::from_parts(Float::new(wp), pi(wp) * 2u32);
    let q = (&two_pi_i * tau).exp();
    let w = (&two_pi_i * z).exp();
    let w_inv = w.recip();
    let one = BigComplex::one(wp);
    // Terms decay at least like |q|^(m - 1/2).
    let im = tau.im().to_f64();
    let terms = ((wp as f64 + 16.0) * LN_2 / (2.0 * PI * im)).ceil() as usize + 2;

    let term = |v: &BigComplex| -> (BigComplex, BigComplex) {
        let d = &one - v;
        let d2 = d.square();
        let d3 = &d2 * &d;
        let p = v / &d2;
        let dp = &(v * &(&one + v)) / &d3;
        (p, dp)
    };

    let mut sum = BigComplex::zero(wp);
    let mut dsum = BigComplex::zero(wp);
    let (p0, dp0) = term(&w);
    sum += &p0;
    dsum += &dp0;
    let mut qm = one.clone();
    for _ in 1..=terms {
        qm = &qm * &q;
        let (pv, dpv) = term(&(&qm * &w));
        let (pu, dpu) = term(&(&qm * &w_inv));
        let (pq, _) = term(&qm);
        sum += &pv;
        sum += &pu;
        sum -= &pq.mul_i64(2);
        dsum += &dpv;
        dsum -= &dpu;
    }
    sum += &BigComplex::one(wp).div_real(&Float::with_val(wp, 12));
    let c2 = two_pi_i.square();
    let c3 = &c2 * &two_pi_i;
    (&c2 * &sum, &c3 * &dsum)
}

/// The `n^2 - 1` non-zero `n`-torsion points `(a tau + b)/n`, ordered by `(a, b)`.
pub fn torsion_points(model: &WeierstrassModel, n: i64) -> Result<Vec<TorsionPoint>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("torsion order {n} must be at least 2")));
    }
    let frame = model.frame.as_ref().ok_or_else(|| Error::InvalidInput("model carries no period lattice".into()))?;
    let wp = frame.reduced.prec();
    let m = frame.matrix;
    let tau_r = &frame.reduced;
    // lambda = 1/(c tau + d) = a_m - c_m tau_r maps Z + Z tau onto Z + Z tau_r.
    let lambda = &BigComplex::from_f64(wp, m.a as f64, 0.0) - &tau_r.mul_i64(m.c);
    let s = &lambda / &frame.omega;
    let s2 = s.square();
    let s3 = &s2 * &s;
    let coords: Vec<(i64, i64)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&c| c != (0, 0)).collect();
    let points = coords
        .par_iter()
        .map(|&(a, b)| {
            // Coordinates of lambda z in the basis (tau_r, 1), folded into the cell.
            let mut ar = (a * m.d - b * m.c).rem_euclid(n);
            let br = (b * m.a - a * m.b).rem_euclid(n);
            if 2 * ar > n {
                ar -= n;
            }
            let z = (&tau_r.mul_i64(ar) + &BigComplex::from_f64(wp, br as f64, 0.0)).div_real(&Float::with_val(wp, n));
            let (p, dp) = weierstrass_p(tau_r, &z, wp);
            let x = &s2 * &p;
            let y = (&s3 * &dp).div_real(&Float::with_val(wp, 2));
            if !x.is_finite() || !y.is_finite() {
                return Err(Error::PrecisionExhausted(format!("p-function overflow at ({a}, {b})/{n}")));
            }
            Ok(TorsionPoint { coords: (a, b, n), x, y })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(points)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeberCase {
    /// `(A B / delta) x`
    Generic,
    /// `(A^2 / delta) x^2`
    J1728,
    /// `(B / delta) x^3`
    JZero,
}

impl WeberCase {
    pub fn label(&self) -> &'static str {
        match self {
            WeberCase::Generic => "generic",
            WeberCase::J1728 => "j=1728",
            WeberCase::JZero => "j=0",
        }
    }
}

pub fn weber_function(model: &WeierstrassModel, point: &TorsionPoint) -> Result<BigComplex> {
    let x = &point.x;
    let value = match model.weber_case()? {
        WeberCase::Generic => &(&(&model.a * &model.b) / &model.delta) * x,
        WeberCase::J1728 => &(&model.a.square() / &model.delta) * &x.square(),
        WeberCase::JZero => &(&model.b / &model.delta) * &(&x.square() * x),
    };
    Ok(value)
}
