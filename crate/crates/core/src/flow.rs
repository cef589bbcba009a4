//! Radial attractor flow of the elliptic modulus.
//!
//! With Kähler potential `e^(-K) ~ Im tau` the metric is
//! `g = 1/(2 Im tau)^2`, and the flow is steepest descent of `|Z|` in that
//! metric. The common `e^U` prefactor of both equations is absorbed into
//! the flow parameter, leaving the autonomous system
//!
//! ```text
//! dU/drho   = -|Z|
//! dtau/drho = -2 g^(tau taubar) d|Z|/dtaubar = -4 (Im tau)^2 (d_x + i d_y)|Z| / 2
//! ```
//!
//! whose unique fixed point is the attractor point of the charge.

use rug::Float;
use std::io::{self, Write};

use crate::attractor::{attractor_point, entropy_invariant, ChargeData};
use crate::error::{Error, Result};
use crate::numeric::BigComplex;

#[derive(Clone, Debug, PartialEq)]
pub struct FlowState {
    pub rho: f64,
    pub u: Float,
    pub tau: BigComplex,
    /// `|Z|^2` at `tau`.
    pub z2: Float,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowConfig {
    pub step: f64,
    /// Convergence threshold on `|tau_n - tau_{n-1}| / h_n`.
    pub tol: f64,
    pub max_steps: usize,
    /// MPFR precision of the trajectory, in bits.
    pub precision: u32,
    /// Halvings allowed per step before giving up.
    pub max_halvings: u32,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig { step: 1e-2, tol: 1e-9, max_steps: 1_000_000, precision: 128, max_halvings: 40 }
    }
}

impl FlowConfig {
    fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.tol > 0.0 && self.step.is_finite() && self.tol.is_finite()) {
            return Err(Error::InvalidInput("flow step and tolerance must be positive".into()));
        }
        Ok(())
    }
}

fn check_tau(tau: &BigComplex) -> Result<()> {
    if tau.is_finite() && tau.im().is_sign_positive() && !tau.im().is_zero() {
        Ok(())
    } else {
        Err(Error::NotUpperHalfPlane)
    }
}

fn z2_at(c: &ChargeData, x: &Float, y: &Float) -> Float {
    let p = x.prec().max(y.prec());
    let r2 = Float::with_val(p, x.square_ref()) + Float::with_val(p, y.square_ref());
    let mut num = Float::with_val(p, c.q2) - Float::with_val(p, x * (2 * c.pq)) + r2 * c.p2;
    num /= Float::with_val(p, y * 2u32);
    num
}

/// `|Z|^2 = (q2 - 2 pq Re tau + p2 |tau|^2) / (2 Im tau)`.
pub fn central_charge_sq(c: &ChargeData, tau: &BigComplex) -> Result<Float> {
    check_tau(tau)?;
    if c.p2 <= 0 {
        return Err(Error::DegenerateCharge(c.p2));
    }
    Ok(z2_at(c, tau.re(), tau.im()))
}

/// `(dU, dx, dy)` at `(x, y)`.
fn velocity(c: &ChargeData, x: &Float, y: &Float) -> (Float, Float, Float) {
    let p = x.prec();
    let f = z2_at(c, x, y);
    let sqrt_f = Float::with_val(p, f.sqrt_ref());
    // df/dx = (p2 x - pq)/y, df/dy = p2 - f/y
    let fx = (Float::with_val(p, x * c.p2) - c.pq) / y;
    let fy = Float::with_val(p, c.p2) - Float::with_val(p, &f / y);
    // d|Z| = df / (2 sqrt f); dtau = -4 y^2 d|Z|
    let scale = -(Float::with_val(p, y.square_ref()) * 2u32) / &sqrt_f;
    let dx = Float::with_val(p, &scale * &fx);
    let dy = Float::with_val(p, &scale * &fy);
    (-sqrt_f, dx, dy)
}

struct Stage {
    u: Float,
    x: Float,
    y: Float,
}

fn rk4(c: &ChargeData, s: &Stage, h: &Float) -> Option<Stage> {
    let p = s.x.prec();
    let half = Float::with_val(p, h / 2u32);
    let shifted = |k: &(Float, Float, Float), w: &Float| -> Option<Stage> {
        let y = Float::with_val(p, &s.y + Float::with_val(p, &k.2 * w));
        if !(y.is_sign_positive() && !y.is_zero() && y.is_finite()) {
            return None;
        }
        Some(Stage {
            u: Float::with_val(p, &s.u + Float::with_val(p, &k.0 * w)),
            x: Float::with_val(p, &s.x + Float::with_val(p, &k.1 * w)),
            y,
        })
    };
    let k1 = velocity(c, &s.x, &s.y);
    let s2 = shifted(&k1, &half)?;
    let k2 = velocity(c, &s2.x, &s2.y);
    let s3 = shifted(&k2, &half)?;
    let k3 = velocity(c, &s3.x, &s3.y);
    let s4 = shifted(&k3, h)?;
    let k4 = velocity(c, &s4.x, &s4.y);
    let combine = |a: &Float, b: &Float, cc: &Float, d: &Float| -> Float {
        (Float::with_val(p, a + d) + Float::with_val(p, b + cc) * 2u32) / 6u32
    };
    let k =
        (combine(&k1.0, &k2.0, &k3.0, &k4.0), combine(&k1.1, &k2.1, &k3.1, &k4.1), combine(&k1.2, &k2.2, &k3.2, &k4.2));
    shifted(&k, h)
}

fn advance(state: &FlowState, c: &ChargeData, config: &FlowConfig) -> Result<(FlowState, f64)> {
    let p = config.precision.max(64);
    let stage = Stage {
        u: Float::with_val(p, &state.u),
        x: Float::with_val(p, state.tau.re()),
        y: Float::with_val(p, state.tau.im()),
    };
    let mut h = config.step;
    for _ in 0..=config.max_halvings {
        if let Some(next) = rk4(c, &stage, &Float::with_val(p, h)) {
            let z2 = z2_at(c, &next.x, &next.y);
            let tau = BigComplex::from_parts(next.x, next.y);
            return Ok((FlowState { rho: state.rho + h, u: next.u, tau, z2 }, h));
        }
        // Im tau left the upper half-plane inside the step.
        h /= 2.0;
    }
    Err(Error::StepUnderflow(state.rho))
}

/// Initial state `rho = 0`, `U = 0` at `tau0`.
pub fn initial_state(c: &ChargeData, tau0: &BigComplex, config: &FlowConfig) -> Result<FlowState> {
    check_tau(tau0)?;
    c.check_attractor()?;
    let tau = tau0.with_prec(config.precision);
    let z2 = z2_at(c, tau.re(), tau.im());
    Ok(FlowState { rho: 0.0, u: Float::new(tau.prec()), tau, z2 })
}

/// One RK4 step of size `config.step`, halved while `Im tau` would turn non-positive.
pub fn flow_step(state: &FlowState, c: &ChargeData, config: &FlowConfig) -> Result<FlowState> {
    config.validate()?;
    check_tau(&state.tau)?;
    c.check_attractor()?;
    advance(state, c, config).map(|(s, _)| s)
}

/// How a converged trajectory compares with the exact attractor point.
#[derive(Clone, Debug)]
pub struct FlowCertificate {
    pub steps: usize,
    pub endpoint: BigComplex,
    pub exact: BigComplex,
    /// `|tau_end - tau_{p,q}|`
    pub endpoint_error: Float,
    /// `sqrt|D|`
    pub entropy: Float,
    /// `| |Z|^2(tau_end) - sqrt|D| |`
    pub z2_error: Float,
    /// `|Z|` never increased along an accepted step.
    pub monotone: bool,
}

#[derive(Clone, Debug)]
pub struct FlowResult {
    pub trajectory: Vec<FlowState>,
    pub certificate: FlowCertificate,
}

pub fn flow_integrate(c: &ChargeData, tau0: &BigComplex, config: &FlowConfig) -> Result<FlowResult> {
    config.validate()?;
    let point = attractor_point(c)?;
    let mut state = initial_state(c, tau0, config)?;
    let mut trajectory = vec![state.clone()];
    let mut converged = false;
    for _ in 0..config.max_steps {
        let (next, h) = advance(&state, c, config)?;
        let moved = next.tau.dist(&state.tau).to_f64() / h;
        trajectory.push(next.clone());
        state = next;
        if moved < config.tol {
            converged = true;
            break;
        }
    }
    let steps = trajectory.len() - 1;
    if !converged {
        return Err(Error::NonConvergence { steps, trajectory: Box::new(trajectory) });
    }
    let p = config.precision;
    let exact = point.tau.to_big_complex(p);
    let entropy = entropy_invariant(c, p)?;
    let endpoint = state.tau.clone();
    let endpoint_error = endpoint.dist(&exact);
    let z2_error = Float::with_val(p, &state.z2 - &entropy).abs();
    let monotone = trajectory.windows(2).all(|w| w[1].z2 <= w[0].z2);
    Ok(FlowResult {
        certificate: FlowCertificate { steps, endpoint, exact, endpoint_error, entropy, z2_error, monotone },
        trajectory,
    })
}

/// Header of the trajectory CSV.
pub const TRACE_HEADER: &str = "rho,U,re_tau,im_tau,Z2";

/// One row per state, 17 significant digits.
pub fn write_trace_csv<W: Write>(trajectory: &[FlowState], mut out: W) -> io::Result<()> {
    writeln!(out, "{TRACE_HEADER}")?;
    for s in trajectory {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            s.rho,
            s.u.to_f64(),
            s.tau.re().to_f64(),
            s.tau.im().to_f64(),
            s.z2.to_f64()
        )?;
    }
    Ok(())
}
