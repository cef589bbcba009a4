use thiserror::Error;

use crate::flow::FlowState;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("form ({a}, {b}, {c}) is not positive definite")]
    NotPositiveDefinite { a: i64, b: i64, c: i64 },

    #[error("invalid discriminant {0}: need disc < 0 and disc = 0, 1 (mod 4)")]
    InvalidDiscriminant(i64),

    #[error("charge discriminant {0} is non-negative; no attractor point")]
    NotAttractor(i64),

    #[error("degenerate charge: p^2 = {0} must be positive")]
    DegenerateCharge(i64),

    #[error("inconsistent charge provenance: {0}")]
    InconsistentCharge(String),

    #[error("Eisenstein series of weight {0} not supported (use 4 or 6)")]
    UnsupportedWeight(u32),

    #[error("point is not in the upper half-plane")]
    NotUpperHalfPlane,

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("class polynomial rounding failed for disc {disc}: residual {residual}")]
    RoundingFailed { disc: i64, residual: f64 },

    #[error("Weber case is ambiguous: both |j| and |j - 1728| are below tolerance")]
    AmbiguousCase,

    #[error("twist parameter must be non-zero")]
    ZeroTwist,

    #[error("invalid weights (d, k, l) = ({d}, {k}, {l}): need k | d, l | d, gcd(k, l) = 1")]
    InvalidWeights { d: u64, k: u64, l: u64 },

    #[error("{a} is not a unit modulo {modulus}")]
    NotUnit { a: u64, modulus: u64 },

    #[error("invalid form index ({r}, {s}, {t})")]
    InvalidIndex { r: u64, s: u64, t: u64 },

    #[error("degree {0} too small (need d >= 3)")]
    DegreeTooSmall(u64),

    #[error("gcd({n}, {q}) != 1")]
    NotCoprime { n: u64, q: u64 },

    #[error("twist q = {q} out of range 1 <= q < n = {n}")]
    OutOfRange { n: u64, q: u64 },

    #[error("continued fraction entry {0} is below 2")]
    InvalidStep(i64),

    #[error("(d, r, s) = ({d}, {r}, {s}) outside the supported range")]
    UnsupportedRange { d: u64, r: u64, s: u64 },

    #[error("flow step underflow at rho = {0}")]
    StepUnderflow(f64),

    #[error("flow did not converge after {steps} steps")]
    NonConvergence { steps: usize, trajectory: Box<Vec<FlowState>> },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Computational failures as opposed to rejected input.
    pub fn is_computational(&self) -> bool {
        matches!(
            self,
            Error::PrecisionExhausted(_)
                | Error::RoundingFailed { .. }
                | Error::AmbiguousCase
                | Error::StepUnderflow(_)
                | Error::NonConvergence { .. }
        )
    }
}
