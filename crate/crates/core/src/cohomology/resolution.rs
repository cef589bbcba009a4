use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};

/// A cyclic quotient singularity of type `(n, q)`, i.e. the surface
/// `z3^n = z1 z2^(n - q)`, with the Hirzebruch-Jung expansion
/// `n/q = b1 - 1/(b2 - 1/(... - 1/bs))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HJResolution {
    pub n: u64,
    pub q: u64,
    pub steps: Vec<u64>,
}

impl HJResolution {
    /// Number of exceptional curves.
    pub fn length(&self) -> usize {
        self.steps.len()
    }
}

fn check_type(n: u64, q: u64) -> Result<()> {
    if q < 1 || q >= n {
        return Err(Error::OutOfRange { n, q });
    }
    if n.gcd(&q) != 1 {
        return Err(Error::NotCoprime { n, q });
    }
    Ok(())
}

pub fn hj_expand(n: u64, q: u64) -> Result<HJResolution> {
    check_type(n, q)?;
    let mut steps = Vec::new();
    let (mut num, mut den) = (n, q);
    while den > 0 {
        let b = num.div_ceil(den);
        steps.push(b);
        (num, den) = (den, b * den - num);
    }
    Ok(HJResolution { n, q, steps })
}

/// Evaluates `[b1, ..., bs]` exactly.
pub fn hj_reconstruct(steps: &[u64]) -> Result<Ratio<u64>> {
    if steps.is_empty() {
        return Err(Error::InvalidStep(0));
    }
    if let Some(&b) = steps.iter().find(|&&b| b < 2) {
        return Err(Error::InvalidStep(b as i64));
    }
    // Backwards: x_s = b_s, x_i = b_i - 1/x_{i+1}; every x_i > 1.
    let mut num = *steps.last().unwrap();
    let mut den = 1u64;
    for &b in steps.iter().rev().skip(1) {
        (num, den) = (b * num - den, num);
    }
    Ok(Ratio::new(num, den))
}

/// The twist `q'` with `q q' = 1 (mod n)`.
pub fn dual_twist(n: u64, q: u64) -> Result<u64> {
    check_type(n, q)?;
    let inv = (1..n).find(|x| (x * q) % n == 1).expect("q is a unit");
    Ok(inv)
}

/// A curve of genus `g` along which the threefold has a transverse
/// singularity of type `(n, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SingularCurveDatum {
    pub genus: u64,
    pub n: u64,
    pub q: u64,
}

/// `(sum s_i, sum g_i s_i)`: new generators of `H^2` and of `H^3`.
pub fn resolution_contributions(curves: &[SingularCurveDatum]) -> Result<(u64, u64)> {
    let mut h2 = 0;
    let mut h3 = 0;
    for c in curves {
        let s = hj_expand(c.n, c.q)?.length() as u64;
        h2 += s;
        h3 += c.genus * s;
    }
    Ok((h2, h3))
}
