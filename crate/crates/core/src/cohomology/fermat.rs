//! Character counts for Fermat varieties `X_d^m : x_0^d + ... + x_{m+1}^d = 0`.
//!
//! The primitive middle cohomology of `X_d^m` is spanned by characters
//! `(a_0, ..., a_{m+1})` with `1 <= a_i <= d-1` and `sum a_i = 0 (mod d)`;
//! the character lies in Hodge weight `w = (sum a_i) / d`.

use crate::error::{Error, Result};

/// Cyclic convolution power: entry `e` counts tuples of length `len` from
/// `1..d` whose sum is `e (mod d)`.
fn residue_counts(d: u64, len: u64) -> Vec<u128> {
    let d = d as usize;
    let mut counts = vec![0u128; d];
    counts[0] = 1;
    for _ in 0..len {
        let mut next = vec![0u128; d];
        for (e, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for a in 1..d {
                next[(e + a) % d] += c;
            }
        }
        counts = next;
    }
    counts
}

/// Coefficients of `(x + x^2 + ... + x^(d-1))^len`.
fn sum_counts(d: u64, len: u64) -> Vec<u128> {
    let d = d as usize;
    let mut poly = vec![1u128];
    for _ in 0..len {
        let mut next = vec![0u128; poly.len() + d - 1];
        for (e, &c) in poly.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for a in 1..d {
                next[e + a] += c;
            }
        }
        poly = next;
    }
    poly
}

/// Dimension of the primitive middle cohomology of `X_d^n`.
pub fn fermat_primitive_dim(d: u64, n: u64) -> u128 {
    assert!(d >= 2);
    residue_counts(d, n + 2)[0]
}

/// Primitive characters of `X_d^n` counted by weight `w = 1..=n+1`.
pub fn fermat_hodge_numbers(d: u64, n: u64) -> Vec<u128> {
    assert!(d >= 2);
    let poly = sum_counts(d, n + 2);
    (1..=n + 1).map(|w| poly.get((w * d) as usize).copied().unwrap_or(0)).collect()
}

/// Multiplicities, indexed by the exponent `e in Z/d` of `mu_d` acting on
/// the last coordinate, of the characters in `H^i(X_d^m)`.
///
/// `X_d^0` is `d` points permuted cyclically: one character per residue.
/// Even degrees off the middle (and the middle one when `m` is even) carry
/// one algebraic class with trivial character.
pub fn character_multiplicities(d: u64, m: u64, i: u64) -> Vec<u128> {
    let du = d as usize;
    let mut mult = vec![0u128; du];
    if i > 2 * m {
        return mult;
    }
    if m == 0 {
        mult.iter_mut().for_each(|x| *x = 1);
        return mult;
    }
    if i % 2 == 0 {
        mult[0] += 1;
    }
    if i == m {
        // Last entry a_{m+1} = e; the remaining m+1 entries sum to -e.
        let rest = residue_counts(d, m + 1);
        for (e, slot) in mult.iter_mut().enumerate().skip(1) {
            *slot += rest[(du - e) % du];
        }
    }
    mult
}

pub fn fermat_betti(d: u64, m: u64, i: u64) -> u128 {
    character_multiplicities(d, m, i).iter().sum()
}

/// `b_deg(X_d^r x X_d^s)` by Künneth.
fn product_betti(d: u64, r: u64, s: u64, deg: u64) -> u128 {
    (0..=deg).map(|i| fermat_betti(d, r, i) * fermat_betti(d, s, deg - i)).sum()
}

/// `dim H^deg(X_d^r x X_d^s)^{mu_d}` for the diagonal action on the last
/// coordinates: characters pair to zero.
fn invariant_product_dim(d: u64, r: u64, s: u64, deg: u64) -> u128 {
    let du = d as usize;
    let mut total = 0;
    for i in 0..=deg {
        let left = character_multiplicities(d, r, i);
        let right = character_multiplicities(d, s, deg - i);
        for e in 0..du {
            total += left[e] * right[(du - e) % du];
        }
    }
    total
}

/// Both sides of the inductive dimension identity for Fermat varieties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiodaKatsuraCheck {
    pub d: u64,
    pub r: u64,
    pub s: u64,
    /// `b_{r+s}(X^{r+s})`
    pub middle: u128,
    /// `sum_{j=1..r} b_{r+s-2j}(X^{r-1})`
    pub twisted_left: u128,
    /// `sum_{k=1..s} b_{r+s-2k}(X^{s-1})`
    pub twisted_right: u128,
    /// `dim H^{r+s}(X^r x X^s)^{mu_d}`
    pub invariant: u128,
    /// `b_{r+s-2}(X^{r-1} x X^{s-1})`
    pub lower_product: u128,
    pub lhs: u128,
    pub rhs: u128,
    pub holds: bool,
}

pub fn shioda_katsura_check(d: u64, r: u64, s: u64) -> Result<ShiodaKatsuraCheck> {
    if !(3..=6).contains(&d) || !(1..=2).contains(&r) || !(1..=2).contains(&s) {
        return Err(Error::UnsupportedRange { d, r, s });
    }
    let m = r + s;
    let middle = fermat_betti(d, m, m);
    let twisted_left = (1..=r).filter(|j| 2 * j <= m).map(|j| fermat_betti(d, r - 1, m - 2 * j)).sum();
    let twisted_right = (1..=s).filter(|k| 2 * k <= m).map(|k| fermat_betti(d, s - 1, m - 2 * k)).sum();
    let invariant = invariant_product_dim(d, r, s, m);
    let lower_product = product_betti(d, r - 1, s - 1, m - 2);
    let lhs = middle + twisted_left + twisted_right;
    let rhs = invariant + lower_product;
    Ok(ShiodaKatsuraCheck {
        d,
        r,
        s,
        middle,
        twisted_left,
        twisted_right,
        invariant,
        lower_product,
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}
