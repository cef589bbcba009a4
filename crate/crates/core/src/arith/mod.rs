//! Exact integer arithmetic: Euler's totient, residue systems, binary
//! quadratic forms and exact quadratic surds.

mod forms;
mod surd;

pub use forms::{class_group_forms, class_number, reduce_form, BinaryQuadraticForm};
pub use surd::{QuadraticElement, QuadraticSurd};

use num_integer::Integer;
use std::fmt;
use std::ops::Mul;

/// Euler's totient. `euler_phi(1) == 1`.
///
/// Panics if `n == 0`.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi is defined for n >= 1");
    let mut result = n;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// `x` modulo `m` in `0..m`.
#[inline]
pub fn residue(x: i64, m: u64) -> u64 {
    x.rem_euclid(m as i64) as u64
}

/// Splits `n != 0` as `f^2 * core` with `core` squarefree and carrying the sign of `n`.
pub fn squarefree_decomposition(n: i64) -> (i64, i64) {
    assert_ne!(n, 0);
    let sign = n.signum();
    let mut m = n.unsigned_abs();
    let mut core = 1u64;
    let mut f = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        f *= p.pow(e / 2);
        if e % 2 == 1 {
            core *= p;
        }
        p += 1;
    }
    core *= m;
    (f as i64, sign * core as i64)
}

/// The unit group `(Z/mZ)*` as an ordered list of representatives in `[1, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueSystem {
    modulus: u64,
    units: Vec<u64>,
}

impl ResidueSystem {
    pub fn new(modulus: u64) -> Self {
        assert!(modulus >= 1);
        let units = if modulus == 1 {
            // Z/1Z is the zero ring; its single element 0 is a unit.
            vec![0]
        } else {
            (1..modulus).filter(|a| a.gcd(&modulus) == 1).collect()
        };
        ResidueSystem { modulus, units }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn units(&self) -> &[u64] {
        &self.units
    }

    pub fn contains(&self, a: u64) -> bool {
        self.units.binary_search(&(a % self.modulus)).is_ok()
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }
}

/// A 2x2 integer matrix `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl IntMatrix {
    pub const IDENTITY: IntMatrix = IntMatrix { a: 1, b: 0, c: 0, d: 1 };
    /// `tau -> -1/tau`
    pub const S: IntMatrix = IntMatrix { a: 0, b: -1, c: 1, d: 0 };

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        IntMatrix { a, b, c, d }
    }

    /// `tau -> tau + k`
    pub const fn translation(k: i64) -> Self {
        IntMatrix { a: 1, b: k, c: 0, d: 1 }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    pub fn to_rows(self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }
}

impl Mul for IntMatrix {
    type Output = IntMatrix;

    fn mul(self, o: IntMatrix) -> IntMatrix {
        IntMatrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn phi_brute(n: u64) -> u64 {
        (1..=n).filter(|m| m.gcd(&n) == 1).count() as u64
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(4), 2);
        assert_eq!(euler_phi(12), phi_brute(12));
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn phi_matches_brute_force() {
        for n in 1..500 {
            assert_eq!(euler_phi(n), phi_brute(n), "n = {n}");
        }
    }

    #[test]
    fn phi_multiplicative_on_coprime_pairs() {
        let phi: Vec<u64> = (0..1000).map(|n| if n == 0 { 0 } else { phi_brute(n) }).collect();
        for m in 1..1000u64 {
            for n in (1..1000u64).step_by(7) {
                if m * n < 1000 && m.gcd(&n) == 1 {
                    assert_eq!(euler_phi(m * n), phi[m as usize] * phi[n as usize]);
                }
            }
        }
    }

    #[test]
    fn residue_system_sizes() {
        for m in 1..200 {
            let rs = ResidueSystem::new(m);
            assert_eq!(rs.len() as u64, euler_phi(m));
            if m > 1 {
                assert!(rs.units().iter().all(|a| a.gcd(&m) == 1 && *a < m));
            }
        }
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_decomposition(-4), (2, -1));
        assert_eq!(squarefree_decomposition(-20), (2, -5));
        assert_eq!(squarefree_decomposition(-1), (1, -1));
        assert_eq!(squarefree_decomposition(72), (6, 2));
    }

    proptest! {
        #[test]
        fn squarefree_recomposes(n in -100_000i64..100_000) {
            prop_assume!(n != 0);
            let (f, core) = squarefree_decomposition(n);
            prop_assert_eq!(f * f * core, n);
            let (g, _) = squarefree_decomposition(core);
            prop_assert_eq!(g, 1);
        }
    }
}
