//! Holomorphic one-forms on weighted Brieskorn-Pham curves
//! `x^d + y^(d/k) + z^(d/l) = 0` in `P(1,k,l)` and the splitting of their
//! Jacobians into abelian factors with complex multiplication.
//!
//! Residues `<x>_m` are least positive residues. For an index `(r, s, t)`
//! with `g = gcd(r, ks, lt, d) > 1` the CM set is computed on the reduced
//! triple `(r/g, ks/g, lt/g)` modulo the level `d/g`, acting by units
//! modulo the level.

use num_integer::Integer;
use std::collections::BTreeSet;
use std::fmt;

use crate::arith::{euler_phi, residue, ResidueSystem};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CurveSignature {
    pub d: u64,
    pub k: u64,
    pub l: u64,
}

impl CurveSignature {
    pub fn new(d: u64, k: u64, l: u64) -> Result<Self> {
        let valid = d >= 1 && k >= 1 && l >= 1 && d % k == 0 && d % l == 0 && k.gcd(&l) == 1;
        if valid {
            Ok(CurveSignature { d, k, l })
        } else {
            Err(Error::InvalidWeights { d, k, l })
        }
    }

    /// Exponent of `y`, `d/k`.
    pub fn y_exponent(&self) -> u64 {
        self.d / self.k
    }

    /// Exponent of `z`, `d/l`.
    pub fn z_exponent(&self) -> u64 {
        self.d / self.l
    }

    /// Whether `idx` satisfies the ranges and `r + ks + lt = 0 (mod d)`.
    pub fn contains(&self, idx: &FormIndex) -> bool {
        (1..self.d).contains(&idx.r)
            && (1..self.y_exponent()).contains(&idx.s)
            && (1..self.z_exponent()).contains(&idx.t)
            && (idx.r + self.k * idx.s + self.l * idx.t) % self.d == 0
    }

    /// `gcd(r, ks, lt, d)`
    pub fn content(&self, idx: &FormIndex) -> u64 {
        idx.r.gcd(&(self.k * idx.s)).gcd(&(self.l * idx.t)).gcd(&self.d)
    }

    /// `d / gcd(r, ks, lt, d)`: the cyclotomic level of the factor through `idx`.
    pub fn level(&self, idx: &FormIndex) -> u64 {
        self.d / self.content(idx)
    }
}

impl fmt::Display for CurveSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P(1,{},{})[{}]", self.k, self.l, self.d)
    }
}

/// Index `(r, s, t)` of the one-form `y^(s-1) z^(t - d/l) dy`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormIndex {
    pub r: u64,
    pub s: u64,
    pub t: u64,
}

impl FormIndex {
    pub const fn new(r: u64, s: u64, t: u64) -> Self {
        FormIndex { r, s, t }
    }
}

impl fmt::Display for FormIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r, self.s, self.t)
    }
}

/// All indices in lexicographic order.
pub fn enumerate_forms(sig: &CurveSignature) -> Vec<FormIndex> {
    let mut out = Vec::new();
    for r in 1..sig.d {
        for s in 1..sig.y_exponent() {
            for t in 1..sig.z_exponent() {
                let idx = FormIndex::new(r, s, t);
                if (r + sig.k * s + sig.l * t) % sig.d == 0 {
                    out.push(idx);
                }
            }
        }
    }
    out
}

pub fn genus(sig: &CurveSignature) -> u64 {
    enumerate_forms(sig).len() as u64 / 2
}

fn check_index(sig: &CurveSignature, idx: &FormIndex) -> Result<()> {
    if sig.contains(idx) {
        Ok(())
    } else {
        Err(Error::InvalidIndex { r: idx.r, s: idx.s, t: idx.t })
    }
}

/// `a . (r, s, t) = (<ar>_d, <as>_{d/k}, <at>_{d/l})`.
pub fn star_action(a: u64, idx: &FormIndex, sig: &CurveSignature) -> Result<FormIndex> {
    if a.gcd(&sig.d) != 1 {
        return Err(Error::NotUnit { a, modulus: sig.d });
    }
    check_index(sig, idx)?;
    Ok(FormIndex::new((a * idx.r) % sig.d, (a * idx.s) % sig.y_exponent(), (a * idx.t) % sig.z_exponent()))
}

/// The CM type attached to one index, as units modulo its level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmSet {
    pub level: u64,
    /// `(r/g, ks/g, lt/g)` modulo `level`.
    pub reduced_triple: (u64, u64, u64),
    pub units: Vec<u64>,
}

/// `H = { a in (Z/level)* : <a r'> + <a k s'> + <a l t'> = level }` on the reduced triple.
pub fn cm_set(idx: &FormIndex, sig: &CurveSignature) -> Result<CmSet> {
    check_index(sig, idx)?;
    let g = sig.content(idx);
    let level = sig.d / g;
    let triple = (idx.r / g, sig.k * idx.s / g, sig.l * idx.t / g);
    let units = ResidueSystem::new(level)
        .units()
        .iter()
        .copied()
        .filter(|&a| {
            let sum = (a * triple.0) % level + (a * triple.1) % level + (a * triple.2) % level;
            sum == level
        })
        .collect();
    Ok(CmSet { level, reduced_triple: triple, units })
}

/// One abelian factor of the Jacobian: an orbit of `(Z/dZ)*` on the indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianFactor {
    /// Sorted; the first element is the canonical key.
    pub orbit: Vec<FormIndex>,
    pub level: u64,
    pub dimension: u64,
    pub cm_set: CmSet,
}

impl AbelianFactor {
    pub fn key(&self) -> &FormIndex {
        &self.orbit[0]
    }
}

/// Orbits of `(Z/dZ)*`, keyed by their smallest member, in key order.
pub fn decompose_jacobian(sig: &CurveSignature) -> Vec<AbelianFactor> {
    let units = ResidueSystem::new(sig.d);
    let mut seen = BTreeSet::new();
    let mut factors = Vec::new();
    for idx in enumerate_forms(sig) {
        if seen.contains(&idx) {
            continue;
        }
        let orbit: BTreeSet<FormIndex> =
            units.units().iter().map(|&a| star_action(a, &idx, sig).expect("valid unit and index")).collect();
        seen.extend(orbit.iter().copied());
        let orbit: Vec<FormIndex> = orbit.into_iter().collect();
        let key = orbit[0];
        let level = sig.level(&key);
        let cm = cm_set(&key, sig).expect("enumerated index");
        factors.push(AbelianFactor { orbit, level, dimension: euler_phi(level) / 2, cm_set: cm });
    }
    factors
}

/// `(r, s, t)` with `0 < r, s, t < d` and `r + s + t = 0 (mod d)`.
pub fn projective_basis(d: u64) -> Result<Vec<(u64, u64, u64)>> {
    if d < 3 {
        return Err(Error::DegreeTooSmall(d));
    }
    let mut out = Vec::with_capacity(((d - 1) * (d - 2)) as usize);
    for r in 1..d {
        for s in 1..d {
            let t = residue(-((r + s) as i64), d);
            if t != 0 {
                out.push((r, s, t));
            }
        }
    }
    Ok(out)
}

/// Forms of `P_2[d]` invariant under the weight actions (`s = 0 mod k`,
/// `t = 0 mod l`), relabelled as `(r, s/k, t/l)`, in lexicographic order.
pub fn descended_forms(sig: &CurveSignature) -> Result<Vec<FormIndex>> {
    if sig.d < 3 {
        // P_2[d] has no one-forms; neither does the quotient.
        return Ok(Vec::new());
    }
    let mut out: Vec<FormIndex> = projective_basis(sig.d)?
        .into_iter()
        .filter(|&(_, s, t)| s % sig.k == 0 && t % sig.l == 0)
        .map(|(r, s, t)| FormIndex::new(r, s / sig.k, t / sig.l))
        .collect();
    out.sort();
    Ok(out)
}

pub fn descent_count(sig: &CurveSignature) -> Result<u64> {
    descended_forms(sig).map(|v| v.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(d: u64, k: u64, l: u64) -> CurveSignature {
        CurveSignature::new(d, k, l).unwrap()
    }

    fn idx(r: u64, s: u64, t: u64) -> FormIndex {
        FormIndex::new(r, s, t)
    }

    #[test]
    fn signature_validation() {
        assert!(CurveSignature::new(4, 3, 1).is_err());
        assert!(CurveSignature::new(6, 2, 2).is_err());
        assert!(CurveSignature::new(6, 2, 3).is_ok());
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_forms(&sig(3, 1, 1)), vec![idx(1, 1, 1), idx(2, 2, 2)]);
        assert_eq!(
            enumerate_forms(&sig(4, 1, 1)),
            vec![idx(1, 1, 2), idx(1, 2, 1), idx(2, 1, 1), idx(2, 3, 3), idx(3, 2, 3), idx(3, 3, 2)]
        );
        assert_eq!(enumerate_forms(&sig(4, 1, 2)), vec![idx(1, 1, 1), idx(3, 3, 1)]);
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus(&sig(3, 1, 1)), 1);
        assert_eq!(genus(&sig(4, 1, 1)), 3);
        assert_eq!(genus(&sig(4, 1, 2)), 1);
        for d in 3..=12 {
            assert_eq!(genus(&sig(d, 1, 1)), (d - 1) * (d - 2) / 2);
        }
    }

    #[test]
    fn star_action_examples() {
        let s = sig(4, 1, 1);
        for i in enumerate_forms(&s) {
            assert_eq!(star_action(1, &i, &s).unwrap(), i);
        }
        assert_eq!(star_action(3, &idx(1, 1, 2), &s).unwrap(), idx(3, 3, 2));
        assert_eq!(star_action(3, &idx(1, 1, 1), &sig(4, 1, 2)).unwrap(), idx(3, 3, 1));
        assert!(matches!(star_action(2, &idx(1, 1, 2), &s), Err(Error::NotUnit { .. })));
        assert!(matches!(star_action(1, &idx(1, 1, 1), &s), Err(Error::InvalidIndex { .. })));
    }

    #[test]
    fn decomposition_examples() {
        let f = decompose_jacobian(&sig(4, 1, 1));
        assert_eq!(f.len(), 3);
        let orbits: Vec<_> = f.iter().map(|x| x.orbit.clone()).collect();
        assert_eq!(
            orbits,
            vec![vec![idx(1, 1, 2), idx(3, 3, 2)], vec![idx(1, 2, 1), idx(3, 2, 3)], vec![idx(2, 1, 1), idx(2, 3, 3)],]
        );
        assert!(f.iter().all(|x| x.dimension == 1 && x.level == 4));

        let f = decompose_jacobian(&sig(3, 1, 1));
        assert_eq!(f.len(), 1);
        assert_eq!((f[0].dimension, f[0].level), (1, 3));

        let f = decompose_jacobian(&sig(4, 1, 2));
        assert_eq!(f.len(), 1);
        assert_eq!((f[0].dimension, f[0].level), (1, 4));
    }

    #[test]
    fn cm_set_examples() {
        assert_eq!(cm_set(&idx(1, 1, 1), &sig(3, 1, 1)).unwrap().units, vec![1]);
        assert_eq!(cm_set(&idx(1, 1, 2), &sig(4, 1, 1)).unwrap().units, vec![1]);
        assert_eq!(cm_set(&idx(1, 1, 1), &sig(4, 1, 2)).unwrap().units, vec![1]);
        assert!(matches!(cm_set(&idx(1, 1, 1), &sig(4, 1, 1)), Err(Error::InvalidIndex { .. })));
    }

    #[test]
    fn non_primitive_index_uses_level() {
        // (2,1,1) on the Fermat quartic: gcd(2,1,1,4) = 1, but (2,2,2) on the
        // sextic has content 2 and level 3.
        let s = sig(6, 1, 1);
        let cm = cm_set(&idx(2, 2, 2), &s).unwrap();
        assert_eq!(cm.level, 3);
        assert_eq!(cm.reduced_triple, (1, 1, 1));
        assert_eq!(cm.units, vec![1]);
    }

    #[test]
    fn projective_basis_counts() {
        assert_eq!(projective_basis(3).unwrap(), vec![(1, 1, 1), (2, 2, 2)]);
        assert_eq!(projective_basis(4).unwrap().len(), 6);
        assert_eq!(projective_basis(5).unwrap().len(), 12);
        assert!(matches!(projective_basis(2), Err(Error::DegreeTooSmall(2))));
    }

    #[test]
    fn descent_examples() {
        let s = sig(4, 1, 2);
        assert_eq!(descent_count(&s).unwrap(), 2);
        assert_eq!(descended_forms(&s).unwrap(), vec![idx(1, 1, 1), idx(3, 3, 1)]);
        assert_eq!(descent_count(&sig(4, 1, 1)).unwrap(), 6);
        let s = sig(6, 2, 3);
        assert_eq!(descent_count(&s).unwrap(), enumerate_forms(&s).len() as u64);
    }
}
