//! Charge data, the exact attractor point of the elliptic modulus and the
//! K3 two-form certificate.

use num_bigint::BigInt;
use num_rational::BigRational;
use rug::Float;

use crate::arith::{class_number, reduce_form, BinaryQuadraticForm, QuadraticElement, QuadraticSurd};
use crate::error::{Error, Result};

/// A symmetric integral Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    dim: usize,
    entries: Vec<i64>,
}

impl GramMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InconsistentCharge("Gram matrix must be square and non-empty".into()));
        }
        for i in 0..dim {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::InconsistentCharge(format!("Gram matrix not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(GramMatrix { dim, entries: rows.into_iter().flatten().collect() })
    }

    pub fn diagonal(diag: &[i64]) -> Self {
        let dim = diag.len();
        let mut entries = vec![0; dim * dim];
        for (i, d) in diag.iter().enumerate() {
            entries[i * dim + i] = *d;
        }
        GramMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    /// `u^T G v`
    pub fn pairing(&self, u: &[i64], v: &[i64]) -> i64 {
        let mut acc = 0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc += u[i] * self.get(i, j) * v[j];
            }
        }
        acc
    }

    fn pairing_field(&self, u: &[QuadraticElement], v: &[QuadraticElement], d: i64) -> QuadraticElement {
        let mut acc = QuadraticElement::from_integer(d, 0);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let g = self.get(i, j);
                if g != 0 {
                    acc = &acc + &(&u[i] * &v[j]).scale(g);
                }
            }
        }
        acc
    }
}

/// Lattice vectors the invariants were computed from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeProvenance {
    pub p: Vec<i64>,
    pub q: Vec<i64>,
    pub gram: GramMatrix,
}

/// The invariants `(p.p, q.q, p.q)` of a BPS charge `(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeData {
    pub p2: i64,
    pub q2: i64,
    pub pq: i64,
    pub provenance: Option<ChargeProvenance>,
}

impl ChargeData {
    pub fn new(p2: i64, q2: i64, pq: i64) -> Self {
        ChargeData { p2, q2, pq, provenance: None }
    }

    pub fn from_vectors(p: Vec<i64>, q: Vec<i64>, gram: GramMatrix) -> Result<Self> {
        if p.len() != gram.dim() || q.len() != gram.dim() {
            return Err(Error::InconsistentCharge(format!(
                "vectors of length {} and {} against a {}x{} Gram matrix",
                p.len(),
                q.len(),
                gram.dim(),
                gram.dim()
            )));
        }
        Ok(ChargeData {
            p2: gram.pairing(&p, &p),
            q2: gram.pairing(&q, &q),
            pq: gram.pairing(&p, &q),
            provenance: Some(ChargeProvenance { p, q, gram }),
        })
    }

    /// `(p, q) -> (lambda p, lambda q)`
    pub fn rescaled(&self, lambda: i64) -> Self {
        let l2 = lambda * lambda;
        ChargeData {
            p2: self.p2 * l2,
            q2: self.q2 * l2,
            pq: self.pq * l2,
            provenance: self.provenance.as_ref().map(|pv| ChargeProvenance {
                p: pv.p.iter().map(|x| x * lambda).collect(),
                q: pv.q.iter().map(|x| x * lambda).collect(),
                gram: pv.gram.clone(),
            }),
        }
    }

    /// Checks the stored invariants against the provenance vectors, if any.
    pub fn is_consistent(&self) -> bool {
        match &self.provenance {
            None => true,
            Some(pv) => {
                pv.gram.pairing(&pv.p, &pv.p) == self.p2
                    && pv.gram.pairing(&pv.q, &pv.q) == self.q2
                    && pv.gram.pairing(&pv.p, &pv.q) == self.pq
            }
        }
    }

    /// The form `p2 t^2 - 2 pq t + q2` whose upper root is the attractor point.
    pub fn associated_form(&self) -> BinaryQuadraticForm {
        BinaryQuadraticForm::new(self.p2, -2 * self.pq, self.q2)
    }

    pub(crate) fn check_attractor(&self) -> Result<i64> {
        if self.p2 <= 0 {
            return Err(Error::DegenerateCharge(self.p2));
        }
        let d = discriminant(self);
        if d >= 0 {
            return Err(Error::NotAttractor(d));
        }
        Ok(d)
    }
}

/// `D = (p.q)^2 - p^2 q^2`
pub fn discriminant(c: &ChargeData) -> i64 {
    c.pq * c.pq - c.p2 * c.q2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttractorPoint {
    /// `(pq + sqrt(D)) / p2` in the upper half-plane.
    pub tau: QuadraticSurd,
    /// The charge discriminant `D`, not the form discriminant `4D`.
    pub disc: i64,
    /// Reduced representative of the associated form.
    pub form: BinaryQuadraticForm,
    pub class_number: usize,
}

impl AttractorPoint {
    /// Exact check of `p2 tau^2 - 2 pq tau + q2 = 0`.
    pub fn satisfies_charge_equation(&self, c: &ChargeData) -> bool {
        let t = self.tau.to_element();
        let d = t.d;
        let quad = &(&(&t * &t).scale(c.p2) - &t.scale(2 * c.pq)) + &QuadraticElement::from_integer(d, c.q2);
        quad.is_zero()
    }
}

pub fn attractor_point(c: &ChargeData) -> Result<AttractorPoint> {
    let d = c.check_attractor()?;
    let tau = QuadraticSurd::new(c.pq, 1, c.p2, d);
    let (form, _) = reduce_form(c.associated_form())?;
    let class_number = class_number(4 * d)?;
    Ok(AttractorPoint { tau, disc: d, form, class_number })
}

/// `sqrt(|D|)`, the minimum of `|Z|^2` over the upper half-plane.
pub fn entropy_invariant(c: &ChargeData, prec: u32) -> Result<Float> {
    let d = c.check_attractor()?;
    Ok(Float::with_val(prec, -d).sqrt())
}

/// Exact isotropy and positivity of the K3 two-form `q - conj(tau) p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K3Certificate {
    pub charge: ChargeData,
    pub tau: QuadraticSurd,
    /// `Omega^T G Omega`
    pub isotropy: QuadraticElement,
    /// `Omega^T G conj(Omega)`
    pub positivity: QuadraticElement,
    /// `2 |D| / p2`, the expected positivity value.
    pub expected_positivity: BigRational,
}

impl K3Certificate {
    pub fn is_isotropic(&self) -> bool {
        self.isotropy.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.positivity.is_positive_rational() && self.positivity.re == self.expected_positivity
    }

    pub fn holds(&self) -> bool {
        self.is_isotropic() && self.is_positive()
    }
}

pub fn k3_form_certificate(p: &[i64], q: &[i64], gram: &GramMatrix) -> Result<K3Certificate> {
    let charge = ChargeData::from_vectors(p.to_vec(), q.to_vec(), gram.clone())?;
    let point = attractor_point(&charge)?;
    let tau = point.tau.to_element();
    let d = tau.d;
    let tau_bar = tau.conj();
    let omega: Vec<QuadraticElement> =
        p.iter().zip(q).map(|(&pi, &qi)| &QuadraticElement::from_integer(d, qi) - &tau_bar.scale(pi)).collect();
    let omega_bar: Vec<QuadraticElement> = omega.iter().map(|w| w.conj()).collect();
    let isotropy = gram.pairing_field(&omega, &omega, d);
    let positivity = gram.pairing_field(&omega, &omega_bar, d);
    let expected_positivity = BigRational::new(BigInt::from(-2 * point.disc), BigInt::from(charge.p2));
    Ok(K3Certificate { charge, tau: point.tau, isotropy, positivity, expected_positivity })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&ChargeData::new(1, 1, 0)), -1);
        assert_eq!(discriminant(&ChargeData::new(2, 3, 1)), -5);
        assert_eq!(discriminant(&ChargeData::new(1, 1, 2)), 3);
    }

    #[test]
    fn attractor_examples() {
        let c = ChargeData::new(1, 1, 0);
        let a = attractor_point(&c).unwrap();
        assert_eq!(a.tau, QuadraticSurd::new(0, 1, 1, -1));
        assert_eq!(a.tau.to_string(), "(0 + 1·√−1)/1");
        assert_eq!(a.form, BinaryQuadraticForm::new(1, 0, 1));
        assert_eq!(a.class_number, 1);

        let c = ChargeData::new(2, 3, 1);
        let a = attractor_point(&c).unwrap();
        assert_eq!(a.tau, QuadraticSurd::new(1, 1, 2, -5));
        assert_eq!(a.form, BinaryQuadraticForm::new(2, 2, 3));
        assert_eq!(a.class_number, 2);
        assert!(a.satisfies_charge_equation(&c));

        let c = ChargeData::new(1, 2, 1);
        let a = attractor_point(&c).unwrap();
        assert_eq!(a.tau, QuadraticSurd::new(1, 1, 1, -1));
        assert_eq!(a.disc, -1);
        assert_eq!(a.form, BinaryQuadraticForm::new(1, 0, 1));
    }

    #[test]
    fn attractor_errors() {
        assert!(matches!(attractor_point(&ChargeData::new(1, 1, 2)), Err(Error::NotAttractor(3))));
        assert!(matches!(attractor_point(&ChargeData::new(0, 1, 0)), Err(Error::DegenerateCharge(0))));
        assert!(matches!(attractor_point(&ChargeData::new(-2, -3, 0)), Err(Error::DegenerateCharge(-2))));
        assert!(matches!(entropy_invariant(&ChargeData::new(1, 1, 2), 128), Err(Error::NotAttractor(_))));
    }

    #[test]
    fn entropy_examples() {
        let e = entropy_invariant(&ChargeData::new(1, 1, 0), 128).unwrap();
        assert_eq!(e, 1);
        let e = entropy_invariant(&ChargeData::new(2, 3, 1), 128).unwrap();
        assert!((e - 2.236_067_977_499_79_f64).abs() < 1e-14);
    }

    #[test]
    fn charge_grid_invariants() {
        for p2 in 1..=20i64 {
            for q2 in -20..=20i64 {
                for pq in -20..=20i64 {
                    let c = ChargeData::new(p2, q2, pq);
                    let Ok(a) = attractor_point(&c) else { continue };
                    assert!(a.satisfies_charge_equation(&c));
                    assert!(a.tau.is_upper_half_plane());
                    assert_eq!(c.associated_form().discriminant(), 4 * discriminant(&c));
                    assert_eq!(a.form.discriminant(), 4 * a.disc);
                    for lambda in 2..=3 {
                        let b = attractor_point(&c.rescaled(lambda)).unwrap();
                        assert_eq!(b.tau, a.tau);
                    }
                }
            }
        }
    }

    #[test]
    fn k3_certificate_examples() {
        let g = GramMatrix::diagonal(&[2, 2]);
        let cert = k3_form_certificate(&[1, 0], &[0, 1], &g).unwrap();
        assert_eq!(cert.tau, QuadraticSurd::new(0, 1, 1, -1));
        assert!(cert.is_isotropic());
        assert_eq!(cert.positivity, QuadraticElement::from_integer(-1, 4));
        assert!(cert.holds());

        let g = GramMatrix::diagonal(&[2, -2]);
        assert!(matches!(k3_form_certificate(&[1, 0], &[1, 1], &g), Err(Error::NotAttractor(4))));

        let g = GramMatrix::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(matches!(k3_form_certificate(&[1, 1], &[1, -1], &g), Err(Error::NotAttractor(4))));
    }

    #[test]
    fn gram_validation() {
        assert!(GramMatrix::new(vec![vec![1, 2], vec![3, 1]]).is_err());
        assert!(GramMatrix::new(vec![vec![1, 2]]).is_err());
        let g = GramMatrix::diagonal(&[1, 1]);
        assert!(ChargeData::from_vectors(vec![1], vec![0, 1], g).is_err());
    }
}
