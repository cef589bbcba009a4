use num_integer::Integer;
use std::fmt;

use super::{IntMatrix, QuadraticSurd};
use crate::error::{Error, Result};

/// The binary quadratic form `a x^2 + b xy + c y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryQuadraticForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl BinaryQuadraticForm {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        BinaryQuadraticForm { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_positive_definite(&self) -> bool {
        self.discriminant() < 0 && self.a > 0
    }

    /// `|b| <= a <= c`, with `b >= 0` whenever `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        if !(b.abs() <= a && a <= c) {
            return false;
        }
        if (b.abs() == a || a == c) && b < 0 {
            return false;
        }
        true
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    pub fn evaluate(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// The form `v -> self(m v)`.
    pub fn transform(&self, m: &IntMatrix) -> BinaryQuadraticForm {
        let (a, b, c) = (self.a, self.b, self.c);
        BinaryQuadraticForm {
            a: self.evaluate(m.a, m.c),
            b: 2 * a * m.a * m.b + b * (m.a * m.d + m.b * m.c) + 2 * c * m.c * m.d,
            c: self.evaluate(m.b, m.d),
        }
    }

    /// Root of `a t^2 + b t + c` in the upper half-plane, `(-b + sqrt(disc)) / 2a`.
    pub fn upper_root(&self) -> Result<QuadraticSurd> {
        self.check_positive_definite()?;
        Ok(QuadraticSurd::new(-self.b, 1, 2 * self.a, self.discriminant()))
    }

    fn check_positive_definite(&self) -> Result<()> {
        if self.is_positive_definite() {
            Ok(())
        } else {
            Err(Error::NotPositiveDefinite { a: self.a, b: self.b, c: self.c })
        }
    }
}

impl fmt::Display for BinaryQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Gauss reduction. Returns the reduced form `g` and a determinant-one
/// matrix `m` with `g(v) = f(m v)`.
pub fn reduce_form(f: BinaryQuadraticForm) -> Result<(BinaryQuadraticForm, IntMatrix)> {
    f.check_positive_definite()?;
    let mut g = f;
    let mut m = IntMatrix::IDENTITY;
    loop {
        // Bring b into (-a, a].
        if !(-g.a < g.b && g.b <= g.a) {
            let k = Integer::div_floor(&(g.a - g.b), &(2 * g.a));
            let t = IntMatrix::translation(k);
            g = g.transform(&t);
            m = m * t;
        }
        if g.a > g.c || (g.a == g.c && g.b < 0) {
            g = g.transform(&IntMatrix::S);
            m = m * IntMatrix::S;
        } else {
            break;
        }
    }
    debug_assert!(g.is_reduced());
    Ok((g, m))
}

/// All primitive reduced positive-definite forms of discriminant `disc`,
/// sorted by `(a, b)`. The length is the class number `h(disc)`.
pub fn class_group_forms(disc: i64) -> Result<Vec<BinaryQuadraticForm>> {
    if disc >= 0 || !matches!(disc.rem_euclid(4), 0 | 1) {
        return Err(Error::InvalidDiscriminant(disc));
    }
    let n = -disc;
    let mut forms = Vec::new();
    // a <= sqrt(|D| / 3)
    let mut a = 1i64;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let f = BinaryQuadraticForm::new(a, b, c);
            if f.is_reduced() && f.is_primitive() {
                forms.push(f);
            }
        }
        a += 1;
    }
    forms.sort();
    Ok(forms)
}

pub fn class_number(disc: i64) -> Result<usize> {
    class_group_forms(disc).map(|v| v.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(a: i64, b: i64, c: i64) -> BinaryQuadraticForm {
        BinaryQuadraticForm::new(a, b, c)
    }

    /// Exhaustive search for a determinant-one matrix with small entries
    /// taking `from` to `to`.
    fn equivalent_by_search(from: &BinaryQuadraticForm, to: &BinaryQuadraticForm, bound: i64) -> bool {
        for p in -bound..=bound {
            for r in -bound..=bound {
                if from.evaluate(p, r) != to.a {
                    continue;
                }
                for q in -bound..=bound {
                    for s in -bound..=bound {
                        let m = IntMatrix::new(p, q, r, s);
                        if m.det() == 1 && from.transform(&m) == *to {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn reduce_examples() {
        let (g, m) = reduce_form(f(1, 0, 1)).unwrap();
        assert_eq!(g, f(1, 0, 1));
        assert!(m.is_identity());

        let (g, m) = reduce_form(f(2, -2, 3)).unwrap();
        assert_eq!(g, f(2, 2, 3));
        assert!(equivalent_by_search(&f(2, -2, 3), &f(2, 2, 3), 3));
        assert_eq!(f(2, -2, 3).transform(&m), g);

        let (g, m) = reduce_form(f(3, 10, 9)).unwrap();
        assert_eq!(g, f(1, 0, 2));
        assert_eq!(f(3, 10, 9).transform(&m), g);
    }

    #[test]
    fn reduce_rejects_indefinite() {
        assert!(matches!(reduce_form(f(1, 3, 1)), Err(Error::NotPositiveDefinite { .. })));
        assert!(matches!(reduce_form(f(-1, 0, -1)), Err(Error::NotPositiveDefinite { .. })));
        assert!(matches!(reduce_form(f(0, 1, 1)), Err(Error::NotPositiveDefinite { .. })));
    }

    #[test]
    fn class_group_examples() {
        assert_eq!(class_group_forms(-4).unwrap(), vec![f(1, 0, 1)]);
        assert_eq!(class_group_forms(-20).unwrap(), vec![f(1, 0, 5), f(2, 2, 3)]);
        assert_eq!(class_group_forms(-23).unwrap(), vec![f(1, 1, 6), f(2, -1, 3), f(2, 1, 3)]);
        // -8: exhaustive scan gives only (1, 0, 2)
        assert_eq!(class_group_forms(-8).unwrap(), vec![f(1, 0, 2)]);
    }

    #[test]
    fn invalid_discriminants() {
        for d in [0, 5, -1, -2, -5, -6] {
            assert!(matches!(class_group_forms(d), Err(Error::InvalidDiscriminant(_))), "{d}");
        }
    }

    #[test]
    fn class_forms_are_reduced_and_distinct() {
        for n in 3..=2000i64 {
            let d = -n;
            if !matches!(d.rem_euclid(4), 0 | 1) {
                continue;
            }
            let forms = class_group_forms(d).unwrap();
            assert!(!forms.is_empty());
            let mut roots = Vec::new();
            for g in &forms {
                assert!(g.is_reduced() && g.discriminant() == d);
                assert_eq!(reduce_form(*g).unwrap().0, *g);
                roots.push(g.upper_root().unwrap());
            }
            // distinct fundamental-domain roots, hence inequivalent forms
            for i in 0..roots.len() {
                for j in i + 1..roots.len() {
                    assert_ne!(roots[i], roots[j]);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn reduction_is_sound(a in 1i64..60, b in -80i64..80, c in 1i64..60) {
            let g0 = f(a, b, c);
            prop_assume!(g0.is_positive_definite());
            let (g, m) = reduce_form(g0).unwrap();
            prop_assert_eq!(m.det(), 1);
            prop_assert_eq!(g0.transform(&m), g);
            prop_assert_eq!(g.discriminant(), g0.discriminant());
            prop_assert!(g.is_reduced());
            let (g2, m2) = reduce_form(g).unwrap();
            prop_assert_eq!(g2, g);
            prop_assert!(m2.is_identity());
        }
    }
}
