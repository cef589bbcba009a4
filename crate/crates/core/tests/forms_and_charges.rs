use attrarith::arith::{euler_phi, QuadraticElement};
use attrarith::{
    attractor_point, class_group_forms, k3_form_certificate, reduce_form, BinaryQuadraticForm, ChargeData, GramMatrix,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_k3_input(rng: &mut ChaCha8Rng) -> (Vec<i64>, Vec<i64>, GramMatrix) {
    loop {
        let n = rng.gen_range(2..=4);
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                let v = rng.gen_range(-4..=4);
                rows[i][j] = v;
                rows[j][i] = v;
            }
        }
        let gram = GramMatrix::new(rows).unwrap();
        let p: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let q: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let p2 = gram.pairing(&p, &p);
        let q2 = gram.pairing(&q, &q);
        let pq = gram.pairing(&p, &q);
        if p2 > 0 && pq * pq - p2 * q2 < 0 {
            return (p, q, gram);
        }
    }
}

#[test]
fn k3_certificates_hold_for_random_lattices() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b33);
    for _ in 0..100 {
        let (p, q, gram) = random_k3_input(&mut rng);
        let cert = k3_form_certificate(&p, &q, &gram).unwrap();
        assert!(cert.is_isotropic(), "isotropy failed for p={p:?} q={q:?} G={:?}", gram.rows());
        assert!(cert.is_positive(), "positivity failed for p={p:?} q={q:?} G={:?}", gram.rows());
    }
}

#[test]
fn attractor_root_equation_on_charge_grid() {
    for p2 in 1..=20i64 {
        for q2 in -20..=20i64 {
            for pq in -20..=20i64 {
                let c = ChargeData::new(p2, q2, pq);
                let Ok(pt) = attractor_point(&c) else { continue };
                let tau = pt.tau.to_element();
                let lhs = &(&(&tau * &tau).scale(p2) - &tau.scale(2 * pq)) + &QuadraticElement::from_integer(tau.d, q2);
                assert!(lhs.is_zero());
                assert!(pt.tau.is_upper_half_plane());
                assert_eq!(pt.form.discriminant(), 4 * pt.disc);
                for lambda in 2..=3 {
                    assert_eq!(attractor_point(&c.rescaled(lambda)).unwrap().tau, pt.tau);
                }
            }
        }
    }
}

#[test]
fn phi_multiplicative_below_1000() {
    let brute = |n: u64| (1..=n).filter(|&k| num_integer::Integer::gcd(&k, &n) == 1).count() as u64;
    let phi: Vec<u64> = (0..1000).map(|n| if n == 0 { 0 } else { euler_phi(n) }).collect();
    for n in 1..1000 {
        assert_eq!(phi[n as usize], brute(n));
    }
    for m in 1..1000u64 {
        for n in 1..(1000 / m).max(1) {
            if m * n < 1000 && num_integer::Integer::gcd(&m, &n) == 1 {
                assert_eq!(phi[(m * n) as usize], phi[m as usize] * phi[n as usize]);
            }
        }
    }
}

#[test]
fn class_forms_have_distinct_roots_after_reduction() {
    for d in (1..=2000i64).map(|n| -n).filter(|d| d.rem_euclid(4) <= 1) {
        let forms = class_group_forms(d).unwrap();
        let mut roots = Vec::new();
        for f in &forms {
            assert!(f.is_reduced());
            assert_eq!(f.discriminant(), d);
            let (g, _) = reduce_form(*f).unwrap();
            roots.push(g.upper_root().unwrap());
        }
        let n = roots.len();
        roots.sort_by_key(|r| (r.num_rational(), r.num_radical(), r.den(), r.disc()));
        roots.dedup();
        assert_eq!(roots.len(), n, "disc {d}");
    }
}

proptest! {
    #[test]
    fn reduction_is_idempotent_and_unimodular(a in 1i64..200, b in -300i64..300, c0 in 1i64..200) {
        // Make the form positive definite by raising c if needed.
        let c = c0.max((b * b) / (4 * a) + 1);
        let f = BinaryQuadraticForm::new(a, b, c);
        let (g, m) = reduce_form(f).unwrap();
        prop_assert_eq!(m.det(), 1);
        prop_assert_eq!(f.transform(&m), g);
        prop_assert!(g.is_reduced());
        let (h, m2) = reduce_form(g).unwrap();
        prop_assert_eq!(h, g);
        prop_assert!(m2.is_identity());
    }
}
