use attrarith::modular::{delta_series, delta_value, discriminant_identity, mobius};
use attrarith::numeric::pow2;
use attrarith::{
    class_group_forms, hilbert_class_polynomial, j_value, model_from_tau, torsion_points, twist_model, weber_function,
    BigComplex, IntMatrix,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;

const PREC: u32 = 256;

fn random_tau(rng: &mut ChaCha8Rng) -> BigComplex {
    BigComplex::from_f64(PREC, rng.gen_range(-1.0..1.0), rng.gen_range(0.6..2.0))
}

fn random_sl2(rng: &mut ChaCha8Rng) -> IntMatrix {
    loop {
        let m = IntMatrix::new(
            rng.gen_range(-10..=10),
            rng.gen_range(-10..=10),
            rng.gen_range(-10..=10),
            rng.gen_range(-10..=10),
        );
        if m.det() == 1 {
            return m;
        }
    }
}

/// Pairs every value of `a` with a distinct closest value of `b`; returns the worst distance.
fn multiset_distance(a: &[BigComplex], b: &[BigComplex]) -> Float {
    assert_eq!(a.len(), b.len());
    let mut used = vec![false; b.len()];
    let mut worst = Float::new(64);
    for x in a {
        let (i, d) = b
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, y)| (i, x.dist(y)))
            .min_by(|p, q| p.1.partial_cmp(&q.1).unwrap())
            .unwrap();
        used[i] = true;
        if d > worst {
            worst = d;
        }
    }
    worst
}

#[test]
fn j_is_modular_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let tol = pow2(64, -(PREC as i32) / 2 + 8);
    for _ in 0..50 {
        let tau = random_tau(&mut rng);
        let m = random_sl2(&mut rng);
        let j1 = j_value(&tau, PREC).unwrap();
        let j2 = j_value(&mobius(&m, &tau), PREC).unwrap();
        assert!(j1.dist(&j2) < tol, "tau={:?} m={m}", tau.to_f64_pair());
    }
}

#[test]
fn discriminant_identity_holds_exactly() {
    let (diff, _) = discriminant_identity(400);
    let delta = delta_series(400);
    for n in 0..400 {
        assert_eq!(diff.coefficient(n), &(delta.coefficient(n).clone() * 1728u32), "n={n}");
    }
}

#[test]
fn delta_never_vanishes_at_test_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..50 {
        let tau = random_tau(&mut rng);
        let (_, certified) = delta_value(&tau, PREC).unwrap();
        assert!(certified);
    }
}

#[test]
fn hcp_degree_matches_class_count() {
    for d in (3..=500i64).map(|n| -n).filter(|d| d.rem_euclid(4) <= 1) {
        let h = class_group_forms(d).unwrap().len();
        let poly = hilbert_class_polynomial(d).unwrap();
        assert_eq!(poly.degree(), h, "disc {d}");
        assert_eq!(poly.coeffs[h], 1);
        assert!(poly.residual < 0.25);
    }
}

#[test]
fn torsion_points_satisfy_the_differential_equation() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let tol = pow2(64, -(PREC as i32) / 2 + 10);
    for _ in 0..6 {
        let tau = random_tau(&mut rng);
        let model = model_from_tau(&tau, PREC).unwrap();
        for n in 2..=4 {
            let pts = torsion_points(&model, n).unwrap();
            assert_eq!(pts.len() as i64, n * n - 1);
            for p in &pts {
                assert!(model.ode_residual(&p.x, &p.y) < tol, "tau={:?} point {:?}", tau.to_f64_pair(), p.coords);
            }
            // x is even: the points (a, b) and (-a, -b) share x.
            for p in &pts {
                let (a, b, _) = p.coords;
                let mirror = pts.iter().find(|q| q.coords == ((n - a) % n, (n - b) % n, n)).unwrap();
                assert!(p.x.dist(&mirror.x) < tol);
            }
        }
        let two: Vec<BigComplex> = torsion_points(&model, 2).unwrap().into_iter().map(|p| p.x).collect();
        let sum = &(&two[0] + &two[1]) + &two[2];
        assert!(sum.abs() < tol);
    }
}

#[test]
fn weber_values_are_twist_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let tol = pow2(64, -(PREC as i32) / 2 + 10);
    for _ in 0..20 {
        let tau = random_tau(&mut rng);
        let u = BigComplex::from_f64(PREC, rng.gen_range(-2.0..2.0), rng.gen_range(0.2..2.0));
        let n = rng.gen_range(2..=3);
        let model = model_from_tau(&tau, PREC).unwrap();
        let twisted = twist_model(&model, &u).unwrap();
        let values = |m| -> Vec<BigComplex> {
            torsion_points(m, n).unwrap().iter().map(|p| weber_function(m, p).unwrap()).collect()
        };
        let d = multiset_distance(&values(&model), &values(&twisted));
        assert!(d < tol, "tau={:?} n={n} distance {}", tau.to_f64_pair(), d.to_f64());
    }
}
