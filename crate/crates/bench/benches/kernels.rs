use criterion::{black_box, criterion_group, criterion_main, Criterion};

use attrarith::{
    decompose_jacobian, flow_integrate, hilbert_class_polynomial, j_value, BigComplex, ChargeData, CurveSignature,
    FlowConfig,
};

fn j_values(c: &mut Criterion) {
    let tau = BigComplex::from_f64(256, 0.1, 1.3);
    c.bench_function("j_value 256 bits", |b| b.iter(|| j_value(black_box(&tau), 256).unwrap()));
    let tau = BigComplex::from_f64(1024, 0.1, 1.3);
    c.bench_function("j_value 1024 bits", |b| b.iter(|| j_value(black_box(&tau), 1024).unwrap()));
}

fn class_polynomials(c: &mut Criterion) {
    let mut group = c.benchmark_group("hilbert_class_polynomial");
    group.sample_size(10);
    for disc in [-163i64, -71, -431] {
        group.bench_function(disc.to_string(), |b| b.iter(|| hilbert_class_polynomial(black_box(disc)).unwrap()));
    }
    group.finish();
}

fn flows(c: &mut Criterion) {
    let charge = ChargeData::new(2, 3, 1);
    let cfg = FlowConfig::default();
    let tau0 = BigComplex::from_f64(cfg.precision, 0.0, 1.2);
    c.bench_function("flow (2,3,1) from 1.2i", |b| b.iter(|| flow_integrate(&charge, black_box(&tau0), &cfg).unwrap()));
}

fn jacobians(c: &mut Criterion) {
    for (d, k, l) in [(12, 1, 1), (60, 3, 4)] {
        let sig = CurveSignature::new(d, k, l).unwrap();
        c.bench_function(&format!("decompose_jacobian {sig}"), |b| b.iter(|| decompose_jacobian(black_box(&sig))));
    }
}

criterion_group!(benches, j_values, class_polynomials, flows, jacobians);
criterion_main!(benches);
