//! Criterion benchmarks for the attrarith kernels; see `benches/`.
