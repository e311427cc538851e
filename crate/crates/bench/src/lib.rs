//! Criterion benchmarks for ksforge live under `benches/`.
