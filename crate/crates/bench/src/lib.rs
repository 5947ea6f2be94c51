//! Criterion benchmarks for `saito-core` live under `benches/`.
