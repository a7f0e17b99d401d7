//! Criterion benchmarks for dyft-core; see `benches/`.
