//! Criterion benchmarks for `fishburn-core`; see `benches/`.
