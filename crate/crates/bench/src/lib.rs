//! Criterion benchmarks for `glsm-core`; see `benches/`.
