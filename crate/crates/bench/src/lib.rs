//! Criterion benchmarks for `lumen-core`; see `benches/`.
