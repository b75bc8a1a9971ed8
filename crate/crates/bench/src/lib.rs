//! Criterion benchmarks for the person-index pipelines live in `benches/`.
