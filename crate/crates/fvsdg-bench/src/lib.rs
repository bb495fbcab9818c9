//! Benchmark support crate; benchmarks live in `benches/`.
