//! Benchmarks for the reptile engine live in `benches/`.
