//! Criterion benchmarks for `polydescent` live under `benches/`.
