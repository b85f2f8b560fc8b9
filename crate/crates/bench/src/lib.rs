//! Criterion benchmarks for `wcdr-core`; see `benches/`.
