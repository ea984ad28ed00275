//! Benchmarks for the conc2 enumerators live in `benches/`.
