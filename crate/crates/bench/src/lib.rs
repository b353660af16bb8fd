//! Benchmarks for the `dyckperm` crate; see `benches/`.
