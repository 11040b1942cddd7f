//! Benchmark-only crate. The measurements live in `benches/`; run them
//! with `cargo bench -p permatch-bench`.
