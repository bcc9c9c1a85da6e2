//! Benchmark-only crate; the measured code lives in `dstar-core`.
//! Shared fixtures for the benches are re-exported here.

pub use dstar_core::{coned_path, hollow_triangle, path4, small_complexes};
