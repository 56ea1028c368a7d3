//! Verification harness, file formats and command-line front end for the
//! `setcolor-core` engine.

pub mod claims;
pub mod formats;
pub mod parallel;
pub mod report;

pub use setcolor_core as engine;

/// Environment variable holding the default worker thread count.
pub const THREADS_ENV: &str = "SETCOLOR_THREADS";
