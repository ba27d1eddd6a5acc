//! File formats, thread-parallel aggregation, reports, benchmarks and the
//! command line built on [`convexcount_core`].

pub mod bench;
pub mod cli;
pub mod format;
pub mod parallel;
pub mod report;

pub use convexcount_core as core;
