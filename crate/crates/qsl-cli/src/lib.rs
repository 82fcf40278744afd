//! Std companion to the core bound library: run configuration, report
//! encodings (CSV/JSON), and the scatter/scan drivers behind the `qsl`
//! binary.
//!
//! The split keeps the computation crate `no_std`-compatible while this
//! crate owns processes, files, threads, and formats: every command here
//! reduces to core calls plus deterministic serialization.

#![forbid(unsafe_code)]

pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod scatter;

pub use commands::{execute, scan_rows, ScanRow};
pub use config::{CommandSpec, OutputFormat, RunConfig};
pub use error::{CliError, CliResult};
pub use report::{Cell, Report};
pub use scatter::{run_scatter, run_scatter_on, ScatterRecord, ScatterSummary};
