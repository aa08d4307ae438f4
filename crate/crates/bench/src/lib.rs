//! Benchmark harness: MCS x SNR x PRB sweeps over the decode backends, the
//! lookaside bulk-dispatch study, the inline parallel-launch study and the
//! forced-iteration latency study.
//!
//! ```
//! use decodex_bench::generate_tb;
//! use decodex_offload::{make_backend, BackendKind, BackendKnobs, LatencyModel};
//!
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let rx = generate_tb(9, 50, 4.0, 42, 0, 20)?; // MCS 9, 50 PRBs, 4 dB
//! let model = LatencyModel::lookaside_default();
//! let mut backend = make_backend(BackendKind::Lookaside, model, BackendKnobs::default())?;
//! let report = backend.submit(&rx.descriptors)?;
//! let status = rx.verify(&report.sorted_outputs())?;
//! assert!(status.ok());
//! assert_eq!(report.tb_latencies.len(), 1);
//! # Ok(())
//! # }
//! ```

pub mod chain;
pub mod config;
pub mod emit;
pub mod error;
pub mod studies;
pub mod sweep;

pub use chain::{cell_seed, generate_tb, golden_vectors, tb_seed, ReceivedTb};
pub use config::{BenchConfig, SweepConfig, SEED_ENV};
pub use emit::{emit, format_g, parse_csv, parse_json, to_csv, to_json, Format, CSV_HEADER};
pub use error::{BenchError, Result};
pub use studies::{
    run_bulk_study, run_iteration_study, run_parallel_study, BulkRow, IterationRow, ParallelRow,
};
pub use sweep::{run_cell, run_sweep, CellSpec, SweepRecord};
