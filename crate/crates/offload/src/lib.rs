//! Decode backends behind one contract.
//!
//! * [`cpu`]: a real worker pool decoding whole transport blocks per lane,
//!   timed with the wall clock.
//! * [`lookaside`]: a discrete-event model of a queue-pair accelerator with
//!   per-op enqueue, polled dequeue and a bounded drain loop.
//! * [`inline`]: a discrete-event model of batched kernel launches, either
//!   one per transport block or one over every codeword.
//!
//! Every backend runs the real decoder, so decoded bits never depend on the
//! backend; only the reported timing does.

pub mod backend;
pub mod config;
pub mod cpu;
mod decode;
pub mod error;
pub mod inline;
pub mod lookaside;
pub mod model;
pub mod report;

pub use backend::{make_backend, Backend, BackendKind, BackendKnobs};
pub use config::{parse_model_config, ModelSet};
pub use cpu::cpu_decode_batch;
pub use error::{OffloadError, Result};
pub use inline::{inline_decode_parallel, inline_decode_sequential};
pub use lookaside::{run_lookaside_bulk, run_lookaside_sequential, Completion, QueuePair};
pub use model::LatencyModel;
pub use report::{BackendFailure, BackendReport, CbOutput, ClockType, TbLatency};
