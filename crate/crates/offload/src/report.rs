use std::fmt;

use decodex_core::ldpc::DecodeResult;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClockType {
    Wall,
    Virtual,
}

impl fmt::Display for ClockType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClockType::Wall => "wall",
            ClockType::Virtual => "virtual",
        })
    }
}

/// The decoded output of one code block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CbOutput {
    pub tb_id: usize,
    pub cb_id: usize,
    pub result: DecodeResult,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TbLatency {
    pub tb_id: usize,
    pub latency_us: f64,
}

/// A run that ended in a modelled failure state rather than an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BackendFailure {
    /// The lookaside drain gave up after its retry cap with ops pending.
    DrainShortfall { enqueued: u64, dequeued: u64, retries: u64 },
}

impl fmt::Display for BackendFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BackendFailure::DrainShortfall { enqueued, dequeued, retries } => {
                write!(f, "drain shortfall: {dequeued}/{enqueued} ops dequeued after {retries} retries")
            }
        }
    }
}

/// Outcome of one submission to a backend.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BackendReport {
    pub clock: Option<ClockType>,
    /// One entry per transport block, in order of first appearance.
    pub tb_latencies: Vec<TbLatency>,
    /// Time from submission until the last result was available.
    pub total_us: f64,
    /// Accumulated kernel time (inline backends only).
    pub kernel_us: Option<f64>,
    /// Busy slots over capacity, averaged over launches (inline only).
    pub utilization: Option<f64>,
    pub launch_utilization: Vec<f64>,
    pub enqueued: u64,
    pub dequeued: u64,
    /// Decoded code blocks in completion order.
    pub outputs: Vec<CbOutput>,
    pub failure: Option<BackendFailure>,
}

impl BackendReport {
    pub fn clock_type(&self) -> ClockType {
        self.clock.unwrap_or(ClockType::Virtual)
    }

    /// Outputs sorted by `(tb_id, cb_id)`.
    pub fn sorted_outputs(&self) -> Vec<&CbOutput> {
        let mut v: Vec<&CbOutput> = self.outputs.iter().collect();
        v.sort_by_key(|o| (o.tb_id, o.cb_id));
        v
    }

    pub fn mean_latency_us(&self) -> f64 {
        if self.tb_latencies.is_empty() {
            return 0.0;
        }
        self.tb_latencies.iter().map(|t| t.latency_us).sum::<f64>() / self.tb_latencies.len() as f64
    }
}
