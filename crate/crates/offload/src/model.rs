use serde::{Deserialize, Serialize};

use crate::error::{config_err, Result};

/// Virtual-time cost model shared by the simulated accelerators. Times are
/// microseconds, sizes are bytes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatencyModel {
    /// Host/device copy cost per byte, paid in each direction.
    pub transfer_per_byte: f64,
    /// Fixed setup cost of one host-to-device transfer.
    pub dma_overhead: f64,
    /// Minimum spacing of successive op starts on the lookaside pipeline.
    pub pipeline_ii: f64,
    /// Lookaside decode time per op.
    pub op_service: f64,
    /// Lookaside result write-back cost per op.
    pub return_overhead: f64,
    /// Fixed cost of one inline kernel launch.
    pub launch_overhead: f64,
    /// Inline service time of one wave of concurrently decoded codewords.
    pub per_codeword_time: f64,
    /// Codewords an inline kernel decodes concurrently.
    pub capacity: usize,
    /// Host polling period; 0 means the host wakes exactly at completions.
    pub poll_interval: f64,
}

impl LatencyModel {
    /// Round trip of one op is 10 + 18 + 2 = 30 us against a 1 us initiation
    /// interval, so bulk dispatch approaches a 30x throughput gain.
    pub fn lookaside_default() -> Self {
        Self {
            transfer_per_byte: 0.0,
            dma_overhead: 10.0,
            pipeline_ii: 1.0,
            op_service: 18.0,
            return_overhead: 2.0,
            launch_overhead: 0.0,
            per_codeword_time: 0.0,
            capacity: 1,
            poll_interval: 1.0,
        }
    }

    pub fn inline_default() -> Self {
        Self {
            transfer_per_byte: 1e-4,
            dma_overhead: 10.0,
            pipeline_ii: 0.0,
            op_service: 0.0,
            return_overhead: 0.0,
            launch_overhead: 15.0,
            per_codeword_time: 1.0,
            capacity: 256,
            poll_interval: 1.0,
        }
    }

    /// Inline model with host/device copies removed (unified memory).
    pub fn unified(self) -> Self {
        Self { transfer_per_byte: 0.0, dma_overhead: 0.0, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("transfer_per_byte", self.transfer_per_byte),
            ("dma_overhead", self.dma_overhead),
            ("pipeline_ii", self.pipeline_ii),
            ("op_service", self.op_service),
            ("return_overhead", self.return_overhead),
            ("launch_overhead", self.launch_overhead),
            ("per_codeword_time", self.per_codeword_time),
            ("poll_interval", self.poll_interval),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v >= 0.0) {
                return Err(config_err(format!("{name} = {v} must be finite and non-negative")));
            }
        }
        if self.pipeline_ii > self.op_service {
            return Err(config_err(format!(
                "pipeline_ii {} exceeds op_service {}",
                self.pipeline_ii, self.op_service
            )));
        }
        if self.capacity == 0 {
            return Err(config_err("capacity must be at least 1"));
        }
        Ok(())
    }

    pub(crate) fn transfer_ns(&self, bytes: usize) -> u64 {
        us_to_ns(self.transfer_per_byte * bytes as f64)
    }
}

/// Virtual time is kept in integer nanoseconds so event ordering is exact.
pub(crate) fn us_to_ns(us: f64) -> u64 {
    (us * 1000.0).round() as u64
}

pub(crate) fn ns_to_us(ns: u64) -> f64 {
    ns as f64 / 1000.0
}
