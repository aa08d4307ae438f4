use std::fmt;
use std::str::FromStr;

use decodex_core::ldpc::DEFAULT_NORM_FACTOR;
use decodex_core::nr::DecodeDescriptor;
use serde::{Deserialize, Serialize};

use crate::cpu::cpu_decode_batch;
use crate::error::{config_err, OffloadError, Result};
use crate::inline::{inline_decode_parallel, inline_decode_sequential};
use crate::lookaside::{run_lookaside_bulk, run_lookaside_sequential};
use crate::model::LatencyModel;
use crate::report::{BackendReport, ClockType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BackendKind {
    Cpu,
    Lookaside,
    Inline,
    InlineUnified,
}

impl BackendKind {
    pub const ALL: [BackendKind; 4] =
        [BackendKind::Cpu, BackendKind::Lookaside, BackendKind::Inline, BackendKind::InlineUnified];

    pub fn as_str(self) -> &'static str {
        match self {
            BackendKind::Cpu => "cpu",
            BackendKind::Lookaside => "lookaside",
            BackendKind::Inline => "inline",
            BackendKind::InlineUnified => "inline-unified",
        }
    }

    pub fn clock(self) -> ClockType {
        match self {
            BackendKind::Cpu => ClockType::Wall,
            _ => ClockType::Virtual,
        }
    }
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BackendKind {
    type Err = OffloadError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| config_err(format!("unknown backend {s:?}")))
    }
}

/// Settings that are not latency-model constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BackendKnobs {
    /// CPU worker lanes.
    pub workers: usize,
    /// Lookaside queue-pair depth.
    pub queue_depth: usize,
    /// Dequeue attempts allowed in the lookaside drain phase.
    pub max_drain_retries: u64,
    /// Spacing of descriptor arrivals at the lookaside queue, in us.
    pub inter_symbol_gap_us: f64,
    /// Lookaside dispatch: bulk enqueue and drain, or one op at a time.
    pub bulk: bool,
    /// Inline dispatch: one launch for everything, or one per TB.
    pub parallel_launch: bool,
    pub norm_factor: f64,
}

impl Default for BackendKnobs {
    fn default() -> Self {
        Self {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            queue_depth: 1024,
            max_drain_retries: 1_000_000,
            inter_symbol_gap_us: 0.0,
            bulk: true,
            parallel_launch: true,
            norm_factor: DEFAULT_NORM_FACTOR,
        }
    }
}

/// Uniform submission contract. Handles are single-threaded by design.
pub trait Backend {
    fn kind(&self) -> BackendKind;

    fn clock(&self) -> ClockType {
        self.kind().clock()
    }

    fn submit(&mut self, descriptors: &[DecodeDescriptor]) -> Result<BackendReport>;
}

struct Cpu {
    knobs: BackendKnobs,
}

impl Backend for Cpu {
    fn kind(&self) -> BackendKind {
        BackendKind::Cpu
    }

    fn submit(&mut self, descriptors: &[DecodeDescriptor]) -> Result<BackendReport> {
        cpu_decode_batch(descriptors, self.knobs.workers, self.knobs.norm_factor)
    }
}

struct Lookaside {
    model: LatencyModel,
    knobs: BackendKnobs,
}

impl Backend for Lookaside {
    fn kind(&self) -> BackendKind {
        BackendKind::Lookaside
    }

    fn submit(&mut self, descriptors: &[DecodeDescriptor]) -> Result<BackendReport> {
        if self.knobs.bulk {
            run_lookaside_bulk(descriptors, &self.model, &self.knobs)
        } else {
            run_lookaside_sequential(descriptors, &self.model, &self.knobs)
        }
    }
}

struct Inline {
    kind: BackendKind,
    model: LatencyModel,
    knobs: BackendKnobs,
}

impl Backend for Inline {
    fn kind(&self) -> BackendKind {
        self.kind
    }

    fn submit(&mut self, descriptors: &[DecodeDescriptor]) -> Result<BackendReport> {
        if self.knobs.parallel_launch {
            inline_decode_parallel(descriptors, &self.model, self.knobs.norm_factor)
        } else {
            inline_decode_sequential(descriptors, &self.model, self.knobs.norm_factor)
        }
    }
}

/// Builds a backend. The model is ignored by the CPU backend; for
/// `inline-unified` its transfer costs are zeroed.
pub fn make_backend(kind: BackendKind, model: LatencyModel, knobs: BackendKnobs) -> Result<Box<dyn Backend>> {
    if knobs.workers == 0 {
        return Err(config_err("at least one worker is required"));
    }
    if !(knobs.norm_factor > 0.0 && knobs.norm_factor <= 1.0) {
        return Err(config_err(format!("norm_factor {} not in (0, 1]", knobs.norm_factor)));
    }
    if !(knobs.inter_symbol_gap_us.is_finite() && knobs.inter_symbol_gap_us >= 0.0) {
        return Err(config_err("inter_symbol_gap_us must be finite and non-negative"));
    }
    Ok(match kind {
        BackendKind::Cpu => Box::new(Cpu { knobs }),
        BackendKind::Lookaside => {
            model.validate()?;
            Box::new(Lookaside { model, knobs })
        }
        BackendKind::Inline | BackendKind::InlineUnified => {
            let model = if kind == BackendKind::InlineUnified { model.unified() } else { model };
            model.validate()?;
            Box::new(Inline { kind, model, knobs })
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_names_round_trip() {
        for k in BackendKind::ALL {
            assert_eq!(k.as_str().parse::<BackendKind>().unwrap(), k);
        }
        assert!("gpu".parse::<BackendKind>().is_err());
    }

    #[test]
    fn clocks_by_kind() {
        let knobs = BackendKnobs::default();
        for k in BackendKind::ALL {
            let b = make_backend(k, LatencyModel::inline_default(), knobs).unwrap();
            let expect = if k == BackendKind::Cpu { ClockType::Wall } else { ClockType::Virtual };
            assert_eq!(b.clock(), expect);
        }
    }
}
