use decodex_core::ldpc::DEFAULT_MAX_ITERATIONS;
use decodex_offload::{BackendKind, BackendKnobs, ModelSet};
use serde::Deserialize;

use crate::error::{config_err, Result};

/// Environment variable that overrides the configured master seed.
pub const SEED_ENV: &str = "DECODEX_SEED";

/// The `[sweep]` section.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub backends: Vec<BackendKind>,
    pub mcs_set: Vec<usize>,
    pub snr_grid_db: Vec<f64>,
    pub prb_set: Vec<usize>,
    pub n_tb: usize,
    /// UE counts for the parallel-launch study.
    pub n_ue: Vec<usize>,
    pub seed: u64,
    pub max_iterations: usize,
    /// CPU worker lanes; defaults to the available cores.
    pub workers: Option<usize>,
    /// Lookaside queue depth.
    pub queue_depth: Option<usize>,
    /// Dequeue attempts allowed while draining before the cell is failed.
    pub max_drain_retries: Option<u64>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            backends: vec![BackendKind::Cpu, BackendKind::Lookaside, BackendKind::Inline],
            mcs_set: (0..=19).collect(),
            snr_grid_db: (-1..=5).map(|i| f64::from(2 * i)).collect(),
            prb_set: vec![50, 100, 150, 200],
            n_tb: 100,
            n_ue: vec![1, 2, 5, 10],
            seed: 1,
            max_iterations: DEFAULT_MAX_ITERATIONS,
            workers: None,
            queue_depth: None,
            max_drain_retries: None,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.backends.is_empty()
            || self.mcs_set.is_empty()
            || self.snr_grid_db.is_empty()
            || self.prb_set.is_empty()
            || self.n_ue.is_empty()
        {
            return Err(config_err("sweep lists must not be empty"));
        }
        if self.n_tb == 0 {
            return Err(config_err("n_tb must be at least 1"));
        }
        if self.max_iterations == 0 {
            return Err(config_err("max_iterations must be at least 1"));
        }
        if let Some(&m) = self.mcs_set.iter().find(|&&m| m > 27) {
            return Err(config_err(format!("MCS index {m} outside 0..=27")));
        }
        if self.prb_set.contains(&0) || self.n_ue.contains(&0) {
            return Err(config_err("PRB counts and UE counts must be positive"));
        }
        if self.snr_grid_db.iter().any(|s| s.is_nan() || *s == f64::NEG_INFINITY) {
            return Err(config_err("SNR values must be numbers (inf means noiseless)"));
        }
        if self.workers == Some(0) || self.queue_depth == Some(0) {
            return Err(config_err("workers and queue_depth must be at least 1"));
        }
        Ok(())
    }

    pub fn knobs(&self) -> BackendKnobs {
        let mut k = BackendKnobs::default();
        if let Some(w) = self.workers {
            k.workers = w;
        }
        if let Some(d) = self.queue_depth {
            k.queue_depth = d;
        }
        if let Some(r) = self.max_drain_retries {
            k.max_drain_retries = r;
        }
        k
    }
}

/// A whole config file: `[sweep]` plus `[model.lookaside]` / `[model.inline]`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BenchConfig {
    pub sweep: SweepConfig,
    pub models: ModelSet,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    #[serde(default)]
    sweep: Option<SweepConfig>,
    #[serde(default)]
    model: Option<toml::Value>,
}

impl BenchConfig {
    /// Parses a config file. `seed_override` (normally the value of
    /// [`SEED_ENV`]) replaces the configured seed.
    pub fn parse(text: &str, seed_override: Option<&str>) -> Result<Self> {
        let raw: RawFile = toml::from_str(text)?;
        let mut cfg = Self { sweep: raw.sweep.unwrap_or_default(), models: ModelSet::from_table(raw.model)? };
        cfg.apply_seed_override(seed_override)?;
        cfg.sweep.validate()?;
        Ok(cfg)
    }

    pub fn apply_seed_override(&mut self, seed_override: Option<&str>) -> Result<()> {
        if let Some(s) = seed_override {
            self.sweep.seed =
                s.trim().parse().map_err(|_| config_err(format!("{SEED_ENV}={s:?} is not a u64")))?;
        }
        Ok(())
    }

    pub fn model_for(&self, kind: BackendKind) -> decodex_offload::LatencyModel {
        match kind {
            BackendKind::Lookaside => self.models.lookaside,
            _ => self.models.inline,
        }
    }
}
