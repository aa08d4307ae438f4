//! `[model.<backend>]` sections of a TOML config file. Keys are the
//! [`LatencyModel`] field names; missing keys keep the backend default.
//!
//! ```toml
//! # times in microseconds, sizes in bytes
//! [model.lookaside]
//! op_service = 18.0
//! pipeline_ii = 1.0
//!
//! [model.inline]
//! capacity = 256
//! ```

use serde::Deserialize;

use crate::error::{config_err, Result};
use crate::model::LatencyModel;

/// Latency models of the simulated backends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSet {
    pub lookaside: LatencyModel,
    pub inline: LatencyModel,
}

impl Default for ModelSet {
    fn default() -> Self {
        Self { lookaside: LatencyModel::lookaside_default(), inline: LatencyModel::inline_default() }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Overrides {
    transfer_per_byte: Option<f64>,
    dma_overhead: Option<f64>,
    pipeline_ii: Option<f64>,
    op_service: Option<f64>,
    return_overhead: Option<f64>,
    launch_overhead: Option<f64>,
    per_codeword_time: Option<f64>,
    capacity: Option<usize>,
    poll_interval: Option<f64>,
}

impl Overrides {
    fn apply(self, mut m: LatencyModel) -> LatencyModel {
        macro_rules! set {
            ($($f:ident),*) => { $(if let Some(v) = self.$f { m.$f = v; })* };
        }
        set!(
            transfer_per_byte,
            dma_overhead,
            pipeline_ii,
            op_service,
            return_overhead,
            launch_overhead,
            per_codeword_time,
            capacity,
            poll_interval
        );
        m
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelSections {
    lookaside: Option<Overrides>,
    inline: Option<Overrides>,
}

impl ModelSet {
    /// Applies the `model` table of a parsed config file.
    pub fn from_table(model: Option<toml::Value>) -> Result<Self> {
        let sections: ModelSections = match model {
            Some(v) => v.try_into()?,
            None => ModelSections::default(),
        };
        let defaults = Self::default();
        let set = Self {
            lookaside: sections.lookaside.unwrap_or_default().apply(defaults.lookaside),
            inline: sections.inline.unwrap_or_default().apply(defaults.inline),
        };
        set.lookaside.validate()?;
        set.inline.validate()?;
        Ok(set)
    }
}

/// Reads the `[model.*]` sections of `text`, ignoring other sections.
pub fn parse_model_config(text: &str) -> Result<ModelSet> {
    let mut doc: toml::Table = text.parse()?;
    let model = doc.remove("model");
    if let Some(v) = &model {
        if !v.is_table() {
            return Err(config_err("`model` must be a table of backend sections"));
        }
    }
    ModelSet::from_table(model)
}
