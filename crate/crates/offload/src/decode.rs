use std::collections::HashMap;

use decodex_core::ldpc::{BaseGraphId, DecodeResult, DecoderConfig, LayeredDecoder};
use decodex_core::nr::DecodeDescriptor;

use crate::error::Result;

/// Lifted decoders keyed by graph, lifting size and iteration cap, so a
/// batch lifts each matrix once.
pub(crate) struct DecoderCache {
    norm_factor: f64,
    decoders: HashMap<(BaseGraphId, usize, usize), LayeredDecoder>,
}

impl DecoderCache {
    pub(crate) fn new(norm_factor: f64) -> Self {
        Self { norm_factor, decoders: HashMap::new() }
    }

    pub(crate) fn decode(&mut self, d: &DecodeDescriptor) -> Result<DecodeResult> {
        let p = &d.cb_params;
        let key = (p.bg, p.zc, d.max_iterations);
        let dec = match self.decoders.entry(key) {
            std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::hash_map::Entry::Vacant(e) => {
                let cfg = DecoderConfig {
                    max_iterations: d.max_iterations,
                    norm_factor: self.norm_factor,
                    early_termination: true,
                };
                e.insert(LayeredDecoder::for_params(p, cfg)?)
            }
        };
        Ok(dec.decode(&d.llr)?)
    }
}

/// Groups descriptor indices by `tb_id`, in order of first appearance.
pub(crate) fn group_by_tb(descriptors: &[DecodeDescriptor]) -> Vec<(usize, Vec<usize>)> {
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut index: HashMap<usize, usize> = HashMap::new();
    for (i, d) in descriptors.iter().enumerate() {
        let g = *index.entry(d.tb_id).or_insert_with(|| {
            groups.push((d.tb_id, Vec::new()));
            groups.len() - 1
        });
        groups[g].1.push(i);
    }
    groups
}

/// Bytes moved per op: 8-bit soft input in, packed hard bits out.
pub(crate) fn io_bytes(d: &DecodeDescriptor) -> (usize, usize) {
    (d.llr.len(), d.cb_params.k.div_ceil(8))
}
