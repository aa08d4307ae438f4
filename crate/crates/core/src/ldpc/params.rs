use std::ops::Range;

use crate::error::{config_err, Result};

use super::base_graph::BaseGraphId;
use super::lifting::set_index_of;

/// Coding configuration of one code block.
///
/// `k` counts every systematic position of the lifted code (payload, CB-CRC
/// and filler); filler bits occupy the last `n_filler` of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeBlockParams {
    pub bg: BaseGraphId,
    pub zc: usize,
    pub set_index: usize,
    pub k: usize,
    pub n_full: usize,
    pub n_cb: usize,
    pub n_filler: usize,
    pub e: usize,
}

impl CodeBlockParams {
    pub fn new(bg: BaseGraphId, zc: usize, n_filler: usize, e: usize) -> Result<Self> {
        let set_index = set_index_of(zc).ok_or_else(|| config_err(format!("{zc} is not a lifting size")))?;
        let k = bg.systematic_cols() * zc;
        let n_full = bg.cols() * zc;
        if n_filler >= k {
            return Err(config_err(format!("{n_filler} filler bits leave no payload in K={k}")));
        }
        Ok(Self { bg, zc, set_index, k, n_full, n_cb: n_full - 2 * zc, n_filler, e })
    }

    /// Bits per code block before filler (payload plus CB-CRC), `K'`.
    pub fn k_prime(&self) -> usize {
        self.k - self.n_filler
    }

    /// Codeword positions holding filler bits.
    pub fn filler_range(&self) -> Range<usize> {
        self.k_prime()..self.k
    }

    /// Number of circular-buffer bits that are actually transmittable.
    pub fn buffer_bits(&self) -> usize {
        self.n_cb - self.n_filler
    }

    pub fn with_e(mut self, e: usize) -> Self {
        self.e = e;
        self
    }
}
