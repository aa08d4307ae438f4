//! Layered normalized min-sum decoding on 8-bit saturating LLRs.
//!
//! Channel LLRs and check-to-variable messages are stored as `i8` in
//! `[-127, 127]`; a posteriori sums are kept in `i16`. Each base-graph row is
//! one layer and all `zc` checks of a layer are updated together, which is
//! the lane-parallel structure SIMD decoders exploit.

use crate::error::{arg_err, Result};
use crate::Bit;

use super::base_graph::BaseGraph;
use super::matrix::{expand_base_graph, syndrome_ok, ParityCheckMatrix};
use super::params::CodeBlockParams;

pub const DEFAULT_MAX_ITERATIONS: usize = 20;
pub const DEFAULT_NORM_FACTOR: f64 = 0.75;

const APP_LIMIT: i32 = 16_000;

/// Soft input of one code block: saturating signed LLRs, positive favours 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LlrBlock(Vec<i8>);

impl LlrBlock {
    pub const MAX: i8 = 127;

    /// Wraps `values`, mapping `-128` to `-127`.
    pub fn new(mut values: Vec<i8>) -> Self {
        for v in &mut values {
            *v = (*v).max(-Self::MAX);
        }
        Self(values)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn saturate(v: i32) -> i8 {
        v.clamp(-i32::from(Self::MAX), i32::from(Self::MAX)) as i8
    }

    /// Ideal LLRs for a known codeword: `+magnitude` for 0, `-magnitude` for 1.
    pub fn from_codeword(codeword: &[Bit], magnitude: i8) -> Self {
        let m = magnitude.clamp(0, Self::MAX);
        Self(codeword.iter().map(|&b| if b == 0 { m } else { -m }).collect())
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn as_mut_slice(&mut self) -> &mut [i8] {
        &mut self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<i8> {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoderConfig {
    pub max_iterations: usize,
    pub norm_factor: f64,
    /// Stop after the first sweep whose hard decision satisfies every check.
    /// When disabled the decoder always runs `max_iterations` sweeps.
    pub early_termination: bool,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        Self {
            max_iterations: DEFAULT_MAX_ITERATIONS,
            norm_factor: DEFAULT_NORM_FACTOR,
            early_termination: true,
        }
    }
}

impl DecoderConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(arg_err("max_iterations must be at least 1"));
        }
        if !(self.norm_factor > 0.0 && self.norm_factor <= 1.0) {
            return Err(arg_err(format!("norm_factor {} not in (0, 1]", self.norm_factor)));
        }
        Ok(())
    }

    /// Normalization factor in Q8 fixed point (0.75 -> 192).
    fn norm_q8(&self) -> i32 {
        (self.norm_factor * 256.0).round() as i32
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    /// Hard decisions on the `k` systematic positions (filler included).
    pub bits: Vec<Bit>,
    /// Hard decision on the whole `n_full` codeword.
    pub codeword: Vec<Bit>,
    pub iterations_used: usize,
    /// The hard decision satisfied every parity check.
    pub converged: bool,
}

/// A decoder bound to one lifted matrix; reusable across code blocks that
/// share coding parameters.
#[derive(Debug, Clone)]
pub struct LayeredDecoder {
    h: ParityCheckMatrix,
    config: DecoderConfig,
}

impl LayeredDecoder {
    pub fn new(h: ParityCheckMatrix, config: DecoderConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self { h, config })
    }

    pub fn for_params(params: &CodeBlockParams, config: DecoderConfig) -> Result<Self> {
        let h = expand_base_graph(BaseGraph::bundled(params.bg), params.zc, params.set_index)?;
        Self::new(h, config)
    }

    pub fn matrix(&self) -> &ParityCheckMatrix {
        &self.h
    }

    pub fn config(&self) -> &DecoderConfig {
        &self.config
    }

    pub fn decode(&self, llr: &LlrBlock) -> Result<DecodeResult> {
        let h = &self.h;
        let zc = h.zc;
        if llr.len() != h.cols() {
            return Err(arg_err(format!("LLR length {} != n_full {}", llr.len(), h.cols())));
        }
        let norm = self.config.norm_q8();

        let mut app: Vec<i16> = llr.as_slice().iter().map(|&v| i16::from(v)).collect();
        let offsets: Vec<usize> = h
            .layers
            .iter()
            .scan(0, |acc, l| {
                let start = *acc;
                *acc += l.len() * zc;
                Some(start)
            })
            .collect();
        let mut msgs = vec![0i8; h.edge_count()];
        let max_degree = h.layers.iter().map(Vec::len).max().unwrap_or(0);
        let mut q = vec![0i16; max_degree * zc];
        let mut min1 = vec![0i16; zc];
        let mut min2 = vec![0i16; zc];
        let mut argmin = vec![0u16; zc];
        let mut sign = vec![false; zc];
        let mut codeword = vec![0u8; h.cols()];

        let mut iterations = 0;
        let mut converged = false;
        while iterations < self.config.max_iterations {
            iterations += 1;
            for (layer, &off) in h.layers.iter().zip(&offsets) {
                min1.fill(i16::MAX);
                min2.fill(i16::MAX);
                argmin.fill(0);
                sign.fill(false);

                // variable-to-check messages
                for (e, c) in layer.iter().enumerate() {
                    let block = &app[c.col * zc..(c.col + 1) * zc];
                    let rotated = block[c.shift..].iter().chain(&block[..c.shift]);
                    let old = &msgs[off + e * zc..off + (e + 1) * zc];
                    let qe = &mut q[e * zc..(e + 1) * zc];
                    for (i, &a) in rotated.enumerate() {
                        let val = (i32::from(a) - i32::from(old[i])).clamp(-APP_LIMIT, APP_LIMIT) as i16;
                        qe[i] = val;
                        let mag = val.abs();
                        sign[i] ^= val < 0;
                        if mag < min1[i] {
                            min2[i] = min1[i];
                            min1[i] = mag;
                            argmin[i] = e as u16;
                        } else if mag < min2[i] {
                            min2[i] = mag;
                        }
                    }
                }

                // check-to-variable messages and a posteriori update
                for (e, c) in layer.iter().enumerate() {
                    let qe = &q[e * zc..(e + 1) * zc];
                    let new = &mut msgs[off + e * zc..off + (e + 1) * zc];
                    let (wrapped, head) = app[c.col * zc..(c.col + 1) * zc].split_at_mut(c.shift);
                    for (i, slot) in head.iter_mut().chain(wrapped.iter_mut()).enumerate() {
                        let mag = if argmin[i] as usize == e { min2[i] } else { min1[i] };
                        let mag = LlrBlock::saturate((i32::from(mag) * norm) >> 8);
                        let negative = sign[i] ^ (qe[i] < 0);
                        let r = if negative { -mag } else { mag };
                        new[i] = r;
                        *slot = (i32::from(qe[i]) + i32::from(r)).clamp(-APP_LIMIT, APP_LIMIT) as i16;
                    }
                }
            }

            let last = iterations == self.config.max_iterations;
            if self.config.early_termination || last {
                hard_decision(&app, &mut codeword);
                converged = syndrome_ok(h, &codeword);
                if converged && self.config.early_termination {
                    break;
                }
            }
        }

        Ok(DecodeResult {
            bits: codeword[..h.k()].to_vec(),
            codeword,
            iterations_used: iterations,
            converged,
        })
    }
}

fn hard_decision(app: &[i16], out: &mut [u8]) {
    for (o, &a) in out.iter_mut().zip(app) {
        *o = u8::from(a < 0);
    }
}

/// Decodes one code block with a freshly lifted matrix.
pub fn decode_layered_minsum(
    llr: &LlrBlock,
    params: &CodeBlockParams,
    max_iterations: usize,
    norm_factor: f64,
) -> Result<DecodeResult> {
    let config = DecoderConfig { max_iterations, norm_factor, early_termination: true };
    LayeredDecoder::for_params(params, config)?.decode(llr)
}
