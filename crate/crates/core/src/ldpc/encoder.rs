//! Systematic QC-LDPC encoding by block back-substitution.
//!
//! Both standard base graphs (and the toy graph) share the same parity
//! structure: a 4-row core whose first parity column has an odd number of
//! equal shifts across the core rows and whose other three parity columns
//! form a zero-shift double diagonal, followed by extension rows each
//! owning exactly one new parity column. Summing the core rows isolates the
//! first parity block; the rest follows one unknown block at a time.

use crate::error::{arg_err, config_err, Result};
use crate::Bit;

use super::base_graph::BaseGraph;
use super::matrix::{expand_base_graph, xor_rotated, ParityCheckMatrix};
use super::params::CodeBlockParams;

const CORE_ROWS: usize = 4;

/// Encodes `info` (length `k`, filler bits already zero) into a full
/// `n_full`-bit codeword.
pub fn encode(info: &[Bit], params: &CodeBlockParams) -> Result<Vec<Bit>> {
    let h = expand_base_graph(BaseGraph::bundled(params.bg), params.zc, params.set_index)?;
    encode_with(&h, info)
}

/// Encodes against an already lifted matrix.
pub fn encode_with(h: &ParityCheckMatrix, info: &[Bit]) -> Result<Vec<Bit>> {
    let zc = h.zc;
    let kb = h.bg.systematic_cols();
    if info.len() != kb * zc {
        return Err(arg_err(format!("info length {} != k = {}", info.len(), kb * zc)));
    }
    let mut cw = vec![0u8; h.cols()];
    cw[..info.len()].copy_from_slice(info);
    let mut known = vec![false; h.base_cols()];
    known[..kb].iter_mut().for_each(|k| *k = true);

    // First core parity block from the sum of the core rows.
    let lead = kb;
    let mut odd_shifts: Vec<usize> = Vec::new();
    for layer in &h.layers[..CORE_ROWS] {
        for c in layer.iter().filter(|c| c.col == lead) {
            match odd_shifts.iter().position(|&s| s == c.shift) {
                Some(pos) => {
                    odd_shifts.swap_remove(pos);
                }
                None => odd_shifts.push(c.shift),
            }
        }
    }
    let [lead_shift] = odd_shifts[..] else {
        return Err(config_err(format!("{} core is not block-invertible", h.bg)));
    };
    let mut sum = vec![0u8; zc];
    for layer in &h.layers[..CORE_ROWS] {
        for c in layer.iter().filter(|c| c.col < kb) {
            xor_rotated(&mut sum, &cw[c.col * zc..(c.col + 1) * zc], c.shift);
        }
    }
    solve_block(&mut cw[lead * zc..(lead + 1) * zc], &sum, lead_shift);
    known[lead] = true;

    // Remaining parity blocks, each from a row with a single unknown block.
    let mut pending: Vec<usize> = (0..h.base_rows()).collect();
    loop {
        let before = pending.len();
        pending.retain(|&r| {
            let layer = &h.layers[r];
            let mut unknown = layer.iter().filter(|c| !known[c.col]);
            let (Some(target), None) = (unknown.next(), unknown.next()) else {
                return true;
            };
            let target = *target;
            let mut acc = vec![0u8; zc];
            for c in layer.iter().filter(|c| c.col != target.col) {
                xor_rotated(&mut acc, &cw[c.col * zc..(c.col + 1) * zc], c.shift);
            }
            solve_block(&mut cw[target.col * zc..(target.col + 1) * zc], &acc, target.shift);
            known[target.col] = true;
            false
        });
        if pending.is_empty() || pending.len() == before {
            break;
        }
    }
    if known.iter().any(|k| !k) {
        return Err(config_err(format!("{} parity structure is not triangular", h.bg)));
    }
    Ok(cw)
}

/// Solves `rot(p, shift) = rhs` for block `p`.
fn solve_block(p: &mut [u8], rhs: &[u8], shift: usize) {
    let zc = p.len();
    for (i, &r) in rhs.iter().enumerate() {
        p[(i + shift) % zc] = r;
    }
}
