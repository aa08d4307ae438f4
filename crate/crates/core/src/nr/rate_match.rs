use crate::error::{arg_err, config_err, Result};
use crate::ldpc::{CodeBlockParams, LlrBlock};
use crate::Bit;

/// Codeword index of every circular-buffer position in read order: the
/// first `2 zc` systematic bits are punctured and filler bits are skipped.
pub fn circular_buffer_positions(params: &CodeBlockParams) -> Vec<usize> {
    let filler = params.filler_range();
    (2 * params.zc..params.n_full).filter(|i| !filler.contains(i)).collect()
}

/// Selects `params.e` bits from the circular buffer starting at `k0 = 0`,
/// wrapping around (repetition) when `e` exceeds the buffer.
pub fn rate_match(codeword: &[Bit], params: &CodeBlockParams) -> Result<Vec<Bit>> {
    if codeword.len() != params.n_full {
        return Err(arg_err(format!("codeword length {} != n_full {}", codeword.len(), params.n_full)));
    }
    let positions = circular_buffer_positions(params);
    if positions.is_empty() {
        return Err(config_err("circular buffer is empty"));
    }
    if params.e == 0 {
        return Err(arg_err("rate-matched length E must be positive"));
    }
    Ok(positions.iter().cycle().take(params.e).map(|&i| codeword[i]).collect())
}

/// Inverse of [`rate_match`] on soft values: repeated positions are
/// combined, punctured and untransmitted positions are 0, filler is +127.
pub fn rate_dematch(llrs: &[i8], params: &CodeBlockParams) -> Result<LlrBlock> {
    if llrs.len() != params.e {
        return Err(arg_err(format!("{} soft values for E = {}", llrs.len(), params.e)));
    }
    let positions = circular_buffer_positions(params);
    if positions.is_empty() {
        return Err(config_err("circular buffer is empty"));
    }
    let mut acc = vec![0i32; params.n_full];
    for (&pos, &v) in positions.iter().cycle().zip(llrs) {
        acc[pos] += i32::from(v);
    }
    let mut out: Vec<i8> = acc.into_iter().map(LlrBlock::saturate).collect();
    out[params.filler_range()].fill(LlrBlock::MAX);
    Ok(LlrBlock::new(out))
}
