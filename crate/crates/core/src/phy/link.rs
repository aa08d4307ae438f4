use crate::error::Result;
use crate::Bit;

use super::channel::{transmit, ChannelConfig};
use super::demap::demap_llr;
use super::modulation::modulate;

/// Sends the rate-matched code blocks of one transport block over the
/// channel as a single symbol stream and returns the demapped soft values,
/// split back per code block.
pub fn simulate_link(coded: &[Vec<Bit>], qm: u8, channel: &ChannelConfig) -> Result<Vec<Vec<i8>>> {
    let stream: Vec<Bit> = coded.iter().flatten().copied().collect();
    let rx = transmit(&modulate(&stream, qm)?, channel)?;
    // Noiseless links still need a finite variance for the demapper; any
    // small value saturates every LLR.
    let sigma2 = if channel.snr_db.is_finite() { channel.sigma2() } else { 1e-6 };
    let soft = demap_llr(&rx.samples, qm, sigma2)?;
    let mut offset = 0;
    Ok(coded
        .iter()
        .map(|cb| {
            let part = soft[offset..offset + cb.len()].to_vec();
            offset += cb.len();
            part
        })
        .collect())
}
