//! Seeded generation of received transport blocks and their verification.

use decodex_core::nr::{
    build_tb_descriptors, code_block_inputs, compute_tb_size, desegment, encode_transport_block, mcs_lookup,
    DecodeDescriptor, TbDecodeStatus, TransportBlock,
};
use decodex_core::phy::{simulate_link, ChannelConfig, GoldenVector};
use decodex_offload::CbOutput;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{config_err, Result};

/// SplitMix64 finalizer: decorrelates nearby seeds.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of one sweep cell. It depends on the cell coordinates only, never
/// on the backend, so every backend sees the same received blocks.
pub fn cell_seed(master: u64, mcs: usize, snr_db: f64, prb: usize) -> u64 {
    [mcs as u64, snr_db.to_bits(), prb as u64].into_iter().fold(mix(master), |acc, v| mix(acc ^ v))
}

pub fn tb_seed(cell_seed: u64, tb_index: usize) -> u64 {
    cell_seed ^ tb_index as u64
}

/// A transport block after the channel, ready for decoding.
#[derive(Debug, Clone)]
pub struct ReceivedTb {
    pub tb: TransportBlock,
    pub descriptors: Vec<DecodeDescriptor>,
    /// Demapped soft values per code block, before de-rate-matching.
    pub soft: Vec<Vec<i8>>,
    pub channel: ChannelConfig,
}

impl ReceivedTb {
    /// Reassembles the decoded outputs belonging to this block and checks
    /// both CRC levels.
    pub fn verify(&self, outputs: &[&CbOutput]) -> Result<TbDecodeStatus> {
        let tb_id = self.descriptors[0].tb_id;
        let mut bits: Vec<&[u8]> = Vec::with_capacity(self.descriptors.len());
        for d in &self.descriptors {
            let out = outputs
                .iter()
                .find(|o| o.tb_id == tb_id && o.cb_id == d.cb_id)
                .ok_or_else(|| config_err(format!("no output for TB {tb_id} CB {}", d.cb_id)))?;
            bits.push(&out.result.bits);
        }
        Ok(desegment(&self.descriptors, &bits, self.tb.len())?)
    }
}

/// Builds, encodes and transmits one random transport block. Everything
/// is a pure function of the arguments.
pub fn generate_tb(
    mcs: usize,
    prb: usize,
    snr_db: f64,
    seed: u64,
    tb_id: usize,
    max_iterations: usize,
) -> Result<ReceivedTb> {
    let b = compute_tb_size(prb, &mcs_lookup(mcs)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let payload = (0..b).map(|_| rng.random_range(0..2)).collect();
    let tb = TransportBlock::new(payload, mcs, prb)?;
    let mut descriptors = build_tb_descriptors(&tb, tb_id, max_iterations)?;
    let coded = encode_transport_block(&tb, &descriptors)?;
    let channel = ChannelConfig::new(snr_db, mix(seed));
    let soft = simulate_link(&coded, tb.mcs.qm, &channel)?;
    for (d, s) in descriptors.iter_mut().zip(&soft) {
        d.set_received(s)?;
    }
    Ok(ReceivedTb { tb, descriptors, soft, channel })
}

/// Golden vectors (one per code block) for `n_tb` blocks of a cell.
pub fn golden_vectors(
    mcs: usize,
    prb: usize,
    snr_db: f64,
    seed: u64,
    n_tb: usize,
) -> Result<Vec<GoldenVector>> {
    let mut out = Vec::new();
    for i in 0..n_tb {
        let s = tb_seed(seed, i);
        let rx = generate_tb(mcs, prb, snr_db, s, i, 1)?;
        let inputs = code_block_inputs(&rx.tb, &rx.descriptors)?;
        for ((d, soft), input) in rx.descriptors.iter().zip(&rx.soft).zip(&inputs) {
            let p = &d.cb_params;
            out.push(GoldenVector::new(p.bg, p.zc, snr_db, s, input, soft.clone()));
        }
    }
    Ok(out)
}
