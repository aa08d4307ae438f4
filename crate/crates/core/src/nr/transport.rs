use crate::error::{arg_err, Result};
use crate::ldpc::{encode, CodeBlockParams, LlrBlock};
use crate::Bit;

use super::crc::{crc24, crc24_attach, crc24_check, CrcVariant, CRC_LEN};
use super::mcs::{mcs_lookup, McsEntry};
use super::rate_match::{rate_dematch, rate_match};
use super::segment::{segment, select_base_graph, SegmentationPlan};
use super::tbs::data_resource_elements;

/// A MAC-scheduled payload together with its allocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportBlock {
    pub payload: Vec<Bit>,
    pub mcs: McsEntry,
    pub prb: usize,
    pub tb_crc: u32,
}

impl TransportBlock {
    pub fn new(payload: Vec<Bit>, mcs_index: usize, prb: usize) -> Result<Self> {
        if payload.is_empty() || !payload.len().is_multiple_of(8) {
            return Err(arg_err(format!(
                "payload of {} bits is not a positive whole number of bytes",
                payload.len()
            )));
        }
        if prb == 0 {
            return Err(arg_err("at least one PRB is required"));
        }
        let mcs = mcs_lookup(mcs_index)?;
        let tb_crc = crc24(&payload, CrcVariant::A)?;
        Ok(Self { payload, mcs, prb, tb_crc })
    }

    pub fn len(&self) -> usize {
        self.payload.len()
    }

    pub fn is_empty(&self) -> bool {
        self.payload.is_empty()
    }

    pub fn plan(&self) -> Result<SegmentationPlan> {
        segment(self.len(), select_base_graph(self.len(), self.mcs.rate()))
    }
}

/// Coded bits available to a transport block: every data resource element
/// carries `qm` bits.
pub fn coded_bits_for(prb: usize, mcs: &McsEntry) -> usize {
    data_resource_elements(prb) * usize::from(mcs.qm)
}

/// One code-block decode operation as handed to a backend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeDescriptor {
    pub tb_id: usize,
    pub cb_id: usize,
    pub cb_params: CodeBlockParams,
    /// Decoder input of length `n_full` (post de-rate-matching).
    pub llr: LlrBlock,
    pub max_iterations: usize,
    /// Offset of this block's data inside the reassembled payload+TB-CRC.
    pub output_slot: usize,
    /// Transport-block bits carried by this code block.
    pub data_bits: usize,
    /// The block carries its own CRC24B.
    pub cb_crc: bool,
}

impl DecodeDescriptor {
    /// Installs the received soft values (`cb_params.e` of them).
    pub fn set_received(&mut self, llrs: &[i8]) -> Result<()> {
        self.llr = rate_dematch(llrs, &self.cb_params)?;
        Ok(())
    }

    /// Soft input for a block with nothing received: filler known, rest erased.
    fn erased(params: &CodeBlockParams) -> LlrBlock {
        let mut llr = LlrBlock::zeros(params.n_full);
        llr.as_mut_slice()[params.filler_range()].fill(LlrBlock::MAX);
        llr
    }
}

/// Plans the code blocks of `tb`: one descriptor per block, the TB's coded
/// bits split evenly with the remainder on the last block. Soft inputs start
/// fully erased; see [`DecodeDescriptor::set_received`].
pub fn build_tb_descriptors(
    tb: &TransportBlock,
    tb_id: usize,
    max_iterations: usize,
) -> Result<Vec<DecodeDescriptor>> {
    plan_descriptors(&tb.plan()?, coded_bits_for(tb.prb, &tb.mcs), tb_id, max_iterations)
}

/// Descriptors for a segmentation plan given the total coded-bit budget
/// `g` of the transport block.
pub fn plan_descriptors(
    plan: &SegmentationPlan,
    g: usize,
    tb_id: usize,
    max_iterations: usize,
) -> Result<Vec<DecodeDescriptor>> {
    let per_cb = g / plan.c;
    if per_cb == 0 {
        return Err(arg_err(format!("{g} coded bits cannot cover {} code blocks", plan.c)));
    }
    let data_bits = plan.data_bits_per_cb();
    Ok((0..plan.c)
        .map(|cb_id| {
            let e = if cb_id + 1 == plan.c { g - per_cb * (plan.c - 1) } else { per_cb };
            let cb_params = plan.params.with_e(e);
            DecodeDescriptor {
                tb_id,
                cb_id,
                cb_params,
                llr: DecodeDescriptor::erased(&cb_params),
                max_iterations,
                output_slot: cb_id * data_bits,
                data_bits,
                cb_crc: plan.has_cb_crc(),
            }
        })
        .collect())
}

/// Payload plus TB-CRC, zero-padded to the capacity of the code blocks.
fn framed_bits(tb: &TransportBlock, descriptors: &[DecodeDescriptor]) -> Result<Vec<Bit>> {
    let mut bits = crc24_attach(&tb.payload, CrcVariant::A)?;
    let capacity: usize = descriptors.iter().map(|d| d.data_bits).sum();
    if capacity < bits.len() {
        return Err(arg_err("descriptors do not cover the transport block"));
    }
    bits.resize(capacity, 0);
    Ok(bits)
}

/// Encoder input of every code block (`K'` bits: data plus CB-CRC when
/// present), in descriptor order.
pub fn code_block_inputs(tb: &TransportBlock, descriptors: &[DecodeDescriptor]) -> Result<Vec<Vec<Bit>>> {
    let framed = framed_bits(tb, descriptors)?;
    descriptors
        .iter()
        .map(|d| {
            let data = &framed[d.output_slot..d.output_slot + d.data_bits];
            if d.cb_crc {
                crc24_attach(data, CrcVariant::B)
            } else {
                Ok(data.to_vec())
            }
        })
        .collect()
}

/// Runs the transmit chain up to rate matching: returns the `e` coded bits
/// of every code block, in descriptor order.
pub fn encode_transport_block(
    tb: &TransportBlock,
    descriptors: &[DecodeDescriptor],
) -> Result<Vec<Vec<Bit>>> {
    code_block_inputs(tb, descriptors)?
        .into_iter()
        .zip(descriptors)
        .map(|(mut info, d)| {
            let p = &d.cb_params;
            info.resize(p.k, 0);
            rate_match(&encode(&info, p)?, p)
        })
        .collect()
}

/// Result of reassembling one transport block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TbDecodeStatus {
    pub payload: Vec<Bit>,
    /// Per code block CRC24B result; all true when blocks carry no CRC.
    pub cb_crc_ok: Vec<bool>,
    pub tb_crc_ok: bool,
}

impl TbDecodeStatus {
    pub fn ok(&self) -> bool {
        self.tb_crc_ok && self.cb_crc_ok.iter().all(|&ok| ok)
    }
}

/// Reassembles a transport block from the systematic hard decisions of its
/// code blocks (`decoded[i]` belongs to `descriptors[i]`) and checks CRCs.
/// `payload_len` is the payload size `B` without TB-CRC.
pub fn desegment(
    descriptors: &[DecodeDescriptor],
    decoded: &[&[Bit]],
    payload_len: usize,
) -> Result<TbDecodeStatus> {
    if descriptors.len() != decoded.len() || descriptors.is_empty() {
        return Err(arg_err("one decoded block per descriptor is required"));
    }
    let capacity: usize = descriptors.iter().map(|d| d.data_bits).sum();
    if capacity < payload_len + CRC_LEN {
        return Err(arg_err("descriptors do not cover the transport block"));
    }
    let mut framed = vec![0u8; capacity];
    let mut cb_crc_ok = Vec::with_capacity(descriptors.len());
    for (d, bits) in descriptors.iter().zip(decoded) {
        let k_prime = d.cb_params.k_prime();
        if bits.len() < k_prime {
            return Err(arg_err(format!("decoded block has {} < K' = {k_prime} bits", bits.len())));
        }
        cb_crc_ok.push(!d.cb_crc || crc24_check(&bits[..k_prime], CrcVariant::B)?);
        framed[d.output_slot..d.output_slot + d.data_bits].copy_from_slice(&bits[..d.data_bits]);
    }
    let with_crc = &framed[..payload_len + CRC_LEN];
    Ok(TbDecodeStatus {
        payload: with_crc[..payload_len].to_vec(),
        cb_crc_ok,
        tb_crc_ok: crc24_check(with_crc, CrcVariant::A)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ldpc::{decode_layered_minsum, BaseGraphId};
    use crate::nr::tbs::compute_tb_size;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_tb(rng: &mut ChaCha8Rng, b: usize, mcs: usize, prb: usize) -> TransportBlock {
        TransportBlock::new((0..b).map(|_| rng.random_range(0..2)).collect(), mcs, prb).unwrap()
    }

    #[test]
    fn rejects_unaligned_payload() {
        assert!(TransportBlock::new(vec![0; 12], 0, 10).is_err());
        assert!(TransportBlock::new(vec![], 0, 10).is_err());
        assert!(TransportBlock::new(vec![0; 16], 28, 10).is_err());
    }

    #[test]
    fn single_and_split_descriptors() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // MCS 27 keeps the rate above 2/3 so BG1 is selected.
        let one = build_tb_descriptors(&random_tb(&mut rng, 8424, 27, 60), 0, 20).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].cb_params.bg, BaseGraphId::Bg1);
        let two = build_tb_descriptors(&random_tb(&mut rng, 8432, 27, 60), 0, 20).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(two[0].output_slot + two[0].data_bits, two[1].output_slot);
        let cap: usize = two.iter().map(|d| d.data_bits).sum();
        assert!(cap >= 8432 + 24);
    }

    #[test]
    fn e_split_sums_to_capacity() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mcs = mcs_lookup(15).unwrap();
        let b = compute_tb_size(180, &mcs);
        let ds = build_tb_descriptors(&random_tb(&mut rng, b, 15, 180), 3, 20).unwrap();
        assert!(ds.len() > 1);
        let total: usize = ds.iter().map(|d| d.cb_params.e).sum();
        assert_eq!(total, coded_bits_for(180, &mcs));
        assert!(ds[..ds.len() - 1].iter().all(|d| d.cb_params.e == ds[0].cb_params.e));
        assert!(ds.iter().all(|d| d.tb_id == 3 && d.llr.len() == d.cb_params.n_full));
    }

    #[test]
    fn noiseless_chain_recovers_payload() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (mcs, prb) in [(4, 10), (9, 100), (19, 40), (27, 200)] {
            let b = compute_tb_size(prb, &mcs_lookup(mcs).unwrap());
            let tb = random_tb(&mut rng, b, mcs, prb);
            let mut ds = build_tb_descriptors(&tb, 0, 20).unwrap();
            let coded = encode_transport_block(&tb, &ds).unwrap();
            for (d, bits) in ds.iter_mut().zip(&coded) {
                let soft: Vec<i8> = bits.iter().map(|&x| if x == 0 { 20 } else { -20 }).collect();
                d.set_received(&soft).unwrap();
            }
            let results: Vec<_> =
                ds.iter().map(|d| decode_layered_minsum(&d.llr, &d.cb_params, 20, 0.75).unwrap()).collect();
            let bits: Vec<&[u8]> = results.iter().map(|r| r.bits.as_slice()).collect();
            let status = desegment(&ds, &bits, b).unwrap();
            assert!(status.ok(), "mcs {mcs} prb {prb}");
            assert_eq!(status.payload, tb.payload);
        }
    }

    #[test]
    fn corrupted_block_fails_crc() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let tb = random_tb(&mut rng, 9000, 27, 60);
        let ds = build_tb_descriptors(&tb, 0, 20).unwrap();
        let framed = framed_bits(&tb, &ds).unwrap();
        let mut blocks: Vec<Vec<u8>> = ds
            .iter()
            .map(|d| crc24_attach(&framed[d.output_slot..][..d.data_bits], CrcVariant::B).unwrap())
            .collect();
        let bits: Vec<&[u8]> = blocks.iter().map(Vec::as_slice).collect();
        assert!(desegment(&ds, &bits, 9000).unwrap().ok());
        blocks[1][5] ^= 1;
        let bits: Vec<&[u8]> = blocks.iter().map(Vec::as_slice).collect();
        let status = desegment(&ds, &bits, 9000).unwrap();
        assert_eq!(status.cb_crc_ok, vec![true, false]);
        assert!(!status.tb_crc_ok);
    }
}
