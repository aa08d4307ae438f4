//! End-to-end transport-block chain: CRC, segmentation, encoding, rate
//! matching, QAM over AWGN, de-matching, decoding and reassembly.

use decodex_core::ldpc::{decode_layered_minsum, BaseGraphId, DEFAULT_MAX_ITERATIONS, DEFAULT_NORM_FACTOR};
use decodex_core::nr::{
    build_tb_descriptors, compute_tb_size, desegment, encode_transport_block, mcs_lookup, TransportBlock,
};
use decodex_core::phy::{simulate_link, ChannelConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    payload_exact: bool,
    bg: BaseGraphId,
    c: usize,
}

fn run_tb(mcs: usize, prb: usize, snr_db: f64, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = compute_tb_size(prb, &mcs_lookup(mcs).unwrap());
    let payload: Vec<u8> = (0..b).map(|_| rng.random_range(0..2)).collect();
    let tb = TransportBlock::new(payload.clone(), mcs, prb).unwrap();
    let mut ds = build_tb_descriptors(&tb, 0, DEFAULT_MAX_ITERATIONS).unwrap();
    let coded = encode_transport_block(&tb, &ds).unwrap();
    let soft = simulate_link(&coded, tb.mcs.qm, &ChannelConfig::new(snr_db, seed)).unwrap();
    for (d, s) in ds.iter_mut().zip(&soft) {
        d.set_received(s).unwrap();
    }
    let decoded: Vec<Vec<u8>> = ds
        .iter()
        .map(|d| {
            decode_layered_minsum(&d.llr, &d.cb_params, d.max_iterations, DEFAULT_NORM_FACTOR).unwrap().bits
        })
        .collect();
    let refs: Vec<&[u8]> = decoded.iter().map(Vec::as_slice).collect();
    let status = desegment(&ds, &refs, b).unwrap();
    Outcome { ok: status.ok(), payload_exact: status.payload == payload, bg: ds[0].cb_params.bg, c: ds.len() }
}

#[test]
fn high_snr_chain_is_error_free_across_graphs_and_segmentations() {
    // (mcs, prb) chosen to cover BG1/BG2, single/multiple code blocks and
    // QPSK/16QAM/64QAM.
    let cells = [(2, 20), (2, 100), (9, 30), (9, 100), (12, 10), (12, 100), (19, 5), (19, 20)];
    let mut seen = std::collections::HashSet::new();
    for (mcs, prb) in cells {
        for t in 0..4 {
            let out = run_tb(mcs, prb, 30.0, 1000 * mcs as u64 + t);
            assert!(out.ok && out.payload_exact, "mcs {mcs} prb {prb} tb {t}");
            seen.insert((out.bg, out.c > 1));
        }
    }
    assert_eq!(seen.len(), 4, "grid must cover every (graph, segmented) pair: {seen:?}");
}

#[test]
fn noiseless_chain_is_error_free() {
    for (mcs, prb) in [(0, 1), (27, 50)] {
        let out = run_tb(mcs, prb, f64::INFINITY, 5);
        assert!(out.ok && out.payload_exact);
    }
}

#[test]
fn very_low_snr_fails_crc() {
    // At -10 dB a 64QAM block cannot be decoded; the CRC must say so.
    let out = run_tb(19, 20, -10.0, 3);
    assert!(!out.ok);
}

#[test]
fn chain_is_a_pure_function_of_its_inputs() {
    let a = run_tb(9, 30, 3.0, 77);
    let b = run_tb(9, 30, 3.0, 77);
    assert_eq!((a.ok, a.payload_exact), (b.ok, b.payload_exact));
}
