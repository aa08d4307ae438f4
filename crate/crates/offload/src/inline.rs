//! Discrete-event model of an inline decode accelerator that decodes
//! batches of codewords per kernel launch.
//!
//! A launch over `c` codewords takes
//! `launch_overhead + ceil(c / capacity) * per_codeword_time`. Host/device copies (`dma_overhead` plus a per-byte
//! cost) are added around each launch; the unified-memory variant sets both
//! to zero.

use decodex_core::nr::DecodeDescriptor;

use crate::decode::{group_by_tb, io_bytes, DecoderCache};
use crate::error::Result;
use crate::model::{ns_to_us, us_to_ns, LatencyModel};
use crate::report::{BackendReport, CbOutput, ClockType, TbLatency};

fn kernel_ns(model: &LatencyModel, codewords: usize) -> u64 {
    us_to_ns(model.launch_overhead)
        + codewords.div_ceil(model.capacity) as u64 * us_to_ns(model.per_codeword_time)
}

fn copy_ns(model: &LatencyModel, descriptors: &[&DecodeDescriptor]) -> u64 {
    let bytes: usize = descriptors
        .iter()
        .map(|d| {
            let (i, o) = io_bytes(d);
            i + o
        })
        .sum();
    us_to_ns(model.dma_overhead) + model.transfer_ns(bytes)
}

fn occupancy(model: &LatencyModel, codewords: usize) -> f64 {
    codewords.min(model.capacity) as f64 / model.capacity as f64
}

fn decode_all(descriptors: &[DecodeDescriptor], norm_factor: f64) -> Result<Vec<CbOutput>> {
    let mut cache = DecoderCache::new(norm_factor);
    group_by_tb(descriptors)
        .into_iter()
        .flat_map(|(_, idx)| idx)
        .map(|i| {
            let d = &descriptors[i];
            Ok(CbOutput { tb_id: d.tb_id, cb_id: d.cb_id, result: cache.decode(d)? })
        })
        .collect()
}

/// One launch per transport block, one after another.
pub fn inline_decode_sequential(
    descriptors: &[DecodeDescriptor],
    model: &LatencyModel,
    norm_factor: f64,
) -> Result<BackendReport> {
    model.validate()?;
    let mut now = 0u64;
    let mut kernel = 0u64;
    let mut tb_latencies = Vec::new();
    let mut launch_utilization = Vec::new();
    for (tb_id, idx) in group_by_tb(descriptors) {
        let batch: Vec<&DecodeDescriptor> = idx.iter().map(|&i| &descriptors[i]).collect();
        let k = kernel_ns(model, batch.len());
        kernel += k;
        now += copy_ns(model, &batch) + k;
        tb_latencies.push(TbLatency { tb_id, latency_us: ns_to_us(now) });
        launch_utilization.push(occupancy(model, batch.len()));
    }
    let utilization = mean(&launch_utilization);
    Ok(BackendReport {
        clock: Some(ClockType::Virtual),
        tb_latencies,
        total_us: ns_to_us(now),
        kernel_us: Some(ns_to_us(kernel)),
        utilization,
        launch_utilization,
        outputs: decode_all(descriptors, norm_factor)?,
        ..Default::default()
    })
}

/// A single launch over every codeword of every transport block.
pub fn inline_decode_parallel(
    descriptors: &[DecodeDescriptor],
    model: &LatencyModel,
    norm_factor: f64,
) -> Result<BackendReport> {
    model.validate()?;
    let all: Vec<&DecodeDescriptor> = descriptors.iter().collect();
    let (kernel, total, launch_utilization) = if all.is_empty() {
        (0, 0, Vec::new())
    } else {
        let k = kernel_ns(model, all.len());
        (k, copy_ns(model, &all) + k, vec![occupancy(model, all.len())])
    };
    let tb_latencies = group_by_tb(descriptors)
        .into_iter()
        .map(|(tb_id, _)| TbLatency { tb_id, latency_us: ns_to_us(total) })
        .collect();
    Ok(BackendReport {
        clock: Some(ClockType::Virtual),
        tb_latencies,
        total_us: ns_to_us(total),
        kernel_us: Some(ns_to_us(kernel)),
        utilization: mean(&launch_utilization),
        launch_utilization,
        outputs: decode_all(descriptors, norm_factor)?,
        ..Default::default()
    })
}

fn mean(v: &[f64]) -> Option<f64> {
    (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
}
