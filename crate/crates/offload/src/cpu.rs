//! Real multi-threaded decoding. The transport block is the unit of work:
//! each lane takes the next whole block from a shared counter and decodes
//! its code blocks back to back.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use decodex_core::nr::DecodeDescriptor;

use crate::decode::{group_by_tb, DecoderCache};
use crate::error::{config_err, Result};
use crate::report::{BackendReport, CbOutput, ClockType, TbLatency};

struct TbDone {
    group: usize,
    latency_us: f64,
    outputs: Vec<CbOutput>,
}

/// Decodes `descriptors` on `workers` threads. Per-TB latency is the wall
/// time spent decoding that block's code blocks.
pub fn cpu_decode_batch(
    descriptors: &[DecodeDescriptor],
    workers: usize,
    norm_factor: f64,
) -> Result<BackendReport> {
    if workers == 0 {
        return Err(config_err("at least one worker is required"));
    }
    let groups = group_by_tb(descriptors);
    let next = AtomicUsize::new(0);
    let started = Instant::now();
    let lanes: Vec<Result<Vec<TbDone>>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers.min(groups.len().max(1)))
            .map(|_| {
                s.spawn(|| {
                    let mut cache = DecoderCache::new(norm_factor);
                    let mut done = Vec::new();
                    loop {
                        let g = next.fetch_add(1, Ordering::Relaxed);
                        let Some((tb_id, idx)) = groups.get(g) else {
                            break;
                        };
                        let t0 = Instant::now();
                        let mut outputs = Vec::with_capacity(idx.len());
                        for &i in idx {
                            let d = &descriptors[i];
                            outputs.push(CbOutput {
                                tb_id: *tb_id,
                                cb_id: d.cb_id,
                                result: cache.decode(d)?,
                            });
                        }
                        let latency_us = t0.elapsed().as_secs_f64() * 1e6;
                        done.push(TbDone { group: g, latency_us, outputs });
                    }
                    Ok(done)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("decode lane panicked")).collect()
    });
    let total_us = started.elapsed().as_secs_f64() * 1e6;

    let mut done: Vec<TbDone> = Vec::with_capacity(groups.len());
    for lane in lanes {
        done.extend(lane?);
    }
    done.sort_by_key(|t| t.group);
    let tb_latencies =
        done.iter().map(|t| TbLatency { tb_id: groups[t.group].0, latency_us: t.latency_us }).collect();
    Ok(BackendReport {
        clock: Some(ClockType::Wall),
        tb_latencies,
        total_us,
        outputs: done.into_iter().flat_map(|t| t.outputs).collect(),
        ..Default::default()
    })
}
