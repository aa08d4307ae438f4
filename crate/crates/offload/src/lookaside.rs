//! Discrete-event model of a lookaside decode accelerator driven through a
//! single queue pair.
//!
//! An op accepted at host time `now` reaches the device after its DMA setup
//! and input copy, starts no earlier than one initiation interval after the
//! previous start, and is complete once decoding and the result write-back
//! are done. The host only learns about completions by polling.

use std::collections::{HashMap, VecDeque};

use decodex_core::ldpc::DecodeResult;
use decodex_core::nr::DecodeDescriptor;

use crate::backend::BackendKnobs;
use crate::decode::{io_bytes, DecoderCache};
use crate::error::{config_err, Result};
use crate::model::{ns_to_us, us_to_ns, LatencyModel};
use crate::report::{BackendFailure, BackendReport, CbOutput, ClockType, TbLatency};

struct InFlight {
    descriptor: DecodeDescriptor,
    enqueued_at: u64,
    completion: u64,
}

/// A dequeued op. Times are virtual nanoseconds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completion {
    pub tb_id: usize,
    pub cb_id: usize,
    pub enqueued_at: u64,
    pub completed_at: u64,
    pub dequeued_at: u64,
    pub result: DecodeResult,
}

pub struct QueuePair {
    model: LatencyModel,
    depth: usize,
    fifo: VecDeque<InFlight>,
    last_start: Option<u64>,
    enqueued: u64,
    dequeued: u64,
    decoders: DecoderCache,
}

impl QueuePair {
    pub fn new(model: LatencyModel, depth: usize, norm_factor: f64) -> Result<Self> {
        model.validate()?;
        if depth == 0 {
            return Err(config_err("queue depth must be at least 1"));
        }
        Ok(Self {
            model,
            depth,
            fifo: VecDeque::new(),
            last_start: None,
            enqueued: 0,
            dequeued: 0,
            decoders: DecoderCache::new(norm_factor),
        })
    }

    /// Offers one op at host time `now` (ns). Returns its completion time,
    /// or `None` when the queue is full and the caller must retry.
    pub fn enqueue(&mut self, op: &DecodeDescriptor, now: u64) -> Option<u64> {
        if self.fifo.len() >= self.depth {
            return None;
        }
        let m = &self.model;
        let (bytes_in, bytes_out) = io_bytes(op);
        let arrival = now + us_to_ns(m.dma_overhead) + m.transfer_ns(bytes_in);
        let start = match self.last_start {
            Some(prev) => arrival.max(prev + us_to_ns(m.pipeline_ii)),
            None => arrival,
        };
        let completion =
            start + us_to_ns(m.op_service) + us_to_ns(m.return_overhead) + m.transfer_ns(bytes_out);
        self.last_start = Some(start);
        self.fifo.push_back(InFlight { descriptor: op.clone(), enqueued_at: now, completion });
        self.enqueued += 1;
        Some(completion)
    }

    /// Returns up to `max_ops` completed ops in FIFO order, decoding each
    /// one. Stops at the first op that is not yet complete at `now`.
    pub fn dequeue(&mut self, max_ops: usize, now: u64) -> Result<Vec<Completion>> {
        let mut out = Vec::new();
        while out.len() < max_ops {
            match self.fifo.front() {
                Some(f) if f.completion <= now => {}
                _ => break,
            }
            let f = self.fifo.pop_front().expect("front checked above");
            let result = self.decoders.decode(&f.descriptor)?;
            out.push(Completion {
                tb_id: f.descriptor.tb_id,
                cb_id: f.descriptor.cb_id,
                enqueued_at: f.enqueued_at,
                completed_at: f.completion,
                dequeued_at: now,
                result,
            });
        }
        self.dequeued += out.len() as u64;
        Ok(out)
    }

    pub fn outstanding(&self) -> usize {
        self.fifo.len()
    }

    pub fn front_completion(&self) -> Option<u64> {
        self.fifo.front().map(|f| f.completion)
    }

    pub fn enqueued(&self) -> u64 {
        self.enqueued
    }

    pub fn dequeued(&self) -> u64 {
        self.dequeued
    }
}

/// Number of polling periods after `now` until the first poll at or after
/// `target`; with event-driven polling this is always one.
fn polls_until(now: u64, target: u64, poll: u64) -> u64 {
    if poll == 0 {
        1
    } else {
        target.saturating_sub(now).div_ceil(poll).max(1)
    }
}

fn advance(now: u64, target: u64, poll: u64) -> u64 {
    if poll == 0 {
        target.max(now)
    } else {
        now + polls_until(now, target, poll) * poll
    }
}

/// Collects completions into the report and tracks per-TB timing.
struct Recorder {
    arrival: HashMap<usize, u64>,
    finish: HashMap<usize, u64>,
    order: Vec<usize>,
    outputs: Vec<CbOutput>,
}

impl Recorder {
    fn new(descriptors: &[DecodeDescriptor], gap: u64) -> Self {
        let mut arrival = HashMap::new();
        let mut order = Vec::new();
        for (i, d) in descriptors.iter().enumerate() {
            arrival.entry(d.tb_id).or_insert_with(|| {
                order.push(d.tb_id);
                i as u64 * gap
            });
        }
        Self { arrival, finish: HashMap::new(), order, outputs: Vec::new() }
    }

    fn record(&mut self, done: Vec<Completion>) {
        for c in done {
            let f = self.finish.entry(c.tb_id).or_insert(0);
            *f = (*f).max(c.dequeued_at);
            self.outputs.push(CbOutput { tb_id: c.tb_id, cb_id: c.cb_id, result: c.result });
        }
    }

    fn finish(self, q: &QueuePair, now: u64, failure: Option<BackendFailure>) -> BackendReport {
        let tb_latencies = self
            .order
            .iter()
            .filter_map(|tb| {
                let end = self.finish.get(tb)?;
                Some(TbLatency { tb_id: *tb, latency_us: ns_to_us(end - self.arrival[tb]) })
            })
            .collect();
        BackendReport {
            clock: Some(ClockType::Virtual),
            tb_latencies,
            total_us: ns_to_us(now),
            enqueued: q.enqueued(),
            dequeued: q.dequeued(),
            outputs: self.outputs,
            failure,
            ..Default::default()
        }
    }
}

/// One op at a time: enqueue, poll until it comes back, then the next.
pub fn run_lookaside_sequential(
    descriptors: &[DecodeDescriptor],
    model: &LatencyModel,
    knobs: &BackendKnobs,
) -> Result<BackendReport> {
    let mut q = QueuePair::new(*model, knobs.queue_depth, knobs.norm_factor)?;
    let poll = us_to_ns(model.poll_interval);
    let gap = us_to_ns(knobs.inter_symbol_gap_us);
    let mut rec = Recorder::new(descriptors, gap);
    let mut now = 0u64;
    for (i, d) in descriptors.iter().enumerate() {
        now = now.max(i as u64 * gap);
        let completion = q.enqueue(d, now).expect("an empty queue accepts one op");
        loop {
            let done = q.dequeue(1, now)?;
            if !done.is_empty() {
                rec.record(done);
                break;
            }
            now = advance(now, completion, poll);
        }
    }
    Ok(rec.finish(&q, now, None))
}

/// Every op is enqueued as soon as it is available (reclaiming completed
/// ops on backpressure), then a single drain phase polls with a retry cap.
pub fn run_lookaside_bulk(
    descriptors: &[DecodeDescriptor],
    model: &LatencyModel,
    knobs: &BackendKnobs,
) -> Result<BackendReport> {
    let mut q = QueuePair::new(*model, knobs.queue_depth, knobs.norm_factor)?;
    let poll = us_to_ns(model.poll_interval);
    let gap = us_to_ns(knobs.inter_symbol_gap_us);
    let mut rec = Recorder::new(descriptors, gap);
    let mut now = 0u64;

    for (i, d) in descriptors.iter().enumerate() {
        now = now.max(i as u64 * gap);
        while q.enqueue(d, now).is_none() {
            let done = q.dequeue(usize::MAX, now)?;
            if done.is_empty() {
                let front = q.front_completion().expect("a full queue has a front");
                now = advance(now, front, poll);
            }
            rec.record(done);
        }
    }

    let max_retries = knobs.max_drain_retries;
    let mut retries = 0u64;
    let mut failure = None;
    while q.outstanding() > 0 {
        if retries >= max_retries {
            failure = Some(BackendFailure::DrainShortfall {
                enqueued: q.enqueued(),
                dequeued: q.dequeued(),
                retries,
            });
            break;
        }
        let done = q.dequeue(usize::MAX, now)?;
        retries += 1;
        rec.record(done);
        let Some(front) = q.front_completion() else {
            break;
        };
        if retries >= max_retries {
            continue;
        }
        // Polls between now and the next completion return nothing; they
        // are counted against the cap without being simulated one by one.
        let empty = polls_until(now, front, poll) - 1;
        if retries + empty >= max_retries {
            now += (max_retries - retries) * poll;
            retries = max_retries;
            continue;
        }
        retries += empty;
        now = advance(now, front, poll);
    }
    if failure.is_none() {
        assert_eq!(q.enqueued(), q.dequeued(), "successful drain must balance enqueue and dequeue");
    }
    Ok(rec.finish(&q, now, failure))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decode::test_support::descriptors;

    const US: u64 = 1000;

    #[test]
    fn single_op_completion_time() {
        let m = LatencyModel::lookaside_default();
        let mut q = QueuePair::new(m, 4, 0.75).unwrap();
        let d = descriptors(1);
        assert_eq!(q.enqueue(&d[0], 5 * US), Some(35 * US));
    }

    #[test]
    fn back_to_back_ops_are_pipelined() {
        let m = LatencyModel::lookaside_default();
        let mut q = QueuePair::new(m, 4, 0.75).unwrap();
        let d = descriptors(2);
        let first = q.enqueue(&d[0], 0).unwrap();
        let second = q.enqueue(&d[1], 0).unwrap();
        // first starts at 10 us; second at 10 + ii, then 18 + 2 more
        assert_eq!(first, 30 * US);
        assert_eq!(second, (10 + 1 + 18 + 2) * US);
    }

    #[test]
    fn transfer_cost_is_charged_both_ways() {
        let m = LatencyModel { transfer_per_byte: 0.01, ..LatencyModel::lookaside_default() };
        let mut q = QueuePair::new(m, 4, 0.75).unwrap();
        let d = descriptors(1);
        let (bin, bout) = io_bytes(&d[0]);
        let expect = 30 * US + us_to_ns(0.01 * bin as f64) + us_to_ns(0.01 * bout as f64);
        assert_eq!(q.enqueue(&d[0], 0), Some(expect));
    }

    #[test]
    fn full_queue_rejects() {
        let mut q = QueuePair::new(LatencyModel::lookaside_default(), 2, 0.75).unwrap();
        let d = descriptors(3);
        assert!(q.enqueue(&d[0], 0).is_some());
        assert!(q.enqueue(&d[1], 0).is_some());
        assert!(q.enqueue(&d[2], 0).is_none());
        assert_eq!(q.outstanding(), 2);
    }

    #[test]
    fn dequeue_respects_time_and_fifo() {
        let mut q = QueuePair::new(LatencyModel::lookaside_default(), 8, 0.75).unwrap();
        let d = descriptors(4);
        for op in &d {
            q.enqueue(op, 0).unwrap();
        }
        assert!(q.dequeue(8, 29 * US).unwrap().is_empty());
        let got = q.dequeue(8, u64::MAX).unwrap();
        let ids: Vec<_> = got.iter().map(|c| (c.tb_id, c.cb_id)).collect();
        assert_eq!(ids, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert_eq!(q.enqueued(), q.dequeued());
    }

    #[test]
    fn sequential_and_bulk_totals() {
        let m = LatencyModel::lookaside_default();
        let k = BackendKnobs::default();
        let seq = run_lookaside_sequential(&descriptors(10), &m, &k).unwrap();
        let bulk = run_lookaside_bulk(&descriptors(10), &m, &k).unwrap();
        assert_eq!(seq.total_us, 300.0);
        assert_eq!(bulk.total_us, 10.0 + 29.0);
        let one_seq = run_lookaside_sequential(&descriptors(1), &m, &k).unwrap();
        let one_bulk = run_lookaside_bulk(&descriptors(1), &m, &k).unwrap();
        assert_eq!(one_seq.total_us, one_bulk.total_us);
    }

    #[test]
    fn backpressure_reclaims_completed_ops() {
        let m = LatencyModel::lookaside_default();
        let k = BackendKnobs { queue_depth: 3, ..Default::default() };
        let r = run_lookaside_bulk(&descriptors(20), &m, &k).unwrap();
        assert!(r.failure.is_none());
        assert_eq!((r.enqueued, r.dequeued), (20, 20));
        assert_eq!(r.outputs.len(), 20);
    }

    #[test]
    fn event_driven_polling_matches_fine_grid() {
        let k = BackendKnobs::default();
        let grid = LatencyModel::lookaside_default();
        let exact = LatencyModel { poll_interval: 0.0, ..grid };
        let a = run_lookaside_bulk(&descriptors(7), &grid, &k).unwrap();
        let b = run_lookaside_bulk(&descriptors(7), &exact, &k).unwrap();
        assert_eq!(a.total_us, b.total_us);
    }

    #[test]
    fn drain_cap_reports_shortfall() {
        let m = LatencyModel::lookaside_default();
        let k = BackendKnobs { max_drain_retries: 5, ..Default::default() };
        let r = run_lookaside_bulk(&descriptors(4), &m, &k).unwrap();
        match r.failure {
            Some(BackendFailure::DrainShortfall { enqueued, dequeued, retries }) => {
                assert_eq!((enqueued, dequeued, retries), (4, 0, 5));
            }
            other => panic!("expected shortfall, got {other:?}"),
        }
    }
}
