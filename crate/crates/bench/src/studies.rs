use std::time::Instant;

use decodex_core::ldpc::{DecoderConfig, LayeredDecoder, DEFAULT_NORM_FACTOR};
use decodex_core::nr::{
    encode_transport_block, plan_descriptors, segment, select_base_graph, DecodeDescriptor, TransportBlock,
    CRC_LEN,
};
use decodex_core::phy::{simulate_link, ChannelConfig};
use decodex_offload::{
    inline_decode_parallel, inline_decode_sequential, run_lookaside_bulk, run_lookaside_sequential,
    BackendKnobs, LatencyModel,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chain::generate_tb;
use crate::emit::format_g;
use crate::error::{config_err, Result};

/// Rows of the study tables, printed as CSV by the CLI.
pub trait StudyRow {
    const HEADER: &'static str;
    fn cells(&self) -> Vec<String>;

    fn csv_line(&self) -> String {
        self.cells().join(",")
    }
}

/// Information sizes and code rates of the iteration study.
pub const ITERATION_CASES: [(usize, f64); 3] = [(1936, 0.33), (4224, 0.33), (8440, 0.88)];
pub const ITERATION_COUNTS: [usize; 3] = [2, 4, 8];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BulkRow {
    pub n_ops: usize,
    /// Operations per second of virtual time.
    pub sequential_tput: f64,
    pub bulk_tput: f64,
    pub ratio: f64,
    #[serde(skip)]
    pub failure: Option<String>,
}

/// Sequential versus bulk lookaside dispatch of `n` identical small ops.
pub fn run_bulk_study(
    n_ops_list: &[usize],
    model: &LatencyModel,
    knobs: &BackendKnobs,
) -> Result<Vec<BulkRow>> {
    if n_ops_list.is_empty() || n_ops_list.contains(&0) {
        return Err(config_err("op counts must be positive"));
    }
    let template = generate_tb(0, 1, f64::INFINITY, 0, 0, 1)?.descriptors;
    n_ops_list
        .iter()
        .map(|&n| {
            let ops: Vec<DecodeDescriptor> =
                (0..n).map(|i| DecodeDescriptor { tb_id: i, ..template[0].clone() }).collect();
            let seq = run_lookaside_sequential(&ops, model, knobs)?;
            let bulk = run_lookaside_bulk(&ops, model, knobs)?;
            let tput = |total_us: f64| n as f64 / (total_us * 1e-6);
            let (s, b) = (tput(seq.total_us), tput(bulk.total_us));
            Ok(BulkRow {
                n_ops: n,
                sequential_tput: s,
                bulk_tput: b,
                ratio: b / s,
                failure: bulk.failure.map(|f| f.to_string()),
            })
        })
        .collect()
}

impl StudyRow for BulkRow {
    const HEADER: &'static str = "n_ops,sequential_tput,bulk_tput,ratio";
    fn cells(&self) -> Vec<String> {
        vec![
            self.n_ops.to_string(),
            format_g(self.sequential_tput),
            format_g(self.bulk_tput),
            format_g(self.ratio),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParallelRow {
    pub n_ue: usize,
    pub sequential_kernel_us: f64,
    pub parallel_kernel_us: f64,
    pub sequential_total_us: f64,
    pub parallel_total_us: f64,
    pub sequential_utilization: f64,
    pub parallel_utilization: f64,
}

impl ParallelRow {
    pub fn kernel_ratio(&self) -> f64 {
        self.sequential_kernel_us / self.parallel_kernel_us
    }
}

/// Splits `prb_total` over `n_ue` users (remainder to the last), builds one
/// transport block per user and launches them one by one or all at once.
/// Kernel columns exclude host copies; total columns include them.
pub fn run_parallel_study(
    n_ue_list: &[usize],
    prb_total: usize,
    mcs: usize,
    model: &LatencyModel,
) -> Result<Vec<ParallelRow>> {
    if n_ue_list.is_empty() {
        return Err(config_err("no UE counts given"));
    }
    n_ue_list
        .iter()
        .map(|&n_ue| {
            if n_ue == 0 || n_ue > prb_total {
                return Err(config_err(format!("{n_ue} UEs cannot share {prb_total} PRBs")));
            }
            let share = prb_total / n_ue;
            let mut descriptors = Vec::new();
            for ue in 0..n_ue {
                let prb = if ue + 1 == n_ue { prb_total - share * (n_ue - 1) } else { share };
                descriptors.extend(generate_tb(mcs, prb, f64::INFINITY, ue as u64, ue, 20)?.descriptors);
            }
            let seq = inline_decode_sequential(&descriptors, model, DEFAULT_NORM_FACTOR)?;
            let par = inline_decode_parallel(&descriptors, model, DEFAULT_NORM_FACTOR)?;
            Ok(ParallelRow {
                n_ue,
                sequential_kernel_us: seq.kernel_us.unwrap_or_default(),
                parallel_kernel_us: par.kernel_us.unwrap_or_default(),
                sequential_total_us: seq.total_us,
                parallel_total_us: par.total_us,
                sequential_utilization: seq.utilization.unwrap_or_default(),
                parallel_utilization: par.utilization.unwrap_or_default(),
            })
        })
        .collect()
}

impl StudyRow for ParallelRow {
    const HEADER: &'static str = "n_ue,sequential_kernel_us,parallel_kernel_us,kernel_ratio,\
sequential_total_us,parallel_total_us,sequential_utilization,parallel_utilization";
    fn cells(&self) -> Vec<String> {
        let mut cells = vec![self.n_ue.to_string()];
        cells.extend(
            [
                self.sequential_kernel_us,
                self.parallel_kernel_us,
                self.kernel_ratio(),
                self.sequential_total_us,
                self.parallel_total_us,
                self.sequential_utilization,
                self.parallel_utilization,
            ]
            .map(format_g),
        );
        cells
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationRow {
    pub k: usize,
    pub rate: f64,
    pub iters: usize,
    pub mean_us: f64,
}

impl StudyRow for IterationRow {
    const HEADER: &'static str = "k,rate,iters,mean_us";
    fn cells(&self) -> Vec<String> {
        vec![self.k.to_string(), format_g(self.rate), self.iters.to_string(), format_g(self.mean_us)]
    }
}

/// Received code blocks for a `k`-bit transport block sent at code rate
/// `rate` (coded bits `ceil((k + 24) / rate)`) over QPSK.
fn rate_descriptors(k: usize, rate: f64, seed: u64) -> Result<Vec<DecodeDescriptor>> {
    if !(rate > 0.0 && rate < 1.0) {
        return Err(config_err(format!("code rate {rate} not in (0, 1)")));
    }
    let plan = segment(k, select_base_graph(k, rate))?;
    let g = ((k + CRC_LEN) as f64 / rate).ceil() as usize;
    let mut descriptors = plan_descriptors(&plan, g, 0, 1)?;
    if descriptors.iter().any(|d| d.cb_params.e < d.cb_params.k_prime().saturating_sub(2 * d.cb_params.zc)) {
        return Err(config_err(format!(
            "K={k} at rate {rate} leaves fewer coded bits than information bits"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tb = TransportBlock::new((0..k).map(|_| rng.random_range(0..2)).collect(), 0, 1)?;
    let coded = encode_transport_block(&tb, &descriptors)?;
    let soft = simulate_link(&coded, 2, &ChannelConfig::new(3.0, seed))?;
    for (d, s) in descriptors.iter_mut().zip(&soft) {
        d.set_received(s)?;
    }
    Ok(descriptors)
}

/// Wall time of decoding one transport block with exactly `iters` sweeps
/// per code block (early termination off), averaged over `reps` runs after
/// one warm-up.
pub fn run_iteration_study(
    cases: &[(usize, f64)],
    iter_list: &[usize],
    reps: usize,
) -> Result<Vec<IterationRow>> {
    if reps == 0 {
        return Err(config_err("reps must be at least 1"));
    }
    if iter_list.is_empty() || iter_list.contains(&0) {
        return Err(config_err("iteration counts must be at least 1"));
    }
    let mut rows = Vec::new();
    for &(k, rate) in cases {
        let descriptors = rate_descriptors(k, rate, k as u64)?;
        for &iters in iter_list {
            let cfg = DecoderConfig {
                max_iterations: iters,
                norm_factor: DEFAULT_NORM_FACTOR,
                early_termination: false,
            };
            let decoders = descriptors
                .iter()
                .map(|d| LayeredDecoder::for_params(&d.cb_params, cfg))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let run = || -> Result<f64> {
                let t0 = Instant::now();
                for (dec, d) in decoders.iter().zip(&descriptors) {
                    std::hint::black_box(dec.decode(&d.llr)?);
                }
                Ok(t0.elapsed().as_secs_f64() * 1e6)
            };
            run()?;
            let mut total = 0.0;
            for _ in 0..reps {
                total += run()?;
            }
            rows.push(IterationRow { k, rate, iters, mean_us: total / reps as f64 });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_match_their_headers() {
        let row = IterationRow { k: 1936, rate: 0.33, iters: 4, mean_us: 12.5 };
        assert_eq!(row.csv_line(), "1936,0.33,4,12.5");
        let n = ParallelRow::HEADER.split(',').count();
        let rows = run_parallel_study(&[2], 20, 4, &LatencyModel::inline_default()).unwrap();
        assert_eq!(rows[0].cells().len(), n);
        assert_eq!(BulkRow::HEADER.split(',').count(), 4);
    }

    #[test]
    fn bulk_study_single_op_ratio_is_one() {
        let rows =
            run_bulk_study(&[1, 10], &LatencyModel::lookaside_default(), &BackendKnobs::default()).unwrap();
        assert_eq!(rows[0].ratio, 1.0);
        assert!(rows[1].ratio > 1.0);
        assert!(run_bulk_study(&[0], &LatencyModel::lookaside_default(), &BackendKnobs::default()).is_err());
    }

    #[test]
    fn parallel_study_single_ue_is_neutral() {
        let rows = run_parallel_study(&[1, 4], 40, 4, &LatencyModel::inline_default()).unwrap();
        assert_eq!(rows[0].kernel_ratio(), 1.0);
        assert!(rows[1].kernel_ratio() > 1.0);
        assert!(run_parallel_study(&[50], 40, 4, &LatencyModel::inline_default()).is_err());
    }

    #[test]
    fn iteration_study_validates_inputs() {
        assert!(run_iteration_study(&[(1936, 0.33)], &[0], 1).is_err());
        assert!(run_iteration_study(&[(1936, 1.5)], &[2], 1).is_err());
        assert!(run_iteration_study(&[(1936, 0.33)], &[2], 0).is_err());
        let rows = run_iteration_study(&[(1936, 0.33)], &[1, 2], 1).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.mean_us > 0.0));
    }

    #[test]
    fn rate_descriptors_hit_the_requested_rate() {
        let d = rate_descriptors(8440, 0.88, 1).unwrap();
        let e: usize = d.iter().map(|x| x.cb_params.e).sum();
        assert_eq!(e, ((8440 + 24) as f64 / 0.88).ceil() as usize);
    }
}
