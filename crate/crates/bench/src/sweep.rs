use decodex_offload::{make_backend, Backend, BackendKind, ClockType};
use serde::{Deserialize, Serialize};

use crate::chain::{cell_seed, generate_tb, tb_seed};
use crate::config::BenchConfig;
use crate::error::Result;

/// One benchmark cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub backend: BackendKind,
    pub mcs: usize,
    pub snr_db: f64,
    pub prb: usize,
    pub n_tb: usize,
    pub bler: f64,
    pub mean_iterations: f64,
    pub p50_us: f64,
    pub p99_us: f64,
    pub mean_us: f64,
    /// Mean accelerator occupancy; only the inline backends report one.
    pub utilization: Option<f64>,
    pub clock_type: ClockType,
    /// Set when the backend ended in a failure state; not emitted.
    #[serde(skip)]
    pub failure: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellSpec {
    pub mcs: usize,
    pub snr_db: f64,
    pub prb: usize,
    pub n_tb: usize,
    /// Cell seed; block `i` uses `seed ^ i`.
    pub seed: u64,
    pub max_iterations: usize,
}

/// Nearest-rank percentile of sorted data.
fn percentile(sorted: &[f64], p: f64) -> f64 {
    if sorted.is_empty() {
        return 0.0;
    }
    let rank = (p * sorted.len() as f64).ceil().max(1.0) as usize;
    sorted[rank.min(sorted.len()) - 1]
}

fn mean(v: &[f64]) -> f64 {
    if v.is_empty() {
        0.0
    } else {
        v.iter().sum::<f64>() / v.len() as f64
    }
}

/// Runs `cell.n_tb` transport blocks through `backend`, one submission per
/// block. Backend failures are recorded (the block counts as an error) and
/// never abort the cell.
pub fn run_cell(backend: &mut dyn Backend, cell: &CellSpec) -> Result<SweepRecord> {
    let mut latencies = Vec::with_capacity(cell.n_tb);
    let mut iterations = Vec::new();
    let mut utilization = Vec::new();
    let mut errors = 0usize;
    let mut failure = None;
    for i in 0..cell.n_tb {
        let rx = generate_tb(cell.mcs, cell.prb, cell.snr_db, tb_seed(cell.seed, i), i, cell.max_iterations)?;
        let report = match backend.submit(&rx.descriptors) {
            Ok(r) => r,
            Err(e) => {
                failure.get_or_insert_with(|| e.to_string());
                errors += 1;
                continue;
            }
        };
        if let Some(f) = &report.failure {
            failure.get_or_insert_with(|| f.to_string());
        }
        let outputs = report.sorted_outputs();
        let ok = report.failure.is_none() && rx.verify(&outputs).map(|s| s.ok()).unwrap_or(false);
        errors += usize::from(!ok);
        iterations.extend(outputs.iter().map(|o| o.result.iterations_used as f64));
        latencies.extend(report.tb_latencies.iter().map(|t| t.latency_us));
        utilization.extend(report.utilization);
    }
    latencies.sort_by(f64::total_cmp);
    Ok(SweepRecord {
        backend: backend.kind(),
        mcs: cell.mcs,
        snr_db: cell.snr_db,
        prb: cell.prb,
        n_tb: cell.n_tb,
        bler: errors as f64 / cell.n_tb as f64,
        mean_iterations: mean(&iterations),
        p50_us: percentile(&latencies, 0.50),
        p99_us: percentile(&latencies, 0.99),
        mean_us: mean(&latencies),
        utilization: (!utilization.is_empty()).then(|| mean(&utilization)),
        clock_type: backend.clock(),
        failure,
    })
}

/// Every (backend, mcs, snr, prb) cell in that nesting order. Cell seeds
/// come from the master seed and the cell coordinates.
pub fn run_sweep(config: &BenchConfig) -> Result<Vec<SweepRecord>> {
    let s = &config.sweep;
    s.validate()?;
    let mut records =
        Vec::with_capacity(s.backends.len() * s.mcs_set.len() * s.snr_grid_db.len() * s.prb_set.len());
    for &kind in &s.backends {
        let mut backend = make_backend(kind, config.model_for(kind), s.knobs())?;
        for &mcs in &s.mcs_set {
            for &snr_db in &s.snr_grid_db {
                for &prb in &s.prb_set {
                    let cell = CellSpec {
                        mcs,
                        snr_db,
                        prb,
                        n_tb: s.n_tb,
                        seed: cell_seed(s.seed, mcs, snr_db, prb),
                        max_iterations: s.max_iterations,
                    };
                    records.push(run_cell(backend.as_mut(), &cell)?);
                }
            }
        }
    }
    Ok(records)
}
