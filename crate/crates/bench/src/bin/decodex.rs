use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use decodex_bench::studies::{StudyRow, ITERATION_CASES, ITERATION_COUNTS};
use decodex_bench::{
    emit, golden_vectors, run_bulk_study, run_iteration_study, run_parallel_study, run_sweep, BenchConfig,
    BenchError, Format, SEED_ENV,
};
use decodex_core::phy::write_golden_vectors;

#[derive(Parser)]
#[command(name = "decodex", version, about = "LDPC decode benchmarks across CPU and simulated accelerators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the backend x MCS x SNR x PRB sweep.
    Sweep {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Lookaside sequential versus bulk dispatch throughput.
    BulkStudy {
        #[arg(long, value_delimiter = ',', default_value = "1,10,100,1000")]
        n_ops: Vec<usize>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Inline sequential versus parallel launches over a fixed PRB budget.
    ParallelStudy {
        #[arg(long, value_delimiter = ',', default_value = "1,2,5,10")]
        ue: Vec<usize>,
        #[arg(long, default_value_t = 200)]
        prb: usize,
        #[arg(long, default_value_t = 4)]
        mcs: usize,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// CPU decode latency against forced iteration counts.
    IterStudy {
        #[arg(long, value_delimiter = ',')]
        iters: Option<Vec<usize>>,
        #[arg(long, default_value_t = 10)]
        reps: usize,
    },
    /// Dump golden decoder-input vectors.
    Vectors {
        #[arg(long)]
        dump: PathBuf,
        #[arg(long, default_value_t = 4)]
        mcs: usize,
        #[arg(long, default_value_t = 20)]
        prb: usize,
        #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
        snr: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        n_tb: usize,
    },
}

fn load_config(path: Option<&PathBuf>) -> Result<BenchConfig, BenchError> {
    let text = match path {
        Some(p) => {
            std::fs::read_to_string(p).map_err(|e| BenchError::Config(format!("{}: {e}", p.display())))?
        }
        None => String::new(),
    };
    BenchConfig::parse(&text, std::env::var(SEED_ENV).ok().as_deref())
}

fn print_rows<T: StudyRow>(rows: &[T]) {
    println!("{}", T::HEADER);
    for r in rows {
        println!("{}", r.csv_line());
    }
}

fn run(cli: Cli) -> Result<ExitCode, BenchError> {
    match cli.command {
        Command::Sweep { config, out, format } => {
            let format: Format = format.parse()?;
            let cfg = load_config(config.as_ref())?;
            let records = run_sweep(&cfg)?;
            emit(&records, format, &out)?;
            let failed: Vec<_> = records.iter().filter(|r| r.failure.is_some()).collect();
            for r in &failed {
                eprintln!(
                    "cell {} mcs={} snr={} prb={}: {}",
                    r.backend,
                    r.mcs,
                    r.snr_db,
                    r.prb,
                    r.failure.as_deref().unwrap_or_default()
                );
            }
            Ok(if failed.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::BulkStudy { n_ops, config } => {
            let cfg = load_config(config.as_ref())?;
            let rows = run_bulk_study(&n_ops, &cfg.models.lookaside, &cfg.sweep.knobs())?;
            print_rows(&rows);
            Ok(if rows.iter().any(|r| r.failure.is_some()) { ExitCode::from(2) } else { ExitCode::SUCCESS })
        }
        Command::ParallelStudy { ue, prb, mcs, config } => {
            let cfg = load_config(config.as_ref())?;
            print_rows(&run_parallel_study(&ue, prb, mcs, &cfg.models.inline)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::IterStudy { iters, reps } => {
            let iters = iters.unwrap_or_else(|| ITERATION_COUNTS.to_vec());
            print_rows(&run_iteration_study(&ITERATION_CASES, &iters, reps)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Vectors { dump, mcs, prb, snr, seed, n_tb } => {
            let seed = match std::env::var(SEED_ENV) {
                Ok(s) => s
                    .trim()
                    .parse()
                    .map_err(|_| BenchError::Config(format!("{SEED_ENV}={s:?} is not a u64")))?,
                Err(_) => seed,
            };
            let vectors = golden_vectors(mcs, prb, snr, seed, n_tb)?;
            std::fs::write(&dump, write_golden_vectors(&vectors))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("decodex: {e}");
            ExitCode::from(1)
        }
    }
}
