use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{arg_err, Result};

use super::modulation::SymbolBlock;

/// Complex AWGN with per-symbol SNR `snr_db` (Es/N0). `f64::INFINITY`
/// disables the noise entirely.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelConfig {
    pub snr_db: f64,
    pub seed: u64,
}

impl ChannelConfig {
    pub fn new(snr_db: f64, seed: u64) -> Self {
        Self { snr_db, seed }
    }

    pub fn noiseless() -> Self {
        Self { snr_db: f64::INFINITY, seed: 0 }
    }

    /// Total complex noise variance, split evenly over I and Q.
    pub fn sigma2(&self) -> f64 {
        10f64.powf(-self.snr_db / 10.0)
    }
}

/// Adds seeded complex Gaussian noise; identical inputs and seed give
/// identical outputs.
pub fn transmit(symbols: &SymbolBlock, channel: &ChannelConfig) -> Result<SymbolBlock> {
    if channel.snr_db.is_nan() || channel.snr_db == f64::NEG_INFINITY {
        return Err(arg_err(format!("invalid SNR {}", channel.snr_db)));
    }
    if channel.snr_db == f64::INFINITY {
        return Ok(symbols.clone());
    }
    let sigma = (channel.sigma2() / 2.0).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(channel.seed);
    let samples = symbols
        .samples
        .iter()
        .map(|&x| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            x + num_complex::Complex64::new(re, im) * sigma
        })
        .collect();
    Ok(SymbolBlock { samples, qm: symbols.qm })
}
