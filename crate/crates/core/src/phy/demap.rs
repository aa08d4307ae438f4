use num_complex::Complex64;

use crate::error::{arg_err, Result};
use crate::ldpc::LlrBlock;

use super::modulation::{norm, pam_level, SUPPORTED_QM};

/// Scale from max-log LLR to the 8-bit decoder domain. QPSK at 10 dB has a
/// typical max-log LLR of 2/sigma^2 = 20, which this maps to 64.
pub const LLR_GAIN: f64 = 3.2;

/// Max-log soft demapping to saturating 8-bit LLRs (positive favours 0).
/// Produces `qm` values per symbol.
pub fn demap_llr(symbols: &[Complex64], qm: u8, sigma2: f64) -> Result<Vec<i8>> {
    if !SUPPORTED_QM.contains(&qm) {
        return Err(arg_err(format!("unsupported modulation order {qm}")));
    }
    if sigma2.is_nan() || sigma2 <= 0.0 {
        return Err(arg_err(format!("noise variance {sigma2} must be positive")));
    }
    let m = usize::from(qm / 2);
    let scale = norm(qm);
    // PAM levels of one axis indexed by their m-bit pattern (first bit MSB).
    let levels: Vec<f64> = (0..1usize << m)
        .map(|idx| {
            let bits: Vec<u8> = (0..m).map(|j| ((idx >> (m - 1 - j)) & 1) as u8).collect();
            pam_level(bits.into_iter()) * scale
        })
        .collect();

    let gain = LLR_GAIN / sigma2;
    let mut out = Vec::with_capacity(symbols.len() * usize::from(qm));
    let mut axis_llr = vec![0.0; m];
    let mut per_symbol = [0i8; 8];
    for y in symbols {
        for (axis, x) in [y.re, y.im].into_iter().enumerate() {
            for (j, llr) in axis_llr.iter_mut().enumerate() {
                let (mut d0, mut d1) = (f64::INFINITY, f64::INFINITY);
                for (idx, &lvl) in levels.iter().enumerate() {
                    let d = (x - lvl) * (x - lvl);
                    if (idx >> (m - 1 - j)) & 1 == 0 {
                        d0 = d0.min(d);
                    } else {
                        d1 = d1.min(d);
                    }
                }
                *llr = d1 - d0;
            }
            // axis bits interleave: I carries b0, b2, ...; Q carries b1, b3, ...
            for (j, &llr) in axis_llr.iter().enumerate() {
                per_symbol[2 * j + axis] = quantize(llr * gain);
            }
        }
        out.extend_from_slice(&per_symbol[..usize::from(qm)]);
    }
    Ok(out)
}

fn quantize(v: f64) -> i8 {
    LlrBlock::saturate(v.round().clamp(-1e6, 1e6) as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phy::channel::{transmit, ChannelConfig};
    use crate::phy::modulation::{constellation, modulate};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::SQRT_2;

    /// Exhaustive 2-D max-log over the full constellation.
    fn brute_llr(y: Complex64, qm: u8, sigma2: f64) -> Vec<f64> {
        let pts = constellation(qm).unwrap();
        let q = usize::from(qm);
        (0..q)
            .map(|j| {
                let (mut d0, mut d1) = (f64::INFINITY, f64::INFINITY);
                for (idx, p) in pts.iter().enumerate() {
                    let d = (y - p).norm_sqr();
                    if (idx >> (q - 1 - j)) & 1 == 0 {
                        d0 = d0.min(d);
                    } else {
                        d1 = d1.min(d);
                    }
                }
                (d1 - d0) / sigma2
            })
            .collect()
    }

    #[test]
    fn on_point_high_snr_saturates() {
        let s = modulate(&[0, 0], 2).unwrap();
        assert_eq!(demap_llr(&s.samples, 2, 1e-3).unwrap(), vec![127, 127]);
    }

    #[test]
    fn qpsk_closed_form() {
        let sigma2 = 0.8;
        for y in [Complex64::new(0.1, -0.2), Complex64::new(-0.05, 0.3)] {
            let llr = demap_llr(&[y], 2, sigma2).unwrap();
            let expect_re = (2.0 * SQRT_2 * y.re / sigma2 * LLR_GAIN).round() as i8;
            let expect_im = (2.0 * SQRT_2 * y.im / sigma2 * LLR_GAIN).round() as i8;
            assert_eq!(llr, vec![expect_re, expect_im]);
        }
    }

    #[test]
    fn separable_matches_exhaustive_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for qm in SUPPORTED_QM {
            for _ in 0..200 {
                let y = Complex64::new(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5));
                let sigma2 = rng.random_range(0.5..4.0);
                let fast = demap_llr(&[y], qm, sigma2).unwrap();
                let slow: Vec<i8> =
                    brute_llr(y, qm, sigma2).into_iter().map(|v| quantize(v * LLR_GAIN)).collect();
                assert_eq!(fast, slow, "qm {qm} y {y}");
            }
        }
    }

    #[test]
    fn hard_decisions_at_30db() {
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        let bits: Vec<u8> = (0..200_000).map(|_| rng.random_range(0..2)).collect();
        let ch = ChannelConfig::new(30.0, 5);
        let y = transmit(&modulate(&bits, 2).unwrap(), &ch).unwrap();
        let llr = demap_llr(&y.samples, 2, ch.sigma2()).unwrap();
        for (b, l) in bits.iter().zip(&llr) {
            assert_eq!(*b, u8::from(*l < 0));
        }
    }

    #[test]
    fn typical_magnitude_at_10db_is_half_scale() {
        let s = modulate(&[0, 0], 2).unwrap();
        let llr = demap_llr(&s.samples, 2, 0.1).unwrap();
        assert_eq!(llr, vec![64, 64]);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(demap_llr(&[], 2, 0.0).is_err());
        assert!(demap_llr(&[], 5, 1.0).is_err());
    }
}
