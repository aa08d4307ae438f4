use num_complex::Complex64;

use crate::error::{arg_err, Result};
use crate::Bit;

pub const SUPPORTED_QM: [u8; 4] = [2, 4, 6, 8];

/// Modulated samples plus the modulation order that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolBlock {
    pub samples: Vec<Complex64>,
    pub qm: u8,
}

impl SymbolBlock {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

fn check_qm(qm: u8) -> Result<()> {
    if SUPPORTED_QM.contains(&qm) {
        Ok(())
    } else {
        Err(arg_err(format!("unsupported modulation order {qm}")))
    }
}

/// Unit-energy scaling: 1/sqrt(2), 1/sqrt(10), 1/sqrt(42), 1/sqrt(170).
pub(crate) fn norm(qm: u8) -> f64 {
    let m = i32::from(qm / 2);
    // mean of the squared odd PAM levels, times two axes
    let mean_sq = (4f64.powi(m) - 1.0) / 3.0;
    1.0 / (2.0 * mean_sq).sqrt()
}

/// Unnormalized PAM amplitude of the bits mapped onto one axis, nested
/// Gray form `c0 (2^(m-1) - c1 (2^(m-2) - ... ))` with `c = 1 - 2b`.
pub(crate) fn pam_level(axis_bits: impl DoubleEndedIterator<Item = Bit> + ExactSizeIterator) -> f64 {
    let m = axis_bits.len();
    let mut inner = 0.0;
    for (depth, b) in axis_bits.enumerate().rev() {
        let c = 1.0 - 2.0 * f64::from(b);
        inner = if depth + 1 == m { c } else { c * (f64::from(1u32 << (m - 1 - depth)) - inner) };
    }
    inner
}

fn map_symbol(bits: &[Bit], qm: u8) -> Complex64 {
    let re = pam_level(bits.iter().step_by(2).copied().collect::<Vec<_>>().into_iter());
    let im = pam_level(bits.iter().skip(1).step_by(2).copied().collect::<Vec<_>>().into_iter());
    Complex64::new(re, im) * norm(qm)
}

/// Gray-maps `bits` onto QAM symbols; a trailing partial symbol is padded
/// with zero bits.
pub fn modulate(bits: &[Bit], qm: u8) -> Result<SymbolBlock> {
    check_qm(qm)?;
    let q = usize::from(qm);
    let mut padded = [0u8; 8];
    let samples = bits
        .chunks(q)
        .map(|chunk| {
            padded[..q].fill(0);
            padded[..chunk.len()].copy_from_slice(chunk);
            map_symbol(&padded[..q], qm)
        })
        .collect();
    Ok(SymbolBlock { samples, qm })
}

/// All `2^qm` constellation points, indexed by the bit pattern read MSB
/// first (`b0` is the most significant bit of the index).
pub fn constellation(qm: u8) -> Result<Vec<Complex64>> {
    check_qm(qm)?;
    let q = usize::from(qm);
    Ok((0..1usize << q)
        .map(|idx| {
            let bits: Vec<u8> = (0..q).map(|j| ((idx >> (q - 1 - j)) & 1) as u8).collect();
            map_symbol(&bits, qm)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn qpsk_points() {
        let s = modulate(&[0, 0, 1, 1, 0, 1], 2).unwrap().samples;
        assert!(close(s[0], Complex64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2)));
        assert!(close(s[1], Complex64::new(-FRAC_1_SQRT_2, -FRAC_1_SQRT_2)));
        assert!(close(s[2], Complex64::new(FRAC_1_SQRT_2, -FRAC_1_SQRT_2)));
    }

    #[test]
    fn qam16_nested_form() {
        // b = 0,0,1,1: I = 1 * (2 - (-1)) = 3, Q = 1 * (2 - (-1)) = 3
        let s = modulate(&[0, 0, 1, 1], 4).unwrap().samples[0];
        assert!(close(s, Complex64::new(3.0, 3.0) / 10f64.sqrt()));
        // b = 1,0,0,0: I = -1 * (2 - 1) = -1, Q = 1
        let s = modulate(&[1, 0, 0, 0], 4).unwrap().samples[0];
        assert!(close(s, Complex64::new(-1.0, 1.0) / 10f64.sqrt()));
    }

    #[test]
    fn qam64_and_256_corner_points() {
        // all-zero bits sit at the innermost point (1, 1) of the first quadrant
        let s = modulate(&[0; 6], 6).unwrap().samples[0];
        assert!(close(s, Complex64::new(3.0, 3.0) / 42f64.sqrt()));
        let s = modulate(&[0, 0, 1, 1, 1, 1], 6).unwrap().samples[0];
        assert!(close(s, Complex64::new(7.0, 7.0) / 42f64.sqrt()));
        let s = modulate(&[0, 0, 1, 1, 1, 1, 1, 1], 8).unwrap().samples[0];
        assert!(close(s, Complex64::new(15.0, 15.0) / 170f64.sqrt()));
    }

    #[test]
    fn unit_average_energy_and_distinct_points() {
        for qm in SUPPORTED_QM {
            let pts = constellation(qm).unwrap();
            let energy: f64 = pts.iter().map(|p| p.norm_sqr()).sum::<f64>() / pts.len() as f64;
            assert!((energy - 1.0).abs() < 1e-12, "qm {qm}");
            for (i, a) in pts.iter().enumerate() {
                for b in &pts[i + 1..] {
                    assert!((a - b).norm() > 1e-6);
                }
            }
        }
        assert!((norm(2) - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((norm(8) - 1.0 / 170f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn gray_neighbours_differ_in_one_bit() {
        for qm in [4u8, 6, 8] {
            let pts = constellation(qm).unwrap();
            let d = 2.0 * norm(qm);
            for (i, a) in pts.iter().enumerate() {
                for (j, b) in pts.iter().enumerate() {
                    if ((a - b).norm() - d).abs() < 1e-9 {
                        assert_eq!((i ^ j).count_ones(), 1, "qm {qm}");
                    }
                }
            }
        }
    }

    #[test]
    fn pads_partial_symbol_and_rejects_qm() {
        assert_eq!(modulate(&[1, 1, 1], 2).unwrap().len(), 2);
        assert!(modulate(&[0; 4], 3).is_err());
    }
}
