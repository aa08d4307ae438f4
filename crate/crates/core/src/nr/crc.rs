use crate::error::{arg_err, Result};
use crate::Bit;

pub const CRC_LEN: usize = 24;

/// The two 24-bit CRCs used on the shared channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrcVariant {
    /// Transport-block CRC, generator 0x864CFB.
    A,
    /// Code-block CRC, generator 0x800063.
    B,
}

impl CrcVariant {
    /// Generator polynomial without the implicit `x^24` term.
    pub fn polynomial(self) -> u32 {
        match self {
            CrcVariant::A => 0x86_4CFB,
            CrcVariant::B => 0x80_0063,
        }
    }
}

/// Remainder of `bits * x^24` divided by the generator; zero initial
/// state and no output inversion.
pub fn crc24(bits: &[Bit], variant: CrcVariant) -> Result<u32> {
    if bits.is_empty() {
        return Err(arg_err("crc24 of an empty message"));
    }
    let poly = variant.polynomial();
    let mut reg = 0u32;
    for &b in bits {
        let feedback = ((reg >> 23) & 1) ^ u32::from(b & 1);
        reg = (reg << 1) & 0xFF_FFFF;
        if feedback != 0 {
            reg ^= poly;
        }
    }
    Ok(reg)
}

/// Appends the CRC, MSB first.
pub fn crc24_attach(bits: &[Bit], variant: CrcVariant) -> Result<Vec<Bit>> {
    let crc = crc24(bits, variant)?;
    let mut out = Vec::with_capacity(bits.len() + CRC_LEN);
    out.extend_from_slice(bits);
    out.extend((0..CRC_LEN).rev().map(|i| ((crc >> i) & 1) as u8));
    Ok(out)
}

/// True iff `bits` (message followed by its CRC) leaves a zero remainder.
pub fn crc24_check(bits: &[Bit], variant: CrcVariant) -> Result<bool> {
    if bits.len() <= CRC_LEN {
        return Err(arg_err("message too short to carry a CRC24"));
    }
    Ok(crc24(bits, variant)? == 0)
}
