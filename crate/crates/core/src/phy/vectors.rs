//! Plain-text golden vectors, one per line:
//!
//! ```text
//! bg,zc,e,snr_db,seed,payload_hex,llr_0,llr_1,...,llr_{e-1}
//! ```
//!
//! The payload is the code-block input (data plus CB-CRC) packed MSB first
//! and zero-padded to whole bytes. Lines starting with `#` are comments.

use std::fmt::Write as _;

use crate::error::{arg_err, config_err, Result};
use crate::ldpc::BaseGraphId;
use crate::Bit;

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenVector {
    pub bg: BaseGraphId,
    pub zc: usize,
    pub e: usize,
    pub snr_db: f64,
    pub seed: u64,
    pub payload: Vec<u8>,
    pub llrs: Vec<i8>,
}

impl GoldenVector {
    pub fn new(
        bg: BaseGraphId,
        zc: usize,
        snr_db: f64,
        seed: u64,
        payload_bits: &[Bit],
        llrs: Vec<i8>,
    ) -> Self {
        let payload = payload_bits
            .chunks(8)
            .map(|c| c.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | ((b & 1) << (7 - i))))
            .collect();
        Self { bg, zc, e: llrs.len(), snr_db, seed, payload, llrs }
    }

    /// The first `len` payload bits.
    pub fn payload_bits(&self, len: usize) -> Vec<Bit> {
        (0..len.min(self.payload.len() * 8)).map(|i| (self.payload[i / 8] >> (7 - i % 8)) & 1).collect()
    }

    fn to_line(&self) -> String {
        let mut line = format!("{},{},{},{},{},", self.bg.file_id(), self.zc, self.e, self.snr_db, self.seed);
        for byte in &self.payload {
            let _ = write!(line, "{byte:02x}");
        }
        for l in &self.llrs {
            let _ = write!(line, ",{l}");
        }
        line
    }
}

pub fn write_golden_vectors(vectors: &[GoldenVector]) -> String {
    let mut out = String::from("# bg,zc,e,snr_db,seed,payload_hex,llr...\n");
    for v in vectors {
        out.push_str(&v.to_line());
        out.push('\n');
    }
    out
}

pub fn parse_golden_vectors(text: &str) -> Result<Vec<GoldenVector>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(parse_line(line).map_err(|e| config_err(format!("vector line {}: {e}", n + 1)))?);
    }
    Ok(out)
}

fn parse_line(line: &str) -> Result<GoldenVector> {
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() < 6 {
        return Err(arg_err(format!("expected at least 6 fields, got {}", fields.len())));
    }
    let num = |i: usize| -> Result<u64> {
        fields[i].parse().map_err(|_| arg_err(format!("bad integer {:?}", fields[i])))
    };
    let bg = BaseGraphId::from_file_id(num(0)? as u32)
        .ok_or_else(|| arg_err(format!("unknown base graph {}", fields[0])))?;
    let zc = num(1)? as usize;
    let e = num(2)? as usize;
    let snr_db: f64 = fields[3].parse().map_err(|_| arg_err(format!("bad SNR {:?}", fields[3])))?;
    let seed = num(4)?;
    let hex = fields[5];
    if !hex.len().is_multiple_of(2) {
        return Err(arg_err("odd-length payload hex"));
    }
    let payload = (0..hex.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(&hex[i..i + 2], 16))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| arg_err(format!("bad payload hex {hex:?}")))?;
    let llrs = fields[6..]
        .iter()
        .map(|f| f.parse::<i8>().map_err(|_| arg_err(format!("bad LLR {f:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if llrs.len() != e {
        return Err(arg_err(format!("{} LLRs for e = {e}", llrs.len())));
    }
    Ok(GoldenVector { bg, zc, e, snr_db, seed, payload, llrs })
}
