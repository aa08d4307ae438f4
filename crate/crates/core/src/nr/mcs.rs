use std::sync::OnceLock;

use crate::error::{arg_err, Error, Result};

pub const MCS_RATE_DENOMINATOR: u32 = 1024;

static MCS_TABLE1: &str = include_str!("../../data/mcs_table1.csv");

/// One row of the 64QAM MCS table: modulation order and target code rate
/// `rate_num / 1024`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct McsEntry {
    pub index: u8,
    pub qm: u8,
    pub rate_num: u32,
}

impl McsEntry {
    pub fn rate(&self) -> f64 {
        f64::from(self.rate_num) / f64::from(MCS_RATE_DENOMINATOR)
    }

    /// Information bits per modulated symbol.
    pub fn spectral_efficiency(&self) -> f64 {
        f64::from(self.qm) * self.rate()
    }
}

/// Parses a table with header `index,qm,rate_num`; indices must run 0, 1, 2, ...
pub fn parse_mcs_table(text: &str) -> Result<Vec<McsEntry>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    if lines.next().map(str::trim) != Some("index,qm,rate_num") {
        return Err(Error::Table("MCS table header must be `index,qm,rate_num`".into()));
    }
    let mut table = Vec::new();
    for (expected, line) in lines.enumerate() {
        let fields: Vec<u32> = line
            .split(',')
            .map(|f| f.trim().parse())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Table(format!("MCS row `{line}`: {e}")))?;
        let [index, qm, rate_num] = fields[..] else {
            return Err(Error::Table(format!("MCS row `{line}` needs 3 fields")));
        };
        if index as usize != expected {
            return Err(Error::Table(format!("MCS index {index} out of order")));
        }
        if !matches!(qm, 2 | 4 | 6 | 8) || rate_num == 0 || rate_num >= MCS_RATE_DENOMINATOR {
            return Err(Error::Table(format!("MCS row `{line}` out of range")));
        }
        table.push(McsEntry { index: index as u8, qm: qm as u8, rate_num });
    }
    Ok(table)
}

pub fn mcs_table() -> &'static [McsEntry] {
    static TABLE: OnceLock<Vec<McsEntry>> = OnceLock::new();
    TABLE.get_or_init(|| parse_mcs_table(MCS_TABLE1).expect("bundled MCS table is valid"))
}

pub fn mcs_lookup(index: usize) -> Result<McsEntry> {
    mcs_table()
        .get(index)
        .copied()
        .ok_or_else(|| arg_err(format!("MCS index {index} outside 0..={}", mcs_table().len() - 1)))
}
