use super::mcs::{McsEntry, MCS_RATE_DENOMINATOR};

pub const MIN_TB_SIZE: usize = 24;

/// Data resource elements in `prb` blocks: 12 subcarriers by 13 of the 14
/// symbols of a slot, one layer.
pub fn data_resource_elements(prb: usize) -> usize {
    12 * 13 * prb
}

/// Simplified transport block size: coded capacity times target rate,
/// floored to whole bytes and to at least 24 bits.
pub fn compute_tb_size(prb: usize, mcs: &McsEntry) -> usize {
    let bits_times_1024 = data_resource_elements(prb) as u64 * u64::from(mcs.qm) * u64::from(mcs.rate_num);
    let raw = bits_times_1024 / u64::from(MCS_RATE_DENOMINATOR);
    ((raw / 8 * 8) as usize).max(MIN_TB_SIZE)
}
