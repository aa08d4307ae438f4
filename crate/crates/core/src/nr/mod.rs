//! Transport-block chain: CRC, MCS, TB sizing, segmentation and rate matching.

mod crc;
mod mcs;
mod rate_match;
mod segment;
mod tbs;
mod transport;

pub use crc::{crc24, crc24_attach, crc24_check, CrcVariant, CRC_LEN};
pub use mcs::{mcs_lookup, mcs_table, parse_mcs_table, McsEntry, MCS_RATE_DENOMINATOR};
pub use rate_match::{circular_buffer_positions, rate_dematch, rate_match};
pub use segment::{segment, select_base_graph, SegmentationPlan, MAX_TB_SIZE};
pub use tbs::{compute_tb_size, data_resource_elements, MIN_TB_SIZE};
pub use transport::{
    build_tb_descriptors, code_block_inputs, coded_bits_for, desegment, encode_transport_block,
    plan_descriptors, DecodeDescriptor, TbDecodeStatus, TransportBlock,
};
