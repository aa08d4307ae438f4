//! 5G NR LDPC codec and the transport-block chain around it.
//!
//! * [`ldpc`]: base graphs, lifting, encoding, syndrome checks and the
//!   layered normalized min-sum decoder.
//! * [`nr`]: CRC24, MCS lookup, TB sizing, segmentation, rate matching and
//!   per-code-block decode descriptors.
//! * [`phy`]: Gray-mapped QAM, seeded AWGN and max-log soft demapping used to
//!   produce decoder test vectors.

pub mod error;
pub mod ldpc;
pub mod nr;
pub mod phy;

pub use error::{Error, Result};

/// A hard bit, stored as `0` or `1`.
pub type Bit = u8;
