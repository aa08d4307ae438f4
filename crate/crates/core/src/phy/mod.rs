//! Test-vector generation: modulation, AWGN and soft demapping.

mod channel;
mod demap;
mod link;
mod modulation;
mod vectors;

pub use channel::{transmit, ChannelConfig};
pub use demap::{demap_llr, LLR_GAIN};
pub use link::simulate_link;
pub use modulation::{constellation, modulate, SymbolBlock, SUPPORTED_QM};
pub use vectors::{parse_golden_vectors, write_golden_vectors, GoldenVector};

pub use num_complex::Complex64;
