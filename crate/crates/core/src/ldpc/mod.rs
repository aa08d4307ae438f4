//! Quasi-cyclic LDPC codes over the 5G NR base graphs.

mod base_graph;
mod decoder;
mod encoder;
mod lifting;
mod matrix;
mod params;

pub use base_graph::{parse_base_graphs, BaseEntry, BaseGraph, BaseGraphId};
pub use decoder::{
    decode_layered_minsum, DecodeResult, DecoderConfig, LayeredDecoder, LlrBlock, DEFAULT_MAX_ITERATIONS,
    DEFAULT_NORM_FACTOR,
};
pub use encoder::{encode, encode_with};
pub use lifting::{lifting_sizes, set_index_of, LIFTING_SET_BASES, MAX_LIFTING_SIZE};
pub use matrix::{expand_base_graph, syndrome_check, Circulant, ParityCheckMatrix};
pub use params::CodeBlockParams;
