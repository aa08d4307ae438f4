use crate::error::{arg_err, config_err, Result};
use crate::ldpc::{lifting_sizes, BaseGraphId, CodeBlockParams};

use super::crc::CRC_LEN;

/// Largest transport block accepted by [`segment`].
pub const MAX_TB_SIZE: usize = 1_277_992;

/// Base graph for a payload of `b` bits at target code rate `rate`.
pub fn select_base_graph(b: usize, rate: f64) -> BaseGraphId {
    if b <= 292 || (b <= 3824 && rate <= 2.0 / 3.0) || rate <= 0.25 {
        BaseGraphId::Bg2
    } else {
        BaseGraphId::Bg1
    }
}

/// How a transport block is split into code blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegmentationPlan {
    pub bg: BaseGraphId,
    /// Payload bits, TB-CRC excluded.
    pub b: usize,
    /// Number of code blocks `C`.
    pub c: usize,
    /// Bits per code block before filler, CB-CRC included (`K'`).
    pub k_prime: usize,
    /// Systematic base columns used to pick the lifting size.
    pub kb: usize,
    pub zc: usize,
    /// Coding template shared by every code block (`e` left at 0).
    pub params: CodeBlockParams,
}

impl SegmentationPlan {
    pub fn has_cb_crc(&self) -> bool {
        self.c > 1
    }

    /// Transport-block bits (payload + TB-CRC) carried by each code block.
    pub fn data_bits_per_cb(&self) -> usize {
        self.k_prime - if self.has_cb_crc() { CRC_LEN } else { 0 }
    }

    pub fn n_filler(&self) -> usize {
        self.params.n_filler
    }
}

/// Segments a `b`-bit payload; the 24-bit TB-CRC is accounted for here.
pub fn segment(b: usize, bg: BaseGraphId) -> Result<SegmentationPlan> {
    if b == 0 {
        return Err(arg_err("transport block must carry at least one bit"));
    }
    if b > MAX_TB_SIZE {
        return Err(config_err(format!("transport block of {b} bits exceeds {MAX_TB_SIZE}")));
    }
    if bg == BaseGraphId::Toy {
        return Err(config_err("the toy base graph is not used for segmentation"));
    }
    let k_cb = bg.max_code_block();
    let with_crc = b + CRC_LEN;
    let (c, total) = if with_crc <= k_cb {
        (1, with_crc)
    } else {
        let c = with_crc.div_ceil(k_cb - CRC_LEN);
        (c, with_crc + c * CRC_LEN)
    };
    let k_prime = total.div_ceil(c);
    let kb = match bg {
        BaseGraphId::Bg1 => 22,
        _ if b > 640 => 10,
        _ if b > 560 => 9,
        _ if b > 192 => 8,
        _ => 6,
    };
    let zc = lifting_sizes()
        .into_iter()
        .find(|&z| kb * z >= k_prime)
        .ok_or_else(|| config_err(format!("no lifting size covers K'={k_prime}")))?;
    let n_filler = bg.systematic_cols() * zc - k_prime;
    let params = CodeBlockParams::new(bg, zc, n_filler, 0)?;
    Ok(SegmentationPlan { bg, b, c, k_prime, kb, zc, params })
}
