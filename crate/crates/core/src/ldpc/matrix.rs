use crate::error::{arg_err, config_err, Result};
use crate::Bit;

use super::base_graph::{BaseGraph, BaseGraphId};
use super::lifting::set_index_of;

/// A lifted `zc x zc` block: identity cyclically shifted so that row `i`
/// of the block has its one in column `(i + shift) % zc`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Circulant {
    pub col: usize,
    pub shift: usize,
}

/// Lifted parity-check matrix, kept as one list of circulants per base row
/// (layer) so that the decoder can walk it layer by layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheckMatrix {
    pub bg: BaseGraphId,
    pub zc: usize,
    pub layers: Vec<Vec<Circulant>>,
}

impl ParityCheckMatrix {
    pub fn base_rows(&self) -> usize {
        self.layers.len()
    }

    pub fn base_cols(&self) -> usize {
        self.bg.cols()
    }

    pub fn rows(&self) -> usize {
        self.base_rows() * self.zc
    }

    pub fn cols(&self) -> usize {
        self.base_cols() * self.zc
    }

    /// Number of systematic positions `k` of the lifted code.
    pub fn k(&self) -> usize {
        self.bg.systematic_cols() * self.zc
    }

    /// Entry `H[row][col]`.
    pub fn get(&self, row: usize, col: usize) -> bool {
        let (layer, i) = (row / self.zc, row % self.zc);
        let (block, j) = (col / self.zc, col % self.zc);
        self.layers[layer].iter().any(|c| c.col == block && (i + c.shift) % self.zc == j)
    }

    /// Column indices of the ones in `row`.
    pub fn row_support(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        let (layer, i) = (row / self.zc, row % self.zc);
        let zc = self.zc;
        self.layers[layer].iter().map(move |c| c.col * zc + (i + c.shift) % zc)
    }

    pub fn edge_count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum::<usize>() * self.zc
    }
}

/// Lifts `bg` by `zc` using the shifts of lifting-size set `set_index`.
pub fn expand_base_graph(bg: &BaseGraph, zc: usize, set_index: usize) -> Result<ParityCheckMatrix> {
    if set_index > 7 || set_index_of(zc) != Some(set_index) {
        return Err(config_err(format!("lifting size {zc} does not belong to set {set_index}")));
    }
    let mut layers = vec![Vec::new(); bg.rows()];
    for e in &bg.entries {
        layers[e.row].push(Circulant { col: e.col, shift: usize::from(e.shifts[set_index]) % zc });
    }
    Ok(ParityCheckMatrix { bg: bg.id, zc, layers })
}

/// Returns true iff every parity check of `h` is satisfied by `codeword`.
pub fn syndrome_check(h: &ParityCheckMatrix, codeword: &[Bit]) -> Result<bool> {
    if codeword.len() != h.cols() {
        return Err(arg_err(format!("codeword length {} != {}", codeword.len(), h.cols())));
    }
    Ok(syndrome_ok(h, codeword))
}

pub(crate) fn syndrome_ok(h: &ParityCheckMatrix, codeword: &[Bit]) -> bool {
    let zc = h.zc;
    let mut parity = vec![0u8; zc];
    for layer in &h.layers {
        parity.fill(0);
        for c in layer {
            xor_rotated(&mut parity, &codeword[c.col * zc..(c.col + 1) * zc], c.shift);
        }
        if parity.iter().any(|&p| p != 0) {
            return false;
        }
    }
    true
}

/// `acc[i] ^= block[(i + shift) % zc]`, the product of a circulant with a
/// block vector.
pub(crate) fn xor_rotated(acc: &mut [u8], block: &[u8], shift: usize) {
    let zc = block.len();
    let (head, tail) = acc.split_at_mut(zc - shift);
    for (a, b) in head.iter_mut().zip(&block[shift..]) {
        *a ^= b;
    }
    for (a, b) in tail.iter_mut().zip(&block[..shift]) {
        *a ^= b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ldpc::lifting::lifting_sizes;

    #[test]
    fn null_and_identity_blocks() {
        let toy = BaseGraph::bundled(BaseGraphId::Toy);
        let h = expand_base_graph(toy, 4, 0).unwrap();
        // toy (0,0) is null: 4x4 zero block
        for r in 0..4 {
            for c in 0..4 {
                assert!(!h.get(r, c));
            }
        }
        // toy (0,5) has shift 0: identity
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(h.get(r, 20 + c), r == c);
            }
        }
    }

    #[test]
    fn bg2_zc2_dimensions() {
        let h = expand_base_graph(BaseGraph::bundled(BaseGraphId::Bg2), 2, 0).unwrap();
        assert_eq!((h.rows(), h.cols()), (84, 104));
    }

    #[test]
    fn rejects_mismatched_set() {
        let bg1 = BaseGraph::bundled(BaseGraphId::Bg1);
        assert!(expand_base_graph(bg1, 384, 0).is_err());
        assert!(expand_base_graph(bg1, 384, 1).is_ok());
        assert!(expand_base_graph(bg1, 7, 8).is_err());
    }

    #[test]
    fn every_lifting_is_permutation_blocks() {
        for id in [BaseGraphId::Bg1, BaseGraphId::Bg2] {
            let bg = BaseGraph::bundled(id);
            for zc in lifting_sizes() {
                let set = set_index_of(zc).unwrap();
                let h = expand_base_graph(bg, zc, set).unwrap();
                assert_eq!(h.rows(), id.rows() * zc);
                assert_eq!(h.cols(), id.cols() * zc);
                // one 1 per row and per column of each non-zero block
                for (r, layer) in h.layers.iter().enumerate() {
                    for c in layer {
                        let mut hit_cols = vec![0u8; zc];
                        for i in 0..zc {
                            hit_cols[(i + c.shift) % zc] += 1;
                        }
                        assert!(hit_cols.iter().all(|&n| n == 1), "{id} z={zc} ({r},{})", c.col);
                    }
                }
            }
        }
    }

    #[test]
    fn syndrome_rejects_wrong_length() {
        let h = expand_base_graph(BaseGraph::bundled(BaseGraphId::Toy), 2, 0).unwrap();
        assert!(syndrome_check(&h, &[0; 15]).is_err());
        assert!(syndrome_check(&h, &[0; 16]).unwrap());
    }

    #[test]
    fn xor_rotated_matches_definition() {
        let block = [1u8, 0, 0, 1, 1];
        for shift in 0..5 {
            let mut acc = [0u8; 5];
            xor_rotated(&mut acc, &block, shift);
            for i in 0..5 {
                assert_eq!(acc[i], block[(i + shift) % 5]);
            }
        }
    }
}
