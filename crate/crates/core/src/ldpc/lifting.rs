/// Base values `a` of the eight lifting-size sets; set `i` holds `a_i * 2^j`.
pub const LIFTING_SET_BASES: [usize; 8] = [2, 3, 5, 7, 9, 11, 13, 15];

pub const MAX_LIFTING_SIZE: usize = 384;

/// Set index of a lifting size, or `None` if `zc` is not one of the 51
/// standard values.
pub fn set_index_of(zc: usize) -> Option<usize> {
    if !(2..=MAX_LIFTING_SIZE).contains(&zc) {
        return None;
    }
    let odd = zc >> zc.trailing_zeros();
    // `2^j` alone belongs to the a = 2 set.
    let odd = if odd == 1 { 2 } else { odd };
    LIFTING_SET_BASES.iter().position(|&a| a == odd)
}

/// All standard lifting sizes in ascending order.
pub fn lifting_sizes() -> Vec<usize> {
    let mut sizes: Vec<usize> = LIFTING_SET_BASES
        .iter()
        .flat_map(|&a| std::iter::successors(Some(a), |z| Some(z * 2)).take_while(|&z| z <= MAX_LIFTING_SIZE))
        .collect();
    sizes.sort_unstable();
    sizes
}
