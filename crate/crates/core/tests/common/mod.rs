//! Shared test oracles, independent of the library's optimized paths.

use pgd_core::design::IncidenceStructure;

/// Literal flag-count oracle: for a fixed (u, B), iterate every candidate
/// flag (w, C) over all points and all block instances and count the ones
/// with w in B minus u, w in C, u in C, and C a different instance than B.
///
/// Deliberately naive; it must stay independent of the block-intersection
/// table used by the library.
pub fn s_value_brute(s: &IncidenceStructure, u: u32, b_idx: usize) -> u64 {
    let block_b = &s.blocks()[b_idx];
    let mut count = 0u64;
    for w in 0..s.v() as u32 {
        for (ci, c) in s.blocks().iter().enumerate() {
            let w_is_flag_of_c = c.binary_search(&w).is_ok();
            let w_in_b_minus_u = w != u && block_b.binary_search(&w).is_ok();
            let u_in_c = c.binary_search(&u).is_ok();
            if w_is_flag_of_c && w_in_b_minus_u && u_in_c && ci != b_idx {
                count += 1;
            }
        }
    }
    count
}

/// The full s(u, B) matrix by brute force, row-major by point then block.
pub fn s_matrix_brute(s: &IncidenceStructure) -> Vec<u64> {
    let b = s.b();
    let mut out = vec![0u64; s.v() * b];
    for u in 0..s.v() as u32 {
        for bi in 0..b {
            out[u as usize * b + bi] = s_value_brute(s, u, bi);
        }
    }
    out
}
