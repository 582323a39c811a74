//! Bitmask encodings of element sets for the exhaustive routines.

/// Largest ground set the exhaustive subset/flat enumerations accept.
pub const ENUMERATION_LIMIT: usize = 16;

/// Largest ground set the pairwise axiom checker accepts.
pub const AXIOM_LIMIT: usize = 8;

pub fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0, |m, &e| m | 1 << e)
}

pub fn members(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// All submasks of `mask`, including `mask` itself and zero.
pub fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let current = next?;
        next = if current == 0 {
            None
        } else {
            Some((current - 1) & mask)
        };
        Some(current)
    })
}
