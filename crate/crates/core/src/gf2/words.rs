//! Packed `u64` bit-row helpers used by the dense elimination kernels.

#[inline]
pub(crate) fn count(bits: usize) -> usize {
    bits.div_ceil(64)
}

#[inline]
pub(crate) fn get(w: &[u64], i: usize) -> bool {
    (w[i >> 6] >> (i & 63)) & 1 == 1
}

#[inline]
pub(crate) fn set(w: &mut [u64], i: usize) {
    w[i >> 6] |= 1 << (i & 63);
}

#[inline]
pub(crate) fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

#[inline]
pub(crate) fn popcount(w: &[u64]) -> usize {
    w.iter().map(|x| x.count_ones() as usize).sum()
}

#[inline]
pub(crate) fn is_zero(w: &[u64]) -> bool {
    w.iter().all(|&x| x == 0)
}

/// Parity of the bitwise AND of two rows.
#[inline]
pub(crate) fn and_parity(a: &[u64], b: &[u64]) -> bool {
    let mut acc = 0u64;
    for (x, y) in a.iter().zip(b) {
        acc ^= x & y;
    }
    acc.count_ones() & 1 == 1
}

/// Index of the lowest set bit, if any.
#[inline]
pub(crate) fn lowest(w: &[u64]) -> Option<usize> {
    w.iter()
        .enumerate()
        .find(|(_, &x)| x != 0)
        .map(|(i, x)| i * 64 + x.trailing_zeros() as usize)
}

/// Positions of set bits below `len`, ascending.
pub(crate) fn ones(w: &[u64], len: usize) -> impl Iterator<Item = usize> + '_ {
    w.iter().enumerate().flat_map(move |(wi, &word)| {
        let mut x = word;
        std::iter::from_fn(move || {
            if x == 0 {
                return None;
            }
            let b = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(wi * 64 + b)
        })
        .take_while(move |&i| i < len)
    })
}
