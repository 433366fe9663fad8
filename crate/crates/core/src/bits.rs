//! Word-slice bit operations shared by [`crate::reach`] and the search kernel.

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

#[inline]
pub(crate) fn set(words: &mut [u64], bit: usize) {
    words[bit / 64] |= 1 << (bit % 64);
}

#[inline]
pub(crate) fn get(words: &[u64], bit: usize) -> bool {
    words
        .get(bit / 64)
        .is_some_and(|w| w & (1 << (bit % 64)) != 0)
}

/// `dst |= src << shift`, discarding bits shifted past the end of `dst`.
#[inline]
pub(crate) fn or_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let word_shift = shift / 64;
    let bit_shift = shift % 64;
    for i in (word_shift..dst.len()).rev() {
        let from = i - word_shift;
        let lo = src.get(from).copied().unwrap_or(0);
        let mut v = lo << bit_shift;
        if bit_shift != 0 && from >= 1 {
            v |= src.get(from - 1).copied().unwrap_or(0) >> (64 - bit_shift);
        }
        dst[i] |= v;
    }
}

/// Index of the lowest clear bit, or `None` if every bit in `words` is set.
#[inline]
pub(crate) fn first_zero(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, w)| **w != u64::MAX)
        .map(|(i, w)| i * 64 + w.trailing_ones() as usize)
}
