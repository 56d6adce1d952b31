//! Word-slice bitmask helpers.
//!
//! Point sets inside a geometry are represented as `&[u64]` slices whose
//! width is fixed per geometry (`words_for(point_count)`). Keeping them as
//! plain slices lets the search kernels preallocate one buffer per search
//! depth and mutate in place.

use alloc::vec;
use alloc::vec::Vec;

/// Number of 64-bit words needed to hold `bits` bits.
pub const fn words_for(bits: usize) -> usize {
    (bits + 63) / 64
}

pub fn zeroed(words: usize) -> Vec<u64> {
    vec![0u64; words]
}

/// All-ones mask over `bits` bits (trailing bits cleared).
pub fn full(bits: usize) -> Vec<u64> {
    let words = words_for(bits);
    let mut m = vec![!0u64; words];
    let rem = bits % 64;
    if rem != 0 {
        m[words - 1] = (1u64 << rem) - 1;
    }
    m
}

#[inline(always)]
pub fn set(mask: &mut [u64], i: usize) {
    mask[i >> 6] |= 1u64 << (i & 63);
}

#[inline(always)]
pub fn clear(mask: &mut [u64], i: usize) {
    mask[i >> 6] &= !(1u64 << (i & 63));
}

#[inline(always)]
pub fn test(mask: &[u64], i: usize) -> bool {
    (mask[i >> 6] >> (i & 63)) & 1 == 1
}

#[inline]
pub fn and_assign(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d &= *s;
    }
}

#[inline]
pub fn and_not_assign(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d &= !*s;
    }
}

#[inline]
pub fn copy_from(dst: &mut [u64], src: &[u64]) {
    dst.copy_from_slice(src);
}

/// Clears bits 0..=i.
#[inline]
pub fn clear_through(mask: &mut [u64], i: usize) {
    let w = i >> 6;
    for word in &mut mask[..w] {
        *word = 0;
    }
    let rem = (i & 63) as u32;
    if rem == 63 {
        mask[w] = 0;
    } else {
        mask[w] &= !((1u64 << (rem + 1)) - 1);
    }
}

#[inline]
pub fn count(mask: &[u64]) -> u64 {
    mask.iter().map(|w| w.count_ones() as u64).sum()
}

#[inline]
pub fn is_zero(mask: &[u64]) -> bool {
    mask.iter().all(|w| *w == 0)
}

pub fn intersects(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

pub fn is_subset(sub: &[u64], sup: &[u64]) -> bool {
    sub.iter().zip(sup).all(|(x, y)| x & !y == 0)
}

pub fn first_set(mask: &[u64]) -> Option<usize> {
    for (wi, w) in mask.iter().enumerate() {
        if *w != 0 {
            return Some(wi * 64 + w.trailing_zeros() as usize);
        }
    }
    None
}

/// Iterator over set bit positions, ascending.
pub struct SetBits<'a> {
    mask: &'a [u64],
    word: u64,
    wi: usize,
}

impl<'a> SetBits<'a> {
    pub fn new(mask: &'a [u64]) -> Self {
        let word = if mask.is_empty() { 0 } else { mask[0] };
        SetBits { mask, word, wi: 0 }
    }
}

impl<'a> Iterator for SetBits<'a> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.word == 0 {
            self.wi += 1;
            if self.wi >= self.mask.len() {
                return None;
            }
            self.word = self.mask[self.wi];
        }
        let bit = self.word.trailing_zeros() as usize;
        self.word &= self.word - 1;
        Some(self.wi * 64 + bit)
    }
}

pub fn iter(mask: &[u64]) -> SetBits<'_> {
    SetBits::new(mask)
}
