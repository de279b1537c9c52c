//! Small helpers for `u64` vertex masks.

/// Mask with the lowest `n` bits set (`n <= 64`).
#[inline]
pub const fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Iterator over the set bits of a mask, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

#[inline]
pub fn bits(mask: u64) -> Bits {
    Bits(mask)
}

/// Builds a mask from vertex indices. Indices must be `< 64`.
pub fn mask_from(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0, |m, &v| m | bit(v))
}

/// Sorted vertex list of a mask.
pub fn to_vec(mask: u64) -> Vec<usize> {
    bits(mask).collect()
}

/// Lexicographic order on the sorted index sequences of two vertex sets,
/// e.g. `{0,1} < {0,2} < {1}` and a proper prefix sorts first.
pub fn lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let x = diff.trailing_zeros();
    let above = if x >= 63 { 0 } else { !low_mask(x as usize + 1) };
    if a & bit(x as usize) != 0 {
        // `a` has x where `b` continues with a larger element or stops.
        b & above != 0
    } else {
        a & above == 0
    }
}
