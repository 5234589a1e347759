use core::cmp::Ordering;

/// A subset of a frame, stored as its characteristic bit word.
///
/// Ordering is by ascending cardinality, then ascending bit word. Sparse mass
/// maps iterate in that order, which is also the trace display order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FocalSet {
    bits: u64,
    frame_size: u8,
}

fn mask(frame_size: usize) -> u64 {
    if frame_size >= 64 {
        u64::MAX
    } else {
        (1u64 << frame_size) - 1
    }
}

impl FocalSet {
    /// Returns `None` if `bits` has a member at or beyond `frame_size`, or if
    /// `frame_size` is outside `1..=64`.
    pub fn from_bits(bits: u64, frame_size: usize) -> Option<Self> {
        if frame_size == 0 || frame_size > 64 || bits & !mask(frame_size) != 0 {
            return None;
        }
        Some(Self::from_bits_unchecked(bits, frame_size))
    }

    pub(crate) fn from_bits_unchecked(bits: u64, frame_size: usize) -> Self {
        debug_assert!(bits & !mask(frame_size) == 0);
        FocalSet {
            bits,
            frame_size: frame_size as u8,
        }
    }

    pub fn empty(frame_size: usize) -> Self {
        Self::from_bits_unchecked(0, frame_size)
    }

    pub fn full(frame_size: usize) -> Self {
        Self::from_bits_unchecked(mask(frame_size), frame_size)
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn frame_size(self) -> usize {
        self.frame_size as usize
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn is_full(self) -> bool {
        self.bits == mask(self.frame_size())
    }

    pub fn is_singleton(self) -> bool {
        self.bits.count_ones() == 1
    }

    pub fn intersection(self, other: Self) -> Self {
        FocalSet {
            bits: self.bits & other.bits,
            frame_size: self.frame_size,
        }
    }

    pub fn union(self, other: Self) -> Self {
        FocalSet {
            bits: self.bits | other.bits,
            frame_size: self.frame_size,
        }
    }

    pub fn complement(self) -> Self {
        FocalSet {
            bits: !self.bits & mask(self.frame_size()),
            frame_size: self.frame_size,
        }
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn intersects(self, other: Self) -> bool {
        self.bits & other.bits != 0
    }

    pub fn contains(self, index: usize) -> bool {
        index < 64 && self.bits & (1u64 << index) != 0
    }

    /// Member indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut rest = self.bits;
        core::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        })
    }
}

impl Ord for FocalSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bits
            .count_ones()
            .cmp(&other.bits.count_ones())
            .then(self.bits.cmp(&other.bits))
            .then(self.frame_size.cmp(&other.frame_size))
    }
}

impl PartialOrd for FocalSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
