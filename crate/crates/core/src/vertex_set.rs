//! Word-packed vertex subsets.

use core::fmt;

/// Maximum number of vertices a [`VertexSet`] (and therefore a graph) can hold.
pub const MAX_VERTICES: usize = 64;

/// A subset of `{0, .., 63}` packed into one machine word.
///
/// Iteration always yields vertices in strictly ascending order. The leaf
/// index map and every tie-break in the crate rely on that order.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, .., n-1}`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub const fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, v: usize) -> bool {
        v < 64 && (self.0 >> v) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub const fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member, if any.
    #[inline]
    pub const fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    #[inline]
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// All subsets of `self` with exactly `size` members, in ascending order
    /// of their bitmask value.
    pub fn subsets_of_size(self, size: usize) -> SubsetsOfSize {
        SubsetsOfSize::new(self, size)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone, Debug)]
pub struct Iter(u64);

impl Iterator for Iter {
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
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

/// Fixed-size subsets of a mask.
///
/// Walks combinations of the mask's positions with Gosper's hack over a
/// compact `k`-bit word and scatters each combination back onto the mask.
/// Scattering preserves order, so the output is ascending by bitmask.
#[derive(Clone, Debug)]
pub struct SubsetsOfSize {
    positions: [u8; 64],
    width: usize,
    current: Option<u64>,
}

impl SubsetsOfSize {
    fn new(mask: VertexSet, size: usize) -> Self {
        let mut positions = [0u8; 64];
        let mut width = 0;
        for v in mask.iter() {
            positions[width] = v as u8;
            width += 1;
        }
        let current = if size > width {
            None
        } else if size == 0 {
            Some(0)
        } else {
            Some(if size == 64 { u64::MAX } else { (1u64 << size) - 1 })
        };
        SubsetsOfSize { positions, width, current }
    }

    fn scatter(&self, compact: u64) -> VertexSet {
        let mut out = 0u64;
        let mut rest = compact;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            out |= 1u64 << self.positions[i];
            rest &= rest - 1;
        }
        VertexSet(out)
    }
}

impl Iterator for SubsetsOfSize {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let c = self.current?;
        let out = self.scatter(c);
        self.current = if c == 0 {
            None
        } else {
            // Gosper's hack, stopping once the top bit leaves the window.
            let low = c & c.wrapping_neg();
            let (ripple, overflow) = c.overflowing_add(low);
            if overflow {
                None
            } else {
                let next = (((ripple ^ c) >> 2) / low) | ripple;
                if self.width < 64 && next >> self.width != 0 {
                    None
                } else {
                    Some(next)
                }
            }
        };
        Some(out)
    }
}
