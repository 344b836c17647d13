//! Small index sets backed by a single `u64`.
//!
//! Used both for sets of loset positions and for sets of events of an
//! ipomset; everything in this crate is limited to 64 of either.

use std::fmt;

pub const MAX_BITS: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PosSet(u64);

impl PosSet {
    pub const EMPTY: PosSet = PosSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        PosSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, 1, …, n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_BITS);
        if n == MAX_BITS {
            PosSet(u64::MAX)
        } else {
            PosSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        PosSet(1u64 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_BITS && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: PosSet) -> PosSet {
        PosSet(self.0 | other.0)
    }

    pub fn intersection(self, other: PosSet) -> PosSet {
        PosSet(self.0 & other.0)
    }

    pub fn difference(self, other: PosSet) -> PosSet {
        PosSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: PosSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: PosSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Ascending iteration.
    pub fn iter(self) -> impl DoubleEndedIterator<Item = usize> + Clone {
        (0..MAX_BITS).filter(move |&i| self.contains(i))
    }

    /// All subsets of `self`, starting with the empty set.
    pub fn subsets(self) -> impl Iterator<Item = PosSet> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(PosSet(cur))
        })
    }

    /// Re-express positions of a reduced loset as positions of the full loset
    /// from which the positions in `removed` were deleted.
    pub fn lift(self, removed: PosSet) -> PosSet {
        let mut out = PosSet::EMPTY;
        let mut reduced = 0;
        let mut full = 0;
        let top = self.max().map_or(0, |m| m + 1);
        while reduced < top {
            if removed.contains(full) {
                full += 1;
                continue;
            }
            if self.contains(reduced) {
                out.insert(full);
            }
            reduced += 1;
            full += 1;
        }
        out
    }

    /// Inverse of [`PosSet::lift`]: positions of the full loset (disjoint
    /// from `removed`) as positions of the reduced one.
    pub fn squeeze(self, removed: PosSet) -> PosSet {
        debug_assert!(self.is_disjoint(removed));
        let mut out = PosSet::EMPTY;
        for i in self.iter() {
            let shift = removed.intersection(PosSet::full(i)).len();
            out.insert(i - shift);
        }
        out
    }
}

impl FromIterator<usize> for PosSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = PosSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for PosSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
