use std::cmp::Ordering;
use std::fmt;

/// A set of 0-based coordinates of a dense function (arity below 64).
///
/// Ordered by size, then lexicographically by ascending element lists, which
/// is the "smallest-then-lexicographic" order used for every tie-break.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CoordSet(u64);

impl CoordSet {
    pub const EMPTY: CoordSet = CoordSet(0);

    pub fn from_bits(bits: u64) -> Self {
        CoordSet(bits)
    }

    /// `{0, ..., n-1}`
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 64);
        CoordSet(if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    pub fn singleton(i: usize) -> Self {
        CoordSet(1u64 << i)
    }

    /// Builds from 1-based coordinates.
    pub fn one_based(coords: &[usize]) -> Self {
        coords.iter().map(|&c| c - 1).collect()
    }

    pub fn bits(&self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        (self.0 >> i) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(&self, other: &CoordSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(&self, other: &CoordSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(&self, other: &CoordSet) -> CoordSet {
        CoordSet(self.0 | other.0)
    }

    pub fn intersection(&self, other: &CoordSet) -> CoordSet {
        CoordSet(self.0 & other.0)
    }

    pub fn difference(&self, other: &CoordSet) -> CoordSet {
        CoordSet(self.0 & !other.0)
    }

    pub fn first(&self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Elements in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    /// 1-based elements, ascending.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

impl FromIterator<usize> for CoordSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = CoordSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl Ord for CoordSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for CoordSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Prints 1-based, e.g. `{1,2,5}`.
impl fmt::Display for CoordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for CoordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
