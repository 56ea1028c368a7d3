//! Color sets over the universe `1..=64`, one bit per color.

use core::cmp::Ordering;
use core::fmt;

/// Largest color index a [`ColorSet`] can hold.
pub const MAX_COLOR: u8 = 64;

/// A set of colors drawn from `1..=64`. Color `c` lives in bit `c - 1`.
///
/// `Ord` compares the raw masks; use [`ColorSet::cmp_lex`] for the
/// lexicographic order of sorted elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ColorSet(u64);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        ColorSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{lo, ..., hi}`; empty when `lo > hi`.
    ///
    /// # Panics
    /// If `lo == 0` or `hi > 64`.
    pub fn range(lo: u8, hi: u8) -> Self {
        assert!(lo >= 1 && hi <= MAX_COLOR, "color range {lo}..={hi} outside 1..=64");
        if lo > hi {
            return ColorSet::EMPTY;
        }
        let width = (hi - lo + 1) as u32;
        let mask = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
        ColorSet(mask << (lo - 1))
    }

    /// Builds a set from color indices, rejecting anything outside `1..=64`.
    pub fn try_from_colors<I: IntoIterator<Item = u32>>(colors: I) -> Option<Self> {
        let mut bits = 0u64;
        for c in colors {
            if c == 0 || c > MAX_COLOR as u32 {
                return None;
            }
            bits |= 1u64 << (c - 1);
        }
        Some(ColorSet(bits))
    }

    /// # Panics
    /// On a color outside `1..=64`.
    pub fn from_colors(colors: &[u8]) -> Self {
        Self::try_from_colors(colors.iter().map(|&c| c as u32)).expect("color outside 1..=64")
    }

    #[inline]
    pub fn singleton(color: u8) -> Self {
        debug_assert!((1..=MAX_COLOR).contains(&color));
        ColorSet(1u64 << (color - 1))
    }

    #[inline]
    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, color: u8) -> bool {
        (1..=MAX_COLOR).contains(&color) && self.0 & (1u64 << (color - 1)) != 0
    }

    #[inline]
    pub const fn union(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & !other.0)
    }

    #[inline]
    pub const fn is_subset(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn is_disjoint(self, other: ColorSet) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn insert(&mut self, color: u8) {
        *self = self.union(ColorSet::singleton(color));
    }

    #[inline]
    pub fn remove(&mut self, color: u8) {
        *self = self.difference(ColorSet::singleton(color));
    }

    /// Smallest color, if any.
    #[inline]
    pub fn min(self) -> Option<u8> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as u8 + 1)
        }
    }

    /// Largest color, if any.
    #[inline]
    pub fn max(self) -> Option<u8> {
        if self.0 == 0 {
            None
        } else {
            Some(64 - self.0.leading_zeros() as u8)
        }
    }

    /// Colors in increasing order.
    #[inline]
    pub fn iter(self) -> Colors {
        Colors(self.0)
    }

    /// The `k` smallest colors of the set (all of them if it has fewer).
    pub fn smallest(self, k: u32) -> ColorSet {
        let mut out = 0u64;
        let mut rest = self.0;
        for _ in 0..k {
            if rest == 0 {
                break;
            }
            let low = rest & rest.wrapping_neg();
            out |= low;
            rest ^= low;
        }
        ColorSet(out)
    }

    /// Every `k`-element subset, in lexicographic order of sorted elements.
    pub fn subsets(self, k: u32) -> Subsets {
        Subsets::new(self, k)
    }

    /// Applies a color renaming. `map[c]` is the image of color `c`;
    /// `map[0]` is ignored.
    pub fn rename(self, map: &[u8]) -> ColorSet {
        let mut out = ColorSet::EMPTY;
        for c in self.iter() {
            out.insert(map[c as usize]);
        }
        out
    }

    /// Lexicographic comparison of the sorted element sequences.
    /// `{1,2} < {1,3} < {2,3}` and a proper prefix sorts first.
    pub fn cmp_lex(self, other: ColorSet) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<u8> for ColorSet {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        let mut s = ColorSet::EMPTY;
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl IntoIterator for ColorSet {
    type Item = u8;
    type IntoIter = Colors;
    fn into_iter(self) -> Colors {
        self.iter()
    }
}

/// Iterator over the colors of a [`ColorSet`], smallest first.
#[derive(Clone)]
pub struct Colors(u64);

impl Iterator for Colors {
    type Item = u8;

    #[inline]
    fn next(&mut self) -> Option<u8> {
        if self.0 == 0 {
            return None;
        }
        let c = self.0.trailing_zeros() as u8 + 1;
        self.0 &= self.0 - 1;
        Some(c)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Colors {}

/// Lexicographic `k`-subsets of a color set.
///
/// Positions are tracked as indices into the sorted member list, so the
/// order is the lexicographic order of sorted element tuples.
#[derive(Clone)]
pub struct Subsets {
    members: [u8; 64],
    n: usize,
    idx: [u8; 64],
    k: usize,
    done: bool,
}

impl Subsets {
    fn new(set: ColorSet, k: u32) -> Self {
        let mut members = [0u8; 64];
        let mut n = 0;
        for c in set.iter() {
            members[n] = c;
            n += 1;
        }
        let k = k as usize;
        let mut idx = [0u8; 64];
        for (i, slot) in idx.iter_mut().enumerate().take(k.min(64)) {
            *slot = i as u8;
        }
        Subsets { members, n, idx, k, done: k > n }
    }
}

impl Iterator for Subsets {
    type Item = ColorSet;

    fn next(&mut self) -> Option<ColorSet> {
        if self.done {
            return None;
        }
        let k = self.k;
        let mut out = 0u64;
        for &i in &self.idx[..k] {
            out |= 1u64 << (self.members[i as usize] - 1);
        }
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if (self.idx[i] as usize) < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(ColorSet(out))
    }
}

/// `n choose k` without overflow for the small arguments used here.
pub const fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = if k > n - k { n - k } else { k };
    let mut acc: u64 = 1;
    let mut i = 0;
    while i < k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
        i += 1;
    }
    acc
}
