//! Dense point sets over a fixed universe `0..len`.
//!
//! Every intermediate and final result of the checkers is a [`PointSet`]. The
//! representation is a packed bit vector, so the set algebra used by the
//! boolean connectives runs a word at a time.

use std::fmt;

type Word = u64;
const WORD_BITS: usize = Word::BITS as usize;

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

#[inline]
fn split(index: usize) -> (usize, Word) {
    (index / WORD_BITS, 1 << (index % WORD_BITS))
}

/// A subset of `{0, .., len - 1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    universe: usize,
    count: usize,
    words: Vec<Word>,
}

impl PointSet {
    /// The empty subset of a universe with `len` points.
    pub fn empty(len: usize) -> Self {
        PointSet {
            universe: len,
            count: 0,
            words: vec![0; word_count(len)],
        }
    }

    /// The whole universe.
    pub fn full(len: usize) -> Self {
        let mut set = PointSet {
            universe: len,
            count: len,
            words: vec![Word::MAX; word_count(len)],
        };
        set.clear_excess();
        set
    }

    /// Builds a set from point indices. Returns the first out-of-range index
    /// as the error.
    pub fn from_points<I>(len: usize, points: I) -> Result<Self, usize>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = PointSet::empty(len);
        for p in points {
            if p >= len {
                return Err(p);
            }
            set.insert(p);
        }
        Ok(set)
    }

    /// Builds a set from a membership predicate.
    pub fn from_fn(len: usize, mut member: impl FnMut(usize) -> bool) -> Self {
        let mut set = PointSet::empty(len);
        for p in 0..len {
            if member(p) {
                set.insert(p);
            }
        }
        set
    }

    /// Size of the universe this set lives in.
    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Number of members.
    #[inline]
    pub fn len(&self) -> usize {
        self.count
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    #[inline]
    pub fn is_full(&self) -> bool {
        self.count == self.universe
    }

    #[inline]
    pub fn contains(&self, p: usize) -> bool {
        if p >= self.universe {
            return false;
        }
        let (w, mask) = split(p);
        self.words[w] & mask != 0
    }

    /// Adds `p`; returns `true` if it was not already present.
    ///
    /// Panics if `p` is outside the universe.
    #[inline]
    pub fn insert(&mut self, p: usize) -> bool {
        assert!(p < self.universe, "point {p} outside universe of {}", self.universe);
        let (w, mask) = split(p);
        let fresh = self.words[w] & mask == 0;
        self.words[w] |= mask;
        self.count += fresh as usize;
        fresh
    }

    /// Removes `p`; returns `true` if it was present.
    #[inline]
    pub fn remove(&mut self, p: usize) -> bool {
        if p >= self.universe {
            return false;
        }
        let (w, mask) = split(p);
        let present = self.words[w] & mask != 0;
        self.words[w] &= !mask;
        self.count -= present as usize;
        present
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word_index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Smallest member.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &PointSet) {
        self.zip_assign(other, |a, b| a | b);
    }

    pub fn intersect_with(&mut self, other: &PointSet) {
        self.zip_assign(other, |a, b| a & b);
    }

    pub fn subtract(&mut self, other: &PointSet) {
        self.zip_assign(other, |a, b| a & !b);
    }

    pub fn complement_in_place(&mut self) {
        for w in &mut self.words {
            *w = !*w;
        }
        self.clear_excess();
        self.count = self.universe - self.count;
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        let mut out = self.clone();
        out.subtract(other);
        out
    }

    pub fn complement(&self) -> PointSet {
        let mut out = self.clone();
        out.complement_in_place();
        out
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.check_universe(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersects(&self, other: &PointSet) -> bool {
        !self.is_disjoint(other)
    }

    #[inline]
    fn check_universe(&self, other: &PointSet) {
        assert_eq!(
            self.universe, other.universe,
            "point sets over different universes ({} vs {})",
            self.universe, other.universe
        );
    }

    fn zip_assign(&mut self, other: &PointSet, op: impl Fn(Word, Word) -> Word) {
        self.check_universe(other);
        let mut count = 0;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a = op(*a, *b);
            count += a.count_ones() as usize;
        }
        self.count = count;
    }

    fn clear_excess(&mut self) {
        let rem = self.universe % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`PointSet`].
pub struct Iter<'a> {
    words: &'a [Word],
    word_index: usize,
    current: Word,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_index * WORD_BITS + bit);
            }
            self.word_index += 1;
            self.current = *self.words.get(self.word_index)?;
        }
    }
}
