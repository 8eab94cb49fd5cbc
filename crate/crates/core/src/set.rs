use std::fmt;

/// A set of element indices, stored as a bit vector.
///
/// Trailing zero words are never stored, so the derived equality, hashing
/// and ordering are all semantic.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    words: Vec<u64>,
}

impl ElementSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut words = vec![u64::MAX; n / 64];
        if !n.is_multiple_of(64) {
            words.push((1u64 << (n % 64)) - 1);
        }
        let mut s = Self { words };
        s.trim();
        s
    }

    pub fn singleton(x: usize) -> Self {
        let mut s = Self::new();
        s.insert(x);
        s
    }

    /// Builds a set from the low `n` bits of a mask, mapping bit `i` to `universe[i]`.
    pub fn from_mask(universe: &[usize], mask: u64) -> Self {
        let mut s = Self::new();
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            s.insert(universe[i]);
            m &= m - 1;
        }
        s
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, x: usize) -> bool {
        let (w, b) = (x / 64, x % 64);
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, x: usize) -> bool {
        let (w, b) = (x / 64, x % 64);
        if w >= self.words.len() {
            return false;
        }
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        self.trim();
        present
    }

    pub fn contains(&self, x: usize) -> bool {
        let (w, b) = (x / 64, x % 64);
        w < self.words.len() && self.words[w] & (1 << b) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter { words: &self.words, word: 0, current: self.words.first().copied().unwrap_or(0) }
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.len() <= other.words.len()
            && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        let (long, short) =
            if self.words.len() >= other.words.len() { (self, other) } else { (other, self) };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w |= s;
        }
        Self { words }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut s = Self {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        };
        s.trim();
        s
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut words = self.words.clone();
        for (w, o) in words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        let mut s = Self { words };
        s.trim();
        s
    }

    pub fn union_with(&mut self, other: &Self) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::new();
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let b = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * 64 + b);
            }
            self.word += 1;
            if self.word >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word];
        }
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
