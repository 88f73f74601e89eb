use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Colors are `1..=k`.
pub type Color = usize;

/// A set of colors backed by a growable bitset.
///
/// Trailing zero words are always trimmed, so derived equality and hashing
/// agree with set equality.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSet {
    words: Vec<u64>,
}

impl ColorSet {
    pub fn new() -> Self {
        ColorSet::default()
    }

    /// `{1, …, k}`.
    pub fn range(k: usize) -> Self {
        let mut set = ColorSet::new();
        for c in 1..=k {
            set.insert(c);
        }
        set
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, c: Color) -> bool {
        let (w, b) = (c / 64, c % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] >> b & 1 == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, c: Color) -> bool {
        let (w, b) = (c / 64, c % 64);
        let Some(word) = self.words.get_mut(w) else {
            return false;
        };
        let present = *word >> b & 1 == 1;
        *word &= !(1 << b);
        self.trim();
        present
    }

    pub fn contains(&self, c: Color) -> bool {
        self.words
            .get(c / 64)
            .is_some_and(|word| word >> (c % 64) & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Color> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn first(&self) -> Option<Color> {
        self.iter().next()
    }

    pub fn union(&self, other: &ColorSet) -> ColorSet {
        let len = self.words.len().max(other.words.len());
        let words = (0..len)
            .map(|i| self.word(i) | other.word(i))
            .collect();
        ColorSet { words }
    }

    pub fn intersection(&self, other: &ColorSet) -> ColorSet {
        let len = self.words.len().min(other.words.len());
        let mut set = ColorSet {
            words: (0..len).map(|i| self.word(i) & other.word(i)).collect(),
        };
        set.trim();
        set
    }

    pub fn difference(&self, other: &ColorSet) -> ColorSet {
        let mut set = ColorSet {
            words: (0..self.words.len())
                .map(|i| self.word(i) & !other.word(i))
                .collect(),
        };
        set.trim();
        set
    }

    pub fn union_with(&mut self, other: &ColorSet) {
        *self = self.union(other);
    }

    pub fn is_disjoint(&self, other: &ColorSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &ColorSet) -> bool {
        (0..self.words.len()).all(|i| self.word(i) & !other.word(i) == 0)
    }

    fn word(&self, i: usize) -> u64 {
        self.words.get(i).copied().unwrap_or(0)
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        let mut set = ColorSet::new();
        for c in iter {
            set.insert(c);
        }
        set
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ColorSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ColorSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let colors = Vec::<Color>::deserialize(deserializer)?;
        Ok(colors.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a: ColorSet = [1, 3, 70].into_iter().collect();
        let b: ColorSet = [3, 4].into_iter().collect();
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![1, 3, 70]);
        assert_eq!(a.intersection(&b), [3].into_iter().collect());
        assert_eq!(a.difference(&b), [1, 70].into_iter().collect());
        assert_eq!(a.union(&b).len(), 4);
        assert!(!a.is_disjoint(&b));
        assert!(ColorSet::range(3).is_subset(&ColorSet::range(4)));
        let mut c = a.clone();
        c.remove(70);
        assert_eq!(c, [1, 3].into_iter().collect());
        assert_eq!(serde_json::to_string(&c).unwrap(), "[1,3]");
    }
}
