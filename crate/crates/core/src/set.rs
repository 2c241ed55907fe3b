//! Canonical word collections.

use crate::error::{Error, Result};
use crate::word::Word;

/// Guardrail: enumerations over spaces larger than this need `force`.
pub const ENUM_LIMIT: u128 = 1 << 24;

/// Rejects shapes whose ambient space `q^n` is too large to enumerate, and
/// always rejects shapes that cannot be packed into a `u128` key.
pub fn check_space(len: usize, q: u8, force: bool) -> Result<()> {
    let size = (q as u128).checked_pow(len as u32);
    match size {
        None => Err(Error::domain(format!(
            "words of length {len} over q={q} do not fit the 128-bit key encoding"
        ))),
        Some(sz) if sz > ENUM_LIMIT && !force => Err(Error::Guardrail { n: len, q }),
        Some(_) => Ok(()),
    }
}

/// Base-q big-endian packing; preserves lexicographic order for a fixed length.
#[derive(Debug, Clone)]
pub(crate) struct Codec {
    q: u8,
    pows: Vec<u128>,
}

impl Codec {
    pub(crate) fn new(len: usize, q: u8) -> Result<Self> {
        check_space(len, q, true)?;
        let mut pows = vec![1u128; len];
        for i in (0..len.saturating_sub(1)).rev() {
            pows[i] = pows[i + 1] * q as u128;
        }
        Ok(Codec { q, pows })
    }

    pub(crate) fn len(&self) -> usize {
        self.pows.len()
    }

    /// Weight of position `i` (0-based).
    pub(crate) fn pow(&self, i: usize) -> u128 {
        self.pows[i]
    }

    pub(crate) fn encode(&self, symbols: &[u8]) -> u128 {
        debug_assert_eq!(symbols.len(), self.pows.len());
        symbols.iter().fold(0u128, |acc, &s| acc * self.q as u128 + s as u128)
    }

    pub(crate) fn decode(&self, mut key: u128) -> Vec<u8> {
        let mut out = vec![0u8; self.pows.len()];
        for slot in out.iter_mut().rev() {
            *slot = (key % self.q as u128) as u8;
            key /= self.q as u128;
        }
        out
    }
}

/// A deduplicated set of equal-length words, iterated lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSet {
    word_len: usize,
    q: u8,
    keys: Vec<u128>,
}

impl WordSet {
    pub fn empty(word_len: usize, q: u8) -> Self {
        WordSet {
            word_len,
            q,
            keys: Vec::new(),
        }
    }

    pub(crate) fn from_keys(word_len: usize, q: u8, mut keys: Vec<u128>) -> Self {
        keys.sort_unstable();
        keys.dedup();
        WordSet { word_len, q, keys }
    }

    pub fn from_words<'a>(
        word_len: usize,
        q: u8,
        words: impl IntoIterator<Item = &'a Word>,
    ) -> Result<Self> {
        let codec = Codec::new(word_len, q)?;
        let mut keys = Vec::new();
        for w in words {
            if w.len() != word_len || w.q() != q {
                return Err(Error::Dimension {
                    left_len: word_len,
                    left_q: q,
                    right_len: w.len(),
                    right_q: w.q(),
                });
            }
            keys.push(codec.encode(w.symbols()));
        }
        Ok(Self::from_keys(word_len, q, keys))
    }

    /// Union of many sets sharing one shape.
    pub fn union_all(word_len: usize, q: u8, sets: impl IntoIterator<Item = WordSet>) -> Self {
        let mut keys = Vec::new();
        for s in sets {
            debug_assert!(s.word_len == word_len && s.q == q);
            keys.extend(s.keys);
        }
        Self::from_keys(word_len, q, keys)
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn word_len(&self) -> usize {
        self.word_len
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    fn codec(&self) -> Codec {
        Codec::new(self.word_len, self.q).expect("shape validated on construction")
    }

    pub fn iter(&self) -> impl Iterator<Item = Word> + '_ {
        let codec = self.codec();
        self.keys
            .iter()
            .map(move |&k| Word::from_raw(codec.decode(k), self.q))
    }

    /// The `i`-th member in lexicographic order.
    pub fn get(&self, i: usize) -> Option<Word> {
        let k = *self.keys.get(i)?;
        Some(Word::from_raw(self.codec().decode(k), self.q))
    }

    pub fn to_vec(&self) -> Vec<Word> {
        self.iter().collect()
    }

    pub fn contains(&self, w: &Word) -> bool {
        if w.len() != self.word_len || w.q() != self.q {
            return false;
        }
        let k = self.codec().encode(w.symbols());
        self.keys.binary_search(&k).is_ok()
    }

    pub fn union(&self, other: &WordSet) -> WordSet {
        self.same_shape(other);
        let mut keys = Vec::with_capacity(self.len() + other.len());
        keys.extend_from_slice(&self.keys);
        keys.extend_from_slice(&other.keys);
        Self::from_keys(self.word_len, self.q, keys)
    }

    pub fn intersection(&self, other: &WordSet) -> WordSet {
        self.same_shape(other);
        let keys = merge_filter(&self.keys, &other.keys, true);
        WordSet {
            word_len: self.word_len,
            q: self.q,
            keys,
        }
    }

    pub fn difference(&self, other: &WordSet) -> WordSet {
        self.same_shape(other);
        let keys = merge_filter(&self.keys, &other.keys, false);
        WordSet {
            word_len: self.word_len,
            q: self.q,
            keys,
        }
    }

    pub fn intersection_len(&self, other: &WordSet) -> usize {
        self.same_shape(other);
        let (a, b) = (&self.keys, &other.keys);
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }

    pub fn is_subset(&self, other: &WordSet) -> bool {
        self.intersection_len(other) == self.len()
    }

    pub fn is_disjoint(&self, other: &WordSet) -> bool {
        self.intersection_len(other) == 0
    }

    fn same_shape(&self, other: &WordSet) {
        assert!(
            self.word_len == other.word_len && self.q == other.q,
            "set operation on mismatched shapes"
        );
    }
}

/// Sorted merge keeping elements of `a` that are (`keep_common`) or are not in `b`.
fn merge_filter(a: &[u128], b: &[u128], keep_common: bool) -> Vec<u128> {
    let mut out = Vec::new();
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        let common = j < b.len() && b[j] == x;
        if common == keep_common {
            out.push(x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(list: &[&str], q: u8) -> Vec<Word> {
        list.iter().map(|s| Word::parse(s, q).unwrap()).collect()
    }

    #[test]
    fn order_is_lexicographic_and_deduplicated() {
        let ws = words(&["110", "000", "011", "000", "010"], 2);
        let set = WordSet::from_words(3, 2, &ws).unwrap();
        let out: Vec<String> = set.iter().map(|w| w.to_string()).collect();
        assert_eq!(out, ["000", "010", "011", "110"]);
    }

    #[test]
    fn set_algebra() {
        let a = WordSet::from_words(2, 3, &words(&["00", "01", "22"], 3)).unwrap();
        let b = WordSet::from_words(2, 3, &words(&["01", "12", "22"], 3)).unwrap();
        assert_eq!(a.intersection(&b).len(), 2);
        assert_eq!(a.union(&b).len(), 4);
        assert_eq!(a.difference(&b).to_vec(), words(&["00"], 3));
        assert!(a.intersection(&b).is_subset(&a));
        assert!(a.difference(&b).is_disjoint(&b));
        assert!(a.contains(&Word::parse("22", 3).unwrap()));
        assert!(!a.contains(&Word::parse("22", 4).unwrap()));
    }

    #[test]
    fn codec_round_trip() {
        let c = Codec::new(5, 7).unwrap();
        for key in [0u128, 1, 6, 7, 100, 16806] {
            assert_eq!(c.encode(&c.decode(key)), key);
        }
    }

    #[test]
    fn guardrail() {
        assert!(check_space(24, 2, false).is_ok());
        assert_eq!(check_space(25, 2, false), Err(Error::Guardrail { n: 25, q: 2 }));
        assert!(check_space(25, 2, true).is_ok());
        assert!(check_space(200, 2, true).is_err());
    }
}
