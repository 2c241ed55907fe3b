//! Words over `Σ_q = {0, …, q−1}`, their runs, and coordinate supports.
//!
//! All positions in the public API are 1-based. A word of length `n` has
//! positions `1..=n`; runs are numbered `1..=m` from the left.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported alphabet; every symbol prints as one base-36 character.
pub const MAX_Q: u8 = 36;

/// A q-ary sequence of length at least one.
///
/// Ordering is lexicographic on the symbols, which fixes the canonical order
/// used by [`crate::WordSet`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    symbols: Vec<u8>,
    q: u8,
}

impl Word {
    pub fn new(symbols: Vec<u8>, q: u8) -> Result<Self> {
        check_q(q as u32)?;
        if symbols.is_empty() {
            return Err(Error::EmptyWord);
        }
        if let Some((i, &s)) = symbols.iter().enumerate().find(|(_, &s)| s >= q) {
            return Err(Error::Symbol {
                position: i + 1,
                symbol: s as u32,
                q,
            });
        }
        Ok(Word { symbols, q })
    }

    /// Caller guarantees the invariants.
    pub(crate) fn from_raw(symbols: Vec<u8>, q: u8) -> Self {
        debug_assert!(!symbols.is_empty() && symbols.iter().all(|&s| s < q));
        Word { symbols, q }
    }

    /// Parses the text word format: one base-36 character per symbol
    /// (plain digits when `q ≤ 10`). Symbols `≥ q` are rejected.
    pub fn parse(text: &str, q: u8) -> Result<Self> {
        check_q(q as u32)?;
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::EmptyWord);
        }
        let mut symbols = Vec::with_capacity(text.len());
        for (i, ch) in text.chars().enumerate() {
            let value = ch
                .to_digit(36)
                .ok_or_else(|| Error::Parse(format!("invalid character {ch:?} in {text:?}")))?;
            if value >= q as u32 {
                return Err(Error::Symbol {
                    position: i + 1,
                    symbol: value,
                    q,
                });
            }
            symbols.push(value as u8);
        }
        Ok(Word { symbols, q })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// Always false; kept for API symmetry with collections.
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Symbol at 1-based position `pos`.
    pub fn at(&self, pos: usize) -> Result<u8> {
        self.check_pos(pos)?;
        Ok(self.symbols[pos - 1])
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.symbols
    }

    fn check_pos(&self, pos: usize) -> Result<()> {
        if pos == 0 || pos > self.len() {
            Err(Error::Index {
                pos,
                len: self.len(),
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_same_shape(&self, other: &Word) -> Result<()> {
        if self.len() != other.len() || self.q != other.q {
            Err(Error::Dimension {
                left_len: self.len(),
                left_q: self.q,
                right_len: other.len(),
                right_q: other.q,
            })
        } else {
            Ok(())
        }
    }

    pub fn hamming(&self, other: &Word) -> Result<usize> {
        self.check_same_shape(other)?;
        Ok(raw_hamming(&self.symbols, &other.symbols))
    }

    pub fn support_diff(&self, other: &Word) -> Result<SupportDiff> {
        self.check_same_shape(other)?;
        let indices: Vec<usize> = self
            .symbols
            .iter()
            .zip(&other.symbols)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, _)| i + 1)
            .collect();
        if indices.is_empty() {
            return Err(Error::EmptySupport);
        }
        Ok(SupportDiff { indices })
    }

    /// `x_{[n]∖{j}}`: the word with position `j` removed.
    pub fn delete_at(&self, j: usize) -> Result<Word> {
        self.check_pos(j)?;
        if self.len() < 2 {
            return Err(Error::domain("cannot delete from a word of length 1"));
        }
        Ok(self.deleted(j))
    }

    /// Unchecked variant of [`Word::delete_at`]; `1 ≤ j ≤ n`, `n ≥ 2`.
    pub(crate) fn deleted(&self, j: usize) -> Word {
        let mut symbols = Vec::with_capacity(self.len() - 1);
        symbols.extend_from_slice(&self.symbols[..j - 1]);
        symbols.extend_from_slice(&self.symbols[j..]);
        Word::from_raw(symbols, self.q)
    }

    /// Hamming distance between `self` with position `j` deleted and `other`
    /// with position `j2` deleted, computed coordinate by coordinate without
    /// allocating either subsequence.
    pub fn hamming_after_deletions(&self, j: usize, other: &Word, j2: usize) -> Result<usize> {
        self.check_same_shape(other)?;
        self.check_pos(j)?;
        other.check_pos(j2)?;
        let (a, b) = (&self.symbols, &other.symbols);
        let mut count = 0;
        for k in 0..a.len() - 1 {
            let ka = if k + 1 >= j { k + 1 } else { k };
            let kb = if k + 1 >= j2 { k + 1 } else { k };
            count += (a[ka] != b[kb]) as usize;
        }
        Ok(count)
    }

    pub fn run_profile(&self) -> RunProfile {
        let mut boundaries = Vec::new();
        let mut run_symbols = Vec::new();
        let mut run_lengths = Vec::new();
        let mut start = 0;
        for i in 0..self.len() {
            if i + 1 == self.len() || self.symbols[i] != self.symbols[i + 1] {
                boundaries.push(i + 1);
                run_symbols.push(self.symbols[i]);
                run_lengths.push(i + 1 - start);
                start = i + 1;
            }
        }
        RunProfile {
            boundaries,
            run_symbols,
            run_lengths,
            q: self.q,
        }
    }

    /// Index λ of the run containing `pos` (both 1-based).
    pub fn run_index_of(&self, pos: usize) -> Result<usize> {
        self.check_pos(pos)?;
        Ok(self.run_profile().run_index_of_unchecked(pos))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            let ch = char::from_digit(s as u32, 36).expect("symbol below 36");
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

pub(crate) fn check_q(q: u32) -> Result<()> {
    if (2..=MAX_Q as u32).contains(&q) {
        Ok(())
    } else {
        Err(Error::Alphabet(q))
    }
}

pub(crate) fn raw_hamming(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Maximal runs of a word: run `i` covers positions `j_{i−1}+1 ..= j_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunProfile {
    boundaries: Vec<usize>,
    run_symbols: Vec<u8>,
    run_lengths: Vec<usize>,
    q: u8,
}

impl RunProfile {
    /// Number of runs `m`.
    pub fn m(&self) -> usize {
        self.boundaries.len()
    }

    /// Run end positions `j_1 < … < j_m = n`.
    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }

    pub fn run_symbols(&self) -> &[u8] {
        &self.run_symbols
    }

    pub fn run_lengths(&self) -> &[usize] {
        &self.run_lengths
    }

    /// `j_λ`, 1-based; `boundary(0)` is 0.
    pub fn boundary(&self, run: usize) -> usize {
        if run == 0 {
            0
        } else {
            self.boundaries[run - 1]
        }
    }

    pub fn run_index_of(&self, pos: usize) -> Result<usize> {
        let n = *self.boundaries.last().expect("at least one run");
        if pos == 0 || pos > n {
            return Err(Error::Index { pos, len: n });
        }
        Ok(self.run_index_of_unchecked(pos))
    }

    fn run_index_of_unchecked(&self, pos: usize) -> usize {
        self.boundaries.partition_point(|&b| b < pos) + 1
    }

    /// Rebuilds `x̄_1^{k_1} ⋯ x̄_m^{k_m}`.
    pub fn expand(&self) -> Word {
        let symbols = self
            .run_symbols
            .iter()
            .zip(&self.run_lengths)
            .flat_map(|(&s, &k)| std::iter::repeat_n(s, k))
            .collect();
        Word::from_raw(symbols, self.q)
    }
}

/// `supp(x − x′)` as sorted 1-based positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportDiff {
    indices: Vec<usize>,
}

impl SupportDiff {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn d(&self) -> usize {
        self.indices.len()
    }

    /// Number of support positions outside the closed window `[lo, hi]`.
    pub fn count_outside(&self, lo: usize, hi: usize) -> usize {
        let inside = self.indices.partition_point(|&i| i <= hi)
            - self.indices.partition_point(|&i| i < lo);
        self.indices.len() - inside
    }
}
