//! Nonempty words over `{a, b}` and their length-lexicographic coding
//! `"a" ↦ 0, "b" ↦ 1, "aa" ↦ 2, "ab" ↦ 3, ...`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("the empty word is not in X+")]
    Empty,
    #[error("symbol {0:?} is not in the alphabet {{a, b}}")]
    BadSymbol(char),
    #[error("word of length {0} has no 64-bit code")]
    TooLong(usize),
}

/// A nonempty word over `{a, b}`, stored as bytes `b'a'`/`b'b'`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<u8>);

/// Longest word whose code fits in a `u64`.
pub const MAX_CODED_LEN: usize = 63;

impl Word {
    pub fn new(s: &str) -> Result<Word, WordError> {
        if s.is_empty() {
            return Err(WordError::Empty);
        }
        if let Some(c) = s.chars().find(|&c| c != 'a' && c != 'b') {
            return Err(WordError::BadSymbol(c));
        }
        Ok(Word(s.as_bytes().to_vec()))
    }

    /// Builds a word from bytes already known to be `a`/`b`.
    pub(crate) fn from_bytes(bytes: Vec<u8>) -> Word {
        debug_assert!(!bytes.is_empty() && bytes.iter().all(|&c| c == b'a' || c == b'b'));
        Word(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("words are ASCII")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Contiguous-substring test.
    pub fn contains(&self, needle: &Word) -> bool {
        self.0.windows(needle.len()).any(|w| w == needle.as_bytes())
    }

    /// All words of length exactly `len`, in lexicographic order.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = Word> {
        assert!((1..=MAX_CODED_LEN).contains(&len));
        let first = (1u64 << len) - 2;
        (first..first + (1u64 << len)).map(word_decode)
    }

    /// All words of length `1..=max_len`, in length-lexicographic order.
    pub fn up_to_length(max_len: usize) -> impl Iterator<Item = Word> {
        (1..=max_len).flat_map(Word::all_of_length)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.as_str())
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::new(s)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Length-lexicographic order, matching the coding.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

/// Length-lex rank of `w`: words of length `ℓ` occupy codes
/// `2^ℓ - 2 .. 2^{ℓ+1} - 2`, in binary order with `a = 0`, `b = 1`.
pub fn word_code(w: &Word) -> Result<u64, WordError> {
    let len = w.len();
    if len > MAX_CODED_LEN {
        return Err(WordError::TooLong(len));
    }
    let offset = w.as_bytes().iter().fold(0u64, |acc, &c| (acc << 1) | u64::from(c == b'b'));
    Ok((1u64 << len) - 2 + offset)
}

pub fn word_decode(n: u64) -> Word {
    // length ℓ is the largest with 2^ℓ - 2 <= n
    let shifted = u128::from(n) + 2;
    let len = (128 - shifted.leading_zeros() - 1) as usize;
    let offset = shifted - (1u128 << len);
    let bytes = (0..len)
        .rev()
        .map(|bit| if offset >> bit & 1 == 1 { b'b' } else { b'a' })
        .collect();
    Word(bytes)
}

/// Length of the word coded by `n`.
pub fn coded_len(n: u64) -> usize {
    (128 - (u128::from(n) + 2).leading_zeros() - 1) as usize
}

/// Least code of a word of length at least `len`.
pub fn first_code_of_length(len: usize) -> Option<u64> {
    (len <= MAX_CODED_LEN).then(|| (1u64 << len) - 2)
}
