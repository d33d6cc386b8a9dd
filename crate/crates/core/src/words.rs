//! Alphabet-parameterized words, code sequences, length distributions, and
//! streaming enumeration of all words of a given length.
//!
//! Words are stored as a packed base-n value whenever the whole length-n^len
//! value space fits in a `u64`, so prefix tests and enumeration are plain
//! integer arithmetic. Longer words fall back to an explicit digit sequence.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Size of the alphabet `{0, 1, ..., n-1}`. Always at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlphabetSize(u32);

impl AlphabetSize {
    /// The binary alphabet `{0, 1}`.
    pub const BINARY: AlphabetSize = AlphabetSize(2);

    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::AlphabetTooSmall(n));
        }
        Ok(AlphabetSize(n))
    }

    pub const fn get(self) -> u32 {
        self.0
    }

    /// Largest word length whose value space n^len still fits in a `u64`.
    pub(crate) fn max_packed_len(self) -> u32 {
        let n = self.0 as u128;
        let mut len = 0u32;
        let mut space = 1u128;
        while space * n <= (u64::MAX as u128) + 1 {
            space *= n;
            len += 1;
        }
        len
    }
}

impl fmt::Display for AlphabetSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// n^exp for exponents small enough that the result fits in a `u64`.
/// Callers must guarantee `exp` is within the packed range.
fn pow_u64(n: u32, exp: u32) -> u64 {
    let mut acc = 1u64;
    for _ in 0..exp {
        acc *= n as u64;
    }
    acc
}

/// n^exp clamped to `u128::MAX`, for budget checks and their error messages.
pub(crate) fn saturating_power(n: u32, exp: u64) -> u128 {
    let mut acc = 1u128;
    for _ in 0..exp.min(129) {
        acc = match acc.checked_mul(n as u128) {
            Some(value) => value,
            None => return u128::MAX,
        };
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Base-n value with the first digit most significant.
    Packed(u64),
    /// Fallback for words too long to pack.
    Digits(Arc<[u32]>),
}

/// A finite word over the alphabet `{0, ..., n-1}`. The empty word is a
/// valid `Word`; code sequences reject it at construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    n: AlphabetSize,
    len: u32,
    repr: Repr,
}

impl Word {
    /// The empty word (length 0).
    pub fn empty(n: AlphabetSize) -> Self {
        Word {
            n,
            len: 0,
            repr: Repr::Packed(0),
        }
    }

    /// A single-letter word.
    pub fn single(n: AlphabetSize, digit: u32) -> Result<Self> {
        Word::from_digits(n, &[digit])
    }

    pub fn from_digits(n: AlphabetSize, digits: &[u32]) -> Result<Self> {
        for &d in digits {
            if d >= n.get() {
                return Err(Error::DigitOutOfRange { digit: d, n: n.get() });
            }
        }
        let len = digits.len() as u32;
        if len <= n.max_packed_len() {
            let mut value = 0u64;
            for &d in digits {
                value = value * n.get() as u64 + d as u64;
            }
            Ok(Word {
                n,
                len,
                repr: Repr::Packed(value),
            })
        } else {
            Ok(Word {
                n,
                len,
                repr: Repr::Digits(digits.into()),
            })
        }
    }

    /// Construct directly from a packed value; `value` must lie in `[0, n^len)`
    /// and `len` must be within the packed range.
    pub(crate) fn from_packed(n: AlphabetSize, len: u32, value: u64) -> Self {
        debug_assert!(len <= n.max_packed_len());
        debug_assert!(len == n.max_packed_len() || value < pow_u64(n.get(), len));
        Word {
            n,
            len,
            repr: Repr::Packed(value),
        }
    }

    /// Parse the textual form: one character per digit for n <= 10
    /// (e.g. `"010"`), dot-separated decimal digits for n > 10
    /// (e.g. `"0.11.2"`). The empty string is the empty word.
    pub fn parse(n: AlphabetSize, s: &str) -> Result<Self> {
        if s.is_empty() {
            return Ok(Word::empty(n));
        }
        let mut digits = Vec::new();
        if n.get() <= 10 {
            for ch in s.chars() {
                let d = ch.to_digit(10).ok_or_else(|| Error::WordParse {
                    input: s.to_string(),
                    reason: format!("invalid digit character {ch:?}"),
                })?;
                digits.push(d);
            }
        } else {
            for part in s.split('.') {
                let d: u32 = part.parse().map_err(|_| Error::WordParse {
                    input: s.to_string(),
                    reason: format!("invalid digit component {part:?}"),
                })?;
                digits.push(d);
            }
        }
        Word::from_digits(n, &digits).map_err(|e| match e {
            Error::DigitOutOfRange { digit, n } => Error::WordParse {
                input: s.to_string(),
                reason: format!("digit {digit} out of range for alphabet size {n}"),
            },
            other => other,
        })
    }

    pub fn alphabet(&self) -> AlphabetSize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn digit(&self, i: usize) -> u32 {
        assert!(i < self.len(), "digit index {i} out of range");
        match &self.repr {
            Repr::Packed(value) => {
                let shift = self.len - 1 - i as u32;
                ((value / pow_u64(self.n.get(), shift)) % self.n.get() as u64) as u32
            }
            Repr::Digits(d) => d[i],
        }
    }

    pub fn digits(&self) -> impl Iterator<Item = u32> + '_ {
        let mut rem = match &self.repr {
            Repr::Packed(v) => *v,
            Repr::Digits(_) => 0,
        };
        let mut pow = match &self.repr {
            Repr::Packed(_) if self.len > 0 => pow_u64(self.n.get(), self.len - 1),
            _ => 0,
        };
        let n = self.n.get() as u64;
        let slice = match &self.repr {
            Repr::Packed(_) => None,
            Repr::Digits(d) => Some(d.clone()),
        };
        (0..self.len()).map(move |i| match &slice {
            Some(d) => d[i],
            None => {
                let digit = (rem / pow) as u32;
                rem %= pow;
                if pow > 1 {
                    pow /= n;
                }
                digit
            }
        })
    }

    fn check_same_alphabet(&self, other: &Word) -> Result<()> {
        if self.n != other.n {
            return Err(Error::AlphabetMismatch {
                left: self.n.get(),
                right: other.n.get(),
            });
        }
        Ok(())
    }

    /// True iff `self` is an initial segment of `other`. Every word is a
    /// prefix of itself.
    pub fn is_prefix_of(&self, other: &Word) -> Result<bool> {
        self.check_same_alphabet(other)?;
        Ok(self.is_prefix_of_unchecked(other))
    }

    pub(crate) fn is_prefix_of_unchecked(&self, other: &Word) -> bool {
        if self.len > other.len {
            return false;
        }
        match (&self.repr, &other.repr) {
            (Repr::Packed(p), Repr::Packed(w)) => {
                let tail = other.len - self.len;
                w / pow_u64(self.n.get(), tail) == *p
            }
            _ => self
                .digits()
                .zip(other.digits())
                .all(|(a, b)| a == b),
        }
    }

    /// If `prefix` is a prefix of `self`, the remaining suffix (possibly
    /// empty); otherwise `None`.
    pub fn strip_prefix(&self, prefix: &Word) -> Result<Option<Word>> {
        self.check_same_alphabet(prefix)?;
        Ok(self.strip_prefix_unchecked(prefix))
    }

    pub(crate) fn strip_prefix_unchecked(&self, prefix: &Word) -> Option<Word> {
        if prefix.len > self.len {
            return None;
        }
        if prefix.len == 0 {
            return Some(self.clone());
        }
        match (&self.repr, &prefix.repr) {
            (Repr::Packed(w), Repr::Packed(p)) => {
                let tail = self.len - prefix.len;
                let divisor = pow_u64(self.n.get(), tail);
                if w / divisor == *p {
                    Some(Word::from_packed(self.n, tail, w % divisor))
                } else {
                    None
                }
            }
            _ => {
                if !prefix.is_prefix_of_unchecked(self) {
                    return None;
                }
                let suffix: Vec<u32> = self.digits().skip(prefix.len()).collect();
                Some(Word::from_digits(self.n, &suffix).expect("digits already validated"))
            }
        }
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.check_same_alphabet(other)?;
        let digits: Vec<u32> = self.digits().chain(other.digits()).collect();
        Word::from_digits(self.n, &digits)
    }

    /// The word with its digits in reverse order.
    pub fn reversed(&self) -> Word {
        let mut digits: Vec<u32> = self.digits().collect();
        digits.reverse();
        Word::from_digits(self.n, &digits).expect("digits already validated")
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    /// Shortlex within an alphabet: by length first, then digit order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.len.cmp(&other.len))
            .then_with(|| match (&self.repr, &other.repr) {
                (Repr::Packed(a), Repr::Packed(b)) => a.cmp(b),
                _ => self.digits().cmp(other.digits()),
            })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n.get() <= 10 {
            for d in self.digits() {
                write!(f, "{d}")?;
            }
        } else {
            let mut first = true;
            for d in self.digits() {
                if !first {
                    write!(f, ".")?;
                }
                write!(f, "{d}")?;
                first = false;
            }
        }
        Ok(())
    }
}

/// An ordered sequence of nonempty words over a common alphabet. Order is
/// significant and duplicate entries are representable: these are the
/// sequences whose unique decodability the crate decides, not sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CodeSequence {
    n: AlphabetSize,
    words: Vec<Word>,
}

impl CodeSequence {
    pub fn new(n: AlphabetSize, words: Vec<Word>) -> Result<Self> {
        for w in &words {
            if w.alphabet() != n {
                return Err(Error::AlphabetMismatch {
                    left: n.get(),
                    right: w.alphabet().get(),
                });
            }
            if w.is_empty() {
                return Err(Error::EmptyCodeword);
            }
        }
        Ok(CodeSequence { n, words })
    }

    /// Invariants guaranteed by the caller: same alphabet, no empty word.
    pub(crate) fn from_words_unchecked(n: AlphabetSize, words: Vec<Word>) -> Self {
        debug_assert!(words.iter().all(|w| w.alphabet() == n && !w.is_empty()));
        CodeSequence { n, words }
    }

    pub fn from_strs<S: AsRef<str>>(n: AlphabetSize, words: &[S]) -> Result<Self> {
        let words = words
            .iter()
            .map(|s| Word::parse(n, s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        CodeSequence::new(n, words)
    }

    pub fn alphabet(&self) -> AlphabetSize {
        self.n
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Sum of the codeword lengths.
    pub fn total_len(&self) -> usize {
        self.words.iter().map(|w| w.len()).sum()
    }

    /// True iff no entry is a prefix of a *different* entry. Duplicate
    /// entries therefore disqualify the sequence.
    pub fn is_prefix_code(&self) -> bool {
        for (i, u) in self.words.iter().enumerate() {
            for (j, w) in self.words.iter().enumerate() {
                if i != j && u.is_prefix_of_unchecked(w) {
                    return false;
                }
            }
        }
        true
    }

    /// Each word reversed, order of entries preserved.
    pub fn reversed(&self) -> CodeSequence {
        CodeSequence {
            n: self.n,
            words: self.words.iter().map(Word::reversed).collect(),
        }
    }

    pub fn length_distribution(&self) -> Result<LengthDistribution> {
        LengthDistribution::new(self.words.iter().map(|w| w.len() as u32).collect())
    }
}

impl fmt::Display for CodeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

/// An ordered tuple of positive codeword lengths `(a_1, ..., a_m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LengthDistribution {
    lengths: Vec<u32>,
}

impl LengthDistribution {
    pub fn new(lengths: Vec<u32>) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::EmptyLengths);
        }
        if lengths.contains(&0) {
            return Err(Error::ZeroLength);
        }
        Ok(LengthDistribution { lengths })
    }

    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    /// Number of entries.
    pub fn m(&self) -> usize {
        self.lengths.len()
    }

    /// Sum of the entries.
    pub fn total(&self) -> u64 {
        self.lengths.iter().map(|&a| a as u64).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.lengths.iter().all(|&a| a == self.lengths[0])
    }

    /// How many entries equal `value` (the multiplicity r_value).
    pub fn multiplicity(&self, value: u32) -> usize {
        self.lengths.iter().filter(|&&a| a == value).count()
    }

    /// The same multiset of lengths in ascending order.
    pub fn sorted(&self) -> LengthDistribution {
        let mut lengths = self.lengths.clone();
        lengths.sort_unstable();
        LengthDistribution { lengths }
    }

    /// Distinct values occurring in the distribution, ascending.
    pub fn distinct_values(&self) -> Vec<u32> {
        let mut values = self.lengths.clone();
        values.sort_unstable();
        values.dedup();
        values
    }
}

impl fmt::Display for LengthDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.lengths.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// All `n^len` words of length `len` in lexicographic (= packed value) order.
/// The stream is cloneable and restartable, so parallel sweeps can partition
/// the range.
#[derive(Debug, Clone)]
pub struct WordRange {
    n: AlphabetSize,
    len: u32,
    next: u64,
    end: u64,
}

impl Iterator for WordRange {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.next >= self.end {
            return None;
        }
        let w = Word::from_packed(self.n, self.len, self.next);
        self.next += 1;
        Some(w)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let remaining = (self.end - self.next) as usize;
        (remaining, Some(remaining))
    }
}

impl ExactSizeIterator for WordRange {}

/// Stream the `n^len` words of length `len` in lexicographic order.
/// Fails with a size-limit error naming the offending `n^len` when the
/// count exceeds `budget`.
pub fn enumerate_words(n: AlphabetSize, len: u32, budget: u64) -> Result<WordRange> {
    let count = saturating_power(n.get(), len as u64);
    if count > budget as u128 {
        return Err(Error::SizeLimit {
            required: count,
            budget,
        });
    }
    Ok(WordRange {
        n,
        len,
        next: 0,
        end: count as u64,
    })
}
