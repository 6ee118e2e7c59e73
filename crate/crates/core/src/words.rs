//! Cyclic words over `{L, R}`.
//!
//! A closed orbit on the Lorenz template has no preferred starting point, so
//! it is named by a cyclic word. Words are stored in their least rotation
//! (with `L < R`) and must be aperiodic; a periodic word would describe a
//! multiply-traversed orbit rather than a knot.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("empty word")]
    EmptyWord,
    #[error("invalid letter {0:?} (expected L or R)")]
    InvalidLetter(char),
    #[error("word {word} is periodic (a power of {root})")]
    PeriodicWord { word: String, root: String },
    #[error("components {first} and {second} are the same cyclic word {word}")]
    DuplicateComponent {
        first: usize,
        second: usize,
        word: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    L,
    R,
}

impl Letter {
    pub fn swap(self) -> Self {
        match self {
            Letter::L => Letter::R,
            Letter::R => Letter::L,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::L => 'L',
            Letter::R => 'R',
        }
    }
}

impl TryFrom<char> for Letter {
    type Error = WordError;

    fn try_from(c: char) -> Result<Self, Self::Error> {
        match c {
            'L' => Ok(Letter::L),
            'R' => Ok(Letter::R),
            other => Err(WordError::InvalidLetter(other)),
        }
    }
}

pub fn parse_letters(s: &str) -> Result<Vec<Letter>, WordError> {
    s.trim().chars().map(Letter::try_from).collect()
}

pub fn letters_to_string(letters: &[Letter]) -> String {
    letters.iter().map(|l| l.as_char()).collect()
}

/// Index of the lexicographically least rotation (Booth's algorithm).
fn least_rotation(s: &[Letter]) -> usize {
    let n = s.len() as isize;
    let at = |i: isize| s[(i % n) as usize];
    let mut fail = vec![-1isize; 2 * s.len()];
    let mut k: isize = 0;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = fail[(j - k - 1) as usize];
        while i != -1 && sj != at(k + i + 1) {
            if sj < at(k + i + 1) {
                k = j - i - 1;
            }
            i = fail[i as usize];
        }
        if sj != at(k + i + 1) {
            // here i == -1
            if sj < at(k) {
                k = j;
            }
            fail[(j - k) as usize] = -1;
        } else {
            fail[(j - k) as usize] = i + 1;
        }
    }
    k as usize
}

/// Length of the shortest prefix `p` with `s == p^(n/|p|)`.
fn primitive_period(s: &[Letter]) -> usize {
    let n = s.len();
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .find(|&d| (d..n).all(|i| s[i] == s[i - d]))
        .unwrap_or(n)
}

/// Compares the infinite periodic extensions `a^∞` and `b^∞`.
///
/// Two periodic sequences agreeing on their first `|a| + |b|` letters are
/// equal, so the scan is finite.
pub fn cmp_periodic(a: &[Letter], b: &[Letter]) -> Ordering {
    let len = a.len() + b.len();
    for i in 0..len {
        match a[i % a.len()].cmp(&b[i % b.len()]) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// An aperiodic cyclic word in canonical (least) rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord {
    letters: Vec<Letter>,
}

impl CyclicWord {
    /// Canonicalizes a raw letter sequence, rejecting empty and periodic input.
    pub fn canonicalize(raw: &[Letter]) -> Result<Self, WordError> {
        if raw.is_empty() {
            return Err(WordError::EmptyWord);
        }
        let start = least_rotation(raw);
        let letters: Vec<Letter> = raw[start..].iter().chain(&raw[..start]).copied().collect();
        let period = primitive_period(&letters);
        if period < letters.len() {
            return Err(WordError::PeriodicWord {
                word: letters_to_string(raw),
                root: letters_to_string(&letters[..period]),
            });
        }
        Ok(Self { letters })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.letters.iter().filter(|&&l| l == letter).count()
    }

    /// True when both letters occur; single-letter words are the ear circles.
    pub fn is_mixed(&self) -> bool {
        self.count(Letter::L) > 0 && self.count(Letter::R) > 0
    }

    /// The rotation starting at letter `k` (not canonical in general).
    pub fn rotation(&self, k: usize) -> Vec<Letter> {
        let k = k % self.len();
        self.letters[k..]
            .iter()
            .chain(&self.letters[..k])
            .copied()
            .collect()
    }

    /// Swaps `L` and `R` and re-canonicalizes: the order-2 symmetry of the template.
    pub fn involute(&self) -> Self {
        let swapped: Vec<Letter> = self.letters.iter().map(|l| l.swap()).collect();
        Self::canonicalize(&swapped).expect("letter swap preserves aperiodicity")
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for CyclicWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::canonicalize(&parse_letters(s)?)
    }
}

impl Serialize for CyclicWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CyclicWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The words of a Lorenz link, one per component, in input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkWords {
    words: Vec<CyclicWord>,
}

impl LinkWords {
    /// Every word aperiodic and no two words cyclically equal.
    pub fn new(words: Vec<CyclicWord>) -> Result<Self, WordError> {
        if words.is_empty() {
            return Err(WordError::EmptyWord);
        }
        for (j, w) in words.iter().enumerate() {
            if let Some(i) = words[..j].iter().position(|v| v == w) {
                return Err(WordError::DuplicateComponent {
                    first: i,
                    second: j,
                    word: w.to_string(),
                });
            }
        }
        Ok(Self { words })
    }

    pub fn parse<S: AsRef<str>>(raw: &[S]) -> Result<Self, WordError> {
        let words = raw
            .iter()
            .map(|s| s.as_ref().parse())
            .collect::<Result<Vec<CyclicWord>, _>>()?;
        Self::new(words)
    }

    pub fn knot(word: CyclicWord) -> Self {
        Self { words: vec![word] }
    }

    pub fn words(&self) -> &[CyclicWord] {
        &self.words
    }

    pub fn components(&self) -> usize {
        self.words.len()
    }

    pub fn total_len(&self) -> usize {
        self.words.iter().map(CyclicWord::len).sum()
    }
}

/// All canonical aperiodic cyclic words of length `1..=max_len`, ordered by
/// (length, lexicographic).
///
/// Uses the Fredricksen–Kessler–Maiorana successor rule, which visits Lyndon
/// words (= canonical aperiodic necklaces) in lexicographic order.
pub fn enumerate(max_len: usize) -> Vec<CyclicWord> {
    let mut out: Vec<CyclicWord> = Vec::new();
    if max_len == 0 {
        return out;
    }
    let mut w: Vec<Letter> = vec![Letter::L];
    loop {
        out.push(CyclicWord { letters: w.clone() });
        let m = w.len();
        while w.len() < max_len {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&Letter::R) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last = Letter::R,
            None => break,
        }
    }
    out.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.letters.cmp(&b.letters))
    });
    out
}

/// Number of aperiodic binary necklaces of length `n`: `(1/n) Σ_{d|n} μ(d) 2^(n/d)`.
pub fn necklace_count(n: usize) -> u64 {
    if n == 0 {
        return 0;
    }
    let total: i64 = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| mobius(d) * (1i64 << (n / d)))
        .sum();
    (total / n as i64) as u64
}

fn mobius(mut n: usize) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}
