//! Alphabets, words, substitution rules and explicit rewriting.

use std::fmt;
use std::ops::{Add, Index};
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Semiring;

/// Default bound on the length of explicitly materialised words.
pub const DEFAULT_LENGTH_CAP: usize = 1_000_000;

/// A letter of an `m`-letter alphabet, identified by its index in `0..m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub usize);

impl Symbol {
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for Symbol {
    fn from(i: usize) -> Self {
        Symbol(i)
    }
}

/// A finite sequence of symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from raw indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Word(indices.into_iter().map(Symbol).collect())
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Concatenation.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Fails if some symbol is not below `m`.
    pub fn check_alphabet(&self, m: usize) -> Result<()> {
        match self.0.iter().find(|s| s.0 >= m) {
            Some(s) => Err(Error::SymbolOutOfRange { symbol: s.0, m }),
            None => Ok(()),
        }
    }
}

/// Digits run together when every symbol is below 10 (`"01100"`), otherwise
/// indices are separated by single spaces.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|s| s.0 < 10) {
            for s in &self.0 {
                write!(f, "{}", s.0)?;
            }
        } else {
            for (k, s) in self.0.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", s.0)?;
            }
        }
        Ok(())
    }
}

/// Accepts either a run of decimal digits (`"0112"`) or indices separated by
/// whitespace or commas (`"0 11 2"`, `"0,11,2"`).
impl FromStr for Word {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s.contains(|c: char| c.is_whitespace() || c == ',') {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map(Symbol)
                        .map_err(|_| format!("invalid symbol {t:?}"))
                })
                .collect::<std::result::Result<Vec<_>, _>>()
                .map(Word)
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| Symbol(d as usize))
                        .ok_or_else(|| format!("invalid symbol {c:?}"))
                })
                .collect::<std::result::Result<Vec<_>, _>>()
                .map(Word)
        }
    }
}

/// A substitution: every symbol `j` of an `m`-letter alphabet is sent to a
/// nonempty word over the same alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RuleSet {
    images: Vec<Word>,
}

impl RuleSet {
    /// `images[j]` is the image of symbol `j`; `m` is `images.len()`.
    pub fn new(images: Vec<Word>) -> Result<Self> {
        let m = images.len();
        if m == 0 {
            return Err(Error::AlphabetSize { min: 1, got: 0 });
        }
        for (j, image) in images.iter().enumerate() {
            if image.is_empty() {
                return Err(Error::EmptyImage(j));
            }
            image.check_alphabet(m)?;
        }
        Ok(RuleSet { images })
    }

    pub fn m(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, s: Symbol) -> &Word {
        &self.images[s.0]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Length of `rewrite(w)` without building it.
    pub fn image_len(&self, w: &Word) -> Result<usize> {
        w.check_alphabet(self.m())?;
        Ok(w.symbols().iter().map(|s| self.images[s.0].len()).sum())
    }

    /// Parses the rules text format: one `<j>: <i1> <i2> ...` line per symbol,
    /// in order, with blank lines and `#` comments skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut images = Vec::new();
        let mut lines = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let syntax = |msg: String| Error::RulesSyntax { line: line_no, msg };
            let (head, body) = line
                .split_once(':')
                .ok_or_else(|| syntax("expected `<symbol>: <image>`".into()))?;
            let j: usize = head
                .trim()
                .parse()
                .map_err(|_| syntax(format!("invalid symbol {:?}", head.trim())))?;
            if j != images.len() {
                return Err(syntax(format!("expected symbol {}, found {j}", images.len())));
            }
            let image = body
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map(Symbol)
                        .map_err(|_| syntax(format!("invalid symbol {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if image.is_empty() {
                return Err(syntax(format!("image of symbol {j} is empty")));
            }
            images.push(Word(image));
            lines.push(line_no);
        }
        if images.is_empty() {
            return Err(Error::RulesSyntax { line: 0, msg: "no rules found".into() });
        }
        let m = images.len();
        for (image, &line) in images.iter().zip(&lines) {
            if let Some(s) = image.symbols().iter().find(|s| s.0 >= m) {
                return Err(Error::RulesSyntax {
                    line,
                    msg: format!("symbol {} out of range for alphabet of size {m}", s.0),
                });
            }
        }
        RuleSet::new(images)
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, image) in self.images.iter().enumerate() {
            write!(f, "{j}:")?;
            for s in image.symbols() {
                write!(f, " {}", s.0)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for RuleSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RuleSet::parse(s)
    }
}

/// The root family: `j -> j (j+1)` for `j < m-1` and `(m-1) -> (m-1)` followed
/// by `n` zeros. Symbol frequency ratios of the iterates tend to `n^(1/m)`.
pub fn make_root_rules(m: usize, n: u64) -> Result<RuleSet> {
    if m < 1 {
        return Err(Error::AlphabetSize { min: 1, got: m });
    }
    if n < 1 {
        return Err(Error::Radicand(n));
    }
    let mut images: Vec<Word> = (0..m - 1).map(|j| Word::from_indices([j, j + 1])).collect();
    let mut last = Vec::with_capacity(n as usize + 1);
    last.push(Symbol(m - 1));
    last.extend(std::iter::repeat_n(Symbol(0), n as usize));
    images.push(Word(last));
    RuleSet::new(images)
}

/// Replaces every symbol of `w` by its image and concatenates the results.
pub fn rewrite(rules: &RuleSet, w: &Word) -> Result<Word> {
    let len = rules.image_len(w)?;
    let mut out = Vec::with_capacity(len);
    for s in w.symbols() {
        out.extend_from_slice(rules.images[s.0].symbols());
    }
    Ok(Word(out))
}

/// Lazily yields `W_0 = seed, W_1, W_2, ...`, stopping before any word longer
/// than the length cap.
#[derive(Debug, Clone)]
pub struct WordIter<'a> {
    rules: &'a RuleSet,
    next: Option<Word>,
    cap: usize,
    truncated: bool,
}

impl<'a> WordIter<'a> {
    pub fn new(rules: &'a RuleSet, seed: Word, length_cap: usize) -> Result<Self> {
        if seed.is_empty() {
            return Err(Error::EmptySeed);
        }
        seed.check_alphabet(rules.m())?;
        if length_cap < seed.len() {
            return Err(Error::LengthCap { cap: length_cap, seed: seed.len() });
        }
        Ok(WordIter { rules, next: Some(seed), cap: length_cap, truncated: false })
    }

    /// True once the iterator has stopped because the next word would exceed the cap.
    pub fn truncated(&self) -> bool {
        self.truncated
    }
}

impl Iterator for WordIter<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.next.take()?;
        // Symbols were validated up front, so image_len cannot fail here.
        let len = self.rules.image_len(&current).expect("validated word");
        if len <= self.cap {
            self.next = Some(rewrite(self.rules, &current).expect("validated word"));
        } else {
            self.truncated = true;
        }
        Some(current)
    }
}

/// Result of [`iterate_words`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSequence {
    /// `W_0 ..= W_k`; `k` is the requested depth unless truncated.
    pub words: Vec<Word>,
    /// Set when iteration stopped early because the next word would exceed the cap.
    pub truncated: bool,
}

/// `[W_0, ..., W_depth]` with `W_i = rewrite(W_{i-1})`, cut short (and marked
/// truncated) before any word longer than `length_cap` would be built.
pub fn iterate_words(
    rules: &RuleSet,
    seed: &Word,
    depth: usize,
    length_cap: usize,
) -> Result<WordSequence> {
    let mut iter = WordIter::new(rules, seed.clone(), length_cap)?;
    let mut words = Vec::with_capacity(depth + 1);
    while words.len() <= depth {
        match iter.next() {
            Some(w) => words.push(w),
            None => break,
        }
    }
    let truncated = words.len() <= depth;
    Ok(WordSequence { words, truncated })
}

/// Fixed-length vector of symbol frequencies (a Parikh vector).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CountVector<T> {
    counts: Vec<T>,
}

impl<T: Semiring> CountVector<T> {
    pub fn new(counts: Vec<T>) -> Self {
        CountVector { counts }
    }

    pub fn zeros(m: usize) -> Self {
        CountVector { counts: vec![T::zero(); m] }
    }

    /// The count vector of the single-symbol word `j`.
    pub fn unit(m: usize, j: usize) -> Self {
        let mut v = Self::zeros(m);
        v.counts[j] = T::one();
        v
    }

    pub fn as_slice(&self) -> &[T] {
        &self.counts
    }

    pub fn into_inner(self) -> Vec<T> {
        self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(Zero::is_zero)
    }

    /// Sum of entries; the word length when the vector came from a word.
    pub fn total(&self) -> T {
        self.counts.iter().cloned().fold(T::zero(), |a, b| a + b)
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> CountVector<U> {
        CountVector { counts: self.counts.iter().map(f).collect() }
    }
}

impl<T> Index<usize> for CountVector<T> {
    type Output = T;
    fn index(&self, j: usize) -> &T {
        &self.counts[j]
    }
}

impl<T: Semiring> Add for &CountVector<T> {
    type Output = CountVector<T>;

    /// Entrywise sum. Panics on length mismatch.
    fn add(self, rhs: &CountVector<T>) -> CountVector<T> {
        assert_eq!(self.len(), rhs.len(), "count vector length mismatch");
        CountVector {
            counts: self
                .counts
                .iter()
                .zip(&rhs.counts)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

/// Counts occurrences of each symbol of an `m`-letter alphabet in `w`.
pub fn count<T: Semiring>(w: &Word, m: usize) -> Result<CountVector<T>> {
    let mut counts = vec![T::zero(); m];
    for s in w.symbols() {
        let slot = counts.get_mut(s.0).ok_or(Error::SymbolOutOfRange { symbol: s.0, m })?;
        *slot = slot.clone() + T::one();
    }
    Ok(CountVector { counts })
}
