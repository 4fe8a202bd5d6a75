//! Permutations, inversions and inversion tables.
//!
//! Positions are 1-based whenever they are reported. Inversions are stored
//! by value, as pairs `(first, second)` with `first > second` and `first`
//! to the left of `second`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};

/// A permutation of `1..=n`, stored in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} outside 1..={n}"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation(format!("repeated value {v}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { values })
    }

    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n).collect(),
        }
    }

    /// Order-isomorphic standardization of distinct values.
    pub fn standardize(raw: &[usize]) -> Self {
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by_key(|&i| raw[i]);
        let mut values = vec![0; raw.len()];
        for (rank, &i) in order.iter().enumerate() {
            values[i] = rank + 1;
        }
        Permutation { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Value at a 1-based position.
    pub fn at(&self, position: usize) -> usize {
        self.values[position - 1]
    }

    /// 1-based position of `value`.
    pub fn position_of(&self, value: usize) -> Option<usize> {
        self.values.iter().position(|&v| v == value).map(|i| i + 1)
    }

    /// All permutations of size `n` in lexicographic order.
    pub fn all(n: usize) -> Permutations {
        Permutations {
            next: Some(Permutation::identity(n)),
        }
    }

    /// Compact digit-string form; only meaningful for `n <= 9`.
    pub fn to_digits(&self) -> Option<String> {
        if self.len() > 9 {
            return None;
        }
        Some(self.values.iter().map(|v| v.to_string()).collect())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Parse a list of non-negative integers written either comma-separated or,
/// when `allow_digits` is set and no comma occurs, as a digit string.
pub(crate) fn parse_number_list(text: &str, base: usize, allow_digits: bool) -> std::result::Result<Vec<usize>, ParseError> {
    let trimmed = text.trim();
    let lead = text.len() - text.trim_start().len();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    if !trimmed.contains(',') && allow_digits && trimmed.len() > 1 {
        return trimmed
            .char_indices()
            .map(|(i, c)| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| ParseError::new(base + lead + i, format!("unexpected character `{c}`")))
            })
            .collect();
    }
    let mut out = Vec::new();
    let mut offset = base + lead;
    for piece in trimmed.split(',') {
        let token = piece.trim();
        let inner = offset + (piece.len() - piece.trim_start().len());
        if token.is_empty() {
            return Err(ParseError::new(inner, "expected a number"));
        }
        let value = token
            .parse::<usize>()
            .map_err(|_| ParseError::new(inner, format!("`{token}` is not a non-negative integer")))?;
        out.push(value);
        offset += piece.len() + 1;
    }
    Ok(out)
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `"2,4,6,5,3,1"` or, for `n <= 9`, `"246531"`.
    fn from_str(s: &str) -> Result<Self> {
        let values = parse_number_list(s, 0, true)?;
        Permutation::new(values)
    }
}

/// Lexicographic stream over a symmetric group.
#[derive(Debug, Clone)]
pub struct Permutations {
    next: Option<Permutation>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut v = current.values.clone();
        let n = v.len();
        if n > 1 {
            if let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) {
                let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).unwrap();
                v.swap(i, j);
                v[i + 1..].reverse();
                self.next = Some(Permutation { values: v });
            }
        }
        Some(current)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InversionPair {
    /// Value of the left (larger) entry.
    pub first: usize,
    /// Value of the right (smaller) entry.
    pub second: usize,
}

impl InversionPair {
    pub fn new(first: usize, second: usize) -> Self {
        InversionPair { first, second }
    }
}

impl fmt::Display for InversionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.first, self.second)
    }
}

/// Parses a comma-separated list of positions such as `"2,4,5"`.
pub fn parse_positions(text: &str) -> Result<Vec<usize>> {
    Ok(parse_number_list(text, 0, false)?)
}

/// Parses pairs such as `"(4,1)(6,1)(6,5)"`.
pub fn parse_inversion_pairs(text: &str) -> Result<Vec<InversionPair>> {
    Ok(crate::matchings::parse_arcs(text)?
        .into_iter()
        .map(|a| InversionPair::new(a.opener, a.closer))
        .collect())
}

/// All inversions of `p`, ordered by position of the first entry and then
/// by value of the second entry.
pub fn inversions(p: &Permutation) -> Vec<InversionPair> {
    let v = p.values();
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut seconds: Vec<usize> = v[i + 1..].iter().copied().filter(|&w| w < v[i]).collect();
        seconds.sort_unstable();
        out.extend(seconds.into_iter().map(|w| InversionPair::new(v[i], w)));
    }
    out
}

pub fn inversion_count(p: &Permutation) -> usize {
    let v = p.values();
    (0..v.len())
        .map(|i| v[i + 1..].iter().filter(|&&w| w < v[i]).count())
        .sum()
}

/// Entries `b_1..b_n` with `0 <= b_i <= i - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InversionTable {
    entries: Vec<usize>,
}

impl InversionTable {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        for (i, &b) in entries.iter().enumerate() {
            if b > i {
                return Err(Error::InvalidInversionTable(format!(
                    "entry b_{} = {b} exceeds {i}",
                    i + 1
                )));
            }
        }
        Ok(InversionTable { entries })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.entries.iter().sum()
    }
}

impl fmt::Display for InversionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for InversionTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InversionTable::new(parse_number_list(s, 0, false)?)
    }
}

/// All `n!` inversion tables of length `n`, lexicographically.
pub fn enumerate_inversion_tables(n: usize) -> InversionTables {
    InversionTables {
        next: Some(vec![0; n]),
        frozen: 0,
    }
}

/// Restartable lexicographic stream of inversion tables.
#[derive(Debug, Clone)]
pub struct InversionTables {
    next: Option<Vec<usize>>,
    frozen: usize,
}

impl InversionTables {
    /// Tables of length `n` whose leading entries equal `prefix`, so that
    /// exhaustive scans can be split between workers.
    pub fn with_prefix(n: usize, prefix: &[usize]) -> Result<Self> {
        if prefix.len() > n {
            return Err(Error::InvalidInversionTable(format!(
                "prefix longer than {n}"
            )));
        }
        InversionTable::new(prefix.to_vec())?;
        let mut start = prefix.to_vec();
        start.resize(n, 0);
        Ok(InversionTables {
            next: Some(start),
            frozen: prefix.len(),
        })
    }
}

impl Iterator for InversionTables {
    type Item = InversionTable;

    fn next(&mut self) -> Option<InversionTable> {
        let current = self.next.take()?;
        let mut successor = current.clone();
        let mut i = successor.len();
        while i > self.frozen {
            i -= 1;
            if successor[i] < i {
                successor[i] += 1;
                self.next = Some(successor);
                break;
            }
            successor[i] = 0;
        }
        Some(InversionTable { entries: current })
    }
}
