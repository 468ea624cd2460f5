//! Compositions, binary words and block vectors.
//!
//! A composition `(n_1, ..., n_r)` names the multiple zeta value
//! `ζ(n_1, ..., n_r) = Σ_{0<k_1<...<k_r} k_1^{-n_1} ... k_r^{-n_r}`, so the
//! *last* argument carries the largest summation index and must be at least 2
//! (`ζ(1,2)` converges, `ζ(2,1)` does not). Its binary word is
//! `0; 1 0^{n_1-1}, 1 0^{n_2-1}, ...; 1`, stored with both boundary symbols.
//!
//! A block vector `[b_0, ..., b_2n]` names
//! `ζ({2}^{b_0}, 1, {2}^{b_1}, 3, ..., 1, {2}^{b_{2n-1}}, 3, {2}^{b_2n})`,
//! whose binary word splits into blocks `(01)^{b_0+1} (10)^{b_1+1} ... (01)^{b_2n+1}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("a composition needs at least one part")]
    EmptyComposition,
    #[error("composition parts must be positive, found {0}")]
    NonPositivePart(u32),
    #[error("composition ({0}) is not admissible: its word must end in 0 before the final boundary 1, i.e. the last part must be at least 2")]
    NotAdmissible(String),
    #[error("block vector must have an odd number (at least 3) of entries, got {0}")]
    BadBlockCount(usize),
    #[error("invalid symbol {0:?} in binary word")]
    InvalidSymbol(char),
    #[error("a binary word needs both boundary symbols, got length {0}")]
    WordTooShort(usize),
    #[error("cannot parse {0:?} as a comma-separated list of non-negative integers")]
    Parse(String),
}

/// A word over `{0, 1}`, boundary symbols included.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryWord(Vec<u8>);

impl BinaryWord {
    pub fn new(symbols: Vec<u8>) -> Result<Self, WordError> {
        if symbols.len() < 2 {
            return Err(WordError::WordTooShort(symbols.len()));
        }
        if let Some(&bad) = symbols.iter().find(|&&s| s > 1) {
            return Err(WordError::InvalidSymbol(char::from(b'0' + bad.min(9))));
        }
        Ok(BinaryWord(symbols))
    }

    /// Builds a word without validating; callers guarantee `{0,1}` symbols and length ≥ 2.
    pub(crate) fn from_symbols_unchecked(symbols: Vec<u8>) -> Self {
        debug_assert!(symbols.len() >= 2 && symbols.iter().all(|&s| s <= 1));
        BinaryWord(symbols)
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of symbols strictly between the two boundaries.
    pub fn interior_len(&self) -> usize {
        self.0.len() - 2
    }

    pub fn interior(&self) -> &[u8] {
        &self.0[1..self.0.len() - 1]
    }

    pub fn first(&self) -> u8 {
        self.0[0]
    }

    pub fn last(&self) -> u8 {
        self.0[self.0.len() - 1]
    }

    pub fn reversed(&self) -> BinaryWord {
        BinaryWord(self.0.iter().rev().copied().collect())
    }

    pub fn is_palindrome(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            f.write_str(if s == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let symbols = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '|')
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(WordError::InvalidSymbol(other)),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        BinaryWord::new(symbols)
    }
}

impl Serialize for BinaryWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// An MZV argument list `(n_1, ..., n_r)` with every part positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self, WordError> {
        if parts.is_empty() {
            return Err(WordError::EmptyComposition);
        }
        if let Some(&p) = parts.iter().find(|&&p| p == 0) {
            return Err(WordError::NonPositivePart(p));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    /// Admissible iff the word's last interior symbol is 0.
    pub fn is_admissible(&self) -> bool {
        self.0.last().is_some_and(|&p| p >= 2)
    }

    /// The Kontsevich word `0; 1 0^{n_1-1}, ..., 1 0^{n_r-1}; 1`.
    pub fn to_word(&self) -> Result<BinaryWord, WordError> {
        let word = self.raw_word();
        if word.symbols()[word.len() - 2] != 0 {
            return Err(WordError::NotAdmissible(self.to_string()));
        }
        Ok(word)
    }

    fn raw_word(&self) -> BinaryWord {
        let mut symbols = Vec::with_capacity(self.weight() as usize + 2);
        symbols.push(0);
        for &part in &self.0 {
            symbols.push(1);
            symbols.extend(std::iter::repeat_n(0, part as usize - 1));
        }
        symbols.push(1);
        BinaryWord::from_symbols_unchecked(symbols)
    }

    /// `(-1)^depth`, the sign relating `ζ` to the iterated integral of its word.
    pub fn sign(&self) -> i64 {
        if self.depth().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)
    }
}

impl FromStr for Composition {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Composition::new(parse_list(s)?)
    }
}

/// The block sizes `[b_0, ..., b_2n]` of a word `(01)^{b_0+1} (10)^{b_1+1} ... (01)^{b_2n+1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct BlockVector(Vec<u32>);

impl BlockVector {
    pub fn new(entries: Vec<u32>) -> Result<Self, WordError> {
        if entries.len() < 3 || entries.len().is_multiple_of(2) {
            return Err(WordError::BadBlockCount(entries.len()));
        }
        Ok(BlockVector(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn block_count(&self) -> usize {
        self.0.len()
    }

    /// `n` in `[b_0, ..., b_2n]`.
    pub fn n(&self) -> usize {
        self.0.len() / 2
    }

    pub fn entry_sum(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `4n + 2 Σ b_i`, also the word length minus 2.
    pub fn weight(&self) -> u32 {
        4 * self.n() as u32 + 2 * self.entry_sum()
    }

    /// `2n + Σ b_i`; unchanged by permuting the entries.
    pub fn depth(&self) -> usize {
        2 * self.n() + self.entry_sum() as usize
    }

    pub fn block_len(&self, i: usize) -> usize {
        2 * (self.0[i] as usize + 1)
    }

    /// Position of the first symbol of block `i` in the full word.
    pub fn block_offset(&self, i: usize) -> usize {
        (0..i).map(|j| self.block_len(j)).sum()
    }

    /// First symbol of block `i`: 0 for even blocks, 1 for odd ones.
    pub fn block_start_symbol(i: usize) -> u8 {
        (i % 2) as u8
    }

    pub fn word_len(&self) -> usize {
        self.weight() as usize + 2
    }

    pub fn to_word(&self) -> BinaryWord {
        let mut symbols = Vec::with_capacity(self.word_len());
        for (i, &b) in self.0.iter().enumerate() {
            let first = Self::block_start_symbol(i);
            for _ in 0..=b {
                symbols.push(first);
                symbols.push(1 - first);
            }
        }
        BinaryWord::from_symbols_unchecked(symbols)
    }

    /// `({2}^{b_0}, 1, {2}^{b_1}, 3, ..., {2}^{b_2n})`.
    pub fn to_composition(&self) -> Composition {
        let mut parts = Vec::with_capacity(self.depth());
        for (i, &b) in self.0.iter().enumerate() {
            parts.extend(std::iter::repeat_n(2, b as usize));
            if i + 1 < self.0.len() {
                parts.push(if i % 2 == 0 { 1 } else { 3 });
            }
        }
        Composition(parts)
    }

    /// Reverses the entries at positions `start..=end`.
    pub fn reverse_range(&self, start: usize, end: usize) -> BlockVector {
        let mut entries = self.0.clone();
        entries[start..=end].reverse();
        BlockVector(entries)
    }

    /// Cyclic shift `[b_k, b_{k+1}, ..., b_{k-1}]`.
    pub fn rotated(&self, k: usize) -> BlockVector {
        let mut entries = self.0.clone();
        entries.rotate_left(k % self.0.len());
        BlockVector(entries)
    }
}

impl TryFrom<Vec<u32>> for BlockVector {
    type Error = WordError;

    fn try_from(entries: Vec<u32>) -> Result<Self, Self::Error> {
        BlockVector::new(entries)
    }
}

impl From<BlockVector> for Vec<u32> {
    fn from(b: BlockVector) -> Self {
        b.0
    }
}

impl fmt::Display for BlockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        write_list(f, &self.0)?;
        f.write_str("]")
    }
}

impl FromStr for BlockVector {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('[').trim_end_matches(']');
        BlockVector::new(parse_list(trimmed)?)
    }
}

pub fn composition_to_word(c: &Composition) -> Result<BinaryWord, WordError> {
    c.to_word()
}

pub fn blockvector_to_composition(b: &BlockVector) -> Composition {
    b.to_composition()
}

pub fn blockvector_to_word(b: &BlockVector) -> BinaryWord {
    b.to_word()
}

pub fn weight_of(b: &BlockVector) -> u32 {
    b.weight()
}

pub fn sign_of(c: &Composition) -> i64 {
    c.sign()
}

/// Parses `"1,0,0"` (spaces allowed) into integers.
pub fn parse_list(s: &str) -> Result<Vec<u32>, WordError> {
    s.split(',')
        .map(|item| item.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| WordError::Parse(s.to_string()))
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[u32]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(entries: &[u32]) -> BlockVector {
        BlockVector::new(entries.to_vec()).unwrap()
    }

    fn comp(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn kontsevich_words() {
        assert_eq!(comp(&[2]).to_word().unwrap().to_string(), "0101");
        assert_eq!(comp(&[1, 3]).to_word().unwrap().to_string(), "011001");
        // (2,1,2,3,2): 0 | 10 | 1 | 10 | 100 | 10 | 1
        let w = comp(&[2, 1, 2, 3, 2]).to_word().unwrap();
        assert_eq!(w.to_string(), "010110100101");
        assert_eq!(w.len(), 12);
        assert_eq!(w, bv(&[1, 1, 1]).to_word());
    }

    #[test]
    fn non_admissible_rejected() {
        assert!(matches!(comp(&[3, 1]).to_word(), Err(WordError::NotAdmissible(_))));
        assert!(matches!(comp(&[1]).to_word(), Err(WordError::NotAdmissible(_))));
        assert!(!comp(&[2, 1]).is_admissible());
        assert!(comp(&[1, 2]).is_admissible());
        assert_eq!(Composition::new(vec![]), Err(WordError::EmptyComposition));
        assert_eq!(Composition::new(vec![2, 0]), Err(WordError::NonPositivePart(0)));
    }

    #[test]
    fn block_vectors_to_compositions() {
        assert_eq!(bv(&[0, 0, 0]).to_composition().parts(), &[1, 3]);
        assert_eq!(bv(&[1, 1, 1]).to_composition().parts(), &[2, 1, 2, 3, 2]);
        assert_eq!(bv(&[1, 0, 0]).to_composition().parts(), &[2, 1, 3]);
        assert_eq!(bv(&[0, 0, 0, 0, 0]).to_composition().parts(), &[1, 3, 1, 3]);
    }

    #[test]
    fn block_words() {
        assert_eq!(bv(&[0, 0, 0]).to_word().to_string(), "011001");
        assert_eq!(
            bv(&[1, 3, 0, 4, 2]).to_word().to_string(),
            "0101".to_owned() + "10101010" + "01" + "1010101010" + "010101"
        );
    }

    #[test]
    fn weights_and_signs() {
        assert_eq!(weight_of(&bv(&[0, 0, 0])), 4);
        assert_eq!(weight_of(&bv(&[1, 0, 0])), 6);
        assert_eq!(weight_of(&bv(&[1, 1, 1])), 10);
        assert_eq!(sign_of(&comp(&[1, 3])), 1);
        assert_eq!(sign_of(&comp(&[2, 1, 3])), -1);
        assert_eq!(sign_of(&comp(&[2, 1, 2, 3, 2])), -1);
    }

    #[test]
    fn even_block_counts_rejected() {
        assert_eq!(BlockVector::new(vec![0, 0]), Err(WordError::BadBlockCount(2)));
        assert_eq!(BlockVector::new(vec![0]), Err(WordError::BadBlockCount(1)));
        assert!("1,0".parse::<BlockVector>().is_err());
        assert_eq!("[1, 0, 0]".parse::<BlockVector>().unwrap(), bv(&[1, 0, 0]));
        assert!("1,x,0".parse::<BlockVector>().is_err());
    }

    #[test]
    fn block_parity_and_length() {
        let b = bv(&[2, 0, 1, 3, 0]);
        let w = b.to_word();
        assert_eq!(w.len(), b.weight() as usize + 2);
        for i in 0..b.block_count() {
            assert_eq!(b.block_len(i) % 2, 0);
            assert_eq!(w.symbols()[b.block_offset(i)], (i % 2) as u8);
        }
    }

    #[test]
    fn word_parsing() {
        let w: BinaryWord = "01 | 10 | 01".parse().unwrap();
        assert_eq!(w.to_string(), "011001");
        assert!("0".parse::<BinaryWord>().is_err());
        assert!("012".parse::<BinaryWord>().is_err());
        assert_eq!(w.interior_len(), 4);
    }
}
