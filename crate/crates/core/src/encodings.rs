//! Odd encodings `(b; s, l; t, m)` of non-trivial odd-length subsequences on
//! block words, and the involution `φ` that pairs them up.
//!
//! An encoding names the window that starts `l` symbols into block `s` and
//! stops `m` symbols before the end of block `t` (blocks counted from 0).
//! It is an odd encoding when `s < t` have different parity and `l`, `m` have
//! different parity; these are exactly the windows of odd length whose two
//! boundary symbols differ.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::coaction::Window;
use crate::words::{BinaryWord, BlockVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodingError {
    #[error("encoding length {0} must be odd and at least 3")]
    BadLength(usize),
    #[error("blocks {s} and {t} out of range or not of opposite parity with s < t")]
    BadBlocks { s: usize, t: usize },
    #[error("offset {offset} does not fit in block {block} of length {len}")]
    OffsetTooLarge { block: usize, offset: usize, len: usize },
    #[error("offsets {l} and {m} must have different parity")]
    SameParityOffsets { l: usize, m: usize },
    #[error("encoding {0} is fixed by phi")]
    FixedPoint(OddEncoding),
    #[error("phi({0}) is missing from the input set, which is not closed under permutation")]
    MissingImage(OddEncoding),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OddEncoding {
    pub word: BlockVector,
    pub start_block: usize,
    pub offset_before: usize,
    pub end_block: usize,
    pub offset_after: usize,
}

impl OddEncoding {
    pub fn new(
        word: BlockVector,
        start_block: usize,
        offset_before: usize,
        end_block: usize,
        offset_after: usize,
    ) -> Result<Self, EncodingError> {
        let (s, t) = (start_block, end_block);
        if s >= t || t >= word.block_count() || (t - s) % 2 == 0 {
            return Err(EncodingError::BadBlocks { s, t });
        }
        for (block, offset) in [(s, offset_before), (t, offset_after)] {
            let len = word.block_len(block);
            if offset >= len {
                return Err(EncodingError::OffsetTooLarge { block, offset, len });
            }
        }
        if (offset_before + offset_after).is_multiple_of(2) {
            return Err(EncodingError::SameParityOffsets {
                l: offset_before,
                m: offset_after,
            });
        }
        Ok(OddEncoding {
            word,
            start_block,
            offset_before,
            end_block,
            offset_after,
        })
    }

    /// Symbols in blocks `s..=t` of the encoded word.
    fn span(&self) -> usize {
        (self.start_block..=self.end_block)
            .map(|i| self.word.block_len(i))
            .sum()
    }

    /// Length of the encoded subsequence, boundaries included.
    pub fn len(&self) -> usize {
        self.span() - self.offset_before - self.offset_after
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Position of the subsequence's first symbol in the full word.
    pub fn start_position(&self) -> usize {
        self.word.block_offset(self.start_block) + self.offset_before
    }

    /// The `D_{L-2}` window this encoding describes.
    pub fn window(&self) -> Window {
        Window {
            start: self.start_position(),
            length: self.len() - 2,
        }
    }
}

impl fmt::Display for OddEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}; {}, {}; {}, {})",
            self.word, self.start_block, self.offset_before, self.end_block, self.offset_after
        )
    }
}

/// Every odd encoding of length `len` on `b`, in increasing order.
pub fn enumerate_odd_encodings(b: &BlockVector, len: usize) -> Result<Vec<OddEncoding>, EncodingError> {
    if len < 3 || len.is_multiple_of(2) {
        return Err(EncodingError::BadLength(len));
    }
    let k = b.block_count();
    let mut out = Vec::new();
    for s in 0..k {
        let mut span = b.block_len(s);
        for t in s + 1..k {
            span += b.block_len(t);
            if (t - s) % 2 == 0 || span < len {
                continue;
            }
            let (len_s, len_t) = (b.block_len(s), b.block_len(t));
            for l in 0..len_s {
                // m = span - l - len, forced; parity of l+m follows from len odd.
                let Some(m) = (span - len).checked_sub(l) else { break };
                if m < len_t {
                    out.push(OddEncoding {
                        word: b.clone(),
                        start_block: s,
                        offset_before: l,
                        end_block: t,
                        offset_after: m,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// `(b; s, l; t, m) ↦ (c; s, m; t, l)` with `c` the reversal of `b` on `s..=t`.
pub fn phi(e: &OddEncoding) -> OddEncoding {
    OddEncoding {
        word: e.word.reverse_range(e.start_block, e.end_block),
        start_block: e.start_block,
        offset_before: e.offset_after,
        end_block: e.end_block,
        offset_after: e.offset_before,
    }
}

/// Blocks `s..=t` of the word with the first `l` and last `m` symbols dropped.
pub fn subsequence_of(e: &OddEncoding) -> BinaryWord {
    let mut symbols = Vec::with_capacity(e.len());
    for i in e.start_block..=e.end_block {
        let first = BlockVector::block_start_symbol(i);
        symbols.extend((0..e.word.block_len(i)).map(|j| first ^ (j % 2) as u8));
    }
    symbols.truncate(symbols.len() - e.offset_after);
    symbols.drain(..e.offset_before);
    BinaryWord::from_symbols_unchecked(symbols)
}

/// Quotient sequence in closed form: blocks before `s`, an alternating run of
/// length `l + m + 2` opening with block `s`'s first symbol, then blocks after `t`.
pub fn quotient_of(e: &OddEncoding) -> BinaryWord {
    let b = &e.word;
    let full = b.to_word();
    let head = b.block_offset(e.start_block);
    let tail = b.block_offset(e.end_block + 1);
    let first = BlockVector::block_start_symbol(e.start_block);
    let run = e.offset_before + e.offset_after + 2;

    let mut symbols = Vec::with_capacity(head + run + full.len() - tail);
    symbols.extend_from_slice(&full.symbols()[..head]);
    symbols.extend((0..run).map(|j| first ^ (j % 2) as u8));
    symbols.extend_from_slice(&full.symbols()[tail..]);
    BinaryWord::from_symbols_unchecked(symbols)
}

/// The orbit `{α, φ(α)}`, stored with the smaller encoding first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Orbit {
    pub first: OddEncoding,
    pub second: OddEncoding,
}

/// Splits a `φ`-closed set of encodings into two-element orbits.
pub fn pair_orbits(es: &[OddEncoding]) -> Result<Vec<Orbit>, EncodingError> {
    let all: BTreeSet<&OddEncoding> = es.iter().collect();
    let mut orbits = Vec::with_capacity(all.len() / 2);
    for &e in &all {
        let image = phi(e);
        if image == *e {
            return Err(EncodingError::FixedPoint(e.clone()));
        }
        if !all.contains(&image) {
            return Err(EncodingError::MissingImage(e.clone()));
        }
        if *e < image {
            orbits.push(Orbit {
                first: e.clone(),
                second: image,
            });
        }
    }
    Ok(orbits)
}
