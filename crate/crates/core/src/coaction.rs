//! The derivation operators `D_r` on iterated-integral words, and the two
//! relations used to simplify their left factors:
//!
//! * `I(a; ...; a) = 0` whenever the boundaries agree and the interior is non-empty;
//! * `I(a_0; a_1, ..., a_n; a_{n+1}) = (-1)^n I(a_{n+1}; a_n, ..., a_1; a_0)`.
//!
//! Left factors are kept as raw words (no quotient by products or by `ζ(2)`),
//! normalised only up to path reversal.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::words::BinaryWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoactionError {
    #[error("D_{r} needs 1 <= r <= {interior} on a word with {interior} interior symbols")]
    CutOutOfRange { r: usize, interior: usize },
}

/// `coefficient · I^L(left) ⊗ I^m(right)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TensorTerm {
    pub left: BinaryWord,
    pub right: BinaryWord,
    pub coefficient: i64,
}

/// A cut of `length` interior symbols whose left boundary sits at `start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Window {
    pub start: usize,
    pub length: usize,
}

impl Window {
    /// Exclusive end of the window including its right boundary.
    pub fn end(&self) -> usize {
        self.start + self.length + 2
    }

    /// The subsequence `(a_p; a_{p+1}, ..., a_{p+r}; a_{p+r+1})`.
    pub fn subsequence(&self, w: &BinaryWord) -> BinaryWord {
        BinaryWord::from_symbols_unchecked(w.symbols()[self.start..self.end()].to_vec())
    }

    /// The word with every symbol strictly inside the window deleted.
    pub fn quotient(&self, w: &BinaryWord) -> BinaryWord {
        let s = w.symbols();
        let mut out = Vec::with_capacity(s.len() - self.length);
        out.extend_from_slice(&s[..=self.start]);
        out.extend_from_slice(&s[self.end() - 1..]);
        BinaryWord::from_symbols_unchecked(out)
    }

    /// Boundary symbols agree, so the term vanishes.
    pub fn is_trivial(&self, w: &BinaryWord) -> bool {
        let s = w.symbols();
        s[self.start] == s[self.end() - 1]
    }
}

/// All `n - r + 1` candidate windows of `D_r` on `w`, trivial ones included.
pub fn windows(w: &BinaryWord, r: usize) -> Result<impl Iterator<Item = Window>, CoactionError> {
    let interior = w.interior_len();
    if r == 0 || r > interior {
        return Err(CoactionError::CutOutOfRange { r, interior });
    }
    Ok((0..=interior - r).map(move |start| Window { start, length: r }))
}

/// The non-vanishing terms of `D_r` applied to `I^m(w)`, each with coefficient `+1`.
pub fn dr_terms(w: &BinaryWord, r: usize) -> Result<Vec<TensorTerm>, CoactionError> {
    Ok(windows(w, r)?
        .filter(|win| !win.is_trivial(w))
        .map(|win| TensorTerm {
            left: win.subsequence(w),
            right: win.quotient(w),
            coefficient: 1,
        })
        .collect())
}

/// The smaller of `w` and its reversal, with the sign `s` such that `I(w) = s · I(canonical)`.
///
/// Palindromes come back unchanged with sign `+1`; see [`is_reversal_null`] for
/// the ones that are forced to vanish.
pub fn reversal_canonical(w: &BinaryWord) -> (BinaryWord, i64) {
    let rev = w.reversed();
    if rev < *w {
        let sign = if w.interior_len().is_multiple_of(2) { 1 } else { -1 };
        (rev, sign)
    } else {
        (w.clone(), 1)
    }
}

/// A palindrome with odd interior length equals minus itself under reversal.
pub fn is_reversal_null(w: &BinaryWord) -> bool {
    w.interior_len() % 2 == 1 && w.is_palindrome()
}

/// Sum of tensor terms keyed by (canonical left word, right word).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TermMultiset {
    terms: BTreeMap<(BinaryWord, BinaryWord), i64>,
}

impl TermMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: TensorTerm) {
        if term.coefficient == 0 || is_reversal_null(&term.left) {
            return;
        }
        let (left, sign) = reversal_canonical(&term.left);
        self.add_canonical(left, term.right, sign * term.coefficient);
    }

    fn add_canonical(&mut self, left: BinaryWord, right: BinaryWord, coefficient: i64) {
        use std::collections::btree_map::Entry;
        match self.terms.entry((left, right)) {
            Entry::Vacant(slot) => {
                slot.insert(coefficient);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coefficient;
                if *slot.get() == 0 {
                    slot.remove();
                }
            }
        }
    }

    pub fn merge(mut self, other: TermMultiset) -> TermMultiset {
        let (mut big, small) = if self.terms.len() >= other.terms.len() {
            (std::mem::take(&mut self), other)
        } else {
            (other, self)
        };
        for ((left, right), c) in small.terms {
            big.add_canonical(left, right, c);
        }
        big
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, left: &BinaryWord, right: &BinaryWord) -> i64 {
        let (canonical, sign) = reversal_canonical(left);
        self.terms
            .get(&(canonical, right.clone()))
            .map_or(0, |c| sign * c)
    }

    /// Surviving terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = TensorTerm> + '_ {
        self.terms.iter().map(|((left, right), &coefficient)| TensorTerm {
            left: left.clone(),
            right: right.clone(),
            coefficient,
        })
    }
}

impl FromIterator<TensorTerm> for TermMultiset {
    fn from_iter<I: IntoIterator<Item = TensorTerm>>(iter: I) -> Self {
        let mut out = TermMultiset::new();
        for term in iter {
            out.add(term);
        }
        out
    }
}

pub fn accumulate(terms: impl IntoIterator<Item = TensorTerm>) -> TermMultiset {
    terms.into_iter().collect()
}
