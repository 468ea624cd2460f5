//! Cancellation certificates for symmetric insertion sums.
//!
//! For `a = [a_0, ..., a_2n]` the sum of `Z(a_σ)` over all `σ ∈ S_{2n+1}` equals
//! `± λ Σ_{w ∈ C} I(w)`, where `C` is the set of distinct permutations of `a`
//! and `λ` the size of a stabiliser. Each `D_r`, `r` odd with `3 ≤ r < wt`, is
//! shown to vanish on `Σ_{w ∈ C} I(w)` twice over:
//!
//! * orbit proof: odd encodings of length `r + 2` on `C` split into `φ`-orbits
//!   `{α, φ(α)}` whose subsequences are mutual reversals and whose quotients agree;
//! * direct sum: every term of `D_r` is expanded from the raw words and summed
//!   modulo path reversal, and the residual must be empty.
//!
//! Once every `D_r` vanishes the sum is a rational multiple of `ζ^m(wt)` in weight
//! `wt`, hence its period is a rational multiple of `π^wt`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::coaction::{self, TensorTerm, TermMultiset};
use crate::encodings::{self, OddEncoding};
use crate::words::{BlockVector, WordError};

pub const CERTIFICATE_VERSION: &str = "cert-v1";

/// Largest supported `2n + 1`; keeps `(2n+1)!` inside a `u64`.
pub const MAX_BLOCKS: usize = 19;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("at most {MAX_BLOCKS} blocks are supported, got {0}")]
    TooManyBlocks(usize),
    #[error("D_{r} must have odd r with 3 <= r < {weight}")]
    BadOperator { r: usize, weight: u32 },
    #[error("words in the set have different depths")]
    MixedDepth,
    #[error("D_{} does not cancel: {} residual term(s), {} problem(s)", .0.r, .0.residual_terms.len(), .0.problems.len())]
    Cancellation(Box<CheckFailure>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsertionInstance {
    a: BlockVector,
    words: Vec<BlockVector>,
    lambda: u64,
    sign: i64,
}

impl InsertionInstance {
    pub fn a(&self) -> &BlockVector {
        &self.a
    }

    /// All distinct permutations of `a`, in lexicographic order.
    pub fn words(&self) -> &[BlockVector] {
        &self.words
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn weight(&self) -> u32 {
        self.a.weight()
    }

    /// Number of `σ ∈ S_{2n+1}` mapping `a` to any fixed word of `C`.
    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    /// `(-1)^depth`, shared by every word of `C`.
    pub fn sign(&self) -> i64 {
        self.sign
    }

    /// Odd `r` with `3 ≤ r < wt`.
    pub fn operators(&self) -> Vec<usize> {
        (3..self.weight() as usize).step_by(2).collect()
    }
}

pub fn build_instance(a: &[u32]) -> Result<InsertionInstance, VerifyError> {
    let a = BlockVector::new(a.to_vec())?;
    if a.block_count() > MAX_BLOCKS {
        return Err(VerifyError::TooManyBlocks(a.block_count()));
    }
    let words = distinct_permutations(&a);
    let mut multiplicities = BTreeMap::new();
    for &x in a.entries() {
        *multiplicities.entry(x).or_insert(0u64) += 1;
    }
    let lambda = multiplicities.values().map(|&k| factorial(k)).product();
    debug_assert_eq!(lambda * words.len() as u64, factorial(a.block_count() as u64));

    let sign = a.to_composition().sign();
    if words.iter().any(|w| w.to_composition().sign() != sign) {
        return Err(VerifyError::MixedDepth);
    }
    Ok(InsertionInstance { a, words, lambda, sign })
}

/// Distinct permutations in lexicographic order, generated by successive
/// next-permutation steps from the sorted arrangement.
pub fn distinct_permutations(a: &BlockVector) -> Vec<BlockVector> {
    let mut current = a.entries().to_vec();
    current.sort_unstable();
    let mut out = Vec::new();
    loop {
        out.push(BlockVector::new(current.clone()).expect("permutation keeps the block count"));
        if !next_permutation(&mut current) {
            return out;
        }
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn factorial(k: u64) -> u64 {
    (1..=k).product()
}

/// Per-operator line of a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub r: usize,
    /// Candidate windows of `D_r` over all words, trivial ones included.
    pub windows: usize,
    /// Odd encodings of length `r + 2`, i.e. non-trivial windows.
    pub encodings: usize,
    pub orbits: usize,
    /// Surviving terms of the direct expansion.
    pub residual: usize,
    /// SHA-256 of the sorted encoding list, one `Display` line each.
    pub encodings_sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckFailure {
    pub r: usize,
    pub residual_terms: Vec<TensorTerm>,
    pub problems: Vec<String>,
}

/// Runs both cancellation checks for `D_r` on an arbitrary set of words.
///
/// Nothing here assumes the set is closed under permutation; on a set that is
/// not, the orbit proof and usually the direct sum report the damage.
pub fn check_word_set(words: &[BlockVector], r: usize) -> (CheckRecord, Option<CheckFailure>) {
    let len = r + 2;
    let mut problems = Vec::new();

    let mut all_encodings: Vec<OddEncoding> = words
        .par_iter()
        .flat_map_iter(|w| encodings::enumerate_odd_encodings(w, len).expect("odd length >= 5"))
        .collect();
    all_encodings.sort();

    let orbits = match encodings::pair_orbits(&all_encodings) {
        Ok(orbits) => {
            for orbit in &orbits {
                let x = encodings::subsequence_of(&orbit.first);
                let y = encodings::subsequence_of(&orbit.second);
                if y != x.reversed() || x.interior_len().is_multiple_of(2) {
                    problems.push(format!("orbit {} / {}: subsequences {x} and {y} are not odd reversals", orbit.first, orbit.second));
                }
                if encodings::quotient_of(&orbit.first) != encodings::quotient_of(&orbit.second) {
                    problems.push(format!("orbit {} / {}: quotients differ", orbit.first, orbit.second));
                }
            }
            orbits.len()
        }
        Err(e) => {
            problems.push(format!("orbit pairing failed: {e}"));
            0
        }
    };

    let mut windows = 0;
    let mut scanned = BTreeSet::new();
    let residual = words
        .iter()
        .enumerate()
        .map(|(idx, w)| {
            let word = w.to_word();
            let cuts = coaction::windows(&word, r).expect("3 <= r < weight");
            for win in cuts {
                windows += 1;
                if !win.is_trivial(&word) {
                    scanned.insert((idx, win.start));
                }
            }
            (idx, word)
        })
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(_, word)| coaction::accumulate(coaction::dr_terms(&word, r).expect("3 <= r < weight")))
        .reduce(TermMultiset::new, TermMultiset::merge);

    let index: BTreeMap<&BlockVector, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let encoded: BTreeSet<(usize, usize)> = all_encodings
        .iter()
        .map(|e| (index[&e.word], e.start_position()))
        .collect();
    if encoded != scanned {
        problems.push(format!(
            "window sets differ: {} only from scanning, {} only from encodings",
            scanned.difference(&encoded).count(),
            encoded.difference(&scanned).count()
        ));
    }

    let mut hasher = Sha256::new();
    for e in &all_encodings {
        hasher.update(e.to_string().as_bytes());
        hasher.update(b"\n");
    }

    let record = CheckRecord {
        r,
        windows,
        encodings: all_encodings.len(),
        orbits,
        residual: residual.len(),
        encodings_sha256: hex::encode(hasher.finalize()),
    };
    let failure = (!residual.is_empty() || !problems.is_empty()).then(|| CheckFailure {
        r,
        residual_terms: residual.terms().collect(),
        problems,
    });
    (record, failure)
}

pub fn verify_cancellation(inst: &InsertionInstance, r: usize) -> Result<CheckRecord, VerifyError> {
    if r < 3 || r.is_multiple_of(2) || r >= inst.weight() as usize {
        return Err(VerifyError::BadOperator { r, weight: inst.weight() });
    }
    match check_word_set(&inst.words, r) {
        (record, None) => Ok(record),
        (_, Some(failure)) => Err(VerifyError::Cancellation(Box::new(failure))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Verified,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CancellationCertificate {
    pub version: &'static str,
    pub a: BlockVector,
    pub n: usize,
    pub weight: u32,
    pub lambda: u64,
    pub word_count: usize,
    pub sign: i64,
    pub checks: Vec<CheckRecord>,
    pub verdict: Verdict,
    pub conclusion: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<CheckFailure>,
}

impl CancellationCertificate {
    pub fn is_verified(&self) -> bool {
        self.verdict == Verdict::Verified
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialises")
    }
}

pub fn verify_instance(inst: &InsertionInstance) -> CancellationCertificate {
    certify_words(&inst.a, &inst.words, inst.lambda, inst.sign)
}

/// Certificate for an explicit word set; `verify_instance` passes the full
/// permutation class, tests pass mutilated ones.
pub fn certify_words(a: &BlockVector, words: &[BlockVector], lambda: u64, sign: i64) -> CancellationCertificate {
    let operators: Vec<usize> = (3..a.weight() as usize).step_by(2).collect();
    let outcomes: Vec<_> = operators.par_iter().map(|&r| check_word_set(words, r)).collect();

    let mut checks = Vec::with_capacity(outcomes.len());
    let mut failures = Vec::new();
    for (record, failure) in outcomes {
        checks.push(record);
        failures.extend(failure);
    }
    let verdict = if failures.is_empty() { Verdict::Verified } else { Verdict::Failed };
    let conclusion = match verdict {
        Verdict::Verified => format!(
            "D_r vanishes for every odd 3 <= r < {wt}, so the symmetric sum is q * zeta^m({wt}) for some rational q, and its period lies in pi^{wt} * Q",
            wt = a.weight()
        ),
        Verdict::Failed => "cancellation failed; no conclusion".to_string(),
    };
    CancellationCertificate {
        version: CERTIFICATE_VERSION,
        a: a.clone(),
        n: a.n(),
        weight: a.weight(),
        lambda,
        word_count: words.len(),
        sign,
        checks,
        verdict,
        conclusion,
        failures,
    }
}
