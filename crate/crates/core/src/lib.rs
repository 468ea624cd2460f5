//! Instance-by-instance verification that symmetric insertion sums of multiple
//! zeta values,
//!
//! ```text
//! Σ_{σ ∈ S_{2n+1}} ζ({2}^{a_σ(0)}, 1, {2}^{a_σ(1)}, 3, ..., {2}^{a_σ(2n)}),
//! ```
//!
//! are rational multiples of `π^wt`.
//!
//! * [`words`]: compositions, binary words and block vectors.
//! * [`coaction`]: the derivation operators `D_r` and the reversal relation.
//! * [`encodings`]: odd encodings of subsequences and the involution `φ`.
//! * [`verifier`]: cancellation certificates for `D_r` on symmetric sums.
//! * [`numerics`]: high-precision evaluation and rational reconstruction.

pub mod coaction;
pub mod encodings;
pub mod numerics;
pub mod verifier;
pub mod words;

pub use coaction::{accumulate, dr_terms, reversal_canonical, TensorTerm, TermMultiset, Window};
pub use encodings::{enumerate_odd_encodings, pair_orbits, phi, quotient_of, subsequence_of, OddEncoding, Orbit};
pub use verifier::{
    build_instance, verify_cancellation, verify_instance, CancellationCertificate, CheckRecord, InsertionInstance,
    Verdict, VerifyError,
};
pub use words::{BinaryWord, BlockVector, Composition, WordError};
