//! High-precision evaluation of multiple zeta values and recognition of the
//! rational multiples of `π^wt` predicted for insertion sums.

pub mod checks;
pub mod constants;
pub mod mzv;
pub mod real;
pub mod reconstruct;

use thiserror::Error;

use crate::verifier::VerifyError;
use crate::words::WordError;

pub use checks::{
    check_bbbl_family, check_bowman_bradley, check_cyclic_insertion, check_symmetric_sum, Family, NumericConfig,
    NumericReport, ReportStatus, TargetKind,
};
pub use constants::{bernoulli, bernoulli_numbers, euler_zeta_even, pi, zeta_even_pi_coefficient};
pub use mzv::{eval_mzv_fast, eval_mzv_fast_capped, eval_mzv_series, series_tail_bound, DEFAULT_MAX_DIGITS};
pub use real::{bits_for_digits, HighPrecisionReal};
pub use reconstruct::{default_max_denominator, reconstruct_rational, DEFAULT_GUARD_DIGITS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericsError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("the nested-sum oracle needs at least 10 terms, got {0}")]
    TooFewTerms(u64),
    #[error("{requested} digits requested, the configured maximum is {cap}")]
    PrecisionCap { requested: u32, cap: u32 },
    #[error("weight {weight} exceeds the configured cap {cap}")]
    WeightCap { weight: u32, cap: u32 },
    #[error("rational reconstruction needs at least 20 trusted digits, got {0}")]
    TooFewTrustedDigits(u32),
    #[error("cancellation certificate for {0} did not verify")]
    Unverified(String),
    #[error("invalid parameters: {0}")]
    BadParameters(String),
}
