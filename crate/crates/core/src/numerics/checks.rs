//! Numeric checks of insertion sums against rational multiples of `π^wt`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use super::constants::pi;
use super::mzv::{eval_mzv_fast_capped, DEFAULT_MAX_DIGITS};
use super::real::HighPrecisionReal;
use super::reconstruct::{default_max_denominator, reconstruct_rational, MIN_TRUSTED_DIGITS};
use super::NumericsError;
use crate::verifier::{build_instance, verify_instance};
use crate::words::BlockVector;

pub const REPORT_VERSION: &str = "report-v1";

/// Digits evaluated beyond the requested precision.
const EXTRA_DIGITS: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericConfig {
    pub digits: u32,
    pub max_denominator: BigInt,
    pub weight_cap: u32,
    pub max_digits: u32,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            digits: 60,
            max_denominator: default_max_denominator(),
            weight_cap: 14,
            max_digits: DEFAULT_MAX_DIGITS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Bbbl,
    BowmanBradley,
    Cyclic,
    Symmetric,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Bbbl => "bbbl",
            Family::BowmanBradley => "bowman-bradley",
            Family::Cyclic => "cyclic",
            Family::Symmetric => "symmetric",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportStatus {
    /// A rational was recovered and rationality is established (theorem or certificate).
    VerifiedRational,
    /// A rational was recovered and equals a conjectured value.
    ConjecturalMatch,
    NoReconstruction,
    /// A rational was recovered but differs from the expected value.
    TargetMismatch,
}

impl fmt::Display for ReportStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportStatus::VerifiedRational => "verified-rational",
            ReportStatus::ConjecturalMatch => "conjectural-match",
            ReportStatus::NoReconstruction => "no-reconstruction",
            ReportStatus::TargetMismatch => "target-mismatch",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetKind {
    Theorem,
    Conjecture,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericReport {
    pub version: &'static str,
    pub family: Family,
    pub params: BTreeMap<String, Value>,
    pub weight: u32,
    /// Trusted digits of `ratio` used for reconstruction.
    pub digits: u32,
    /// The sum itself.
    pub value: String,
    /// `value / π^pi_power`.
    pub ratio: String,
    pub pi_power: u32,
    #[serde(serialize_with = "serialize_rational")]
    pub reconstructed: Option<BigRational>,
    #[serde(serialize_with = "serialize_rational")]
    pub target: Option<BigRational>,
    pub target_kind: Option<TargetKind>,
    pub target_match: Option<bool>,
    pub status: ReportStatus,
}

impl NumericReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn params_label(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Serialize)]
struct RationalParts {
    num: String,
    den: String,
}

fn serialize_rational<S: Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        None => s.serialize_none(),
        Some(q) => RationalParts { num: q.numer().to_string(), den: q.denom().to_string() }.serialize(s),
    }
}

fn factorial(k: u32) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

fn binomial(n: u32, k: u32) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `1 / (wt + 1)!`
fn inverse_factorial(wt: u32) -> BigRational {
    BigRational::new(BigInt::one(), factorial(wt + 1))
}

struct Evaluation {
    weight: u32,
    sum: HighPrecisionReal,
    ratio: HighPrecisionReal,
}

/// `Σ multiplicity · Z(w)` and its quotient by `π^wt`.
fn evaluate(terms: &[(BlockVector, u64)], cfg: &NumericConfig) -> Result<Evaluation, NumericsError> {
    let weight = terms[0].0.weight();
    if weight > cfg.weight_cap {
        return Err(NumericsError::WeightCap { weight, cap: cfg.weight_cap });
    }
    if cfg.digits < MIN_TRUSTED_DIGITS {
        return Err(NumericsError::TooFewTrustedDigits(cfg.digits));
    }
    if cfg.digits > cfg.max_digits {
        return Err(NumericsError::PrecisionCap { requested: cfg.digits, cap: cfg.max_digits });
    }
    let working = cfg.digits + EXTRA_DIGITS;
    let values = terms
        .par_iter()
        .map(|(w, mult)| {
            let z = eval_mzv_fast_capped(&w.to_composition(), working, working)?;
            Ok(z.mul_int(*mult as i64))
        })
        .collect::<Result<Vec<_>, NumericsError>>()?;
    let sum: HighPrecisionReal = values.into_iter().sum();
    let ratio = &sum / &pi(sum.frac_bits()).pow(weight);
    Ok(Evaluation { weight, sum, ratio })
}

fn finish(
    family: Family,
    params: BTreeMap<String, Value>,
    eval: Evaluation,
    cfg: &NumericConfig,
    target: BigRational,
    kind: TargetKind,
    proven_rational: bool,
) -> Result<NumericReport, NumericsError> {
    let trusted = cfg.digits.min(eval.ratio.guaranteed_digits());
    let reconstructed = reconstruct_rational(&eval.ratio, trusted, &cfg.max_denominator)?;
    let target_match = reconstructed.as_ref().map(|q| *q == target);
    let status = match target_match {
        None => ReportStatus::NoReconstruction,
        Some(_) if proven_rational => ReportStatus::VerifiedRational,
        Some(true) if kind == TargetKind::Theorem => ReportStatus::VerifiedRational,
        Some(true) => ReportStatus::ConjecturalMatch,
        Some(false) => ReportStatus::TargetMismatch,
    };
    let shown = cfg.digits.min(eval.sum.guaranteed_digits());
    Ok(NumericReport {
        version: REPORT_VERSION,
        family,
        params,
        weight: eval.weight,
        digits: trusted,
        value: eval.sum.to_decimal(shown),
        ratio: eval.ratio.to_decimal(trusted + 4),
        pi_power: eval.weight,
        reconstructed,
        target: Some(target),
        target_kind: Some(kind),
        target_match,
        status,
    })
}

fn uniform(n: usize, m: u32) -> Result<BlockVector, NumericsError> {
    if n == 0 {
        return Err(NumericsError::BadParameters("n must be at least 1".into()));
    }
    Ok(BlockVector::new(vec![m; 2 * n + 1])?)
}

/// `Σ_{σ ∈ S_{2n+1}} Z(a_σ)`, certified symbolically before evaluation.
pub fn check_symmetric_sum(a: &BlockVector, cfg: &NumericConfig) -> Result<NumericReport, NumericsError> {
    let inst = build_instance(a.entries())?;
    if inst.weight() > cfg.weight_cap {
        return Err(NumericsError::WeightCap { weight: inst.weight(), cap: cfg.weight_cap });
    }
    let cert = verify_instance(&inst);
    if !cert.is_verified() {
        return Err(NumericsError::Unverified(a.to_string()));
    }
    let terms: Vec<_> = inst.words().iter().map(|w| (w.clone(), inst.lambda())).collect();
    let eval = evaluate(&terms, cfg)?;
    // Cyclic insertion splits the sum into (2n)! cyclic classes of 1/(wt+1)! each.
    let target = inverse_factorial(eval.weight) * BigRational::from_integer(factorial(2 * inst.n() as u32));
    let params = BTreeMap::from([
        ("a".to_string(), json!(a.entries())),
        ("lambda".to_string(), json!(inst.lambda())),
        ("word_count".to_string(), json!(inst.words().len())),
        ("certificate".to_string(), json!("verified")),
    ]);
    finish(Family::Symmetric, params, eval, cfg, target, TargetKind::Conjecture, true)
}

/// `ζ({{2}^m, 1, {2}^m, 3}^n, {2}^m)` against `1 / ((2n+1) (wt+1)!)`.
pub fn check_bbbl_family(n: usize, m: u32, cfg: &NumericConfig) -> Result<NumericReport, NumericsError> {
    let b = uniform(n, m)?;
    let eval = evaluate(&[(b, 1)], cfg)?;
    let target = inverse_factorial(eval.weight) / BigRational::from_integer(BigInt::from(2 * n + 1));
    let params = BTreeMap::from([("n".to_string(), json!(n)), ("m".to_string(), json!(m))]);
    finish(Family::Bbbl, params, eval, cfg, target, TargetKind::Conjecture, false)
}

/// All weak compositions of `total` into `parts` parts, lexicographic.
pub fn weak_compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(remaining: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=remaining {
            prefix.push(first);
            go(remaining - first, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}

/// Sum of `Z(j)` over weak compositions `j` of `m` into `2n+1` parts, against
/// `C(m+2n, m) / ((2n+1) (wt+1)!)`.
pub fn check_bowman_bradley(n: usize, m: u32, cfg: &NumericConfig) -> Result<NumericReport, NumericsError> {
    uniform(n, 0)?;
    let terms: Vec<_> = weak_compositions(m, 2 * n + 1)
        .into_iter()
        .map(|j| Ok((BlockVector::new(j)?, 1)))
        .collect::<Result<_, NumericsError>>()?;
    let eval = evaluate(&terms, cfg)?;
    let target = inverse_factorial(eval.weight) * BigRational::from_integer(binomial(m + 2 * n as u32, m))
        / BigRational::from_integer(BigInt::from(2 * n + 1));
    let params = BTreeMap::from([("n".to_string(), json!(n)), ("m".to_string(), json!(m))]);
    finish(Family::BowmanBradley, params, eval, cfg, target, TargetKind::Theorem, false)
}

/// Sum of `Z` over the `2n+1` cyclic shifts of `a` against `1 / (wt+1)!`.
pub fn check_cyclic_insertion(a: &BlockVector, cfg: &NumericConfig) -> Result<NumericReport, NumericsError> {
    let terms: Vec<_> = (0..a.block_count()).map(|k| (a.rotated(k), 1)).collect();
    let eval = evaluate(&terms, cfg)?;
    let target = inverse_factorial(eval.weight);
    let params = BTreeMap::from([("a".to_string(), json!(a.entries()))]);
    finish(Family::Cyclic, params, eval, cfg, target, TargetKind::Conjecture, false)
}

/// `(n, m)` with `n >= 1` and `4n + 2m(2n+1) <= cap`.
pub fn bbbl_sweep(cap: u32) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    for n in 1.. {
        if 4 * n > cap {
            break;
        }
        out.extend((0..).take_while(|m| 4 * n + 2 * m * (2 * n + 1) <= cap).map(|m| (n as usize, m)));
    }
    out
}

/// `(n, m)` with `n >= 1` and `4n + 2m <= cap`.
pub fn bowman_bradley_sweep(cap: u32) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    for n in 1.. {
        if 4 * n > cap {
            break;
        }
        out.extend((0..=(cap - 4 * n) / 2).map(|m| (n as usize, m)));
    }
    out
}

/// One representative (non-increasing) per multiset, weight at most `cap`.
pub fn symmetric_sweep(cap: u32) -> Vec<BlockVector> {
    all_vectors(cap)
        .into_iter()
        .filter(|v| v.windows(2).all(|p| p[0] >= p[1]))
        .map(|v| BlockVector::new(v).expect("odd length"))
        .collect()
}

/// One representative (lexicographically least rotation) per necklace, weight at most `cap`.
pub fn cyclic_sweep(cap: u32) -> Vec<BlockVector> {
    all_vectors(cap)
        .into_iter()
        .filter_map(|v| {
            let b = BlockVector::new(v).expect("odd length");
            (0..b.block_count()).all(|k| b.rotated(k) >= b).then_some(b)
        })
        .collect()
}

fn all_vectors(cap: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for n in 1.. {
        if 4 * n > cap {
            break;
        }
        for total in 0..=(cap - 4 * n) / 2 {
            out.extend(weak_compositions(total, 2 * n as usize + 1));
        }
    }
    out
}
