//! Two independent evaluators for `ζ(n_1, ..., n_r)`.
//!
//! `eval_mzv_series` truncates the nested harmonic sum directly; it converges
//! polynomially and serves only as a cross-check. `eval_mzv_fast` evaluates
//! the iterated integral `I(0; a_1..a_n; 1)` of the composition's word by path
//! composition through `1/2`:
//!
//! ```text
//! I(0; a_1..a_n; 1) = Σ_j I(0; a_1..a_j; 1/2) · (-1)^{n-j} I(0; 1-a_n, ..., 1-a_{j+1}; 1/2)
//! ```
//!
//! where the right factor comes from `t ↦ 1 - t` followed by path reversal.
//! Both factors are power series in `x = 1/2` whose coefficients stay bounded
//! by 1, so `K` terms leave a tail below `2^-K`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::real::{bits_for_digits, HighPrecisionReal};
use super::NumericsError;
use crate::words::{BinaryWord, Composition};

pub const DEFAULT_MAX_DIGITS: u32 = 200;

/// Fractional bits of the nested-sum oracle.
const SERIES_BITS: u32 = 110;

/// Extra working bits on top of the requested digits.
const GUARD_BITS: u32 = 64;

/// Truncated nested sum `Σ_{0<k_1<...<k_r≤N} Π k_i^{-n_i}` plus a tail bound
/// folded into the error.
pub fn eval_mzv_series(c: &Composition, terms: u64) -> Result<HighPrecisionReal, NumericsError> {
    c.to_word()?;
    if terms < 10 {
        return Err(NumericsError::TooFewTerms(terms));
    }
    let (mantissa, err) = nested_sum(c.parts(), terms);
    let tail = series_tail_bound(c.parts(), terms);
    Ok(HighPrecisionReal::from_parts(
        BigInt::from(mantissa),
        SERIES_BITS,
        err + tail * 2f64.powi(SERIES_BITS as i32),
    ))
}

/// Raw nested sum in `u128` fixed point; the empty composition gives 1.
pub(crate) fn nested_sum(parts: &[u32], terms: u64) -> (u128, f64) {
    let n = terms as usize;
    let one: u128 = 1 << SERIES_BITS;
    // partial[k] = value of the sum over the parts so far with every index ≤ k.
    let mut partial = vec![one; n + 1];
    let mut err = 0.0;
    for &part in parts {
        let mut next = vec![0u128; n + 1];
        let mut running = 0u128;
        for k in 1..=n {
            let mut term = partial[k - 1];
            for _ in 0..part {
                term /= k as u128;
            }
            running += term;
            next[k] = running;
        }
        partial = next;
        err += 2.0 * n as f64;
    }
    (partial[n], err)
}

/// Crude bound on the omitted terms `k_r > N` of the nested sum.
///
/// The inner sums are at most `(1 + ln k)^{r-1}`, and
/// `∫_N^∞ (1+ln x)^d x^{-s} dx = N^{1-s} Σ_j d!/(d-j)! (1+ln N)^{d-j} / (s-1)^{j+1}`.
pub fn series_tail_bound(parts: &[u32], terms: u64) -> f64 {
    let Some(&s) = parts.last() else { return 0.0 };
    let s = s as f64;
    let d = parts.len() - 1;
    let n = terms as f64;
    let u = 1.0 + n.ln();
    let mut falling = 1.0;
    let mut total = 0.0;
    for j in 0..=d {
        if j > 0 {
            falling *= (d - j + 1) as f64;
        }
        total += falling * u.powi((d - j) as i32) / (s - 1.0).powi(j as i32 + 1);
    }
    2.0 * total * n.powf(1.0 - s)
}

pub fn eval_mzv_fast(c: &Composition, digits: u32) -> Result<HighPrecisionReal, NumericsError> {
    eval_mzv_fast_capped(c, digits, DEFAULT_MAX_DIGITS)
}

pub fn eval_mzv_fast_capped(c: &Composition, digits: u32, max_digits: u32) -> Result<HighPrecisionReal, NumericsError> {
    if digits > max_digits {
        return Err(NumericsError::PrecisionCap { requested: digits, cap: max_digits });
    }
    let word = c.to_word()?;
    let value = iterated_integral_0_to_1(&word, bits_for_digits(digits) + GUARD_BITS);
    Ok(if c.sign() < 0 { -&value } else { value })
}

/// `I(0; a_1, ..., a_n; 1)` for a word with `a_1 = 1` and `a_n = 0`.
pub(crate) fn iterated_integral_0_to_1(word: &BinaryWord, bits: u32) -> HighPrecisionReal {
    let letters = word.interior();
    let n = letters.len();
    if n == 0 {
        return HighPrecisionReal::from_integer(1, bits);
    }
    assert!(letters[0] == 1 && letters[n - 1] == 0, "word {word} is divergent");
    let prefixes = values_at_half(letters.iter().copied(), bits);
    let suffixes = values_at_half(letters.iter().rev().map(|&a| 1 - a), bits);
    (0..=n)
        .map(|j| {
            let term = &prefixes[j] * &suffixes[n - j];
            if (n - j) % 2 == 1 {
                -&term
            } else {
                term
            }
        })
        .sum()
}

/// `I(0; b_1..b_j; 1/2)` for `j = 0..=len`, given `b_1 = 1`.
///
/// With `F(x) = I(0; b_1..b_j; x) = Σ c_k x^k`, appending the letter 0 maps
/// `c_k ↦ c_k / k`, and appending 1 maps `c_{k+1} ↦ -(c_0 + ... + c_k)/(k+1)`.
fn values_at_half(letters: impl Iterator<Item = u8>, bits: u32) -> Vec<HighPrecisionReal> {
    // Every |c_k| <= 1, so terms past K contribute less than 2^-K.
    let cutoff = bits as usize + 2;
    let mut coeffs = vec![BigInt::zero(); cutoff + 1];
    coeffs[0] = BigInt::from(1) << bits as usize;
    let mut out = vec![HighPrecisionReal::from_integer(1, bits)];
    for (step, letter) in letters.enumerate() {
        if letter == 0 {
            assert!(coeffs[0].is_zero(), "leading letter 0 diverges at the origin");
            for (k, c) in coeffs.iter_mut().enumerate().skip(1) {
                *c = &*c / k;
            }
        } else {
            let mut running = BigInt::zero();
            let mut next = vec![BigInt::zero(); cutoff + 1];
            for k in 0..cutoff {
                running += &coeffs[k];
                next[k + 1] = -(&running / (k + 1));
            }
            coeffs = next;
        }
        let value: BigInt = coeffs.iter().enumerate().map(|(k, c)| c >> k).sum();
        // Coefficient errors grow by at most one ulp per letter; the shifts add
        // one ulp per term and the tail a quarter.
        let err = 2.0 * (step + 2) as f64 + cutoff as f64 + 1.0;
        out.push(HighPrecisionReal::from_parts(value, bits, err));
    }
    out
}
