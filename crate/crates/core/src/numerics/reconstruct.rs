//! Recognising rationals from high-precision values by continued fractions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::real::HighPrecisionReal;
use super::NumericsError;

pub const DEFAULT_GUARD_DIGITS: u32 = 5;
pub const MIN_TRUSTED_DIGITS: u32 = 20;

pub fn default_max_denominator() -> BigInt {
    BigInt::from(10u64).pow(12)
}

/// First continued-fraction convergent `p/q` of `x` with `q <= max_denominator`
/// and `|x - p/q| < 10^-(digits_trusted - 5)`.
///
/// `Ok(None)` means no such convergent exists: a normal outcome, not an error.
pub fn reconstruct_rational(
    x: &HighPrecisionReal,
    digits_trusted: u32,
    max_denominator: &BigInt,
) -> Result<Option<BigRational>, NumericsError> {
    reconstruct_with_guard(x, digits_trusted, max_denominator, DEFAULT_GUARD_DIGITS)
}

pub fn reconstruct_with_guard(
    x: &HighPrecisionReal,
    digits_trusted: u32,
    max_denominator: &BigInt,
    guard: u32,
) -> Result<Option<BigRational>, NumericsError> {
    if digits_trusted < MIN_TRUSTED_DIGITS || digits_trusted <= guard {
        return Err(NumericsError::TooFewTrustedDigits(digits_trusted));
    }
    let target = x.to_rational();
    let tolerance = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits_trusted - guard));
    Ok(convergents(&target)
        .take_while(|c| c.denom() <= max_denominator)
        .find(|c| (&target - c).abs() < tolerance))
}

/// Convergents of the regular continued fraction of `x`.
pub fn convergents(x: &BigRational) -> impl Iterator<Item = BigRational> {
    let (mut num, mut den) = (x.numer().clone(), x.denom().clone());
    let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
    std::iter::from_fn(move || {
        if den.is_zero() {
            return None;
        }
        let (a, rem) = num.div_mod_floor(&den);
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        num = std::mem::replace(&mut den, rem);
        Some(BigRational::new(p.clone(), q.clone()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::constants::pi;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn convergents_of_simple_fractions() {
        let cs: Vec<_> = convergents(&q(415, 93)).collect();
        assert_eq!(cs, vec![q(4, 1), q(9, 2), q(58, 13), q(415, 93)]);
        let cs: Vec<_> = convergents(&q(-7, 2)).collect();
        assert_eq!(cs.last(), Some(&q(-7, 2)));
    }

    #[test]
    fn exact_half() {
        let x = HighPrecisionReal::parse_decimal("0.5", 200).unwrap();
        let r = reconstruct_rational(&x, 50, &default_max_denominator()).unwrap();
        assert_eq!(r, Some(q(1, 2)));
    }

    #[test]
    fn transcendental_input_fails() {
        let x = pi(300);
        assert_eq!(reconstruct_rational(&x, 60, &default_max_denominator()).unwrap(), None);
    }

    #[test]
    fn denominator_bound_is_respected() {
        let x = HighPrecisionReal::from_rational(&q(1, 1_000_003), 300);
        assert_eq!(reconstruct_rational(&x, 60, &BigInt::from(1_000_000)).unwrap(), None);
        assert_eq!(reconstruct_rational(&x, 60, &BigInt::from(1_000_003)).unwrap(), Some(q(1, 1_000_003)));
    }

    #[test]
    fn precondition() {
        let x = HighPrecisionReal::from_integer(1, 64);
        assert!(matches!(
            reconstruct_rational(&x, 19, &default_max_denominator()),
            Err(NumericsError::TooFewTrustedDigits(19))
        ));
    }
}
