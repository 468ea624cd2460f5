//! `π`, Bernoulli numbers and Euler's closed form for `ζ(2k)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::real::{bits_for_digits, HighPrecisionReal};

const GUARD_BITS: u32 = 32;

/// `π` by Machin's formula `16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(frac_bits: u32) -> HighPrecisionReal {
    let work = frac_bits + GUARD_BITS;
    let (a, ea) = atan_inverse(5, work);
    let (b, eb) = atan_inverse(239, work);
    let mantissa = a * 16 - b * 4;
    let err = 16.0 * ea + 4.0 * eb;
    HighPrecisionReal::from_parts(mantissa, work, err).rescale(frac_bits)
}

/// `atan(1/x)` scaled by `2^bits`, with its error in ulps.
fn atan_inverse(x: u32, bits: u32) -> (BigInt, f64) {
    let x2 = BigInt::from(x) * x;
    let mut power = (BigInt::one() << bits as usize) / x;
    let mut sum = power.clone();
    let mut k = 1u32;
    let mut terms = 1.0;
    loop {
        power /= &x2;
        if power.is_zero() {
            break;
        }
        let term = &power / (2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
        terms += 1.0;
    }
    (sum, 2.0 * terms + 1.0)
}

/// `B_0, ..., B_max` with the convention `B_1 = -1/2`, from
/// `Σ_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli_numbers(max: usize) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = Vec::with_capacity(max + 1);
    out.push(BigRational::one());
    for m in 1..=max {
        let mut binom = BigInt::one(); // C(m+1, 0)
        let mut acc = BigRational::zero();
        for (j, b) in out.iter().enumerate() {
            acc += b * BigRational::from_integer(binom.clone());
            binom = binom * (m + 1 - j) / (j + 1);
        }
        out.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    out
}

pub fn bernoulli(n: usize) -> BigRational {
    bernoulli_numbers(n).pop().expect("non-empty")
}

/// Rational `c_k` with `ζ(2k) = c_k π^{2k}`, i.e. `(-1)^{k+1} B_{2k} 2^{2k} / (2 (2k)!)`.
pub fn zeta_even_pi_coefficient(k: u32) -> BigRational {
    assert!(k >= 1, "ζ(2k) needs k >= 1");
    let b = bernoulli(2 * k as usize);
    let factorial: BigInt = (1..=2 * k).map(BigInt::from).product();
    let sign = if k % 2 == 1 { BigRational::one() } else { -BigRational::one() };
    sign * b * BigRational::from_integer(BigInt::one() << (2 * k) as usize)
        / BigRational::from_integer(factorial * 2)
}

/// `ζ(2k)` to `digits` decimal places via Euler's formula.
pub fn euler_zeta_even(k: u32, digits: u32) -> HighPrecisionReal {
    let bits = bits_for_digits(digits) + GUARD_BITS;
    pi(bits).pow(2 * k).mul_rational(&zeta_even_pi_coefficient(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    const PI_60: &str = "3.141592653589793238462643383279502884197169399375105820974945";

    #[test]
    fn pi_digits() {
        let p = pi(bits_for_digits(70));
        assert_eq!(p.to_decimal(60), PI_60);
        assert!(p.guaranteed_digits() >= 65);
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_numbers(12);
        assert_eq!(b[1], q(-1, 2));
        assert_eq!(b[2], q(1, 6));
        assert_eq!(b[3], q(0, 1));
        assert_eq!(b[4], q(-1, 30));
        assert_eq!(b[6], q(1, 42));
        assert_eq!(b[8], q(-1, 30));
        assert_eq!(b[10], q(5, 66));
        assert_eq!(b[12], q(-691, 2730));
    }

    #[test]
    fn euler_coefficients() {
        assert_eq!(zeta_even_pi_coefficient(1), q(1, 6));
        assert_eq!(zeta_even_pi_coefficient(2), q(1, 90));
        assert_eq!(zeta_even_pi_coefficient(3), q(1, 945));
        assert_eq!(zeta_even_pi_coefficient(4), q(1, 9450));
        assert_eq!(zeta_even_pi_coefficient(5), q(1, 93555));
    }

    #[test]
    fn zeta_two() {
        let z = euler_zeta_even(1, 40);
        assert_eq!(z.to_decimal(40), "1.6449340668482264364724151666460251892189");
    }
}
