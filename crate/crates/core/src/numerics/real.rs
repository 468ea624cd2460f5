use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Binary fixed-point number `mantissa / 2^frac_bits` carrying an absolute
/// error bound of `err_ulps` units in the last place.
#[derive(Clone, Debug)]
pub struct HighPrecisionReal {
    mantissa: BigInt,
    frac_bits: u32,
    err_ulps: f64,
}

/// Fractional bits needed to hold `digits` decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * LOG2_10).ceil() as u32
}

impl HighPrecisionReal {
    pub(crate) fn from_parts(mantissa: BigInt, frac_bits: u32, err_ulps: f64) -> Self {
        HighPrecisionReal { mantissa, frac_bits, err_ulps }
    }

    pub fn zero(frac_bits: u32) -> Self {
        Self::from_parts(BigInt::zero(), frac_bits, 0.0)
    }

    pub fn from_integer(value: impl Into<BigInt>, frac_bits: u32) -> Self {
        Self::from_parts(value.into() << frac_bits as usize, frac_bits, 0.0)
    }

    /// Nearest representable value, half an ulp of error.
    pub fn from_rational(q: &BigRational, frac_bits: u32) -> Self {
        let scaled = q.numer() << frac_bits as usize;
        let mantissa = round_div(&scaled, q.denom());
        let err = if (q.numer() << frac_bits as usize).is_multiple_of(q.denom()) { 0.0 } else { 0.5 };
        Self::from_parts(mantissa, frac_bits, err)
    }

    /// Parses a plain decimal such as `-0.125` or `3`.
    pub fn parse_decimal(s: &str, frac_bits: u32) -> Option<Self> {
        let s = s.trim();
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        let digits = format!("{int_part}{frac_part}");
        if !digits.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let mut numer: BigInt = digits.parse().ok()?;
        if negative {
            numer = -numer;
        }
        let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
        Some(Self::from_rational(&BigRational::new(numer, denom), frac_bits))
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn error_ulps(&self) -> f64 {
        self.err_ulps
    }

    /// Grows the error bound by `extra` ulps.
    pub fn with_extra_error(mut self, extra: f64) -> Self {
        self.err_ulps += extra;
        self
    }

    /// `log10` of the absolute error bound.
    pub fn error_log10(&self) -> f64 {
        self.err_ulps.max(1.0).log10() - self.frac_bits as f64 / LOG2_10
    }

    /// Decimal digits after the point that the error bound guarantees.
    pub fn guaranteed_digits(&self) -> u32 {
        (-self.error_log10()).floor().max(0.0) as u32
    }

    /// Upper bound on `|self|` as a power of two exponent.
    fn magnitude_log2(&self) -> f64 {
        self.mantissa.bits() as f64 - self.frac_bits as f64
    }

    fn magnitude_bound(&self) -> f64 {
        2f64.powf(self.magnitude_log2())
    }

    /// The exact binary value held, ignoring the error bound.
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mantissa.clone(), BigInt::one() << self.frac_bits as usize)
    }

    pub fn to_f64(&self) -> f64 {
        let shift = self.mantissa.bits().saturating_sub(60);
        let top = (&self.mantissa >> shift as usize).to_f64().unwrap_or(f64::NAN);
        top * 2f64.powf(shift as f64 - self.frac_bits as f64)
    }

    /// Re-expresses at another precision; shrinking rounds to nearest.
    pub fn rescale(&self, frac_bits: u32) -> Self {
        match frac_bits.cmp(&self.frac_bits) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let shift = frac_bits - self.frac_bits;
                Self::from_parts(
                    &self.mantissa << shift as usize,
                    frac_bits,
                    self.err_ulps * 2f64.powi(shift as i32),
                )
            }
            Ordering::Less => {
                let shift = self.frac_bits - frac_bits;
                let divisor = BigInt::one() << shift as usize;
                Self::from_parts(
                    round_div(&self.mantissa, &divisor),
                    frac_bits,
                    self.err_ulps * 2f64.powi(-(shift as i32)) + 0.5,
                )
            }
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let bits = self.frac_bits.max(other.frac_bits);
        (self.rescale(bits), other.rescale(bits))
    }

    pub fn abs(&self) -> Self {
        Self::from_parts(self.mantissa.abs(), self.frac_bits, self.err_ulps)
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.sign() == Sign::Minus
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Self::from_parts(&self.mantissa * k, self.frac_bits, self.err_ulps * k.unsigned_abs() as f64)
    }

    pub fn div_int(&self, k: i64) -> Self {
        assert!(k != 0, "division by zero");
        Self::from_parts(
            round_div(&self.mantissa, &BigInt::from(k)),
            self.frac_bits,
            self.err_ulps / k.unsigned_abs() as f64 + 0.5,
        )
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        let numer = &self.mantissa * q.numer();
        let scale = (q.numer().abs().to_f64().unwrap_or(f64::INFINITY))
            / q.denom().to_f64().unwrap_or(f64::INFINITY);
        Self::from_parts(round_div(&numer, q.denom()), self.frac_bits, self.err_ulps * scale + 0.5)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::from_integer(1, self.frac_bits);
        for _ in 0..exp {
            result = &result * self;
        }
        result
    }

    /// Decimal rendering rounded to `digits` places after the point.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scaled = &self.mantissa * BigInt::from(10u32).pow(digits);
        let rounded = round_div(&scaled, &(BigInt::one() << self.frac_bits as usize));
        let negative = rounded.is_negative();
        let mut text = rounded.abs().to_string();
        if digits > 0 {
            if text.len() <= digits as usize {
                text = "0".repeat(digits as usize + 1 - text.len()) + &text;
            }
            text.insert(text.len() - digits as usize, '.');
        }
        if negative {
            text.insert(0, '-');
        }
        text
    }

    /// Whether the held values differ by less than `10^-digits`.
    pub fn agrees_to(&self, other: &Self, digits: u32) -> bool {
        let diff = (self - other).abs().to_rational();
        diff < BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits))
    }

    /// `-log10 |self - other|`, or `f64::INFINITY` for identical values.
    pub fn agreement_digits(&self, other: &Self) -> f64 {
        let diff = (self - other).abs();
        if diff.mantissa.is_zero() {
            return f64::INFINITY;
        }
        let approx = diff.to_f64();
        if approx > 0.0 && approx.is_finite() {
            -approx.log10()
        } else {
            -((diff.mantissa.bits() as f64 - 1.0 - diff.frac_bits as f64) / LOG2_10)
        }
    }
}

/// Nearest-integer division, halves rounded up.
pub(crate) fn round_div(numer: &BigInt, denom: &BigInt) -> BigInt {
    let (q, r) = numer.div_mod_floor(denom);
    let twice = r.abs() << 1usize;
    if twice >= denom.abs() {
        if denom.is_positive() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

impl fmt::Display for HighPrecisionReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().map_or(self.guaranteed_digits(), |p| p as u32);
        f.write_str(&self.to_decimal(digits))
    }
}

impl Neg for &HighPrecisionReal {
    type Output = HighPrecisionReal;
    fn neg(self) -> HighPrecisionReal {
        HighPrecisionReal::from_parts(-&self.mantissa, self.frac_bits, self.err_ulps)
    }
}

impl Add for &HighPrecisionReal {
    type Output = HighPrecisionReal;
    fn add(self, rhs: &HighPrecisionReal) -> HighPrecisionReal {
        let (a, b) = self.aligned(rhs);
        HighPrecisionReal::from_parts(a.mantissa + b.mantissa, a.frac_bits, a.err_ulps + b.err_ulps)
    }
}

impl Sub for &HighPrecisionReal {
    type Output = HighPrecisionReal;
    fn sub(self, rhs: &HighPrecisionReal) -> HighPrecisionReal {
        let (a, b) = self.aligned(rhs);
        HighPrecisionReal::from_parts(a.mantissa - b.mantissa, a.frac_bits, a.err_ulps + b.err_ulps)
    }
}

impl Mul for &HighPrecisionReal {
    type Output = HighPrecisionReal;
    fn mul(self, rhs: &HighPrecisionReal) -> HighPrecisionReal {
        let (a, b) = self.aligned(rhs);
        let bits = a.frac_bits;
        let product = &a.mantissa * &b.mantissa;
        let mantissa = round_div(&product, &(BigInt::one() << bits as usize));
        let ulp = 2f64.powi(-(bits as i32));
        let err = a.magnitude_bound() * b.err_ulps + b.magnitude_bound() * a.err_ulps + a.err_ulps * b.err_ulps * ulp + 0.5;
        HighPrecisionReal::from_parts(mantissa, bits, err)
    }
}

impl Div for &HighPrecisionReal {
    type Output = HighPrecisionReal;
    fn div(self, rhs: &HighPrecisionReal) -> HighPrecisionReal {
        let (a, b) = self.aligned(rhs);
        assert!(!b.mantissa.is_zero(), "division by zero");
        let bits = a.frac_bits;
        let mantissa = round_div(&(&a.mantissa << bits as usize), &b.mantissa);
        let ulp = 2f64.powi(-(bits as i32));
        // |b| >= 2^(bitlen-1) ulps, shrunk by its own error.
        let b_low = (2f64.powf(b.mantissa.bits() as f64 - 1.0 - bits as f64) - b.err_ulps * ulp).max(f64::MIN_POSITIVE);
        let quotient = a.magnitude_bound() / b_low;
        let err = (a.err_ulps + quotient * b.err_ulps) / b_low + 0.5;
        HighPrecisionReal::from_parts(mantissa, bits, err)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for HighPrecisionReal {
            type Output = HighPrecisionReal;
            fn $method(self, rhs: HighPrecisionReal) -> HighPrecisionReal {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl std::iter::Sum for HighPrecisionReal {
    fn sum<I: Iterator<Item = HighPrecisionReal>>(mut iter: I) -> Self {
        let first = iter.next().unwrap_or_else(|| HighPrecisionReal::zero(0));
        iter.fold(first, |acc, x| &acc + &x)
    }
}
