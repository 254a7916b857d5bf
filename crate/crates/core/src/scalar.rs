//! Scalar abstractions shared by the polynomial, network and synthesis code.
//!
//! `Ring` is what the symbolic machinery needs (resultants, impedances over
//! multivariate coefficients); `Scalar` adds division, ordering and the
//! conversions needed by numeric routines.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + FromPrimitive
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + FromPrimitive
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
{
}

pub trait Field: Ring + Div<Output = Self> {}

impl<T: Ring + Div<Output = T>> Field for T {}

pub trait Scalar: Field + PartialOrd + fmt::Display + Send + Sync {
    fn from_rational(r: &Rat) -> Self;

    /// Exact value as a rational, `None` for non-finite values.
    fn to_rational(&self) -> Option<Rat>;

    fn to_f64(&self) -> f64;

    /// Relative size below which a computed remainder is treated as zero.
    fn zero_tolerance() -> Self;

    fn is_exact() -> bool {
        false
    }

    /// Decimal digits worth printing at this precision.
    fn significant_digits() -> usize;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn from_int(i: i64) -> Self {
        Self::from_rational(&Rat::from_integer(BigInt::from(i)))
    }

    fn from_f64_lossy(x: f64) -> Self {
        match Rat::from_f64(x) {
            Some(r) => Self::from_rational(&r),
            None => Self::zero(),
        }
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }
}

impl Scalar for Rat {
    fn from_rational(r: &Rat) -> Self {
        r.clone()
    }
    fn to_rational(&self) -> Option<Rat> {
        Some(self.clone())
    }
    fn to_f64(&self) -> f64 {
        rat_to_f64(self)
    }
    fn zero_tolerance() -> Self {
        Rat::zero()
    }
    fn is_exact() -> bool {
        true
    }
    fn significant_digits() -> usize {
        40
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
}

macro_rules! float_scalar {
    ($t:ty, $tol:expr, $digits:expr) => {
        impl Scalar for $t {
            fn from_rational(r: &Rat) -> Self {
                rat_to_f64(r) as $t
            }
            fn to_rational(&self) -> Option<Rat> {
                Rat::from_float(*self)
            }
            fn to_f64(&self) -> f64 {
                *self as f64
            }
            fn zero_tolerance() -> Self {
                $tol
            }
            fn significant_digits() -> usize {
                $digits
            }
            fn abs(&self) -> Self {
                <$t>::abs(*self)
            }
        }
    };
}

float_scalar!(f64, 1e-9, 17);
float_scalar!(f32, 1e-4, 9);

/// Correctly scaled conversion; `BigRational::to_f64` overflows on huge parts.
pub fn rat_to_f64(r: &Rat) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let n = r.numer();
    let d = r.denom();
    let shift = n.bits() as i64 - d.bits() as i64 - 60;
    let q = if shift > 0 {
        n / (d << shift as usize)
    } else {
        (n << (-shift) as usize) / d
    };
    q.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `n`, `n/d` or a decimal with optional exponent into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational or decimal number: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (ip, fp) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{ip}{fp}0").parse().map_err(|_| bad())?;
    let scale = exp - fp.len() as i64 - 1;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        Rat::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rat::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// Scientific-notation decimal with `sig` significant digits, round half to even.
pub fn format_decimal(r: &Rat, sig: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let sig = sig.max(1);
    let neg = r.is_negative();
    let a = Signed::abs(r);
    let ten = BigInt::from(10);
    let pow10 = |e: i64| -> Rat {
        if e >= 0 {
            Rat::from_integer(num_traits::pow(ten.clone(), e as usize))
        } else {
            Rat::new(BigInt::one(), num_traits::pow(ten.clone(), (-e) as usize))
        }
    };
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    while a < pow10(e) {
        e -= 1;
    }
    while a >= pow10(e + 1) {
        e += 1;
    }
    let scaled = a * pow10(sig as i64 - 1 - e);
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let twice: BigInt = rem * 2;
    let mut m = match twice.cmp(scaled.denom()) {
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Equal => {
            if q.is_odd() {
                q + 1
            } else {
                q
            }
        }
    };
    if m == num_traits::pow(ten.clone(), sig) {
        m /= &ten;
        e += 1;
    }
    let digits = m.to_string();
    let (head, tail) = digits.split_at(1);
    let tail = tail.trim_end_matches('0');
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(head);
    if !tail.is_empty() {
        out.push('.');
        out.push_str(tail);
    }
    if e != 0 {
        out.push_str(&format!("e{e}"));
    }
    out
}

/// Canonical text for an exact rational: `n` or `n/d`.
pub fn format_rational(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn display_scalar<T: Scalar>(x: &T) -> String {
    match x.to_rational() {
        Some(r) if T::is_exact() => format_rational(&r),
        Some(r) => format_decimal(&r, T::significant_digits()),
        None => x.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("1.5e-3").unwrap(), rat(3, 2000));
        assert_eq!(parse_rational("2E2").unwrap(), int(200));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn decimal_round_trip() {
        assert_eq!(format_decimal(&rat(1, 3), 5), "3.3333e-1");
        assert_eq!(format_decimal(&rat(-2, 1), 5), "-2");
        assert_eq!(format_decimal(&rat(999_999, 1), 3), "1e6");
        assert_eq!(format_decimal(&rat(1, 8), 2), "1.2e-1");
        let r = rat(22, 7);
        let s = format_decimal(&r, 30);
        let back = parse_rational(&s).unwrap();
        assert!(Signed::abs(&(back - &r)) < rat(1, 1_000_000_000_000));
    }

    #[test]
    fn huge_rational_to_f64() {
        let big = Rat::new(num_traits::pow(BigInt::from(10), 400), num_traits::pow(BigInt::from(10), 399));
        assert!((rat_to_f64(&big) - 10.0).abs() < 1e-12);
        assert_eq!(rat_to_f64(&rat(-3, 4)), -0.75);
    }
}
