//! Arbitrary-precision binary float with a process-wide working precision.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::{IBig, Sign as DSign, UBig};
use num_bigint::{BigInt, Sign};
use num_traits::{FromPrimitive, One, Zero};

use crate::scalar::{format_decimal, Rat, Scalar};

type Raw = FBig<HalfEven, 2>;

pub const DEFAULT_PRECISION_BITS: usize = 256;

static PRECISION: AtomicUsize = AtomicUsize::new(DEFAULT_PRECISION_BITS);

pub fn precision() -> usize {
    PRECISION.load(AtomicOrdering::Relaxed)
}

/// Sets the working precision for values created from now on.
pub fn set_precision(bits: usize) {
    PRECISION.store(bits.max(64), AtomicOrdering::Relaxed);
}

#[derive(Clone)]
pub struct Hp(Raw);

fn at_precision(x: Raw) -> Raw {
    x.with_precision(precision()).value()
}

fn ibig_from(b: &BigInt) -> IBig {
    let (sign, bytes) = b.to_bytes_le();
    let mag = UBig::from_le_bytes(&bytes);
    let sign = if sign == Sign::Minus { DSign::Negative } else { DSign::Positive };
    IBig::from_parts(sign, mag)
}

fn bigint_from(i: &IBig) -> BigInt {
    let (sign, mag) = i.clone().into_parts();
    let bytes = mag.to_le_bytes();
    let sign = if sign == DSign::Negative { Sign::Minus } else { Sign::Plus };
    BigInt::from_bytes_le(sign, &bytes)
}

impl Hp {
    pub fn from_raw_parts(significand: &BigInt, exponent: isize) -> Self {
        Hp(at_precision(Raw::from_parts(ibig_from(significand), exponent)))
    }

    pub fn sqrt(&self) -> Self {
        Hp(self.0.sqrt())
    }

    pub fn precision_bits(&self) -> usize {
        self.0.precision()
    }

    pub fn is_negative(&self) -> bool {
        self.0 < Raw::ZERO
    }
}

impl fmt::Debug for Hp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hp({self})")
    }
}

impl fmt::Display for Hp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_rational() {
            Some(r) => f.write_str(&format_decimal(&r, Self::significant_digits())),
            None => f.write_str("NaN"),
        }
    }
}

impl PartialEq for Hp {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for Hp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Hp {
            type Output = Hp;
            fn $m(self, rhs: Hp) -> Hp {
                Hp(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a Hp> for &'a Hp {
            type Output = Hp;
            fn $m(self, rhs: &'a Hp) -> Hp {
                Hp((&self.0).$m(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Hp {
    type Output = Hp;
    fn neg(self) -> Hp {
        Hp(-self.0)
    }
}

impl Zero for Hp {
    fn zero() -> Self {
        Hp(at_precision(Raw::ZERO))
    }
    fn is_zero(&self) -> bool {
        self.0 == Raw::ZERO
    }
}

impl One for Hp {
    fn one() -> Self {
        Hp(at_precision(Raw::ONE))
    }
}

impl FromPrimitive for Hp {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Hp(at_precision(Raw::from(n))))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Hp(at_precision(Raw::from(n))))
    }
    fn from_f64(x: f64) -> Option<Self> {
        Rat::from_f64(x).map(|r| Hp::from_rational(&r))
    }
}

impl Scalar for Hp {
    fn from_rational(r: &Rat) -> Self {
        let n = Hp(at_precision(Raw::from(ibig_from(r.numer()))));
        let d = Hp(at_precision(Raw::from(ibig_from(r.denom()))));
        n / d
    }

    fn to_rational(&self) -> Option<Rat> {
        let (m, e) = self.0.repr().clone().into_parts();
        let m = Rat::from_integer(bigint_from(&m));
        let two = BigInt::from(2);
        Some(if e >= 0 {
            m * Rat::from_integer(num_traits::pow(two, e as usize))
        } else {
            m / Rat::from_integer(num_traits::pow(two, (-e) as usize))
        })
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    fn zero_tolerance() -> Self {
        let bits = (precision() * 3 / 4) as isize;
        Hp::from_raw_parts(&BigInt::one(), -bits)
    }

    fn significant_digits() -> usize {
        (precision() as f64 * std::f64::consts::LOG10_2).floor() as usize
    }
}
