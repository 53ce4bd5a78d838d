//! Exact rational scalars.
//!
//! Every coordinate, height and intersection in this crate is an
//! [`ExactScalar`]; nothing is ever rounded. Parsing accepts integers,
//! decimals (`"1.25"`, `"-0.5"`, `"3e2"` is not accepted) and `p/q`
//! rationals; formatting prints `p/q` or a bare integer.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactScalar(BigRational);

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactScalar(BigRational::one())
    }

    pub fn from_integer(v: impl Into<BigInt>) -> Self {
        ExactScalar(BigRational::from_integer(v.into()))
    }

    /// Builds `numer / denom`. Panics if `denom` is zero.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        ExactScalar(BigRational::new(numer.into(), denom.into()))
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        Self::new(numer, denom)
    }

    pub fn from_big(r: BigRational) -> Self {
        ExactScalar(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.0.is_positive() {
            1
        } else if self.0.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn abs(&self) -> Self {
        ExactScalar(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        ExactScalar(self.0.recip())
    }

    /// Nearest `f64`; for diagnostics and rendering only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            // Very large numerator/denominator pairs: fall back to a ratio of
            // separately converted parts.
            let n = self.0.numer().to_f64().unwrap_or(f64::NAN);
            let d = self.0.denom().to_f64().unwrap_or(f64::NAN);
            n / d
        })
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(s: &str, whole: &str) -> Result<BigInt, ParseError> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::Number(whole.to_string()));
    }
    BigInt::from_str(s).map_err(|_| ParseError::Number(whole.to_string()))
}

impl FromStr for ExactScalar {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p = parse_int(p, s)?;
            let q = parse_int(q, s)?;
            if q.is_zero() {
                return Err(ParseError::Number(s.to_string()));
            }
            return Ok(ExactScalar(BigRational::new(p, q)));
        }
        if let Some((int, frac)) = s.split_once('.') {
            let negative = int.starts_with('-');
            let int_digits = int.strip_prefix(['+', '-']).unwrap_or(int);
            if (int_digits.is_empty() && frac.is_empty())
                || !int_digits.bytes().all(|b| b.is_ascii_digit())
                || !frac.bytes().all(|b| b.is_ascii_digit())
            {
                return Err(ParseError::Number(s.to_string()));
            }
            let mantissa = format!("{int_digits}{frac}");
            let mut numer =
                BigInt::from_str(&mantissa).map_err(|_| ParseError::Number(s.to_string()))?;
            if negative {
                numer = -numer;
            }
            let denom = num_traits::pow(BigInt::from(10u32), frac.len());
            return Ok(ExactScalar(BigRational::new(numer, denom)));
        }
        Ok(ExactScalar(BigRational::from_integer(parse_int(s, s)?)))
    }
}

impl From<i64> for ExactScalar {
    fn from(v: i64) -> Self {
        ExactScalar::from_integer(v)
    }
}

impl From<i32> for ExactScalar {
    fn from(v: i32) -> Self {
        ExactScalar::from_integer(v)
    }
}

impl From<BigInt> for ExactScalar {
    fn from(v: BigInt) -> Self {
        ExactScalar::from_integer(v)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                ExactScalar((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar(self.0.$method(rhs.0))
            }
        }
        impl $trait<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                ExactScalar(self.0.$method(&rhs.0))
            }
        }
        impl $trait<ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar((&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        self.0 += &rhs.0;
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-&self.0)
    }
}

/// Sign of an exact value as an [`Ordering`] against zero.
pub fn sign(v: &ExactScalar) -> Ordering {
    v.0.cmp(&BigRational::zero())
}
