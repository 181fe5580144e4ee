//! Exact scalars: arbitrary-precision rationals and rationals with an
//! imaginary unit. No floating point is used anywhere in this crate.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Error;

/// Exact rational scalar. `BigRational` keeps values in lowest terms
/// with a positive denominator, which is exactly the invariant we need.
pub type Rat = BigRational;

/// Shorthand constructor from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses "p/q" or "p" exactly. Whitespace is not accepted.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let parse_int = |t: &str| -> Result<BigInt, Error> {
        t.parse::<BigInt>()
            .map_err(|_| Error::Usage(format!("invalid rational literal `{s}`")))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::Usage(format!("zero denominator in `{s}`")));
            }
            Ok(Rat::new(parse_int(p)?, den))
        }
    }
}

/// Renders a rational as "p/q", or "p" when the denominator is 1.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A rational plus a rational multiple of the imaginary unit.
/// Closed under addition, multiplication and conjugation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianRational {
    pub re: Rat,
    pub im: Rat,
}

impl GaussianRational {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_real(re: Rat) -> Self {
        GaussianRational { re, im: Rat::zero() }
    }

    pub fn zero() -> Self {
        GaussianRational { re: Rat::zero(), im: Rat::zero() }
    }

    pub fn i() -> Self {
        GaussianRational { re: Rat::zero(), im: Rat::one() }
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        GaussianRational { re: &self.re * c, im: &self.im * c }
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> Self {
        GaussianRational { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> Self {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", format_rat(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}i", format_rat(&self.im));
        }
        if self.im.is_negative() {
            write!(f, "{} - {}i", format_rat(&self.re), format_rat(&-self.im.clone()))
        } else {
            write!(f, "{} + {}i", format_rat(&self.re), format_rat(&self.im))
        }
    }
}
