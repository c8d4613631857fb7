//! Extended-precision fixed-point decimals.
//!
//! Used as the high-precision route for cross-checking the `f64` evaluations.
//! A [`Fixed`] holds `mantissa / 10^scale`; every operation truncates to the
//! operands' common scale, so each step loses at most one unit in the last
//! place.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// Working precision for closed-form evaluations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Precision {
    /// IEEE-754 binary64.
    #[default]
    Double,
    /// Decimal fixed point carrying `digits` significant digits of the result.
    Extended { digits: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixed {
    mantissa: BigInt,
    scale: u32,
}

fn pow10(exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u8), exp as usize)
}

impl Fixed {
    pub fn zero(scale: u32) -> Self {
        Self {
            mantissa: BigInt::zero(),
            scale,
        }
    }

    pub fn from_integer(value: impl Into<BigInt>, scale: u32) -> Self {
        Self {
            mantissa: value.into() * pow10(scale),
            scale,
        }
    }

    /// `numer / denom` truncated toward negative infinity.
    pub fn from_ratio(numer: impl Into<BigInt>, denom: impl Into<BigInt>, scale: u32) -> Self {
        let denom = denom.into();
        assert!(!denom.is_zero(), "zero denominator");
        let scaled = numer.into() * pow10(scale);
        Self {
            mantissa: scaled.div_floor(&denom),
            scale,
        }
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self {
            mantissa: self.mantissa.abs(),
            scale: self.scale,
        }
    }

    /// Square root truncated to the current scale.
    ///
    /// # Panics
    ///
    /// Panics on negative input.
    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "square root of a negative value");
        let radicand = &self.mantissa * pow10(self.scale);
        Self {
            mantissa: radicand.sqrt(),
            scale: self.scale,
        }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.check_scale(rhs);
        assert!(!rhs.mantissa.is_zero(), "division by zero");
        Self {
            mantissa: (&self.mantissa * pow10(self.scale)).div_floor(&rhs.mantissa),
            scale: self.scale,
        }
    }

    /// Changes the scale, truncating when it shrinks.
    pub fn rescale(&self, scale: u32) -> Self {
        let mantissa = match scale.cmp(&self.scale) {
            Ordering::Equal => self.mantissa.clone(),
            Ordering::Greater => &self.mantissa * pow10(scale - self.scale),
            Ordering::Less => self.mantissa.div_floor(&pow10(self.scale - scale)),
        };
        Self { mantissa, scale }
    }

    /// Correctly rounded conversion of the stored decimal to `f64`.
    pub fn to_f64(&self) -> f64 {
        format!("{}e-{}", self.mantissa, self.scale)
            .parse()
            .unwrap_or(f64::NAN)
    }

    /// Scientific notation with `sig` significant digits, rounded half away
    /// from zero.
    pub fn to_scientific(&self, sig: u32) -> String {
        let sig = sig.max(1);
        if self.mantissa.is_zero() {
            return "0e0".to_string();
        }
        let negative = self.mantissa.is_negative();
        let mut digits = self.mantissa.abs();
        let mut len = digits.to_string().len() as i64;
        if len > sig as i64 {
            let drop = (len - sig as i64) as u32;
            let (q, r) = digits.div_rem(&pow10(drop));
            digits = if r * 2u8 >= pow10(drop) { q + 1u8 } else { q };
            let exp_adjust = drop as i64;
            let s = digits.to_string();
            // rounding may carry into a new leading digit
            let carried = s.len() as i64 > sig as i64;
            let s = if carried { s[..sig as usize].to_string() } else { s };
            len = exp_adjust + s.len() as i64 + i64::from(carried);
            return Self::render(negative, &s, len - 1 - self.scale as i64);
        }
        let s = digits.to_string();
        let padded = format!("{s:0<width$}", width = sig as usize);
        Self::render(negative, &padded, len - 1 - self.scale as i64)
    }

    fn render(negative: bool, digits: &str, exponent: i64) -> String {
        let sign = if negative { "-" } else { "" };
        let (head, tail) = digits.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{exponent}")
        } else {
            format!("{sign}{head}.{tail}e{exponent}")
        }
    }

    fn check_scale(&self, rhs: &Self) {
        assert_eq!(self.scale, rhs.scale, "mismatched fixed-point scales");
    }
}

impl PartialOrd for Fixed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.scale == other.scale {
            Some(self.mantissa.cmp(&other.mantissa))
        } else {
            let scale = self.scale.max(other.scale);
            Some(self.rescale(scale).mantissa.cmp(&other.rescale(scale).mantissa))
        }
    }
}

impl<'a> Add for &'a Fixed {
    type Output = Fixed;
    fn add(self, rhs: &'a Fixed) -> Fixed {
        self.check_scale(rhs);
        Fixed {
            mantissa: &self.mantissa + &rhs.mantissa,
            scale: self.scale,
        }
    }
}

impl<'a> Sub for &'a Fixed {
    type Output = Fixed;
    fn sub(self, rhs: &'a Fixed) -> Fixed {
        self.check_scale(rhs);
        Fixed {
            mantissa: &self.mantissa - &rhs.mantissa,
            scale: self.scale,
        }
    }
}

impl<'a> Mul for &'a Fixed {
    type Output = Fixed;
    fn mul(self, rhs: &'a Fixed) -> Fixed {
        self.check_scale(rhs);
        Fixed {
            mantissa: (&self.mantissa * &rhs.mantissa).div_floor(&pow10(self.scale)),
            scale: self.scale,
        }
    }
}

impl Neg for Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed {
            mantissa: -self.mantissa,
            scale: self.scale,
        }
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.mantissa.abs().to_string();
        let scale = self.scale as usize;
        let padded = format!("{s:0>width$}", width = scale + 1);
        let (int, frac) = padded.split_at(padded.len() - scale);
        if self.mantissa.sign() == Sign::Minus {
            f.write_str("-")?;
        }
        if frac.is_empty() {
            write!(f, "{int}")
        } else {
            write!(f, "{int}.{frac}")
        }
    }
}

/// Number of decimal digits in `n` (at least 1).
pub(crate) fn decimal_len(n: u64) -> u32 {
    n.checked_ilog10().map_or(1, |d| d + 1)
}
