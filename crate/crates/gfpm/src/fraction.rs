//! Exact rational thresholds.
//!
//! Support and confidence cutoffs arrive as decimal literals ("0.125",
//! "5e-5"). Keeping them as reduced integer fractions lets every threshold
//! comparison be done in integer arithmetic, so boundary cases like
//! `support == cutoff` behave exactly, with no float rounding involved.

use crate::{Error, Result};

/// A non-negative rational number in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fraction {
    num: u64,
    den: u64,
}

impl Fraction {
    /// Builds `num/den`, reduced. The denominator must be nonzero.
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidFraction(format!("{num}/{den}")));
        }
        let g = gcd(num.max(1), den);
        Ok(Fraction {
            num: num / g,
            den: den / g,
        })
    }

    /// Parses a decimal literal: digits, an optional fractional part, and an
    /// optional base-10 exponent (`0.125`, `.5`, `5e-5`, `1.2E3`).
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidFraction(s.to_string());
        let t = s.trim();
        let (mantissa, exponent) = match t.find(['e', 'E']) {
            Some(pos) => {
                let exp: i32 = t[pos + 1..].parse().map_err(|_| bad())?;
                (&t[..pos], exp)
            }
            None => (t, 0),
        };
        if !(-27..=27).contains(&exponent) {
            return Err(bad());
        }
        let mantissa = mantissa.strip_prefix('+').unwrap_or(mantissa);
        let (int_part, frac_part) = match mantissa.find('.') {
            Some(pos) => (&mantissa[..pos], &mantissa[pos + 1..]),
            None => (mantissa, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
            || int_part.len() + frac_part.len() > 19
        {
            return Err(bad());
        }
        let digits: u128 = format!("{int_part}{frac_part}")
            .parse()
            .map_err(|_| bad())?;
        let mut num = digits;
        let mut den = 10u128.checked_pow(frac_part.len() as u32).ok_or_else(bad)?;
        if exponent >= 0 {
            num = num
                .checked_mul(10u128.pow(exponent as u32))
                .ok_or_else(bad)?;
        } else {
            den = den
                .checked_mul(10u128.pow(-exponent as u32))
                .ok_or_else(bad)?;
        }
        let g = gcd128(num.max(1), den);
        let (num, den) = (num / g, den / g);
        if num > u64::MAX as u128 || den > u64::MAX as u128 {
            return Err(bad());
        }
        Fraction::new(num as u64, den as u64)
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `ceil(self * n)` computed exactly in integer arithmetic.
    pub fn ceil_mul(&self, n: u64) -> u64 {
        let prod = self.num as u128 * n as u128;
        let den = self.den as u128;
        let c = prod.div_ceil(den);
        u64::try_from(c).expect("threshold count overflows u64")
    }

    /// `self <= num/den`, exactly. The right-hand denominator must be nonzero.
    pub fn leq_ratio(&self, num: u64, den: u64) -> bool {
        debug_assert!(den > 0);
        self.num as u128 * den as u128 <= num as u128 * self.den as u128
    }

    /// `self >= num/den`, exactly. The right-hand denominator must be nonzero.
    pub fn geq_ratio(&self, num: u64, den: u64) -> bool {
        debug_assert!(den > 0);
        self.num as u128 * den as u128 >= num as u128 * self.den as u128
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn gcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
