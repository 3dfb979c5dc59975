//! Base-`b` numerals, least-significant digit first.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::{BigCount, Error, Result};

/// A numeral base `b >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Base(u32);

impl Base {
    pub const BINARY: Base = Base(2);

    pub fn new(b: u32) -> Result<Self> {
        if b < 2 {
            return Err(Error::InvalidBase(b.into()));
        }
        Ok(Base(b))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    pub fn big(self) -> BigUint {
        BigUint::from(self.0)
    }

    /// `b^k` as a big integer.
    pub fn pow(self, k: u32) -> BigUint {
        num_traits::pow(self.big(), k as usize)
    }
}

impl TryFrom<u32> for Base {
    type Error = Error;

    fn try_from(b: u32) -> Result<Self> {
        Base::new(b)
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Digits of a number in some base, least significant first.
///
/// Zero is the empty string; canonical strings never end in a zero digit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitString {
    base: Base,
    digits: Vec<u32>,
}

impl DigitString {
    /// Builds a digit string from raw digits (least significant first). Trailing
    /// zeros are kept, so non-canonical strings can be represented.
    pub fn new(base: Base, digits: Vec<u32>) -> Result<Self> {
        if let Some(&digit) = digits.iter().find(|&&d| d >= base.get()) {
            return Err(Error::DigitOutOfRange {
                digit,
                base: base.get(),
            });
        }
        Ok(DigitString { base, digits })
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.digits.last() != Some(&0)
    }

    /// Appends a zero in the most significant position.
    pub fn with_leading_zero(mut self) -> Self {
        self.digits.push(0);
        self
    }

    pub fn into_digits(self) -> Vec<u32> {
        self.digits
    }
}

/// Canonical base-`b` expansion of `n`.
pub fn to_digits(n: &BigCount, base: Base) -> DigitString {
    let b = base.get();
    let digits = if n.is_zero() {
        Vec::new()
    } else if b <= 256 {
        n.to_radix_le(b).into_iter().map(u32::from).collect()
    } else {
        let mut rest = n.clone();
        let big_b = base.big();
        let mut digits = Vec::new();
        while !rest.is_zero() {
            let (q, r) = rest.div_rem(&big_b);
            digits.push(r.iter_u32_digits().next().unwrap_or(0));
            rest = q;
        }
        digits
    };
    DigitString { base, digits }
}

/// `sum d_i * b^i`.
pub fn value(d: &DigitString) -> BigCount {
    let b = d.base.big();
    d.digits
        .iter()
        .rev()
        .fold(BigUint::zero(), |acc, &digit| acc * &b + digit)
}

/// Reads the binary digits of `n` as a base-`b` numeral.
pub fn psi(n: &BigCount, base: Base) -> BigCount {
    let b = base.big();
    (0..n.bits())
        .rev()
        .fold(BigUint::zero(), |acc, i| acc * &b + u32::from(n.bit(i)))
}

/// Clamps every base-`b` digit of `n` to `{0, 1}`. The result never exceeds `n`.
pub fn zero_one_shadow(n: &BigCount, base: Base) -> BigCount {
    value(&clamped(n, base, base))
}

/// Binary number whose bits are the clamped base-`b` digits of `n`.
pub fn zero_one_binary(n: &BigCount, base: Base) -> BigCount {
    value(&clamped(n, base, Base::BINARY))
}

fn clamped(n: &BigCount, from: Base, to: Base) -> DigitString {
    let digits = to_digits(n, from)
        .into_digits()
        .into_iter()
        .map(|d| d.min(1))
        .collect();
    DigitString { base: to, digits }
}

/// True if every base-`b` digit of `n` is 0 or 1.
pub fn is_zero_one(n: &BigCount, base: Base) -> bool {
    to_digits(n, base).digits.iter().all(|&d| d <= 1)
}
