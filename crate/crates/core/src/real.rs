//! Fixed-point reals with a rigorous error bound.
//!
//! A [`Real`] is `mant · 2^-PRECISION_BITS ± err · 2^-PRECISION_BITS`. Every
//! operation propagates the input bounds and adds its own rounding error, so
//! the true value always lies in `[lower, upper]`. Transcendental functions run
//! with [`GUARD_BITS`] extra bits; their internal truncation error stays far
//! below one unit of the final precision, and is charged as two units.
//!
//! 320 fractional bits is about 96 decimal digits, comfortably more than the
//! 25+ digits the ratio and constant computations need.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{BigRational, Error, Result};

pub const PRECISION_BITS: u64 = 320;
pub const GUARD_BITS: u64 = 64;

/// Charged for the internal truncation of `ln`, `exp` and `sqrt`.
const INTERNAL_ULPS: u32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Real {
    mant: BigInt,
    err: BigUint,
}

fn pow2(bits: u64) -> BigUint {
    BigUint::one() << bits
}

/// `round(x / 2^s)`, ties toward +∞.
fn round_shr(x: &BigInt, s: u64) -> BigInt {
    if s == 0 {
        return x.clone();
    }
    let half = BigInt::one() << (s - 1);
    (x + half).div_floor(&(BigInt::one() << s))
}

/// `round(a / b)` for `b > 0`, ties toward +∞.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let twice: BigInt = a * 2;
    (twice + b).div_floor(&(b * 2))
}

fn ceil_shr(x: &BigUint, s: u64) -> BigUint {
    (x + pow2(s) - 1u32) >> s
}

fn ceil_div(a: &BigUint, b: &BigUint) -> BigUint {
    a.div_ceil(b)
}

/// `2·atanh(z)` for `0 <= z < 1/2`, with `z` and the result scaled by `2^bits`.
fn two_atanh(z: &BigInt, bits: u64) -> BigInt {
    let zsq = (z * z) >> bits;
    let mut power = z.clone();
    let mut sum = z.clone();
    let mut odd = 1u32;
    loop {
        power = (&power * &zsq) >> bits;
        if power.is_zero() {
            break;
        }
        odd += 2;
        sum += &power / odd;
    }
    sum << 1
}

/// `ln 2` scaled by `2^bits`, via `2·atanh(1/3)`.
fn ln2_scaled(bits: u64) -> BigInt {
    two_atanh(&(BigInt::from(pow2(bits)) / 3), bits)
}

impl Real {
    pub fn zero() -> Self {
        Real {
            mant: BigInt::zero(),
            err: BigUint::zero(),
        }
    }

    pub fn from_int(x: impl Into<BigInt>) -> Self {
        Real {
            mant: x.into() << PRECISION_BITS,
            err: BigUint::zero(),
        }
    }

    pub fn from_ratio(r: &BigRational) -> Self {
        let scaled = r.numer() << PRECISION_BITS;
        let (q, rem) = scaled.div_rem(r.denom());
        let exact = rem.is_zero();
        Real {
            mant: if exact {
                q
            } else {
                round_div(&scaled, r.denom())
            },
            err: if exact {
                BigUint::zero()
            } else {
                BigUint::one()
            },
        }
    }

    /// Raw fixed-point parts: `(mantissa, error)` in units of `2^-PRECISION_BITS`.
    pub fn parts(&self) -> (&BigInt, &BigUint) {
        (&self.mant, &self.err)
    }

    /// Midpoint as an exact rational.
    pub fn to_ratio(&self) -> BigRational {
        BigRational::new(self.mant.clone(), BigInt::from(pow2(PRECISION_BITS)))
    }

    /// Absolute error bound as an exact rational.
    pub fn error_bound(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.err.clone()),
            BigInt::from(pow2(PRECISION_BITS)),
        )
    }

    pub fn lower(&self) -> BigRational {
        self.to_ratio() - self.error_bound()
    }

    pub fn upper(&self) -> BigRational {
        self.to_ratio() + self.error_bound()
    }

    /// True if the whole interval lies strictly above zero.
    pub fn is_certainly_positive(&self) -> bool {
        self.mant.sign() == Sign::Plus && self.mant.magnitude() > &self.err
    }

    /// Compares intervals; `None` when they overlap.
    pub fn certain_cmp(&self, other: &Real) -> Option<Ordering> {
        let diff = self - other;
        if diff.is_certainly_positive() {
            Some(Ordering::Greater)
        } else if (-diff).is_certainly_positive() {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    /// True if `|self - other|` is provably at most `tol`.
    pub fn within(&self, other: &Real, tol: &BigRational) -> bool {
        let diff = self - other;
        let worst = diff.to_ratio().abs() + diff.error_bound();
        &worst <= tol
    }

    pub fn mul(&self, other: &Real) -> Real {
        let mant = round_shr(&(&self.mant * &other.mant), PRECISION_BITS);
        let spread = self.mant.magnitude() * &other.err
            + other.mant.magnitude() * &self.err
            + &self.err * &other.err;
        Real {
            mant,
            err: ceil_shr(&spread, PRECISION_BITS) + 1u32,
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Real {
        Real {
            mant: &self.mant * k,
            err: &self.err * k.magnitude(),
        }
    }

    pub fn div(&self, other: &Real) -> Result<Real> {
        let den_mag = other.mant.magnitude();
        if den_mag <= &other.err {
            return Err(Error::Precision("division by an interval containing zero"));
        }
        let q = round_div(&(&self.mant << PRECISION_BITS), &other.mant.abs());
        let q = if other.mant.is_negative() { -q } else { q };
        let num = (&self.err << PRECISION_BITS) + (q.magnitude() + 1u32) * &other.err;
        let err = ceil_div(&num, &(den_mag - &other.err)) + 1u32;
        Ok(Real { mant: q, err })
    }

    pub fn div_int(&self, k: &BigInt) -> Result<Real> {
        if k.is_zero() {
            return Err(Error::Precision("division by zero"));
        }
        let q = round_div(&self.mant, &k.abs());
        let q = if k.is_negative() { -q } else { q };
        Ok(Real {
            mant: q,
            err: ceil_div(&self.err, k.magnitude()) + 1u32,
        })
    }

    pub fn sqrt(&self) -> Result<Real> {
        if !self.is_certainly_positive() {
            return Err(Error::NotPositive("sqrt argument"));
        }
        let m = self.mant.magnitude();
        let root = (m << PRECISION_BITS).sqrt();
        let low_root = ((m - &self.err) << PRECISION_BITS).sqrt();
        if low_root.is_zero() {
            return Err(Error::Precision("sqrt of a value below resolution"));
        }
        // d sqrt(x) <= dx / (2 sqrt(x - err))
        let err = ceil_div(&(&self.err << PRECISION_BITS), &(low_root << 1u32)) + 1u32;
        Ok(Real {
            mant: BigInt::from(root),
            err,
        })
    }

    /// Natural logarithm.
    pub fn ln(&self) -> Result<Real> {
        if !self.is_certainly_positive() {
            return Err(Error::NotPositive("logarithm argument"));
        }
        let work = PRECISION_BITS + GUARD_BITS;
        let m = self.mant.magnitude();
        let x = m << GUARD_BITS;
        // x = 2^k · y with y in [1, 2)
        let k = x.bits() as i64 - 1 - work as i64;
        let y = if k >= 0 {
            &x >> k as u64
        } else {
            &x << (-k) as u64
        };
        let one = BigInt::from(pow2(work));
        let y = BigInt::from(y);
        let z = round_div(&((&y - &one) << work), &(&y + &one));
        let ln_y = two_atanh(&z, work);
        let total = ln2_scaled(work) * k + ln_y;
        let spread = ceil_div(&(&self.err << PRECISION_BITS), &(m - &self.err));
        Ok(Real {
            mant: round_shr(&total, GUARD_BITS),
            err: spread + INTERNAL_ULPS,
        })
    }

    /// `e^self`.
    pub fn exp(&self) -> Result<Real> {
        if self.err.bits() + 2 >= PRECISION_BITS {
            return Err(Error::Precision("exponent too uncertain"));
        }
        let base_work = PRECISION_BITS + GUARD_BITS;
        let x0 = &self.mant << GUARD_BITS;
        let n = round_div(&x0, &ln2_scaled(base_work));
        let n = n
            .to_i64()
            .ok_or(Error::Precision("exponent out of range"))?;
        if n < -(PRECISION_BITS as i64) - 2 {
            // below half a unit of the final precision
            return Ok(Real {
                mant: BigInt::zero(),
                err: BigUint::one() + INTERNAL_ULPS,
            });
        }
        let work = base_work + n.max(0) as u64;
        let one = BigInt::from(pow2(work));
        let r = (&self.mant << (work - PRECISION_BITS)) - ln2_scaled(work) * n;
        let mut sum = one.clone();
        let mut term = one;
        let mut i = 1u32;
        loop {
            term = ((&term * &r) >> work) / i;
            if term.is_zero() {
                break;
            }
            sum += &term;
            i += 1;
        }
        let shift = (GUARD_BITS as i64 + n.max(0) - n) as u64;
        let mant = round_shr(&sum, shift);
        // e^(x+d) - e^x <= 2 e^x |d| while |d| < 1/2
        let spread = ceil_shr(&(mant.magnitude() * &self.err * 2u32), PRECISION_BITS);
        Ok(Real {
            mant,
            err: spread + INTERNAL_ULPS,
        })
    }

    /// `self^exponent = e^(exponent · ln self)` for positive `self`.
    pub fn powf(&self, exponent: &Real) -> Result<Real> {
        exponent.mul(&self.ln()?).exp()
    }

    /// Nearest `f64` to the midpoint.
    pub fn to_f64(&self) -> f64 {
        let mag = self.mant.magnitude();
        let bits = mag.bits();
        let (top, shift) = if bits > 64 {
            (mag >> (bits - 64), bits as i64 - 64)
        } else {
            (mag.clone(), 0)
        };
        let v = libm::ldexp(
            top.to_f64().unwrap_or(f64::NAN),
            (shift - PRECISION_BITS as i64) as i32,
        );
        if self.mant.is_negative() {
            -v
        } else {
            v
        }
    }

    /// Decimal rendering rounded to `sig` significant digits. Plain notation
    /// for exponents in `-7..21`, scientific otherwise.
    pub fn to_decimal(&self, sig: usize) -> String {
        let sig = sig.max(1);
        if self.mant.is_zero() {
            return String::from("0");
        }
        let mag = BigInt::from(self.mant.magnitude().clone());
        let den = BigInt::from(pow2(PRECISION_BITS));
        let ten = BigInt::from(10u32);
        let low = num_traits::pow(ten.clone(), sig - 1);
        let high = &low * 10;
        let mut exp10 =
            ((mag.bits() as f64 - 1.0 - PRECISION_BITS as f64) * core::f64::consts::LOG10_2) as i64;
        let digits = loop {
            let t = sig as i64 - 1 - exp10;
            let d = if t >= 0 {
                round_div(&(&mag * num_traits::pow(ten.clone(), t as usize)), &den)
            } else {
                round_div(&mag, &(&den * num_traits::pow(ten.clone(), (-t) as usize)))
            };
            if d >= high {
                exp10 += 1;
            } else if d < low {
                exp10 -= 1;
            } else {
                break d;
            }
        };
        let digits: Vec<u8> = digits.to_str_radix(10).into_bytes();
        let mut out = String::new();
        if self.mant.is_negative() {
            out.push('-');
        }
        let push = |out: &mut String, ds: &[u8]| ds.iter().for_each(|&c| out.push(c as char));
        if (-7..21).contains(&exp10) {
            if exp10 < 0 {
                out.push_str("0.");
                (0..(-exp10 - 1)).for_each(|_| out.push('0'));
                push(&mut out, &digits);
            } else {
                let int_len = exp10 as usize + 1;
                if int_len >= digits.len() {
                    push(&mut out, &digits);
                    (0..int_len - digits.len()).for_each(|_| out.push('0'));
                } else {
                    push(&mut out, &digits[..int_len]);
                    out.push('.');
                    push(&mut out, &digits[int_len..]);
                }
            }
        } else {
            push(&mut out, &digits[..1]);
            if digits.len() > 1 {
                out.push('.');
                push(&mut out, &digits[1..]);
            }
            out.push('e');
            out.push_str(&alloc::format!("{exp10}"));
        }
        out
    }
}

impl Add for &Real {
    type Output = Real;

    fn add(self, other: &Real) -> Real {
        Real {
            mant: &self.mant + &other.mant,
            err: &self.err + &other.err,
        }
    }
}

impl Sub for &Real {
    type Output = Real;

    fn sub(self, other: &Real) -> Real {
        Real {
            mant: &self.mant - &other.mant,
            err: &self.err + &other.err,
        }
    }
}

impl Neg for Real {
    type Output = Real;

    fn neg(self) -> Real {
        Real {
            mant: -self.mant,
            err: self.err,
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(f.precision().unwrap_or(30)))
    }
}

/// `sqrt 5`.
pub fn sqrt5() -> Real {
    Real::from_int(5).sqrt().expect("5 > 0")
}

/// The golden ratio `(1 + sqrt 5) / 2`.
pub fn golden_ratio() -> Real {
    (&Real::from_int(1) + &sqrt5())
        .div_int(&BigInt::from(2))
        .expect("nonzero divisor")
}
