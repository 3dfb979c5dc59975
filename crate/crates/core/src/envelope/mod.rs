//! Record values, the piecewise-linear envelope `h` and the power-law bound `H`.
//!
//! `h` interpolates the knots `(ã_k, F_k)` with `ã_k = (b^k - 1)/(b^2 - 1)` and
//! `F_k` the Fibonacci numbers. It bounds `s_b` from above and touches it at
//! every `ã_{2k}`.

mod bound;
mod records;
mod verify;

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::{Base, BigCount, BigRational, Error, Result};

pub use bound::{maximal_order_constant, power_law_bound, PowerLaw};
pub use records::{
    convergence_report, scan_normalized_max, verify_records, ConvergenceRow, RecordEntry,
    RecordScan, ScanMax,
};
pub use verify::{
    measure_strengthening_unrestricted, verify_envelope, verify_h_recurrence, verify_strengthening,
};

/// Fibonacci number `F_k` for `k >= -1`, with `F_{-1} = 1`.
pub fn fib(k: i64) -> Result<BigCount> {
    if k < -1 {
        return Err(Error::IndexTooSmall { index: k, min: -1 });
    }
    let (mut prev, mut cur) = (BigUint::one(), BigUint::zero());
    for _ in 0..k {
        let next = &prev + &cur;
        prev = core::mem::replace(&mut cur, next);
    }
    Ok(if k == -1 { prev } else { cur })
}

/// `ã_k = (b^k - 1)/(b^2 - 1)`.
pub fn tilde_knot(base: Base, k: u32) -> BigRational {
    let b = BigInt::from(base.get());
    BigRational::new(num_traits::pow(b.clone(), k as usize) - 1, &b * &b - 1)
}

/// Smallest `n` in `[b^{k-2}, b^{k-1})` attaining the maximum `F_k` of `s_b`:
/// `ã_k` for even `k`, `ã_k + b/(b+1)` for odd `k`.
pub fn record_position(base: Base, k: u32) -> Result<BigCount> {
    if k < 2 {
        return Err(Error::IndexTooSmall {
            index: k.into(),
            min: 2,
        });
    }
    let b = BigInt::from(base.get());
    let mut a = tilde_knot(base, k);
    if k % 2 == 1 {
        a += BigRational::new(b.clone(), b + 1);
    }
    debug_assert!(a.is_integer());
    Ok(a.to_integer()
        .to_biguint()
        .expect("record positions are positive"))
}

/// One linear piece of `h`: `h(x) = (slope_num · x + intercept_num) / den` on
/// `[ã_k, ã_{k+1}]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub k: usize,
    pub slope_num: BigInt,
    pub intercept_num: BigInt,
    pub den: BigInt,
}

impl Segment {
    pub fn eval(&self, x: &BigRational) -> BigRational {
        BigRational::new(
            &self.slope_num * x.numer() + &self.intercept_num * x.denom(),
            &self.den * x.denom(),
        )
    }

    /// Numerator of `h(m)` over [`Segment::den`] for an integer `m`.
    pub fn numer_at(&self, m: &BigInt) -> BigInt {
        &self.slope_num * m + &self.intercept_num
    }

    pub fn slope(&self) -> BigRational {
        BigRational::new(self.slope_num.clone(), self.den.clone())
    }
}

/// Lazily extended knot list `(ã_k, F_k)` defining `h` for one base.
///
/// Extension needs `&mut self`; share by confining one envelope per worker.
#[derive(Debug, Clone)]
pub struct Envelope {
    base: Base,
    knots: Vec<BigRational>,
    /// `fibs[i] = F_{i-1}`
    fibs: Vec<BigUint>,
}

impl Envelope {
    pub fn new(base: Base) -> Self {
        let b = BigInt::from(base.get());
        Envelope {
            base,
            knots: vec![
                BigRational::zero(),
                BigRational::new(BigInt::one(), b + 1),
                BigRational::one(),
            ],
            fibs: vec![
                BigUint::one(),
                BigUint::zero(),
                BigUint::one(),
                BigUint::one(),
            ],
        }
    }

    pub fn base(&self) -> Base {
        self.base
    }

    /// Makes knots `0..=k` available.
    pub fn ensure(&mut self, k: usize) {
        let b2 = BigInt::from(self.base.get()).pow(2);
        while self.knots.len() <= k {
            let n = self.knots.len();
            let next = &self.knots[n - 2] * &b2 + BigRational::one();
            self.knots.push(next);
        }
        while self.fibs.len() <= k + 2 {
            let n = self.fibs.len();
            let next = &self.fibs[n - 1] + &self.fibs[n - 2];
            self.fibs.push(next);
        }
    }

    pub fn knot(&mut self, k: usize) -> &BigRational {
        self.ensure(k);
        &self.knots[k]
    }

    /// `F_k` for `k >= -1`.
    pub fn fib(&mut self, k: i64) -> &BigUint {
        let idx = usize::try_from(k + 1).expect("k >= -1");
        self.ensure(idx);
        &self.fibs[idx]
    }

    /// Index `k` with `ã_k <= x < ã_{k+1}`.
    pub fn segment_index(&mut self, x: &BigRational) -> usize {
        while self.knots.last().is_some_and(|last| last <= x) {
            let n = self.knots.len();
            self.ensure(n);
        }
        self.knots.partition_point(|a| a <= x) - 1
    }

    /// The explicit line through `(ã_k, F_k)` and `(ã_{k+1}, F_{k+1})`:
    ///
    /// `h(x) = F_{k-1} (b+1)/b^k · x - F_{k-1} (b^k - 1)/(b^k (b-1)) + F_k`.
    pub fn segment(&mut self, k: usize) -> Segment {
        self.ensure(k + 1);
        let b = BigInt::from(self.base.get());
        let bk = num_traits::pow(b.clone(), k);
        let f_prev = BigInt::from(self.fibs[k].clone());
        let f_k = BigInt::from(self.fibs[k + 1].clone());
        Segment {
            k,
            slope_num: &f_prev * (&b + 1) * (&b - 1),
            intercept_num: f_k * &bk * (&b - 1) - f_prev * (&bk - 1),
            den: bk * (b - 1),
        }
    }

    /// Segment containing `x`.
    pub fn segment_at(&mut self, x: &BigRational) -> Segment {
        let k = self.segment_index(x);
        self.segment(k)
    }

    /// `h(x)` for `x >= 0`.
    pub fn h(&mut self, x: &BigRational) -> Result<BigRational> {
        if x.is_negative() {
            return Err(Error::NotPositive("envelope argument"));
        }
        Ok(self.segment_at(x).eval(x))
    }

    /// Slope `F_{k-1} (b+1)/b^k` of `h` on `[ã_k, ã_{k+1}]`.
    pub fn slope(&mut self, k: usize) -> BigRational {
        self.segment(k).slope()
    }
}

/// `h(x)` for a single evaluation.
pub fn h_eval(base: Base, x: &BigRational) -> Result<BigRational> {
    Envelope::new(base).h(x)
}

pub fn h_slope(base: Base, k: usize) -> BigRational {
    Envelope::new(base).slope(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeral;

    fn base(b: u32) -> Base {
        Base::new(b).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn int(n: u64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    /// `h` on `[ã_k, ã_{k+1}]` by two-point interpolation, independent of the
    /// explicit segment formula.
    fn interpolate(b: u32, x: &BigRational) -> BigRational {
        let mut k = 0;
        while tilde_knot(base(b), k + 1) <= *x {
            k += 1;
        }
        let (a0, a1) = (tilde_knot(base(b), k), tilde_knot(base(b), k + 1));
        let f0 = BigRational::from_integer(fib(k as i64).unwrap().into());
        let f1 = BigRational::from_integer(fib(k as i64 + 1).unwrap().into());
        (x - &a0) * (&f1 - &f0) / (a1 - a0) + f0
    }

    #[test]
    fn fib_values() {
        assert_eq!(fib(-1).unwrap(), BigUint::from(1u32));
        assert_eq!(fib(0).unwrap(), BigUint::from(0u32));
        assert_eq!(fib(1).unwrap(), BigUint::from(1u32));
        assert_eq!(fib(10).unwrap(), BigUint::from(55u32));
        assert_eq!(
            fib(93).unwrap(),
            "12200160415121876738".parse::<BigUint>().unwrap()
        );
        assert!(matches!(fib(-2), Err(Error::IndexTooSmall { .. })));
    }

    #[test]
    fn knot_values() {
        for b in 2..9 {
            assert_eq!(tilde_knot(base(b), 0), rat(0, 1));
            assert_eq!(tilde_knot(base(b), 1), rat(1, b as i64 + 1));
            assert_eq!(tilde_knot(base(b), 2), rat(1, 1));
        }
        assert_eq!(tilde_knot(base(2), 4), rat(5, 1));
        assert_eq!(tilde_knot(base(3), 3), rat(13, 4));
    }

    #[test]
    fn knot_recurrence_and_order() {
        for b in 2..7 {
            let mut env = Envelope::new(base(b));
            env.ensure(40);
            for k in 0..=40 {
                assert_eq!(env.knot(k).clone(), tilde_knot(base(b), k as u32));
            }
            for k in 0..=38 {
                let expect = env.knot(k) * BigRational::from_integer((b * b).into()) + rat(1, 1);
                assert_eq!(*env.knot(k + 2), expect);
                let next = env.knot(k + 1).clone();
                assert!(*env.knot(k) < next);
            }
        }
    }

    #[test]
    fn record_positions() {
        assert_eq!(record_position(base(2), 5).unwrap(), BigUint::from(11u32));
        assert_eq!(record_position(base(2), 4).unwrap(), BigUint::from(5u32));
        for b in 2..10 {
            assert_eq!(record_position(base(b), 2).unwrap(), BigUint::from(1u32));
        }
        assert!(record_position(base(3), 1).is_err());
    }

    #[test]
    fn record_position_digit_pattern() {
        for b in 2..8 {
            for k in 2..30u32 {
                let a = record_position(base(b), k).unwrap();
                // least significant first: (1) or (1,1), then l-1 pairs (0,1)
                let mut expect = alloc::vec::Vec::new();
                let l = k / 2;
                if k % 2 == 0 {
                    expect.push(1);
                    for _ in 1..l {
                        expect.extend([0, 1]);
                    }
                } else {
                    expect.extend([1, 1]);
                    for _ in 1..l {
                        expect.extend([0, 1]);
                    }
                }
                assert_eq!(
                    numeral::to_digits(&a, base(b)).digits(),
                    &expect[..],
                    "b={b} k={k}"
                );
                let diff = BigRational::from_integer(a.into()) - tilde_knot(base(b), k);
                let shift = if k % 2 == 0 {
                    rat(0, 1)
                } else {
                    rat(b as i64, b as i64 + 1)
                };
                assert_eq!(diff, shift);
                assert!(diff.abs() <= rat(1, 1));
            }
        }
    }

    #[test]
    fn h_interpolates_knots() {
        for b in 2..7 {
            let mut env = Envelope::new(base(b));
            for k in 0..30 {
                let a = env.knot(k).clone();
                let f = BigRational::from_integer(env.fib(k as i64).clone().into());
                assert_eq!(env.h(&a).unwrap(), f);
                // both neighbouring segment formulas agree at the knot
                assert_eq!(env.segment(k).eval(&a), f);
                if k > 0 {
                    assert_eq!(env.segment(k - 1).eval(&a), f);
                }
            }
        }
    }

    #[test]
    fn h_matches_interpolation() {
        for b in [2, 3, 5] {
            let mut env = Envelope::new(base(b));
            for num in 0..400 {
                let x = rat(num * 7, 3);
                assert_eq!(env.h(&x).unwrap(), interpolate(b, &x), "b={b} x={x}");
            }
        }
    }

    #[test]
    fn h_special_values() {
        for b in 2..10u64 {
            let bb = base(b as u32);
            let b2 = BigRational::from_integer((b * b).into());
            let x = int(b * b * b + 1);
            assert_eq!(h_eval(bb, &x).unwrap(), int(5) - rat(2, 1) / &b2);
            let x = int(b.pow(4) + b) + rat(1, b as i64 + 1);
            assert_eq!(h_eval(bb, &x).unwrap(), int(8) - rat(3, 1) / &b2);
        }
    }

    #[test]
    fn h_rejects_negative() {
        assert!(h_eval(base(2), &rat(-1, 2)).is_err());
    }

    #[test]
    fn slopes() {
        for b in 2..10i64 {
            let bb = base(b as u32);
            assert_eq!(h_slope(bb, 0), rat(b + 1, 1));
            assert_eq!(h_slope(bb, 1), rat(0, 1));
            assert_eq!(h_slope(bb, 2), rat(b + 1, b * b));
            assert_eq!(h_slope(bb, 4), rat(2 * (b + 1), b.pow(4)));
            let mut env = Envelope::new(bb);
            for k in 0..60 {
                assert!(env.slope(k) >= rat(0, 1));
            }
            // nonincreasing from k = 2 on (slope_1 = 0 is the flat piece [1/(b+1), 1])
            for k in 2..60 {
                assert!(env.slope(k + 1) <= env.slope(k), "b={b} k={k}");
            }
        }
    }
}
