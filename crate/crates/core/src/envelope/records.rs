//! Record maxima on `[b^{k-2}, b^{k-1})` and their convergence towards `H`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};

use super::verify::envelope_report;
use super::{record_position, Envelope, PowerLaw};
use crate::linrep::stern_rep;
use crate::stern::SternTable;
use crate::{Base, BigCount, BigRational, Error, Real, Report, Result};

/// Largest `k` for which `s_b(a_k)` is re-derived with the matrix product in
/// [`convergence_report`].
pub const MATRIX_CHECK_MAX_K: u32 = 200;

#[derive(Debug, Clone)]
pub struct RecordEntry {
    pub k: u32,
    pub a_k: BigCount,
    pub f_k: BigCount,
    /// `F_k / H(a_k)`
    pub ratio_to_h: Real,
    /// Whether the whole interval `[b^{k-2}, b^{k-1})` was scanned.
    pub exhaustive: bool,
}

#[derive(Debug, Clone)]
pub struct RecordScan {
    pub entries: Vec<RecordEntry>,
    pub report: Report,
}

/// For `2 <= k <= k_max`: when `b^{k-1} <= scan_limit`, scans `[b^{k-2}, b^{k-1})`
/// and checks that the maximum of `s_b` is `F_k`, first reached at `a_k`.
/// Beyond the scan limit only `s_b(a_k) = F_k` is checked, by the matrix product.
pub fn verify_records(base: Base, k_max: u32, scan_limit: u64) -> Result<RecordScan> {
    if k_max < 2 {
        return Err(Error::IndexTooSmall {
            index: k_max.into(),
            min: 2,
        });
    }
    let b = base.get() as u64;
    let interval_end = |k: u32| b.checked_pow(k - 1).filter(|&e| e <= scan_limit);
    let table_end = (2..=k_max).filter_map(interval_end).max();
    let table = match table_end {
        Some(end) => Some(SternTable::new(base, end - 1)?),
        None => None,
    };
    let law = PowerLaw::new(base)?;
    let rep = stern_rep(base);
    let mut env = Envelope::new(base);
    let mut report = Report::new("records");
    let mut entries = Vec::new();

    for k in 2..=k_max {
        let a_k = record_position(base, k)?;
        let f_k = env.fib(k.into()).clone();
        let exhaustive = match (interval_end(k), &table) {
            (Some(end), Some(table)) => {
                let start = end / b;
                let (mut best, mut first) = (0u64, start);
                for n in start..end {
                    let v = table.get(n);
                    if v > best {
                        best = v;
                        first = n;
                    }
                }
                report.check(
                    BigUint::from(best) == f_k,
                    || format!("k={k}"),
                    || format!("maximum on [{start}, {end}) is {best}, expected F_{k} = {f_k}"),
                );
                report.check(
                    BigUint::from(first) == a_k,
                    || format!("k={k}"),
                    || format!("maximum first reached at {first}, expected a_{k} = {a_k}"),
                );
                true
            }
            _ => {
                let s = rep.evaluate_at(&a_k);
                report.check(
                    s == BigInt::from(f_k.clone()),
                    || format!("k={k}"),
                    || format!("s_b(a_{k}) = {s}, expected F_{k} = {f_k}"),
                );
                false
            }
        };
        let h_at = law.eval(&Real::from_int(a_k.clone()))?;
        let ratio_to_h = Real::from_int(f_k.clone()).div(&h_at)?;
        entries.push(RecordEntry {
            k,
            a_k,
            f_k,
            ratio_to_h,
            exhaustive,
        });
    }
    Ok(RecordScan { entries, report })
}

#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub k: u32,
    pub a_k: BigCount,
    pub f_k: BigCount,
    /// `h(a_k)`, exact.
    pub h_at_a: BigRational,
    /// `F_k / H(a_k)`
    pub ratio_to_h: Real,
    /// `h(a_k) - H(a_k)`
    pub h_minus_h: Real,
    /// `s_b(a_k) = F_k` by the matrix product, for `k <= MATRIX_CHECK_MAX_K`.
    pub matrix_check: Option<bool>,
}

impl ConvergenceRow {
    /// `s_b(a_k) / h(a_k)`, which is exactly 1 for even `k`.
    pub fn ratio_to_envelope(&self) -> BigRational {
        BigRational::from_integer(self.f_k.clone().into()) / &self.h_at_a
    }
}

/// Rows `(k, a_k, F_k, F_k / H(a_k), h(a_k) - H(a_k))` for `2 <= k <= k_max`.
pub fn convergence_report(base: Base, k_max: u32) -> Result<Vec<ConvergenceRow>> {
    let law = PowerLaw::new(base)?;
    let rep = stern_rep(base);
    let mut env = Envelope::new(base);
    (2..=k_max)
        .map(|k| {
            let a_k = record_position(base, k)?;
            let f_k = env.fib(k.into()).clone();
            let h_at_a = env.h(&BigRational::from_integer(a_k.clone().into()))?;
            let big_h = law.eval(&Real::from_int(a_k.clone()))?;
            let ratio_to_h = Real::from_int(f_k.clone()).div(&big_h)?;
            let h_minus_h = &Real::from_ratio(&h_at_a) - &big_h;
            let matrix_check = (k <= MATRIX_CHECK_MAX_K)
                .then(|| rep.evaluate_at(&a_k) == BigInt::from(f_k.clone()));
            Ok(ConvergenceRow {
                k,
                a_k,
                f_k,
                h_at_a,
                ratio_to_h,
                h_minus_h,
                matrix_check,
            })
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct ScanMax {
    /// Smallest `m` attaining the maximum of `s_b(m) / H(m)`.
    pub argmax: u64,
    /// The maximum, re-evaluated in high precision at `argmax`.
    pub max_ratio: Real,
    /// The maximum as found by the machine-precision scan.
    pub max_ratio_f64: f64,
    /// True if the maximum is provably above 1.
    pub exceeds_one: bool,
    /// The exact bound `s_b(m) <= h(m)` over the same range.
    pub envelope: Report,
}

/// Maximizes `s_b(m) / H(m)` over `1 <= m <= n_max`.
///
/// The scan runs in `f64` (relative error well below `1e-12` for these sizes);
/// the winner is then recomputed with [`Real`].
pub fn scan_normalized_max(base: Base, n_max: u64) -> Result<ScanMax> {
    if n_max == 0 {
        return Err(Error::NotPositive("scan bound"));
    }
    let table = SternTable::new(base, n_max)?;
    let law = PowerLaw::new(base)?;
    let (mut argmax, mut best) = (1u64, f64::NEG_INFINITY);
    for m in 1..=n_max {
        let ratio = table.get(m) as f64 / law.eval_f64(m as f64);
        if ratio > best {
            best = ratio;
            argmax = m;
        }
    }
    let s = table.get(argmax);
    let max_ratio = Real::from_int(s).div(&law.eval(&Real::from_int(argmax))?)?;
    let exceeds_one =
        max_ratio.certain_cmp(&Real::from_int(1)) == Some(core::cmp::Ordering::Greater);
    Ok(ScanMax {
        argmax,
        max_ratio,
        max_ratio_f64: best,
        exceeds_one,
        envelope: envelope_report(&table),
    })
}
