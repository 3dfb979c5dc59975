//! The digit recurrence for `s_b`:
//!
//! ```text
//! s_b(0) = 0,  s_b(1) = 1,
//! s_b(bn) = s_b(n),  s_b(bn+1) = s_b(n) + s_b(n+1),  s_b(bn+i) = s_b(n+1)  (2 <= i < b).
//! ```

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::{numeral, Base, BigCount, Error, Report, Result};

/// Largest `n_max` accepted by [`s_range`] unless a limit is passed explicitly.
pub const DEFAULT_TABULATION_LIMIT: u64 = 1 << 26;

/// Insert-only cache of `s_b` values for isolated (possibly huge) indices.
///
/// Recursion depth is `O(log_b n)`. The cache is not synchronized; keep one
/// per worker.
#[derive(Debug, Clone)]
pub struct SternMemo {
    base: Base,
    cache: BTreeMap<BigCount, BigCount>,
}

impl SternMemo {
    pub fn new(base: Base) -> Self {
        SternMemo {
            base,
            cache: BTreeMap::new(),
        }
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn len(&self) -> usize {
        self.cache.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cache.is_empty()
    }

    pub fn s(&mut self, n: &BigCount) -> BigCount {
        if n <= &BigUint::one() {
            return n.clone();
        }
        if let Some(v) = self.cache.get(n) {
            return v.clone();
        }
        let (q, r) = n.div_rem(&self.base.big());
        let v = if r.is_zero() {
            self.s(&q)
        } else if r.is_one() {
            let next = &q + 1u32;
            self.s(&q) + self.s(&next)
        } else {
            self.s(&(q + 1u32))
        };
        self.cache.insert(n.clone(), v.clone());
        v
    }

    pub fn s_u64(&mut self, n: u64) -> BigCount {
        self.s(&BigUint::from(n))
    }
}

/// `s_b(n)` by memoized recursion.
pub fn s(base: Base, n: &BigCount) -> BigCount {
    SternMemo::new(base).s(n)
}

/// Dense bottom-up table of `s_b(0..=n_max)`.
///
/// Entries are stored as `u64`: `s_b(n) <= n` for every `n`, so they cannot
/// overflow while the index itself fits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SternTable {
    base: Base,
    values: Vec<u64>,
}

impl SternTable {
    pub fn new(base: Base, n_max: u64) -> Result<Self> {
        Self::with_limit(base, n_max, DEFAULT_TABULATION_LIMIT)
    }

    pub fn with_limit(base: Base, n_max: u64, limit: u64) -> Result<Self> {
        if n_max > limit {
            return Err(Error::Capacity {
                requested: n_max,
                limit,
            });
        }
        let len = usize::try_from(n_max)
            .ok()
            .and_then(|n| n.checked_add(1))
            .ok_or(Error::Capacity {
                requested: n_max,
                limit,
            })?;
        let b = base.get() as usize;
        let mut values = Vec::with_capacity(len);
        values.push(0u64);
        if len > 1 {
            values.push(1);
        }
        for n in 2..len {
            let (q, r) = (n / b, n % b);
            let v = match r {
                0 => values[q],
                1 => values[q] + values[q + 1],
                _ => values[q + 1],
            };
            values.push(v);
        }
        Ok(SternTable { base, values })
    }

    pub fn base(&self) -> Base {
        self.base
    }

    /// Largest tabulated index.
    pub fn n_max(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    #[inline]
    pub fn get(&self, n: u64) -> u64 {
        self.values[n as usize]
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }
}

/// `[s_b(0), ..., s_b(n_max)]`, bounded by [`DEFAULT_TABULATION_LIMIT`].
pub fn s_range(base: Base, n_max: u64) -> Result<Vec<BigCount>> {
    s_range_with_limit(base, n_max, DEFAULT_TABULATION_LIMIT)
}

pub fn s_range_with_limit(base: Base, n_max: u64, limit: u64) -> Result<Vec<BigCount>> {
    let table = SternTable::with_limit(base, n_max, limit)?;
    Ok(table.values.iter().map(|&v| BigUint::from(v)).collect())
}

/// Checks the five composite relations obtained by unrolling the recurrence
/// two or three levels, for `1 <= j <= j_max`:
///
/// ```text
/// s(b^3 j + 1)             = 2 s(j) + s(bj + 1)
/// s(b^4 j + b + 1)         = s(j) + 2 s(b^2 j + 1)
/// s(b^4 j + b^3 + b + 1)   = s(b^3 j + b^2 + 1) + s(b^2 j + b + 1)
/// s(b^3 j + b^2 + 1)       = s(bj + 1) + s(b^2 j + b + 1)
/// s(b^3 j + b^2 + b + 1)   = s(b^2 j + b + 1) + s(j + 1)
/// ```
pub fn check_case_identities(base: Base, j_max: u64) -> Report {
    let mut report = Report::new("identities");
    let mut memo = SternMemo::new(base);
    let b = base.big();
    let b2 = &b * &b;
    let b3 = &b2 * &b;
    let b4 = &b3 * &b;
    let one = BigUint::one();

    for j in 1..=j_max {
        let j = BigUint::from(j);
        let mut s = |n: &BigUint| memo.s(n);

        let sj = s(&j);
        let sj1 = s(&(&j + 1u32));
        let s_bj1 = s(&(&b * &j + 1u32));
        let s_b2j1 = s(&(&b2 * &j + 1u32));
        let s_b2jb1 = s(&(&b2 * &j + &b + 1u32));
        let s_b3jb21 = s(&(&b3 * &j + &b2 + 1u32));

        let cases = [
            (
                "b^3j+1",
                s(&(&b3 * &j + &one)),
                BigUint::from(2u32) * &sj + &s_bj1,
            ),
            (
                "b^4j+b+1",
                s(&(&b4 * &j + &b + 1u32)),
                &sj + BigUint::from(2u32) * &s_b2j1,
            ),
            (
                "b^4j+b^3+b+1",
                s(&(&b4 * &j + &b3 + &b + 1u32)),
                &s_b3jb21 + &s_b2jb1,
            ),
            ("b^3j+b^2+1", s_b3jb21.clone(), &s_bj1 + &s_b2jb1),
            (
                "b^3j+b^2+b+1",
                s(&(&b3 * &j + &b2 + &b + 1u32)),
                &s_b2jb1 + &sj1,
            ),
        ];
        for (name, lhs, rhs) in cases {
            report.check(
                lhs == rhs,
                || format!("j={j}"),
                || format!("s({name}) = {lhs} but the composite side is {rhs}"),
            );
        }
    }
    report
}

/// Checks `s_b(psi_b(n)) = s_2(n)` (binary digits reread in base `b`) and the
/// domination `s_b(n) <= s_2(t)`, where `t` has the clamped digits
/// `min(e_i, 1)` of `n` as binary digits, for `0 <= n < n_end`.
pub fn verify_embedding(base: Base, n_end: u64) -> Report {
    let mut report = Report::new("embedding");
    let mut memo = SternMemo::new(base);
    let mut binary = SternMemo::new(Base::BINARY);
    for n in 0..n_end {
        let big_n = BigUint::from(n);
        let lifted = memo.s(&numeral::psi(&big_n, base));
        let stern = binary.s(&big_n);
        report.check(
            lifted == stern,
            || format!("n={n}"),
            || format!("s_b(psi(n)) = {lifted} but s_2(n) = {stern}"),
        );
        let direct = memo.s(&big_n);
        let dominating = binary.s(&numeral::zero_one_binary(&big_n, base));
        report.check(
            direct <= dominating,
            || format!("n={n}"),
            || format!("s_b(n) = {direct} exceeds the zero-one bound {dominating}"),
        );
    }
    report
}

/// Convenience for small indices.
pub fn s_u64(base: Base, n: u64) -> u64 {
    s(base, &BigUint::from(n))
        .to_u64()
        .expect("s_b(n) <= n fits in u64")
}
