//! Brute-force ground truth, straight from the definition: a hyper-`b`-ary
//! expansion of `n` is a finite sequence `a_0, a_1, …` with `a_i ∈ {0, …, b}`
//! and `n = Σ a_i b^i`. By definition `s_b(n + 1)` is the number of them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::linrep::stern_rep;
use crate::stern::SternTable;
use crate::{Base, BigCount, Report, Result};

/// One hyper-expansion; coefficients least significant first, no trailing zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HyperExpansion {
    base: Base,
    coeffs: Vec<u32>,
}

impl HyperExpansion {
    pub fn base(&self) -> Base {
        self.base
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// `Σ a_i b^i`.
    pub fn value(&self) -> BigCount {
        let b = self.base.big();
        self.coeffs
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &a| acc * &b + a)
    }
}

impl fmt::Display for HyperExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Choices for the lowest coefficient of an expansion of `n`: the values
/// `a_0 ∈ {0, …, b}` with `a_0 ≡ n (mod b)` and `a_0 <= n`, ascending.
fn low_digits(n: &BigUint, base: Base) -> impl Iterator<Item = u32> {
    let b = base.get();
    let r = (n % b).to_u32().unwrap_or(0);
    let second = (r == 0 && n >= &base.big()).then_some(b);
    core::iter::once(r).chain(second)
}

/// Counts hyper-expansions of `n` with a per-instance memo.
#[derive(Debug, Clone)]
pub struct ExpansionCounter {
    base: Base,
    memo: BTreeMap<BigUint, BigCount>,
}

impl ExpansionCounter {
    pub fn new(base: Base) -> Self {
        ExpansionCounter {
            base,
            memo: BTreeMap::new(),
        }
    }

    pub fn count(&mut self, n: &BigUint) -> BigCount {
        if n.is_zero() {
            return BigUint::one();
        }
        if let Some(c) = self.memo.get(n) {
            return c.clone();
        }
        let b = self.base.big();
        let mut total = BigUint::zero();
        for a0 in low_digits(n, self.base) {
            let (rest, rem) = (n - a0).div_rem(&b);
            debug_assert!(rem.is_zero());
            total += self.count(&rest);
        }
        self.memo.insert(n.clone(), total.clone());
        total
    }
}

/// Number of hyper-`b`-ary expansions of `n` (the empty expansion counts for 0).
pub fn count_expansions(base: Base, n: &BigCount) -> BigCount {
    ExpansionCounter::new(base).count(n)
}

/// `s_b(n)` through the oracle: expansions of `n - 1`, and 0 at `n = 0`.
pub fn s_via_oracle(counter: &mut ExpansionCounter, n: &BigCount) -> BigCount {
    if n.is_zero() {
        BigUint::zero()
    } else {
        counter.count(&(n - 1u32))
    }
}

/// Cross-checks the recurrence table, the matrix product and this oracle on
/// `0 <= n <= n_max`.
pub fn verify_engines(base: Base, n_max: u64) -> Result<Report> {
    let table = SternTable::new(base, n_max)?;
    let rep = stern_rep(base);
    let mut counter = ExpansionCounter::new(base);
    let mut report = Report::new("oracle");
    for n in 0..=n_max {
        let big_n = BigUint::from(n);
        let rec = table.get(n);
        let mat = rep.evaluate_at(&big_n);
        let orc = s_via_oracle(&mut counter, &big_n);
        report.check(
            mat == BigInt::from(rec) && orc == BigUint::from(rec),
            || format!("n={n}"),
            || format!("recurrence {rec}, matrix {mat}, oracle {orc}"),
        );
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Listing {
    /// Expansions in lexicographic order of their coefficient sequences.
    pub expansions: Vec<HyperExpansion>,
    /// True when more than `cap` expansions exist and the list was cut.
    pub truncated: bool,
}

/// Enumerates hyper-expansions of `n`, stopping after `cap` of them.
pub fn list_expansions(base: Base, n: &BigCount, cap: usize) -> Listing {
    let mut out = Listing {
        expansions: Vec::new(),
        truncated: false,
    };
    let mut prefix = Vec::new();
    walk(base, n, cap, &mut prefix, &mut out);
    out
}

fn walk(base: Base, n: &BigUint, cap: usize, prefix: &mut Vec<u32>, out: &mut Listing) {
    if out.truncated {
        return;
    }
    if n.is_zero() {
        if out.expansions.len() == cap {
            out.truncated = true;
        } else {
            out.expansions.push(HyperExpansion {
                base,
                coeffs: prefix.clone(),
            });
        }
        return;
    }
    let b = base.big();
    for a0 in low_digits(n, base) {
        prefix.push(a0);
        walk(base, &((n - a0) / &b), cap, prefix, out);
        prefix.pop();
    }
}
