//! Verification reports. A violated check becomes an entry here, never a panic.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Where the check failed, e.g. `m=1365` or `j=17`.
    pub at: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub suite: &'static str,
    /// Number of individual relations evaluated.
    pub checked: u64,
    /// Equalities confirmed where they were expected to be tight.
    pub tight: u64,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new(suite: &'static str) -> Self {
        Report {
            suite,
            checked: 0,
            tight: 0,
            violations: Vec::new(),
        }
    }

    /// Records one evaluated relation; a failing one is stored with its location.
    pub fn check(
        &mut self,
        ok: bool,
        at: impl FnOnce() -> String,
        detail: impl FnOnce() -> String,
    ) {
        self.checked += 1;
        if !ok {
            self.violations.push(Violation {
                at: at(),
                detail: detail(),
            });
        }
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn absorb(&mut self, other: Report) {
        self.checked += other.checked;
        self.tight += other.tight;
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "suite={} checked={} tight={} violations={}",
            self.suite,
            self.checked,
            self.tight,
            self.violations.len()
        )
    }
}
