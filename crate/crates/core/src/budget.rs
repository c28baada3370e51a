use crate::error::{Error, Result};

/// Environment variable overriding enumeration budgets.
pub const BUDGET_ENV: &str = "KRASNER_BUDGET";

/// Upper bound on the number of points an exhaustive search may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub limit: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { limit: 1_000_000 }
    }
}

impl Budget {
    pub fn new(limit: u128) -> Self {
        Budget { limit }
    }

    /// The default budget, replaced by `KRASNER_BUDGET` when that parses.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Budget::new)
            .unwrap_or_default()
    }

    pub fn check(&self, needed: u128) -> Result<()> {
        if needed > self.limit {
            return Err(Error::BudgetExceeded { needed, budget: self.limit });
        }
        Ok(())
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub fn search_size(base: u128, exp: usize) -> u128 {
    u32::try_from(exp).ok().and_then(|e| base.checked_pow(e)).unwrap_or(u128::MAX)
}
