use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable consulted for the default object budget.
pub const BUDGET_ENV: &str = "RELCAT_BUDGET";

/// Caps on the size of constructed categories and chain complexes.
///
/// Exceeding a cap is an error; constructions never truncate silently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_objects: usize,
    pub max_morphisms: usize,
    pub max_simplices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_objects: 100_000,
            max_morphisms: 1_000_000,
            max_simplices: 1_000_000,
        }
    }
}

impl Limits {
    /// Default limits with the object budget taken from `RELCAT_BUDGET` when set.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(budget) = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&b| b > 0)
        {
            limits = limits.with_budget(budget);
        }
        limits
    }

    /// Sets the object budget; morphism and simplex budgets scale by ten.
    pub fn with_budget(self, objects: usize) -> Self {
        Limits {
            max_objects: objects,
            max_morphisms: objects.saturating_mul(10),
            max_simplices: objects.saturating_mul(10),
        }
    }

    pub(crate) fn check_objects(&self, what: &str, count: usize) -> Result<()> {
        if count > self.max_objects {
            return Err(Error::SizeBudgetExceeded {
                what: format!("{what} objects"),
                limit: self.max_objects,
            });
        }
        Ok(())
    }

    pub(crate) fn check_morphisms(&self, what: &str, count: usize) -> Result<()> {
        if count > self.max_morphisms {
            return Err(Error::SizeBudgetExceeded {
                what: format!("{what} morphisms"),
                limit: self.max_morphisms,
            });
        }
        Ok(())
    }

    pub(crate) fn check_simplices(&self, what: &str, count: usize) -> Result<()> {
        if count > self.max_simplices {
            return Err(Error::SizeBudgetExceeded {
                what: format!("{what} simplices"),
                limit: self.max_simplices,
            });
        }
        Ok(())
    }
}
