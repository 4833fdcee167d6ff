//! Enumeration guard shared by the exhaustive checks.
//!
//! Most operations in this crate are exact but exponential and therefore
//! guarded. The guard can be raised through the `MCSP_SOS_BUDGET`
//! environment variable (a plain integer, the maximum number of elementary
//! enumeration steps a single guarded operation may take).

use std::sync::OnceLock;

const DEFAULT_BUDGET: u64 = 10_000_000;

/// Current enumeration budget.
pub fn budget() -> u64 {
    static BUDGET: OnceLock<u64> = OnceLock::new();
    *BUDGET.get_or_init(|| {
        std::env::var("MCSP_SOS_BUDGET")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_BUDGET)
    })
}

/// Checks that `steps` enumeration steps fit in the budget.
pub fn check(steps: u64) -> Result<(), BudgetError> {
    if steps <= budget() {
        Ok(())
    } else {
        Err(BudgetError { steps, budget: budget() })
    }
}

/// Enumeration larger than the configured budget.
#[derive(Debug, Clone, thiserror::Error)]
#[error("enumeration of {steps} steps exceeds the budget of {budget} (set MCSP_SOS_BUDGET to raise)")]
pub struct BudgetError {
    pub steps: u64,
    pub budget: u64,
}
