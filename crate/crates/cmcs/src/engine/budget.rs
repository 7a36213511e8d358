//! Run budgets. Wall-clock budgets match the benchmark setting and may
//! overshoot by the component application in flight; iteration budgets count
//! component applications exactly and exist for reproducible tests.

use super::EngineError;
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Budget {
    WallClockMs(u64),
    Iterations(u64),
}

impl Budget {
    pub fn validate(&self) -> Result<(), EngineError> {
        if self.is_zero() {
            Err(EngineError::ZeroBudget)
        } else {
            Ok(())
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Budget::WallClockMs(0) | Budget::Iterations(0))
    }

    /// Splits the budget into a leading `fraction` share and the remainder.
    /// Either side may come out zero; callers skip zero phases.
    pub fn split(&self, fraction: f64) -> (Budget, Budget) {
        match *self {
            Budget::WallClockMs(ms) => {
                let first = (ms as f64 * fraction).round() as u64;
                let first = first.min(ms);
                (Budget::WallClockMs(first), Budget::WallClockMs(ms - first))
            }
            Budget::Iterations(n) => {
                let first = (n as f64 * fraction).round() as u64;
                let first = first.min(n);
                (Budget::Iterations(first), Budget::Iterations(n - first))
            }
        }
    }
}

/// Shared clock for one run. Strategy B threads it through VND so polishing
/// consumes the same budget as the main loop.
pub struct BudgetClock {
    budget: Budget,
    started: Instant,
    applications: u64,
}

impl BudgetClock {
    pub fn start(budget: Budget) -> Self {
        BudgetClock {
            budget,
            started: Instant::now(),
            applications: 0,
        }
    }

    pub fn note_application(&mut self) {
        self.applications += 1;
    }

    pub fn applications(&self) -> u64 {
        self.applications
    }

    pub fn expired(&self) -> bool {
        match self.budget {
            Budget::WallClockMs(ms) => self.started.elapsed() >= Duration::from_millis(ms),
            Budget::Iterations(n) => self.applications >= n,
        }
    }

    /// True once `fraction` of the budget is spent.
    pub fn reached_fraction(&self, fraction: f64) -> bool {
        match self.budget {
            Budget::WallClockMs(ms) => {
                self.started.elapsed().as_secs_f64() * 1000.0 >= fraction * ms as f64
            }
            Budget::Iterations(n) => self.applications as f64 >= fraction * n as f64,
        }
    }

    /// Elapsed budget in trace units: milliseconds under wall-clock,
    /// application count under iteration budgets.
    pub fn stamp(&self) -> f64 {
        match self.budget {
            Budget::WallClockMs(_) => self.started.elapsed().as_secs_f64() * 1000.0,
            Budget::Iterations(_) => self.applications as f64,
        }
    }
}
