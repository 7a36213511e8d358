//! Wall-time planning for training campaigns: subsets (or ordered subset
//! pairs) times stages times the per-stage matrix search budget.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlannedStrategy {
    A,
    B,
    C,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrainingPlan {
    pub strategy: PlannedStrategy,
    /// Subsets for A/B, ordered subset pairs for C.
    pub units: u64,
    /// Matrix searches per unit: one for A/B, three alternating for C.
    pub stages: u64,
    pub stage_minutes: u64,
    pub total_minutes: u64,
}

/// Ordered pairs of subsets trained for strategy C. Identical pairs are
/// included by default; excluding them matches campaigns that require two
/// different subsets.
pub fn pair_count(subsets: u64, include_identical: bool) -> u64 {
    if include_identical {
        subsets * subsets
    } else {
        subsets * (subsets - 1)
    }
}

pub fn plan(strategy: PlannedStrategy, units: u64, stage_minutes: u64) -> TrainingPlan {
    let stages = match strategy {
        PlannedStrategy::A | PlannedStrategy::B => 1,
        PlannedStrategy::C => 3,
    };
    TrainingPlan {
        strategy,
        units,
        stages,
        stage_minutes,
        total_minutes: units * stages * stage_minutes,
    }
}
