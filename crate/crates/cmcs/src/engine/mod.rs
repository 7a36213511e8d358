//! Problem-agnostic search engine.
//!
//! A run owns one current solution and a pool of components (mutations and
//! hill climbers). After each component application the engine draws the next
//! component from a row of `m_succ` or `m_fail` depending on whether the last
//! application strictly improved the objective. There is no acceptance test:
//! every move is kept, and the best solution seen is tracked separately.

mod budget;
mod config;
mod matrix;
mod run;

pub use budget::{Budget, BudgetClock};
pub use config::{CmcsConfig, TwoStageConfig};
pub use matrix::{roulette_wheel, TransitionMatrix};
pub use run::{
    run_strategy_a, run_strategy_b, run_strategy_c, run_vnd, RunResult, TracePoint,
    TransitionTally, VndSchedule,
};

use rand::RngCore;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Run budgets are wall-clock in the benchmark setting; iteration budgets
/// count component applications and exist for exact reproducibility.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum EngineError {
    #[error("component list is empty")]
    EmptyComponents,
    #[error("unknown component `{0}`")]
    UnknownComponent(String),
    #[error("component `{0}` listed twice")]
    DuplicateComponent(String),
    #[error("matrix is {found}x{found} but the configuration has {expected} components")]
    MatrixSize { expected: usize, found: usize },
    #[error("matrix row {row} sums to {sum}, expected {expected}")]
    RowSum { row: usize, sum: u32, expected: u32 },
    #[error("matrix row {row} has length {len}, expected {expected}")]
    RaggedRow { row: usize, len: usize, expected: usize },
    #[error("empty matrix")]
    EmptyMatrix,
    #[error("roulette row has no positive entry")]
    DeadRow,
    #[error("budget limit must be positive")]
    ZeroBudget,
    #[error("split {0} outside (0, 1]")]
    BadSplit(f64),
    #[error("vnd threshold {0} outside [0, 1]")]
    BadThreshold(f64),
    #[error("initial solution is infeasible")]
    InfeasibleInitial,
    #[error("vnd component list is empty")]
    EmptyVnd,
    #[error("`{0}` is not a hill climber")]
    NotAHillClimber(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    Mutation,
    HillClimber,
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentKind::Mutation => write!(f, "mutation"),
            ComponentKind::HillClimber => write!(f, "hill-climber"),
        }
    }
}

/// Domain plugin contract. The engine never looks inside solutions; it only
/// clones them, evaluates them, and hands them to components.
pub trait Problem: Send + Sync {
    type Solution: Clone + Send + Sync;

    fn objective(&self, solution: &Self::Solution) -> i64;

    fn is_feasible(&self, solution: &Self::Solution) -> bool;

    /// Fresh starting point for a run; drawn from the domain's own
    /// distribution over feasible solutions.
    fn initial_solution(&self, rng: &mut dyn RngCore) -> Self::Solution;
}

/// One search component. Mutations may worsen the solution; hill climbers
/// never do. Both must keep it feasible.
pub trait Component<P: Problem>: Send + Sync {
    fn name(&self) -> &str;

    fn kind(&self) -> ComponentKind;

    fn apply(&self, problem: &P, solution: &mut P::Solution, rng: &mut dyn RngCore);
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentDesc {
    pub name: String,
    pub kind: ComponentKind,
}

/// Named registry of components. Configurations reference pool entries by
/// name; pool order fixes subset enumeration order.
pub struct ComponentPool<P: Problem> {
    components: Vec<Arc<dyn Component<P>>>,
}

impl<P: Problem> ComponentPool<P> {
    pub fn new() -> Self {
        ComponentPool {
            components: Vec::new(),
        }
    }

    /// Panics on duplicate names: pools are assembled statically by the
    /// domain plugin, not from user input.
    pub fn register(&mut self, component: Arc<dyn Component<P>>) {
        assert!(
            self.get(component.name()).is_none(),
            "duplicate component name `{}`",
            component.name()
        );
        self.components.push(component);
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Arc<dyn Component<P>>> {
        self.components.iter().find(|c| c.name() == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn Component<P>>> {
        self.components.iter()
    }

    pub fn descriptors(&self) -> Vec<ComponentDesc> {
        self.components
            .iter()
            .map(|c| ComponentDesc {
                name: c.name().to_string(),
                kind: c.kind(),
            })
            .collect()
    }

    pub fn resolve(&self, names: &[String]) -> Result<Vec<Arc<dyn Component<P>>>, EngineError> {
        if names.is_empty() {
            return Err(EngineError::EmptyComponents);
        }
        let mut out = Vec::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(EngineError::DuplicateComponent(name.clone()));
            }
            match self.get(name) {
                Some(c) => out.push(Arc::clone(c)),
                None => return Err(EngineError::UnknownComponent(name.clone())),
            }
        }
        Ok(out)
    }
}

impl<P: Problem> Default for ComponentPool<P> {
    fn default() -> Self {
        Self::new()
    }
}
