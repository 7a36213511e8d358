//! Executable configurations: a component subset plus its two transition
//! matrices, and the two-phase pairing used by strategy C.

use super::{ComponentKind, ComponentPool, EngineError, Problem, TransitionMatrix};

/// One configuration: the ordered component subset and a transition matrix
/// pair sized to it. Matrix row/column i refers to `components[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CmcsConfig {
    pub components: Vec<String>,
    pub m_succ: TransitionMatrix,
    pub m_fail: TransitionMatrix,
}

impl CmcsConfig {
    pub fn new(
        components: Vec<String>,
        m_succ: TransitionMatrix,
        m_fail: TransitionMatrix,
    ) -> Result<Self, EngineError> {
        let cfg = CmcsConfig {
            components,
            m_succ,
            m_fail,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn size(&self) -> usize {
        self.components.len()
    }

    /// Shape checks only; component names are resolved against a pool at run
    /// time. Runnable does not imply meaningful: degenerate configurations
    /// (for example a lone hill climber) are legal for testing.
    pub fn validate(&self) -> Result<(), EngineError> {
        if self.components.is_empty() {
            return Err(EngineError::EmptyComponents);
        }
        for (i, name) in self.components.iter().enumerate() {
            if self.components[..i].contains(name) {
                return Err(EngineError::DuplicateComponent(name.clone()));
            }
        }
        for m in [&self.m_succ, &self.m_fail] {
            if m.size() != self.components.len() {
                return Err(EngineError::MatrixSize {
                    expected: self.components.len(),
                    found: m.size(),
                });
            }
        }
        Ok(())
    }

    /// A configuration is meaningful when it can both escape local optima and
    /// descend: at least one mutation and at least one hill climber.
    pub fn is_meaningful<P: Problem>(&self, pool: &ComponentPool<P>) -> Result<bool, EngineError> {
        let comps = pool.resolve(&self.components)?;
        let mutations = comps
            .iter()
            .filter(|c| c.kind() == ComponentKind::Mutation)
            .count();
        Ok(mutations > 0 && mutations < comps.len())
    }
}

/// Strategy C configuration: `sub1` runs for the leading `split` share of the
/// budget, `sub2` for the rest, starting from phase 1's best.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoStageConfig {
    pub sub1: CmcsConfig,
    pub sub2: CmcsConfig,
    pub split: f64,
}

impl TwoStageConfig {
    pub const DEFAULT_SPLIT: f64 = 0.8;

    pub fn new(sub1: CmcsConfig, sub2: CmcsConfig, split: f64) -> Result<Self, EngineError> {
        let cfg = TwoStageConfig { sub1, sub2, split };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        if !(self.split > 0.0 && self.split <= 1.0) || !self.split.is_finite() {
            return Err(EngineError::BadSplit(self.split));
        }
        self.sub1.validate()?;
        self.sub2.validate()
    }
}
