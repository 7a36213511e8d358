//! Row-stochastic transition matrices over a common integer denominator.
//!
//! A matrix for k components stores k rows of k numerators; every row sums to
//! exactly k, so each cell holds a probability numerator over denominator k.
//! Keeping the arithmetic integral makes matrix mutation and serialization
//! exact and makes roulette draws reproducible.

use super::EngineError;
use rand::{Rng, RngCore};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrix {
    rows: Vec<Vec<u32>>,
}

impl TransitionMatrix {
    /// Validates shape (square, non-empty) and the row-sum invariant.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self, EngineError> {
        if rows.is_empty() {
            return Err(EngineError::EmptyMatrix);
        }
        let k = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(EngineError::RaggedRow {
                    row: i,
                    len: row.len(),
                    expected: k,
                });
            }
            let sum: u32 = row.iter().sum();
            if sum != k as u32 {
                return Err(EngineError::RowSum {
                    row: i,
                    sum,
                    expected: k as u32,
                });
            }
        }
        Ok(TransitionMatrix { rows })
    }

    /// Deterministic matrix sending each row i to `targets[i]` with
    /// probability one.
    pub fn single_target(targets: &[usize]) -> Result<Self, EngineError> {
        let k = targets.len();
        if k == 0 {
            return Err(EngineError::EmptyMatrix);
        }
        let mut rows = vec![vec![0u32; k]; k];
        for (i, &t) in targets.iter().enumerate() {
            if t >= k {
                return Err(EngineError::RaggedRow {
                    row: i,
                    len: t,
                    expected: k,
                });
            }
            rows[i][t] = k as u32;
        }
        Ok(TransitionMatrix { rows })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn denominator(&self) -> u32 {
        self.rows.len() as u32
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Probability of moving from `from` to `to` as an exact rational
    /// (numerator, denominator).
    pub fn probability(&self, from: usize, to: usize) -> (u32, u32) {
        (self.rows[from][to], self.denominator())
    }

    /// Draws the next component index from row `from`. Safe on any
    /// constructed matrix: validation rules out dead rows.
    pub fn roulette(&self, from: usize, rng: &mut dyn RngCore) -> usize {
        roulette_wheel(&self.rows[from], rng).expect("validated row cannot be all zero")
    }
}

/// Roulette-wheel draw over integer numerators: index i is returned with
/// probability `row[i] / sum(row)`. An index with numerator 0 is never
/// returned. Errors when the row has no positive entry.
pub fn roulette_wheel(row: &[u32], rng: &mut dyn RngCore) -> Result<usize, EngineError> {
    let total: u64 = row.iter().map(|&x| x as u64).sum();
    if total == 0 {
        return Err(EngineError::DeadRow);
    }
    let mut r = rng.random_range(0..total);
    for (i, &w) in row.iter().enumerate() {
        let w = w as u64;
        if r < w {
            return Ok(i);
        }
        r -= w;
    }
    unreachable!("draw below row total always lands in a cell")
}
