//! Matrix mutation operators. All five preserve the row-sum invariant, so a
//! child matrix is always valid without renormalization.

use crate::engine::{CmcsConfig, TransitionMatrix};
use rand::{Rng, RngCore};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixMutation {
    SwapRows,
    ShuffleRow,
    MinimumChange,
    RuinAndRecreate,
    Void,
}

impl MatrixMutation {
    pub const ALL: [MatrixMutation; 5] = [
        MatrixMutation::SwapRows,
        MatrixMutation::ShuffleRow,
        MatrixMutation::MinimumChange,
        MatrixMutation::RuinAndRecreate,
        MatrixMutation::Void,
    ];
}

/// Matrix whose every row has probability one on a uniformly chosen column.
/// The population seed distribution: simple, valid, and maximally decisive.
pub fn random_deterministic_matrix(size: usize, rng: &mut dyn RngCore) -> TransitionMatrix {
    assert!(size > 0, "matrix size must be positive");
    let targets: Vec<usize> = (0..size).map(|_| rng.random_range(0..size)).collect();
    TransitionMatrix::single_target(&targets).expect("targets are in range")
}

fn two_distinct(bound: usize, rng: &mut dyn RngCore) -> (usize, usize) {
    debug_assert!(bound >= 2);
    let a = rng.random_range(0..bound);
    let mut b = rng.random_range(0..bound - 1);
    if b >= a {
        b += 1;
    }
    (a, b)
}

/// Applies one operator. Operators that need two distinct rows or positions
/// degenerate to the identity on 1x1 matrices; MinimumChange returns the
/// input unchanged when a numerator would leave its bounds.
pub fn mutate_matrix(
    matrix: &TransitionMatrix,
    op: MatrixMutation,
    rng: &mut dyn RngCore,
) -> TransitionMatrix {
    let k = matrix.size();
    match op {
        MatrixMutation::Void => matrix.clone(),
        MatrixMutation::RuinAndRecreate => random_deterministic_matrix(k, rng),
        MatrixMutation::SwapRows => {
            if k < 2 {
                return matrix.clone();
            }
            let (a, b) = two_distinct(k, rng);
            let mut rows = matrix.rows().to_vec();
            rows.swap(a, b);
            TransitionMatrix::new(rows).expect("row swap preserves row sums")
        }
        MatrixMutation::ShuffleRow => {
            let row = rng.random_range(0..k);
            let swaps = rng.random_range(0..=k);
            let mut rows = matrix.rows().to_vec();
            if k >= 2 {
                for _ in 0..swaps {
                    let (a, b) = two_distinct(k, rng);
                    rows[row].swap(a, b);
                }
            }
            TransitionMatrix::new(rows).expect("in-row swaps preserve row sums")
        }
        MatrixMutation::MinimumChange => {
            if k < 2 {
                return matrix.clone();
            }
            let row = rng.random_range(0..k);
            let (up, down) = two_distinct(k, rng);
            let mut rows = matrix.rows().to_vec();
            if rows[row][up] >= k as u32 || rows[row][down] == 0 {
                return matrix.clone();
            }
            rows[row][up] += 1;
            rows[row][down] -= 1;
            TransitionMatrix::new(rows).expect("plus-minus one preserves row sums")
        }
    }
}

/// Independent uniform draws for the success and failure matrix operators.
pub fn draw_operator_pair(rng: &mut dyn RngCore) -> (MatrixMutation, MatrixMutation) {
    let first = MatrixMutation::ALL[rng.random_range(0..MatrixMutation::ALL.len())];
    let second = MatrixMutation::ALL[rng.random_range(0..MatrixMutation::ALL.len())];
    (first, second)
}

/// Child configuration: same subset, first operator applied to the success
/// matrix and second to the failure matrix.
pub fn mutate_configuration(parent: &CmcsConfig, rng: &mut dyn RngCore) -> CmcsConfig {
    let (op_succ, op_fail) = draw_operator_pair(rng);
    CmcsConfig {
        components: parent.components.clone(),
        m_succ: mutate_matrix(&parent.m_succ, op_succ, rng),
        m_fail: mutate_matrix(&parent.m_fail, op_fail, rng),
    }
}
