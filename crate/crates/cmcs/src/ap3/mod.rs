//! Three-index assignment domain: instances, solutions, neighborhoods, the
//! component pool, and the assignment-problem machinery behind the Hungarian
//! climbers.

mod components;
mod hungarian;
mod instance;
mod lap;
mod neighborhood;
mod solution;

pub use components::{
    best_swap, first_swap, first_worsen, random_swap, shuffle_three, standard_pool, worst_swap,
    AllDimHungarian, BestSwap, FirstSwap, FirstWorsen, HungarianDim, MinDimHungarian,
    RandomDimHungarian, RandomSwap, ShuffleThree, WorstSwap,
};
pub use hungarian::{
    all_dimension_hungarian, hungarian_d, min_dimension_hungarian, random_dimension_hungarian,
};
pub use instance::{Ap3Instance, Family, WEIGHT_MAX, WEIGHT_MIN};
pub use lap::{solve_lap, Permutation};
pub use neighborhood::{
    random_shuffle_move, random_swap_move, swap_count, swap_delta, swap_moves, swap_neighborhood,
    Dim, ShuffleMove, SwapMove,
};
pub use solution::{objective, objective_checked, random_solution, Ap3Solution};

use crate::engine::Problem;
use rand::RngCore;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum Ap3Error {
    #[error("instance size {0} is not positive")]
    InvalidSize(usize),
    #[error("sqrt scale {0} must be at least 1")]
    InvalidScale(i64),
    #[error("family `external` cannot be generated")]
    NotGenerable,
    #[error("cost tensor has {found} cells, expected {expected}")]
    WrongTensorLength { expected: usize, found: usize },
    #[error("solution is infeasible for the instance")]
    InfeasibleSolution,
    #[error("mapping is not a permutation")]
    NotAPermutation,
    #[error("cost matrix with {rows} rows has row {row} of length {len}")]
    NonSquareMatrix { rows: usize, row: usize, len: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Problem for Ap3Instance {
    type Solution = Ap3Solution;

    fn objective(&self, solution: &Ap3Solution) -> i64 {
        objective(self, solution)
    }

    fn is_feasible(&self, solution: &Ap3Solution) -> bool {
        solution.n() == self.n() && solution.is_feasible()
    }

    fn initial_solution(&self, rng: &mut dyn RngCore) -> Ap3Solution {
        random_solution(self.n(), rng)
    }
}
