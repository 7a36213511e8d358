//! Hungarian neighborhoods: fix two dimensions of the current solution and
//! reassign the third optimally by solving a linear assignment problem.
//!
//! For dimension d, position p contributes a residual pair (the two
//! coordinates of its triple that stay put); matrix cell [a][p] is the cost
//! of giving value a of dimension d to position p's residual pair. The
//! identity assignment reproduces the current solution, so the optimum never
//! worsens it.

use super::instance::Ap3Instance;
use super::lap::solve_lap;
use super::neighborhood::Dim;
use super::solution::{objective, Ap3Solution};
use rand::{Rng, RngCore};

/// Optimal reassignment of dimension `dim`. Returns the input unchanged when
/// the optimum only ties it, which makes repeated application stationary.
pub fn hungarian_d(instance: &Ap3Instance, s: &Ap3Solution, dim: Dim) -> Ap3Solution {
    let n = instance.n();
    debug_assert_eq!(n, s.n());
    let mut costs = vec![vec![0i64; n]; n];
    for (value, row) in costs.iter_mut().enumerate() {
        for (pos, cell) in row.iter_mut().enumerate() {
            let (j, k) = s.pair(pos);
            *cell = match dim {
                Dim::I => instance.cost(value, j, k),
                Dim::J => instance.cost(pos, value, k),
                Dim::K => instance.cost(pos, j, value),
            };
        }
    }
    let (perm, cost) = solve_lap(&costs).expect("square by construction");
    if cost >= objective(instance, s) {
        return s.clone();
    }
    let mut pairs = s.pairs().to_vec();
    for value in 0..n {
        let pos = perm.apply(value);
        match dim {
            Dim::I => pairs[value] = s.pair(pos),
            Dim::J => pairs[pos].0 = value,
            Dim::K => pairs[pos].1 = value,
        }
    }
    Ap3Solution::new(pairs).expect("permutation reassignment stays feasible")
}

/// Best of the three single-dimension optima; ties prefer the lowest
/// dimension (and the unchanged input when nothing improves).
pub fn min_dimension_hungarian(instance: &Ap3Instance, s: &Ap3Solution) -> Ap3Solution {
    let mut best = s.clone();
    let mut best_obj = objective(instance, s);
    for dim in Dim::ALL {
        let candidate = hungarian_d(instance, s, dim);
        let obj = objective(instance, &candidate);
        if obj < best_obj {
            best = candidate;
            best_obj = obj;
        }
    }
    best
}

/// Cycles dimensions 1, 2, 3 until a full cycle brings no strict
/// improvement; the result is stationary for all three single-dimension
/// climbers.
pub fn all_dimension_hungarian(instance: &Ap3Instance, s: &Ap3Solution) -> Ap3Solution {
    let mut current = s.clone();
    let mut current_obj = objective(instance, &current);
    loop {
        let mut improved = false;
        for dim in Dim::ALL {
            let candidate = hungarian_d(instance, &current, dim);
            let obj = objective(instance, &candidate);
            if obj < current_obj {
                current = candidate;
                current_obj = obj;
                improved = true;
            }
        }
        if !improved {
            return current;
        }
    }
}

/// Single-dimension optimum in a uniformly drawn dimension.
pub fn random_dimension_hungarian(
    instance: &Ap3Instance,
    s: &Ap3Solution,
    rng: &mut dyn RngCore,
) -> Ap3Solution {
    let dim = Dim::from_index(rng.random_range(0..3));
    hungarian_d(instance, s, dim)
}
