//! Solutions are n triples (i, j_i, k_i) stored as an array of (j, k) pairs
//! indexed by i. Feasibility: the j values form a permutation and the k
//! values form a permutation, independently.

use super::instance::Ap3Instance;
use super::neighborhood::{Dim, ShuffleMove, SwapMove, SHUFFLE_PERMS};
use super::Ap3Error;
use rand::seq::SliceRandom;
use rand::RngCore;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ap3Solution {
    pairs: Vec<(usize, usize)>,
}

impl Ap3Solution {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self, Ap3Error> {
        let s = Ap3Solution { pairs };
        if s.is_feasible() {
            Ok(s)
        } else {
            Err(Ap3Error::InfeasibleSolution)
        }
    }

    pub fn identity(n: usize) -> Self {
        Ap3Solution {
            pairs: (0..n).map(|i| (i, i)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    #[inline]
    pub fn pair(&self, i: usize) -> (usize, usize) {
        self.pairs[i]
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn is_feasible(&self) -> bool {
        let n = self.pairs.len();
        let mut seen_j = vec![false; n];
        let mut seen_k = vec![false; n];
        for &(j, k) in &self.pairs {
            if j >= n || k >= n || seen_j[j] || seen_k[k] {
                return false;
            }
            seen_j[j] = true;
            seen_k[k] = true;
        }
        true
    }

    /// Swapping in the first dimension exchanges whole (j, k) pairs between
    /// the two positions; in the other dimensions only that coordinate.
    pub fn apply_swap(&mut self, mv: SwapMove) {
        let (p, q) = (mv.p, mv.q);
        match mv.dim {
            Dim::I => self.pairs.swap(p, q),
            Dim::J => {
                let (jp, jq) = (self.pairs[p].0, self.pairs[q].0);
                self.pairs[p].0 = jq;
                self.pairs[q].0 = jp;
            }
            Dim::K => {
                let (kp, kq) = (self.pairs[p].1, self.pairs[q].1);
                self.pairs[p].1 = kq;
                self.pairs[q].1 = kp;
            }
        }
    }

    /// Permutes one dimension's values among the three chosen positions.
    pub fn apply_shuffle(&mut self, mv: ShuffleMove) {
        let perm = SHUFFLE_PERMS[mv.perm];
        let [a, b, c] = mv.positions;
        match mv.dim {
            Dim::I => {
                let old = [self.pairs[a], self.pairs[b], self.pairs[c]];
                self.pairs[a] = old[perm[0]];
                self.pairs[b] = old[perm[1]];
                self.pairs[c] = old[perm[2]];
            }
            Dim::J => {
                let old = [self.pairs[a].0, self.pairs[b].0, self.pairs[c].0];
                self.pairs[a].0 = old[perm[0]];
                self.pairs[b].0 = old[perm[1]];
                self.pairs[c].0 = old[perm[2]];
            }
            Dim::K => {
                let old = [self.pairs[a].1, self.pairs[b].1, self.pairs[c].1];
                self.pairs[a].1 = old[perm[0]];
                self.pairs[b].1 = old[perm[1]];
                self.pairs[c].1 = old[perm[2]];
            }
        }
    }
}

/// Uniform feasible solution: two independent uniform permutations.
pub fn random_solution(n: usize, rng: &mut dyn RngCore) -> Ap3Solution {
    let mut js: Vec<usize> = (0..n).collect();
    let mut ks: Vec<usize> = (0..n).collect();
    js.shuffle(rng);
    ks.shuffle(rng);
    Ap3Solution {
        pairs: js.into_iter().zip(ks).collect(),
    }
}

/// Total cost of the selected triples. Exact in 64-bit arithmetic for any
/// realistic instance (n <= 1e4 at cell costs <= 1e9).
pub fn objective(instance: &Ap3Instance, solution: &Ap3Solution) -> i64 {
    debug_assert_eq!(instance.n(), solution.n());
    solution
        .pairs()
        .iter()
        .enumerate()
        .map(|(i, &(j, k))| instance.cost(i, j, k))
        .sum()
}

/// Checked variant for untrusted input.
pub fn objective_checked(instance: &Ap3Instance, solution: &Ap3Solution) -> Result<i64, Ap3Error> {
    if instance.n() != solution.n() || !solution.is_feasible() {
        return Err(Ap3Error::InfeasibleSolution);
    }
    Ok(objective(instance, solution))
}
