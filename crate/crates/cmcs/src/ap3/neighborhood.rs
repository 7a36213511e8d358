//! Swap and shuffle neighborhoods.
//!
//! A swap exchanges the dimension-d values of two positions; the
//! neighborhood has 3 * n * (n-1) / 2 members and a fixed scan order:
//! dimension ascending (i, j, k), then positions (p, q) lexicographic with
//! p < q. A shuffle applies one of the five non-identity permutations to the
//! dimension-d values of three distinct positions.

use super::instance::Ap3Instance;
use super::solution::Ap3Solution;
use rand::{Rng, RngCore};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dim {
    I,
    J,
    K,
}

impl Dim {
    pub const ALL: [Dim; 3] = [Dim::I, Dim::J, Dim::K];

    pub fn index(&self) -> usize {
        match self {
            Dim::I => 0,
            Dim::J => 1,
            Dim::K => 2,
        }
    }

    pub fn from_index(i: usize) -> Dim {
        Dim::ALL[i]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SwapMove {
    pub dim: Dim,
    pub p: usize,
    pub q: usize,
}

/// The five non-identity permutations of three slots, lexicographic.
pub(crate) const SHUFFLE_PERMS: [[usize; 3]; 5] = [
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ShuffleMove {
    pub dim: Dim,
    /// Strictly increasing.
    pub positions: [usize; 3],
    /// Index into the five non-identity permutations.
    pub perm: usize,
}

pub fn swap_count(n: usize) -> usize {
    if n < 2 {
        0
    } else {
        3 * n * (n - 1) / 2
    }
}

/// All swap moves for size n in scan order.
pub fn swap_moves(n: usize) -> impl Iterator<Item = SwapMove> {
    Dim::ALL.into_iter().flat_map(move |dim| {
        (0..n).flat_map(move |p| (p + 1..n).map(move |q| SwapMove { dim, p, q }))
    })
}

/// Materialized swap neighborhood in scan order.
pub fn swap_neighborhood<'a>(
    s: &'a Ap3Solution,
) -> impl Iterator<Item = (SwapMove, Ap3Solution)> + 'a {
    swap_moves(s.n()).map(move |mv| {
        let mut neighbor = s.clone();
        neighbor.apply_swap(mv);
        (mv, neighbor)
    })
}

/// Objective change of a swap, evaluated from the four touched triples.
pub fn swap_delta(instance: &Ap3Instance, s: &Ap3Solution, mv: SwapMove) -> i64 {
    let (p, q) = (mv.p, mv.q);
    let (jp, kp) = s.pair(p);
    let (jq, kq) = s.pair(q);
    let old = instance.cost(p, jp, kp) + instance.cost(q, jq, kq);
    let new = match mv.dim {
        Dim::I => instance.cost(p, jq, kq) + instance.cost(q, jp, kp),
        Dim::J => instance.cost(p, jq, kp) + instance.cost(q, jp, kq),
        Dim::K => instance.cost(p, jp, kq) + instance.cost(q, jq, kp),
    };
    new - old
}

/// Uniform over the whole swap neighborhood. Requires n >= 2.
pub fn random_swap_move(n: usize, rng: &mut dyn RngCore) -> SwapMove {
    debug_assert!(n >= 2);
    let dim = Dim::from_index(rng.random_range(0..3));
    let p = rng.random_range(0..n);
    let mut q = rng.random_range(0..n - 1);
    if q >= p {
        q += 1;
    }
    SwapMove {
        dim,
        p: p.min(q),
        q: p.max(q),
    }
}

/// Uniform over (dimension, position triple, non-identity permutation).
/// Requires n >= 3.
pub fn random_shuffle_move(n: usize, rng: &mut dyn RngCore) -> ShuffleMove {
    debug_assert!(n >= 3);
    let dim = Dim::from_index(rng.random_range(0..3));
    let a = rng.random_range(0..n);
    let mut b = rng.random_range(0..n - 1);
    if b >= a {
        b += 1;
    }
    let mut c = rng.random_range(0..n - 2);
    for lo in [a.min(b), a.max(b)] {
        if c >= lo {
            c += 1;
        }
    }
    let mut positions = [a, b, c];
    positions.sort_unstable();
    ShuffleMove {
        dim,
        positions,
        perm: rng.random_range(0..SHUFFLE_PERMS.len()),
    }
}
