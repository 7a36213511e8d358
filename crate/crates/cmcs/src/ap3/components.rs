//! The component pool: four mutations and the hill climber family.
//!
//! Swap-scanning components use delta evaluation but observe the same scan
//! order and tie-breaking as explicit neighborhood enumeration: first hit in
//! scan order for the `first_*` pair, earliest argbest for `best_swap` and
//! `worst_swap`.

use super::hungarian::{
    all_dimension_hungarian, hungarian_d, min_dimension_hungarian, random_dimension_hungarian,
};
use super::instance::Ap3Instance;
use super::neighborhood::{
    random_shuffle_move, random_swap_move, swap_delta, swap_moves, Dim, SwapMove,
};
use super::solution::Ap3Solution;
use crate::engine::{Component, ComponentKind, ComponentPool};
use rand::RngCore;
use std::sync::Arc;

/// Applies a uniformly random swap. No-op below n = 2 (empty neighborhood).
pub fn random_swap(s: &mut Ap3Solution, rng: &mut dyn RngCore) {
    if s.n() < 2 {
        return;
    }
    let mv = random_swap_move(s.n(), rng);
    s.apply_swap(mv);
}

/// Applies a uniformly random non-identity 3-cycle or transposition of one
/// dimension's values over three positions. No-op below n = 3.
pub fn shuffle_three(s: &mut Ap3Solution, rng: &mut dyn RngCore) {
    if s.n() < 3 {
        return;
    }
    let mv = random_shuffle_move(s.n(), rng);
    s.apply_shuffle(mv);
}

/// First move in scan order whose delta has the wanted sign (`sign` is +1
/// for strictly worsening, -1 for strictly improving).
fn first_signed(instance: &Ap3Instance, s: &Ap3Solution, sign: i64) -> Option<SwapMove> {
    swap_moves(s.n()).find(|&mv| swap_delta(instance, s, mv) * sign > 0)
}

/// Extreme move of the wanted sign; strict comparison keeps the earliest on
/// ties.
fn extreme_signed(instance: &Ap3Instance, s: &Ap3Solution, sign: i64) -> Option<SwapMove> {
    let mut chosen: Option<(SwapMove, i64)> = None;
    for mv in swap_moves(s.n()) {
        let gain = swap_delta(instance, s, mv) * sign;
        if gain <= 0 {
            continue;
        }
        match chosen {
            Some((_, best)) if gain <= best => {}
            _ => chosen = Some((mv, gain)),
        }
    }
    chosen.map(|(mv, _)| mv)
}

/// Moves to the swap neighbor with the largest objective, if one is strictly
/// worse than the current solution; otherwise leaves it unchanged.
pub fn worst_swap(instance: &Ap3Instance, s: &mut Ap3Solution) {
    if let Some(mv) = extreme_signed(instance, s, 1) {
        s.apply_swap(mv);
    }
}

/// Moves to the first strictly worse swap neighbor in scan order, if any.
pub fn first_worsen(instance: &Ap3Instance, s: &mut Ap3Solution) {
    if let Some(mv) = first_signed(instance, s, 1) {
        s.apply_swap(mv);
    }
}

/// Moves to the first strictly improving swap neighbor in scan order.
pub fn first_swap(instance: &Ap3Instance, s: &mut Ap3Solution) {
    if let Some(mv) = first_signed(instance, s, -1) {
        s.apply_swap(mv);
    }
}

/// Moves to the best swap neighbor if it strictly improves; ties broken by
/// scan order.
pub fn best_swap(instance: &Ap3Instance, s: &mut Ap3Solution) {
    if let Some(mv) = extreme_signed(instance, s, -1) {
        s.apply_swap(mv);
    }
}

macro_rules! component {
    ($ty:ident, $name:literal, $kind:expr, |$p:ident, $s:ident, $rng:ident| $body:expr) => {
        pub struct $ty;

        impl Component<Ap3Instance> for $ty {
            fn name(&self) -> &str {
                $name
            }

            fn kind(&self) -> ComponentKind {
                $kind
            }

            #[allow(unused_variables)]
            fn apply(&self, $p: &Ap3Instance, $s: &mut Ap3Solution, $rng: &mut dyn RngCore) {
                $body
            }
        }
    };
}

component!(RandomSwap, "random-swap", ComponentKind::Mutation, |inst, s, rng| {
    random_swap(s, rng)
});
component!(ShuffleThree, "shuffle-three", ComponentKind::Mutation, |inst, s, rng| {
    shuffle_three(s, rng)
});
component!(WorstSwap, "worst-swap", ComponentKind::Mutation, |inst, s, rng| {
    worst_swap(inst, s)
});
component!(FirstWorsen, "first-worsen", ComponentKind::Mutation, |inst, s, rng| {
    first_worsen(inst, s)
});
component!(FirstSwap, "first-swap", ComponentKind::HillClimber, |inst, s, rng| {
    first_swap(inst, s)
});
component!(BestSwap, "best-swap", ComponentKind::HillClimber, |inst, s, rng| {
    best_swap(inst, s)
});
component!(MinDimHungarian, "min-dim-hungarian", ComponentKind::HillClimber, |inst, s, rng| {
    *s = min_dimension_hungarian(inst, s)
});
component!(AllDimHungarian, "all-dim-hungarian", ComponentKind::HillClimber, |inst, s, rng| {
    *s = all_dimension_hungarian(inst, s)
});
component!(RandomDimHungarian, "random-dim-hungarian", ComponentKind::HillClimber, |inst, s, rng| {
    *s = random_dimension_hungarian(inst, s, rng)
});

/// Hungarian neighborhood descent in one fixed dimension.
pub struct HungarianDim(pub Dim);

impl Component<Ap3Instance> for HungarianDim {
    fn name(&self) -> &str {
        match self.0 {
            Dim::I => "hungarian-1",
            Dim::J => "hungarian-2",
            Dim::K => "hungarian-3",
        }
    }

    fn kind(&self) -> ComponentKind {
        ComponentKind::HillClimber
    }

    fn apply(&self, instance: &Ap3Instance, s: &mut Ap3Solution, _rng: &mut dyn RngCore) {
        *s = hungarian_d(instance, s, self.0);
    }
}

/// The full registry: four mutations, then the hill climbers (two swap
/// climbers, one Hungarian climber per dimension, and the three composite
/// Hungarian climbers). Pool order fixes subset enumeration order.
pub fn standard_pool() -> ComponentPool<Ap3Instance> {
    let mut pool = ComponentPool::new();
    pool.register(Arc::new(RandomSwap));
    pool.register(Arc::new(ShuffleThree));
    pool.register(Arc::new(WorstSwap));
    pool.register(Arc::new(FirstWorsen));
    pool.register(Arc::new(FirstSwap));
    pool.register(Arc::new(BestSwap));
    pool.register(Arc::new(HungarianDim(Dim::I)));
    pool.register(Arc::new(HungarianDim(Dim::J)));
    pool.register(Arc::new(HungarianDim(Dim::K)));
    pool.register(Arc::new(MinDimHungarian));
    pool.register(Arc::new(AllDimHungarian));
    pool.register(Arc::new(RandomDimHungarian));
    pool
}
