//! Conditional Markov chain search: a single-point metaheuristic that picks
//! the next search component by a Markov transition on (current component,
//! improved-or-not), plus an offline configurator that learns the transition
//! matrices and a complete three-index assignment problem domain.

pub mod ap3;
pub mod configurator;
pub mod engine;
pub mod seed;
