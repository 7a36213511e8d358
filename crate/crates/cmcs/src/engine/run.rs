//! The three run strategies.
//!
//! Strategy A is the plain conditional Markov chain: apply the active
//! component, then move to the next component drawn from the success or
//! failure matrix row depending on whether the objective strictly improved
//! since the previous iteration. Strategy B adds a one-shot variable
//! neighborhood descent that polishes the incumbent best once a budget
//! fraction has elapsed and re-arms whenever a new best appears. Strategy C
//! chains two strategy A runs, handing phase 1's best to phase 2.

use super::budget::{Budget, BudgetClock};
use super::config::{CmcsConfig, TwoStageConfig};
use super::{Component, ComponentKind, ComponentPool, EngineError, Problem};
use rand::RngCore;
use std::sync::Arc;

/// One point on the improvement trace. `elapsed` is milliseconds under
/// wall-clock budgets and the application count under iteration budgets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TracePoint {
    pub elapsed: f64,
    pub objective: i64,
}

/// Transition usage counters for one configuration: `succ[from][to]` counts
/// draws from the success matrix taken while `from` was active.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionTally {
    pub components: Vec<String>,
    pub succ: Vec<Vec<u64>>,
    pub fail: Vec<Vec<u64>>,
}

impl TransitionTally {
    fn new(components: Vec<String>) -> Self {
        let k = components.len();
        TransitionTally {
            components,
            succ: vec![vec![0; k]; k],
            fail: vec![vec![0; k]; k],
        }
    }

    fn record(&mut self, from: usize, to: usize, improved: bool) {
        if improved {
            self.succ[from][to] += 1;
        } else {
            self.fail[from][to] += 1;
        }
    }
}

/// Outcome of one run. The trace starts with the initial objective at
/// elapsed 0 and then records every strict improvement of the best objective,
/// so objectives are strictly decreasing and stamps non-decreasing.
#[derive(Clone, Debug, PartialEq)]
pub struct RunResult<S> {
    pub best_solution: S,
    pub best_objective: i64,
    pub trace: Vec<TracePoint>,
    pub iterations_executed: u64,
    /// Total elapsed at return, in trace units.
    pub elapsed: f64,
    /// One tally per phase (strategies A and B have one, C has up to two).
    pub transitions: Vec<TransitionTally>,
}

/// VND attachment for strategy B.
#[derive(Clone, Debug, PartialEq)]
pub struct VndSchedule {
    /// Hill climbers probed in order; need not be a subset of the
    /// configuration's components.
    pub climbers: Vec<String>,
    /// Budget fraction after which the pending descent fires. 1.0 disables
    /// it under iteration budgets.
    pub threshold: f64,
    /// Return the last polished best even when the unpolished incumbent is
    /// better. Off by default: the default return is the better of the two.
    pub faithful: bool,
}

impl VndSchedule {
    pub const DEFAULT_THRESHOLD: f64 = 0.5;

    pub fn new(climbers: Vec<String>) -> Self {
        VndSchedule {
            climbers,
            threshold: Self::DEFAULT_THRESHOLD,
            faithful: false,
        }
    }

    fn validate(&self) -> Result<(), EngineError> {
        if self.climbers.is_empty() {
            return Err(EngineError::EmptyVnd);
        }
        if !(0.0..=1.0).contains(&self.threshold) || !self.threshold.is_finite() {
            return Err(EngineError::BadThreshold(self.threshold));
        }
        Ok(())
    }
}

/// Best-so-far trace. Records only strict improvements over everything it
/// has seen, which keeps strategy B's main-loop and VND streams merged and
/// strictly decreasing.
struct TraceRecorder {
    points: Vec<TracePoint>,
    floor: i64,
}

impl TraceRecorder {
    fn new(initial: i64) -> Self {
        TraceRecorder {
            points: vec![TracePoint {
                elapsed: 0.0,
                objective: initial,
            }],
            floor: initial,
        }
    }

    fn observe(&mut self, elapsed: f64, objective: i64) {
        if objective < self.floor {
            self.floor = objective;
            self.points.push(TracePoint { elapsed, objective });
        }
    }
}

fn resolve_climbers<P: Problem>(
    pool: &ComponentPool<P>,
    names: &[String],
) -> Result<Vec<Arc<dyn Component<P>>>, EngineError> {
    let comps = pool.resolve(names)?;
    for c in &comps {
        if c.kind() != ComponentKind::HillClimber {
            return Err(EngineError::NotAHillClimber(c.name().to_string()));
        }
    }
    Ok(comps)
}

/// Strategy A. The component index starts at the first subset entry; every
/// application is followed by exactly one roulette draw.
pub fn run_strategy_a<P: Problem>(
    config: &CmcsConfig,
    pool: &ComponentPool<P>,
    problem: &P,
    s0: &P::Solution,
    budget: Budget,
    rng: &mut dyn RngCore,
) -> Result<RunResult<P::Solution>, EngineError> {
    config.validate()?;
    budget.validate()?;
    let components = pool.resolve(&config.components)?;
    if !problem.is_feasible(s0) {
        return Err(EngineError::InfeasibleInitial);
    }

    let mut clock = BudgetClock::start(budget);
    let mut current = s0.clone();
    let mut best = s0.clone();
    let f0 = problem.objective(s0);
    let mut best_obj = f0;
    let mut prev_obj = f0;
    let mut active = 0usize;
    let mut recorder = TraceRecorder::new(f0);
    let mut tally = TransitionTally::new(config.components.clone());

    while !clock.expired() {
        components[active].apply(problem, &mut current, rng);
        clock.note_application();
        debug_assert!(problem.is_feasible(&current));
        let cur = problem.objective(&current);
        let improved = cur < prev_obj;
        let next = if improved {
            config.m_succ.roulette(active, rng)
        } else {
            config.m_fail.roulette(active, rng)
        };
        tally.record(active, next, improved);
        if improved && cur < best_obj {
            best = current.clone();
            best_obj = cur;
            recorder.observe(clock.stamp(), cur);
        }
        active = next;
        prev_obj = cur;
    }

    Ok(RunResult {
        best_solution: best,
        best_objective: best_obj,
        trace: recorder.points,
        iterations_executed: clock.applications(),
        elapsed: clock.stamp(),
        transitions: vec![tally],
    })
}

/// Variable neighborhood descent: probe the climbers in order, restart from
/// the first on any strict improvement, stop when the last climber fails or
/// the budget expires.
fn vnd_descend<P: Problem>(
    climbers: &[Arc<dyn Component<P>>],
    problem: &P,
    start: &P::Solution,
    clock: &mut BudgetClock,
    rng: &mut dyn RngCore,
    recorder: &mut TraceRecorder,
) -> (P::Solution, i64) {
    let mut best = start.clone();
    let mut best_obj = problem.objective(&best);
    let mut i = 0usize;
    while !clock.expired() {
        let mut candidate = best.clone();
        climbers[i].apply(problem, &mut candidate, rng);
        clock.note_application();
        debug_assert!(problem.is_feasible(&candidate));
        let obj = problem.objective(&candidate);
        if obj < best_obj {
            best = candidate;
            best_obj = obj;
            i = 0;
            recorder.observe(clock.stamp(), obj);
        } else if i + 1 == climbers.len() {
            break;
        } else {
            i += 1;
        }
    }
    (best, best_obj)
}

/// Standalone VND over an ordered hill climber list.
pub fn run_vnd<P: Problem>(
    climbers: &[Arc<dyn Component<P>>],
    problem: &P,
    s0: &P::Solution,
    budget: Budget,
    rng: &mut dyn RngCore,
) -> Result<P::Solution, EngineError> {
    if climbers.is_empty() {
        return Err(EngineError::EmptyVnd);
    }
    for c in climbers {
        if c.kind() != ComponentKind::HillClimber {
            return Err(EngineError::NotAHillClimber(c.name().to_string()));
        }
    }
    budget.validate()?;
    if !problem.is_feasible(s0) {
        return Err(EngineError::InfeasibleInitial);
    }
    let mut clock = BudgetClock::start(budget);
    let mut recorder = TraceRecorder::new(problem.objective(s0));
    let (best, _) = vnd_descend(climbers, problem, s0, &mut clock, rng, &mut recorder);
    Ok(best)
}

/// Strategy A plus scheduled VND polishing of the incumbent best. The
/// descent fires at most once per incumbent, consumes the run's own budget,
/// and its improvements are folded into the trace.
pub fn run_strategy_b<P: Problem>(
    config: &CmcsConfig,
    vnd: &VndSchedule,
    pool: &ComponentPool<P>,
    problem: &P,
    s0: &P::Solution,
    budget: Budget,
    rng: &mut dyn RngCore,
) -> Result<RunResult<P::Solution>, EngineError> {
    config.validate()?;
    vnd.validate()?;
    budget.validate()?;
    let components = pool.resolve(&config.components)?;
    let climbers = resolve_climbers(pool, &vnd.climbers)?;
    if !problem.is_feasible(s0) {
        return Err(EngineError::InfeasibleInitial);
    }

    let mut clock = BudgetClock::start(budget);
    let mut current = s0.clone();
    let mut best = s0.clone();
    let f0 = problem.objective(s0);
    let mut best_obj = f0;
    let mut prev_obj = f0;
    let mut active = 0usize;
    let mut recorder = TraceRecorder::new(f0);
    let mut tally = TransitionTally::new(config.components.clone());
    let mut vnd_applied = false;
    let mut polished: Option<(P::Solution, i64)> = None;

    while !clock.expired() {
        components[active].apply(problem, &mut current, rng);
        clock.note_application();
        debug_assert!(problem.is_feasible(&current));
        let cur = problem.objective(&current);
        let improved = cur < prev_obj;
        let next = if improved {
            config.m_succ.roulette(active, rng)
        } else {
            config.m_fail.roulette(active, rng)
        };
        tally.record(active, next, improved);
        if improved && cur < best_obj {
            best = current.clone();
            best_obj = cur;
            vnd_applied = false;
            recorder.observe(clock.stamp(), cur);
        }
        active = next;
        if !vnd_applied && clock.reached_fraction(vnd.threshold) {
            let (sol, obj) = vnd_descend(&climbers, problem, &best, &mut clock, rng, &mut recorder);
            match &polished {
                Some((_, prev)) if obj >= *prev => {}
                _ => polished = Some((sol, obj)),
            }
            vnd_applied = true;
        }
        prev_obj = cur;
    }

    let (ret_sol, ret_obj) = match polished {
        Some((sol, obj)) if vnd.faithful || obj < best_obj => (sol, obj),
        _ => (best, best_obj),
    };

    Ok(RunResult {
        best_solution: ret_sol,
        best_objective: ret_obj,
        trace: recorder.points,
        iterations_executed: clock.applications(),
        elapsed: clock.stamp(),
        transitions: vec![tally],
    })
}

fn trivial_result<P: Problem>(
    problem: &P,
    s0: &P::Solution,
    components: Vec<String>,
) -> RunResult<P::Solution> {
    let f0 = problem.objective(s0);
    RunResult {
        best_solution: s0.clone(),
        best_objective: f0,
        trace: vec![TracePoint {
            elapsed: 0.0,
            objective: f0,
        }],
        iterations_executed: 0,
        elapsed: 0.0,
        transitions: vec![TransitionTally::new(components)],
    }
}

/// Strategy C: `sub1` for the leading `split` share of the budget, then
/// `sub2` for the remainder starting from phase 1's best solution. A phase
/// whose share rounds to zero is skipped.
pub fn run_strategy_c<P: Problem>(
    config: &TwoStageConfig,
    pool: &ComponentPool<P>,
    problem: &P,
    s0: &P::Solution,
    budget: Budget,
    rng: &mut dyn RngCore,
) -> Result<RunResult<P::Solution>, EngineError> {
    config.validate()?;
    budget.validate()?;
    pool.resolve(&config.sub1.components)?;
    pool.resolve(&config.sub2.components)?;
    if !problem.is_feasible(s0) {
        return Err(EngineError::InfeasibleInitial);
    }

    let (b1, b2) = budget.split(config.split);
    let first = if b1.is_zero() {
        trivial_result(problem, s0, config.sub1.components.clone())
    } else {
        run_strategy_a(&config.sub1, pool, problem, s0, b1, rng)?
    };
    if b2.is_zero() {
        return Ok(first);
    }
    let second = run_strategy_a(
        &config.sub2,
        pool,
        problem,
        &first.best_solution,
        b2,
        rng,
    )?;

    // Phase 2 starts from phase 1's best, so its trace opens at phase 1's
    // floor; keeping only strict improvements preserves monotonicity.
    let mut trace = first.trace;
    let offset = first.elapsed;
    let mut floor = trace.last().expect("trace never empty").objective;
    for p in &second.trace {
        if p.objective < floor {
            floor = p.objective;
            trace.push(TracePoint {
                elapsed: offset + p.elapsed,
                objective: p.objective,
            });
        }
    }

    let mut transitions = first.transitions;
    transitions.extend(second.transitions);
    Ok(RunResult {
        best_solution: second.best_solution,
        best_objective: second.best_objective,
        trace,
        iterations_executed: first.iterations_executed + second.iterations_executed,
        elapsed: offset + second.elapsed,
        transitions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::TransitionMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Integer line: the solution is its own objective.
    struct Toy;

    impl Problem for Toy {
        type Solution = i64;

        fn objective(&self, s: &i64) -> i64 {
            *s
        }

        fn is_feasible(&self, _s: &i64) -> bool {
            true
        }

        fn initial_solution(&self, rng: &mut dyn RngCore) -> i64 {
            rng.random_range(0..100)
        }
    }

    /// Toy with a feasibility floor, for initial-solution validation.
    struct BoundedToy {
        lo: i64,
    }

    impl Problem for BoundedToy {
        type Solution = i64;

        fn objective(&self, s: &i64) -> i64 {
            *s
        }

        fn is_feasible(&self, s: &i64) -> bool {
            *s >= self.lo
        }

        fn initial_solution(&self, _rng: &mut dyn RngCore) -> i64 {
            self.lo
        }
    }

    struct Step {
        name: &'static str,
        kind: ComponentKind,
        f: fn(&mut i64, &mut dyn RngCore),
    }

    impl Component<Toy> for Step {
        fn name(&self) -> &str {
            self.name
        }

        fn kind(&self) -> ComponentKind {
            self.kind
        }

        fn apply(&self, _p: &Toy, s: &mut i64, rng: &mut dyn RngCore) {
            (self.f)(s, rng)
        }
    }

    fn toy_pool() -> ComponentPool<Toy> {
        use ComponentKind::{HillClimber, Mutation};
        let mut pool = ComponentPool::new();
        let steps: Vec<Step> = vec![
            Step { name: "dec", kind: HillClimber, f: |s, _| *s -= 1 },
            Step { name: "dec2", kind: HillClimber, f: |s, _| *s -= 2 },
            Step { name: "inc", kind: Mutation, f: |s, _| *s += 1 },
            Step { name: "walk", kind: Mutation, f: |s, rng| *s += rng.random_range(-5..=5) },
            Step { name: "drift", kind: Mutation, f: |s, rng| *s += rng.random_range(-2..=7) },
            Step {
                name: "dec3f",
                kind: HillClimber,
                f: |s, _| {
                    if *s >= 3 {
                        *s -= 3
                    }
                },
            },
            Step {
                name: "dec1f",
                kind: HillClimber,
                f: |s, _| {
                    if *s >= 1 {
                        *s -= 1
                    }
                },
            },
            Step {
                name: "floor10",
                kind: HillClimber,
                f: |s, _| {
                    if *s > 10 {
                        *s -= 1
                    }
                },
            },
            Step {
                name: "slow-dec",
                kind: HillClimber,
                f: |s, _| {
                    std::thread::sleep(std::time::Duration::from_millis(60));
                    *s -= 1
                },
            },
        ];
        for s in steps {
            pool.register(Arc::new(s));
        }
        pool
    }

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn matrix(rows: &[&[u32]]) -> TransitionMatrix {
        TransitionMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn alternate2(a: &str, b: &str) -> CmcsConfig {
        CmcsConfig::new(
            names(&[a, b]),
            matrix(&[&[0, 2], &[2, 0]]),
            matrix(&[&[0, 2], &[2, 0]]),
        )
        .unwrap()
    }

    #[test]
    fn iteration_budget_executes_exactly() {
        let pool = toy_pool();
        let config = alternate2("dec", "inc");
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in [1u64, 2, 7, 100] {
            let r =
                run_strategy_a(&config, &pool, &Toy, &10, Budget::Iterations(n), &mut rng).unwrap();
            assert_eq!(r.iterations_executed, n);
            assert_eq!(r.elapsed, n as f64);
            let tallied: u64 = r.transitions[0]
                .succ
                .iter()
                .chain(r.transitions[0].fail.iter())
                .flatten()
                .sum();
            assert_eq!(tallied, n);
        }
    }

    #[test]
    fn accepts_worsening_moves_and_tracks_best_separately() {
        // dec and inc alternate deterministically: the walk oscillates
        // between 9 and 10 while the best pins 9 after the first step.
        let pool = toy_pool();
        let config = alternate2("dec", "inc");
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let r = run_strategy_a(&config, &pool, &Toy, &10, Budget::Iterations(5), &mut rng).unwrap();
        assert_eq!(r.best_objective, 9);
        assert_eq!(r.best_solution, 9);
        assert_eq!(
            r.trace,
            vec![
                TracePoint { elapsed: 0.0, objective: 10 },
                TracePoint { elapsed: 1.0, objective: 9 },
            ]
        );
        // Iterations: dec(9) succ, inc(10) fail, dec(9) succ, inc(10) fail,
        // dec(9) succ. Success draws always leave dec for inc and vice versa.
        assert_eq!(r.transitions[0].succ, vec![vec![0, 3], vec![0, 0]]);
        assert_eq!(r.transitions[0].fail, vec![vec![0, 0], vec![2, 0]]);
    }

    #[test]
    fn replays_against_reference_interpreter() {
        let pool = toy_pool();
        let m_succ = matrix(&[&[1, 1], &[2, 0]]);
        let m_fail = matrix(&[&[0, 2], &[1, 1]]);
        let config =
            CmcsConfig::new(names(&["walk", "drift"]), m_succ.clone(), m_fail.clone()).unwrap();
        let s0 = 50i64;
        let iters = 500u64;

        let mut engine_rng = ChaCha8Rng::seed_from_u64(42);
        let r = run_strategy_a(
            &config,
            &pool,
            &Toy,
            &s0,
            Budget::Iterations(iters),
            &mut engine_rng,
        )
        .unwrap();

        // Reference: same draw order (component draw, then roulette draw,
        // every iteration), best updated after the transition draw.
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut cur = s0;
        let mut prev = s0;
        let mut best = s0;
        let mut active = 0usize;
        let mut trace = vec![TracePoint { elapsed: 0.0, objective: s0 }];
        let mut succ = vec![vec![0u64; 2]; 2];
        let mut fail = vec![vec![0u64; 2]; 2];
        for it in 1..=iters {
            match active {
                0 => cur += rng.random_range(-5..=5),
                _ => cur += rng.random_range(-2..=7),
            }
            let improved = cur < prev;
            let next = if improved {
                m_succ.roulette(active, &mut rng)
            } else {
                m_fail.roulette(active, &mut rng)
            };
            if improved {
                succ[active][next] += 1;
            } else {
                fail[active][next] += 1;
            }
            if improved && cur < best {
                best = cur;
                trace.push(TracePoint { elapsed: it as f64, objective: cur });
            }
            active = next;
            prev = cur;
        }

        assert_eq!(r.best_objective, best);
        assert_eq!(r.trace, trace);
        assert_eq!(r.transitions[0].succ, succ);
        assert_eq!(r.transitions[0].fail, fail);
        // Both consumed the same number of draws.
        assert_eq!(engine_rng.next_u64(), rng.next_u64());
    }

    #[test]
    fn runs_are_deterministic_per_seed() {
        let pool = toy_pool();
        let config = CmcsConfig::new(
            names(&["walk", "dec"]),
            matrix(&[&[1, 1], &[1, 1]]),
            matrix(&[&[1, 1], &[1, 1]]),
        )
        .unwrap();
        let run = |seed: u64| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            run_strategy_a(&config, &pool, &Toy, &40, Budget::Iterations(300), &mut rng).unwrap()
        };
        assert_eq!(run(9), run(9));
        assert_ne!(run(9).best_objective, run(10).best_objective);
    }

    #[test]
    fn wall_clock_overshoots_by_at_most_one_application() {
        let pool = toy_pool();
        let config = CmcsConfig::new(
            names(&["slow-dec"]),
            matrix(&[&[1]]),
            matrix(&[&[1]]),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // One 60 ms application against a 40 ms budget: the application in
        // flight finishes, no further one starts.
        let r =
            run_strategy_a(&config, &pool, &Toy, &5, Budget::WallClockMs(40), &mut rng).unwrap();
        assert_eq!(r.iterations_executed, 1);
        assert!(r.elapsed >= 40.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        let pool = toy_pool();
        let config = alternate2("dec", "inc");
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert_eq!(
            run_strategy_a(&config, &pool, &Toy, &10, Budget::Iterations(0), &mut rng).unwrap_err(),
            EngineError::ZeroBudget
        );
        let ghost = CmcsConfig::new(names(&["ghost"]), matrix(&[&[1]]), matrix(&[&[1]])).unwrap();
        assert_eq!(
            run_strategy_a(&ghost, &pool, &Toy, &10, Budget::Iterations(5), &mut rng).unwrap_err(),
            EngineError::UnknownComponent("ghost".into())
        );
    }

    #[test]
    fn rejects_infeasible_initial_solution() {
        struct Fixed;
        impl Component<BoundedToy> for Fixed {
            fn name(&self) -> &str {
                "fixed"
            }
            fn kind(&self) -> ComponentKind {
                ComponentKind::HillClimber
            }
            fn apply(&self, _p: &BoundedToy, _s: &mut i64, _rng: &mut dyn RngCore) {}
        }
        let mut pool = ComponentPool::new();
        pool.register(Arc::new(Fixed));
        let config = CmcsConfig::new(names(&["fixed"]), matrix(&[&[1]]), matrix(&[&[1]])).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let problem = BoundedToy { lo: 0 };
        assert_eq!(
            run_strategy_a(&config, &pool, &problem, &-5, Budget::Iterations(5), &mut rng)
                .unwrap_err(),
            EngineError::InfeasibleInitial
        );
    }

    #[test]
    fn vnd_probes_in_order_restarts_on_improvement_and_respects_budget() {
        let pool = toy_pool();
        let climbers = pool.resolve(&names(&["dec3f", "dec1f"])).unwrap();
        // From 10: three dec3f steps reach 1, dec3f then stalls, dec1f
        // reaches 0, and a full failed pass ends the descent.
        for (budget, expect) in [(3u64, 1i64), (4, 1), (5, 0), (100, 0)] {
            let mut rng = ChaCha8Rng::seed_from_u64(6);
            let out =
                run_vnd(&climbers, &Toy, &10, Budget::Iterations(budget), &mut rng).unwrap();
            assert_eq!(out, expect, "budget {budget}");
        }
    }

    #[test]
    fn vnd_rejects_non_climbers_and_empty_lists() {
        let pool = toy_pool();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let walk = pool.resolve(&names(&["walk"])).unwrap();
        assert_eq!(
            run_vnd(&walk, &Toy, &10, Budget::Iterations(5), &mut rng).unwrap_err(),
            EngineError::NotAHillClimber("walk".into())
        );
        assert_eq!(
            run_vnd(&[], &Toy, &10, Budget::Iterations(5), &mut rng).unwrap_err(),
            EngineError::EmptyVnd
        );
    }

    #[test]
    fn strategy_b_polishes_best_within_the_shared_budget() {
        // Main chain only worsens (inc), so the incumbent stays at the
        // start; the descent fires at 25% and walks it down to the floor,
        // consuming the remaining applications of the same budget.
        let pool = toy_pool();
        let config = CmcsConfig::new(names(&["inc"]), matrix(&[&[1]]), matrix(&[&[1]])).unwrap();
        let mut vnd = VndSchedule::new(names(&["floor10"]));
        vnd.threshold = 0.25;
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let r = run_strategy_b(
            &config,
            &vnd,
            &pool,
            &Toy,
            &40,
            Budget::Iterations(12),
            &mut rng,
        )
        .unwrap();
        assert_eq!(r.iterations_executed, 12);
        assert_eq!(r.best_objective, 31);
        assert_eq!(r.best_solution, 31);
        let mut expected = vec![TracePoint { elapsed: 0.0, objective: 40 }];
        for (stamp, obj) in (4..=12).zip((31..=39).rev()) {
            expected.push(TracePoint { elapsed: stamp as f64, objective: obj });
        }
        assert_eq!(r.trace, expected);
    }

    #[test]
    fn strategy_b_rearms_after_each_new_best() {
        // Every improvement re-arms the descent, which then burns one probe
        // per main-loop step; without re-arming the chain would reach -18.
        let pool = toy_pool();
        let config = CmcsConfig::new(names(&["dec2"]), matrix(&[&[1]]), matrix(&[&[1]])).unwrap();
        let mut vnd = VndSchedule::new(names(&["floor10"]));
        vnd.threshold = 0.3;
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let r = run_strategy_b(
            &config,
            &vnd,
            &pool,
            &Toy,
            &20,
            Budget::Iterations(20),
            &mut rng,
        )
        .unwrap();
        assert_eq!(r.iterations_executed, 20);
        assert_eq!(r.best_objective, -6);
        let stamps: Vec<f64> = r.trace.iter().map(|p| p.elapsed).collect();
        assert_eq!(
            stamps,
            vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0, 18.0, 20.0]
        );
    }

    #[test]
    fn strategy_b_with_unit_threshold_matches_strategy_a_exactly() {
        let pool = toy_pool();
        let config = CmcsConfig::new(
            names(&["walk", "dec"]),
            matrix(&[&[1, 1], &[1, 1]]),
            matrix(&[&[0, 2], &[1, 1]]),
        )
        .unwrap();
        let mut vnd = VndSchedule::new(names(&["dec1f"]));
        vnd.threshold = 1.0;
        for seed in [10u64, 11, 12] {
            for faithful in [false, true] {
                vnd.faithful = faithful;
                let mut rng_a = ChaCha8Rng::seed_from_u64(seed);
                let a = run_strategy_a(
                    &config,
                    &pool,
                    &Toy,
                    &30,
                    Budget::Iterations(250),
                    &mut rng_a,
                )
                .unwrap();
                let mut rng_b = ChaCha8Rng::seed_from_u64(seed);
                let b = run_strategy_b(
                    &config,
                    &vnd,
                    &pool,
                    &Toy,
                    &30,
                    Budget::Iterations(250),
                    &mut rng_b,
                )
                .unwrap();
                assert_eq!(a, b);
                assert_eq!(rng_a.next_u64(), rng_b.next_u64());
            }
        }
    }

    #[test]
    fn strategy_b_faithful_and_default_agree_once_polished() {
        // The descent re-fires in the same iteration as every new best, so
        // the polished solution can never lag behind the incumbent.
        let pool = toy_pool();
        let config = CmcsConfig::new(
            names(&["walk", "dec"]),
            matrix(&[&[1, 1], &[1, 1]]),
            matrix(&[&[1, 1], &[1, 1]]),
        )
        .unwrap();
        for seed in 20u64..30 {
            let mut results = Vec::new();
            for faithful in [false, true] {
                let mut vnd = VndSchedule::new(names(&["dec1f"]));
                vnd.threshold = 0.4;
                vnd.faithful = faithful;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                results.push(
                    run_strategy_b(
                        &config,
                        &vnd,
                        &pool,
                        &Toy,
                        &25,
                        Budget::Iterations(120),
                        &mut rng,
                    )
                    .unwrap(),
                );
            }
            assert_eq!(results[0], results[1]);
        }
    }

    #[test]
    fn strategy_c_chains_phases_and_merges_traces() {
        let pool = toy_pool();
        let sub1 = CmcsConfig::new(names(&["dec"]), matrix(&[&[1]]), matrix(&[&[1]])).unwrap();
        let sub2 = CmcsConfig::new(names(&["dec2"]), matrix(&[&[1]]), matrix(&[&[1]])).unwrap();
        let config = TwoStageConfig::new(sub1, sub2, 0.6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let r =
            run_strategy_c(&config, &pool, &Toy, &100, Budget::Iterations(10), &mut rng).unwrap();
        assert_eq!(r.iterations_executed, 10);
        assert_eq!(r.best_objective, 86);
        assert_eq!(r.elapsed, 10.0);
        assert_eq!(r.transitions.len(), 2);
        assert_eq!(r.transitions[0].components, names(&["dec"]));
        assert_eq!(r.transitions[1].components, names(&["dec2"]));
        let expected: Vec<TracePoint> = [
            (0.0, 100),
            (1.0, 99),
            (2.0, 98),
            (3.0, 97),
            (4.0, 96),
            (5.0, 95),
            (6.0, 94),
            (7.0, 92),
            (8.0, 90),
            (9.0, 88),
            (10.0, 86),
        ]
        .iter()
        .map(|&(elapsed, objective)| TracePoint { elapsed, objective })
        .collect();
        assert_eq!(r.trace, expected);
    }

    #[test]
    fn strategy_c_with_full_split_matches_strategy_a() {
        let pool = toy_pool();
        let sub1 = CmcsConfig::new(
            names(&["walk", "drift"]),
            matrix(&[&[1, 1], &[2, 0]]),
            matrix(&[&[0, 2], &[1, 1]]),
        )
        .unwrap();
        let sub2 = CmcsConfig::new(names(&["dec"]), matrix(&[&[1]]), matrix(&[&[1]])).unwrap();
        let config = TwoStageConfig::new(sub1.clone(), sub2, 1.0).unwrap();
        let mut rng_a = ChaCha8Rng::seed_from_u64(14);
        let a =
            run_strategy_a(&sub1, &pool, &Toy, &60, Budget::Iterations(200), &mut rng_a).unwrap();
        let mut rng_c = ChaCha8Rng::seed_from_u64(14);
        let c =
            run_strategy_c(&config, &pool, &Toy, &60, Budget::Iterations(200), &mut rng_c).unwrap();
        assert_eq!(a, c);
        assert_eq!(rng_a.next_u64(), rng_c.next_u64());
    }

    #[test]
    fn strategy_c_skips_a_zero_length_first_phase() {
        let pool = toy_pool();
        let sub1 = CmcsConfig::new(names(&["inc"]), matrix(&[&[1]]), matrix(&[&[1]])).unwrap();
        let sub2 = CmcsConfig::new(
            names(&["walk", "dec"]),
            matrix(&[&[1, 1], &[1, 1]]),
            matrix(&[&[1, 1], &[1, 1]]),
        )
        .unwrap();
        let config = TwoStageConfig::new(sub1, sub2.clone(), 0.04).unwrap();
        let mut rng_c = ChaCha8Rng::seed_from_u64(15);
        let c =
            run_strategy_c(&config, &pool, &Toy, &70, Budget::Iterations(10), &mut rng_c).unwrap();
        let mut rng_a = ChaCha8Rng::seed_from_u64(15);
        let a =
            run_strategy_a(&sub2, &pool, &Toy, &70, Budget::Iterations(10), &mut rng_a).unwrap();
        assert_eq!(c.best_objective, a.best_objective);
        assert_eq!(c.iterations_executed, 10);
        assert_eq!(c.trace, a.trace);
        // Phase 1 contributes an all-zero tally, phase 2 the real one.
        assert_eq!(c.transitions.len(), 2);
        let phase1: u64 = c.transitions[0]
            .succ
            .iter()
            .chain(c.transitions[0].fail.iter())
            .flatten()
            .sum();
        assert_eq!(phase1, 0);
        assert_eq!(c.transitions[1], a.transitions[0]);
    }

    #[test]
    fn trace_is_strictly_decreasing_from_the_initial_objective() {
        let pool = toy_pool();
        let config = CmcsConfig::new(
            names(&["walk", "drift", "dec"]),
            matrix(&[&[1, 1, 1], &[3, 0, 0], &[0, 1, 2]]),
            matrix(&[&[0, 2, 1], &[1, 1, 1], &[1, 0, 2]]),
        )
        .unwrap();
        for seed in 0u64..10 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r = run_strategy_a(&config, &pool, &Toy, &80, Budget::Iterations(400), &mut rng)
                .unwrap();
            assert_eq!(r.trace[0], TracePoint { elapsed: 0.0, objective: 80 });
            for w in r.trace.windows(2) {
                assert!(w[1].objective < w[0].objective);
                assert!(w[1].elapsed >= w[0].elapsed);
            }
            assert_eq!(r.trace.last().unwrap().objective, r.best_objective);
        }
    }
}
