//! The matrix search and its orchestration.
//!
//! Per subset: a population of 50 deterministic-matrix configurations; each
//! generation evaluates all members (mean score over the training instances,
//! lower is better), then breeds 25 children of the generation best and 25 of
//! the best observed so far. Every run seed is derived from (master seed,
//! unit, stage, generation, member, instance), so any parallel schedule
//! reproduces the sequential result bit for bit.

use super::mutation::{mutate_configuration, random_deterministic_matrix};
use super::subsets::enumerate_meaningful_subsets;
use super::ConfigureError;
use crate::engine::{
    run_strategy_a, run_strategy_b, run_strategy_c, Budget, CmcsConfig, ComponentKind,
    ComponentPool, Problem, RunResult, TwoStageConfig, VndSchedule,
};
use crate::seed::{derive, STREAM_MATRIX, STREAM_TRAIN_RUN, STREAM_VALIDATE};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

/// A named problem instance used for training or validation.
pub struct TrainingInstance<P: Problem> {
    pub name: String,
    pub problem: Arc<P>,
}

impl<P: Problem> TrainingInstance<P> {
    pub fn new(name: impl Into<String>, problem: Arc<P>) -> Self {
        TrainingInstance {
            name: name.into(),
            problem,
        }
    }
}

impl<P: Problem> Clone for TrainingInstance<P> {
    fn clone(&self) -> Self {
        TrainingInstance {
            name: self.name.clone(),
            problem: Arc::clone(&self.problem),
        }
    }
}

/// Lower scores are better under both statistics.
#[derive(Clone, Debug)]
pub enum Scoring {
    MeanObjective,
    /// Mean of 100 * (objective - reference) / reference over instances.
    MeanRelativeError { baseline: BTreeMap<String, i64> },
}

/// Budget for one matrix search (one subset for A/B, one stage for C).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchBudget {
    WallClockMs(u64),
    Generations(u64),
}

#[derive(Clone, Debug)]
pub struct TrainingProtocol {
    pub per_run_budget: Budget,
    pub matrix_search_budget: SearchBudget,
    pub population_size: usize,
    pub children_of_generation_best: usize,
    pub children_of_global_best: usize,
    pub scoring: Scoring,
    /// Parallel evaluation width; 1 means in-place sequential evaluation.
    pub workers: usize,
    pub vnd_threshold: f64,
    pub faithful_b: bool,
    pub split: f64,
    /// Train identical subset pairs for strategy C too.
    pub include_identical_pairs: bool,
    /// Evaluate first-slot candidates in stage 1 over the full per-run
    /// budget; when false, over the leading `split` share only.
    pub stage1_full_budget: bool,
    /// Per-run budget for the final winner selection pass; `None` reuses
    /// `per_run_budget`. Selecting at the deployment budget matters when
    /// it differs from the training budget: behavior tuned at one horizon
    /// does not always rank the same at another.
    pub validation_budget: Option<Budget>,
}

impl Default for TrainingProtocol {
    fn default() -> Self {
        TrainingProtocol {
            per_run_budget: Budget::WallClockMs(1000),
            matrix_search_budget: SearchBudget::WallClockMs(4 * 60 * 1000),
            population_size: 50,
            children_of_generation_best: 25,
            children_of_global_best: 25,
            scoring: Scoring::MeanObjective,
            workers: 1,
            vnd_threshold: VndSchedule::DEFAULT_THRESHOLD,
            faithful_b: false,
            split: TwoStageConfig::DEFAULT_SPLIT,
            include_identical_pairs: true,
            stage1_full_budget: true,
            validation_budget: None,
        }
    }
}

impl TrainingProtocol {
    fn validate(&self) -> Result<(), ConfigureError> {
        if self.population_size == 0
            || self.population_size
                != self.children_of_generation_best + self.children_of_global_best
        {
            return Err(ConfigureError::InvalidProtocol(format!(
                "population {} must equal children {} + {}",
                self.population_size,
                self.children_of_generation_best,
                self.children_of_global_best
            )));
        }
        if self.workers == 0 {
            return Err(ConfigureError::InvalidProtocol("workers must be >= 1".into()));
        }
        match self.matrix_search_budget {
            SearchBudget::WallClockMs(0) | SearchBudget::Generations(0) => {
                return Err(ConfigureError::InvalidProtocol(
                    "matrix search budget must be positive".into(),
                ));
            }
            _ => {}
        }
        self.per_run_budget.validate().map_err(ConfigureError::from)?;
        if let Some(budget) = self.validation_budget {
            budget.validate().map_err(ConfigureError::from)?;
        }
        if !(self.split > 0.0 && self.split <= 1.0) {
            return Err(ConfigureError::InvalidProtocol(format!(
                "split {} outside (0, 1]",
                self.split
            )));
        }
        if !(0.0..=1.0).contains(&self.vnd_threshold) {
            return Err(ConfigureError::InvalidProtocol(format!(
                "vnd threshold {} outside [0, 1]",
                self.vnd_threshold
            )));
        }
        Ok(())
    }
}

/// Which single-configuration strategy a training campaign targets.
#[derive(Clone, Debug)]
pub enum SingleStrategy {
    A,
    B { vnd: Vec<String> },
}

/// A runnable configuration under one of the three strategies.
#[derive(Clone, Debug, PartialEq)]
pub enum Candidate {
    StrategyA(CmcsConfig),
    StrategyB { config: CmcsConfig, vnd: VndSchedule },
    StrategyC(TwoStageConfig),
}

impl Candidate {
    pub fn run<P: Problem>(
        &self,
        pool: &ComponentPool<P>,
        problem: &P,
        s0: &P::Solution,
        budget: Budget,
        rng: &mut dyn RngCore,
    ) -> Result<RunResult<P::Solution>, ConfigureError> {
        let result = match self {
            Candidate::StrategyA(cfg) => run_strategy_a(cfg, pool, problem, s0, budget, rng)?,
            Candidate::StrategyB { config, vnd } => {
                run_strategy_b(config, vnd, pool, problem, s0, budget, rng)?
            }
            Candidate::StrategyC(cfg) => run_strategy_c(cfg, pool, problem, s0, budget, rng)?,
        };
        Ok(result)
    }
}

/// Which slot of the final configuration a matrix search populates.
#[derive(Clone, Debug)]
pub enum MatrixSearchTarget {
    SingleA,
    SingleB { vnd: VndSchedule },
    /// First slot of a pair. With no frozen partner the candidate runs alone
    /// as strategy A; with one, as the full two-phase strategy.
    FirstOfPair { frozen_sub2: Option<CmcsConfig> },
    /// Second slot; the first is frozen.
    SecondOfPair { frozen_sub1: CmcsConfig },
}

fn score_run(scoring: &Scoring, instance: &str, objective: i64) -> Result<f64, ConfigureError> {
    match scoring {
        Scoring::MeanObjective => Ok(objective as f64),
        Scoring::MeanRelativeError { baseline } => {
            let reference = *baseline
                .get(instance)
                .ok_or_else(|| ConfigureError::MissingBaseline(instance.to_string()))?;
            if reference <= 0 {
                return Err(ConfigureError::NonPositiveBaseline(instance.to_string()));
            }
            Ok(100.0 * (objective - reference) as f64 / reference as f64)
        }
    }
}

/// Scores one candidate: one run per instance, seeded from `seeds`, averaged
/// under `scoring`. The orchestration layers parallelize across candidates
/// and call this same function, so schedules cannot change scores.
pub fn evaluate_configuration<P: Problem>(
    pool: &ComponentPool<P>,
    candidate: &Candidate,
    instances: &[TrainingInstance<P>],
    budget: Budget,
    scoring: &Scoring,
    seeds: &[u64],
) -> Result<f64, ConfigureError> {
    if instances.is_empty() {
        return Err(ConfigureError::NoInstances);
    }
    if seeds.len() != instances.len() {
        return Err(ConfigureError::InvalidProtocol(format!(
            "{} seeds for {} instances",
            seeds.len(),
            instances.len()
        )));
    }
    let mut total = 0.0;
    for (inst, &seed) in instances.iter().zip(seeds) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s0 = inst.problem.initial_solution(&mut rng);
        let result = candidate.run(pool, inst.problem.as_ref(), &s0, budget, &mut rng)?;
        total += score_run(scoring, &inst.name, result.best_objective)?;
    }
    Ok(total / instances.len() as f64)
}

/// One line of the training log, per generation of one matrix search.
#[derive(Clone, Debug, PartialEq)]
pub struct GenerationLog {
    pub label: String,
    pub generation: u64,
    pub generation_best: f64,
    pub global_best: f64,
    /// Configurations evaluated in this generation.
    pub evaluations: u64,
}

#[derive(Clone, Debug)]
pub struct MatrixSearchOutcome {
    pub config: CmcsConfig,
    pub score: f64,
    pub generations: u64,
    pub evaluations: u64,
    pub log: Vec<GenerationLog>,
}

#[derive(Clone, Debug)]
pub struct LeaderboardEntry {
    pub label: String,
    pub candidate: Candidate,
    pub training_score: f64,
    pub validation_score: f64,
    pub evaluations: u64,
}

#[derive(Clone, Debug)]
pub struct ConfiguratorResult {
    pub winner: Candidate,
    pub winner_label: String,
    pub winner_index: usize,
    pub leaderboard: Vec<LeaderboardEntry>,
    pub log: Vec<GenerationLog>,
    pub wall_time: Duration,
}

pub struct Configurator<'a, P: Problem> {
    pool: &'a ComponentPool<P>,
    training: &'a [TrainingInstance<P>],
    validation: &'a [TrainingInstance<P>],
    protocol: TrainingProtocol,
    master_seed: u64,
    names: Vec<String>,
    kinds: Vec<ComponentKind>,
    thread_pool: Option<rayon::ThreadPool>,
}

impl<'a, P: Problem> Configurator<'a, P> {
    /// `validation` may be empty, in which case selection reuses the
    /// training set.
    pub fn new(
        pool: &'a ComponentPool<P>,
        training: &'a [TrainingInstance<P>],
        validation: &'a [TrainingInstance<P>],
        protocol: TrainingProtocol,
        master_seed: u64,
    ) -> Result<Self, ConfigureError> {
        protocol.validate()?;
        if training.is_empty() {
            return Err(ConfigureError::NoInstances);
        }
        let descriptors = pool.descriptors();
        let thread_pool = if protocol.workers > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(protocol.workers)
                    .build()
                    .map_err(|e| ConfigureError::InvalidProtocol(e.to_string()))?,
            )
        } else {
            None
        };
        Ok(Configurator {
            pool,
            training,
            validation,
            protocol,
            master_seed,
            names: descriptors.iter().map(|d| d.name.clone()).collect(),
            kinds: descriptors.iter().map(|d| d.kind).collect(),
            thread_pool,
        })
    }

    pub fn protocol(&self) -> &TrainingProtocol {
        &self.protocol
    }

    fn validation_set(&self) -> &[TrainingInstance<P>] {
        if self.validation.is_empty() {
            self.training
        } else {
            self.validation
        }
    }

    fn run_tasks<T: Send>(&self, count: usize, task: impl Fn(usize) -> T + Send + Sync) -> Vec<T> {
        match &self.thread_pool {
            Some(pool) => pool.install(|| (0..count).into_par_iter().map(task).collect()),
            None => (0..count).map(task).collect(),
        }
    }

    fn subset_names(&self, subset: &[usize]) -> Vec<String> {
        subset.iter().map(|&i| self.names[i].clone()).collect()
    }

    fn subset_label(&self, subset: &[usize]) -> String {
        self.subset_names(subset).join("+")
    }

    /// Realizes a candidate configuration for evaluation under the target
    /// strategy, together with its per-run budget.
    fn realize(&self, target: &MatrixSearchTarget, cfg: &CmcsConfig) -> (Candidate, Budget) {
        let per_run = self.protocol.per_run_budget;
        match target {
            MatrixSearchTarget::SingleA => (Candidate::StrategyA(cfg.clone()), per_run),
            MatrixSearchTarget::SingleB { vnd } => (
                Candidate::StrategyB {
                    config: cfg.clone(),
                    vnd: vnd.clone(),
                },
                per_run,
            ),
            MatrixSearchTarget::FirstOfPair { frozen_sub2: None } => {
                let budget = if self.protocol.stage1_full_budget {
                    per_run
                } else {
                    per_run.split(self.protocol.split).0
                };
                (Candidate::StrategyA(cfg.clone()), budget)
            }
            MatrixSearchTarget::FirstOfPair {
                frozen_sub2: Some(sub2),
            } => (
                Candidate::StrategyC(TwoStageConfig {
                    sub1: cfg.clone(),
                    sub2: sub2.clone(),
                    split: self.protocol.split,
                }),
                per_run,
            ),
            MatrixSearchTarget::SecondOfPair { frozen_sub1 } => (
                Candidate::StrategyC(TwoStageConfig {
                    sub1: frozen_sub1.clone(),
                    sub2: cfg.clone(),
                    split: self.protocol.split,
                }),
                per_run,
            ),
        }
    }

    fn search_done(&self, generation: u64, started: Instant) -> bool {
        match self.protocol.matrix_search_budget {
            SearchBudget::Generations(g) => generation >= g,
            SearchBudget::WallClockMs(ms) => started.elapsed() >= Duration::from_millis(ms),
        }
    }

    /// Evolves the matrix pair for one subset. `unit_id` and `stage` isolate
    /// the seed stream of this search from every other one in the campaign.
    pub fn optimize_matrices(
        &self,
        subset: &[usize],
        target: &MatrixSearchTarget,
        unit_id: u64,
        stage: u64,
        label: &str,
    ) -> Result<MatrixSearchOutcome, ConfigureError> {
        let names = self.subset_names(subset);
        let k = names.len();
        let mut rng = ChaCha8Rng::seed_from_u64(derive(&[
            self.master_seed,
            STREAM_MATRIX,
            unit_id,
            stage,
        ]));
        let mut population: Vec<CmcsConfig> = (0..self.protocol.population_size)
            .map(|_| CmcsConfig {
                components: names.clone(),
                m_succ: random_deterministic_matrix(k, &mut rng),
                m_fail: random_deterministic_matrix(k, &mut rng),
            })
            .collect();

        let started = Instant::now();
        let mut best: Option<(CmcsConfig, f64)> = None;
        let mut log = Vec::new();
        let mut evaluations = 0u64;
        let mut generation = 0u64;
        loop {
            generation += 1;
            let scores = self.evaluate_population(&population, target, unit_id, stage, generation)?;
            evaluations += population.len() as u64;
            let (gen_idx, gen_score) = scores
                .iter()
                .copied()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("population is never empty");
            if best.as_ref().is_none_or(|(_, s)| gen_score < *s) {
                best = Some((population[gen_idx].clone(), gen_score));
            }
            let global_best = best.as_ref().expect("set above").1;
            log.push(GenerationLog {
                label: label.to_string(),
                generation,
                generation_best: gen_score,
                global_best,
                evaluations: population.len() as u64,
            });
            if self.search_done(generation, started) {
                break;
            }
            let gen_best_cfg = population[gen_idx].clone();
            let global_best_cfg = best.as_ref().expect("set above").0.clone();
            let mut next = Vec::with_capacity(self.protocol.population_size);
            for _ in 0..self.protocol.children_of_generation_best {
                next.push(mutate_configuration(&gen_best_cfg, &mut rng));
            }
            for _ in 0..self.protocol.children_of_global_best {
                next.push(mutate_configuration(&global_best_cfg, &mut rng));
            }
            population = next;
        }
        let (config, score) = best.expect("at least one generation ran");
        Ok(MatrixSearchOutcome {
            config,
            score,
            generations: generation,
            evaluations,
            log,
        })
    }

    fn evaluate_population(
        &self,
        population: &[CmcsConfig],
        target: &MatrixSearchTarget,
        unit_id: u64,
        stage: u64,
        generation: u64,
    ) -> Result<Vec<f64>, ConfigureError> {
        let results = self.run_tasks(population.len(), |member| {
            let seeds: Vec<u64> = (0..self.training.len())
                .map(|instance| {
                    derive(&[
                        self.master_seed,
                        STREAM_TRAIN_RUN,
                        unit_id,
                        stage,
                        generation,
                        member as u64,
                        instance as u64,
                    ])
                })
                .collect();
            let (candidate, budget) = self.realize(target, &population[member]);
            evaluate_configuration(
                self.pool,
                &candidate,
                self.training,
                budget,
                &self.protocol.scoring,
                &seeds,
            )
        });
        results.into_iter().collect()
    }

    fn validation_scores(
        &self,
        candidates: &[Candidate],
    ) -> Result<Vec<f64>, ConfigureError> {
        let validation = self.validation_set();
        let budget = self
            .protocol
            .validation_budget
            .unwrap_or(self.protocol.per_run_budget);
        let results = self.run_tasks(candidates.len(), |unit| {
            let seeds: Vec<u64> = (0..validation.len())
                .map(|instance| {
                    derive(&[
                        self.master_seed,
                        STREAM_VALIDATE,
                        unit as u64,
                        instance as u64,
                    ])
                })
                .collect();
            evaluate_configuration(
                self.pool,
                &candidates[unit],
                validation,
                budget,
                &self.protocol.scoring,
                &seeds,
            )
        });
        results.into_iter().collect()
    }

    fn assemble(
        &self,
        labels: Vec<String>,
        candidates: Vec<Candidate>,
        training_scores: Vec<f64>,
        evaluation_counts: Vec<u64>,
        log: Vec<GenerationLog>,
        started: Instant,
    ) -> Result<ConfiguratorResult, ConfigureError> {
        let validation_scores = self.validation_scores(&candidates)?;
        let winner_index = validation_scores
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .expect("at least one candidate");
        let leaderboard: Vec<LeaderboardEntry> = labels
            .into_iter()
            .zip(candidates.iter().cloned())
            .zip(training_scores)
            .zip(validation_scores)
            .zip(evaluation_counts)
            .map(
                |((((label, candidate), training_score), validation_score), evaluations)| {
                    LeaderboardEntry {
                        label,
                        candidate,
                        training_score,
                        validation_score,
                        evaluations,
                    }
                },
            )
            .collect();
        Ok(ConfiguratorResult {
            winner: candidates.into_iter().nth(winner_index).expect("in range"),
            winner_label: leaderboard[winner_index].label.clone(),
            winner_index,
            leaderboard,
            log,
            wall_time: started.elapsed(),
        })
    }

    /// Trains strategy A or B: one matrix search per meaningful subset of
    /// `size`, winner picked on the validation set.
    pub fn configure_single_stage(
        &self,
        size: usize,
        strategy: &SingleStrategy,
    ) -> Result<ConfiguratorResult, ConfigureError> {
        let started = Instant::now();
        let descriptors = self.pool.descriptors();
        let subsets = enumerate_meaningful_subsets(&descriptors, size)?;
        let target = match strategy {
            SingleStrategy::A => MatrixSearchTarget::SingleA,
            SingleStrategy::B { vnd } => {
                for name in vnd {
                    let idx = self
                        .names
                        .iter()
                        .position(|n| n == name)
                        .ok_or_else(|| {
                            ConfigureError::Engine(crate::engine::EngineError::UnknownComponent(
                                name.clone(),
                            ))
                        })?;
                    if self.kinds[idx] != ComponentKind::HillClimber {
                        return Err(ConfigureError::Engine(
                            crate::engine::EngineError::NotAHillClimber(name.clone()),
                        ));
                    }
                }
                let mut schedule = VndSchedule::new(vnd.clone());
                schedule.threshold = self.protocol.vnd_threshold;
                schedule.faithful = self.protocol.faithful_b;
                MatrixSearchTarget::SingleB { vnd: schedule }
            }
        };

        let mut labels = Vec::new();
        let mut candidates = Vec::new();
        let mut training_scores = Vec::new();
        let mut evaluation_counts = Vec::new();
        let mut log = Vec::new();
        for (sid, subset) in subsets.iter().enumerate() {
            let label = self.subset_label(subset);
            let outcome = self.optimize_matrices(subset, &target, sid as u64, 0, &label)?;
            let (candidate, _) = self.realize(&target, &outcome.config);
            labels.push(label);
            candidates.push(candidate);
            training_scores.push(outcome.score);
            evaluation_counts.push(outcome.evaluations);
            log.extend(outcome.log);
        }
        self.assemble(
            labels,
            candidates,
            training_scores,
            evaluation_counts,
            log,
            started,
        )
    }

    /// Trains strategy C over ordered pairs of meaningful subsets in three
    /// alternating stages: first slot alone, second slot against the frozen
    /// first, then the first slot again against the frozen second.
    pub fn configure_strategy_c(&self, size: usize) -> Result<ConfiguratorResult, ConfigureError> {
        let started = Instant::now();
        let descriptors = self.pool.descriptors();
        let subsets = enumerate_meaningful_subsets(&descriptors, size)?;
        let mut pairs = Vec::new();
        for a in 0..subsets.len() {
            for b in 0..subsets.len() {
                if a != b || self.protocol.include_identical_pairs {
                    pairs.push((a, b));
                }
            }
        }
        if pairs.is_empty() {
            return Err(ConfigureError::InvalidProtocol(
                "one subset and identical pairs excluded: nothing to train".into(),
            ));
        }

        let mut labels = Vec::new();
        let mut candidates = Vec::new();
        let mut training_scores = Vec::new();
        let mut evaluation_counts = Vec::new();
        let mut log = Vec::new();
        for (pid, &(a, b)) in pairs.iter().enumerate() {
            let pair_label = format!(
                "{} | {}",
                self.subset_label(&subsets[a]),
                self.subset_label(&subsets[b])
            );
            let stage1 = self.optimize_matrices(
                &subsets[a],
                &MatrixSearchTarget::FirstOfPair { frozen_sub2: None },
                pid as u64,
                1,
                &format!("{pair_label} stage1"),
            )?;
            let stage2 = self.optimize_matrices(
                &subsets[b],
                &MatrixSearchTarget::SecondOfPair {
                    frozen_sub1: stage1.config.clone(),
                },
                pid as u64,
                2,
                &format!("{pair_label} stage2"),
            )?;
            let stage3 = self.optimize_matrices(
                &subsets[a],
                &MatrixSearchTarget::FirstOfPair {
                    frozen_sub2: Some(stage2.config.clone()),
                },
                pid as u64,
                3,
                &format!("{pair_label} stage3"),
            )?;
            let config = TwoStageConfig::new(stage3.config, stage2.config, self.protocol.split)?;
            labels.push(pair_label);
            candidates.push(Candidate::StrategyC(config));
            training_scores.push(stage3.score);
            evaluation_counts.push(stage1.evaluations + stage2.evaluations + stage3.evaluations);
            log.extend(stage1.log);
            log.extend(stage2.log);
            log.extend(stage3.log);
        }
        self.assemble(
            labels,
            candidates,
            training_scores,
            evaluation_counts,
            log,
            started,
        )
    }
}
