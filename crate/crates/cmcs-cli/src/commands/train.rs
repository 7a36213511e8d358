use crate::args::{ScoringArg, StrategyArg, TrainArgs};
use crate::commands::{build_pool, load_instances, pick_budget, resolve_workers};
use crate::schema::{
    budget_label, read_json, write_json, BaselineFile, ConfigFile, Provenance,
};
use anyhow::{bail, Context, Result};
use cmcs::ap3::Ap3Instance;
use cmcs::configurator::{
    enumerate_meaningful_subsets, pair_count, plan, Configurator, ConfiguratorResult,
    GenerationLog, PlannedStrategy, Scoring, SearchBudget, SingleStrategy, TrainingInstance,
    TrainingProtocol,
};
use cmcs::engine::{ComponentKind, ComponentPool};
use serde::Serialize;
use std::fmt::Write as _;
use std::sync::Arc;

const DEFAULT_RUN_MS: u64 = 1000;
const DEFAULT_SEARCH_MS: u64 = 240_000;

fn search_budget(args: &TrainArgs) -> SearchBudget {
    match (args.search_seconds, args.generations) {
        (_, Some(g)) => SearchBudget::Generations(g),
        (Some(s), None) => SearchBudget::WallClockMs(s * 1000),
        (None, None) => SearchBudget::WallClockMs(DEFAULT_SEARCH_MS),
    }
}

fn search_label(budget: SearchBudget) -> String {
    match budget {
        SearchBudget::WallClockMs(ms) => format!("{ms}ms"),
        SearchBudget::Generations(g) => format!("{g}gens"),
    }
}

fn render_log_line(line: &GenerationLog) -> String {
    format!(
        "{} gen {} best {:.6} global {:.6} evals {}",
        line.label, line.generation, line.generation_best, line.global_best, line.evaluations
    )
}

/// Leaderboard rows for the optional JSON report.
#[derive(Serialize)]
struct LeaderboardRow<'a> {
    label: &'a str,
    training_score: f64,
    validation_score: f64,
    evaluations: u64,
    winner: bool,
}

fn named(instances: Vec<Ap3Instance>) -> Vec<TrainingInstance<Ap3Instance>> {
    instances
        .into_iter()
        .map(|instance| {
            let name = instance.name().to_string();
            TrainingInstance::new(name, Arc::new(instance))
        })
        .collect()
}

fn print_plan(
    pool: &ComponentPool<Ap3Instance>,
    args: &TrainArgs,
    protocol: &TrainingProtocol,
) -> Result<()> {
    let descriptors = pool.descriptors();
    let subsets = enumerate_meaningful_subsets(&descriptors, args.size)?.len() as u64;
    let (planned, units) = match args.strategy {
        StrategyArg::A => (PlannedStrategy::A, subsets),
        StrategyArg::B => (PlannedStrategy::B, subsets),
        StrategyArg::C => (
            PlannedStrategy::C,
            pair_count(subsets, protocol.include_identical_pairs),
        ),
    };
    match protocol.matrix_search_budget {
        SearchBudget::WallClockMs(ms) if ms % 60_000 == 0 => {
            let table = plan(planned, units, ms / 60_000);
            println!(
                "{} units x {} stages x {} min = {} minutes total",
                table.units, table.stages, table.stage_minutes, table.total_minutes
            );
        }
        SearchBudget::WallClockMs(ms) => {
            let stages = plan(planned, units, 1).stages;
            let seconds = ms as f64 / 1000.0;
            println!(
                "{} units x {} stages x {} s = {} seconds total",
                units,
                stages,
                seconds,
                units as f64 * stages as f64 * seconds
            );
        }
        SearchBudget::Generations(g) => {
            let stages = plan(planned, units, 1).stages;
            println!(
                "{} units x {} stages x {} generations = {} candidate evaluations",
                units,
                stages,
                g,
                units * stages * g * protocol.population_size as u64
            );
        }
    }
    Ok(())
}

pub fn run(args: &TrainArgs) -> Result<()> {
    let pool = build_pool(args.pool.as_deref())?;
    let per_run = pick_budget(args.budget_ms, args.budget_iters, DEFAULT_RUN_MS);
    let search = search_budget(args);
    if args.population == 0 || args.population % 2 != 0 {
        bail!("--population must be a positive even number");
    }
    let scoring = match args.scoring {
        ScoringArg::Objective => Scoring::MeanObjective,
        ScoringArg::RelativeError => {
            let path = args
                .baseline
                .as_ref()
                .context("--scoring relative-error requires --baseline")?;
            let table: BaselineFile = read_json(path)?;
            Scoring::MeanRelativeError {
                baseline: table.best,
            }
        }
    };
    let protocol = TrainingProtocol {
        per_run_budget: per_run,
        matrix_search_budget: search,
        population_size: args.population,
        children_of_generation_best: args.population / 2,
        children_of_global_best: args.population / 2,
        scoring,
        workers: resolve_workers(args.workers),
        vnd_threshold: args.vnd_threshold,
        faithful_b: args.faithful_b,
        split: args.split,
        include_identical_pairs: !args.distinct_pairs,
        stage1_full_budget: !args.stage1_truncated,
        validation_budget: None,
    };

    if args.dry_run {
        return print_plan(&pool, args, &protocol);
    }

    let train_dir = args
        .train
        .as_ref()
        .context("--train is required unless --dry-run is given")?;
    let training = named(load_instances(train_dir)?);
    let validation = match &args.validation {
        Some(dir) => named(load_instances(dir)?),
        None => Vec::new(),
    };

    let configurator = Configurator::new(&pool, &training, &validation, protocol, args.seed)?;
    let result = match args.strategy {
        StrategyArg::A => configurator.configure_single_stage(args.size, &SingleStrategy::A)?,
        StrategyArg::B => {
            let vnd = args.vnd.clone().unwrap_or_else(|| {
                pool.descriptors()
                    .iter()
                    .filter(|d| d.kind == ComponentKind::HillClimber)
                    .map(|d| d.name.clone())
                    .collect()
            });
            configurator.configure_single_stage(args.size, &SingleStrategy::B { vnd })?
        }
        StrategyArg::C => configurator.configure_strategy_c(args.size)?,
    };

    report(args, per_run, search, &result)
}

fn report(
    args: &TrainArgs,
    per_run: cmcs::engine::Budget,
    search: SearchBudget,
    result: &ConfiguratorResult,
) -> Result<()> {
    let mut log_text = String::new();
    for line in &result.log {
        let rendered = render_log_line(line);
        println!("{rendered}");
        writeln!(log_text, "{rendered}").expect("string writes cannot fail");
    }
    if let Some(path) = &args.log {
        std::fs::write(path, &log_text)
            .with_context(|| format!("writing `{}`", path.display()))?;
    }

    let rows: Vec<LeaderboardRow> = result
        .leaderboard
        .iter()
        .enumerate()
        .map(|(i, entry)| LeaderboardRow {
            label: &entry.label,
            training_score: entry.training_score,
            validation_score: entry.validation_score,
            evaluations: entry.evaluations,
            winner: i == result.winner_index,
        })
        .collect();
    if let Some(path) = &args.leaderboard {
        write_json(path, &rows)?;
    }
    let total_evaluations: u64 = result.leaderboard.iter().map(|e| e.evaluations).sum();
    for row in &rows {
        println!(
            "{} {}  training {:.6}  validation {:.6}  evals {}",
            if row.winner { "*" } else { " " },
            row.label,
            row.training_score,
            row.validation_score,
            row.evaluations
        );
    }
    println!(
        "winner: {} ({} evaluations, wall time {:.1}s)",
        result.winner_label,
        total_evaluations,
        result.wall_time.as_secs_f64()
    );

    let provenance = Provenance {
        seed: args.seed,
        budgets: format!(
            "run={} search={}",
            budget_label(per_run),
            search_label(search)
        ),
        tool_version: env!("CARGO_PKG_VERSION").into(),
    };
    let file = ConfigFile::from_candidate(&result.winner, Some(provenance));
    write_json(&args.out, &file)?;
    println!("configuration written to {}", args.out.display());
    Ok(())
}
