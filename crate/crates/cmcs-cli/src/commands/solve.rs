use crate::args::SolveArgs;
use crate::commands::{pick_budget, single_run};
use crate::schema::{
    budget_fields, load_config, write_json, ResultRecord, TracePointData, TransitionData,
};
use anyhow::{bail, Context, Result};
use cmcs::ap3::{standard_pool, Ap3Instance, Ap3Solution};
use cmcs::engine::{Budget, RunResult};

const DEFAULT_RUN_MS: u64 = 1000;

pub fn to_record(
    result: &RunResult<Ap3Solution>,
    instance: &str,
    config: &str,
    strategy: &str,
    seed: u64,
    budget: Budget,
) -> ResultRecord {
    let (budget_ms, budget_iterations) = budget_fields(budget);
    ResultRecord {
        instance: instance.to_string(),
        config: config.to_string(),
        strategy: strategy.to_string(),
        seed,
        budget_ms,
        budget_iterations,
        best_objective: result.best_objective,
        iterations: result.iterations_executed,
        trace: result
            .trace
            .iter()
            .map(|p| TracePointData {
                at: p.elapsed,
                objective: p.objective,
            })
            .collect(),
        transitions: result
            .transitions
            .iter()
            .map(|t| TransitionData {
                components: t.components.clone(),
                succ: t.succ.clone(),
                fail: t.fail.clone(),
            })
            .collect(),
    }
}

pub fn run(args: &SolveArgs) -> Result<()> {
    let (file, label) = load_config(&args.config)?;
    if let Some(expected) = args.strategy {
        if expected.letter() != file.strategy {
            bail!(
                "configuration `{label}` is strategy {} but --strategy {} was given",
                file.strategy,
                expected.letter()
            );
        }
    }
    let candidate = file.to_candidate(args.faithful_b)?;
    let instance = Ap3Instance::load(&args.instance)
        .with_context(|| format!("loading `{}`", args.instance.display()))?;
    let budget = pick_budget(args.budget_ms, args.budget_iters, DEFAULT_RUN_MS);

    let pool = standard_pool();
    let result = single_run(&pool, &candidate, &instance, budget, args.seed)?;
    let record = to_record(
        &result,
        instance.name(),
        &label,
        &file.strategy,
        args.seed,
        budget,
    );
    match &args.out {
        Some(path) => write_json(path, &record)?,
        None => println!("{}", serde_json::to_string_pretty(&record)?),
    }
    Ok(())
}
