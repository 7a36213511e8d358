use crate::args::BaselineArgs;
use crate::commands::{load_instances, map_tasks, pick_budget, resolve_workers, single_run};
use crate::schema::{budget_label, load_config, write_json, BaselineFile};
use anyhow::{bail, Result};
use cmcs::ap3::standard_pool;
use cmcs::seed::{derive, STREAM_BASELINE};
use std::collections::BTreeMap;

const DEFAULT_RUN_MS: u64 = 1000;

pub fn run(args: &BaselineArgs) -> Result<()> {
    if args.repeats == 0 {
        bail!("--repeats must be positive");
    }
    let (file, label) = load_config(&args.config)?;
    let candidate = file.to_candidate(false)?;
    let instances = load_instances(&args.instances)?;
    let budget = pick_budget(args.budget_ms, args.budget_iters, DEFAULT_RUN_MS);
    let pool = standard_pool();
    let workers = resolve_workers(args.workers);

    // Repeat r of instance i always draws the same seed, so raising
    // --repeats can only extend each minimum over a superset of runs.
    let repeats = args.repeats as usize;
    let count = instances.len() * repeats;
    let objectives = map_tasks(count, workers, |task| {
        let instance = &instances[task / repeats];
        let repeat = (task % repeats) as u64;
        let seed = derive(&[args.seed, STREAM_BASELINE, (task / repeats) as u64, repeat]);
        single_run(&pool, &candidate, instance, budget, seed).map(|r| r.best_objective)
    })?;

    let mut best = BTreeMap::new();
    for (task, objective) in objectives.into_iter().enumerate() {
        let objective = objective?;
        let name = instances[task / repeats].name().to_string();
        best.entry(name)
            .and_modify(|cur: &mut i64| *cur = (*cur).min(objective))
            .or_insert(objective);
    }

    let table = BaselineFile {
        method: label,
        budget: budget_label(budget),
        seed: args.seed,
        repeats: args.repeats,
        best,
    };
    write_json(&args.out, &table)?;
    println!(
        "baseline for {} instances written to {}",
        instances.len(),
        args.out.display()
    );
    Ok(())
}
