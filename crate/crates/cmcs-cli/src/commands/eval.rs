use crate::args::EvalArgs;
use crate::commands::{load_instances, map_tasks, resolve_workers, single_run};
use crate::schema::{load_config, read_json, BaselineFile};
use anyhow::{bail, Context, Result};
use cmcs::ap3::standard_pool;
use cmcs::configurator::Candidate;
use cmcs::engine::{Budget, TracePoint};
use cmcs::seed::{derive, STREAM_EVAL};
use std::fmt::Write as _;

/// Best objective seen at or before `t_ms`; the trace always opens at 0.
fn value_at(trace: &[TracePoint], t_ms: f64) -> i64 {
    let mut value = trace[0].objective;
    for point in trace {
        if point.elapsed <= t_ms {
            value = point.objective;
        } else {
            break;
        }
    }
    value
}

fn time_grid(min_s: f64, max_s: f64, points: usize) -> Vec<f64> {
    let (ln0, ln1) = (min_s.ln(), max_s.ln());
    (0..points)
        .map(|i| (ln0 + (ln1 - ln0) * i as f64 / (points - 1) as f64).exp())
        .collect()
}

pub fn run(args: &EvalArgs) -> Result<()> {
    if args.repeats == 0 {
        bail!("--repeats must be positive");
    }
    if args.grid_points < 2 {
        bail!("--grid-points must be at least 2");
    }
    if !(args.grid_min_s > 0.0) || !args.grid_min_s.is_finite() {
        bail!("--grid-min-s must be a positive number");
    }
    let budget_s = args.budget_ms as f64 / 1000.0;
    if budget_s <= args.grid_min_s {
        bail!(
            "--budget-ms {} does not exceed the first sample time {}s",
            args.budget_ms,
            args.grid_min_s
        );
    }

    let mut labels: Vec<String> = Vec::new();
    let mut candidates: Vec<Candidate> = Vec::new();
    for arg in &args.configs {
        let (file, label) = load_config(arg)?;
        let mut unique = label.clone();
        let mut suffix = 2;
        while labels.contains(&unique) {
            unique = format!("{label}#{suffix}");
            suffix += 1;
        }
        labels.push(unique);
        candidates.push(file.to_candidate(false)?);
    }

    let instances = load_instances(&args.instances)?;
    let table: BaselineFile = read_json(&args.baseline)?;
    let mut references = Vec::with_capacity(instances.len());
    for instance in &instances {
        let Some(&reference) = table.best.get(instance.name()) else {
            bail!("no baseline entry for instance `{}`", instance.name());
        };
        if reference <= 0 {
            bail!(
                "baseline for `{}` must be positive to express errors as percentages",
                instance.name()
            );
        }
        references.push(reference as f64);
    }

    let pool = standard_pool();
    let workers = resolve_workers(args.workers);
    let budget = Budget::WallClockMs(args.budget_ms);
    let repeats = args.repeats as usize;
    let runs_per_config = instances.len() * repeats;
    let count = candidates.len() * runs_per_config;
    let traces = map_tasks(count, workers, |task| {
        let config = task / runs_per_config;
        let instance = (task % runs_per_config) / repeats;
        let repeat = (task % repeats) as u64;
        let seed = derive(&[
            args.seed,
            STREAM_EVAL,
            config as u64,
            instance as u64,
            repeat,
        ]);
        single_run(&pool, &candidates[config], &instances[instance], budget, seed)
            .map(|r| r.trace)
    })?;
    let traces = traces.into_iter().collect::<Result<Vec<_>>>()?;

    let grid = time_grid(args.grid_min_s, budget_s, args.grid_points);
    let mut csv = String::from("time_s");
    for label in &labels {
        csv.push(',');
        csv.push_str(label);
    }
    csv.push('\n');
    let mut final_errors = vec![0.0; candidates.len()];
    for &t_s in &grid {
        write!(csv, "{t_s:.6}").expect("string writes cannot fail");
        for config in 0..candidates.len() {
            let mut sum = 0.0;
            for instance in 0..instances.len() {
                for repeat in 0..repeats {
                    let trace = &traces[(config * instances.len() + instance) * repeats + repeat];
                    let value = value_at(trace, t_s * 1000.0) as f64;
                    sum += 100.0 * (value - references[instance]) / references[instance];
                }
            }
            let mean = sum / runs_per_config as f64;
            write!(csv, ",{mean:.6}").expect("string writes cannot fail");
            final_errors[config] = mean;
        }
        csv.push('\n');
    }

    std::fs::write(&args.out, &csv)
        .with_context(|| format!("writing `{}`", args.out.display()))?;
    for (label, error) in labels.iter().zip(&final_errors) {
        println!("{label}: mean error {error:.6}% at {budget_s}s");
    }
    println!(
        "{} sample times x {} configurations written to {}",
        grid.len(),
        labels.len(),
        args.out.display()
    );
    Ok(())
}
