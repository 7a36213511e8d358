pub mod baseline;
pub mod eval;
pub mod export_config;
pub mod gen;
pub mod solve;
pub mod train;

use anyhow::{bail, Context, Result};
use cmcs::ap3::{standard_pool, Ap3Instance, Ap3Solution};
use cmcs::configurator::Candidate;
use cmcs::engine::{Budget, ComponentPool, Problem, RunResult};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::path::Path;
use std::sync::Arc;

/// Loads one `.ap3` file, or every `.ap3` file in a directory sorted by
/// file name so seed derivation downstream is reproducible.
pub fn load_instances(path: &Path) -> Result<Vec<Ap3Instance>> {
    let meta = std::fs::metadata(path)
        .with_context(|| format!("reading `{}`", path.display()))?;
    if meta.is_file() {
        let instance = Ap3Instance::load(path)
            .with_context(|| format!("loading `{}`", path.display()))?;
        return Ok(vec![instance]);
    }
    let mut files = Vec::new();
    let entries = std::fs::read_dir(path)
        .with_context(|| format!("listing `{}`", path.display()))?;
    for entry in entries {
        let file = entry.with_context(|| format!("listing `{}`", path.display()))?.path();
        if file.extension().is_some_and(|e| e == "ap3") {
            files.push(file);
        }
    }
    files.sort();
    if files.is_empty() {
        bail!("no .ap3 instances found in `{}`", path.display());
    }
    files
        .iter()
        .map(|f| Ap3Instance::load(f).with_context(|| format!("loading `{}`", f.display())))
        .collect()
}

/// Restricts the standard component pool to `names` in the given order,
/// which also fixes the subset enumeration order.
pub fn build_pool(names: Option<&[String]>) -> Result<ComponentPool<Ap3Instance>> {
    let standard = standard_pool();
    let Some(names) = names else {
        return Ok(standard);
    };
    let mut pool = ComponentPool::new();
    for name in names {
        if pool.get(name).is_some() {
            bail!("component `{name}` listed twice in --pool");
        }
        let component = standard
            .get(name)
            .with_context(|| format!("unknown component `{name}`"))?;
        pool.register(Arc::clone(component));
    }
    Ok(pool)
}

pub fn resolve_workers(workers: Option<usize>) -> usize {
    workers.unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    })
}

pub fn pick_budget(ms: Option<u64>, iters: Option<u64>, default_ms: u64) -> Budget {
    match (ms, iters) {
        (_, Some(n)) => Budget::Iterations(n),
        (Some(ms), None) => Budget::WallClockMs(ms),
        (None, None) => Budget::WallClockMs(default_ms),
    }
}

/// One independent run: the seed covers both the starting solution and the
/// search, so a (candidate, instance, seed) triple fully determines the run
/// under iteration budgets.
pub fn single_run(
    pool: &ComponentPool<Ap3Instance>,
    candidate: &Candidate,
    instance: &Ap3Instance,
    budget: Budget,
    seed: u64,
) -> Result<RunResult<Ap3Solution>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s0 = instance.initial_solution(&mut rng);
    Ok(candidate.run(pool, instance, &s0, budget, &mut rng)?)
}

/// Runs `count` independent tasks, in order on one worker or on a dedicated
/// thread pool otherwise. Results come back in task order either way.
pub fn map_tasks<T, F>(count: usize, workers: usize, task: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    if workers <= 1 || count <= 1 {
        return Ok((0..count).map(task).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .context("building the worker pool")?;
    Ok(pool.install(|| (0..count).into_par_iter().map(task).collect()))
}
