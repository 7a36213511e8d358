//! Exploratory comparison of hand-built configurations on held-out
//! instances; prints mean relative error at the 1 s evaluation horizon and
//! the mean raw objective at the 200 ms stage-scoring horizon.

use cmcs::ap3::{standard_pool, Ap3Instance, Family};
use cmcs::configurator::Candidate;
use cmcs::engine::{Budget, CmcsConfig, Problem, TransitionMatrix, TwoStageConfig};
use cmcs::seed::derive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cfg(mutation: &str, climber: &str, succ: Vec<Vec<u32>>, fail: Vec<Vec<u32>>) -> CmcsConfig {
    CmcsConfig::new(
        vec![mutation.into(), climber.into()],
        TransitionMatrix::new(succ).unwrap(),
        TransitionMatrix::new(fail).unwrap(),
    )
    .unwrap()
}

fn alt(mutation: &str, climber: &str) -> CmcsConfig {
    cfg(
        mutation,
        climber,
        vec![vec![0, 2], vec![2, 0]],
        vec![vec![0, 2], vec![2, 0]],
    )
}

/// Mutation always hands off to the climber; the climber keeps climbing on
/// success and kicks with probability 1/2 on failure.
fn k2(mutation: &str, climber: &str) -> CmcsConfig {
    cfg(
        mutation,
        climber,
        vec![vec![0, 2], vec![0, 2]],
        vec![vec![0, 2], vec![1, 1]],
    )
}

fn main() {
    let pool = standard_pool();
    let held: Vec<Ap3Instance> = (0..10u64)
        .map(|i| Ap3Instance::generate(Family::Random, 20, derive(&[1010, 2, i])).unwrap())
        .collect();
    let two = |sub1: CmcsConfig, sub2: CmcsConfig| {
        Candidate::StrategyC(TwoStageConfig::new(sub1, sub2, 0.8).unwrap())
    };
    let st = "shuffle-three";
    let rs = "random-swap";
    let adh = "all-dim-hungarian";
    let configs: Vec<(&str, Candidate)> = vec![
        ("A st alt", Candidate::StrategyA(alt(st, adh))),
        ("A st k2", Candidate::StrategyA(k2(st, adh))),
        ("A rs alt", Candidate::StrategyA(alt(rs, adh))),
        ("A rs k2", Candidate::StrategyA(k2(rs, adh))),
        ("C alt|k2", two(alt(st, adh), k2(st, adh))),
        ("C alt|alt", two(alt(st, adh), alt(st, adh))),
        ("C k2|k2", two(k2(st, adh), k2(st, adh))),
        ("C k2|alt", two(k2(st, adh), alt(st, adh))),
        ("C rs/st mix", two(alt(st, adh), k2(rs, adh))),
    ];

    let repeats = 3usize;
    let mut evals = vec![vec![vec![0i64; repeats]; held.len()]; configs.len()];
    let mut stage = evals.clone();
    for (ci, (label, cand)) in configs.iter().enumerate() {
        for (ii, inst) in held.iter().enumerate() {
            for r in 0..repeats {
                let mut rng =
                    ChaCha8Rng::seed_from_u64(derive(&[778, ci as u64, ii as u64, r as u64]));
                let s0 = inst.initial_solution(&mut rng);
                let long = cand
                    .run(&pool, inst, &s0, Budget::WallClockMs(1000), &mut rng)
                    .unwrap();
                evals[ci][ii][r] = long.best_objective;
                let mut rng =
                    ChaCha8Rng::seed_from_u64(derive(&[779, ci as u64, ii as u64, r as u64]));
                let s0 = inst.initial_solution(&mut rng);
                let short = cand
                    .run(&pool, inst, &s0, Budget::WallClockMs(200), &mut rng)
                    .unwrap();
                stage[ci][ii][r] = short.best_objective;
            }
        }
        eprintln!("measured {label}");
    }

    let refs: Vec<i64> = (0..held.len())
        .map(|ii| {
            (0..configs.len())
                .map(|ci| *evals[ci][ii].iter().min().unwrap())
                .min()
                .unwrap()
        })
        .collect();
    println!(
        "{:<12} {:>9} {:>12}",
        "config", "err@1s", "obj@200ms"
    );
    for (ci, (label, _)) in configs.iter().enumerate() {
        let err: f64 = (0..held.len())
            .map(|ii| {
                evals[ci][ii]
                    .iter()
                    .map(|&v| 100.0 * (v - refs[ii]) as f64 / refs[ii] as f64)
                    .sum::<f64>()
                    / repeats as f64
            })
            .sum::<f64>()
            / held.len() as f64;
        let raw: f64 = (0..held.len())
            .map(|ii| stage[ci][ii].iter().sum::<i64>() as f64 / repeats as f64)
            .sum::<f64>()
            / held.len() as f64;
        println!("{label:<12} {err:>9.3} {raw:>12.1}");
    }
}
