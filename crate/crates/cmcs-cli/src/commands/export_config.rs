use crate::args::ExportConfigArgs;
use crate::schema::{load_config, read_json, ResultRecord, SubConfigData};
use anyhow::{bail, Context, Result};
use std::fmt::Write as _;

/// One phase worth of matrices: strategies A and B have a single `main`
/// phase, strategy C exports `sub1` and `sub2`.
struct Phase {
    name: &'static str,
    config: SubConfigData,
}

fn phase_list(file: &crate::schema::ConfigFile) -> Result<Vec<Phase>> {
    Ok(match file.strategy.as_str() {
        "A" | "B" => vec![Phase {
            name: "main",
            config: SubConfigData {
                components: file.components.clone().context("missing `components`")?,
                m_succ: file.m_succ.clone().context("missing `m_succ`")?,
                m_fail: file.m_fail.clone().context("missing `m_fail`")?,
                denominator: file.denominator.context("missing `denominator`")?,
            },
        }],
        "C" => {
            let sub = |data: Option<&SubConfigData>, field| {
                data.cloned().with_context(|| format!("missing `{field}`"))
            };
            vec![
                Phase {
                    name: "sub1",
                    config: sub(file.sub1.as_ref(), "sub1")?,
                },
                Phase {
                    name: "sub2",
                    config: sub(file.sub2.as_ref(), "sub2")?,
                },
            ]
        }
        other => bail!("unknown strategy `{other}` (expected A, B or C)"),
    })
}

pub fn run(args: &ExportConfigArgs) -> Result<()> {
    let (file, _label) = load_config(&args.config)?;
    // Revalidates matrix shapes, so every row below is well-formed.
    file.to_candidate(false)?;
    let phases = phase_list(&file)?;

    let record: Option<ResultRecord> = match &args.record {
        Some(path) => Some(read_json(path)?),
        None => None,
    };
    if let Some(record) = &record {
        for (index, phase) in phases.iter().enumerate() {
            if let Some(tally) = record.transitions.get(index) {
                if tally.components != phase.config.components {
                    bail!(
                        "record phase {index} tallies components {:?}, configuration has {:?}",
                        tally.components,
                        phase.config.components
                    );
                }
            }
        }
    }

    let mut csv = String::from(
        "phase,outcome,from,to,numerator,denominator,probability,observed_count,observed_frequency\n",
    );
    for (index, phase) in phases.iter().enumerate() {
        let names = &phase.config.components;
        let denominator = phase.config.denominator;
        let tally = record.as_ref().and_then(|r| r.transitions.get(index));
        for (outcome, matrix) in [("succ", &phase.config.m_succ), ("fail", &phase.config.m_fail)]
        {
            for (from, row) in matrix.iter().enumerate() {
                let counts = tally.map(|t| {
                    if outcome == "succ" {
                        &t.succ[from]
                    } else {
                        &t.fail[from]
                    }
                });
                let row_total: u64 = counts.map(|c| c.iter().sum()).unwrap_or(0);
                for (to, &numerator) in row.iter().enumerate() {
                    write!(
                        csv,
                        "{},{},{},{},{},{},{:.6}",
                        phase.name,
                        outcome,
                        names[from],
                        names[to],
                        numerator,
                        denominator,
                        numerator as f64 / denominator as f64
                    )
                    .expect("string writes cannot fail");
                    match counts {
                        Some(c) if row_total > 0 => {
                            write!(csv, ",{},{:.6}", c[to], c[to] as f64 / row_total as f64)
                                .expect("string writes cannot fail");
                        }
                        Some(c) => {
                            write!(csv, ",{},", c[to]).expect("string writes cannot fail");
                        }
                        None => csv.push_str(",,"),
                    }
                    csv.push('\n');
                }
            }
        }
    }

    match &args.out {
        Some(path) => {
            std::fs::write(path, &csv)
                .with_context(|| format!("writing `{}`", path.display()))?;
        }
        None => print!("{csv}"),
    }
    Ok(())
}
