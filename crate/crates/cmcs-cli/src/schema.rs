//! On-disk formats. All files are UTF-8 JSON with stable field order, so
//! write -> read -> write is byte-identical.

use anyhow::{bail, Context, Result};
use cmcs::engine::{Budget, CmcsConfig, TransitionMatrix, TwoStageConfig, VndSchedule};
use cmcs::configurator::Candidate;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

pub const BUILTIN_ALTERNATE: &str = "builtin-alternate";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubConfigData {
    pub components: Vec<String>,
    pub m_succ: Vec<Vec<u32>>,
    pub m_fail: Vec<Vec<u32>>,
    pub denominator: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub seed: u64,
    pub budgets: String,
    pub tool_version: String,
}

/// One trained configuration. Strategies A and B fill the flat fields, B
/// adds the vnd list, C uses the sub1/sub2/split triple instead.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub strategy: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_succ: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_fail: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub denominator: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vnd: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vnd_threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sub1: Option<SubConfigData>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sub2: Option<SubConfigData>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

fn sub_to_config(data: &SubConfigData) -> Result<CmcsConfig> {
    if data.denominator as usize != data.components.len() {
        bail!(
            "denominator {} does not match the {} components",
            data.denominator,
            data.components.len()
        );
    }
    let m_succ = TransitionMatrix::new(data.m_succ.clone())?;
    let m_fail = TransitionMatrix::new(data.m_fail.clone())?;
    Ok(CmcsConfig::new(data.components.clone(), m_succ, m_fail)?)
}

fn config_to_sub(config: &CmcsConfig) -> SubConfigData {
    SubConfigData {
        components: config.components.clone(),
        m_succ: config.m_succ.rows().to_vec(),
        m_fail: config.m_fail.rows().to_vec(),
        denominator: config.size() as u32,
    }
}

impl ConfigFile {
    pub fn from_candidate(candidate: &Candidate, provenance: Option<Provenance>) -> ConfigFile {
        let mut file = ConfigFile {
            strategy: String::new(),
            components: None,
            m_succ: None,
            m_fail: None,
            denominator: None,
            vnd: None,
            vnd_threshold: None,
            sub1: None,
            sub2: None,
            split: None,
            provenance,
        };
        match candidate {
            Candidate::StrategyA(config) => {
                file.strategy = "A".into();
                let sub = config_to_sub(config);
                file.components = Some(sub.components);
                file.m_succ = Some(sub.m_succ);
                file.m_fail = Some(sub.m_fail);
                file.denominator = Some(sub.denominator);
            }
            Candidate::StrategyB { config, vnd } => {
                file.strategy = "B".into();
                let sub = config_to_sub(config);
                file.components = Some(sub.components);
                file.m_succ = Some(sub.m_succ);
                file.m_fail = Some(sub.m_fail);
                file.denominator = Some(sub.denominator);
                file.vnd = Some(vnd.climbers.clone());
                file.vnd_threshold = Some(vnd.threshold);
            }
            Candidate::StrategyC(two) => {
                file.strategy = "C".into();
                file.sub1 = Some(config_to_sub(&two.sub1));
                file.sub2 = Some(config_to_sub(&two.sub2));
                file.split = Some(two.split);
            }
        }
        file
    }

    /// `faithful` applies to strategy B only: return the literal polished
    /// solution instead of the better of the two incumbents.
    pub fn to_candidate(&self, faithful: bool) -> Result<Candidate> {
        let flat = || -> Result<CmcsConfig> {
            let components = self
                .components
                .clone()
                .context("missing `components`")?;
            let m_succ = self.m_succ.clone().context("missing `m_succ`")?;
            let m_fail = self.m_fail.clone().context("missing `m_fail`")?;
            let denominator = self.denominator.context("missing `denominator`")?;
            sub_to_config(&SubConfigData {
                components,
                m_succ,
                m_fail,
                denominator,
            })
        };
        match self.strategy.as_str() {
            "A" => Ok(Candidate::StrategyA(flat()?)),
            "B" => {
                let mut vnd = VndSchedule::new(self.vnd.clone().context("missing `vnd`")?);
                if let Some(threshold) = self.vnd_threshold {
                    vnd.threshold = threshold;
                }
                vnd.faithful = faithful;
                Ok(Candidate::StrategyB { config: flat()?, vnd })
            }
            "C" => {
                let sub1 = sub_to_config(self.sub1.as_ref().context("missing `sub1`")?)?;
                let sub2 = sub_to_config(self.sub2.as_ref().context("missing `sub2`")?)?;
                let split = self.split.unwrap_or(TwoStageConfig::DEFAULT_SPLIT);
                Ok(Candidate::StrategyC(TwoStageConfig::new(sub1, sub2, split)?))
            }
            other => bail!("unknown strategy `{other}` (expected A, B or C)"),
        }
    }
}

/// Strong default: alternate a diversifying shuffle with the strongest
/// climber. Useful for baselines and as a solve-anything fallback.
pub fn builtin_alternate() -> ConfigFile {
    ConfigFile {
        strategy: "A".into(),
        components: Some(vec!["shuffle-three".into(), "all-dim-hungarian".into()]),
        m_succ: Some(vec![vec![0, 2], vec![2, 0]]),
        m_fail: Some(vec![vec![0, 2], vec![2, 0]]),
        denominator: Some(2),
        vnd: None,
        vnd_threshold: None,
        sub1: None,
        sub2: None,
        split: None,
        provenance: None,
    }
}

/// Resolves a `--config` argument: a builtin name or a JSON file path.
/// Returns the configuration and a short label for reports.
pub fn load_config(arg: &str) -> Result<(ConfigFile, String)> {
    if arg == BUILTIN_ALTERNATE {
        return Ok((builtin_alternate(), BUILTIN_ALTERNATE.to_string()));
    }
    let path = Path::new(arg);
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading configuration `{arg}`"))?;
    let file: ConfigFile =
        serde_json::from_str(&text).with_context(|| format!("parsing configuration `{arg}`"))?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| arg.to_string());
    Ok((file, label))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TracePointData {
    pub at: f64,
    pub objective: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransitionData {
    pub components: Vec<String>,
    pub succ: Vec<Vec<u64>>,
    pub fail: Vec<Vec<u64>>,
}

/// Outcome of one solve run. `trace.at` is milliseconds under wall-clock
/// budgets and the application count under iteration budgets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub instance: String,
    pub config: String,
    pub strategy: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget_iterations: Option<u64>,
    pub best_objective: i64,
    pub iterations: u64,
    pub trace: Vec<TracePointData>,
    pub transitions: Vec<TransitionData>,
}

/// Best-known objectives per instance, with how they were produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaselineFile {
    pub method: String,
    pub budget: String,
    pub seed: u64,
    pub repeats: u64,
    pub best: BTreeMap<String, i64>,
}

pub fn budget_fields(budget: Budget) -> (Option<u64>, Option<u64>) {
    match budget {
        Budget::WallClockMs(ms) => (Some(ms), None),
        Budget::Iterations(n) => (None, Some(n)),
    }
}

pub fn budget_label(budget: Budget) -> String {
    match budget {
        Budget::WallClockMs(ms) => format!("{ms}ms"),
        Budget::Iterations(n) => format!("{n}iters"),
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing `{}`", path.display()))?;
    Ok(())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading `{}`", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing `{}`", path.display()))
}
