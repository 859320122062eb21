use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::config::GeneratorConfig;
use super::generate::generate_instance;
use crate::chains::{verify, ChainId, ChainReport, Instance};
use crate::error::{Error, Result};

/// How trials are scheduled. `Parallel` runs on the rayon pool when the
/// `parallel` feature is enabled and serially otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

/// Result of one trial: a report, or the reason the instance was refused.
#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub trial: u64,
    pub instance: Instance,
    pub result: std::result::Result<ChainReport, Error>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub chain_id: String,
    pub trials: u64,
    pub failures: u64,
    /// Instances refused by the verifier's precondition gate.
    pub rejected: u64,
    /// Largest `|min_gap|` over failing links.
    pub max_failure_gap: Option<f64>,
    /// Smallest non-negative link slack over passing reports.
    pub min_positive_gap: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_rejection: Option<String>,
    pub wall_time_s: f64,
}

impl CampaignSummary {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.rejected == 0
    }

    /// Equality ignoring wall time.
    pub fn same_outcome(&self, other: &Self) -> bool {
        Self {
            wall_time_s: 0.0,
            ..self.clone()
        } == Self {
            wall_time_s: 0.0,
            ..other.clone()
        }
    }
}

#[derive(Debug, Clone)]
pub struct Campaign {
    pub summary: CampaignSummary,
    pub outcomes: Vec<TrialOutcome>,
}

impl Campaign {
    /// Reports in trial order, rejected trials omitted.
    pub fn reports(&self) -> impl Iterator<Item = &ChainReport> {
        self.outcomes.iter().filter_map(|o| o.result.as_ref().ok())
    }

    pub fn failing(&self) -> impl Iterator<Item = &TrialOutcome> {
        self.outcomes
            .iter()
            .filter(|o| matches!(&o.result, Ok(r) if !r.overall_holds))
    }

    /// One JSON report per line, in trial order.
    pub fn write_jsonl(&self, mut out: impl Write) -> Result<()> {
        for r in self.reports() {
            serde_json::to_writer(&mut out, r)?;
            out.write_all(b"\n")?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_jsonl(&self) -> Result<Vec<u8>> {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf)?;
        Ok(buf)
    }
}

fn run_trial(cfg: &GeneratorConfig, chain: ChainId, trial: u64) -> Result<TrialOutcome> {
    let instance = generate_instance(cfg, chain, trial)?;
    let result = verify(chain, &instance, cfg.tol);
    Ok(TrialOutcome {
        trial,
        instance,
        result,
    })
}

#[cfg(feature = "parallel")]
fn run_all(cfg: &GeneratorConfig, chain: ChainId, exec: Execution) -> Result<Vec<TrialOutcome>> {
    use rayon::prelude::*;
    match exec {
        Execution::Parallel => (0..cfg.trials)
            .into_par_iter()
            .map(|t| run_trial(cfg, chain, t))
            .collect(),
        Execution::Serial => (0..cfg.trials).map(|t| run_trial(cfg, chain, t)).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_all(cfg: &GeneratorConfig, chain: ChainId, _exec: Execution) -> Result<Vec<TrialOutcome>> {
    (0..cfg.trials).map(|t| run_trial(cfg, chain, t)).collect()
}

/// Runs `cfg.trials` seeded trials of `chain`. Outcomes come back sorted
/// by trial index whatever the execution mode.
pub fn run_campaign(cfg: &GeneratorConfig, chain: ChainId, exec: Execution) -> Result<Campaign> {
    cfg.validate()?;
    let start = Instant::now();
    let mut outcomes = run_all(cfg, chain, exec)?;
    outcomes.sort_by_key(|o| o.trial);
    let wall_time_s = start.elapsed().as_secs_f64();

    let mut failures = 0;
    let mut rejected = 0;
    let mut max_failure_gap: Option<f64> = None;
    let mut min_positive_gap: Option<f64> = None;
    let mut first_rejection = None;
    for o in &outcomes {
        match &o.result {
            Ok(r) if r.overall_holds => {
                if let Some(t) = r.tightness() {
                    min_positive_gap = Some(min_positive_gap.map_or(t, |g| g.min(t)));
                }
            }
            Ok(r) => {
                failures += 1;
                for l in r.links.iter().filter(|l| !l.holds) {
                    let g = l.min_gap.abs();
                    max_failure_gap = Some(max_failure_gap.map_or(g, |m| m.max(g)));
                }
            }
            Err(e) => {
                rejected += 1;
                if first_rejection.is_none() {
                    first_rejection = Some(format!("trial {}: {e}", o.trial));
                }
            }
        }
    }
    Ok(Campaign {
        summary: CampaignSummary {
            chain_id: chain.as_str().to_string(),
            trials: cfg.trials,
            failures,
            rejected,
            max_failure_gap,
            min_positive_gap,
            first_rejection,
            wall_time_s,
        },
        outcomes,
    })
}

/// A near-equality instance found by [`tightness_search`].
#[derive(Debug, Clone, Serialize)]
pub struct TightInstance {
    pub trial: u64,
    pub slack: f64,
    pub report: ChainReport,
}

/// The `k` passing trials whose smallest link slack is closest to zero.
pub fn tightness_search(
    cfg: &GeneratorConfig,
    chain: ChainId,
    k: usize,
    exec: Execution,
) -> Result<Vec<TightInstance>> {
    let campaign = run_campaign(cfg, chain, exec)?;
    let mut found: Vec<TightInstance> = campaign
        .outcomes
        .into_iter()
        .filter_map(|o| {
            let report = o.result.ok().filter(|r| r.overall_holds)?;
            Some(TightInstance {
                trial: o.trial,
                slack: report.tightness()?,
                report,
            })
        })
        .collect();
    found.sort_by(|a, b| a.slack.total_cmp(&b.slack).then(a.trial.cmp(&b.trial)));
    found.truncate(k);
    Ok(found)
}
