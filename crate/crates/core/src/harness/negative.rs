//! Negative controls: functions fed to chains they do not qualify for. A
//! correct verifier must find violations.

use serde::Serialize;

use super::campaign::{run_campaign, Execution};
use super::config::GeneratorConfig;
use crate::chains::ChainId;
use crate::error::Result;
use crate::functions::find_monotonicity_violation;
use crate::functions::{OperatorFlags, ScalarFunction};

pub const NEGATIVE_TRIALS: u64 = 1000;

#[derive(Debug, Clone, Serialize)]
pub struct ControlOutcome {
    pub name: &'static str,
    pub description: &'static str,
    pub trials: u64,
    /// Trial index of the first violation, if any was found.
    pub first_violation: Option<u64>,
    pub violations: u64,
}

impl ControlOutcome {
    pub fn detected(&self) -> bool {
        self.first_violation.is_some()
    }
}

/// `t²` carrying a false operator-monotone flag.
pub fn square_claimed_monotone() -> ScalarFunction {
    ScalarFunction::power(2.0).with_claimed_flags(OperatorFlags {
        monotone: true,
        ..ScalarFunction::power(2.0).flags()
    })
}

fn chain_control(
    name: &'static str,
    description: &'static str,
    chain: ChainId,
    f: ScalarFunction,
    base: &GeneratorConfig,
    exec: Execution,
) -> Result<ControlOutcome> {
    let cfg = GeneratorConfig {
        function: Some(f),
        ..base.clone()
    };
    let campaign = run_campaign(&cfg, chain, exec)?;
    let failing: Vec<u64> = campaign.failing().map(|o| o.trial).collect();
    Ok(ControlOutcome {
        name,
        description,
        trials: cfg.trials,
        first_violation: failing.first().copied(),
        violations: failing.len() as u64,
    })
}

/// Runs the three controls with `trials` trials each.
pub fn run_negative_controls(seed: u64, trials: u64, exec: Execution) -> Result<Vec<ControlOutcome>> {
    let base = GeneratorConfig {
        seed,
        trials,
        ..Default::default()
    };
    let a = chain_control(
        "thm21_square",
        "t² claimed operator monotone in thm21",
        ChainId::Thm21,
        square_claimed_monotone(),
        &base,
        exec,
    )?;
    let b = chain_control(
        "logconvex_identity",
        "increasing t in logconvex_char",
        ChainId::LogconvexChar,
        ScalarFunction::power(1.0),
        &base,
        exec,
    )?;
    let probe = find_monotonicity_violation(&ScalarFunction::power(2.0), trials as usize, seed)?;
    let c = ControlOutcome {
        name: "probe_square",
        description: "2x2 pair A ≤ B with A² ≰ B²",
        trials,
        first_violation: probe.as_ref().map(|(_, _, t)| *t as u64),
        violations: u64::from(probe.is_some()),
    };
    Ok(vec![a, b, c])
}
