use serde::{Deserialize, Serialize};

use crate::chains::DEFAULT_CONTRACTION_MARGIN;
use crate::error::{Error, Result};
use crate::functions::ScalarFunction;
use crate::linalg::DEFAULT_TOL;
use crate::maps::MapKind;
use crate::means::SpectralBand;

/// Largest condition number `M/m` the generators will produce.
pub const MAX_CONDITION: f64 = 1e3;
pub const DEFAULT_TRIALS: u64 = 10_000;

/// How operators are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Random bands, random eigenvectors.
    #[default]
    Standard,
    /// Degenerate bands (`m = M`) or equal operators, so every link should
    /// be an equality.
    Collapse,
    /// Standard draws with `B` replaced by `A`.
    EqualPair,
}

/// Relative frequency of each map kind.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MapWeights {
    pub identity: f64,
    pub unitary_mixture: f64,
    pub compression: f64,
    pub pinching: f64,
    pub normalized_trace: f64,
}

impl Default for MapWeights {
    fn default() -> Self {
        Self {
            identity: 1.0,
            unitary_mixture: 1.0,
            compression: 1.0,
            pinching: 1.0,
            normalized_trace: 1.0,
        }
    }
}

impl MapWeights {
    pub fn only(kind: MapKind) -> Self {
        let mut w = Self {
            identity: 0.0,
            unitary_mixture: 0.0,
            compression: 0.0,
            pinching: 0.0,
            normalized_trace: 0.0,
        };
        *w.weight_mut(kind) = 1.0;
        w
    }

    pub fn weight(&self, kind: MapKind) -> f64 {
        match kind {
            MapKind::Identity => self.identity,
            MapKind::UnitaryMixture => self.unitary_mixture,
            MapKind::Compression => self.compression,
            MapKind::Pinching => self.pinching,
            MapKind::NormalizedTrace => self.normalized_trace,
        }
    }

    fn weight_mut(&mut self, kind: MapKind) -> &mut f64 {
        match kind {
            MapKind::Identity => &mut self.identity,
            MapKind::UnitaryMixture => &mut self.unitary_mixture,
            MapKind::Compression => &mut self.compression,
            MapKind::Pinching => &mut self.pinching,
            MapKind::NormalizedTrace => &mut self.normalized_trace,
        }
    }
}

/// Campaign parameters. Every field has a default, so `{}` is a valid
/// config document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeneratorConfig {
    pub dim_min: usize,
    pub dim_max: usize,
    /// Upper bound on `M/m` for sampled bands.
    pub condition_cap: f64,
    /// Fixed band for every operator instead of sampled ones.
    pub band: Option<SpectralBand>,
    pub maps: MapWeights,
    /// Overrides the per-chain function pool.
    pub function: Option<ScalarFunction>,
    /// Fixed mean weight; sampled from `[0, 1]` when absent.
    pub v: Option<f64>,
    /// Fixed exponent; sampled from the chain's range when absent.
    pub r: Option<f64>,
    pub seed: u64,
    pub trials: u64,
    pub tol: f64,
    pub mode: Mode,
    /// Draw diagonal operators only.
    pub diagonal: bool,
    pub contraction_margin: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            dim_min: 1,
            dim_max: 8,
            condition_cap: MAX_CONDITION,
            band: None,
            maps: MapWeights::default(),
            function: None,
            v: None,
            r: None,
            seed: 0,
            trials: DEFAULT_TRIALS,
            tol: DEFAULT_TOL,
            mode: Mode::Standard,
            diagonal: false,
            contraction_margin: DEFAULT_CONTRACTION_MARGIN,
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.dim_min < 1 || self.dim_min > self.dim_max {
            return bad(format!(
                "dimension range {}..={} is empty or starts at 0",
                self.dim_min, self.dim_max
            ));
        }
        if !(self.condition_cap >= 1.0 && self.condition_cap <= MAX_CONDITION) {
            return bad(format!(
                "condition cap {} outside [1, {MAX_CONDITION}]",
                self.condition_cap
            ));
        }
        if let Some(b) = self.band {
            if b.condition() > MAX_CONDITION {
                return bad(format!("band condition {} exceeds {MAX_CONDITION}", b.condition()));
            }
        }
        if self.trials < 1 {
            return bad("trials must be at least 1".into());
        }
        if !(self.tol >= 0.0 && self.tol.is_finite()) {
            return bad(format!("tolerance {} must be finite and non-negative", self.tol));
        }
        if !(self.contraction_margin > 0.0 && self.contraction_margin < 1.0) {
            return bad(format!("contraction margin {} outside (0, 1)", self.contraction_margin));
        }
        if let Some(v) = self.v {
            if !(0.0..=1.0).contains(&v) {
                return bad(format!("v = {v} outside [0, 1]"));
            }
        }
        if let Some(r) = self.r {
            if !r.is_finite() {
                return bad(format!("r = {r} is not finite"));
            }
        }
        let weights = MapKind::ALL.map(|k| self.maps.weight(k));
        if weights.iter().any(|w| !(*w >= 0.0 && w.is_finite())) || weights.iter().sum::<f64>() <= 0.0 {
            return bad("map weights must be non-negative with a positive sum".into());
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let cfg = GeneratorConfig::default();
        cfg.validate().unwrap();
        assert_eq!((cfg.dim_min, cfg.dim_max, cfg.trials), (1, 8, 10_000));
        assert_eq!(GeneratorConfig::from_json("{}").unwrap(), cfg);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let with = |f: fn(&mut GeneratorConfig)| {
            let mut c = GeneratorConfig::default();
            f(&mut c);
            c.validate()
        };
        assert!(matches!(with(|c| c.trials = 0), Err(Error::Config(_))));
        assert!(with(|c| c.dim_min = 0).is_err());
        assert!(with(|c| c.dim_min = 5).is_ok());
        assert!(with(|c| c.dim_max = 0).is_err());
        assert!(with(|c| c.condition_cap = 1e4).is_err());
        assert!(with(|c| c.v = Some(2.0)).is_err());
        assert!(with(|c| c.maps = MapWeights::only(MapKind::Pinching)).is_ok());
        assert!(with(|c| c.maps.identity = -1.0).is_err());
        assert!(GeneratorConfig::from_json(r#"{"trials": 0}"#).is_err());
        assert!(GeneratorConfig::from_json(r#"{"colour": 1}"#).is_err());
    }

    #[test]
    fn config_json_round_trip() {
        let cfg = GeneratorConfig {
            function: Some(ScalarFunction::power(0.5)),
            band: Some(SpectralBand::new(1.0, 4.0).unwrap()),
            mode: Mode::Collapse,
            ..Default::default()
        };
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(GeneratorConfig::from_json(&text).unwrap(), cfg);
    }
}
