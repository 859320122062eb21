use serde::{Deserialize, Serialize};

use crate::functions::ScalarFunction;
use crate::linalg::HermitianMatrix;
use crate::maps::PositiveMapSpec;
use crate::means::{MeanWeight, SpectralBand};

/// Operators, map, function and parameters for one chain evaluation.
///
/// Fields a chain does not use are ignored. Missing bands are certified from
/// the operators' spectra.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub a: HermitianMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<HermitianMatrix>,
    #[serde(default = "identity_map")]
    pub map: PositiveMapSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<ScalarFunction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<MeanWeight>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    /// `mI ≤ A ≤ MI`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub band_a: Option<SpectralBand>,
    /// `mI ≤ B ≤ MI`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub band_b: Option<SpectralBand>,
    /// `m²A ≤ B ≤ M²A`, used by `lee`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub band_rel: Option<SpectralBand>,
    /// `δ` in `‖A‖, ‖B‖ ≤ 1 − δ`.
    #[serde(default = "default_margin")]
    pub contraction_margin: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trial: Option<u64>,
}

pub const DEFAULT_CONTRACTION_MARGIN: f64 = 1e-3;

fn identity_map() -> PositiveMapSpec {
    PositiveMapSpec::Identity {}
}

fn default_margin() -> f64 {
    DEFAULT_CONTRACTION_MARGIN
}

impl Instance {
    pub fn new(a: HermitianMatrix) -> Self {
        Self {
            a,
            b: None,
            map: identity_map(),
            function: None,
            v: None,
            r: None,
            band_a: None,
            band_b: None,
            band_rel: None,
            contraction_margin: DEFAULT_CONTRACTION_MARGIN,
            seed: None,
            trial: None,
        }
    }

    pub fn pair(a: HermitianMatrix, b: HermitianMatrix) -> Self {
        Self::new(a).with_b(b)
    }

    pub fn with_b(mut self, b: HermitianMatrix) -> Self {
        self.b = Some(b);
        self
    }

    pub fn with_map(mut self, map: PositiveMapSpec) -> Self {
        self.map = map;
        self
    }

    pub fn with_function(mut self, f: ScalarFunction) -> Self {
        self.function = Some(f);
        self
    }

    pub fn with_v(mut self, v: MeanWeight) -> Self {
        self.v = Some(v);
        self
    }

    pub fn with_r(mut self, r: f64) -> Self {
        self.r = Some(r);
        self
    }

    pub fn with_band_a(mut self, band: SpectralBand) -> Self {
        self.band_a = Some(band);
        self
    }

    pub fn with_band_b(mut self, band: SpectralBand) -> Self {
        self.band_b = Some(band);
        self
    }

    pub fn with_band_rel(mut self, band: SpectralBand) -> Self {
        self.band_rel = Some(band);
        self
    }

    pub fn with_contraction_margin(mut self, delta: f64) -> Self {
        self.contraction_margin = delta;
        self
    }

    pub fn with_origin(mut self, seed: u64, trial: u64) -> Self {
        self.seed = Some(seed);
        self.trial = Some(trial);
        self
    }
}
