//! Weighted operator means and spectral bands.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::HermitianMatrix;

/// Weight `v ∈ [0, 1]` of a two-sided mean.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct MeanWeight(f64);

impl MeanWeight {
    pub const HALF: MeanWeight = MeanWeight(0.5);

    pub fn new(v: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&v) {
            Ok(Self(v))
        } else {
            Err(Error::InvalidWeight(v))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl<'de> Deserialize<'de> for MeanWeight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        MeanWeight::new(f64::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Scalars `0 < m ≤ M` with `mI ≤ A ≤ MI`. `m = M` is allowed and makes
/// every chain collapse to equalities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralBand {
    #[serde(rename = "m")]
    lower: f64,
    #[serde(rename = "M")]
    upper: f64,
}

impl SpectralBand {
    pub fn new(m: f64, upper: f64) -> Result<Self> {
        if m > 0.0 && m <= upper && upper.is_finite() {
            Ok(Self { lower: m, upper })
        } else {
            Err(Error::InvalidBand { m, upper })
        }
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn is_degenerate(&self) -> bool {
        self.lower == self.upper
    }

    /// `M / m`.
    pub fn condition(&self) -> f64 {
        self.upper / self.lower
    }

    /// `(M + m) / (2√(Mm))`.
    pub fn kantorovich_constant(&self) -> f64 {
        (self.upper + self.lower) / (2.0 * (self.upper * self.lower).sqrt())
    }

    pub fn scaled(&self, s: f64) -> Result<Self> {
        Self::new(self.lower * s, self.upper * s)
    }
}

#[derive(Deserialize)]
struct BandWire {
    m: f64,
    #[serde(rename = "M")]
    upper: f64,
}

impl<'de> Deserialize<'de> for SpectralBand {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = BandWire::deserialize(d)?;
        SpectralBand::new(w.m, w.upper).map_err(serde::de::Error::custom)
    }
}

/// `A ∇_v B = (1 − v)A + vB`.
pub fn arith_mean(a: &HermitianMatrix, b: &HermitianMatrix, v: MeanWeight) -> Result<HermitianMatrix> {
    a.lin_comb(1.0 - v.0, b, v.0)
}

/// `A ♯_v B = A^{1/2} (A^{−1/2} B A^{−1/2})^v A^{1/2}`.
pub fn geo_mean(a: &HermitianMatrix, b: &HermitianMatrix, v: MeanWeight) -> Result<HermitianMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let ea = a.eig()?;
    if ea.min() <= 0.0 {
        return Err(Error::Singular {
            min_eigenvalue: ea.min(),
        });
    }
    let half = ea.reconstruct_with(f64::sqrt);
    let neg_half = ea.reconstruct_with(|l| 1.0 / l.sqrt());
    let middle = b.sandwich(&neg_half)?;
    let em = middle.eig()?;
    if em.min() <= 0.0 {
        return Err(Error::Singular {
            min_eigenvalue: b.min_eigenvalue()?.min(em.min()),
        });
    }
    let p = v.0;
    let middle_pow = em.reconstruct_with(|l| l.powf(p));
    middle_pow.sandwich(&half)
}

/// Tightest band `(λ_min(A), λ_max(A))` for a strictly positive `A`.
pub fn certify_band(a: &HermitianMatrix) -> Result<SpectralBand> {
    let e = a.eig()?;
    if e.min() <= 0.0 {
        return Err(Error::Singular {
            min_eigenvalue: e.min(),
        });
    }
    SpectralBand::new(e.min(), e.max())
}

/// Given `m₁²I ≤ A ≤ M₁²I` and `m₂²I ≤ B ≤ M₂²I` (bands carry the squared
/// bounds), returns `(m₂/M₁, M₂/m₁)`, a band for `(A^{−1/2}BA^{−1/2})^{1/2}`.
pub fn derived_band(band_a: SpectralBand, band_b: SpectralBand) -> SpectralBand {
    let m = band_b.lower.sqrt() / band_a.upper.sqrt();
    let upper = band_b.upper.sqrt() / band_a.lower.sqrt();
    SpectralBand::new(m, upper).expect("ratios of positive bands form a band")
}
