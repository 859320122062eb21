use serde::{Deserialize, Serialize};

use super::HermitianMatrix;
use crate::error::{Error, Result};

/// Default relative tolerance for Loewner comparisons.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Outcome of testing `X ≤ Y` in the Loewner order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoewnerVerdict {
    pub holds: bool,
    /// `λ_min(Y − X)`.
    pub min_gap_eigenvalue: f64,
    /// `max(1, ‖X‖₂, ‖Y‖₂)`.
    pub scale: f64,
    pub tolerance_used: f64,
}

impl LoewnerVerdict {
    pub(crate) fn from_parts(min_gap: f64, scale: f64, tol_rel: f64) -> Self {
        Self {
            holds: min_gap >= -tol_rel * scale,
            min_gap_eigenvalue: min_gap,
            scale,
            tolerance_used: tol_rel,
        }
    }
}

/// Tests `X ≤ Y`, i.e. whether `Y − X` is positive semidefinite up to
/// `tol_rel · max(1, ‖X‖₂, ‖Y‖₂)`.
pub fn loewner_leq(x: &HermitianMatrix, y: &HermitianMatrix, tol_rel: f64) -> Result<LoewnerVerdict> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: y.dim(),
        });
    }
    if tol_rel.is_nan() || tol_rel < 0.0 {
        return Err(Error::Config(format!("tolerance {tol_rel} must be non-negative")));
    }
    let scale = 1.0_f64.max(x.spectral_norm()?).max(y.spectral_norm()?);
    loewner_leq_scaled(x, y, tol_rel, scale)
}

/// Same as [`loewner_leq`] with a caller-supplied scale, for callers that
/// already know the spectral norms of both sides.
pub fn loewner_leq_scaled(
    x: &HermitianMatrix,
    y: &HermitianMatrix,
    tol_rel: f64,
    scale: f64,
) -> Result<LoewnerVerdict> {
    let gap = y.sub(x)?.min_eigenvalue()?;
    Ok(LoewnerVerdict::from_parts(gap, scale, tol_rel))
}
