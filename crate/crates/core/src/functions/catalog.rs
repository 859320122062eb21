//! The registered function catalog and its 2x2 matrix probes.
//!
//! Probes are necessary-condition checks: a declared flag that fails on a
//! random 2x2 pair is a transcription error and aborts catalog
//! construction.

use std::sync::OnceLock;

use rand::Rng;
use serde::Serialize;

use super::ScalarFunction;
use crate::error::{Error, Result};
use crate::linalg::{loewner_leq, spectral_apply, HermitianMatrix, DEFAULT_TOL};
use crate::random::{hermitian_with_spectrum, log_uniform, random_unitary, trial_rng, TrialRng};

/// Probe pairs per declared flag.
pub const PROBE_TRIALS: usize = 1000;
pub const PROBE_SEED: u64 = 0x5eed_f00d;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FlagProperty {
    Monotone,
    MonotoneDecreasing,
    Convex,
    Concave,
}

impl FlagProperty {
    pub fn as_str(self) -> &'static str {
        match self {
            FlagProperty::Monotone => "operator_monotone",
            FlagProperty::MonotoneDecreasing => "operator_monotone_decreasing",
            FlagProperty::Convex => "operator_convex",
            FlagProperty::Concave => "operator_concave",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProbeOutcome {
    pub property: FlagProperty,
    pub trials_run: usize,
    /// Most negative Loewner gap seen.
    pub worst_gap: f64,
    /// First violating pair `(A, B)` and the trial index it came from.
    pub violation: Option<(HermitianMatrix, HermitianMatrix, usize)>,
}

fn sample_eigenvalue(rng: &mut TrialRng, lo: f64, hi: f64, log_scale: bool) -> f64 {
    if log_scale {
        log_uniform(rng, lo, hi)
    } else {
        lo + (hi - lo) * rng.random::<f64>()
    }
}

/// A random pair `A ≤ B` of 2x2 matrices with spectra in `[lo, hi]`.
fn ordered_pair(rng: &mut TrialRng, lo: f64, hi: f64, log_scale: bool) -> (HermitianMatrix, HermitianMatrix) {
    let mid = sample_eigenvalue(rng, lo, hi, log_scale);
    let a_eigs = [
        sample_eigenvalue(rng, lo, mid, log_scale),
        sample_eigenvalue(rng, lo, mid, log_scale),
    ];
    let room = hi - mid;
    // small, skewed increments are where non-monotone functions break
    let p_eigs = [room * log_uniform(rng, 1e-3, 1.0), room * log_uniform(rng, 1e-4, 1.0)];
    let a = hermitian_with_spectrum(&a_eigs, &random_unitary(2, rng));
    let p = hermitian_with_spectrum(&p_eigs, &random_unitary(2, rng));
    let b = a.add(&p).expect("same dimension");
    (a, b)
}

fn free_pair(rng: &mut TrialRng, lo: f64, hi: f64, log_scale: bool) -> (HermitianMatrix, HermitianMatrix) {
    let draw = |rng: &mut TrialRng| {
        let eigs = [
            sample_eigenvalue(rng, lo, hi, log_scale),
            sample_eigenvalue(rng, lo, hi, log_scale),
        ];
        hermitian_with_spectrum(&eigs, &random_unitary(2, rng))
    };
    let a = draw(rng);
    let b = draw(rng);
    (a, b)
}

/// Checks one operator-class property of `f` on `trials` random 2x2 pairs.
pub fn probe_flag(f: &ScalarFunction, property: FlagProperty, trials: usize, seed: u64) -> Result<ProbeOutcome> {
    let (lo, hi) = f.domain().sampling_interval();
    let log_scale = f.domain().upper.is_infinite();
    let mut worst = f64::INFINITY;
    let mut violation = None;
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let (small, large, a, b) = match property {
            FlagProperty::Monotone | FlagProperty::MonotoneDecreasing => {
                let (a, b) = ordered_pair(&mut rng, lo, hi, log_scale);
                let fa = spectral_apply(&a, f)?;
                let fb = spectral_apply(&b, f)?;
                if property == FlagProperty::Monotone {
                    (fa, fb, a, b)
                } else {
                    (fb, fa, a, b)
                }
            }
            FlagProperty::Convex | FlagProperty::Concave => {
                let (a, b) = free_pair(&mut rng, lo, hi, log_scale);
                let mid = spectral_apply(&a.lin_comb(0.5, &b, 0.5)?, f)?;
                let avg = spectral_apply(&a, f)?.lin_comb(0.5, &spectral_apply(&b, f)?, 0.5)?;
                if property == FlagProperty::Convex {
                    (mid, avg, a, b)
                } else {
                    (avg, mid, a, b)
                }
            }
        };
        let verdict = loewner_leq(&small, &large, DEFAULT_TOL)?;
        worst = worst.min(verdict.min_gap_eigenvalue);
        if !verdict.holds && violation.is_none() {
            violation = Some((a, b, t));
        }
    }
    Ok(ProbeOutcome {
        property,
        trials_run: trials,
        worst_gap: worst,
        violation,
    })
}

/// Randomized search for `A ≤ B` with `f(A) ≰ f(B)`; returns the first
/// violating pair and its trial index.
pub fn find_monotonicity_violation(
    f: &ScalarFunction,
    trials: usize,
    seed: u64,
) -> Result<Option<(HermitianMatrix, HermitianMatrix, usize)>> {
    Ok(probe_flag(f, FlagProperty::Monotone, trials, seed)?.violation)
}

/// Functions registered for campaigns, each with probe-verified flags.
#[derive(Debug, Clone)]
pub struct Catalog {
    functions: Vec<ScalarFunction>,
}

impl Catalog {
    pub fn standard_functions() -> Vec<ScalarFunction> {
        let mut out: Vec<ScalarFunction> = [-1.0, -0.75, -0.5, -0.25, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0]
            .into_iter()
            .map(ScalarFunction::power)
            .collect();
        out.extend(
            [-1.0, -0.5, 0.5, 1.0, 1.5, 2.0]
                .into_iter()
                .map(ScalarFunction::one_minus_power),
        );
        out.push(ScalarFunction::log());
        out.push(ScalarFunction::log1p());
        out.push(ScalarFunction::reciprocal(&ScalarFunction::log1p()).expect("log1p is positive"));
        out
    }

    /// Builds a catalog, probing every declared flag with `trials` pairs.
    pub fn build(functions: Vec<ScalarFunction>, trials: usize, seed: u64) -> Result<Self> {
        for f in &functions {
            let fl = f.flags();
            let declared = [
                (fl.monotone, FlagProperty::Monotone),
                (fl.monotone_decreasing, FlagProperty::MonotoneDecreasing),
                (fl.convex, FlagProperty::Convex),
                (fl.concave, FlagProperty::Concave),
            ];
            for (on, property) in declared {
                if !on {
                    continue;
                }
                let outcome = probe_flag(f, property, trials, seed)?;
                if outcome.violation.is_some() {
                    return Err(Error::CatalogProbe {
                        function: f.name(),
                        property: property.as_str(),
                        gap: outcome.worst_gap,
                    });
                }
            }
        }
        Ok(Self { functions })
    }

    pub fn standard() -> Result<Self> {
        Self::build(Self::standard_functions(), PROBE_TRIALS, PROBE_SEED)
    }

    /// The standard catalog, probed once per process.
    pub fn global() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::standard().unwrap_or_else(|e| panic!("standard catalog is inconsistent: {e}")))
    }

    pub fn functions(&self) -> &[ScalarFunction] {
        &self.functions
    }

    pub fn select(&self, pred: impl Fn(&ScalarFunction) -> bool) -> Vec<&ScalarFunction> {
        self.functions.iter().filter(|f| pred(f)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::OperatorFlags;

    #[test]
    fn standard_catalog_passes_its_probes() {
        let cat = Catalog::global();
        assert_eq!(cat.functions().len(), Catalog::standard_functions().len());
        assert!(cat.select(|f| f.flags().monotone_decreasing).len() >= 5);
    }

    #[test]
    fn square_is_caught_as_not_monotone() {
        let found = find_monotonicity_violation(&ScalarFunction::power(2.0), PROBE_TRIALS, PROBE_SEED).unwrap();
        let (a, b, _) = found.expect("t^2 must violate monotonicity on some 2x2 pair");
        assert!(loewner_leq(&a, &b, DEFAULT_TOL).unwrap().holds);
        let sq = |m: &HermitianMatrix| spectral_apply(m, &ScalarFunction::power(2.0)).unwrap();
        assert!(!loewner_leq(&sq(&a), &sq(&b), DEFAULT_TOL).unwrap().holds);
    }

    #[test]
    fn misdeclared_flag_aborts_the_build() {
        let bad = ScalarFunction::power(2.0).with_claimed_flags(OperatorFlags {
            monotone: true,
            ..Default::default()
        });
        let err = Catalog::build(vec![bad], 200, 1).unwrap_err();
        assert!(matches!(
            err,
            Error::CatalogProbe {
                property: "operator_monotone",
                ..
            }
        ));
    }

    #[test]
    fn cube_is_not_operator_convex() {
        let out = probe_flag(&ScalarFunction::power(3.0), FlagProperty::Convex, PROBE_TRIALS, 3).unwrap();
        assert!(out.violation.is_some());
    }

    #[test]
    fn one_minus_inverse_is_monotone_not_decreasing() {
        let f = ScalarFunction::one_minus_power(-1.0);
        let up = probe_flag(&f, FlagProperty::Monotone, 300, 5).unwrap();
        assert!(up.violation.is_none());
        let down = probe_flag(&f, FlagProperty::MonotoneDecreasing, 300, 5).unwrap();
        assert!(down.violation.is_some());
    }
}
