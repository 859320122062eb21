//! Shared precondition gates and helpers for the verifiers.

use std::cell::RefCell;

use super::instance::Instance;
use super::report::{BandRecord, BandSource, ChainBuilder, ChainEvaluation, InstanceDigest};
use super::ChainId;
use crate::error::{Error, Result};
use crate::functions::{Domain, ScalarFunction};
use crate::linalg::{loewner_leq, spectral_apply, HermitianMatrix, DOMAIN_MARGIN};
use crate::maps::{build_map, PositiveMap};
use crate::means::{certify_band, geo_mean, MeanWeight, SpectralBand};

/// Relative tolerance for checking supplied bands and other Loewner-order
/// hypotheses. Tighter than the link tolerance so that an accepted instance
/// cannot fail a link on hypothesis slack alone.
pub const PRECONDITION_TOL: f64 = 1e-10;

pub(crate) struct Ctx<'a> {
    pub chain: ChainId,
    pub inst: &'a Instance,
    map: PositiveMap,
    bands: RefCell<Vec<BandRecord>>,
}

impl<'a> Ctx<'a> {
    pub fn new(chain: ChainId, inst: &'a Instance) -> Result<Self> {
        let map = if chain.uses_map() {
            build_map(&inst.map)?
        } else {
            build_map(&crate::maps::PositiveMapSpec::Identity {})?
        };
        let ctx = Self {
            chain,
            inst,
            map,
            bands: RefCell::new(Vec::new()),
        };
        let n = inst.a.dim();
        if n == 0 {
            return Err(ctx.reject("empty operator"));
        }
        if let Some(k) = ctx.map.input_dim() {
            if k != n {
                return Err(ctx.reject(format!("map expects {k}x{k} inputs, A is {n}x{n}")));
            }
        }
        if chain.uses_b() {
            let b = inst
                .b
                .as_ref()
                .ok_or_else(|| ctx.reject("second operator B is missing"))?;
            if b.dim() != n {
                return Err(ctx.reject(format!("B is {}x{} but A is {n}x{n}", b.dim(), b.dim())));
            }
        }
        Ok(ctx)
    }

    pub fn reject(&self, reason: impl Into<String>) -> Error {
        Error::Rejected {
            chain: self.chain.as_str().to_string(),
            reason: reason.into(),
        }
    }

    pub fn a(&self) -> &HermitianMatrix {
        &self.inst.a
    }

    pub fn b(&self) -> &HermitianMatrix {
        self.inst.b.as_ref().expect("checked in Ctx::new")
    }

    pub fn n(&self) -> usize {
        self.inst.a.dim()
    }

    pub fn out_dim(&self) -> usize {
        self.map.output_dim(self.n())
    }

    pub fn phi(&self, x: &HermitianMatrix) -> Result<HermitianMatrix> {
        self.map.apply(x)
    }

    /// `c·I` in the map's output space.
    pub fn scalar_out(&self, c: f64) -> HermitianMatrix {
        HermitianMatrix::scalar(self.out_dim(), c)
    }

    pub fn identity_in(&self) -> HermitianMatrix {
        HermitianMatrix::identity(self.n())
    }

    pub fn v(&self) -> MeanWeight {
        self.inst.v.unwrap_or(MeanWeight::HALF)
    }

    pub fn function(&self) -> Result<&ScalarFunction> {
        self.inst
            .function
            .as_ref()
            .ok_or_else(|| self.reject("no function supplied"))
    }

    pub fn r_in(&self, ok: impl Fn(f64) -> bool, range: &str) -> Result<f64> {
        let r = self.inst.r.ok_or_else(|| self.reject("exponent r is missing"))?;
        if r.is_finite() && ok(r) {
            Ok(r)
        } else {
            Err(self.reject(format!("r = {r} outside {range}")))
        }
    }

    pub fn require_positive(&self, label: &str, x: &HermitianMatrix) -> Result<()> {
        let min = x.min_eigenvalue()?;
        if min > 0.0 {
            Ok(())
        } else {
            Err(self.reject(format!(
                "{label} is not strictly positive (smallest eigenvalue {min:e})"
            )))
        }
    }

    /// Intermediate terms that get inverted or enter a geometric mean.
    pub fn positive_intermediate(&self, label: &str, x: &HermitianMatrix) -> Result<()> {
        let min = x.min_eigenvalue()?;
        if min > 0.0 {
            Ok(())
        } else {
            Err(Error::NonPositiveIntermediate {
                chain: self.chain.as_str().to_string(),
                term: label.to_string(),
                min_eigenvalue: min,
            })
        }
    }

    pub fn require_in_domain(&self, f: &ScalarFunction, label: &str, x: &HermitianMatrix) -> Result<()> {
        let e = x.eig()?;
        let d = f.domain();
        for &l in e.eigenvalues() {
            if !d.contains_with_margin(l, DOMAIN_MARGIN) {
                return Err(self.reject(format!(
                    "spectrum of {label} leaves the domain ({}, {}) of {} at {l:e}",
                    d.lower,
                    d.upper,
                    f.name()
                )));
            }
        }
        Ok(())
    }

    pub fn require_half_line(&self, f: &ScalarFunction) -> Result<()> {
        if f.domain() == Domain::POSITIVE_REALS {
            Ok(())
        } else {
            Err(self.reject(format!("{} is not defined on (0, ∞)", f.name())))
        }
    }

    pub fn require_contraction(&self, label: &str, x: &HermitianMatrix) -> Result<()> {
        let delta = self.inst.contraction_margin;
        if !(delta > 0.0 && delta < 1.0) {
            return Err(self.reject(format!("contraction margin {delta} outside (0, 1)")));
        }
        let norm = x.spectral_norm()?;
        let cap = 1.0 - delta;
        if norm <= cap + 1e-12 * cap {
            Ok(())
        } else {
            Err(self.reject(format!("‖{label}‖ = {norm} exceeds 1 − δ = {cap}")))
        }
    }

    /// The supplied band for `x`, verified, or the tight certified one.
    pub fn band_for(&self, role: &str, x: &HermitianMatrix, supplied: Option<SpectralBand>) -> Result<SpectralBand> {
        let (band, source) = match supplied {
            Some(band) => {
                let lower = HermitianMatrix::scalar(x.dim(), band.lower());
                let upper = HermitianMatrix::scalar(x.dim(), band.upper());
                if !loewner_leq(&lower, x, PRECONDITION_TOL)?.holds || !loewner_leq(x, &upper, PRECONDITION_TOL)?.holds
                {
                    return Err(self.reject(format!(
                        "{role} is not within the supplied band [{}, {}]",
                        band.lower(),
                        band.upper()
                    )));
                }
                (band, BandSource::Supplied)
            }
            None => {
                let band = certify_band(x).map_err(|_| self.reject(format!("{role} is not strictly positive")))?;
                (band, BandSource::Certified)
            }
        };
        self.record_band(role, band, source);
        Ok(band)
    }

    pub fn record_band(&self, role: &str, band: SpectralBand, source: BandSource) {
        self.bands.borrow_mut().push(BandRecord {
            role: role.to_string(),
            m: band.lower(),
            upper: band.upper(),
            source,
        });
    }

    pub fn apply(&self, f: &ScalarFunction, x: &HermitianMatrix) -> Result<HermitianMatrix> {
        spectral_apply(x, f)
    }

    /// `x ♯_v y` with both arguments checked positive first.
    pub fn geo(
        &self,
        x: &HermitianMatrix,
        xl: &str,
        y: &HermitianMatrix,
        yl: &str,
        v: MeanWeight,
    ) -> Result<HermitianMatrix> {
        self.positive_intermediate(xl, x)?;
        self.positive_intermediate(yl, y)?;
        geo_mean(x, y, v)
    }

    pub fn inverse(&self, x: &HermitianMatrix, label: &str) -> Result<HermitianMatrix> {
        self.positive_intermediate(label, x)?;
        x.inverse()
    }

    pub fn pow(&self, x: &HermitianMatrix, label: &str, r: f64) -> Result<HermitianMatrix> {
        self.positive_intermediate(label, x)?;
        x.pow(r)
    }

    pub fn digest(&self) -> InstanceDigest {
        let c = self.chain;
        let inst = self.inst;
        InstanceDigest {
            seed: inst.seed,
            trial: inst.trial,
            n: self.n(),
            output_dim: self.out_dim(),
            map: self.map.spec().kind(),
            function: if c.uses_function() {
                inst.function.as_ref().map(|f| f.name())
            } else {
                None
            },
            v: c.uses_v().then(|| self.v().value()),
            r: if c.uses_r() { inst.r } else { None },
            bands: self.bands.borrow().clone(),
        }
    }

    pub fn finish(&self, builder: ChainBuilder) -> ChainEvaluation {
        builder.finish(self.chain.as_str(), self.digest())
    }
}
