//! Seeded instance generators.
//!
//! Every instance of trial `i` is drawn from `trial_rng(seed, i)` alone, so
//! trials are independent and can run in any order.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::SliceRandom;
use rand::Rng;

use super::config::{GeneratorConfig, MapWeights, Mode};
use crate::chains::{ChainId, Instance};
use crate::error::{Error, Result};
use crate::functions::{Catalog, Domain, ScalarFunction};
use crate::linalg::HermitianMatrix;
use crate::maps::{MapKind, PositiveMapSpec};
use crate::means::{MeanWeight, SpectralBand};
use crate::random::{hermitian_with_spectrum, log_uniform, random_isometry, random_unitary, trial_rng, TrialRng};

/// Share of standard-mode trials that use diagonal operators; equality
/// witnesses of the Kantorovich-type bounds live there.
pub const DIAGONAL_SHARE: f64 = 0.3;

/// Hermitian matrix with spectrum in `[m, M]`, both endpoints present when
/// `n ≥ 2`.
pub fn gen_hermitian_in_band(n: usize, band: SpectralBand, seed: u64) -> HermitianMatrix {
    hermitian_in_band(n, band, false, &mut trial_rng(seed, 0))
}

/// `0 ≤ A ≤ (1 − δ)I` with both endpoints present when `n ≥ 2`.
pub fn gen_contraction(n: usize, delta: f64, seed: u64) -> HermitianMatrix {
    contraction(n, delta, false, &mut trial_rng(seed, 0))
}

fn with_spectrum(mut eigs: Vec<f64>, lo: f64, hi: f64, diagonal: bool, rng: &mut TrialRng) -> HermitianMatrix {
    if eigs.len() >= 2 {
        eigs[0] = lo;
        eigs[1] = hi;
        eigs.shuffle(rng);
    }
    if diagonal {
        HermitianMatrix::diag(&eigs)
    } else {
        hermitian_with_spectrum(&eigs, &random_unitary(eigs.len(), rng))
    }
}

pub fn hermitian_in_band(n: usize, band: SpectralBand, diagonal: bool, rng: &mut TrialRng) -> HermitianMatrix {
    let (lo, hi) = (band.lower(), band.upper());
    let eigs = (0..n).map(|_| lo + (hi - lo) * rng.random::<f64>()).collect();
    with_spectrum(eigs, lo, hi, diagonal, rng)
}

pub fn contraction(n: usize, delta: f64, diagonal: bool, rng: &mut TrialRng) -> HermitianMatrix {
    let hi = 1.0 - delta;
    let eigs = (0..n).map(|_| hi * rng.random::<f64>()).collect();
    with_spectrum(eigs, 0.0, hi, diagonal, rng)
}

pub fn random_map(weights: &MapWeights, n: usize, rng: &mut TrialRng) -> Result<PositiveMapSpec> {
    let dist = WeightedIndex::new(MapKind::ALL.map(|k| weights.weight(k)))
        .map_err(|e| Error::Config(format!("map weights: {e}")))?;
    Ok(match MapKind::ALL[dist.sample(rng)] {
        MapKind::Identity => PositiveMapSpec::Identity {},
        MapKind::NormalizedTrace => PositiveMapSpec::NormalizedTrace {},
        MapKind::UnitaryMixture => {
            let k = rng.random_range(1..=3);
            let unitaries = (0..k).map(|_| random_unitary(n, rng)).collect();
            let raw: Vec<f64> = (0..k).map(|_| 0.05 + rng.random::<f64>()).collect();
            let total: f64 = raw.iter().sum();
            let mut weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
            let head: f64 = weights[..k - 1].iter().sum();
            weights[k - 1] = 1.0 - head;
            PositiveMapSpec::UnitaryMixture { unitaries, weights }
        }
        MapKind::Compression => {
            let k = rng.random_range(1..=n);
            PositiveMapSpec::Compression {
                isometry: random_isometry(n, k, rng),
            }
        }
        MapKind::Pinching => {
            let nb = rng.random_range(1..=n);
            let mut idx: Vec<usize> = (0..n).collect();
            idx.shuffle(rng);
            let mut blocks = vec![Vec::new(); nb];
            for (pos, &i) in idx.iter().enumerate() {
                let b = if pos < nb { pos } else { rng.random_range(0..nb) };
                blocks[b].push(i);
            }
            for b in &mut blocks {
                b.sort_unstable();
            }
            blocks.sort();
            PositiveMapSpec::Pinching { blocks }
        }
    })
}

/// Catalog functions that satisfy `chain`'s flag hypothesis.
pub fn function_pool(chain: ChainId) -> Vec<ScalarFunction> {
    let half_line = |f: &ScalarFunction| f.domain() == Domain::POSITIVE_REALS;
    let pred: Box<dyn Fn(&ScalarFunction) -> bool> = match chain {
        ChainId::Cdj => Box::new(|f| f.flags().convex || f.flags().concave),
        ChainId::Thm21 => Box::new(move |f| f.flags().monotone && half_line(f)),
        ChainId::Thm22 => Box::new(move |f| f.flags().monotone_decreasing && half_line(f)),
        ChainId::Cor24 => Box::new(move |f| (f.flags().monotone || f.flags().monotone_decreasing) && half_line(f)),
        ChainId::JensenConcave => Box::new(|f| f.flags().concave),
        ChainId::Lemma33 | ChainId::LogconvexChar => Box::new(move |f| f.flags().monotone_decreasing && half_line(f)),
        _ => return Vec::new(),
    };
    Catalog::global().select(pred).into_iter().cloned().collect()
}

/// Admissible exponents; the endpoints get extra weight.
fn sample_r(chain: ChainId, rng: &mut TrialRng) -> f64 {
    let (special, ranges): (&[f64], &[(f64, f64)]) = match chain {
        ChainId::Cor23 | ChainId::Cor25 => (&[-1.0, 0.0, 1.0], &[(-1.0, 1.0)]),
        ChainId::Bellman => (&[0.0, 1.0], &[(0.0, 1.0)]),
        ChainId::ReverseBellman => (&[-1.0, 0.0, 1.0, 2.0], &[(-1.0, 0.0), (1.0, 2.0)]),
        ChainId::Thm32 => (&[-1.0, 0.0], &[(-1.0, 0.0)]),
        _ => (&[1.0], &[(1.0, 1.0)]),
    };
    let pick_special = rng.random::<f64>() < 0.1;
    let s = special[rng.random_range(0..special.len())];
    let (lo, hi) = ranges[rng.random_range(0..ranges.len())];
    let u = lo + (hi - lo) * rng.random::<f64>();
    if pick_special {
        s
    } else {
        u
    }
}

fn sample_band(cfg: &GeneratorConfig, domain: Domain, rng: &mut TrialRng) -> SpectralBand {
    let m_draw = rng.random::<f64>();
    let cond = log_uniform(rng, 1.0, cfg.condition_cap);
    if let Some(b) = cfg.band {
        return b;
    }
    let (m, upper) = if domain.upper.is_finite() {
        let m = (0.01f64.ln() + m_draw * (0.5f64.ln() - 0.01f64.ln())).exp();
        (m, (m * cond).min(0.99))
    } else {
        let m = (0.1f64.ln() + m_draw * (10f64.ln() - 0.1f64.ln())).exp();
        (m, m * cond)
    };
    SpectralBand::new(m, upper).expect("positive ordered band")
}

fn point_band(c: f64) -> SpectralBand {
    SpectralBand::new(c, c).expect("positive scalar")
}

/// Scales `band_b` so that `Mm·Φ(A)` and `Φ(B)` stay above the threshold
/// where `f` turns positive.
fn lift_for_positivity(band_a: SpectralBand, band_b: SpectralBand, threshold: f64) -> SpectralBand {
    if threshold <= 0.0 {
        return band_b;
    }
    let mm_a = (band_b.lower() * band_b.upper()).sqrt() * (band_a.lower() / band_a.upper()).sqrt();
    let lower = mm_a.min(band_b.lower());
    if lower >= 1.05 * threshold {
        return band_b;
    }
    band_b.scaled(1.1 * threshold / lower).expect("positive scale")
}

/// Scales a single-operator band so that `1/M` stays above the threshold.
fn cap_for_positivity(band: SpectralBand, threshold: f64) -> SpectralBand {
    if threshold <= 0.0 || band.upper() * 1.05 * threshold < 1.0 {
        return band;
    }
    band.scaled(1.0 / (1.1 * threshold * band.upper()))
        .expect("positive scale")
}

/// Draws the instance of trial `trial` for `chain`.
pub fn generate_instance(cfg: &GeneratorConfig, chain: ChainId, trial: u64) -> Result<Instance> {
    let mut rng = trial_rng(cfg.seed, trial);
    let rng = &mut rng;
    let n = rng.random_range(cfg.dim_min..=cfg.dim_max);
    let diagonal = rng.random::<f64>() < DIAGONAL_SHARE || cfg.diagonal;
    let v_draw = rng.random::<f64>();
    let r_draw = sample_r(chain, rng);
    let map = if chain.uses_map() {
        random_map(&cfg.maps, n, rng)?
    } else {
        PositiveMapSpec::Identity {}
    };
    let function = if chain.uses_function() {
        let pool = function_pool(chain);
        let k = rng.random_range(0..pool.len().max(1));
        match &cfg.function {
            Some(f) => Some(f.clone()),
            None => Some(
                pool.get(k)
                    .cloned()
                    .ok_or_else(|| Error::Config(format!("no function for {chain}")))?,
            ),
        }
    } else {
        None
    };
    let domain = function.as_ref().map_or(Domain::POSITIVE_REALS, |f| f.domain());
    let threshold = function.as_ref().map_or(0.0, |f| f.positivity_threshold());

    let mut inst = Instance::new(HermitianMatrix::identity(n))
        .with_map(map)
        .with_contraction_margin(cfg.contraction_margin)
        .with_origin(cfg.seed, trial);
    inst.function = function;
    if chain.uses_v() {
        inst.v = Some(MeanWeight::new(cfg.v.unwrap_or(v_draw))?);
    }
    if chain.uses_r() {
        inst.r = Some(cfg.r.unwrap_or(r_draw));
    }

    let collapse = cfg.mode == Mode::Collapse;
    let equal = cfg.mode == Mode::EqualPair;
    match chain {
        ChainId::Bellman | ChainId::ReverseBellman | ChainId::Thm32 => {
            let delta = cfg.contraction_margin;
            if collapse {
                let c = (1.0 - delta) * rng.random::<f64>();
                inst.a = HermitianMatrix::scalar(n, c);
                inst.b = Some(inst.a.clone());
            } else {
                inst.a = contraction(n, delta, diagonal, rng);
                let b = contraction(n, delta, diagonal, rng);
                inst.b = Some(if equal { inst.a.clone() } else { b });
            }
        }
        ChainId::Thm21 | ChainId::Thm22 | ChainId::Cor23 => {
            let band_a = sample_band(cfg, domain, rng);
            let band_b = sample_band(cfg, domain, rng);
            if collapse {
                let band_a = point_band(band_a.lower());
                let band_b = lift_for_positivity(band_a, point_band(band_b.lower()), threshold);
                inst.a = HermitianMatrix::scalar(n, band_a.lower());
                inst.b = Some(HermitianMatrix::scalar(n, band_b.lower()));
                inst = inst.with_band_a(band_a).with_band_b(band_b);
            } else {
                let band_b = if equal { band_a } else { band_b };
                let band_b = lift_for_positivity(band_a, band_b, threshold);
                inst.a = hermitian_in_band(n, band_a, diagonal, rng);
                let b = hermitian_in_band(n, band_b, diagonal, rng);
                let b = if equal {
                    inst.a.scale(band_b.lower() / band_a.lower())
                } else {
                    b
                };
                inst.b = Some(b);
                inst = inst.with_band_a(band_a).with_band_b(band_b);
            }
        }
        ChainId::Kantorovich | ChainId::Cor24 | ChainId::Cor25 | ChainId::Cdj => {
            let mut band = sample_band(cfg, domain, rng);
            if chain == ChainId::Cor24 {
                band = cap_for_positivity(band, threshold);
            }
            if collapse {
                let band = point_band(band.lower());
                inst.a = HermitianMatrix::scalar(n, band.lower());
                if chain != ChainId::Cdj {
                    inst.band_a = Some(band);
                }
            } else {
                inst.a = hermitian_in_band(n, band, diagonal, rng);
                if chain != ChainId::Cdj {
                    inst.band_a = Some(band);
                }
            }
        }
        ChainId::Lee => {
            let band_a = sample_band(cfg, domain, rng);
            let rel = sample_band(
                &GeneratorConfig {
                    condition_cap: cfg.condition_cap.sqrt(),
                    band: None,
                    ..cfg.clone()
                },
                Domain::POSITIVE_REALS,
                rng,
            );
            inst.a = hermitian_in_band(n, band_a, diagonal, rng);
            if collapse || equal {
                let c = if equal { 1.0 } else { rel.lower() };
                inst.b = Some(inst.a.scale(c * c));
                inst.band_rel = Some(point_band(c));
            } else {
                let squared = SpectralBand::new(rel.lower().powi(2), rel.upper().powi(2))?;
                let c = hermitian_in_band(n, squared, diagonal, rng);
                inst.b = Some(c.sandwich(&inst.a.sqrt()?)?);
                inst.band_rel = Some(rel);
            }
        }
        ChainId::Amgm | ChainId::Ando | ChainId::LogconvexChar | ChainId::JensenConcave | ChainId::Lemma33 => {
            let band_a = sample_band(cfg, domain, rng);
            let band_b = sample_band(cfg, domain, rng);
            let scalar_collapse = matches!(chain, ChainId::JensenConcave | ChainId::Lemma33);
            if collapse && scalar_collapse {
                inst.a = HermitianMatrix::scalar(n, band_a.lower());
                inst.b = Some(inst.a.clone());
            } else {
                inst.a = hermitian_in_band(n, band_a, diagonal, rng);
                let b = hermitian_in_band(n, band_b, diagonal, rng);
                inst.b = Some(if collapse || equal { inst.a.clone() } else { b });
            }
        }
    }
    Ok(inst)
}
