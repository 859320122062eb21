//! Normalized (unital) positive linear maps.
//!
//! Wire form: `{"kind": "...", "params": {...}}`. Pinching blocks use
//! zero-based indices; unitaries and isometries are encoded as
//! `{"re": [[...]], "im": [[...]]}` without Hermitian symmetrization.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, HermitianMatrix};

/// Largest allowed deviation from unitarity, isometry or unit weight sum.
pub const UNITAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum PositiveMapSpec {
    Identity {},
    /// `X ↦ Σ wᵢ Uᵢ* X Uᵢ`.
    UnitaryMixture {
        unitaries: Vec<CMatrix>,
        weights: Vec<f64>,
    },
    /// `X ↦ V* X V` with `V*V = I_k`.
    Compression {
        isometry: CMatrix,
    },
    /// Keeps the diagonal blocks of a partition, zeroes the rest.
    Pinching {
        blocks: Vec<Vec<usize>>,
    },
    /// `X ↦ tr(X)/n` as a 1x1 matrix.
    NormalizedTrace {},
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    Identity,
    UnitaryMixture,
    Compression,
    Pinching,
    NormalizedTrace,
}

impl MapKind {
    pub const ALL: [MapKind; 5] = [
        MapKind::Identity,
        MapKind::UnitaryMixture,
        MapKind::Compression,
        MapKind::Pinching,
        MapKind::NormalizedTrace,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MapKind::Identity => "identity",
            MapKind::UnitaryMixture => "unitary_mixture",
            MapKind::Compression => "compression",
            MapKind::Pinching => "pinching",
            MapKind::NormalizedTrace => "normalized_trace",
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MapKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MapKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidMap(format!("unknown map kind `{s}`")))
    }
}

impl PositiveMapSpec {
    pub fn kind(&self) -> MapKind {
        match self {
            PositiveMapSpec::Identity {} => MapKind::Identity,
            PositiveMapSpec::UnitaryMixture { .. } => MapKind::UnitaryMixture,
            PositiveMapSpec::Compression { .. } => MapKind::Compression,
            PositiveMapSpec::Pinching { .. } => MapKind::Pinching,
            PositiveMapSpec::NormalizedTrace {} => MapKind::NormalizedTrace,
        }
    }
}

/// A validated map, ready to apply.
#[derive(Debug, Clone, PartialEq)]
pub struct PositiveMap {
    spec: PositiveMapSpec,
    /// Block index of each coordinate, for pinchings.
    block_of: Vec<usize>,
}

pub fn build_map(spec: &PositiveMapSpec) -> Result<PositiveMap> {
    let mut block_of = Vec::new();
    match spec {
        PositiveMapSpec::Identity {} | PositiveMapSpec::NormalizedTrace {} => {}
        PositiveMapSpec::UnitaryMixture { unitaries, weights } => {
            if unitaries.is_empty() || unitaries.len() != weights.len() {
                return Err(Error::InvalidMap(format!(
                    "{} unitaries with {} weights",
                    unitaries.len(),
                    weights.len()
                )));
            }
            if weights.iter().any(|&w| w.is_nan() || w < 0.0) {
                return Err(Error::InvalidMap("weights must be non-negative".into()));
            }
            let total: f64 = weights.iter().sum();
            if (total - 1.0).abs() > UNITAL_TOL {
                return Err(Error::InvalidMap(format!("weights sum to {total}, not 1")));
            }
            let n = unitaries[0].rows();
            for (i, u) in unitaries.iter().enumerate() {
                if !u.is_square() || u.rows() != n {
                    return Err(Error::InvalidMap(format!("unitary {i} is not {n}x{n}")));
                }
                let defect = u.isometry_defect();
                if defect > UNITAL_TOL {
                    return Err(Error::InvalidMap(format!("unitary {i} has defect {defect:e}")));
                }
            }
        }
        PositiveMapSpec::Compression { isometry } => {
            if isometry.cols() == 0 || isometry.cols() > isometry.rows() {
                return Err(Error::InvalidMap(format!(
                    "isometry shape {}x{} needs 1 <= k <= n",
                    isometry.rows(),
                    isometry.cols()
                )));
            }
            let defect = isometry.isometry_defect();
            if defect > UNITAL_TOL {
                return Err(Error::InvalidMap(format!("V*V deviates from I by {defect:e}")));
            }
        }
        PositiveMapSpec::Pinching { blocks } => {
            let n: usize = blocks.iter().map(Vec::len).sum();
            block_of = vec![usize::MAX; n];
            for (b, block) in blocks.iter().enumerate() {
                if block.is_empty() {
                    return Err(Error::InvalidMap(format!("block {b} is empty")));
                }
                for &i in block {
                    if i >= n {
                        return Err(Error::InvalidMap(format!("index {i} outside 0..{n}")));
                    }
                    if block_of[i] != usize::MAX {
                        return Err(Error::InvalidMap(format!("index {i} appears in two blocks")));
                    }
                    block_of[i] = b;
                }
            }
        }
    }
    Ok(PositiveMap {
        spec: spec.clone(),
        block_of,
    })
}

impl PositiveMap {
    pub fn spec(&self) -> &PositiveMapSpec {
        &self.spec
    }

    /// Required input dimension, or `None` if the map accepts any.
    pub fn input_dim(&self) -> Option<usize> {
        match &self.spec {
            PositiveMapSpec::Identity {} | PositiveMapSpec::NormalizedTrace {} => None,
            PositiveMapSpec::UnitaryMixture { unitaries, .. } => Some(unitaries[0].rows()),
            PositiveMapSpec::Compression { isometry } => Some(isometry.rows()),
            PositiveMapSpec::Pinching { .. } => Some(self.block_of.len()),
        }
    }

    pub fn output_dim(&self, n: usize) -> usize {
        match &self.spec {
            PositiveMapSpec::Compression { isometry } => isometry.cols(),
            PositiveMapSpec::NormalizedTrace {} => 1,
            _ => n,
        }
    }

    pub fn apply(&self, x: &HermitianMatrix) -> Result<HermitianMatrix> {
        if let Some(n) = self.input_dim() {
            if n != x.dim() {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: x.dim(),
                });
            }
        }
        match &self.spec {
            PositiveMapSpec::Identity {} => Ok(x.clone()),
            PositiveMapSpec::UnitaryMixture { unitaries, weights } => {
                let mut acc = HermitianMatrix::zeros(x.dim());
                for (u, &w) in unitaries.iter().zip(weights) {
                    acc = acc.lin_comb(1.0, &x.congruence(u)?, w)?;
                }
                Ok(acc)
            }
            PositiveMapSpec::Compression { isometry } => x.congruence(isometry),
            PositiveMapSpec::Pinching { .. } => {
                let n = x.dim();
                let m = CMatrix::from_fn(n, n, |i, j| {
                    if self.block_of[i] == self.block_of[j] {
                        x.entry(i, j)
                    } else {
                        Default::default()
                    }
                });
                HermitianMatrix::new(m)
            }
            PositiveMapSpec::NormalizedTrace {} => {
                if x.dim() == 0 {
                    return Err(Error::InvalidMap("trace of an empty matrix".into()));
                }
                Ok(HermitianMatrix::diag(&[x.trace() / x.dim() as f64]))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{gaussian_hermitian, hermitian_with_spectrum, random_isometry, random_unitary, trial_rng};
    use num_complex::Complex64;

    fn sample_maps(n: usize, seed: u64) -> Vec<PositiveMap> {
        let mut rng = trial_rng(seed, 0);
        let specs = [
            PositiveMapSpec::Identity {},
            PositiveMapSpec::UnitaryMixture {
                unitaries: (0..3).map(|_| random_unitary(n, &mut rng)).collect(),
                weights: vec![0.5, 0.3, 0.2],
            },
            PositiveMapSpec::Compression {
                isometry: random_isometry(n, n.div_ceil(2), &mut rng),
            },
            PositiveMapSpec::Pinching {
                blocks: vec![(0..n).step_by(2).collect(), (1..n).step_by(2).collect()]
                    .into_iter()
                    .filter(|b: &Vec<usize>| !b.is_empty())
                    .collect(),
            },
            PositiveMapSpec::NormalizedTrace {},
        ];
        specs.iter().map(|s| build_map(s).unwrap()).collect()
    }

    #[test]
    fn pinching_drops_off_diagonal_blocks() {
        let map = build_map(&PositiveMapSpec::Pinching {
            blocks: vec![vec![0], vec![1]],
        })
        .unwrap();
        let x = HermitianMatrix::from_real_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(map.apply(&x).unwrap(), HermitianMatrix::identity(2));
    }

    #[test]
    fn normalized_trace_of_diagonal() {
        let map = build_map(&PositiveMapSpec::NormalizedTrace {}).unwrap();
        let y = map.apply(&HermitianMatrix::diag(&[1.0, 4.0])).unwrap();
        assert_eq!(y, HermitianMatrix::diag(&[2.5]));
        assert_eq!(map.output_dim(2), 1);
    }

    #[test]
    fn single_identity_unitary_is_the_identity_map() {
        let map = build_map(&PositiveMapSpec::UnitaryMixture {
            unitaries: vec![CMatrix::identity(3)],
            weights: vec![1.0],
        })
        .unwrap();
        let x = gaussian_hermitian(3, &mut trial_rng(4, 4));
        assert_eq!(map.apply(&x).unwrap(), x);
    }

    #[test]
    fn invalid_specs_rejected() {
        let not_iso = CMatrix::from_parts(&[vec![2.0], vec![0.0]], &[vec![0.0], vec![0.0]]).unwrap();
        assert!(build_map(&PositiveMapSpec::Compression { isometry: not_iso }).is_err());
        assert!(build_map(&PositiveMapSpec::UnitaryMixture {
            unitaries: vec![CMatrix::identity(2), CMatrix::identity(2)],
            weights: vec![0.7, 0.7],
        })
        .is_err());
        assert!(build_map(&PositiveMapSpec::UnitaryMixture {
            unitaries: vec![CMatrix::identity(2), CMatrix::identity(2)],
            weights: vec![1.5, -0.5],
        })
        .is_err());
        assert!(build_map(&PositiveMapSpec::Pinching {
            blocks: vec![vec![0, 1], vec![1]],
        })
        .is_err());
        assert!(build_map(&PositiveMapSpec::Pinching {
            blocks: vec![vec![0, 3]],
        })
        .is_err());
    }

    #[test]
    fn maps_are_unital() {
        for n in 1..=6 {
            for map in sample_maps(n, n as u64) {
                let k = map.output_dim(n);
                let out = map.apply(&HermitianMatrix::identity(n)).unwrap();
                assert!(
                    out.max_abs_diff(&HermitianMatrix::identity(k)).unwrap() < 1e-12,
                    "{:?}",
                    map.spec().kind()
                );
            }
        }
    }

    #[test]
    fn maps_preserve_positivity_and_linearity() {
        let mut rng = trial_rng(77, 0);
        for trial in 0..20 {
            let n = 1 + trial % 6;
            let u = random_unitary(n, &mut rng);
            let eigs: Vec<f64> = (0..n).map(|i| 0.1 * i as f64).collect();
            let psd = hermitian_with_spectrum(&eigs, &u);
            let x = gaussian_hermitian(n, &mut rng);
            let y = gaussian_hermitian(n, &mut rng);
            let alpha = 0.37 + trial as f64;
            for map in sample_maps(n, 100 + trial as u64) {
                let out = map.apply(&psd).unwrap();
                assert!(out.min_eigenvalue().unwrap() >= -1e-12);
                let lhs = map.apply(&x.lin_comb(alpha, &y, 1.0).unwrap()).unwrap();
                let rhs = map
                    .apply(&x)
                    .unwrap()
                    .lin_comb(alpha, &map.apply(&y).unwrap(), 1.0)
                    .unwrap();
                assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-12 * lhs.frobenius_norm().max(1.0));
            }
        }
    }

    #[test]
    fn wrong_input_dimension() {
        let map = build_map(&PositiveMapSpec::Pinching {
            blocks: vec![vec![0], vec![1]],
        })
        .unwrap();
        assert!(map.apply(&HermitianMatrix::identity(3)).is_err());
    }

    #[test]
    fn wire_form() {
        let spec = PositiveMapSpec::Pinching {
            blocks: vec![vec![0], vec![1, 2]],
        };
        let s = serde_json::to_string(&spec).unwrap();
        assert_eq!(s, r#"{"kind":"pinching","params":{"blocks":[[0],[1,2]]}}"#);
        assert_eq!(serde_json::from_str::<PositiveMapSpec>(&s).unwrap(), spec);
        let id: PositiveMapSpec = serde_json::from_str(r#"{"kind":"identity","params":{}}"#).unwrap();
        assert_eq!(id, PositiveMapSpec::Identity {});

        let v = CMatrix::from_vec(2, 1, vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)]).unwrap();
        let spec = PositiveMapSpec::Compression { isometry: v };
        let s = serde_json::to_string(&spec).unwrap();
        assert_eq!(
            s,
            r#"{"kind":"compression","params":{"isometry":{"re":[[0.6],[0.0]],"im":[[0.0],[0.8]]}}}"#
        );
        assert!(build_map(&serde_json::from_str(&s).unwrap()).is_ok());
    }

    #[test]
    fn map_kind_names() {
        for k in MapKind::ALL {
            assert_eq!(k.as_str().parse::<MapKind>().unwrap(), k);
        }
        assert!("bogus".parse::<MapKind>().is_err());
    }
}
