use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{loewner_leq_scaled, HermitianMatrix};
use crate::maps::MapKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Leq,
    #[serde(rename = ">=")]
    Geq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Leq => "≤",
            Relation::Geq => "≥",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BandSource {
    Certified,
    Supplied,
    /// Computed from other recorded bands.
    Derived,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandRecord {
    pub role: String,
    pub m: f64,
    #[serde(rename = "M")]
    pub upper: f64,
    pub source: BandSource,
}

/// Enough of an instance to reproduce it from the campaign config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceDigest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trial: Option<u64>,
    pub n: usize,
    pub output_dim: usize,
    pub map: MapKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bands: Vec<BandRecord>,
}

/// One comparison `lhs rel rhs` of a chain.
///
/// `min_gap` is `λ_min(larger − smaller)` as the relation is displayed, so a
/// non-negative gap means the link holds exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Link {
    pub lhs: String,
    pub rel: Relation,
    pub rhs: String,
    pub min_gap: f64,
    pub scale: f64,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub chain_id: String,
    pub instance_digest: InstanceDigest,
    pub links: Vec<Link>,
    pub overall_holds: bool,
}

impl ChainReport {
    /// Smallest non-negative slack among holding links; how close the
    /// instance comes to equality.
    pub fn tightness(&self) -> Option<f64> {
        self.links
            .iter()
            .filter(|l| l.holds)
            .map(|l| l.min_gap.max(0.0))
            .min_by(f64::total_cmp)
    }

    pub fn worst_gap(&self) -> f64 {
        self.links.iter().map(|l| l.min_gap).fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone)]
pub struct Term {
    pub label: String,
    pub value: HermitianMatrix,
}

#[derive(Debug, Clone)]
pub struct LinkSpec {
    pub lhs: usize,
    pub rhs: usize,
    pub relation: Relation,
    pub tags: Vec<&'static str>,
}

/// Every evaluated side of a chain together with the links between them.
#[derive(Debug, Clone)]
pub struct ChainEvaluation {
    pub chain_id: String,
    pub terms: Vec<Term>,
    pub links: Vec<LinkSpec>,
    pub digest: InstanceDigest,
}

impl ChainEvaluation {
    pub fn term(&self, label: &str) -> Option<&HermitianMatrix> {
        self.terms.iter().find(|t| t.label == label).map(|t| &t.value)
    }

    pub fn report(&self, tol: f64) -> Result<ChainReport> {
        let norms = self
            .terms
            .iter()
            .map(|t| t.value.spectral_norm())
            .collect::<Result<Vec<_>>>()?;
        let mut links = Vec::with_capacity(self.links.len());
        for spec in &self.links {
            let (lhs, rhs) = (&self.terms[spec.lhs], &self.terms[spec.rhs]);
            let (small, large) = match spec.relation {
                Relation::Leq => (&lhs.value, &rhs.value),
                Relation::Geq => (&rhs.value, &lhs.value),
            };
            let scale = 1.0_f64.max(norms[spec.lhs]).max(norms[spec.rhs]);
            let verdict = loewner_leq_scaled(small, large, tol, scale)?;
            links.push(Link {
                lhs: lhs.label.clone(),
                rel: spec.relation,
                rhs: rhs.label.clone(),
                min_gap: verdict.min_gap_eigenvalue,
                scale,
                holds: verdict.holds,
                tags: spec.tags.iter().map(|s| s.to_string()).collect(),
            });
        }
        Ok(ChainReport {
            chain_id: self.chain_id.clone(),
            instance_digest: self.digest.clone(),
            overall_holds: links.iter().all(|l| l.holds),
            links,
        })
    }
}

/// Accumulates terms and links in display order.
#[derive(Debug, Default)]
pub(crate) struct ChainBuilder {
    terms: Vec<Term>,
    links: Vec<LinkSpec>,
}

impl ChainBuilder {
    pub fn term(&mut self, label: impl Into<String>, value: HermitianMatrix) -> usize {
        self.terms.push(Term {
            label: label.into(),
            value,
        });
        self.terms.len() - 1
    }

    pub fn link(&mut self, lhs: usize, relation: Relation, rhs: usize, tags: &[&'static str]) {
        self.links.push(LinkSpec {
            lhs,
            rhs,
            relation,
            tags: tags.to_vec(),
        });
    }

    /// Links consecutive terms with the same relation.
    pub fn chain(&mut self, ids: &[usize], relation: Relation) {
        for w in ids.windows(2) {
            self.link(w[0], relation, w[1], &[]);
        }
    }

    pub fn finish(self, chain_id: &str, digest: InstanceDigest) -> ChainEvaluation {
        ChainEvaluation {
            chain_id: chain_id.to_string(),
            terms: self.terms,
            links: self.links,
            digest,
        }
    }
}
