//! One verifier per inequality chain.
//!
//! Every verifier checks the chain's hypotheses first and returns
//! [`Error::Rejected`] when they are not met, so a failing
//! [`ChainReport`] always means the inequality itself was violated on a
//! valid instance.

mod bellman;
mod context;
mod instance;
mod kantorovich;
mod report;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use context::PRECONDITION_TOL;
pub use instance::{Instance, DEFAULT_CONTRACTION_MARGIN};
pub use report::{
    BandRecord, BandSource, ChainEvaluation, ChainReport, InstanceDigest, Link, LinkSpec, Relation, Term,
};

pub use bellman::{
    verify_bellman, verify_jensen_concave, verify_lemma33, verify_logconvex_char, verify_reverse_bellman, verify_thm32,
    MAP_THEN_MEAN, MEAN_THEN_MAP, REFINED,
};
pub use kantorovich::{
    verify_amgm, verify_ando, verify_cdj, verify_cor23, verify_cor24, verify_cor25, verify_kantorovich, verify_lee,
    verify_thm21, verify_thm22,
};

/// Registered chains, in catalog order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainId {
    Amgm,
    Cdj,
    Ando,
    Kantorovich,
    Lee,
    Thm21,
    Thm22,
    Cor23,
    Cor24,
    Cor25,
    JensenConcave,
    Bellman,
    ReverseBellman,
    Thm32,
    Lemma33,
    LogconvexChar,
}

impl ChainId {
    pub const ALL: [ChainId; 16] = [
        ChainId::Amgm,
        ChainId::Cdj,
        ChainId::Ando,
        ChainId::Kantorovich,
        ChainId::Lee,
        ChainId::Thm21,
        ChainId::Thm22,
        ChainId::Cor23,
        ChainId::Cor24,
        ChainId::Cor25,
        ChainId::JensenConcave,
        ChainId::Bellman,
        ChainId::ReverseBellman,
        ChainId::Thm32,
        ChainId::Lemma33,
        ChainId::LogconvexChar,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ChainId::Amgm => "amgm",
            ChainId::Cdj => "cdj",
            ChainId::Ando => "ando",
            ChainId::Kantorovich => "kantorovich",
            ChainId::Lee => "lee",
            ChainId::Thm21 => "thm21",
            ChainId::Thm22 => "thm22",
            ChainId::Cor23 => "cor23",
            ChainId::Cor24 => "cor24",
            ChainId::Cor25 => "cor25",
            ChainId::JensenConcave => "jensen_concave",
            ChainId::Bellman => "bellman",
            ChainId::ReverseBellman => "reverse_bellman",
            ChainId::Thm32 => "thm32",
            ChainId::Lemma33 => "lemma33",
            ChainId::LogconvexChar => "logconvex_char",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            ChainId::Amgm => "A♯_vB ≤ A∇_vB",
            ChainId::Cdj => "f(Φ(A)) ≤ Φ(f(A)) for operator convex f (reversed for concave)",
            ChainId::Ando => "Φ(A♯_vB) ≤ Φ(A)♯_vΦ(B)",
            ChainId::Kantorovich => "Φ(A⁻¹)♯Φ(A) ≤ (M+m)/(2√(Mm))",
            ChainId::Lee => "Φ(A)♯Φ(B) ≤ (M+m)/(2√(Mm)) Φ(A♯B) when m²A ≤ B ≤ M²A",
            ChainId::Thm21 => "four-term reverse chain for operator monotone f",
            ChainId::Thm22 => "four-term reverse chain for operator monotone decreasing g",
            ChainId::Cor23 => "power form of the reverse chain, r ∈ [−1, 1]",
            ChainId::Cor24 => "single-operator reverse chain in Φ(A) and Φ(A⁻¹)",
            ChainId::Cor25 => "power form of the single-operator chain, r ∈ [−1, 1]",
            ChainId::JensenConcave => "Φ(f(A))∇_vΦ(f(B)) ≤ f(Φ(A∇_vB)) for operator concave f",
            ChainId::Bellman => "Φ((I−A)^r∇_v(I−B)^r) ≤ Φ(I−A∇_vB)^r, r ∈ [0, 1]",
            ChainId::ReverseBellman => "Φ(I−A∇_vB)^r ≤ Φ((I−A)^r∇_v(I−B)^r), r ∈ [−1, 0] ∪ [1, 2]",
            ChainId::Thm32 => "four-term refined reverse Bellman chain, r ∈ [−1, 0]",
            ChainId::Lemma33 => "four-term chain for operator monotone decreasing f",
            ChainId::LogconvexChar => "f(A∇_vB) ≤ f(A)♯_vf(B), the log-convexity characterization",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.as_str() == s.trim())
            .ok_or_else(|| Error::UnknownChain(s.to_string()))
    }

    /// Whether the chain takes two operators.
    pub fn uses_b(self) -> bool {
        !matches!(
            self,
            ChainId::Cdj | ChainId::Kantorovich | ChainId::Cor24 | ChainId::Cor25
        )
    }

    pub fn uses_map(self) -> bool {
        !matches!(self, ChainId::Amgm | ChainId::LogconvexChar)
    }

    pub fn uses_function(self) -> bool {
        matches!(
            self,
            ChainId::Cdj
                | ChainId::Thm21
                | ChainId::Thm22
                | ChainId::Cor24
                | ChainId::JensenConcave
                | ChainId::Lemma33
                | ChainId::LogconvexChar
        )
    }

    pub fn uses_v(self) -> bool {
        matches!(
            self,
            ChainId::Amgm
                | ChainId::Ando
                | ChainId::JensenConcave
                | ChainId::Bellman
                | ChainId::ReverseBellman
                | ChainId::Thm32
                | ChainId::Lemma33
                | ChainId::LogconvexChar
        )
    }

    pub fn uses_r(self) -> bool {
        matches!(
            self,
            ChainId::Cor23 | ChainId::Cor25 | ChainId::Bellman | ChainId::ReverseBellman | ChainId::Thm32
        )
    }

    /// Chains whose operators must be contractions with `I − A` invertible.
    pub fn uses_contractions(self) -> bool {
        matches!(self, ChainId::Bellman | ChainId::ReverseBellman | ChainId::Thm32)
    }

    /// Chains stated under spectral bands that collapse to equalities when `m = M`.
    pub fn is_banded(self) -> bool {
        matches!(
            self,
            ChainId::Kantorovich
                | ChainId::Lee
                | ChainId::Thm21
                | ChainId::Thm22
                | ChainId::Cor23
                | ChainId::Cor24
                | ChainId::Cor25
        )
    }
}

impl fmt::Display for ChainId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ChainId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Checks preconditions and evaluates every term of `chain` on `inst`.
pub fn evaluate(chain: ChainId, inst: &Instance) -> Result<ChainEvaluation> {
    match chain {
        ChainId::Amgm => kantorovich::amgm(inst),
        ChainId::Cdj => kantorovich::cdj(inst),
        ChainId::Ando => kantorovich::ando(inst),
        ChainId::Kantorovich => kantorovich::kantorovich(inst),
        ChainId::Lee => kantorovich::lee(inst),
        ChainId::Thm21 => kantorovich::thm21(inst),
        ChainId::Thm22 => kantorovich::thm22(inst),
        ChainId::Cor23 => kantorovich::cor23(inst),
        ChainId::Cor24 => kantorovich::cor24(inst),
        ChainId::Cor25 => kantorovich::cor25(inst),
        ChainId::JensenConcave => bellman::jensen_concave(inst),
        ChainId::Bellman => bellman::bellman(inst),
        ChainId::ReverseBellman => bellman::reverse_bellman(inst),
        ChainId::Thm32 => bellman::thm32(inst),
        ChainId::Lemma33 => bellman::lemma33(inst),
        ChainId::LogconvexChar => bellman::logconvex_char(inst),
    }
}

/// Evaluates `chain` and compares every link at relative tolerance `tol`.
pub fn verify(chain: ChainId, inst: &Instance, tol: f64) -> Result<ChainReport> {
    evaluate(chain, inst)?.report(tol)
}
