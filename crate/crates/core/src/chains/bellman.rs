//! Jensen- and Bellman-type chains for contractions and operator monotone
//! decreasing functions.

use super::context::Ctx;
use super::instance::Instance;
use super::kantorovich::verifier;
use super::report::{ChainBuilder, ChainEvaluation, ChainReport, Relation};
use super::ChainId;
use crate::error::Result;
use crate::linalg::{HermitianMatrix, DEFAULT_TOL};
use crate::means::arith_mean;

verifier!(
    /// `Φ(f(A))∇_vΦ(f(B)) ≤ f(Φ(A∇_vB))` for operator concave `f`.
    verify_jensen_concave => jensen_concave
);
verifier!(
    /// `Φ((I−A)^r∇_v(I−B)^r) ≤ Φ(I−A∇_vB)^r` for `r ∈ [0, 1]`.
    verify_bellman => bellman
);
verifier!(
    /// `Φ(I−A∇_vB)^r ≤ Φ((I−A)^r∇_v(I−B)^r)` for `r ∈ [−1, 0] ∪ [1, 2]`.
    verify_reverse_bellman => reverse_bellman
);
verifier!(verify_thm32 => thm32);
verifier!(verify_lemma33 => lemma33);
verifier!(
    /// `f(A∇_vB) ≤ f(A)♯_vf(B)`. No flag is required: the inequality is
    /// expected to fail for increasing `f`.
    verify_logconvex_char => logconvex_char
);

pub(crate) fn jensen_concave(inst: &Instance) -> Result<ChainEvaluation> {
    let cx = Ctx::new(ChainId::JensenConcave, inst)?;
    let f = cx.function()?;
    if !f.flags().concave {
        return Err(cx.reject(format!("{} is not flagged operator concave", f.name())));
    }
    cx.require_in_domain(f, "A", cx.a())?;
    cx.require_in_domain(f, "B", cx.b())?;
    let v = cx.v();
    let mut ch = ChainBuilder::default();
    let lhs = ch.term(
        "Φ(f(A))∇_vΦ(f(B))",
        arith_mean(&cx.phi(&cx.apply(f, cx.a())?)?, &cx.phi(&cx.apply(f, cx.b())?)?, v)?,
    );
    let rhs = ch.term("f(Φ(A∇_vB))", cx.apply(f, &cx.phi(&arith_mean(cx.a(), cx.b(), v)?)?)?);
    ch.link(lhs, Relation::Leq, rhs, &[]);
    Ok(cx.finish(ch))
}

/// `I − A` and `I − B` after checking the contraction margin.
fn complements(cx: &Ctx<'_>) -> Result<(HermitianMatrix, HermitianMatrix)> {
    cx.require_contraction("A", cx.a())?;
    cx.require_contraction("B", cx.b())?;
    let id = cx.identity_in();
    Ok((id.sub(cx.a())?, id.sub(cx.b())?))
}

/// `Φ(I − A∇_vB)^r` and `Φ((I−A)^r ∇_v (I−B)^r)`.
fn bellman_sides(cx: &Ctx<'_>, r: f64) -> Result<(HermitianMatrix, HermitianMatrix)> {
    let (ia, ib) = complements(cx)?;
    let v = cx.v();
    let mean = cx.identity_in().sub(&arith_mean(cx.a(), cx.b(), v)?)?;
    let outer = cx.pow(&cx.phi(&mean)?, "Φ(I−A∇_vB)", r)?;
    let inner = cx.phi(&arith_mean(&cx.pow(&ia, "I−A", r)?, &cx.pow(&ib, "I−B", r)?, v)?)?;
    Ok((outer, inner))
}

pub(crate) fn bellman(inst: &Instance) -> Result<ChainEvaluation> {
    let cx = Ctx::new(ChainId::Bellman, inst)?;
    let r = cx.r_in(|r| (0.0..=1.0).contains(&r), "[0, 1]")?;
    let (outer, inner) = bellman_sides(&cx, r)?;
    let mut ch = ChainBuilder::default();
    let lhs = ch.term("Φ((I−A)^r∇_v(I−B)^r)", inner);
    let rhs = ch.term("Φ(I−A∇_vB)^r", outer);
    ch.link(lhs, Relation::Leq, rhs, &[]);
    Ok(cx.finish(ch))
}

pub(crate) fn reverse_bellman(inst: &Instance) -> Result<ChainEvaluation> {
    let cx = Ctx::new(ChainId::ReverseBellman, inst)?;
    let r = cx.r_in(
        |r| (-1.0..=0.0).contains(&r) || (1.0..=2.0).contains(&r),
        "[−1, 0] ∪ [1, 2]",
    )?;
    let (outer, inner) = bellman_sides(&cx, r)?;
    let mut ch = ChainBuilder::default();
    let lhs = ch.term("Φ(I−A∇_vB)^r", outer);
    let rhs = ch.term("Φ((I−A)^r∇_v(I−B)^r)", inner);
    ch.link(lhs, Relation::Leq, rhs, &[]);
    Ok(cx.finish(ch))
}

pub(crate) fn thm32(inst: &Instance) -> Result<ChainEvaluation> {
    let cx = Ctx::new(ChainId::Thm32, inst)?;
    let r = cx.r_in(|r| (-1.0..=0.0).contains(&r), "[−1, 0]")?;
    let (outer, inner) = bellman_sides(&cx, r)?;
    let (ia, ib) = complements(&cx)?;
    let v = cx.v();
    let (ia_r, ib_r) = (cx.pow(&ia, "I−A", r)?, cx.pow(&ib, "I−B", r)?);
    let pa_r = cx.pow(&cx.phi(&ia)?, "Φ(I−A)", r)?;
    let pb_r = cx.pow(&cx.phi(&ib)?, "Φ(I−B)", r)?;
    let mut ch = ChainBuilder::default();
    let t1 = ch.term("Φ(I−A∇_vB)^r", outer);
    let t2 = ch.term("Φ(I−A)^r♯_vΦ(I−B)^r", cx.geo(&pa_r, "Φ(I−A)^r", &pb_r, "Φ(I−B)^r", v)?);
    let t3 = ch.term(
        "Φ((I−A)^r♯_v(I−B)^r)",
        cx.phi(&cx.geo(&ia_r, "(I−A)^r", &ib_r, "(I−B)^r", v)?)?,
    );
    let t4 = ch.term("Φ((I−A)^r∇_v(I−B)^r)", inner);
    ch.chain(&[t1, t2, t3, t4], Relation::Leq);
    Ok(cx.finish(ch))
}

/// Tag on links of the chain whose middle term maps first, `f(Φ(A))♯_vf(Φ(B))`.
pub const MAP_THEN_MEAN: &str = "map_then_mean";
/// Tag on links of the chain whose middle term is `Φ(f(A)♯_vf(B))`.
pub const MEAN_THEN_MAP: &str = "mean_then_map";
/// Tag on the three links of the four-term refinement.
pub const REFINED: &str = "refined";

pub(crate) fn lemma33(inst: &Instance) -> Result<ChainEvaluation> {
    let cx = Ctx::new(ChainId::Lemma33, inst)?;
    let f = cx.function()?;
    if !f.flags().monotone_decreasing {
        return Err(cx.reject(format!("{} is not flagged operator monotone decreasing", f.name())));
    }
    // (1−t) on (0, 1) is decreasing but not log-convex
    cx.require_half_line(f)?;
    cx.require_in_domain(f, "A", cx.a())?;
    cx.require_in_domain(f, "B", cx.b())?;
    let v = cx.v();
    let (fa, fb) = (cx.apply(f, cx.a())?, cx.apply(f, cx.b())?);
    let f_pa = cx.apply(f, &cx.phi(cx.a())?)?;
    let f_pb = cx.apply(f, &cx.phi(cx.b())?)?;
    let mut ch = ChainBuilder::default();
    let t1 = ch.term("f(Φ(A∇_vB))", cx.apply(f, &cx.phi(&arith_mean(cx.a(), cx.b(), v)?)?)?);
    let t2 = ch.term("f(Φ(A))♯_vf(Φ(B))", cx.geo(&f_pa, "f(Φ(A))", &f_pb, "f(Φ(B))", v)?);
    let t3 = ch.term("Φ(f(A)♯_vf(B))", cx.phi(&cx.geo(&fa, "f(A)", &fb, "f(B)", v)?)?);
    let t4 = ch.term("Φ(f(A))∇_vΦ(f(B))", arith_mean(&cx.phi(&fa)?, &cx.phi(&fb)?, v)?);
    ch.link(t1, Relation::Leq, t2, &[REFINED, MAP_THEN_MEAN]);
    ch.link(t2, Relation::Leq, t3, &[REFINED]);
    ch.link(t3, Relation::Leq, t4, &[REFINED, MEAN_THEN_MAP]);
    ch.link(t2, Relation::Leq, t4, &[MAP_THEN_MEAN]);
    ch.link(t1, Relation::Leq, t3, &[MEAN_THEN_MAP]);
    Ok(cx.finish(ch))
}

pub(crate) fn logconvex_char(inst: &Instance) -> Result<ChainEvaluation> {
    let cx = Ctx::new(ChainId::LogconvexChar, inst)?;
    let f = cx.function()?;
    cx.require_positive("A", cx.a())?;
    cx.require_positive("B", cx.b())?;
    cx.require_in_domain(f, "A", cx.a())?;
    cx.require_in_domain(f, "B", cx.b())?;
    let v = cx.v();
    let (fa, fb) = (cx.apply(f, cx.a())?, cx.apply(f, cx.b())?);
    let mut ch = ChainBuilder::default();
    let lhs = ch.term("f(A∇_vB)", cx.apply(f, &arith_mean(cx.a(), cx.b(), v)?)?);
    let rhs = ch.term("f(A)♯_vf(B)", cx.geo(&fa, "f(A)", &fb, "f(B)", v)?);
    ch.link(lhs, Relation::Leq, rhs, &[]);
    Ok(cx.finish(ch))
}
