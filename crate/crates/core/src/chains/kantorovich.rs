//! Kantorovich-type chains: means, Choi–Davis–Jensen, Ando, and the reverse
//! chains bounded by `(M+m)/(2√(Mm))`.

use super::context::Ctx;
use super::instance::Instance;
use super::report::{BandSource, ChainBuilder, ChainEvaluation, ChainReport, Relation};
use super::ChainId;
use crate::error::Result;
use crate::linalg::{HermitianMatrix, DEFAULT_TOL};
use crate::means::{arith_mean, derived_band, geo_mean, MeanWeight, SpectralBand};

macro_rules! verifier {
    ($(#[$doc:meta])* $name:ident => $eval:ident) => {
        $(#[$doc])*
        pub fn $name(inst: &Instance) -> Result<ChainReport> {
            $eval(inst)?.report(DEFAULT_TOL)
        }
    };
}
pub(crate) use verifier;

verifier!(
    /// `A♯_vB ≤ A∇_vB`.
    verify_amgm => amgm
);
verifier!(
    /// `f(Φ(A)) ≤ Φ(f(A))` for operator convex `f`, reversed for concave.
    verify_cdj => cdj
);
verifier!(
    /// `Φ(A♯_vB) ≤ Φ(A)♯_vΦ(B)`.
    verify_ando => ando
);
verifier!(
    /// `Φ(A⁻¹)♯Φ(A) ≤ K·I` with `K = (M+m)/(2√(Mm))`.
    verify_kantorovich => kantorovich
);
verifier!(
    /// `Φ(A)♯Φ(B) ≤ K·Φ(A♯B)` when `m²A ≤ B ≤ M²A`.
    verify_lee => lee
);
verifier!(verify_thm21 => thm21);
verifier!(verify_thm22 => thm22);
verifier!(verify_cor23 => cor23);
verifier!(verify_cor24 => cor24);
verifier!(verify_cor25 => cor25);

pub(crate) fn amgm(inst: &Instance) -> Result<ChainEvaluation> {
    let cx = Ctx::new(ChainId::Amgm, inst)?;
    cx.require_positive("A", cx.a())?;
    cx.require_positive("B", cx.b())?;
    let v = cx.v();
    let mut ch = ChainBuilder::default();
    let g = ch.term("A♯_vB", geo_mean(cx.a(), cx.b(), v)?);
    let a = ch.term("A∇_vB", arith_mean(cx.a(), cx.b(), v)?);
    ch.link(g, Relation::Leq, a, &[]);
    Ok(cx.finish(ch))
}

pub(crate) fn cdj(inst: &Instance) -> Result<ChainEvaluation> {
    let cx = Ctx::new(ChainId::Cdj, inst)?;
    let f = cx.function()?;
    let flags = f.flags();
    if !flags.convex && !flags.concave {
        return Err(cx.reject(format!("{} is flagged neither operator convex nor concave", f.name())));
    }
    cx.require_in_domain(f, "A", cx.a())?;
    let mut ch = ChainBuilder::default();
    let lhs = ch.term("f(Φ(A))", cx.apply(f, &cx.phi(cx.a())?)?);
    let rhs = ch.term("Φ(f(A))", cx.phi(&cx.apply(f, cx.a())?)?);
    let rel = if flags.convex { Relation::Leq } else { Relation::Geq };
    ch.link(lhs, rel, rhs, &[]);
    Ok(cx.finish(ch))
}

pub(crate) fn ando(inst: &Instance) -> Result<ChainEvaluation> {
    let cx = Ctx::new(ChainId::Ando, inst)?;
    cx.require_positive("A", cx.a())?;
    cx.require_positive("B", cx.b())?;
    let v = cx.v();
    let mut ch = ChainBuilder::default();
    let lhs = ch.term("Φ(A♯_vB)", cx.phi(&geo_mean(cx.a(), cx.b(), v)?)?);
    let (pa, pb) = (cx.phi(cx.a())?, cx.phi(cx.b())?);
    let rhs = ch.term("Φ(A)♯_vΦ(B)", cx.geo(&pa, "Φ(A)", &pb, "Φ(B)", v)?);
    ch.link(lhs, Relation::Leq, rhs, &[]);
    Ok(cx.finish(ch))
}

pub(crate) fn kantorovich(inst: &Instance) -> Result<ChainEvaluation> {
    let cx = Ctx::new(ChainId::Kantorovich, inst)?;
    let band = cx.band_for("A", cx.a(), inst.band_a)?;
    let pa = cx.phi(cx.a())?;
    let pinv = cx.phi(&cx.a().inverse()?)?;
    let mut ch = ChainBuilder::default();
    let lhs = ch.term("Φ(A⁻¹)♯Φ(A)", cx.geo(&pinv, "Φ(A⁻¹)", &pa, "Φ(A)", MeanWeight::HALF)?);
    let rhs = ch.term("(M+m)/(2√(Mm))·I", cx.scalar_out(band.kantorovich_constant()));
    ch.link(lhs, Relation::Leq, rhs, &[]);
    Ok(cx.finish(ch))
}

/// Square roots of the extreme eigenvalues of `A^{−1/2}BA^{−1/2}`, the
/// tightest `(m, M)` with `m²A ≤ B ≤ M²A`.
fn certify_relative_band(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<SpectralBand> {
    let neg_half = a.pow(-0.5)?;
    let e = b.sandwich(&neg_half)?.eig()?;
    SpectralBand::new(e.min().max(0.0).sqrt(), e.max().max(0.0).sqrt())
}

pub(crate) fn lee(inst: &Instance) -> Result<ChainEvaluation> {
    let cx = Ctx::new(ChainId::Lee, inst)?;
    cx.require_positive("A", cx.a())?;
    cx.require_positive("B", cx.b())?;
    let (a, b) = (cx.a(), cx.b());
    let band = match inst.band_rel {
        Some(band) => {
            let low = a.scale(band.lower() * band.lower());
            let high = a.scale(band.upper() * band.upper());
            let below = crate::linalg::loewner_leq(&low, b, super::PRECONDITION_TOL)?.holds;
            let above = crate::linalg::loewner_leq(b, &high, super::PRECONDITION_TOL)?.holds;
            if !below || !above {
                return Err(cx.reject(format!(
                    "m²A ≤ B ≤ M²A fails for (m, M) = ({}, {})",
                    band.lower(),
                    band.upper()
                )));
            }
            cx.record_band("B/A", band, BandSource::Supplied);
            band
        }
        None => {
            let band =
                certify_relative_band(a, b).map_err(|_| cx.reject("B is not strictly positive relative to A"))?;
            cx.record_band("B/A", band, BandSource::Certified);
            band
        }
    };
    let (pa, pb) = (cx.phi(a)?, cx.phi(b)?);
    let mut ch = ChainBuilder::default();
    let lhs = ch.term("Φ(A)♯Φ(B)", cx.geo(&pa, "Φ(A)", &pb, "Φ(B)", MeanWeight::HALF)?);
    let rhs = ch.term(
        "(M+m)/(2√(Mm))·Φ(A♯B)",
        cx.phi(&geo_mean(a, b, MeanWeight::HALF)?)?
            .scale(band.kantorovich_constant()),
    );
    ch.link(lhs, Relation::Leq, rhs, &[]);
    Ok(cx.finish(ch))
}

/// Shared setup of the two-operator reverse chains: checked bands for `A`
/// and `B` (squared bounds) and the derived `(m, M)`.
struct PairSetup {
    m: f64,
    big: f64,
    pa: HermitianMatrix,
    pb: HermitianMatrix,
    pab: HermitianMatrix,
}

fn pair_setup(cx: &Ctx<'_>) -> Result<PairSetup> {
    let band_a = cx.band_for("A", cx.a(), cx.inst.band_a)?;
    let band_b = cx.band_for("B", cx.b(), cx.inst.band_b)?;
    let d = derived_band(band_a, band_b);
    cx.record_band("(m₂/M₁, M₂/m₁)", d, BandSource::Derived);
    Ok(PairSetup {
        m: d.lower(),
        big: d.upper(),
        pa: cx.phi(cx.a())?,
        pb: cx.phi(cx.b())?,
        pab: cx.phi(&geo_mean(cx.a(), cx.b(), MeanWeight::HALF)?)?,
    })
}

pub(crate) fn thm21(inst: &Instance) -> Result<ChainEvaluation> {
    let cx = Ctx::new(ChainId::Thm21, inst)?;
    let f = cx.function()?;
    if !f.flags().monotone {
        return Err(cx.reject(format!("{} is not flagged operator monotone", f.name())));
    }
    cx.require_half_line(f)?;
    let s = pair_setup(&cx)?;
    let mm = s.m * s.big;
    let mm_pa = s.pa.scale(mm);
    let f_mm_pa = cx.apply(f, &mm_pa)?;
    let f_pb = cx.apply(f, &s.pb)?;
    let mut ch = ChainBuilder::default();
    let t1 = ch.term("f((M+m)/2·Φ(A♯B))", cx.apply(f, &s.pab.scale((s.big + s.m) / 2.0))?);
    let t2 = ch.term("f((Mm·Φ(A)+Φ(B))/2)", cx.apply(f, &mm_pa.lin_comb(0.5, &s.pb, 0.5)?)?);
    let t3 = ch.term("(f(Mm·Φ(A))+f(Φ(B)))/2", f_mm_pa.lin_comb(0.5, &f_pb, 0.5)?);
    let t4 = ch.term(
        "f(Mm·Φ(A))♯f(Φ(B))",
        cx.geo(&f_mm_pa, "f(Mm·Φ(A))", &f_pb, "f(Φ(B))", MeanWeight::HALF)?,
    );
    ch.chain(&[t1, t2, t3, t4], Relation::Geq);
    Ok(cx.finish(ch))
}

pub(crate) fn thm22(inst: &Instance) -> Result<ChainEvaluation> {
    let cx = Ctx::new(ChainId::Thm22, inst)?;
    let g = cx.function()?;
    if !g.flags().monotone_decreasing {
        return Err(cx.reject(format!("{} is not flagged operator monotone decreasing", g.name())));
    }
    cx.require_half_line(g)?;
    let s = pair_setup(&cx)?;
    let mm = s.m * s.big;
    let mm_pa = s.pa.scale(mm);
    let g_mm_pa = cx.apply(g, &mm_pa)?;
    let g_pb = cx.apply(g, &s.pb)?;
    let harmonic = cx
        .inverse(&g_mm_pa, "g(Mm·Φ(A))")?
        .lin_comb(0.5, &cx.inverse(&g_pb, "g(Φ(B))")?, 0.5)?;
    let mut ch = ChainBuilder::default();
    let t1 = ch.term("g((M+m)/2·Φ(A♯B))", cx.apply(g, &s.pab.scale((s.big + s.m) / 2.0))?);
    let t2 = ch.term("g((Mm·Φ(A)+Φ(B))/2)", cx.apply(g, &mm_pa.lin_comb(0.5, &s.pb, 0.5)?)?);
    let t3 = ch.term(
        "{(g(Mm·Φ(A))⁻¹+g(Φ(B))⁻¹)/2}⁻¹",
        cx.inverse(&harmonic, "(g(Mm·Φ(A))⁻¹+g(Φ(B))⁻¹)/2")?,
    );
    let t4 = ch.term(
        "g(Mm·Φ(A))♯g(Φ(B))",
        cx.geo(&g_mm_pa, "g(Mm·Φ(A))", &g_pb, "g(Φ(B))", MeanWeight::HALF)?,
    );
    ch.chain(&[t1, t2, t3, t4], Relation::Leq);
    Ok(cx.finish(ch))
}

pub(crate) fn cor23(inst: &Instance) -> Result<ChainEvaluation> {
    let cx = Ctx::new(ChainId::Cor23, inst)?;
    let r = cx.r_in(|r| (-1.0..=1.0).contains(&r), "[−1, 1]")?;
    let s = pair_setup(&cx)?;
    let mm = s.m * s.big;
    let kappa = mm.sqrt();
    let k = (s.big + s.m) / (2.0 * kappa);
    let pa_r = cx.pow(&s.pa, "Φ(A)", r)?;
    let pb_r = cx.pow(&s.pb, "Φ(B)", r)?;
    let mut ch = ChainBuilder::default();
    let t1 = ch.term(
        "((M+m)/(2√(Mm)))^r·Φ(A♯B)^r",
        cx.pow(&s.pab, "Φ(A♯B)", r)?.scale(k.powf(r)),
    );
    let t2 = ch.term(
        "((Mm·Φ(A)+Φ(B))/(2√(Mm)))^r",
        cx.pow(
            &s.pa.lin_comb(mm / (2.0 * kappa), &s.pb, 1.0 / (2.0 * kappa))?,
            "(Mm·Φ(A)+Φ(B))/(2√(Mm))",
            r,
        )?,
    );
    let t4_value = cx.geo(&pa_r, "Φ(A)^r", &pb_r, "Φ(B)^r", MeanWeight::HALF)?;
    if r >= 0.0 {
        let t3 = ch.term(
            "((Mm)^r·Φ(A)^r+Φ(B)^r)/(2(Mm)^{r/2})",
            pa_r.lin_comb(mm.powf(r), &pb_r, 1.0)?
                .scale(1.0 / (2.0 * mm.powf(r / 2.0))),
        );
        let t4 = ch.term("Φ(A)^r♯Φ(B)^r", t4_value);
        ch.chain(&[t1, t2, t3, t4], Relation::Geq);
    } else {
        let inner = cx
            .pow(&s.pa, "Φ(A)", -r)?
            .lin_comb(mm.powf(-r) / 2.0, &cx.pow(&s.pb, "Φ(B)", -r)?, 0.5)?;
        let t3 = ch.term(
            "(Mm)^{−r/2}·{((Mm)^{−r}·Φ(A)^{−r}+Φ(B)^{−r})/2}⁻¹",
            cx.inverse(&inner, "((Mm)^{−r}·Φ(A)^{−r}+Φ(B)^{−r})/2")?
                .scale(mm.powf(-r / 2.0)),
        );
        let t4 = ch.term("Φ(A)^r♯Φ(B)^r", t4_value);
        ch.chain(&[t1, t2, t3, t4], Relation::Leq);
    }
    if r == 1.0 {
        let s1 = ch.term("(M+m)/(2√(Mm))·Φ(A♯B)", s.pab.scale(k));
        let s2 = ch.term(
            "(Mm·Φ(A)+Φ(B))/(2√(Mm))",
            s.pa.lin_comb(mm / (2.0 * kappa), &s.pb, 1.0 / (2.0 * kappa))?,
        );
        let s3 = ch.term("Φ(A)♯Φ(B)", cx.geo(&s.pa, "Φ(A)", &s.pb, "Φ(B)", MeanWeight::HALF)?);
        ch.link(s1, Relation::Geq, s2, &["special_case"]);
        ch.link(s2, Relation::Geq, s3, &["special_case"]);
    }
    Ok(cx.finish(ch))
}

pub(crate) fn cor24(inst: &Instance) -> Result<ChainEvaluation> {
    let cx = Ctx::new(ChainId::Cor24, inst)?;
    let f = cx.function()?;
    let flags = f.flags();
    if !flags.monotone && !flags.monotone_decreasing {
        return Err(cx.reject(format!(
            "{} is flagged neither operator monotone nor operator monotone decreasing",
            f.name()
        )));
    }
    cx.require_half_line(f)?;
    let band = cx.band_for("A", cx.a(), inst.band_a)?;
    let (m, big) = (band.lower(), band.upper());
    let mm = m * big;
    let x = cx.phi(cx.a())?.scale(1.0 / mm);
    let y = cx.phi(&cx.a().inverse()?)?;
    let fx = cx.apply(f, &x)?;
    let fy = cx.apply(f, &y)?;
    let mut ch = ChainBuilder::default();
    if flags.monotone {
        let t1 = ch.term("f((M+m)/(2Mm))·I", cx.scalar_out(f.evaluate((big + m) / (2.0 * mm))));
        let t2 = ch.term("f((Φ(A)/(Mm)+Φ(A⁻¹))/2)", cx.apply(f, &x.lin_comb(0.5, &y, 0.5)?)?);
        let t3 = ch.term("(f(Φ(A)/(Mm))+f(Φ(A⁻¹)))/2", fx.lin_comb(0.5, &fy, 0.5)?);
        let t4 = ch.term(
            "f(Φ(A)/(Mm))♯f(Φ(A⁻¹))",
            cx.geo(&fx, "f(Φ(A)/(Mm))", &fy, "f(Φ(A⁻¹))", MeanWeight::HALF)?,
        );
        ch.chain(&[t1, t2, t3, t4], Relation::Geq);
    } else {
        let harmonic = cx
            .inverse(&fx, "g(Φ(A)/(Mm))")?
            .lin_comb(0.5, &cx.inverse(&fy, "g(Φ(A⁻¹))")?, 0.5)?;
        let t1 = ch.term("g((M+m)/(2Mm))·I", cx.scalar_out(f.evaluate((big + m) / (2.0 * mm))));
        let t2 = ch.term("g((Φ(A)/(Mm)+Φ(A⁻¹))/2)", cx.apply(f, &x.lin_comb(0.5, &y, 0.5)?)?);
        let t3 = ch.term(
            "{(g(Φ(A)/(Mm))⁻¹+g(Φ(A⁻¹))⁻¹)/2}⁻¹",
            cx.inverse(&harmonic, "(g(Φ(A)/(Mm))⁻¹+g(Φ(A⁻¹))⁻¹)/2")?,
        );
        let t4 = ch.term(
            "g(Φ(A)/(Mm))♯g(Φ(A⁻¹))",
            cx.geo(&fx, "g(Φ(A)/(Mm))", &fy, "g(Φ(A⁻¹))", MeanWeight::HALF)?,
        );
        ch.chain(&[t1, t2, t3, t4], Relation::Leq);
    }
    Ok(cx.finish(ch))
}

pub(crate) fn cor25(inst: &Instance) -> Result<ChainEvaluation> {
    let cx = Ctx::new(ChainId::Cor25, inst)?;
    let r = cx.r_in(|r| (-1.0..=1.0).contains(&r), "[−1, 1]")?;
    let band = cx.band_for("A", cx.a(), inst.band_a)?;
    let (m, big) = (band.lower(), band.upper());
    let mm = m * big;
    let kappa = mm.sqrt();
    let k = band.kantorovich_constant();
    let pa = cx.phi(cx.a())?;
    let pinv = cx.phi(&cx.a().inverse()?)?;
    let pa_r = cx.pow(&pa, "Φ(A)", r)?;
    let pinv_r = cx.pow(&pinv, "Φ(A⁻¹)", r)?;
    let middle = pa.lin_comb(0.5 / kappa, &pinv, 0.5 * kappa)?;
    let mut ch = ChainBuilder::default();
    let t1 = ch.term("((M+m)/(2√(Mm)))^r·I", cx.scalar_out(k.powf(r)));
    let t2 = ch.term(
        "((Φ(A)/√(Mm)+√(Mm)·Φ(A⁻¹))/2)^r",
        cx.pow(&middle, "(Φ(A)/√(Mm)+√(Mm)·Φ(A⁻¹))/2", r)?,
    );
    let t4_value = cx.geo(&pa_r, "Φ(A)^r", &pinv_r, "Φ(A⁻¹)^r", MeanWeight::HALF)?;
    if r >= 0.0 {
        let h = mm.powf(r / 2.0);
        let t3 = ch.term(
            "(Φ(A)^r/(Mm)^{r/2}+(Mm)^{r/2}·Φ(A⁻¹)^r)/2",
            pa_r.lin_comb(0.5 / h, &pinv_r, 0.5 * h)?,
        );
        let t4 = ch.term("Φ(A)^r♯Φ(A⁻¹)^r", t4_value);
        ch.chain(&[t1, t2, t3, t4], Relation::Geq);
    } else {
        let d = 2.0 * mm.powf(r / 2.0);
        let inner = cx
            .pow(&pa, "Φ(A)", -r)?
            .lin_comb(mm.powf(r) / d, &cx.pow(&pinv, "Φ(A⁻¹)", -r)?, 1.0 / d)?;
        let t3 = ch.term(
            "{((Mm)^r·Φ(A)^{−r}+Φ(A⁻¹)^{−r})/(2(Mm)^{r/2})}⁻¹",
            cx.inverse(&inner, "((Mm)^r·Φ(A)^{−r}+Φ(A⁻¹)^{−r})/(2(Mm)^{r/2})")?,
        );
        let t4 = ch.term("Φ(A)^r♯Φ(A⁻¹)^r", t4_value);
        ch.chain(&[t1, t2, t3, t4], Relation::Leq);
    }
    if r == 1.0 {
        let s1 = ch.term("(M+m)/(2√(Mm))·I", cx.scalar_out(k));
        let s2 = ch.term("(Φ(A)/√(Mm)+√(Mm)·Φ(A⁻¹))/2", middle.clone());
        let s3 = ch.term("Φ(A)♯Φ(A⁻¹)", cx.geo(&pa, "Φ(A)", &pinv, "Φ(A⁻¹)", MeanWeight::HALF)?);
        ch.link(s1, Relation::Geq, s2, &["special_case"]);
        ch.link(s2, Relation::Geq, s3, &["special_case"]);
    }
    Ok(cx.finish(ch))
}
