//! Acceptance runner. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use opineq::chains::{evaluate, verify, ChainId, Instance, Relation, REFINED};
use opineq::harness::{
    generate_instance, hermitian_in_band, run_campaign, run_negative_controls, Campaign, Execution, GeneratorConfig,
    Mode, NEGATIVE_TRIALS,
};
use opineq::linalg::DEFAULT_TOL;
use opineq::maps::PositiveMapSpec;
use opineq::means::{geo_mean, MeanWeight, SpectralBand};
use opineq::random::{gaussian_hermitian, log_uniform, trial_rng};
use opineq::HermitianMatrix;
use rand::Rng;

type Outcome = Result<String, String>;

fn kantorovich_constant(m: f64, big: f64) -> f64 {
    (big + m) / (2.0 * (big * m).sqrt())
}

fn witness() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for (m, big) in [(1.0, 4.0), (1.0, 100.0), (0.5, 2.0)] {
        let inst = Instance::new(HermitianMatrix::diag(&[m, big])).with_map(PositiveMapSpec::NormalizedTrace {});
        let ev = evaluate(ChainId::Kantorovich, &inst).map_err(|e| e.to_string())?;
        let lhs = ev.term("Φ(A⁻¹)♯Φ(A)").ok_or("missing left term")?.entry(0, 0).re;
        // Φ(A⁻¹) = (1/m + 1/M)/2 and Φ(A) = (m + M)/2 on scalars
        let expect = ((1.0 / m + 1.0 / big) / 2.0 * (m + big) / 2.0).sqrt();
        let k = kantorovich_constant(m, big);
        worst = worst.max((lhs - expect).abs() / expect).max((lhs - k).abs() / k);
        if (m, big) == (1.0, 4.0) && (lhs - 1.25).abs() > 1e-9 * 1.25 {
            return Err(format!("(1, 4) gave {lhs}, expected 1.25"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if worst > 1e-9 || secs >= 1.0 {
        return Err(format!("relative error {worst:.2e}, {secs:.3} s"));
    }
    Ok(format!("max relative error {worst:.2e}, {secs:.3} s"))
}

fn fuzz(campaigns: &BTreeMap<ChainId, Campaign>) -> Outcome {
    let mut bad = Vec::new();
    let mut slowest = (0.0f64, ChainId::Amgm);
    for (chain, c) in campaigns {
        let s = &c.summary;
        if !s.passed() || s.trials != 10_000 || s.wall_time_s >= 60.0 {
            bad.push(format!(
                "{chain}: {} failures, {} rejected, {:.1} s",
                s.failures, s.rejected, s.wall_time_s
            ));
        }
        if s.wall_time_s > slowest.0 {
            slowest = (s.wall_time_s, *chain);
        }
    }
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    Ok(format!(
        "16 chains x 10000 trials, 0 failures, slowest {} at {:.2} s serial",
        slowest.1, slowest.0
    ))
}

/// Expected `(lhs, relation, rhs)` triples of a 1×1 instance, evaluated in
/// plain `f64` arithmetic. Every unital map is the identity on scalars.
fn scalar_links(chain: ChainId, inst: &Instance) -> Vec<(f64, Relation, f64)> {
    use Relation::{Geq, Leq};
    let a = inst.a.entry(0, 0).re;
    let b = inst.b.as_ref().map_or(f64::NAN, |b| b.entry(0, 0).re);
    let v = inst.v.map_or(0.5, MeanWeight::value);
    let r = inst.r.unwrap_or(f64::NAN);
    let f = |t: f64| inst.function.as_ref().expect("function").evaluate(t);
    let geo = |x: f64, y: f64| x.powf(1.0 - v) * y.powf(v);
    let arith = |x: f64, y: f64| (1.0 - v) * x + v * y;
    let band_a = inst.band_a.map_or((a, a), |band| (band.lower(), band.upper()));
    let band_b = inst.band_b.map_or((b, b), |band| (band.lower(), band.upper()));
    let (m2, big2) = ((band_b.0 / band_a.1).sqrt(), (band_b.1 / band_a.0).sqrt());
    let chain4 = |t: [f64; 4], rel| vec![(t[0], rel, t[1]), (t[1], rel, t[2]), (t[2], rel, t[3])];
    match chain {
        ChainId::Amgm => vec![(geo(a, b), Leq, arith(a, b))],
        ChainId::Cdj => {
            let convex = inst.function.as_ref().unwrap().flags().convex;
            vec![(f(a), if convex { Leq } else { Geq }, f(a))]
        }
        ChainId::Ando => vec![(geo(a, b), Leq, geo(a, b))],
        ChainId::Kantorovich => vec![(1.0, Leq, kantorovich_constant(band_a.0, band_a.1))],
        ChainId::Lee => {
            let (m, big) = inst
                .band_rel
                .map_or(((b / a).sqrt(), (b / a).sqrt()), |band| (band.lower(), band.upper()));
            let g = (a * b).sqrt();
            vec![(g, Leq, kantorovich_constant(m, big) * g)]
        }
        ChainId::Thm21 => {
            let mm = m2 * big2;
            chain4(
                [
                    f((big2 + m2) / 2.0 * (a * b).sqrt()),
                    f((mm * a + b) / 2.0),
                    (f(mm * a) + f(b)) / 2.0,
                    (f(mm * a) * f(b)).sqrt(),
                ],
                Geq,
            )
        }
        ChainId::Thm22 => {
            let mm = m2 * big2;
            chain4(
                [
                    f((big2 + m2) / 2.0 * (a * b).sqrt()),
                    f((mm * a + b) / 2.0),
                    2.0 / (1.0 / f(mm * a) + 1.0 / f(b)),
                    (f(mm * a) * f(b)).sqrt(),
                ],
                Leq,
            )
        }
        ChainId::Cor23 => {
            let mm = m2 * big2;
            let kappa = mm.sqrt();
            let k = kantorovich_constant(m2, big2);
            let t1 = k.powf(r) * (a * b).sqrt().powf(r);
            let t2 = ((mm * a + b) / (2.0 * kappa)).powf(r);
            let t4 = (a.powf(r) * b.powf(r)).sqrt();
            let mut links = if r >= 0.0 {
                let t3 = (mm.powf(r) * a.powf(r) + b.powf(r)) / (2.0 * mm.powf(r / 2.0));
                chain4([t1, t2, t3, t4], Geq)
            } else {
                let t3 = mm.powf(-r / 2.0) / ((mm.powf(-r) * a.powf(-r) + b.powf(-r)) / 2.0);
                chain4([t1, t2, t3, t4], Leq)
            };
            if r == 1.0 {
                let s2 = (mm * a + b) / (2.0 * kappa);
                links.push((k * (a * b).sqrt(), Geq, s2));
                links.push((s2, Geq, (a * b).sqrt()));
            }
            links
        }
        ChainId::Cor24 => {
            let (m, big) = band_a;
            let mm = m * big;
            let (x, y) = (a / mm, 1.0 / a);
            let t1 = f((big + m) / (2.0 * mm));
            let t2 = f((x + y) / 2.0);
            let t4 = (f(x) * f(y)).sqrt();
            if inst.function.as_ref().unwrap().flags().monotone {
                chain4([t1, t2, (f(x) + f(y)) / 2.0, t4], Geq)
            } else {
                chain4([t1, t2, 2.0 / (1.0 / f(x) + 1.0 / f(y)), t4], Leq)
            }
        }
        ChainId::Cor25 => {
            let (m, big) = band_a;
            let mm = m * big;
            let kappa = mm.sqrt();
            let k = kantorovich_constant(m, big);
            let middle = (a / kappa + kappa / a) / 2.0;
            let t1 = k.powf(r);
            let t2 = middle.powf(r);
            let t4 = (a.powf(r) * a.powf(-r)).sqrt();
            let mut links = if r >= 0.0 {
                let h = mm.powf(r / 2.0);
                chain4([t1, t2, (a.powf(r) / h + h * a.powf(-r)) / 2.0, t4], Geq)
            } else {
                let d = 2.0 * mm.powf(r / 2.0);
                chain4([t1, t2, 1.0 / ((mm.powf(r) * a.powf(-r) + a.powf(r)) / d), t4], Leq)
            };
            if r == 1.0 {
                links.push((k, Geq, middle));
                links.push((middle, Geq, 1.0));
            }
            links
        }
        ChainId::JensenConcave => vec![(arith(f(a), f(b)), Leq, f(arith(a, b)))],
        ChainId::Bellman => vec![(
            arith((1.0 - a).powf(r), (1.0 - b).powf(r)),
            Leq,
            (1.0 - arith(a, b)).powf(r),
        )],
        ChainId::ReverseBellman => {
            vec![(
                (1.0 - arith(a, b)).powf(r),
                Leq,
                arith((1.0 - a).powf(r), (1.0 - b).powf(r)),
            )]
        }
        ChainId::Thm32 => {
            let (ia, ib) = ((1.0 - a).powf(r), (1.0 - b).powf(r));
            chain4(
                [(1.0 - arith(a, b)).powf(r), geo(ia, ib), geo(ia, ib), arith(ia, ib)],
                Leq,
            )
        }
        ChainId::Lemma33 => {
            let t = [f(arith(a, b)), geo(f(a), f(b)), geo(f(a), f(b)), arith(f(a), f(b))];
            let mut links = chain4(t, Leq);
            links.push((t[1], Leq, t[3]));
            links.push((t[0], Leq, t[2]));
            links
        }
        ChainId::LogconvexChar => vec![(f(arith(a, b)), Leq, geo(f(a), f(b)))],
    }
}

fn scalar_oracle() -> Outcome {
    let cfg = GeneratorConfig {
        dim_min: 1,
        dim_max: 1,
        condition_cap: 10.0,
        seed: 3,
        trials: 1000,
        ..Default::default()
    };
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    for chain in ChainId::ALL {
        for trial in 0..cfg.trials {
            let inst = generate_instance(&cfg, chain, trial).map_err(|e| e.to_string())?;
            let report = verify(chain, &inst, cfg.tol).map_err(|e| format!("{chain} trial {trial}: {e}"))?;
            let expected = scalar_links(chain, &inst);
            if expected.len() != report.links.len() {
                return Err(format!(
                    "{chain} trial {trial}: {} links, oracle has {}",
                    report.links.len(),
                    expected.len()
                ));
            }
            for (link, (lhs, rel, rhs)) in report.links.iter().zip(expected) {
                let gap = match rel {
                    Relation::Leq => rhs - lhs,
                    Relation::Geq => lhs - rhs,
                };
                let err = (link.min_gap - gap).abs();
                if link.rel != rel || err.is_nan() || err > 1e-12 {
                    return Err(format!(
                        "{chain} trial {trial} {} {} {}: gap {} vs oracle {gap}",
                        link.lhs,
                        link.rel.symbol(),
                        link.rhs,
                        link.min_gap
                    ));
                }
                worst = worst.max(err);
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{checked} links over 16 x 1000 instances, max abs deviation {worst:.2e}"
    ))
}

fn collapse() -> Outcome {
    let cfg = GeneratorConfig {
        mode: Mode::Collapse,
        seed: 4,
        trials: 100,
        ..Default::default()
    };
    let mut worst = 0.0f64;
    for chain in ChainId::ALL {
        let c = run_campaign(&cfg, chain, Execution::Parallel).map_err(|e| e.to_string())?;
        if c.summary.rejected > 0 {
            return Err(format!("{chain}: {:?}", c.summary.first_rejection));
        }
        for link in c.reports().flat_map(|r| &r.links) {
            worst = worst.max(link.min_gap.abs() / link.scale);
        }
    }
    if worst > 1e-9 {
        return Err(format!("max |gap|/scale {worst:.2e}"));
    }
    Ok(format!(
        "16 chains x 100 collapsed instances, max |gap|/scale {worst:.2e}"
    ))
}

fn negative() -> Outcome {
    let controls = run_negative_controls(0, NEGATIVE_TRIALS, Execution::Parallel).map_err(|e| e.to_string())?;
    let lines: Vec<String> = controls
        .iter()
        .map(|c| match c.first_violation {
            Some(t) => format!("{} at trial {t}", c.name),
            None => format!("{} undetected", c.name),
        })
        .collect();
    if controls.iter().all(|c| c.detected()) {
        Ok(lines.join(", "))
    } else {
        Err(lines.join(", "))
    }
}

fn eigensolver() -> Outcome {
    let (mut residual, mut defect) = (0.0f64, 0.0f64);
    for k in 0..200u64 {
        let mut rng = trial_rng(6, k);
        let n = rng.random_range(2..=64);
        let a = gaussian_hermitian(n, &mut rng);
        let e = a.eig().map_err(|e| e.to_string())?;
        residual = residual.max(e.reconstruct().sub(&a).unwrap().frobenius_norm() / a.frobenius_norm());
        defect = defect.max(e.eigenvectors().isometry_defect());
    }
    let line = format!("200 matrices, residual {residual:.2e}, unitarity defect {defect:.2e}");
    if residual <= 1e-10 && defect <= 1e-10 {
        Ok(line)
    } else {
        Err(line)
    }
}

fn positive_pair(k: u64) -> (HermitianMatrix, HermitianMatrix, MeanWeight, f64, f64) {
    let mut rng = trial_rng(7, k);
    let n = rng.random_range(1..=8);
    let band = |rng: &mut _| {
        let m = log_uniform(rng, 0.1, 10.0);
        SpectralBand::new(m, m * log_uniform(rng, 1.0, 100.0)).unwrap()
    };
    let (ba, bb) = (band(&mut rng), band(&mut rng));
    let diagonal = rng.random::<f64>() < 0.2;
    let a = hermitian_in_band(n, ba, diagonal, &mut rng);
    let b = hermitian_in_band(n, bb, diagonal, &mut rng);
    let v = MeanWeight::new(rng.random::<f64>()).unwrap();
    (
        a,
        b,
        v,
        log_uniform(&mut rng, 0.1, 10.0),
        log_uniform(&mut rng, 0.1, 10.0),
    )
}

fn mean_identities() -> Outcome {
    let half = MeanWeight::HALF;
    let mut worst = [0.0f64; 4];
    for k in 0..1000 {
        let (a, b, v, alpha, beta) = positive_pair(k);
        let run = || -> opineq::Result<[f64; 4]> {
            let g = geo_mean(&a, &b, v)?;
            let sym = geo_mean(&a, &b, half)?.relative_distance(&geo_mean(&b, &a, half)?)?;
            let inv = g
                .inverse()?
                .relative_distance(&geo_mean(&a.inverse()?, &b.inverse()?, v)?)?;
            let id = geo_mean(&HermitianMatrix::identity(a.dim()), &b, v)?.relative_distance(&b.pow(v.value())?)?;
            let hom = geo_mean(&a.scale(alpha), &b.scale(beta), v)?
                .relative_distance(&g.scale(alpha.powf(1.0 - v.value()) * beta.powf(v.value())))?;
            Ok([sym, inv, id, hom])
        };
        let d = run().map_err(|e| format!("pair {k}: {e}"))?;
        for (w, x) in worst.iter_mut().zip(d) {
            *w = w.max(x);
        }
    }
    let line = format!(
        "1000 pairs, symmetry {:.1e}, inverse {:.1e}, identity {:.1e}, homogeneity {:.1e}",
        worst[0], worst[1], worst[2], worst[3]
    );
    if worst.iter().all(|w| *w <= 1e-9) {
        Ok(line)
    } else {
        Err(line)
    }
}

fn refinement(lemma33: &Campaign) -> Outcome {
    let mut strict = 0usize;
    let mut total = 0usize;
    for report in lemma33.reports() {
        total += 1;
        let refined: Vec<_> = report
            .links
            .iter()
            .filter(|l| l.tags.iter().any(|t| t == REFINED))
            .collect();
        let [_, lower, upper] = refined[..] else {
            return Err(format!(
                "trial {:?}: expected three refined links",
                report.instance_digest.trial
            ));
        };
        if !lower.holds || !upper.holds {
            return Err(format!(
                "trial {:?}: middle term out of order",
                report.instance_digest.trial
            ));
        }
        if lower.min_gap > DEFAULT_TOL * lower.scale && upper.min_gap > DEFAULT_TOL * upper.scale {
            strict += 1;
        }
    }
    if total != 10_000 || strict == 0 {
        return Err(format!("{total} reports, {strict} strictly separated"));
    }
    Ok(format!(
        "{total} instances ordered, {strict} with both gaps above tolerance"
    ))
}

fn reproducible() -> Outcome {
    let cfg = GeneratorConfig {
        seed: 9,
        trials: 300,
        ..Default::default()
    };
    for chain in ChainId::ALL {
        let first = run_campaign(&cfg, chain, Execution::Parallel).map_err(|e| e.to_string())?;
        let again = run_campaign(&cfg, chain, Execution::Parallel).map_err(|e| e.to_string())?;
        let serial = run_campaign(&cfg, chain, Execution::Serial).map_err(|e| e.to_string())?;
        let bytes = first.to_jsonl().map_err(|e| e.to_string())?;
        if bytes != again.to_jsonl().unwrap() || bytes != serial.to_jsonl().unwrap() {
            return Err(format!("{chain}: JSONL differs between runs"));
        }
    }
    Ok("16 chains x 300 trials, three runs each, identical JSONL".into())
}

fn main() -> ExitCode {
    let cfg = GeneratorConfig::default();
    let mut campaigns = BTreeMap::new();
    for chain in ChainId::ALL {
        match run_campaign(&cfg, chain, Execution::Serial) {
            Ok(c) => {
                campaigns.insert(chain, c);
            }
            Err(e) => {
                println!("FAIL setup: {chain}: {e}");
                return ExitCode::FAILURE;
            }
        }
    }
    let results: [(&str, Outcome); 9] = [
        ("kantorovich witness", witness()),
        ("fuzz suite", fuzz(&campaigns)),
        ("scalar oracle", scalar_oracle()),
        ("equality collapse", collapse()),
        ("negative controls", negative()),
        ("eigensolver accuracy", eigensolver()),
        ("mean identities", mean_identities()),
        ("four-term refinement", refinement(&campaigns[&ChainId::Lemma33])),
        ("reproducibility", reproducible()),
    ];
    let mut ok = true;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                ok = false;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
