//! Plain-text tables for standard output.

use std::fmt::Write;

use opineq::chains::{ChainId, ChainReport};
use opineq::functions::ScalarFunction;
use opineq::harness::{CampaignSummary, ControlOutcome, TightInstance};

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), |v| format!("{v:.3e}"))
}

pub fn report(r: &ChainReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{}  n={} map={}",
        r.chain_id, r.instance_digest.n, r.instance_digest.map
    );
    for l in &r.links {
        let mark = if l.holds { "ok  " } else { "FAIL" };
        let _ = writeln!(
            s,
            "  {mark} {} {} {}   gap {:.3e} scale {:.3e}",
            l.lhs,
            l.rel.symbol(),
            l.rhs,
            l.min_gap,
            l.scale
        );
    }
    let _ = writeln!(s, "overall: {}", if r.overall_holds { "holds" } else { "FAILS" });
    s
}

pub fn summaries(rows: &[CampaignSummary]) -> String {
    let mut s = format!(
        "{:<16} {:>8} {:>8} {:>8} {:>12} {:>12} {:>9}\n",
        "chain", "trials", "failures", "rejected", "max_fail", "min_slack", "time_s"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:<16} {:>8} {:>8} {:>8} {:>12} {:>12} {:>9.3}",
            r.chain_id,
            r.trials,
            r.failures,
            r.rejected,
            opt(r.max_failure_gap),
            opt(r.min_positive_gap),
            r.wall_time_s
        );
        if let Some(why) = &r.first_rejection {
            let _ = writeln!(s, "  first rejection: {why}");
        }
    }
    s
}

pub fn tightness(chain: ChainId, best: &[TightInstance]) -> String {
    let mut s = format!(
        "{chain}\n{:>6} {:>8} {:>12} {:>4}  {:<18} function\n",
        "rank", "trial", "slack", "n", "map"
    );
    for (i, t) in best.iter().enumerate() {
        let d = &t.report.instance_digest;
        let _ = writeln!(
            s,
            "{:>6} {:>8} {:>12.3e} {:>4}  {:<18} {}",
            i + 1,
            t.trial,
            t.slack,
            d.n,
            d.map.as_str(),
            d.function.as_deref().unwrap_or("-")
        );
    }
    s
}

pub fn controls(rows: &[ControlOutcome]) -> String {
    let mut s = format!(
        "{:<20} {:>7} {:>10} {:>10}  description\n",
        "control", "trials", "first", "violations"
    );
    for c in rows {
        let first = c.first_violation.map_or_else(|| "-".to_string(), |t| t.to_string());
        let _ = writeln!(
            s,
            "{:<20} {:>7} {:>10} {:>10}  {}",
            c.name, c.trials, first, c.violations, c.description
        );
    }
    s
}

pub fn catalog(functions: &[ScalarFunction]) -> String {
    let mut s = String::from("chains\n");
    for c in ChainId::ALL {
        let _ = writeln!(s, "  {:<16} {}", c.as_str(), c.description());
    }
    s.push_str("functions\n");
    for f in functions {
        let flags = f.flags();
        let names: Vec<&str> = [
            (flags.monotone, "monotone"),
            (flags.monotone_decreasing, "decreasing"),
            (flags.convex, "convex"),
            (flags.concave, "concave"),
        ]
        .into_iter()
        .filter_map(|(on, name)| on.then_some(name))
        .collect();
        let d = f.domain();
        let _ = writeln!(s, "  {:<20} ({}, {})  {}", f.name(), d.lower, d.upper, names.join(" "));
    }
    s.push_str("maps\n");
    for k in opineq::maps::MapKind::ALL {
        let _ = writeln!(s, "  {k}");
    }
    s
}
