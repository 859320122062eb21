//! `opineq`: run operator inequality chains on single instances or seeded
//! campaigns.
//!
//! Exit status is 0 when every checked link holds, 1 when some link fails
//! and 2 for configuration errors and rejected instances.

mod table;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use opineq::chains::{verify, ChainId, Instance};
use opineq::functions::{Catalog, ScalarFunction};
use opineq::harness::{
    run_campaign, run_negative_controls, tightness_search, Execution, GeneratorConfig, MapWeights, Mode,
    NEGATIVE_TRIALS,
};
use opineq::maps::MapKind;
use opineq::means::MeanWeight;

#[derive(Parser)]
#[command(name = "opineq", version, about = "Randomized checks of operator inequality chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one instance read from a JSON file.
    Verify(VerifyArgs),
    /// Run a seeded campaign and report failures.
    Fuzz(CampaignArgs),
    /// Run a campaign and keep the instances closest to equality.
    Tightness {
        #[command(flatten)]
        campaign: CampaignArgs,
        /// Number of instances to keep.
        #[arg(long, default_value_t = 5)]
        k: usize,
    },
    /// Feed misclassified functions to chains and expect violations.
    Negative {
        #[arg(long, default_value_t = NEGATIVE_TRIALS)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the control outcomes as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        serial: bool,
    },
    /// List chains, catalog functions and map kinds.
    Catalog {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    chain: ChainId,
    /// Instance JSON file.
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_parser = parse_function)]
    function: Option<ScalarFunction>,
    #[arg(long)]
    v: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<f64>,
    #[arg(long, default_value_t = opineq::linalg::DEFAULT_TOL)]
    tol: f64,
    /// Write the report as one JSON line.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Standard,
    Collapse,
    EqualPair,
}

#[derive(Args)]
struct CampaignArgs {
    /// Chain id, or `all`.
    #[arg(long)]
    chain: String,
    /// Generator config JSON; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Dimension `N` or range `LO-HI`.
    #[arg(long, value_parser = parse_dims)]
    n: Option<(usize, usize)>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<f64>,
    #[arg(long)]
    v: Option<f64>,
    /// Restrict maps to one kind.
    #[arg(long)]
    map: Option<MapKind>,
    #[arg(long, value_parser = parse_function)]
    function: Option<ScalarFunction>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Draw diagonal operators only.
    #[arg(long)]
    diagonal: bool,
    /// Write reports as JSONL.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the campaign summary as JSON.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Run trials on one thread.
    #[arg(long)]
    serial: bool,
}

fn parse_function(s: &str) -> Result<ScalarFunction, String> {
    ScalarFunction::parse(s).map_err(|e| e.to_string())
}

fn parse_dims(s: &str) -> Result<(usize, usize), String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad dimension `{t}`"));
    match s.split_once('-') {
        Some((lo, hi)) => Ok((num(lo)?, num(hi)?)),
        None => num(s).map(|n| (n, n)),
    }
}

/// Failure categories mapped onto exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Rejected,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Rejected => 2,
        }
    }
}

impl CampaignArgs {
    fn chains(&self) -> anyhow::Result<Vec<ChainId>> {
        if self.chain == "all" {
            return Ok(ChainId::ALL.to_vec());
        }
        Ok(vec![ChainId::parse(&self.chain)?])
    }

    fn config(&self) -> anyhow::Result<GeneratorConfig> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                GeneratorConfig::from_json(&text)?
            }
            None => GeneratorConfig::default(),
        };
        if let Some((lo, hi)) = self.n {
            cfg.dim_min = lo;
            cfg.dim_max = hi;
        }
        if let Some(t) = self.trials {
            cfg.trials = t;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if self.r.is_some() {
            cfg.r = self.r;
        }
        if self.v.is_some() {
            cfg.v = self.v;
        }
        if let Some(kind) = self.map {
            cfg.maps = MapWeights::only(kind);
        }
        if self.function.is_some() {
            cfg.function = self.function.clone();
        }
        if let Some(tol) = self.tol {
            cfg.tol = tol;
        }
        if let Some(mode) = self.mode {
            cfg.mode = match mode {
                ModeArg::Standard => Mode::Standard,
                ModeArg::Collapse => Mode::Collapse,
                ModeArg::EqualPair => Mode::EqualPair,
            };
        }
        cfg.diagonal |= self.diagonal;
        cfg.validate()?;
        Ok(cfg)
    }

    fn execution(&self) -> Execution {
        if self.serial {
            Execution::Serial
        } else {
            Execution::Parallel
        }
    }
}

fn create(path: &Path) -> anyhow::Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(BufWriter::new(file))
}

fn run_verify(args: &VerifyArgs) -> anyhow::Result<Status> {
    let text =
        std::fs::read_to_string(&args.instance).with_context(|| format!("reading {}", args.instance.display()))?;
    let mut inst: Instance = serde_json::from_str(&text).context("parsing instance")?;
    if args.function.is_some() {
        inst.function = args.function.clone();
    }
    if let Some(v) = args.v {
        inst.v = Some(MeanWeight::new(v)?);
    }
    if args.r.is_some() {
        inst.r = args.r;
    }
    let report = verify(args.chain, &inst, args.tol)?;
    if let Some(path) = &args.out {
        let mut w = create(path)?;
        serde_json::to_writer(&mut w, &report)?;
        w.write_all(b"\n")?;
        w.flush()?;
    }
    print!("{}", table::report(&report));
    Ok(if report.overall_holds {
        Status::Pass
    } else {
        Status::Fail
    })
}

fn run_fuzz(args: &CampaignArgs) -> anyhow::Result<Status> {
    let cfg = args.config()?;
    let chains = args.chains()?;
    let mut out = args.out.as_deref().map(create).transpose()?;
    let mut summaries = Vec::new();
    for chain in chains {
        let campaign = run_campaign(&cfg, chain, args.execution())?;
        if let Some(w) = out.as_mut() {
            campaign.write_jsonl(w)?;
        }
        summaries.push(campaign.summary);
    }
    if let Some(path) = &args.summary {
        let mut w = create(path)?;
        match summaries.as_slice() {
            [one] => serde_json::to_writer_pretty(&mut w, one)?,
            all => serde_json::to_writer_pretty(&mut w, all)?,
        }
        w.write_all(b"\n")?;
        w.flush()?;
    }
    print!("{}", table::summaries(&summaries));
    // a failing link outranks a rejected instance
    Ok(if summaries.iter().any(|s| s.failures > 0) {
        Status::Fail
    } else if summaries.iter().any(|s| s.rejected > 0) {
        Status::Rejected
    } else {
        Status::Pass
    })
}

fn run_tightness(args: &CampaignArgs, k: usize) -> anyhow::Result<Status> {
    let cfg = args.config()?;
    let chains = args.chains()?;
    let mut out = args.out.as_deref().map(create).transpose()?;
    for chain in chains {
        let best = tightness_search(&cfg, chain, k, args.execution())?;
        if let Some(w) = out.as_mut() {
            for t in &best {
                serde_json::to_writer(&mut *w, &t.report)?;
                w.write_all(b"\n")?;
            }
            w.flush()?;
        }
        print!("{}", table::tightness(chain, &best));
    }
    Ok(Status::Pass)
}

fn run_negative(trials: u64, seed: u64, out: Option<&Path>, serial: bool) -> anyhow::Result<Status> {
    if trials == 0 {
        bail!("trials must be at least 1");
    }
    let exec = if serial { Execution::Serial } else { Execution::Parallel };
    let controls = run_negative_controls(seed, trials, exec)?;
    if let Some(path) = out {
        let mut w = create(path)?;
        serde_json::to_writer_pretty(&mut w, &controls)?;
        w.write_all(b"\n")?;
        w.flush()?;
    }
    print!("{}", table::controls(&controls));
    Ok(if controls.iter().all(|c| c.detected()) {
        Status::Pass
    } else {
        Status::Fail
    })
}

fn run_catalog(json: bool) -> anyhow::Result<Status> {
    let functions = Catalog::global().functions();
    if json {
        let doc = serde_json::json!({
            "chains": ChainId::ALL.iter().map(|c| serde_json::json!({
                "id": c.as_str(),
                "description": c.description(),
            })).collect::<Vec<_>>(),
            "functions": functions.iter().map(|f| serde_json::json!({
                "name": f.name(),
                "flags": f.flags(),
                "domain": f.domain(),
            })).collect::<Vec<_>>(),
            "maps": MapKind::ALL.iter().map(|k| k.as_str()).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        print!("{}", table::catalog(functions));
    }
    Ok(Status::Pass)
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    match cli.command {
        Command::Verify(args) => run_verify(&args),
        Command::Fuzz(args) => run_fuzz(&args),
        Command::Tightness { campaign, k } => run_tightness(&campaign, k),
        Command::Negative {
            trials,
            seed,
            out,
            serial,
        } => run_negative(trials, seed, out.as_deref(), serial),
        Command::Catalog { json } => run_catalog(json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(Status::Rejected.code())
        }
    }
}
