use std::fs::File;
use std::io::{BufRead, BufReader};

use opineq::chains::{ChainId, ChainReport};
use opineq::harness::{run_campaign, Execution, GeneratorConfig};
use opineq::Error;

#[test]
fn reports_round_trip_through_a_file() {
    let cfg = GeneratorConfig {
        seed: 12,
        trials: 25,
        ..Default::default()
    };
    let campaign = run_campaign(&cfg, ChainId::Cor25, Execution::Parallel).unwrap();
    let file = tempfile::NamedTempFile::new().unwrap();
    campaign.write_jsonl(file.as_file()).unwrap();
    let back: Vec<ChainReport> = BufReader::new(File::open(file.path()).unwrap())
        .lines()
        .map(|l| serde_json::from_str(&l.unwrap()).unwrap())
        .collect();
    assert_eq!(back.len(), 25);
    assert!(back.iter().zip(campaign.reports()).all(|(a, b)| a == b));
    assert!(back
        .windows(2)
        .all(|w| w[0].instance_digest.trial < w[1].instance_digest.trial));
}

#[test]
fn unwritable_sink_is_an_io_error() {
    let cfg = GeneratorConfig {
        trials: 2,
        ..Default::default()
    };
    let campaign = run_campaign(&cfg, ChainId::Amgm, Execution::Serial).unwrap();
    let file = tempfile::NamedTempFile::new().unwrap();
    let read_only = File::open(file.path()).unwrap();
    assert!(matches!(campaign.write_jsonl(read_only), Err(Error::Io(_))));
}
