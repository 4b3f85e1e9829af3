//! Thin batch front door: experiment configs in, reports out.
//!
//! `forcinglab run suite.json` runs a config file (one experiment or an
//! array); the other subcommands are shorthands that assemble a config for
//! one pipeline.  Exit codes: 0 all checks passed, 1 bad config, 2 a bound
//! or invariant was violated, 3 a search budget ran out.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use forcinglab::experiment::{
    emit_report, exit_code, run_suite, ExperimentConfig, Expectation, Report, ReportFormat,
};

#[derive(Parser)]
#[command(name = "forcinglab", version, about = "desk-scale forcing laboratory")]
struct Cli {
    /// Report format on stdout and in --out files.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Also write one report file per experiment into this directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run every experiment in a config file (a single object or an array).
    Run { file: PathBuf },
    /// Maximum uniform antichain size with the packing cross-check.
    Antichain {
        #[arg(long)]
        xsize: u32,
        #[arg(long)]
        k: usize,
    },
    /// Build a socks generic fragment and read off the sock well-order.
    Socks {
        #[arg(long)]
        pairs: u32,
        #[arg(long)]
        columns: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Build a generic fragment whose second coordinates spell a bit string.
    Cohen {
        #[arg(long)]
        bits: u32,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Build a generic fragment collapsing slots onto a finite target.
    Collapse {
        #[arg(long)]
        target: u32,
        #[arg(long)]
        slots: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Validate a pyramid and search for its capstone.
    Pyramid {
        #[arg(long)]
        family: String,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_parser = parse_expect)]
        expect: Option<Expectation>,
    },
    /// Evaluate a name below a condition; parameters come from a JSON file.
    Evaluate { file: PathBuf },
    /// Check a chain for a lower bound within a step budget.
    Sigma {
        /// JSON file holding the chain description.
        file: PathBuf,
        #[arg(long, default_value_t = 64)]
        max_steps: usize,
    },
}

fn parse_expect(s: &str) -> Result<Expectation, String> {
    serde_json::from_value(json!(s)).map_err(|_| {
        format!("unknown expectation {s:?}; use none-within-budget or violation")
    })
}

/// A config file is either one experiment or an array of them.
#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(Box<ExperimentConfig>),
    Many(Vec<ExperimentConfig>),
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn configs_for(command: Command) -> Result<Vec<ExperimentConfig>, String> {
    let single = |experiment: &str, parameters: serde_json::Value, seed: Option<u64>| {
        vec![ExperimentConfig {
            experiment: experiment.into(),
            universe: None,
            parameters: parameters.as_object().cloned().unwrap_or_default(),
            seed,
            expect: None,
        }]
    };
    Ok(match command {
        Command::Run { file } => match read_json::<OneOrMany>(&file)? {
            OneOrMany::One(cfg) => vec![*cfg],
            OneOrMany::Many(cfgs) => cfgs,
        },
        Command::Antichain { xsize, k } => {
            single("antichain-bound", json!({ "xsize": xsize, "k": k }), None)
        }
        Command::Socks { pairs, columns, seed } => {
            let mut p = json!({ "pairs": pairs });
            if let Some(c) = columns {
                p["columns"] = json!(c);
            }
            single("socks-generic", p, seed)
        }
        Command::Cohen { bits, seed } => single("cohen-bits", json!({ "bits": bits }), seed),
        Command::Collapse { target, slots, seed } => {
            let mut p = json!({ "target": target });
            if let Some(s) = slots {
                p["slots"] = json!(s);
            }
            single("collapse", p, seed)
        }
        Command::Pyramid { family, depth, expect } => {
            let mut cfgs =
                single("pyramid-capstone", json!({ "family": family, "depth": depth }), None);
            cfgs[0].expect = expect;
            cfgs
        }
        Command::Evaluate { file } => {
            let parameters: serde_json::Value = read_json(&file)?;
            single("evaluate-name", parameters, None)
        }
        Command::Sigma { file, max_steps } => {
            let chain: serde_json::Value = read_json(&file)?;
            single("sigma-closed", json!({ "chain": chain, "max_steps": max_steps }), None)
        }
    })
}

fn render(reports: &[Report], format: ReportFormat) -> String {
    match (reports.len(), format) {
        (1, _) => emit_report(&reports[0], format),
        (_, ReportFormat::Json) => {
            let mut out =
                serde_json::to_string_pretty(reports).expect("reports are plain data");
            out.push('\n');
            out
        }
        (_, ReportFormat::Text) => {
            reports.iter().map(|r| emit_report(r, format)).collect::<Vec<_>>().join("\n")
        }
    }
}

fn write_out(dir: &Path, reports: &[Report], format: ReportFormat) -> Result<(), String> {
    std::fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
    let ext = match format {
        ReportFormat::Json => "json",
        ReportFormat::Text => "txt",
    };
    for (i, report) in reports.iter().enumerate() {
        let path = dir.join(format!("{:02}-{}.{ext}", i, report.experiment));
        std::fs::write(&path, emit_report(report, format))
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        Format::Json => ReportFormat::Json,
        Format::Text => ReportFormat::Text,
    };
    let configs = match configs_for(cli.command) {
        Ok(configs) => configs,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let reports = match run_suite(&configs) {
        Ok(reports) => reports,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    print!("{}", render(&reports, format));
    if let Some(dir) = &cli.out {
        if let Err(msg) = write_out(dir, &reports, format) {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    }
    ExitCode::from(exit_code(&reports) as u8)
}
