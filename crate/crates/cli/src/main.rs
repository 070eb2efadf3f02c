//! `ordlab`: generation, law checks, embedding search, extraction, theorem
//! sweeps and export over the `ordlab` library.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use report::RunReport;

#[derive(Parser, Debug)]
#[command(name = "ordlab", version, about = "Join-semilattices, ideal lattices and forbidden patterns")]
pub struct Cli {
    /// Node budget for each embedding search.
    #[arg(long, global = true, env = "ORDLAB_NODE_BUDGET", default_value_t = ordlab::embed::DEFAULT_NODE_BUDGET)]
    pub budget: u64,
    /// Write the report (or exported artifact) here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a theorem sweep.
    Verify {
        id: String,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        k: Option<usize>,
        /// Random samples for the seeded sweeps.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Build a catalog structure (or an oracle truncation) and check its laws.
    Gen {
        spec: String,
        /// Truncation depth for oracle families.
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, value_enum)]
        export: Option<Format>,
    },
    /// Search for an embedding of A into B.
    Embed {
        #[arg(long, value_enum, default_value_t = EmbedMode::Join)]
        mode: EmbedMode,
        a: String,
        b: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Run a constructive extraction on an oracle family.
    Extract {
        /// 3.1, 3.2, 1.2 (descent) or 4.13 (Ramsey).
        #[arg(long)]
        lemma: String,
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 8)]
        k: usize,
        #[arg(long, default_value_t = 20)]
        depth: usize,
    },
    /// Pattern growth over the truncations of an oracle family.
    Diagnose {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Emit a structure, its down-set lattice or its ideal lattice.
    Export {
        spec: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, value_enum, default_value_t = What::Poset)]
        what: What,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum What {
    Poset,
    DownSets,
    Ideals,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbedMode {
    Order,
    Join,
    Sublattice,
}

impl From<EmbedMode> for ordlab::embed::Mode {
    fn from(m: EmbedMode) -> Self {
        match m {
            EmbedMode::Order => ordlab::embed::Mode::Order,
            EmbedMode::Join => ordlab::embed::Mode::Join,
            EmbedMode::Sublattice => ordlab::embed::Mode::Sublattice,
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), std::io::Error> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => match writeln!(std::io::stdout().lock(), "{}", text.trim_end()) {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            r => r,
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = match commands::run(&cli) {
        Ok(commands::Output::Report(o)) => {
            let report = RunReport {
                command: std::env::args().skip(1).collect(),
                verdict: o.verdict,
                witnesses: o.witnesses,
                counters: o.counters,
                wall_ms: started.elapsed().as_millis(),
            };
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            emit(&cli.out, &text).map(|_| report.exit())
        }
        Ok(commands::Output::Artifact(text)) => emit(&cli.out, &text).map(|_| ExitCode::SUCCESS),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}
