//! Command-line front end: `generate`, `extract` and `evaluate` over CSV
//! corpus directories.

pub mod commands;
pub mod csv_io;
mod error;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{cmd_evaluate, cmd_extract, cmd_generate, run};
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "person-index",
    version,
    about = "Generate, extract and evaluate person indexes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthetic ground-truth corpus.
    Generate(GenerateArgs),
    /// Build a person index from texts with the heuristic baseline.
    Extract(ExtractArgs),
    /// Score an extractor output against ground truth.
    Evaluate(EvaluateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of persons in the index.
    #[arg(long, default_value_t = 1)]
    pub persons: usize,
    /// Number of texts.
    #[arg(long, default_value_t = 10)]
    pub texts: usize,
    /// Maximum persons per text; 0 renders one bare mention per text.
    #[arg(long, default_value_t = 0)]
    pub max_mentions: usize,
    /// Number of persons given a middle name.
    #[arg(long, default_value_t = 0)]
    pub middle_names: usize,
    /// Number of groups sharing a last name (and again a first name).
    #[arg(long, default_value_t = 0)]
    pub ambiguity: usize,
    /// Persons per ambiguity group, defaults to the degree (at least 2).
    #[arg(long)]
    pub ambiguity_group_size: Option<usize>,
    /// First-name catalog, one name per line.
    #[arg(long)]
    pub first_names: Option<PathBuf>,
    /// Last-name catalog, one name per line.
    #[arg(long)]
    pub last_names: Option<PathBuf>,
    /// Output directory, created if missing.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct ExtractArgs {
    /// texts.csv to read.
    #[arg(long)]
    pub texts: PathBuf,
    /// Output directory, created if missing.
    #[arg(long)]
    pub out: PathBuf,
    /// Known first names, one per line.
    #[arg(long)]
    pub gazetteer: Option<PathBuf>,
    /// Reset detector state before every text.
    #[arg(long)]
    pub reset_state: bool,
    /// Drop low-confidence name spans.
    #[arg(long)]
    pub confidence_threshold: bool,
}

#[derive(Debug, Clone, Args)]
pub struct EvaluateArgs {
    /// Ground-truth directory.
    #[arg(long)]
    pub ground_truth: PathBuf,
    /// Extractor output directory.
    #[arg(long)]
    pub output: PathBuf,
    /// Also write the metrics as a one-row CSV file.
    #[arg(long)]
    pub report: Option<PathBuf>,
}
