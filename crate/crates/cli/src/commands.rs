use std::collections::HashSet;
use std::fs;
use std::io::Write;
use std::path::Path;

use person_index::extractor::Gazetteer;
use person_index::{
    evaluate, extract, generate, EvaluationReport, ExtractorConfig, GeneratorConfig, NameCatalogs,
};

use crate::csv_io;
use crate::{Cli, CliError, Command, EvaluateArgs, ExtractArgs, GenerateArgs};

type Result<T> = std::result::Result<T, CliError>;

/// Runs one parsed command line, writing human-readable output to `stdout`.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Generate(args) => cmd_generate(&args),
        Command::Extract(args) => cmd_extract(&args),
        Command::Evaluate(args) => {
            let report = cmd_evaluate(&args)?;
            stdout
                .write_all(report.to_key_value().as_bytes())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))
        }
    }
}

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn load_catalogs(args: &GenerateArgs) -> Result<NameCatalogs> {
    if args.first_names.is_none() && args.last_names.is_none() {
        return Ok(NameCatalogs::builtin());
    }
    let builtin = NameCatalogs::builtin();
    let load = |path: &Option<std::path::PathBuf>, fallback: &[String]| match path {
        Some(p) => read_to_string(p),
        None => Ok(fallback.join("\n")),
    };
    let first = load(&args.first_names, builtin.first_names())?;
    let last = load(&args.last_names, builtin.last_names())?;
    NameCatalogs::parse(&first, &last).map_err(|e| {
        let path = args
            .first_names
            .as_deref()
            .or(args.last_names.as_deref())
            .unwrap_or(Path::new("<catalog>"));
        CliError::data(path, e.to_string())
    })
}

/// Generates a corpus and writes the four ground-truth files.
pub fn cmd_generate(args: &GenerateArgs) -> Result<()> {
    let config = GeneratorConfig {
        seed: args.seed,
        num_persons: args.persons,
        num_texts: args.texts,
        max_mentions_per_text: args.max_mentions,
        num_middle_names: args.middle_names,
        ambiguity_degree: args.ambiguity,
        ambiguity_group_size: args.ambiguity_group_size,
    };
    config.validate()?;
    let catalogs = load_catalogs(args)?;
    let gt = generate(&config, &catalogs)?;
    csv_io::write_ground_truth(&args.out, &gt)
}

/// Runs the baseline over a texts file and writes the three output files.
pub fn cmd_extract(args: &ExtractArgs) -> Result<()> {
    let texts = csv_io::read_texts_file(&args.texts)?;
    let mut seen = HashSet::new();
    if let Some(dup) = texts.iter().find(|t| !seen.insert(t.id)) {
        return Err(CliError::data(
            &args.texts,
            format!("duplicate text id {}", dup.id),
        ));
    }
    let gazetteer = match &args.gazetteer {
        Some(path) => Some(Gazetteer::parse(&read_to_string(path)?)),
        None => None,
    };
    let config = ExtractorConfig {
        reset_state_per_text: args.reset_state,
        confidence_threshold_enabled: args.confidence_threshold,
        gazetteer,
    };
    let out = extract(&texts, &config);
    csv_io::write_output(&args.out, &out)
}

/// Validates both sides, computes the metrics and writes the optional CSV
/// report.
pub fn cmd_evaluate(args: &EvaluateArgs) -> Result<EvaluationReport> {
    let gt = csv_io::read_ground_truth(&args.ground_truth)?;
    gt.validate()
        .map_err(|e| CliError::data(&args.ground_truth, e.to_string()))?;
    let out = csv_io::read_output(&args.output)?;
    out.validate_against(&gt.texts)
        .map_err(|e| CliError::data(&args.output, e.to_string()))?;
    let report = evaluate(&gt, &out)?;
    if let Some(path) = &args.report {
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
        }
        let body = format!("{}\n{}\n", EvaluationReport::csv_header(), report.csv_row());
        fs::write(path, body).map_err(|e| CliError::io(path, e))?;
    }
    Ok(report)
}
