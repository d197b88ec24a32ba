//! Command-line driver wiring the pipeline end to end.
//!
//! Four subcommands cover the workflow: `build` exports the word graphs
//! and gap statistics, `analyze` fits the degree distributions and the
//! Zipf table, `keywords` writes the Λ/Ψ/Ω report, and `random-baseline`
//! checks the visibility builder against the exact law for random series.
//! Exit codes: 0 success, 1 usage or configuration error, 2 data error.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use chvg::analysis::{
    degree_distribution, fit_power_law, keyword_report, zipf_rank_frequency, zipf_slope,
};
use chvg::baseline::{random_baseline, MIN_LENGTH_FOR_CHECKS};
use chvg::corpus::{load_corpus, Document, TokenizerConfig};
use chvg::error::Error;
use chvg::export::{
    write_ccdf_tsv, write_dot, write_gap_stats_csv, write_graphml, write_json_pretty,
    write_keywords_csv, write_position_edges, write_word_edges, write_zipf_csv, BaselineJson,
    FitRecord, FitSummaryJson, KeywordsJson, RunEcho, ZipfSummary,
};
use chvg::graph::{compactify, simple_adjacency_network, WeightKind, WordGraph};
use chvg::hvg::{build_hvg, OccurrenceGraph};
use chvg::weighting::{occurrence_index, value_series, WeightScheme};

/// Rank window for the Zipf slope, chosen to skip the saturated head and
/// the noisy hapax tail.
const ZIPF_RANK_LO: usize = 10;
const ZIPF_RANK_HI: usize = 1000;

#[derive(Parser)]
#[command(
    name = "chvg",
    version,
    about = "Keyword extraction via compactified horizontal visibility graphs"
)]
struct Cli {
    /// Seed for the random-baseline simulation; the text pipeline is
    /// deterministic and ignores it
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tokenize the input, build both word graphs, export them with gap stats
    Build(BuildArgs),
    /// Degree distributions, power-law fits, and the Zipf rank-frequency table
    Analyze(AnalyzeArgs),
    /// Rank both graphs and report the keyword set omega = lambda \ psi
    Keywords(KeywordsArgs),
    /// Validate the visibility builder against the exact random-series law
    RandomBaseline(BaselineArgs),
}

#[derive(Args)]
struct CorpusArgs {
    /// Input text files (UTF-8), concatenated in argument order
    #[arg(value_name = "FILE", required = true)]
    inputs: Vec<PathBuf>,

    /// TOML file with tokenizer settings; individual flags below override it
    #[arg(long, value_name = "FILE")]
    tokenizer_config: Option<PathBuf>,

    /// Fold tokens to uppercase [default: true]
    #[arg(long, value_name = "BOOL")]
    case_fold: Option<bool>,

    /// Keep apostrophes inside tokens ("don't") [default: true]
    #[arg(long, value_name = "BOOL")]
    keep_inner_apostrophe: Option<bool>,

    /// Keep hyphens inside tokens ("sperm-whale") [default: false]
    #[arg(long, value_name = "BOOL")]
    keep_inner_hyphen: Option<bool>,

    /// Drop tokens shorter than this many characters [default: 1]
    #[arg(long, value_name = "N")]
    min_token_length: Option<usize>,

    /// Treat digits as separators [default: true]
    #[arg(long, value_name = "BOOL")]
    drop_numeric_tokens: Option<bool>,

    /// Per-position value scheme driving the visibility graph
    #[arg(long, default_value = "sigma", value_parser = parse_scheme)]
    scheme: WeightScheme,
}

#[derive(Args)]
struct OutArgs {
    /// Directory for output files, created if missing
    #[arg(long, value_name = "DIR", env = "CHVG_OUT_DIR", default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[command(flatten)]
    out: OutArgs,

    /// Graph export formats, comma-separated
    #[arg(long, value_delimiter = ',', default_value = "edgelist")]
    formats: Vec<ExportFormat>,

    /// Also write the stage-one visibility edge list over token positions
    #[arg(long)]
    export_hvg: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[command(flatten)]
    out: OutArgs,

    /// Smallest degree included in the power-law fits
    #[arg(long, default_value_t = 2)]
    k_min: u64,
}

#[derive(Args)]
struct KeywordsArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[command(flatten)]
    out: OutArgs,

    /// Length of both ranked lists (must be at least 1)
    #[arg(long, default_value_t = 100)]
    n: usize,

    /// Measure ranking the visibility-graph side lambda
    #[arg(long, default_value = "strength", value_parser = parse_weight_kind)]
    lambda_weight: WeightKind,

    /// Measure ranking the adjacency side psi
    #[arg(long, default_value = "degree", value_parser = parse_weight_kind)]
    psi_weight: WeightKind,
}

#[derive(Args)]
struct BaselineArgs {
    #[command(flatten)]
    out: OutArgs,

    /// Length of the generated uniform series
    #[arg(long, default_value_t = 100_000)]
    length: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Edgelist,
    Dot,
    Graphml,
}

impl ExportFormat {
    fn name(self) -> &'static str {
        match self {
            ExportFormat::Edgelist => "edgelist",
            ExportFormat::Dot => "dot",
            ExportFormat::Graphml => "graphml",
        }
    }
}

fn parse_scheme(s: &str) -> Result<WeightScheme, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_weight_kind(s: &str) -> Result<WeightKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A module error tagged with the pipeline stage it came from, so the
/// diagnostic names where things went wrong.
struct Failure {
    stage: &'static str,
    error: Error,
}

trait StageExt<T> {
    fn stage(self, stage: &'static str) -> Result<T, Failure>;
}

impl<T> StageExt<T> for Result<T, Error> {
    fn stage(self, stage: &'static str) -> Result<T, Failure> {
        self.map_err(|error| Failure { stage, error })
    }
}

fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::InvalidConfig(_) | Error::InvalidArgument(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version arrive as "errors"; keep their exit at
            // 0 and route genuine usage errors to 1.
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("chvg: {}: {}", failure.stage, failure.error);
            ExitCode::from(exit_code_for(&failure.error))
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Keywords(args) => cmd_keywords(args),
        Command::RandomBaseline(args) => cmd_random_baseline(args, cli.seed),
    }
}

/// Merge the optional TOML file and the override flags into one tokenizer
/// configuration. Problems here are configuration errors (exit 1).
fn resolve_tokenizer(args: &CorpusArgs) -> Result<TokenizerConfig, Failure> {
    let mut config = match &args.tokenizer_config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| {
                    Error::InvalidConfig(format!("cannot read {}: {e}", path.display()))
                })
                .stage("config")?;
            toml::from_str(&text)
                .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))
                .stage("config")?
        }
        None => TokenizerConfig::default(),
    };
    if let Some(v) = args.case_fold {
        config.case_fold = v;
    }
    if let Some(v) = args.keep_inner_apostrophe {
        config.keep_inner_apostrophe = v;
    }
    if let Some(v) = args.keep_inner_hyphen {
        config.keep_inner_hyphen = v;
    }
    if let Some(v) = args.min_token_length {
        config.min_token_length = v;
    }
    if let Some(v) = args.drop_numeric_tokens {
        config.drop_numeric_tokens = v;
    }
    config.validate().stage("config")?;
    Ok(config)
}

/// Run the shared front of the pipeline: corpus → value series →
/// visibility graph → both compactified word graphs.
fn build_graphs(
    corpus: &CorpusArgs,
) -> Result<(Document, OccurrenceGraph, WordGraph, WordGraph), Failure> {
    let config = resolve_tokenizer(corpus)?;
    let doc = load_corpus(&corpus.inputs, &config).stage("corpus")?;
    let series = value_series(&doc, corpus.scheme);
    let occurrence_graph = build_hvg(&series);
    let word_graph = compactify(&occurrence_graph, &doc).stage("graph")?;
    let adjacency = simple_adjacency_network(&doc);
    Ok((doc, occurrence_graph, word_graph, adjacency))
}

fn echo_for(command: &str, corpus: &CorpusArgs, config: &TokenizerConfig) -> RunEcho {
    let mut echo = RunEcho::new(command);
    echo.inputs = corpus
        .inputs
        .iter()
        .map(|p| p.display().to_string())
        .collect();
    echo.tokenizer = Some(config.clone());
    echo.scheme = Some(corpus.scheme);
    echo
}

fn ensure_out_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir)
        .map_err(|source| Error::WriteIo {
            path: dir.to_path_buf(),
            source,
        })
        .stage("export")
}

/// Create one output file, stream the writer into it, and flush.
fn write_output<F>(dir: &Path, name: &str, f: F) -> Result<PathBuf, Failure>
where
    F: FnOnce(&mut BufWriter<File>) -> io::Result<()>,
{
    let path = dir.join(name);
    let result = File::create(&path).and_then(|file| {
        let mut w = BufWriter::new(file);
        f(&mut w)?;
        w.flush()
    });
    result
        .map_err(|source| Error::WriteIo {
            path: path.clone(),
            source,
        })
        .stage("export")?;
    println!("wrote {}", path.display());
    Ok(path)
}

fn cmd_build(args: BuildArgs) -> Result<(), Failure> {
    let (doc, occurrence_graph, word_graph, adjacency) = build_graphs(&args.corpus)?;
    let mut formats = Vec::new();
    for format in args.formats {
        if !formats.contains(&format) {
            formats.push(format);
        }
    }
    let mut echo = echo_for("build", &args.corpus, doc.config());
    echo.out_dir = Some(args.out.out_dir.display().to_string());
    echo.formats = Some(formats.iter().map(|f| f.name().to_string()).collect());
    ensure_out_dir(&args.out.out_dir)?;
    let dir = &args.out.out_dir;

    println!("tokens: {}  distinct words: {}", doc.len(), doc.word_count());
    println!(
        "chvg: {} nodes, {} edges ({} stage-one visibility edges)",
        word_graph.node_count(),
        word_graph.edge_count(),
        word_graph.stage_one_edge_count()
    );
    println!(
        "adjacency: {} nodes, {} edges",
        adjacency.node_count(),
        adjacency.edge_count()
    );

    let index = occurrence_index(&doc);
    write_output(dir, "gap_stats.csv", |w| {
        write_gap_stats_csv(w, &doc, &index, &echo)
    })?;

    for format in formats {
        match format {
            ExportFormat::Edgelist => {
                write_output(dir, "chvg_edges.tsv", |w| {
                    write_word_edges(w, &word_graph, &echo)
                })?;
                write_output(dir, "adjacency_edges.tsv", |w| {
                    write_word_edges(w, &adjacency, &echo)
                })?;
            }
            ExportFormat::Dot => {
                write_output(dir, "chvg.dot", |w| write_dot(w, &word_graph, &echo))?;
                write_output(dir, "adjacency.dot", |w| write_dot(w, &adjacency, &echo))?;
            }
            ExportFormat::Graphml => {
                write_output(dir, "chvg.graphml", |w| write_graphml(w, &word_graph, &echo))?;
                write_output(dir, "adjacency.graphml", |w| {
                    write_graphml(w, &adjacency, &echo)
                })?;
            }
        }
    }

    if args.export_hvg {
        write_output(dir, "hvg_positions.edges", |w| {
            write_position_edges(w, &occurrence_graph, &echo)
        })?;
    }
    Ok(())
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    let (doc, _, word_graph, _) = build_graphs(&args.corpus)?;
    let mut echo = echo_for("analyze", &args.corpus, doc.config());
    echo.k_min = Some(args.k_min);
    echo.out_dir = Some(args.out.out_dir.display().to_string());
    ensure_out_dir(&args.out.out_dir)?;
    let dir = &args.out.out_dir;

    let mut fits = Vec::new();
    for kind in [WeightKind::Degree, WeightKind::Strength] {
        let dist = degree_distribution(&word_graph, kind).stage("analysis")?;
        write_output(dir, &format!("ccdf_chvg_{kind}.tsv"), |w| {
            write_ccdf_tsv(w, &dist, &echo)
        })?;
        let fit = fit_power_law(&dist, args.k_min).stage("analysis")?;
        println!(
            "{kind}: ls slope {:.4}, mle exponent {:.4}, r-squared {:.4} over {} points",
            fit.exponent_ls, fit.exponent_mle, fit.r_squared, fit.points_used
        );
        fits.push(FitRecord {
            weight_kind: kind,
            n_nodes: dist.n_nodes(),
            fit,
        });
    }

    let entries = zipf_rank_frequency(&doc).stage("analysis")?;
    write_output(dir, "zipf.csv", |w| write_zipf_csv(w, &entries, &echo))?;
    let zipf = match zipf_slope(&entries, ZIPF_RANK_LO, ZIPF_RANK_HI) {
        Ok(slope) => {
            println!("zipf slope over ranks {ZIPF_RANK_LO}-{ZIPF_RANK_HI}: {slope:.4}");
            ZipfSummary {
                rank_lo: ZIPF_RANK_LO,
                rank_hi: ZIPF_RANK_HI,
                distinct_words: entries.len(),
                slope: Some(slope),
                note: None,
            }
        }
        // Too few mid-rank words is worth a note, not a failed run: the
        // fits above are the primary product here.
        Err(error @ Error::InsufficientFitPoints { .. }) => {
            println!("zipf slope skipped: {error}");
            ZipfSummary {
                rank_lo: ZIPF_RANK_LO,
                rank_hi: ZIPF_RANK_HI,
                distinct_words: entries.len(),
                slope: None,
                note: Some(error.to_string()),
            }
        }
        Err(error) => return Err(Failure { stage: "analysis", error }),
    };
    write_output(dir, "fit_summary.json", |w| {
        write_json_pretty(w, &FitSummaryJson { echo: &echo, fits, zipf })
    })?;
    Ok(())
}

fn cmd_keywords(args: KeywordsArgs) -> Result<(), Failure> {
    if args.n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into())).stage("config");
    }
    let (doc, _, word_graph, adjacency) = build_graphs(&args.corpus)?;
    let mut echo = echo_for("keywords", &args.corpus, doc.config());
    echo.n = Some(args.n);
    echo.lambda_weight = Some(args.lambda_weight);
    echo.psi_weight = Some(args.psi_weight);
    echo.out_dir = Some(args.out.out_dir.display().to_string());
    ensure_out_dir(&args.out.out_dir)?;
    let dir = &args.out.out_dir;

    let report = keyword_report(
        &word_graph,
        &adjacency,
        args.n,
        (args.lambda_weight, args.psi_weight),
    )
    .stage("analysis")?;

    println!(
        "lambda/psi hold {} words each; omega keeps {}",
        report.lambda.len(),
        report.omega.len()
    );
    for r in &report.omega {
        println!("omega: {} ({})", r.word, r.weight);
    }

    write_output(dir, "keywords.json", |w| {
        write_json_pretty(w, &KeywordsJson { echo: &echo, report: &report })
    })?;
    write_output(dir, "keywords.csv", |w| write_keywords_csv(w, &report, &echo))?;
    Ok(())
}

fn cmd_random_baseline(args: BaselineArgs, seed: u64) -> Result<(), Failure> {
    let summary = random_baseline(args.length, seed);
    let mut echo = RunEcho::new("random-baseline");
    echo.seed = Some(seed);
    echo.length = Some(args.length);
    echo.out_dir = Some(args.out.out_dir.display().to_string());
    ensure_out_dir(&args.out.out_dir)?;

    println!(
        "length {} seed {}: mean degree {:.4} (target {} ± {})",
        summary.length,
        summary.seed,
        summary.mean_degree,
        summary.mean_degree_target,
        summary.mean_degree_tolerance
    );
    if summary.too_short {
        println!(
            "series too short for tolerance checks (needs at least {MIN_LENGTH_FOR_CHECKS}); \
             measurements reported without verdicts"
        );
    } else {
        for probe in &summary.probes {
            println!(
                "P({}) = {:.5} vs expected {:.5} ({})",
                probe.degree,
                probe.empirical,
                probe.expected,
                if probe.pass == Some(true) { "pass" } else { "FAIL" }
            );
        }
        println!(
            "overall: {}",
            if summary.all_pass == Some(true) { "pass" } else { "FAIL" }
        );
    }

    write_output(&args.out.out_dir, "random_baseline.json", |w| {
        write_json_pretty(w, &BaselineJson { echo: &echo, summary: &summary })
    })?;
    Ok(())
}
