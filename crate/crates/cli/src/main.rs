//! `tdm`: build topic dependency models from assessment exports, render
//! filtered views, generate synthetic data and run the HTTP service.
//!
//! Exit codes: 0 success, 2 bad input or flags, 3 internal failure.

use std::fs::{self, File};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tdm_core::hypergraph::build_tdm;
use tdm_core::ingest::{write_qt, write_sqa};
use tdm_core::pipeline::{report_json, view_report};
use tdm_core::stats::model_stats;
use tdm_core::synth::{generate, GenerateError, GeneratorConfig};
use tdm_core::{model_json, render_view, Dataset, LayoutConfig, Tdm, ViewRequest};

#[derive(Debug, Parser)]
#[command(
    name = "tdm",
    version,
    about = "Topic dependency hypergraphs from assessment data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a model from SQA and QT CSV files and write it as JSON.
    Build {
        #[arg(long)]
        sqa: PathBuf,
        #[arg(long)]
        qt: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Render a filtered view of a model.
    View(Box<ViewArgs>),
    /// Write a seeded synthetic SQA/QT pair that satisfies the demo constraints.
    Generate(GenerateArgs),
    /// Summarise a model: level counts, coverage totals, achievement histogram.
    Stats {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = StatsFormat::Text)]
        format: StatsFormat,
    },
    /// Run the HTTP service (`TDM_ADDR`, `TDM_DATA_DIR` unless overridden).
    Serve {
        #[arg(long)]
        addr: Option<String>,
        #[arg(long)]
        data_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StatsFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct ViewArgs {
    /// Model JSON written by `build`.
    #[arg(long, conflicts_with_all = ["sqa", "qt"], required_unless_present_all = ["sqa", "qt"])]
    model: Option<PathBuf>,
    /// Build from CSVs in the same run instead of reading a model.
    #[arg(long, requires = "qt")]
    sqa: Option<PathBuf>,
    #[arg(long, requires = "sqa")]
    qt: Option<PathBuf>,

    /// Comma-separated topic labels.
    #[arg(long)]
    topics: Option<String>,
    /// `any` or `all`.
    #[arg(long)]
    topic_mode: Option<String>,
    #[arg(long)]
    achv_min: Option<String>,
    #[arg(long)]
    achv_max: Option<String>,
    /// `level-min` or `level-max`.
    #[arg(long)]
    achv_extremum: Option<String>,
    #[arg(long)]
    cov_min: Option<String>,
    #[arg(long)]
    cov_max: Option<String>,
    /// `level-min` or `level-max`.
    #[arg(long)]
    cov_extremum: Option<String>,
    #[arg(long)]
    level: Option<String>,
    /// `cumulative` or `accumulative`; needs `--level`.
    #[arg(long)]
    mode: Option<String>,

    /// One panel per level up to the chosen one.
    #[arg(long)]
    strip: bool,
    /// Keep panels for empty levels in a strip.
    #[arg(long)]
    include_empty: bool,
    /// Leave greyed edges out of the drawing.
    #[arg(long)]
    hide_greyed: bool,
    /// `svg`, `json` or `dot`.
    #[arg(long)]
    format: Option<String>,

    /// Output file; stdout when absent.
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Also write the JSON selection report here.
    #[arg(long)]
    report: Option<PathBuf>,

    #[arg(long)]
    width: Option<f64>,
    #[arg(long)]
    height: Option<f64>,
    #[arg(long)]
    vertex_radius: Option<f64>,
    #[arg(long)]
    hull_margin: Option<f64>,
}

impl ViewArgs {
    /// Flags as query pairs, so parsing and validation match the server.
    fn pairs(&self) -> Vec<(&'static str, String)> {
        let mut pairs = Vec::new();
        let options = [
            ("topics", &self.topics),
            ("topic_mode", &self.topic_mode),
            ("achv_min", &self.achv_min),
            ("achv_max", &self.achv_max),
            ("achv_extremum", &self.achv_extremum),
            ("cov_min", &self.cov_min),
            ("cov_max", &self.cov_max),
            ("cov_extremum", &self.cov_extremum),
            ("level", &self.level),
            ("mode", &self.mode),
            ("format", &self.format),
        ];
        for (key, value) in options {
            if let Some(v) = value {
                pairs.push((key, v.clone()));
            }
        }
        for (key, on) in [
            ("strip", self.strip),
            ("include_empty", self.include_empty),
            ("hide_greyed", self.hide_greyed),
        ] {
            if on {
                pairs.push((key, "true".to_string()));
            }
        }
        pairs
    }

    fn layout(&self) -> LayoutConfig {
        let mut cfg = LayoutConfig::default();
        if let Some(w) = self.width {
            cfg.width = w;
        }
        if let Some(h) = self.height {
            cfg.height = h;
        }
        if let Some(r) = self.vertex_radius {
            cfg.vertex_radius = r;
        }
        if let Some(m) = self.hull_margin {
            cfg.hull_margin = m;
        }
        cfg
    }
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 6)]
    students: usize,
    #[arg(long, default_value_t = 15)]
    questions: usize,
    #[arg(long, default_value_t = 6)]
    topics: usize,
    #[arg(long, default_value_t = 1)]
    min_arity: usize,
    #[arg(long, default_value_t = 4)]
    max_arity: usize,
    /// Directory receiving `SQA.csv` and `QT.csv`.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    fn io(path: &Path, e: io::Error) -> Self {
        CliError::Input(format!("{}: {e}", path.display()))
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// Writes via a temporary file in the target directory and a rename.
fn write_atomic(path: &Path, contents: &str) -> CliResult {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let fail = |e: io::Error| CliError::io(path, e);
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(contents.as_bytes()).map_err(fail)?;
    tmp.as_file().sync_all().map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

fn load_dataset(sqa: &Path, qt: &Path) -> CliResult<Tdm> {
    let sqa_file = File::open(sqa).map_err(|e| CliError::io(sqa, e))?;
    let qt_file = File::open(qt).map_err(|e| CliError::io(qt, e))?;
    let dataset =
        Dataset::from_csv(sqa_file, qt_file).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(build_tdm(&dataset.matrices, &dataset.maps))
}

fn load_model(path: &Path) -> CliResult<Tdm> {
    model_json::from_json(&read(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn cmd_build(sqa: &Path, qt: &Path, out: &Path) -> CliResult {
    let tdm = load_dataset(sqa, qt)?;
    write_atomic(out, &model_json::to_json(&tdm))?;
    println!(
        "{} vertices, {} hyperedges, {} zero-coverage sets",
        tdm.vertex_count(),
        tdm.edge_count(),
        tdm.zero_coverage_sets().len()
    );
    Ok(())
}

fn cmd_view(args: &ViewArgs) -> CliResult {
    let tdm = match (&args.model, &args.sqa, &args.qt) {
        (Some(model), _, _) => load_model(model)?,
        (None, Some(sqa), Some(qt)) => load_dataset(sqa, qt)?,
        _ => {
            return Err(CliError::Input(
                "pass --model or both --sqa and --qt".into(),
            ))
        }
    };
    let req = ViewRequest::from_pairs(args.pairs()).map_err(|e| CliError::Input(e.to_string()))?;
    let layout = args.layout();
    let body = render_view(&tdm, &req, &layout).map_err(|e| CliError::Input(e.to_string()))?;
    match &args.out {
        Some(path) => write_atomic(path, &body)?,
        None => io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| CliError::Internal(format!("stdout: {e}")))?,
    }
    if let Some(path) = &args.report {
        let report =
            view_report(&tdm, &req, &layout).map_err(|e| CliError::Input(e.to_string()))?;
        write_atomic(path, &report_json(&report))?;
    }
    Ok(())
}

fn cmd_generate(args: &GenerateArgs) -> CliResult {
    let config = GeneratorConfig {
        seed: args.seed,
        students: args.students,
        questions: args.questions,
        topics: args.topics,
        min_arity: args.min_arity,
        max_arity: args.max_arity,
    };
    let generated = generate(&config).map_err(|e| match e {
        GenerateError::Infeasible(_) => CliError::Input(e.to_string()),
        GenerateError::Unsatisfied(_) => CliError::Internal(e.to_string()),
    })?;
    fs::create_dir_all(&args.out_dir).map_err(|e| CliError::io(&args.out_dir, e))?;
    let sqa = args.out_dir.join("SQA.csv");
    let qt = args.out_dir.join("QT.csv");
    write_atomic(&sqa, &write_sqa(&generated.responses))?;
    write_atomic(&qt, &write_qt(&generated.tags))?;
    println!("wrote {} and {}", sqa.display(), qt.display());
    print!("{}", generated.report.to_text());
    Ok(())
}

fn cmd_stats(model: &Path, format: StatsFormat) -> CliResult {
    let stats = model_stats(&load_model(model)?);
    match format {
        StatsFormat::Text => print!("{}", stats.to_text()),
        StatsFormat::Json => {
            let text = serde_json::to_string_pretty(&stats)
                .map_err(|e| CliError::Internal(e.to_string()))?;
            println!("{text}");
        }
    }
    Ok(())
}

fn cmd_serve(addr: Option<String>, data_dir: Option<PathBuf>) -> CliResult {
    let mut config = tdm_server::ServeConfig::from_env().map_err(CliError::Input)?;
    if let Some(a) = addr {
        config.addr = a
            .parse()
            .map_err(|e| CliError::Input(format!("--addr `{a}`: {e}")))?;
    }
    if data_dir.is_some() {
        config.data_dir = data_dir;
    }
    let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError::Internal(e.to_string()))?;
    runtime
        .block_on(tdm_server::serve(config))
        .map_err(|e| CliError::Internal(e.to_string()))
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Build { sqa, qt, out } => cmd_build(&sqa, &qt, &out),
        Command::View(args) => cmd_view(&args),
        Command::Generate(args) => cmd_generate(&args),
        Command::Stats { model, format } => cmd_stats(&model, format),
        Command::Serve { addr, data_dir } => cmd_serve(addr, data_dir),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
