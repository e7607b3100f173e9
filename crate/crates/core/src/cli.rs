//! Command-line pipeline: `ingest`, `features`, `sweep` and `plot`.
//!
//! Exit codes: 0 success, 1 usage error, 2 data validation error, 3 I/O
//! error.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::features::{
    append_external, read_feature_table, Feature, FeatureExtractor, FeatureMatrix, DEFAULT_TRIM,
};
use crate::fixture;
use crate::graph::NodeId;
use crate::grid::{Grid, DEFAULT_ALPHAS, DEFAULT_BETAS};
use crate::ingest::{parse_log, ParseMode, ParsedLog, SessionLog};
use crate::plot::{render_svg, PlotOptions};
use crate::ranking::{opsahl_sweep, sweep, RankTrajectory};

#[derive(Debug, Parser)]
#[command(name = "chat-owa", version, about = "Rank chat members by OWA-aggregated activity features")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a chat log and summarize its temporal multi-graph.
    Ingest(IngestArgs),
    /// Compute the per-member feature matrix as CSV.
    Features(FeaturesArgs),
    /// Rank members across a grid of OWA (or Opsahl) parameters.
    Sweep(SweepArgs),
    /// Render a rank trajectory as an SVG bump chart.
    Plot(PlotArgs),
}

/// Input, session selection and output shared by the subcommands.
#[derive(Debug, Clone, Args)]
pub struct PipelineConfig {
    /// JSON-lines chat log (`-` for stdin).
    #[arg(short, long)]
    pub input: Option<PathBuf>,

    /// Only use this session.
    #[arg(long)]
    pub session: Option<String>,

    /// Skip malformed log lines instead of aborting.
    #[arg(long)]
    pub lenient: bool,

    /// Write the result here instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

impl PipelineConfig {
    fn parse_mode(&self) -> ParseMode {
        if self.lenient {
            ParseMode::Lenient
        } else {
            ParseMode::Strict
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct FeatureOptions {
    /// Use an embedded feature matrix instead of a chat log.
    #[arg(long, value_parser = fixture::FIXTURES)]
    pub fixture: Option<String>,

    /// Records dropped at each end of the session for the reaction time.
    #[arg(long, default_value_t = DEFAULT_TRIM)]
    pub trim: usize,

    /// Add one degree column per window of this many minutes.
    #[arg(long)]
    pub interval_minutes: Option<u32>,

    /// Comma-separated built-in features (a1..a4 or degree, strength,
    /// words, reaction).
    #[arg(long, value_delimiter = ',')]
    pub features: Option<Vec<String>>,

    /// Extra raw columns from a CSV with header `node,<names...>`.
    #[arg(long)]
    pub extra: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    #[command(flatten)]
    pub config: PipelineConfig,

    /// Write the aggregated weighted arcs as CSV.
    #[arg(long)]
    pub dump: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FeaturesArgs {
    #[command(flatten)]
    pub config: PipelineConfig,

    #[command(flatten)]
    pub features: FeatureOptions,

    /// Emit raw values instead of normalized ones.
    #[arg(long)]
    pub raw: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub config: PipelineConfig,

    #[command(flatten)]
    pub features: FeatureOptions,

    /// Feature matrix CSV as written by `features`.
    #[arg(long, conflicts_with_all = ["input", "fixture"])]
    pub matrix: Option<PathBuf>,

    /// Min-max normalize the `--matrix` columns before ranking.
    #[arg(long, requires = "matrix")]
    pub normalize: bool,

    /// Quantifier exponents, `start:stop:step` and/or comma lists.
    #[arg(long, default_value = DEFAULT_BETAS)]
    pub betas: String,

    /// Rank by Opsahl's degree/strength blend instead of OWA.
    #[arg(long)]
    pub opsahl: bool,

    /// Opsahl exponents, same syntax as `--betas`.
    #[arg(long, default_value = DEFAULT_ALPHAS, requires = "opsahl")]
    pub alphas: String,

    /// Number the top node 1 instead of n.
    #[arg(long)]
    pub inverted: bool,

    /// JSON also carries the scores.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Trajectory CSV or JSON written by `sweep`.
    pub trajectory: PathBuf,

    /// Comma-separated nodes to emphasize.
    #[arg(long, value_delimiter = ',')]
    pub highlight: Vec<String>,

    /// The trajectory numbers its top node 1.
    #[arg(long)]
    pub inverted: bool,

    #[arg(long)]
    pub title: Option<String>,

    /// Write the SVG here instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// Parses `args` (program name first) and runs the subcommand, returning
/// the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match execute(&cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: &Command, stdout: &mut dyn Write) -> Result<()> {
    match command {
        Command::Ingest(a) => cmd_ingest(a, stdout),
        Command::Features(a) => cmd_features(a, stdout),
        Command::Sweep(a) => cmd_sweep(a, stdout),
        Command::Plot(a) => cmd_plot(a, stdout),
    }
}

fn open_input(path: &Path) -> Result<Box<dyn Read>> {
    if path.as_os_str() == "-" {
        Ok(Box::new(io::stdin()))
    } else {
        Ok(Box::new(File::open(path)?))
    }
}

fn with_output(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    f: impl FnOnce(&mut dyn Write) -> Result<()>,
) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            f(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => f(stdout),
    }
}

fn load_log(config: &PipelineConfig) -> Result<ParsedLog> {
    let path = config
        .input
        .as_deref()
        .ok_or_else(|| Error::Usage("an --input chat log is required".into()))?;
    let parsed = parse_log(BufReader::new(open_input(path)?), config.parse_mode())?;
    if !parsed.skipped.is_empty() {
        log::warn!("skipped {} malformed line(s)", parsed.skipped.len());
    }
    Ok(parsed)
}

fn select_session(parsed: ParsedLog, session: Option<&str>) -> Result<SessionLog> {
    let mut sessions = parsed.sessions;
    match session {
        Some(id) => sessions
            .remove(id)
            .ok_or_else(|| Error::validation(format!("session `{id}` not found in log"))),
        None => match sessions.len() {
            0 => Err(Error::validation("log contains no records")),
            1 => Ok(sessions.into_values().next().expect("one session")),
            k => Err(Error::Usage(format!(
                "log has {k} sessions; choose one with --session"
            ))),
        },
    }
}

/// Prints `nodes=.. edges=..` for the whole log followed by one line per
/// session.
pub fn cmd_ingest(args: &IngestArgs, stdout: &mut dyn Write) -> Result<()> {
    let parsed = load_log(&args.config)?;
    let skipped = parsed.skipped.len();
    let sessions: Vec<SessionLog> = match &args.config.session {
        Some(_) => vec![select_session(parsed, args.config.session.as_deref())?],
        None => parsed.sessions.into_values().collect(),
    };
    let graphs: Vec<_> = sessions.iter().map(|s| (s, s.build_graph())).collect();

    let nodes: BTreeSet<&NodeId> = graphs.iter().flat_map(|(_, g)| g.nodes()).collect();
    let edges: usize = graphs.iter().map(|(_, g)| g.edge_count()).sum();
    let first = graphs.iter().filter_map(|(_, g)| g.time_span()).map(|s| s.0).min();
    let last = graphs.iter().filter_map(|(_, g)| g.time_span()).map(|s| s.1).max();
    let span = first.zip(last).map_or(0, |(a, b)| b - a);

    let mut text = format!(
        "nodes={} edges={} sessions={} span_ms={span} skipped={skipped}\n",
        nodes.len(),
        edges,
        graphs.len()
    );
    for (s, g) in &graphs {
        let (a, b) = g.time_span().unwrap_or((0, 0));
        text.push_str(&format!(
            "session={} nodes={} edges={} t_first={a} t_last={b} span_ms={}\n",
            s.session(),
            g.node_count(),
            g.edge_count(),
            b - a
        ));
    }
    with_output(args.config.output.as_deref(), stdout, |w| {
        w.write_all(text.as_bytes())?;
        Ok(())
    })?;

    if let Some(path) = &args.dump {
        let mut w = crate::features::csv_writer(BufWriter::new(File::create(path)?));
        w.write_record(["session", "source", "target", "statements", "words"])?;
        for (s, g) in &graphs {
            for (u, v, weight) in g.aggregate().arcs() {
                w.write_record([
                    s.session(),
                    u.as_str(),
                    v.as_str(),
                    &weight.statements.to_string(),
                    &weight.words.to_string(),
                ])?;
            }
        }
        w.flush()?;
    }
    Ok(())
}

fn selected_features(opts: &FeatureOptions) -> Result<Option<Vec<Feature>>> {
    opts.features
        .as_ref()
        .map(|names| names.iter().map(|n| n.trim().parse()).collect())
        .transpose()
}

/// Builds the feature matrix described by the config and options.
pub fn build_matrix(config: &PipelineConfig, opts: &FeatureOptions) -> Result<FeatureMatrix> {
    if let Some(name) = &opts.fixture {
        if config.input.is_some() {
            return Err(Error::Usage("--fixture and --input are mutually exclusive".into()));
        }
        if opts.extra.is_some() || opts.interval_minutes.is_some() {
            return Err(Error::Usage(
                "--extra and --interval-minutes need a chat log, not a fixture".into(),
            ));
        }
        let fm = fixture::load(name)?;
        return match selected_features(opts)? {
            Some(fs) => fm.select(&fs.iter().map(|f| f.name().to_string()).collect::<Vec<_>>()),
            None => Ok(fm),
        };
    }

    let log = select_session(load_log(config)?, config.session.as_deref())?;
    let extractor = FeatureExtractor {
        features: selected_features(opts)?.unwrap_or_else(|| Feature::ALL.to_vec()),
        trim: opts.trim,
        interval_ms: opts.interval_minutes.map(|m| i64::from(m) * 60_000),
    };
    if extractor.interval_ms == Some(0) {
        return Err(Error::Usage("--interval-minutes must be positive".into()));
    }
    let (nodes, mut columns) = extractor.raw_columns(&log)?;
    if let Some(path) = &opts.extra {
        let (names, rows) = read_feature_table(File::open(path)?)?;
        append_external(&nodes, &mut columns, names, rows)?;
    }
    if columns.is_empty() {
        return Err(Error::Usage("no features selected".into()));
    }
    FeatureMatrix::from_columns(nodes, columns)
}

pub fn cmd_features(args: &FeaturesArgs, stdout: &mut dyn Write) -> Result<()> {
    let fm = build_matrix(&args.config, &args.features)?;
    with_output(args.config.output.as_deref(), stdout, |w| fm.write_csv(w, !args.raw))
}

fn read_matrix(path: &Path, normalize: bool) -> Result<FeatureMatrix> {
    let (names, rows) = read_feature_table(File::open(path)?)?;
    let (nodes, rows): (Vec<NodeId>, Vec<Vec<f64>>) = rows.into_iter().unzip();
    if normalize {
        let columns = names
            .into_iter()
            .enumerate()
            .map(|(j, name)| (name, rows.iter().map(|r| r[j]).collect()))
            .collect();
        FeatureMatrix::from_columns(nodes, columns)
    } else {
        FeatureMatrix::from_normalized_rows(nodes, names, rows)
    }
}

pub fn cmd_sweep(args: &SweepArgs, stdout: &mut dyn Write) -> Result<()> {
    let fm = match &args.matrix {
        Some(path) => read_matrix(path, args.normalize)?,
        None => build_matrix(&args.config, &args.features)?,
    };
    let traj = if args.opsahl {
        let alphas: Grid = args.alphas.parse()?;
        let column = |name: &str| {
            fm.raw_column(name).ok_or_else(|| {
                Error::Usage(format!("--opsahl needs feature `{name}` in the matrix"))
            })
        };
        opsahl_sweep(fm.nodes(), &column("a1")?, &column("a2")?, &alphas)?
    } else {
        let betas: Grid = args.betas.parse()?;
        sweep(&fm, &betas)?
    };
    let traj = if args.inverted { traj.inverted() } else { traj };
    with_output(args.config.output.as_deref(), stdout, |w| match args.format {
        OutputFormat::Csv => traj.write_csv(w),
        OutputFormat::Json => traj.write_json(w),
    })
}

pub fn read_trajectory(path: &Path) -> Result<RankTrajectory> {
    let mut bytes = Vec::new();
    File::open(path)?.read_to_end(&mut bytes)?;
    let first = bytes.iter().find(|b| !b.is_ascii_whitespace());
    if first == Some(&b'{') {
        RankTrajectory::read_json(bytes.as_slice())
    } else {
        RankTrajectory::read_csv(bytes.as_slice())
    }
}

pub fn cmd_plot(args: &PlotArgs, stdout: &mut dyn Write) -> Result<()> {
    let traj = read_trajectory(&args.trajectory)?;
    let highlight = args
        .highlight
        .iter()
        .map(|h| NodeId::new(h.trim()))
        .collect::<Result<BTreeSet<_>>>()?;
    if let Some(missing) = highlight.iter().find(|h| traj.get(h).is_none()) {
        return Err(Error::validation(format!("highlighted node `{missing}` is not in the trajectory")));
    }
    let opts = PlotOptions {
        highlight,
        inverted: args.inverted,
        title: args.title.clone(),
        ..PlotOptions::default()
    };
    let svg = render_svg(&traj, &opts);
    with_output(args.output.as_deref(), stdout, |w| {
        w.write_all(svg.as_bytes())?;
        Ok(())
    })
}
