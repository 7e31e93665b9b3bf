use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pcolor_core::conflict::ConflictConfig;
use pcolor_core::greedy::{self, GreedyOrdering};
use pcolor_core::tuner::{
    self, Clock, InstanceInfo, KnnPredictor, NoClock, ParamPredictor, DEFAULT_BETAS,
    DEFAULT_GRID_ALPHA, DEFAULT_GRID_PALETTE_PCT,
};
use pcolor_core::validate::{self, ValidationMode};
use pcolor_core::{palette, ColoringResult, ConflictStrategy, DriverError, PaletteParams, RunOptions};

use crate::alloc_counter;
use crate::error::{exit, CliError, Result};
use crate::formats::{self, InputFormat, Instance};
use crate::generate;
use crate::output::{self, ColoringFile, InputSummary, IterationOut, ParamsOut, ReportFile, StatsFile, Timing, Totals};

/// Environment variable that overrides `--threads`.
pub const THREADS_ENV: &str = "PCOLOR_THREADS";

#[derive(Debug, Parser)]
#[command(name = "pcolor", version, about = "Partition Pauli strings into anticommuting groups by palette-sparsified coloring")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Color an instance with the palette driver.
    Color(ColorArgs),
    /// Write a synthetic instance.
    #[command(subcommand)]
    Generate(GenerateKind),
    /// Run the driver over a (palette %, alpha) grid and write CSV records.
    Sweep(SweepArgs),
    /// Predict (palette %, alpha) for a new instance from sweep data.
    Predict(PredictArgs),
    /// Color with a whole-graph greedy ordering.
    Baseline(BaselineArgs),
    /// Check a coloring file against an instance.
    Validate(ValidateArgs),
    /// Store the colored graph as binary CSR and/or edge-list text.
    Export(ExportArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Defaults to a guess from the file extension.
    #[arg(long, value_enum)]
    pub format: Option<InputFormat>,
    /// Color the complement of an explicit graph (it is never stored).
    #[arg(long)]
    pub complement: bool,
}

impl InputArgs {
    fn load(&self) -> Result<Instance> {
        formats::load_instance(&self.input, self.format, self.complement)
    }
}

#[derive(Debug, Args)]
pub struct DriverArgs {
    #[arg(long, default_value_t = 12.5)]
    pub palette_pct: f64,
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 64)]
    pub max_iterations: usize,
    #[arg(long, default_value = "dynamic", value_parser = parse_strategy)]
    pub conflict_strategy: ConflictStrategy,
    /// Largest conflict graph (edges) a round may build.
    #[arg(long)]
    pub edge_budget: Option<usize>,
    #[arg(long, default_value_t = 32)]
    pub block_size: usize,
}

impl DriverArgs {
    fn params(&self) -> PaletteParams {
        PaletteParams {
            max_iterations: self.max_iterations,
            ..PaletteParams::new(self.palette_pct, self.alpha, self.seed)
        }
    }

    fn options(&self) -> RunOptions {
        RunOptions {
            strategy: self.conflict_strategy,
            conflict: ConflictConfig {
                block_size: self.block_size.max(1),
                edge_budget: self.edge_budget,
                ..ConflictConfig::default()
            },
        }
    }

    fn echo(&self) -> ParamsOut {
        let p = self.params();
        let o = self.options();
        ParamsOut {
            palette_pct: p.palette_pct,
            alpha: p.alpha,
            seed: p.seed,
            max_iterations: p.max_iterations,
            stall_escalation_factor: p.stall_escalation_factor,
            conflict_strategy: o.strategy.name().to_string(),
            block_size: o.conflict.block_size,
            edge_budget: o.conflict.edge_budget,
        }
    }
}

fn parse_strategy(s: &str) -> std::result::Result<ConflictStrategy, String> {
    ConflictStrategy::from_name(s).ok_or_else(|| format!("unknown strategy {s:?} (dynamic|natural|ldf|sdl|random)"))
}

fn parse_ordering(s: &str) -> std::result::Result<GreedyOrdering, String> {
    GreedyOrdering::from_name(s).ok_or_else(|| format!("unknown ordering {s:?} (LF|SL|DLF|ID|NAT)"))
}

#[derive(Debug, Args)]
pub struct RunOutputArgs {
    /// Worker threads (default: all cores; the PCOLOR_THREADS variable wins).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Coloring JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Stats JSON.
    #[arg(long)]
    pub stats_out: Option<PathBuf>,
    /// Color classes as blank-line separated text blocks.
    #[arg(long)]
    pub partition_out: Option<PathBuf>,
    /// Omit wall time and heap figures so outputs are reproducible.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Args)]
pub struct ColorArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub driver: DriverArgs,
    #[command(flatten)]
    pub output: RunOutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Edgelist,
    Mtx,
}

#[derive(Debug, Subcommand)]
pub enum GenerateKind {
    /// Uniform random Pauli strings.
    RandomPauli {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        qubits: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        exclude_identity: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Erdős–Rényi G(n, p) graph.
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: GraphFormat,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Palette percentages: `a,b,c`, `lo..hi` (step 0.5) or `lo..hi:step`.
    #[arg(long, default_value = "1,2.5,5,7.5,10,12.5,15,17.5,20")]
    pub grid_p: String,
    #[arg(long, default_value = "0.5..4.5")]
    pub grid_a: String,
    /// Seeds: `a,b,c` or an inclusive range `lo..hi`.
    #[arg(long, default_value = "1..3")]
    pub seeds: String,
    /// Instance label in the CSV (default: input file stem).
    #[arg(long)]
    pub instance: Option<String>,
    #[arg(long, default_value_t = 64)]
    pub max_iterations: usize,
    #[arg(long, default_value = "dynamic", value_parser = parse_strategy)]
    pub conflict_strategy: ConflictStrategy,
    #[arg(long)]
    pub edge_budget: Option<usize>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
    /// Add rows to an existing CSV instead of replacing it.
    #[arg(long)]
    pub append: bool,
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub beta: f64,
    /// Sweep CSV to train on.
    #[arg(long, conflicts_with = "model", required_unless_present = "model")]
    pub train: Option<PathBuf>,
    /// Previously saved model table.
    #[arg(long)]
    pub model: Option<PathBuf>,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: f64,
    /// Objective weights used to build training points.
    #[arg(long, default_value = "0.1..0.9:0.1")]
    pub betas: String,
    #[arg(long, default_value_t = KnnPredictor::DEFAULT_K)]
    pub k: usize,
    #[arg(long)]
    pub model_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BaselineArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value = "LF", value_parser = parse_ordering)]
    pub ordering: GreedyOrdering,
    #[command(flatten)]
    pub output: RunOutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Coloring JSON written by `color` or `baseline`.
    pub coloring: PathBuf,
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "exhaustive")]
    pub mode: CheckMode,
    /// Pairs drawn in sampled mode.
    #[arg(long, default_value_t = 1_000_000)]
    pub pairs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Stats JSON of the same run, for the conflict-edge metric.
    #[arg(long)]
    pub stats: Option<PathBuf>,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Report JSON (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub csr_out: Option<PathBuf>,
    #[arg(long)]
    pub edges_out: Option<PathBuf>,
    #[arg(long)]
    pub threads: Option<usize>,
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Color(a) => with_threads(a.output.threads, || cmd_color(&a)),
        Command::Generate(k) => cmd_generate(&k),
        Command::Sweep(a) => with_threads(a.threads, || cmd_sweep(&a)),
        Command::Predict(a) => cmd_predict(&a),
        Command::Baseline(a) => with_threads(a.output.threads, || cmd_baseline(&a)),
        Command::Validate(a) => with_threads(a.threads, || cmd_validate(&a)),
        Command::Export(a) => with_threads(a.threads, || cmd_export(&a)),
    }
}

/// Worker count: the environment variable, else the flag, else all cores.
pub fn resolve_threads(flag: Option<usize>) -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("{THREADS_ENV}={v:?} is not a thread count"))),
        _ => Ok(flag),
    }
}

fn with_threads<T: Send>(flag: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = resolve_threads(flag)? {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    pool.install(f)
}

struct WallClock(Instant);

impl Clock for WallClock {
    fn now_secs(&self) -> f64 {
        self.0.elapsed().as_secs_f64()
    }
}

struct Meter {
    start: Instant,
    heap_base: u64,
}

impl Meter {
    fn start() -> Self {
        alloc_counter::reset_peak();
        Self {
            start: Instant::now(),
            heap_base: alloc_counter::live_bytes(),
        }
    }

    fn finish(&self, enabled: bool) -> Option<Timing> {
        enabled.then(|| Timing {
            wall_time_s: self.start.elapsed().as_secs_f64(),
            peak_heap_bytes: alloc_counter::peak_bytes().map(|p| p.saturating_sub(self.heap_base)),
        })
    }
}

fn write_outputs(
    out: &RunOutputArgs,
    instance: &Instance,
    coloring: &ColoringFile,
    stats: &StatsFile,
    colors: &[u32],
) -> Result<()> {
    if let Some(p) = &out.out {
        formats::write_file(p, output::to_json(coloring)?)?;
    }
    if let Some(p) = &out.stats_out {
        formats::write_file(p, output::to_json(stats)?)?;
    }
    if let Some(p) = &out.partition_out {
        let pauli = match instance {
            Instance::Pauli(set) => Some(set),
            _ => None,
        };
        formats::write_file(p, output::partition_text(colors, pauli))?;
    }
    Ok(())
}

fn palette_stats(
    instance: &Instance,
    args: &DriverArgs,
    result: &ColoringResult,
    status: &str,
    timing: Option<Timing>,
) -> StatsFile {
    let (m, m_estimated) = output::edge_count(instance, args.seed);
    StatsFile {
        format_version: output::FORMAT_VERSION,
        algorithm: "palette".into(),
        status: status.into(),
        input: InputSummary::of(instance),
        params: Some(args.echo()),
        iterations: result.iterations.iter().map(IterationOut::from).collect(),
        totals: Totals {
            num_colors: result.num_colors,
            color_pct: result.color_pct(),
            m,
            m_estimated,
            peak_conflict_edges: result.peak_conflict_edges,
            ec_max_pct: output::pct(result.peak_conflict_edges as f64, m),
            palette_total: Some(result.palette_total),
            peak_tracked_entries: Some(result.peak_tracked_entries),
            stored_adjacency_entries: None,
        },
        timing,
    }
}

pub fn cmd_color(a: &ColorArgs) -> Result<i32> {
    let instance = a.input.load()?;
    let view = instance.view();
    let meter = Meter::start();
    let outcome = palette::run(&view, &a.driver.params(), &a.driver.options());
    let timing = meter.finish(!a.output.no_timing);
    let (result, status, code) = match outcome {
        Ok(r) => (r, "complete", exit::OK),
        Err(DriverError::IterationLimitExceeded { partial, .. }) => {
            (*partial, "iteration-limit", exit::ITERATION_LIMIT)
        }
        Err(e) => return Err(e.into()),
    };
    let coloring = ColoringFile::new("palette", &result.colors);
    let stats = palette_stats(&instance, &a.driver, &result, status, timing);
    write_outputs(&a.output, &instance, &coloring, &stats, &result.colors)?;
    println!(
        "n={} colors={} color_pct={:.3} iterations={} peak_conflict_edges={} ec_max_pct={:.3} status={}",
        coloring.n,
        result.num_colors,
        stats.totals.color_pct,
        result.iterations.len(),
        result.peak_conflict_edges,
        stats.totals.ec_max_pct,
        status
    );
    if code == exit::ITERATION_LIMIT {
        eprintln!(
            "error: {} vertices still uncolored after {} iterations",
            result.colors.iter().filter(|&&c| c == pcolor_core::UNCOLORED).count(),
            a.driver.max_iterations
        );
    }
    Ok(code)
}

pub fn cmd_baseline(a: &BaselineArgs) -> Result<i32> {
    let instance = a.input.load()?;
    let view = instance.view();
    let meter = Meter::start();
    let r = greedy::greedy_color(&view, a.ordering)?;
    let timing = meter.finish(!a.output.no_timing);
    let (m, m_estimated) = output::edge_count(&instance, 0);
    let algorithm = format!("greedy-{}", a.ordering.name());
    let coloring = ColoringFile::new(&algorithm, &r.colors);
    let stats = StatsFile {
        format_version: output::FORMAT_VERSION,
        algorithm,
        status: "complete".into(),
        input: InputSummary::of(&instance),
        params: None,
        iterations: Vec::new(),
        totals: Totals {
            num_colors: r.num_colors,
            color_pct: output::pct(r.num_colors as f64, r.colors.len() as f64),
            m,
            m_estimated,
            peak_conflict_edges: 0,
            ec_max_pct: 0.0,
            palette_total: None,
            peak_tracked_entries: None,
            stored_adjacency_entries: Some(r.stored_adjacency_entries),
        },
        timing,
    };
    write_outputs(&a.output, &instance, &coloring, &stats, &r.colors)?;
    println!(
        "n={} ordering={} colors={} color_pct={:.3} max_degree={} stored_adjacency_entries={}",
        r.colors.len(),
        a.ordering.name(),
        r.num_colors,
        stats.totals.color_pct,
        r.max_degree,
        r.stored_adjacency_entries
    );
    Ok(exit::OK)
}

pub fn cmd_generate(k: &GenerateKind) -> Result<i32> {
    match k {
        GenerateKind::RandomPauli {
            n,
            qubits,
            seed,
            exclude_identity,
            out,
        } => {
            let set = generate::random_pauli(*n, *qubits, *seed, *exclude_identity)?;
            formats::write_file(out, set.to_text())?;
            println!("wrote {n} strings on {qubits} qubits to {}", out.display());
        }
        GenerateKind::Gnp {
            n,
            p,
            seed,
            format,
            out,
        } => {
            let g = generate::gnp(*n, *p, *seed)?;
            let text = match format {
                GraphFormat::Edgelist => formats::edge_list_text(&g),
                GraphFormat::Mtx => formats::mtx_text(&g),
            };
            formats::write_file(out, text)?;
            println!("wrote G({n}, {p}) with {} edges to {}", g.num_edges(), out.display());
        }
    }
    Ok(exit::OK)
}

/// `a,b,c`, or `lo..hi` with step 0.5, or `lo..hi:step` (inclusive).
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let bad = || CliError::Usage(format!("bad grid {s:?}"));
    if let Some((lo, rest)) = s.split_once("..") {
        let (hi, step) = match rest.split_once(':') {
            Some((h, st)) => (h, st.trim().parse::<f64>().map_err(|_| bad())?),
            None => (rest, 0.5),
        };
        let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
        if step.partial_cmp(&0.0) != Some(core::cmp::Ordering::Greater) || hi < lo {
            return Err(bad());
        }
        let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
        // integer multiples keep values like 0.1 * 3 clean after rounding
        return Ok((0..count)
            .map(|i| ((lo + step * i as f64) * 1e9).round() / 1e9)
            .collect());
    }
    let v = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    if v.is_empty() {
        return Err(bad());
    }
    Ok(v)
}

pub fn parse_seeds(s: &str) -> Result<Vec<u64>> {
    let bad = || CliError::Usage(format!("bad seed list {s:?}"));
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
        if hi < lo {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| bad()))
        .collect()
}

pub fn cmd_sweep(a: &SweepArgs) -> Result<i32> {
    let grid_p = parse_grid(&a.grid_p)?;
    let grid_a = parse_grid(&a.grid_a)?;
    let seeds = parse_seeds(&a.seeds)?;
    let instance = a.input.load()?;
    let view = instance.view();
    let (m, _) = output::edge_count(&instance, 0);
    let info = InstanceInfo {
        id: a.instance.clone().unwrap_or_else(|| stem(&a.input.input)),
        n: instance.len(),
        m,
    };
    let template = PaletteParams {
        max_iterations: a.max_iterations,
        ..PaletteParams::default()
    };
    let options = RunOptions {
        strategy: a.conflict_strategy,
        conflict: ConflictConfig {
            edge_budget: a.edge_budget,
            ..ConflictConfig::default()
        },
    };
    let report = if a.no_timing {
        tuner::sweep(&view, &info, &grid_p, &grid_a, &seeds, &template, &options, &NoClock)?
    } else {
        let clock = WallClock(Instant::now());
        tuner::sweep(&view, &info, &grid_p, &grid_a, &seeds, &template, &options, &clock)?
    };
    let existing = a.append && a.out.exists();
    let text = output::write_sweep_csv(&report.records, !existing)?;
    if existing {
        let mut f = std::fs::OpenOptions::new()
            .append(true)
            .open(&a.out)
            .map_err(|e| CliError::io(&a.out, e))?;
        f.write_all(text.as_bytes()).map_err(|e| CliError::io(&a.out, e))?;
    } else {
        formats::write_file(&a.out, text)?;
    }
    for f in &report.failures {
        eprintln!(
            "warning: cell palette_pct={} alpha={} seed={} failed: {}",
            f.palette_pct, f.alpha, f.seed, f.error
        );
    }
    println!(
        "{} cells x {} seeds: {} records, {} failures -> {}",
        grid_p.len() * grid_a.len(),
        seeds.len(),
        report.records.len(),
        report.failures.len(),
        a.out.display()
    );
    Ok(exit::OK)
}

fn stem(p: &Path) -> String {
    p.file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("instance")
        .to_string()
}

fn distinct_sorted(xs: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = xs.collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

pub fn cmd_predict(a: &PredictArgs) -> Result<i32> {
    let model = match (&a.model, &a.train) {
        (Some(path), _) => output::parse_model(&formats::read_text(path)?, path)?,
        (None, Some(path)) => {
            let records = output::read_sweep_csv(&formats::read_text(path)?)?;
            if records.is_empty() {
                return Err(tuner::TunerError::EmptyRecords.into());
            }
            let betas = parse_grid(&a.betas)?;
            let points = tuner::training_points(&records, &betas)?;
            let grid_p = distinct_sorted(records.iter().map(|r| r.palette_pct));
            let grid_a = distinct_sorted(records.iter().map(|r| r.alpha));
            KnnPredictor::train(points, &grid_p, &grid_a, a.k)
        }
        (None, None) => return Err(CliError::Usage("need --train or --model".into())),
    };
    if let Some(p) = &a.model_out {
        formats::write_file(p, output::model_text(&model))?;
    }
    let (p, alpha) = model.predict(a.beta, a.n, a.m)?;
    println!("palette_pct={p} alpha={alpha}");
    Ok(exit::OK)
}

pub fn cmd_validate(a: &ValidateArgs) -> Result<i32> {
    let instance = a.input.load()?;
    let coloring: ColoringFile = output::from_json(&formats::read_text(&a.coloring)?)?;
    let stats: Option<StatsFile> = match &a.stats {
        Some(p) => Some(output::from_json(&formats::read_text(p)?)?),
        None => None,
    };
    let mode = match a.mode {
        CheckMode::Exhaustive => ValidationMode::Exhaustive,
        CheckMode::Sampled => ValidationMode::Sampled {
            pairs: a.pairs,
            seed: a.seed,
        },
    };
    let view = instance.view();
    let r = validate::validate_colors(&view, &coloring.raw_colors(), mode)?;
    let peak = stats.as_ref().map(|s| s.totals.peak_conflict_edges);
    let report = ReportFile {
        format_version: output::FORMAT_VERSION,
        proper: r.proper,
        mode: match a.mode {
            CheckMode::Exhaustive => "exhaustive".into(),
            CheckMode::Sampled => "sampled".into(),
        },
        pairs_checked: r.pairs_checked,
        violation_count: r.violation_count,
        violations: r.violations,
        uncolored: r.uncolored,
        colors_used: r.colors_used,
        color_pct: r.color_pct,
        m: r.edge_count,
        m_estimated: r.edge_count_estimated,
        peak_conflict_edges: peak,
        ec_max_pct: peak.map(|p| output::pct(p as f64, r.edge_count)),
        iterations: stats.map(|s| s.iterations).unwrap_or_default(),
    };
    let json = output::to_json(&report)?;
    match &a.out {
        Some(p) => {
            formats::write_file(p, &json)?;
            println!(
                "proper={} violations={} uncolored={} colors={}",
                report.proper, report.violation_count, report.uncolored, report.colors_used
            );
        }
        None => print!("{json}"),
    }
    Ok(if report.proper {
        exit::OK
    } else {
        exit::INVALID_COLORING
    })
}

pub fn cmd_export(a: &ExportArgs) -> Result<i32> {
    if a.csr_out.is_none() && a.edges_out.is_none() {
        return Err(CliError::Usage("nothing to export: pass --csr-out and/or --edges-out".into()));
    }
    let instance = a.input.load()?;
    let view = instance.view();
    let limit = pcolor_core::graph::EXACT_ENUMERATION_LIMIT;
    if view.len() > limit {
        return Err(CliError::Usage(format!(
            "{} vertices exceeds the export limit of {limit}",
            view.len()
        )));
    }
    let g = greedy::materialize(&view);
    if let Some(p) = &a.csr_out {
        formats::write_file(p, formats::csr_binary(&g))?;
    }
    if let Some(p) = &a.edges_out {
        formats::write_file(p, formats::edge_list_text(&g))?;
    }
    println!("n={} m={}", g.num_vertices(), g.num_edges());
    Ok(exit::OK)
}

/// Betas used by `predict` when none are given.
pub fn default_betas() -> &'static [f64] {
    &DEFAULT_BETAS
}

/// The default sweep grids.
pub fn default_grids() -> (&'static [f64], &'static [f64]) {
    (&DEFAULT_GRID_PALETTE_PCT, &DEFAULT_GRID_ALPHA)
}
