//! Result files: coloring and stats JSON, validation reports, partitions,
//! sweep CSV and the predictor table.

use std::fmt::Write as _;
use std::path::Path;

use pcolor_core::graph::EXACT_ENUMERATION_LIMIT;
use pcolor_core::tuner::{KnnPredictor, SweepRecord, TrainingPoint};
use pcolor_core::validate::color_classes;
use pcolor_core::{IterationRecord, PauliSet, UNCOLORED};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::formats::Instance;

/// Version stamped into every JSON document.
pub const FORMAT_VERSION: u32 = 1;

/// Pairs sampled when the complement edge count is too expensive to count.
pub const EDGE_SAMPLES: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColoringFile {
    pub format_version: u32,
    pub algorithm: String,
    pub n: usize,
    pub num_colors: usize,
    pub complete: bool,
    /// Color of vertex `i` at index `i`; `null` when uncolored.
    pub colors: Vec<Option<u32>>,
}

impl ColoringFile {
    pub fn new(algorithm: &str, colors: &[u32]) -> Self {
        let mut used: Vec<u32> = colors.iter().copied().filter(|&c| c != UNCOLORED).collect();
        used.sort_unstable();
        used.dedup();
        Self {
            format_version: FORMAT_VERSION,
            algorithm: algorithm.to_string(),
            n: colors.len(),
            num_colors: used.len(),
            complete: colors.iter().all(|&c| c != UNCOLORED),
            colors: colors
                .iter()
                .map(|&c| (c != UNCOLORED).then_some(c))
                .collect(),
        }
    }

    pub fn raw_colors(&self) -> Vec<u32> {
        self.colors.iter().map(|c| c.unwrap_or(UNCOLORED)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputSummary {
    pub mode: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub qubits: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dropped_self_loops: Option<usize>,
}

impl InputSummary {
    pub fn of(instance: &Instance) -> Self {
        match instance {
            Instance::Pauli(set) => Self {
                mode: instance.mode_name().into(),
                n: set.len(),
                qubits: Some(set.num_qubits()),
                dropped_self_loops: None,
            },
            Instance::Graph { graph, self_loops, .. } => Self {
                mode: instance.mode_name().into(),
                n: graph.num_vertices(),
                qubits: None,
                dropped_self_loops: Some(*self_loops),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsOut {
    pub palette_pct: f64,
    pub alpha: f64,
    pub seed: u64,
    pub max_iterations: usize,
    pub stall_escalation_factor: f64,
    pub conflict_strategy: String,
    pub block_size: usize,
    pub edge_budget: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationOut {
    pub iteration: usize,
    pub active: usize,
    pub palette_base: usize,
    pub palette_size: usize,
    pub list_size: usize,
    pub conflict_vertices: usize,
    pub conflict_edges: usize,
    pub colored_unconflicted: usize,
    pub colored_in_conflict: usize,
    pub uncolored: usize,
    pub tracked_entries: usize,
}

impl From<&IterationRecord> for IterationOut {
    fn from(r: &IterationRecord) -> Self {
        Self {
            iteration: r.iteration,
            active: r.active,
            palette_base: r.palette_base,
            palette_size: r.palette_size,
            list_size: r.list_size,
            conflict_vertices: r.conflict_vertices,
            conflict_edges: r.conflict_edges,
            colored_unconflicted: r.colored_unconflicted,
            colored_in_conflict: r.colored_in_conflict,
            uncolored: r.uncolored,
            tracked_entries: r.tracked_entries,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Totals {
    pub num_colors: usize,
    pub color_pct: f64,
    /// Edges of the colored graph, exact unless `m_estimated`.
    pub m: f64,
    pub m_estimated: bool,
    pub peak_conflict_edges: usize,
    pub ec_max_pct: f64,
    /// Sum of palette sizes (palette driver only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub palette_total: Option<usize>,
    /// Peak words held by lists, conflict CSR and vertex arrays in one round.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub peak_tracked_entries: Option<usize>,
    /// Adjacency entries of the fully stored graph (greedy baseline only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub stored_adjacency_entries: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub wall_time_s: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub peak_heap_bytes: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsFile {
    pub format_version: u32,
    pub algorithm: String,
    /// `complete` or `iteration-limit`.
    pub status: String,
    pub input: InputSummary,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub params: Option<ParamsOut>,
    pub iterations: Vec<IterationOut>,
    pub totals: Totals,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing: Option<Timing>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub format_version: u32,
    pub proper: bool,
    pub mode: String,
    pub pairs_checked: u64,
    pub violation_count: usize,
    pub violations: Vec<(u32, u32)>,
    pub uncolored: usize,
    pub colors_used: usize,
    pub color_pct: f64,
    pub m: f64,
    pub m_estimated: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub peak_conflict_edges: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ec_max_pct: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub iterations: Vec<IterationOut>,
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

/// Edge count of the colored graph: exact when enumeration is allowed,
/// otherwise a sampled estimate (flagged).
pub fn edge_count(instance: &Instance, seed: u64) -> (f64, bool) {
    match instance {
        Instance::Graph {
            graph, complement, ..
        } => {
            let n = graph.num_vertices() as u64;
            let m = graph.num_edges() as u64;
            let m = if *complement { n * n.saturating_sub(1) / 2 - m } else { m };
            (m as f64, false)
        }
        Instance::Pauli(_) => {
            let view = instance.view();
            let stats = view.degree_stats_auto(EDGE_SAMPLES, seed);
            (stats.edge_count, view.len() > EXACT_ENUMERATION_LIMIT)
        }
    }
}

pub fn pct(part: f64, whole: f64) -> f64 {
    if whole > 0.0 {
        100.0 * part / whole
    } else {
        0.0
    }
}

/// Color classes as text blocks separated by blank lines: Pauli strings
/// for Pauli input, vertex ids otherwise.
pub fn partition_text(colors: &[u32], pauli: Option<&PauliSet>) -> String {
    let mut out = String::new();
    for (k, group) in color_classes(colors).iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        for &v in group {
            match pauli {
                Some(set) => {
                    let _ = writeln!(out, "{}", set.string(v as usize));
                }
                None => {
                    let _ = writeln!(out, "{v}");
                }
            }
        }
    }
    out
}

pub const SWEEP_HEADER: &str = "instance,n,m,palette_pct,alpha,colors,ec_max,runtime_s,seed";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct SweepRow {
    instance: String,
    n: usize,
    m: f64,
    palette_pct: f64,
    alpha: f64,
    colors: usize,
    ec_max: usize,
    runtime_s: f64,
    seed: u64,
}

pub fn write_sweep_csv(records: &[SweepRecord], with_header: bool) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(with_header)
        .from_writer(Vec::new());
    for r in records {
        w.serialize(SweepRow {
            instance: r.instance.clone(),
            n: r.n,
            m: r.m,
            palette_pct: r.palette_pct,
            alpha: r.alpha,
            colors: r.colors,
            ec_max: r.ec_max,
            runtime_s: r.runtime_s,
            seed: r.seed,
        })?;
    }
    if records.is_empty() && with_header {
        return Ok(format!("{SWEEP_HEADER}\n"));
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn read_sweep_csv(text: &str) -> Result<Vec<SweepRecord>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header.join(",") != SWEEP_HEADER {
        return Err(CliError::Usage(format!("sweep CSV header must be `{SWEEP_HEADER}`")));
    }
    r.deserialize::<SweepRow>()
        .map(|row| {
            let row = row?;
            Ok(SweepRecord {
                instance: row.instance,
                n: row.n,
                m: row.m,
                palette_pct: row.palette_pct,
                alpha: row.alpha,
                colors: row.colors,
                ec_max: row.ec_max,
                runtime_s: row.runtime_s,
                seed: row.seed,
            })
        })
        .collect()
}

/// Flat whitespace-separated table:
///
/// ```text
/// knn-model 1
/// k 3
/// grid_p 1 2.5 5
/// grid_a 0.5 1 1.5
/// beta n m palette_pct alpha
/// 0.5 1000 250000 5 1.5
/// ```
pub fn model_text(model: &KnnPredictor) -> String {
    let join = |xs: &[f64]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let mut out = format!(
        "knn-model {FORMAT_VERSION}\nk {}\ngrid_p {}\ngrid_a {}\nbeta n m palette_pct alpha\n",
        model.k(),
        join(model.grid_palette_pct()),
        join(model.grid_alpha())
    );
    for p in model.points() {
        let _ = writeln!(out, "{} {} {} {} {}", p.beta, p.n, p.m, p.palette_pct, p.alpha);
    }
    out
}

pub fn parse_model(text: &str, path: &Path) -> Result<KnnPredictor> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| CliError::parse(path, 0, format!("model ends before {what}")))
    };
    let floats = |line: usize, toks: &[&str]| -> Result<Vec<f64>> {
        toks.iter()
            .map(|t| t.parse().map_err(|_| CliError::parse(path, line + 1, format!("bad number {t:?}"))))
            .collect()
    };
    let (l, head) = next("header")?;
    if head.split_whitespace().next() != Some("knn-model") {
        return Err(CliError::parse(path, l + 1, "not a knn-model table"));
    }
    let (l, k_line) = next("k")?;
    let k = match k_line.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["k", v] => v.parse().map_err(|_| CliError::parse(path, l + 1, "bad k"))?,
        _ => return Err(CliError::parse(path, l + 1, "expected `k <int>`")),
    };
    let mut grid = |tag: &str| -> Result<Vec<f64>> {
        let (l, line) = next(tag)?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.first() != Some(&tag) {
            return Err(CliError::parse(path, l + 1, format!("expected `{tag} ...`")));
        }
        floats(l, &toks[1..])
    };
    let grid_p = grid("grid_p")?;
    let grid_a = grid("grid_a")?;
    let _ = next("column header")?;
    let mut points = Vec::new();
    for (l, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let v = floats(l, &toks)?;
        if v.len() != 5 {
            return Err(CliError::parse(path, l + 1, "expected 5 columns"));
        }
        points.push(TrainingPoint {
            beta: v[0],
            n: v[1] as usize,
            m: v[2],
            palette_pct: v[3],
            alpha: v[4],
        });
    }
    Ok(KnnPredictor::train(points, &grid_p, &grid_a, k))
}
