//! Independent checks of a finished coloring plus the reported metrics.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::graph::{EdgeOracleView, EXACT_ENUMERATION_LIMIT};
use crate::palette::{ColoringResult, UNCOLORED};
use crate::par;
use crate::rng::{self, Purpose};

/// Violations kept in a report.
pub const MAX_REPORTED_VIOLATIONS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValidationError {
    #[error("{n} vertices exceeds the exhaustive validation limit of {limit}")]
    TooLargeForExhaustive { n: usize, limit: usize },
    #[error("coloring has {coloring} entries but the view has {view} vertices")]
    SizeMismatch { coloring: usize, view: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationMode {
    Exhaustive,
    Sampled { pairs: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub proper: bool,
    /// Offending edges as original-id pairs, at most
    /// [`MAX_REPORTED_VIOLATIONS`].
    pub violations: Vec<(u32, u32)>,
    pub violation_count: usize,
    pub uncolored: usize,
    pub pairs_checked: u64,
    pub colors_used: usize,
    pub color_pct: f64,
    /// Complement edge count, exact or estimated.
    pub edge_count: f64,
    pub edge_count_estimated: bool,
    pub peak_conflict_edges: usize,
    pub ec_max_pct: f64,
}

/// Checks `colors` (view-local) against every pair, or a seeded sample of
/// pairs, of `view`.
pub fn validate_colors(
    view: &EdgeOracleView<'_>,
    colors: &[u32],
    mode: ValidationMode,
) -> Result<ValidationReport, ValidationError> {
    let n = view.len();
    if colors.len() != n {
        return Err(ValidationError::SizeMismatch {
            coloring: colors.len(),
            view: n,
        });
    }
    let mut violations = Vec::new();
    let violation_count;
    let pairs_checked;
    let edge_count;
    let estimated;
    match mode {
        ValidationMode::Exhaustive => {
            if n > EXACT_ENUMERATION_LIMIT {
                return Err(ValidationError::TooLargeForExhaustive {
                    n,
                    limit: EXACT_ENUMERATION_LIMIT,
                });
            }
            let rows: Vec<(u64, Vec<u32>)> = par::map_range(n, |i| {
                let mut edges = 0u64;
                let mut bad = Vec::new();
                for j in i + 1..n {
                    if view.adjacent(i, j) {
                        edges += 1;
                        if colors[i] == colors[j] && colors[i] != UNCOLORED {
                            bad.push(j as u32);
                        }
                    }
                }
                (edges, bad)
            });
            let mut count = 0;
            let mut m = 0u64;
            for (i, (edges, bad)) in rows.iter().enumerate() {
                m += edges;
                count += bad.len();
                for &j in bad {
                    if violations.len() < MAX_REPORTED_VIOLATIONS {
                        violations.push((view.vertex(i), view.vertex(j as usize)));
                    }
                }
            }
            violation_count = count;
            pairs_checked = (n as u64) * (n.saturating_sub(1) as u64) / 2;
            edge_count = m as f64;
            estimated = false;
        }
        ValidationMode::Sampled { pairs, seed } => {
            let mut rng = rng::stream(seed, Purpose::Sampling, 1, 0);
            let mut hits = 0usize;
            let mut count = 0;
            if n >= 2 {
                for _ in 0..pairs {
                    let i = rng.gen_range(0..n);
                    let mut j = rng.gen_range(0..n - 1);
                    if j >= i {
                        j += 1;
                    }
                    if view.adjacent(i, j) {
                        hits += 1;
                        if colors[i] == colors[j] && colors[i] != UNCOLORED {
                            count += 1;
                            if violations.len() < MAX_REPORTED_VIOLATIONS {
                                let (a, b) = (view.vertex(i.min(j)), view.vertex(i.max(j)));
                                violations.push((a, b));
                            }
                        }
                    }
                }
            }
            violation_count = count;
            pairs_checked = pairs as u64;
            edge_count = if pairs == 0 {
                0.0
            } else {
                hits as f64 / pairs as f64 * (n as f64) * (n.saturating_sub(1) as f64) / 2.0
            };
            estimated = true;
        }
    }
    let uncolored = colors.iter().filter(|&&c| c == UNCOLORED).count();
    let mut used: Vec<u32> = colors.iter().copied().filter(|&c| c != UNCOLORED).collect();
    used.sort_unstable();
    used.dedup();
    Ok(ValidationReport {
        proper: violation_count == 0 && uncolored == 0,
        violations,
        violation_count,
        uncolored,
        pairs_checked,
        colors_used: used.len(),
        color_pct: 100.0 * used.len() as f64 / n.max(1) as f64,
        edge_count,
        edge_count_estimated: estimated,
        peak_conflict_edges: 0,
        ec_max_pct: 0.0,
    })
}

/// [`validate_colors`] on a driver result, with the conflict-edge metric.
pub fn validate(
    view: &EdgeOracleView<'_>,
    result: &ColoringResult,
    mode: ValidationMode,
) -> Result<ValidationReport, ValidationError> {
    let mut report = validate_colors(view, &result.colors, mode)?;
    report.peak_conflict_edges = result.peak_conflict_edges;
    report.ec_max_pct = if report.edge_count > 0.0 {
        100.0 * result.peak_conflict_edges as f64 / report.edge_count
    } else {
        0.0
    };
    Ok(report)
}

/// Vertices grouped by color, groups ordered by color id, members by local
/// index.
pub fn color_classes(colors: &[u32]) -> Vec<Vec<u32>> {
    let mut order: Vec<(u32, u32)> = colors
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != UNCOLORED)
        .map(|(v, &c)| (c, v as u32))
        .collect();
    order.sort_unstable();
    let mut groups: Vec<Vec<u32>> = Vec::new();
    let mut last = None;
    for (c, v) in order {
        if last != Some(c) {
            groups.push(vec![]);
            last = Some(c);
        }
        groups.last_mut().unwrap().push(v);
    }
    groups
}
