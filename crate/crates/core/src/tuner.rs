//! Choosing `(palette_pct, alpha)`.
//!
//! A sweep runs the driver over a grid of palette percentages and list
//! coefficients. For a weight `beta` the best cell minimizes
//! `beta * C/n + (1 - beta) * Ec/m`, the color fraction against the peak
//! conflict-edge fraction. The per-`beta` winners of several instances form
//! a training set for a k-nearest-neighbor predictor keyed on
//! `(beta, ln n, ln m)`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::graph::EdgeOracleView;
use crate::palette::{self, DriverError, PaletteParams, RunOptions};
use crate::par;

pub const DEFAULT_GRID_PALETTE_PCT: [f64; 9] = [1.0, 2.5, 5.0, 7.5, 10.0, 12.5, 15.0, 17.5, 20.0];
pub const DEFAULT_GRID_ALPHA: [f64; 9] = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5];
pub const DEFAULT_BETAS: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TunerError {
    #[error("sweep grid or seed list is empty")]
    EmptyGrid,
    #[error("no sweep records to select from")]
    EmptyRecords,
    #[error("beta must lie in [0, 1], got {0}")]
    BadBeta(f64),
    #[error("predictor has no training points")]
    UntrainedModel,
}

/// Source of wall-clock seconds; the core crate has no clock of its own.
pub trait Clock: Sync {
    fn now_secs(&self) -> f64;
}

/// Reports zero for every reading.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn now_secs(&self) -> f64 {
        0.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceInfo {
    pub id: String,
    pub n: usize,
    /// Complement edge count (exact, or a sampled estimate).
    pub m: f64,
}

/// One driver run of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub instance: String,
    pub n: usize,
    pub m: f64,
    pub palette_pct: f64,
    pub alpha: f64,
    pub colors: usize,
    pub ec_max: usize,
    pub runtime_s: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellFailure {
    pub palette_pct: f64,
    pub alpha: f64,
    pub seed: u64,
    pub error: DriverError,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepReport {
    /// Successful runs in grid order: palette outer, alpha, then seed.
    pub records: Vec<SweepRecord>,
    pub failures: Vec<CellFailure>,
}

#[allow(clippy::too_many_arguments)]
pub fn sweep<C: Clock>(
    view: &EdgeOracleView<'_>,
    instance: &InstanceInfo,
    grid_palette_pct: &[f64],
    grid_alpha: &[f64],
    seeds: &[u64],
    template: &PaletteParams,
    options: &RunOptions,
    clock: &C,
) -> Result<SweepReport, TunerError> {
    if grid_palette_pct.is_empty() || grid_alpha.is_empty() || seeds.is_empty() {
        return Err(TunerError::EmptyGrid);
    }
    let cells: Vec<(f64, f64, u64)> = grid_palette_pct
        .iter()
        .flat_map(|&p| {
            grid_alpha
                .iter()
                .flat_map(move |&a| seeds.iter().map(move |&s| (p, a, s)))
        })
        .collect();
    let outcomes = par::map_range(cells.len(), |k| {
        let (p, a, s) = cells[k];
        let params = PaletteParams {
            palette_pct: p,
            alpha: a,
            seed: s,
            ..*template
        };
        let start = clock.now_secs();
        let res = palette::run(view, &params, options);
        let elapsed = clock.now_secs() - start;
        res.map(|r| SweepRecord {
            instance: instance.id.clone(),
            n: instance.n,
            m: instance.m,
            palette_pct: p,
            alpha: a,
            colors: r.num_colors,
            ec_max: r.peak_conflict_edges,
            runtime_s: elapsed,
            seed: s,
        })
    });
    let mut report = SweepReport::default();
    for ((p, a, s), out) in cells.into_iter().zip(outcomes) {
        match out {
            Ok(rec) => report.records.push(rec),
            Err(error) => report.failures.push(CellFailure {
                palette_pct: p,
                alpha: a,
                seed: s,
                error,
            }),
        }
    }
    Ok(report)
}

/// Seed-averaged grid cell of one instance, normalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellSummary {
    pub palette_pct: f64,
    pub alpha: f64,
    pub mean_colors: f64,
    pub mean_ec_max: f64,
    /// `mean_colors / n`.
    pub color_frac: f64,
    /// `mean_ec_max / m`.
    pub ec_frac: f64,
    pub runs: usize,
}

/// Averages records sharing `(palette_pct, alpha)`. All records must come
/// from one instance. Cells keep first-appearance order.
pub fn summarize(records: &[SweepRecord]) -> Vec<CellSummary> {
    let mut cells: Vec<CellSummary> = Vec::new();
    for r in records {
        let cell = match cells
            .iter_mut()
            .find(|c| c.palette_pct == r.palette_pct && c.alpha == r.alpha)
        {
            Some(c) => c,
            None => {
                cells.push(CellSummary {
                    palette_pct: r.palette_pct,
                    alpha: r.alpha,
                    mean_colors: 0.0,
                    mean_ec_max: 0.0,
                    color_frac: 0.0,
                    ec_frac: 0.0,
                    runs: 0,
                });
                cells.last_mut().unwrap()
            }
        };
        cell.mean_colors += r.colors as f64;
        cell.mean_ec_max += r.ec_max as f64;
        cell.runs += 1;
    }
    let (n, m) = records
        .first()
        .map(|r| (r.n as f64, r.m))
        .unwrap_or((1.0, 1.0));
    for c in &mut cells {
        c.mean_colors /= c.runs as f64;
        c.mean_ec_max /= c.runs as f64;
        c.color_frac = c.mean_colors / n.max(1.0);
        c.ec_frac = if m > 0.0 { c.mean_ec_max / m } else { 0.0 };
    }
    cells
}

/// `beta * color_frac + (1 - beta) * ec_frac`.
pub fn objective(cell: &CellSummary, beta: f64) -> f64 {
    beta * cell.color_frac + (1.0 - beta) * cell.ec_frac
}

/// Grid argmin of the weighted objective over one instance's records; ties
/// go to the smaller conflict fraction, then the smaller palette, then the
/// smaller alpha.
pub fn select_optimal(records: &[SweepRecord], beta: f64) -> Result<(f64, f64), TunerError> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(TunerError::BadBeta(beta));
    }
    let cells = summarize(records);
    let best = cells
        .iter()
        .min_by(|a, b| {
            objective(a, beta)
                .total_cmp(&objective(b, beta))
                .then(a.ec_frac.total_cmp(&b.ec_frac))
                .then(a.palette_pct.total_cmp(&b.palette_pct))
                .then(a.alpha.total_cmp(&b.alpha))
        })
        .ok_or(TunerError::EmptyRecords)?;
    Ok((best.palette_pct, best.alpha))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainingPoint {
    pub beta: f64,
    pub n: usize,
    pub m: f64,
    pub palette_pct: f64,
    pub alpha: f64,
}

impl TrainingPoint {
    fn features(&self) -> [f64; 3] {
        features(self.beta, self.n, self.m)
    }
}

fn features(beta: f64, n: usize, m: f64) -> [f64; 3] {
    [beta, libm::log((n as f64).max(1.0)), libm::log(m.max(1.0))]
}

/// One training point per `(instance, beta)`. Instances keep
/// first-appearance order.
pub fn training_points(records: &[SweepRecord], betas: &[f64]) -> Result<Vec<TrainingPoint>, TunerError> {
    let mut ids: Vec<&str> = Vec::new();
    for r in records {
        if !ids.contains(&r.instance.as_str()) {
            ids.push(&r.instance);
        }
    }
    let mut out = Vec::new();
    for id in ids {
        let recs: Vec<SweepRecord> = records.iter().filter(|r| r.instance == id).cloned().collect();
        for &beta in betas {
            let (p, a) = select_optimal(&recs, beta)?;
            out.push(TrainingPoint {
                beta,
                n: recs[0].n,
                m: recs[0].m,
                palette_pct: p,
                alpha: a,
            });
        }
    }
    Ok(out)
}

/// Anything that maps `(beta, n, m)` to a parameter pair.
pub trait ParamPredictor {
    fn predict(&self, beta: f64, n: usize, m: f64) -> Result<(f64, f64), TunerError>;
}

/// Inverse-distance-weighted k-nearest-neighbor regression over
/// standardized features, snapped to the sweep grid.
#[derive(Debug, Clone, PartialEq)]
pub struct KnnPredictor {
    points: Vec<TrainingPoint>,
    mean: [f64; 3],
    scale: [f64; 3],
    k: usize,
    grid_palette_pct: Vec<f64>,
    grid_alpha: Vec<f64>,
}

impl KnnPredictor {
    pub const DEFAULT_K: usize = 3;

    pub fn train(points: Vec<TrainingPoint>, grid_palette_pct: &[f64], grid_alpha: &[f64], k: usize) -> Self {
        let count = points.len().max(1) as f64;
        let mut mean = [0.0; 3];
        for p in &points {
            for (m, f) in mean.iter_mut().zip(p.features()) {
                *m += f / count;
            }
        }
        let mut var = [0.0; 3];
        for p in &points {
            for ((v, f), m) in var.iter_mut().zip(p.features()).zip(mean) {
                *v += (f - m) * (f - m) / count;
            }
        }
        let scale = var.map(|v| if v > 0.0 { libm::sqrt(v) } else { 1.0 });
        Self {
            points,
            mean,
            scale,
            k: k.max(1),
            grid_palette_pct: grid_palette_pct.to_vec(),
            grid_alpha: grid_alpha.to_vec(),
        }
    }

    pub fn points(&self) -> &[TrainingPoint] {
        &self.points
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn grid_palette_pct(&self) -> &[f64] {
        &self.grid_palette_pct
    }

    pub fn grid_alpha(&self) -> &[f64] {
        &self.grid_alpha
    }

    fn standardize(&self, f: [f64; 3]) -> [f64; 3] {
        [
            (f[0] - self.mean[0]) / self.scale[0],
            (f[1] - self.mean[1]) / self.scale[1],
            (f[2] - self.mean[2]) / self.scale[2],
        ]
    }

    /// The `k` nearest training points as `(index, distance)`.
    pub fn neighbors(&self, beta: f64, n: usize, m: f64) -> Vec<(usize, f64)> {
        let q = self.standardize(features(beta, n, m));
        let mut d: Vec<(usize, f64)> = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let x = self.standardize(p.features());
                let s: f64 = (0..3).map(|j| (x[j] - q[j]) * (x[j] - q[j])).sum();
                (i, libm::sqrt(s))
            })
            .collect();
        d.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        d.truncate(self.k);
        d
    }

    /// Weighted neighbor average before snapping.
    pub fn predict_raw(&self, beta: f64, n: usize, m: f64) -> Result<(f64, f64), TunerError> {
        if self.points.is_empty() {
            return Err(TunerError::UntrainedModel);
        }
        let nb = self.neighbors(beta, n, m);
        let exact: Vec<&(usize, f64)> = nb.iter().filter(|(_, d)| *d <= 1e-12).collect();
        let weighted: Vec<(usize, f64)> = if exact.is_empty() {
            nb.iter().map(|&(i, d)| (i, 1.0 / d)).collect()
        } else {
            exact.iter().map(|&&(i, _)| (i, 1.0)).collect()
        };
        let total: f64 = weighted.iter().map(|w| w.1).sum();
        let mut p = 0.0;
        let mut a = 0.0;
        for (i, w) in weighted {
            p += w * self.points[i].palette_pct / total;
            a += w * self.points[i].alpha / total;
        }
        Ok((p, a))
    }
}

impl ParamPredictor for KnnPredictor {
    fn predict(&self, beta: f64, n: usize, m: f64) -> Result<(f64, f64), TunerError> {
        let (p, a) = self.predict_raw(beta, n, m)?;
        Ok((snap(p, &self.grid_palette_pct), snap(a, &self.grid_alpha)))
    }
}

/// Nearest grid value, ties to the smaller one. An empty grid returns `x`.
pub fn snap(x: f64, grid: &[f64]) -> f64 {
    grid.iter()
        .copied()
        .min_by(|a, b| {
            libm::fabs(a - x)
                .total_cmp(&libm::fabs(b - x))
                .then(a.total_cmp(b))
        })
        .unwrap_or(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn rec(p: f64, a: f64, colors: usize, ec: usize) -> SweepRecord {
        SweepRecord {
            instance: "i".to_string(),
            n: 100,
            m: 1000.0,
            palette_pct: p,
            alpha: a,
            colors,
            ec_max: ec,
            runtime_s: 0.0,
            seed: 0,
        }
    }

    #[test]
    fn two_cell_tradeoff() {
        // (C/n, Ec/m) = (0.2, 0.5) vs (0.3, 0.1)
        let recs = vec![rec(5.0, 1.0, 20, 500), rec(10.0, 1.0, 30, 100)];
        assert_eq!(select_optimal(&recs, 0.5).unwrap(), (10.0, 1.0));
        assert_eq!(select_optimal(&recs, 1.0).unwrap(), (5.0, 1.0));
        assert_eq!(select_optimal(&recs, 0.0).unwrap(), (10.0, 1.0));
        assert_eq!(select_optimal(&[], 0.5), Err(TunerError::EmptyRecords));
        assert_eq!(select_optimal(&recs, 1.5), Err(TunerError::BadBeta(1.5)));
    }

    #[test]
    fn ties_prefer_fewer_conflicts_then_smaller_palette() {
        let recs = vec![rec(10.0, 1.0, 20, 100), rec(5.0, 2.0, 20, 100), rec(2.5, 3.0, 20, 200)];
        assert_eq!(select_optimal(&recs, 1.0).unwrap(), (5.0, 2.0));
    }

    #[test]
    fn seeds_are_averaged() {
        let mut a = rec(5.0, 1.0, 10, 100);
        let mut b = rec(5.0, 1.0, 30, 300);
        a.seed = 1;
        b.seed = 2;
        let cells = summarize(&[a, b]);
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].mean_colors, 20.0);
        assert_eq!(cells[0].ec_frac, 0.2);
    }

    #[test]
    fn single_point_predictor() {
        let pt = TrainingPoint {
            beta: 0.5,
            n: 1000,
            m: 2.5e5,
            palette_pct: 7.5,
            alpha: 2.0,
        };
        let model = KnnPredictor::train(vec![pt], &DEFAULT_GRID_PALETTE_PCT, &DEFAULT_GRID_ALPHA, 3);
        assert_eq!(model.predict(0.9, 50, 10.0).unwrap(), (7.5, 2.0));
        let empty = KnnPredictor::train(vec![], &DEFAULT_GRID_PALETTE_PCT, &DEFAULT_GRID_ALPHA, 3);
        assert_eq!(empty.predict(0.5, 10, 10.0), Err(TunerError::UntrainedModel));
    }

    #[test]
    fn exact_match_returns_its_target() {
        let pts: Vec<TrainingPoint> = (0..6)
            .map(|i| TrainingPoint {
                beta: 0.1 * i as f64,
                n: 1000 * (i + 1),
                m: 1e5 * (i + 1) as f64,
                palette_pct: DEFAULT_GRID_PALETTE_PCT[i],
                alpha: DEFAULT_GRID_ALPHA[8 - i],
            })
            .collect();
        let model = KnnPredictor::train(pts.clone(), &DEFAULT_GRID_PALETTE_PCT, &DEFAULT_GRID_ALPHA, 3);
        for p in &pts {
            assert_eq!(model.predict(p.beta, p.n, p.m).unwrap(), (p.palette_pct, p.alpha));
        }
    }

    #[test]
    fn snapping() {
        assert_eq!(snap(3.7, &DEFAULT_GRID_PALETTE_PCT), 2.5);
        assert_eq!(snap(3.75, &DEFAULT_GRID_PALETTE_PCT), 2.5);
        assert_eq!(snap(99.0, &DEFAULT_GRID_ALPHA), 4.5);
    }
}
