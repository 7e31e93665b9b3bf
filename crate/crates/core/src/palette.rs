//! The outer palette loop.
//!
//! Every round works on the still-uncolored vertices `V`:
//!
//! 1. size a fresh palette `[base, base + P)` and a list length `L`;
//! 2. give each vertex `L` distinct random colors from that palette;
//! 3. keep only the view edges whose endpoints' lists meet (conflict graph);
//! 4. vertices outside the conflict graph take their smallest list color;
//! 5. list-color the conflict graph; whatever it cannot color is next
//!    round's `V`.
//!
//! Palettes of different rounds never overlap, so colors fixed in earlier
//! rounds can be ignored entirely.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index;

use crate::conflict::{self, ConflictConfig, ConflictError};
use crate::graph::EdgeOracleView;
use crate::list_coloring::{color_conflict_graph, ConflictStrategy};
use crate::par;
use crate::rng::{self, Purpose};

/// Color slot of a vertex that has not been colored (yet).
pub const UNCOLORED: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DriverError {
    #[error("cannot color an empty vertex set")]
    EmptyView,
    #[error("invalid parameter: {0}")]
    InvalidParams(&'static str),
    #[error("still {remaining} uncolored vertices after {iterations} iterations")]
    IterationLimitExceeded {
        iterations: usize,
        remaining: usize,
        partial: Box<ColoringResult>,
    },
    #[error(transparent)]
    Conflict(#[from] ConflictError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PaletteParams {
    /// Palette size as a percentage of the current vertex count, in `(0, 100]`.
    pub palette_pct: f64,
    /// List length coefficient: `L = round(alpha * ln |V|)`.
    pub alpha: f64,
    pub seed: u64,
    pub max_iterations: usize,
    /// Palette growth factor applied per earlier zero-progress round.
    pub stall_escalation_factor: f64,
}

impl Default for PaletteParams {
    fn default() -> Self {
        Self::normal(0)
    }
}

impl PaletteParams {
    pub fn new(palette_pct: f64, alpha: f64, seed: u64) -> Self {
        Self {
            palette_pct,
            alpha,
            seed,
            max_iterations: 64,
            stall_escalation_factor: 2.0,
        }
    }

    /// 12.5 % palette, `alpha = 2`.
    pub fn normal(seed: u64) -> Self {
        Self::new(12.5, 2.0, seed)
    }

    /// 3 % palette, `alpha = 30`.
    pub fn aggressive(seed: u64) -> Self {
        Self::new(3.0, 30.0, seed)
    }

    pub fn validate(&self) -> Result<(), DriverError> {
        if !(self.palette_pct > 0.0 && self.palette_pct <= 100.0) {
            return Err(DriverError::InvalidParams("palette_pct must be in (0, 100]"));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(DriverError::InvalidParams("alpha must be positive"));
        }
        if self.max_iterations == 0 {
            return Err(DriverError::InvalidParams("max_iterations must be at least 1"));
        }
        if !(self.stall_escalation_factor >= 1.0 && self.stall_escalation_factor.is_finite()) {
            return Err(DriverError::InvalidParams(
                "stall_escalation_factor must be at least 1",
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IterationPlan {
    /// 1-based round number.
    pub iteration: usize,
    pub palette_size: usize,
    /// First color id of this round's palette.
    pub palette_base: usize,
    pub list_size: usize,
}

impl IterationPlan {
    pub fn palette_range(&self) -> core::ops::Range<usize> {
        self.palette_base..self.palette_base + self.palette_size
    }
}

/// Palette and list size for a round over `n_active` vertices, after
/// `stalls` earlier rounds without progress.
pub fn plan_iteration(
    iteration: usize,
    n_active: usize,
    params: &PaletteParams,
    stalls: u32,
    palette_base: usize,
) -> IterationPlan {
    assert!(n_active >= 1, "plan_iteration needs at least one vertex");
    let base_size = libm::ceil(params.palette_pct * n_active as f64 / 100.0).max(1.0);
    let scaled = base_size * libm::pow(params.stall_escalation_factor, stalls as f64);
    let palette_size = libm::ceil(scaled).min(u32::MAX as f64 / 2.0) as usize;
    let list = libm::round(params.alpha * libm::log(n_active as f64));
    let list_size = (list.max(1.0) as usize).clamp(1, palette_size);
    IterationPlan {
        iteration,
        palette_size,
        palette_base,
        list_size,
    }
}

/// Sorted candidate lists, one per view-local vertex, in a fixed-stride
/// layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorLists {
    data: Vec<u32>,
    len: Vec<u32>,
    stride: usize,
}

impl ColorLists {
    /// From explicit lists; each is sorted and deduplicated.
    pub fn from_lists(lists: &[Vec<u32>]) -> Self {
        let stride = lists.iter().map(Vec::len).max().unwrap_or(0);
        let mut data = vec![0u32; stride * lists.len()];
        let mut len = Vec::with_capacity(lists.len());
        for (i, l) in lists.iter().enumerate() {
            let mut l = l.clone();
            l.sort_unstable();
            l.dedup();
            data[i * stride..i * stride + l.len()].copy_from_slice(&l);
            len.push(l.len() as u32);
        }
        Self { data, len, stride }
    }

    pub fn num_vertices(&self) -> usize {
        self.len.len()
    }

    pub fn max_list_len(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn list(&self, i: usize) -> &[u32] {
        let start = i * self.stride;
        &self.data[start..start + self.len[i] as usize]
    }

    /// Words held by the lists.
    pub fn stored_entries(&self) -> usize {
        self.data.len() + self.len.len()
    }
}

/// Draws `L` distinct colors uniformly from the round's palette for each
/// vertex. `vertices` are original ids; a vertex's list depends only on
/// `(seed, round, original id)` and the plan.
pub fn assign_random_lists(plan: &IterationPlan, vertices: &[u32], seed: u64) -> ColorLists {
    let stride = plan.list_size;
    let mut data = vec![0u32; stride * vertices.len()];
    if stride > 0 {
        par::for_each_chunk_mut(&mut data, stride, |i, out| {
            out.copy_from_slice(&random_list(plan, vertices[i], seed));
        });
    }
    ColorLists {
        data,
        len: vec![stride as u32; vertices.len()],
        stride,
    }
}

/// The list [`assign_random_lists`] gives to one vertex.
pub fn random_list(plan: &IterationPlan, vertex: u32, seed: u64) -> Vec<u32> {
    let mut rng = rng::stream(seed, Purpose::ColorList, plan.iteration as u64, vertex as u64);
    let mut list: Vec<u32> = index::sample(&mut rng, plan.palette_size, plan.list_size)
        .into_iter()
        .map(|c| (plan.palette_base + c) as u32)
        .collect();
    list.sort_unstable();
    list
}

/// Gives every vertex not flagged in `in_conflict` the smallest color of its
/// list. `colors` is view-local. Returns how many were colored.
pub fn color_unconflicted(lists: &ColorLists, in_conflict: &[bool], colors: &mut [u32]) -> usize {
    let mut count = 0;
    for (i, &conflicted) in in_conflict.iter().enumerate() {
        if !conflicted {
            if let Some(&c) = lists.list(i).first() {
                colors[i] = c;
                count += 1;
            }
        }
    }
    count
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IterationRecord {
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
    /// Words held by the round's lists, conflict CSR and vertex arrays.
    pub tracked_entries: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub strategy: ConflictStrategy,
    pub conflict: ConflictConfig,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            strategy: ConflictStrategy::Dynamic,
            conflict: ConflictConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColoringResult {
    /// Final color per vertex of the input view (local order), or
    /// [`UNCOLORED`].
    pub colors: Vec<u32>,
    /// Round in which each vertex was colored (0 if never).
    pub colored_at: Vec<u32>,
    pub iterations: Vec<IterationRecord>,
    /// Distinct colors used.
    pub num_colors: usize,
    /// Sum of all palette sizes.
    pub palette_total: usize,
    pub peak_conflict_edges: usize,
    pub peak_tracked_entries: usize,
}

impl ColoringResult {
    pub fn num_vertices(&self) -> usize {
        self.colors.len()
    }

    pub fn is_complete(&self) -> bool {
        self.colors.iter().all(|&c| c != UNCOLORED)
    }

    /// Peak number of stored conflict adjacency entries (`2 |E_c|`).
    pub fn peak_edge_entries(&self) -> usize {
        2 * self.peak_conflict_edges
    }

    pub fn color_pct(&self) -> f64 {
        100.0 * self.num_colors as f64 / self.num_vertices().max(1) as f64
    }

    fn count_colors(&mut self) {
        let mut used: Vec<u32> = self.colors.iter().copied().filter(|&c| c != UNCOLORED).collect();
        used.sort_unstable();
        used.dedup();
        self.num_colors = used.len();
    }
}

/// Colors every vertex of `view`.
pub fn run(
    view: &EdgeOracleView<'_>,
    params: &PaletteParams,
    options: &RunOptions,
) -> Result<ColoringResult, DriverError> {
    params.validate()?;
    if view.is_empty() {
        return Err(DriverError::EmptyView);
    }
    let n = view.len();
    let mut result = ColoringResult {
        colors: vec![UNCOLORED; n],
        colored_at: vec![0; n],
        iterations: Vec::new(),
        num_colors: 0,
        palette_total: 0,
        peak_conflict_edges: 0,
        peak_tracked_entries: 0,
    };

    let mut current = view.clone();
    let mut palette_base = 0usize;
    let mut stalls = 0u32;
    let mut iteration = 1usize;
    while !current.is_empty() {
        if iteration > params.max_iterations {
            result.count_colors();
            let remaining = current.len();
            return Err(DriverError::IterationLimitExceeded {
                iterations: params.max_iterations,
                remaining,
                partial: Box::new(result),
            });
        }
        let n_active = current.len();
        let plan = plan_iteration(iteration, n_active, params, stalls, palette_base);
        let lists = assign_random_lists(&plan, current.vertices(), params.seed);
        let gc = conflict::build(&current, &lists, &options.conflict)?;
        let in_conflict = gc.membership(n_active);

        let mut round_colors = vec![UNCOLORED; n_active];
        let colored_unconflicted = color_unconflicted(&lists, &in_conflict, &mut round_colors);

        let mut rng = rng::stream(params.seed, Purpose::ConflictColoring, iteration as u64, 0);
        let outcome = color_conflict_graph(&gc, &lists, options.strategy, &mut rng);
        for (k, c) in outcome.colors.iter().enumerate() {
            if let Some(c) = c {
                round_colors[gc.members()[k] as usize] = *c;
            }
        }
        let mut residue: Vec<usize> = outcome
            .uncolored
            .iter()
            .map(|&k| gc.members()[k as usize] as usize)
            .collect();
        residue.sort_unstable();

        for (local, &c) in round_colors.iter().enumerate() {
            if c != UNCOLORED {
                let top = view
                    .local_index(current.vertex(local))
                    .expect("active vertex belongs to the input view");
                result.colors[top] = c;
                result.colored_at[top] = iteration as u32;
            }
        }

        let colored_in_conflict = outcome.stats.picks;
        // lists + conflict CSR + active ids + membership flags + round colors
        let tracked = lists.stored_entries() + gc.stored_entries() + 3 * n_active;
        result.iterations.push(IterationRecord {
            iteration,
            active: n_active,
            palette_base,
            palette_size: plan.palette_size,
            list_size: plan.list_size,
            conflict_vertices: gc.num_members(),
            conflict_edges: gc.edge_count(),
            colored_unconflicted,
            colored_in_conflict,
            uncolored: residue.len(),
            tracked_entries: tracked,
        });
        result.peak_conflict_edges = result.peak_conflict_edges.max(gc.edge_count());
        result.peak_tracked_entries = result.peak_tracked_entries.max(tracked);
        result.palette_total += plan.palette_size;

        if colored_unconflicted + colored_in_conflict == 0 {
            stalls += 1;
        }
        palette_base += plan.palette_size;
        iteration += 1;
        current = current
            .induce_local(&residue)
            .expect("residue is a subset of the active set");
    }
    result.count_colors();
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ExplicitGraph;

    #[test]
    fn plan_normal_configuration() {
        let p = PaletteParams::normal(0);
        let plan = plan_iteration(1, 1000, &p, 0, 0);
        assert_eq!(plan.palette_size, 125);
        assert_eq!(plan.list_size, 14);
        assert_eq!(plan.palette_base, 0);
        let next = plan_iteration(2, 400, &p, 0, plan.palette_size);
        assert_eq!(next.palette_base, 125);
        assert!(next.palette_range().start >= plan.palette_range().end);
    }

    #[test]
    fn plan_clamps() {
        for p in [PaletteParams::normal(0), PaletteParams::aggressive(0), PaletteParams::new(100.0, 50.0, 1)] {
            let plan = plan_iteration(1, 1, &p, 0, 0);
            assert_eq!((plan.palette_size, plan.list_size), (1, 1));
        }
        // aggressive at n = 2000: list would be 228 but the palette is 60
        let plan = plan_iteration(1, 2000, &PaletteParams::aggressive(0), 0, 0);
        assert_eq!((plan.palette_size, plan.list_size), (60, 60));
    }

    #[test]
    fn plan_escalates_after_stalls() {
        let p = PaletteParams::normal(0);
        assert_eq!(plan_iteration(3, 1000, &p, 2, 0).palette_size, 500);
    }

    #[test]
    fn lists_degenerate_cases() {
        let plan = IterationPlan {
            iteration: 1,
            palette_size: 1,
            palette_base: 4,
            list_size: 1,
        };
        let lists = assign_random_lists(&plan, &[0, 1, 2], 9);
        for i in 0..3 {
            assert_eq!(lists.list(i), &[4]);
        }
        let plan = IterationPlan {
            iteration: 1,
            palette_size: 10,
            palette_base: 0,
            list_size: 10,
        };
        let lists = assign_random_lists(&plan, &[5, 6], 9);
        assert_eq!(lists.list(1), &(0..10).collect::<Vec<u32>>()[..]);
    }

    #[test]
    fn lists_follow_original_ids() {
        let plan = IterationPlan {
            iteration: 2,
            palette_size: 50,
            palette_base: 100,
            list_size: 6,
        };
        let a = assign_random_lists(&plan, &[3, 8, 11], 42);
        let b = assign_random_lists(&plan, &[11, 3], 42);
        assert_eq!(a.list(0), b.list(1));
        assert_eq!(a.list(2), b.list(0));
        for i in 0..3 {
            let l = a.list(i);
            assert!(l.windows(2).all(|w| w[0] < w[1]));
            assert!(l.iter().all(|&c| (100..150).contains(&c)));
        }
    }

    #[test]
    fn unconflicted_take_smallest() {
        let lists = ColorLists::from_lists(&[vec![3, 9], vec![7], vec![1, 2]]);
        let mut colors = vec![UNCOLORED; 3];
        assert_eq!(color_unconflicted(&lists, &[false, true, false], &mut colors), 2);
        assert_eq!(colors, vec![3, UNCOLORED, 1]);
        let mut colors = vec![UNCOLORED; 3];
        assert_eq!(color_unconflicted(&lists, &[true; 3], &mut colors), 0);
    }

    #[test]
    fn single_vertex_run() {
        let g = ExplicitGraph::empty(1);
        let r = run(&EdgeOracleView::explicit(&g), &PaletteParams::normal(3), &RunOptions::default()).unwrap();
        assert_eq!(r.num_colors, 1);
        assert_eq!(r.iterations.len(), 1);
    }

    #[test]
    fn k5_needs_five_colors() {
        let g = ExplicitGraph::empty(5);
        let view = EdgeOracleView::explicit_complement(&g);
        let params = PaletteParams::new(100.0, 10.0, 1);
        let r = run(&view, &params, &RunOptions::default()).unwrap();
        assert_eq!(r.num_colors, 5);
        assert!(r.is_complete());
    }

    #[test]
    fn edgeless_colors_in_one_round() {
        let g = ExplicitGraph::empty(100);
        let r = run(&EdgeOracleView::explicit(&g), &PaletteParams::normal(5), &RunOptions::default()).unwrap();
        assert_eq!(r.iterations.len(), 1);
        assert_eq!(r.iterations[0].colored_unconflicted, 100);
        assert!(r.num_colors <= r.iterations[0].palette_size);
    }

    #[test]
    fn iteration_limit_returns_partial() {
        let g = ExplicitGraph::empty(40);
        let view = EdgeOracleView::explicit_complement(&g);
        let mut params = PaletteParams::new(1.0, 1.0, 2);
        params.max_iterations = 3;
        match run(&view, &params, &RunOptions::default()) {
            Err(DriverError::IterationLimitExceeded { iterations, remaining, partial }) => {
                assert_eq!(iterations, 3);
                assert_eq!(remaining, 37);
                assert_eq!(partial.iterations.len(), 3);
                assert_eq!(partial.num_colors, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_params() {
        let g = ExplicitGraph::empty(2);
        let view = EdgeOracleView::explicit(&g);
        let bad = PaletteParams::new(0.0, 2.0, 0);
        assert!(matches!(run(&view, &bad, &RunOptions::default()), Err(DriverError::InvalidParams(_))));
        let empty = view.induce(&[]).unwrap();
        assert_eq!(run(&empty, &PaletteParams::normal(0), &RunOptions::default()), Err(DriverError::EmptyView));
    }
}
