//! Edge oracles: the implicit commutation graph of a [`PauliSet`], stored CSR
//! graphs, and logical complements of stored graphs, all seen through
//! [`EdgeOracleView`] restricted to an active vertex subset.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::par;
use crate::pauli::PauliSet;
use crate::rng::{self, Purpose};

/// Largest active set for which exact O(n²) enumeration is allowed.
pub const EXACT_ENUMERATION_LIMIT: usize = 20_000;

const INACTIVE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex index {index} out of range for {n} vertices")]
    BadIndex { index: u64, n: usize },
    #[error("vertex {0} is not in the active set")]
    InactiveVertex(u32),
    #[error("vertex {0} queried against itself")]
    SameVertex(u32),
    #[error("vertex {0} is not part of the current view")]
    NotSubset(u32),
    #[error("vertex {0} listed twice")]
    DuplicateVertex(u32),
    #[error("{n} vertices exceeds the exact enumeration limit of {limit}")]
    TooLargeForExact { n: usize, limit: usize },
    #[error("malformed CSR: {0}")]
    MalformedCsr(&'static str),
}

/// Undirected simple graph in CSR form. Each edge is stored in both rows and
/// every row is strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExplicitGraph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl ExplicitGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            offsets: vec![0; n + 1],
            neighbors: Vec::new(),
        }
    }

    /// Builds a canonical CSR from arbitrary undirected pairs. Duplicates
    /// (in either orientation) collapse; self-loops are dropped and counted.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<(Self, usize), GraphError>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut pairs = Vec::new();
        let mut self_loops = 0;
        for (u, v) in edges {
            for w in [u, v] {
                if w as usize >= n {
                    return Err(GraphError::BadIndex {
                        index: w as u64,
                        n,
                    });
                }
            }
            if u == v {
                self_loops += 1;
                continue;
            }
            pairs.push((u.min(v), u.max(v)));
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok((Self::from_unique_pairs(n, &pairs), self_loops))
    }

    /// Two-pass CSR construction (count, exclusive scan, place, per-row
    /// sort) from pairs that are already unique and self-loop free.
    pub fn from_unique_pairs(n: usize, pairs: &[(u32, u32)]) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for &(u, v) in pairs {
            offsets[u as usize + 1] += 1;
            offsets[v as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets[..n].to_vec();
        let mut neighbors = vec![0u32; offsets[n]];
        for &(u, v) in pairs {
            neighbors[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        for i in 0..n {
            neighbors[offsets[i]..offsets[i + 1]].sort_unstable();
        }
        Self { offsets, neighbors }
    }

    /// Adopts raw CSR arrays after checking every structural invariant.
    pub fn from_csr(offsets: Vec<usize>, neighbors: Vec<u32>) -> Result<Self, GraphError> {
        if offsets.is_empty() || offsets[0] != 0 {
            return Err(GraphError::MalformedCsr("offsets must start at 0"));
        }
        let n = offsets.len() - 1;
        if offsets.windows(2).any(|w| w[0] > w[1]) || offsets[n] != neighbors.len() {
            return Err(GraphError::MalformedCsr("offsets not monotone"));
        }
        let g = Self { offsets, neighbors };
        for u in 0..n {
            let row = g.neighbors(u as u32);
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(GraphError::MalformedCsr("row not strictly increasing"));
            }
            for &v in row {
                if v as usize >= n {
                    return Err(GraphError::BadIndex {
                        index: v as u64,
                        n,
                    });
                }
                if v as usize == u {
                    return Err(GraphError::MalformedCsr("self-loop"));
                }
                if g.neighbors(v).binary_search(&(u as u32)).is_err() {
                    return Err(GraphError::MalformedCsr("asymmetric adjacency"));
                }
            }
        }
        Ok(g)
    }

    pub fn num_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn num_edges(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn neighbor_array(&self) -> &[u32] {
        &self.neighbors
    }

    #[inline]
    pub fn neighbors(&self, u: u32) -> &[u32] {
        &self.neighbors[self.offsets[u as usize]..self.offsets[u as usize + 1]]
    }

    #[inline]
    pub fn degree(&self, u: u32) -> usize {
        self.offsets[u as usize + 1] - self.offsets[u as usize]
    }

    /// O(log δ) lookup on the shorter row.
    #[inline]
    pub fn contains_edge(&self, u: u32, v: u32) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.num_vertices() as u32)
            .map(|u| self.degree(u))
            .max()
            .unwrap_or(0)
    }

    /// Each undirected edge once as `(u, v)` with `u < v`, in row order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.num_vertices() as u32).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }
}

/// Smallest-last (degeneracy) order: repeatedly delete a vertex of minimum
/// remaining degree, ties to the smallest id, and return the deletions
/// reversed.
pub fn smallest_last_order(g: &ExplicitGraph) -> Vec<u32> {
    use alloc::collections::BinaryHeap;
    use core::cmp::Reverse;

    let n = g.num_vertices();
    let mut degree: Vec<usize> = (0..n as u32).map(|u| g.degree(u)).collect();
    let mut removed = vec![false; n];
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> =
        (0..n as u32).map(|u| Reverse((degree[u as usize], u))).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse((d, u))) = heap.pop() {
        if removed[u as usize] || d != degree[u as usize] {
            continue;
        }
        removed[u as usize] = true;
        order.push(u);
        for &w in g.neighbors(u) {
            if !removed[w as usize] {
                degree[w as usize] -= 1;
                heap.push(Reverse((degree[w as usize], w)));
            }
        }
    }
    order.reverse();
    order
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViewMode {
    /// Commutation graph of a Pauli set, derived on demand.
    ImplicitComplement,
    Explicit,
    /// Logical complement of a stored graph; never materialized.
    ExplicitComplement,
}

#[derive(Debug, Clone, Copy)]
enum Backing<'a> {
    Pauli(&'a PauliSet),
    Graph(&'a ExplicitGraph),
}

/// Read-only edge oracle restricted to an active vertex list.
///
/// Vertices are addressed two ways: by *original id* in the backing universe
/// and by *local index* (position in [`vertices`](Self::vertices)). The
/// checked public queries take original ids; the hot-path
/// [`adjacent`](Self::adjacent) takes local indices.
#[derive(Debug, Clone)]
pub struct EdgeOracleView<'a> {
    backing: Backing<'a>,
    mode: ViewMode,
    active: Vec<u32>,
    position: Vec<u32>,
}

impl<'a> EdgeOracleView<'a> {
    pub fn pauli(set: &'a PauliSet) -> Self {
        Self::full(Backing::Pauli(set), ViewMode::ImplicitComplement, set.len())
    }

    pub fn explicit(graph: &'a ExplicitGraph) -> Self {
        Self::full(Backing::Graph(graph), ViewMode::Explicit, graph.num_vertices())
    }

    pub fn explicit_complement(graph: &'a ExplicitGraph) -> Self {
        Self::full(
            Backing::Graph(graph),
            ViewMode::ExplicitComplement,
            graph.num_vertices(),
        )
    }

    fn full(backing: Backing<'a>, mode: ViewMode, n: usize) -> Self {
        assert!(n < INACTIVE as usize, "vertex ids must fit in u32");
        Self {
            backing,
            mode,
            active: (0..n as u32).collect(),
            position: (0..n as u32).collect(),
        }
    }

    pub fn mode(&self) -> ViewMode {
        self.mode
    }

    pub fn pauli_set(&self) -> Option<&'a PauliSet> {
        match self.backing {
            Backing::Pauli(p) => Some(p),
            Backing::Graph(_) => None,
        }
    }

    /// Size of the backing vertex universe.
    pub fn universe_len(&self) -> usize {
        self.position.len()
    }

    pub fn len(&self) -> usize {
        self.active.len()
    }

    pub fn is_empty(&self) -> bool {
        self.active.is_empty()
    }

    /// Active original ids, in local-index order.
    pub fn vertices(&self) -> &[u32] {
        &self.active
    }

    #[inline]
    pub fn vertex(&self, local: usize) -> u32 {
        self.active[local]
    }

    pub fn local_index(&self, original: u32) -> Option<usize> {
        match self.position.get(original as usize) {
            Some(&p) if p != INACTIVE => Some(p as usize),
            _ => None,
        }
    }

    /// Edge test on local indices `i != j`.
    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        debug_assert_ne!(i, j);
        let (u, v) = (self.active[i], self.active[j]);
        match (self.backing, self.mode) {
            (Backing::Pauli(set), _) => !set.anticommutes(u as usize, v as usize),
            (Backing::Graph(g), ViewMode::Explicit) => g.contains_edge(u, v),
            (Backing::Graph(g), _) => !g.contains_edge(u, v),
        }
    }

    pub fn has_edge(&self, u: u32, v: u32) -> Result<bool, GraphError> {
        let i = self.local_index(u).ok_or(GraphError::InactiveVertex(u))?;
        let j = self.local_index(v).ok_or(GraphError::InactiveVertex(v))?;
        if i == j {
            return Err(GraphError::SameVertex(u));
        }
        Ok(self.adjacent(i, j))
    }

    /// Restriction to `vertices` (original ids, which must be active and
    /// distinct). Local order follows the argument order.
    pub fn induce(&self, vertices: &[u32]) -> Result<Self, GraphError> {
        let mut position = vec![INACTIVE; self.position.len()];
        for (k, &v) in vertices.iter().enumerate() {
            if self.local_index(v).is_none() {
                return Err(GraphError::NotSubset(v));
            }
            if position[v as usize] != INACTIVE {
                return Err(GraphError::DuplicateVertex(v));
            }
            position[v as usize] = k as u32;
        }
        Ok(Self {
            backing: self.backing,
            mode: self.mode,
            active: vertices.to_vec(),
            position,
        })
    }

    /// Restriction to a list of local indices of this view.
    pub fn induce_local(&self, locals: &[usize]) -> Result<Self, GraphError> {
        let ids: Vec<u32> = locals
            .iter()
            .map(|&i| {
                self.active
                    .get(i)
                    .copied()
                    .ok_or(GraphError::BadIndex {
                        index: i as u64,
                        n: self.len(),
                    })
            })
            .collect::<Result<_, _>>()?;
        self.induce(&ids)
    }

    /// Degree of every active vertex (local order), computed exactly.
    pub fn degrees(&self) -> Result<Vec<usize>, GraphError> {
        let n = self.len();
        if n > EXACT_ENUMERATION_LIMIT {
            return Err(GraphError::TooLargeForExact {
                n,
                limit: EXACT_ENUMERATION_LIMIT,
            });
        }
        Ok(self.degrees_unchecked())
    }

    pub(crate) fn degrees_unchecked(&self) -> Vec<usize> {
        let n = self.len();
        match (self.backing, self.mode) {
            (Backing::Graph(g), mode) => self
                .active
                .iter()
                .map(|&u| {
                    let inside = g
                        .neighbors(u)
                        .iter()
                        .filter(|&&w| self.local_index(w).is_some())
                        .count();
                    if mode == ViewMode::Explicit {
                        inside
                    } else {
                        n - 1 - inside
                    }
                })
                .collect(),
            (Backing::Pauli(_), _) => par::map_range(n, |i| {
                (0..n).filter(|&j| j != i && self.adjacent(i, j)).count()
            }),
        }
    }

    /// Exact edge count of the view.
    pub fn count_edges(&self) -> Result<u64, GraphError> {
        Ok(self.degrees()?.iter().map(|&d| d as u64).sum::<u64>() / 2)
    }

    pub fn degree_stats(&self, mode: DegreeMode) -> Result<DegreeStats, GraphError> {
        match mode {
            DegreeMode::Exact => Ok(DegreeStats::from_degrees(&self.degrees()?)),
            DegreeMode::Sampled { samples, seed } => Ok(self.sampled_stats(samples, seed)),
        }
    }

    /// Exact below [`EXACT_ENUMERATION_LIMIT`], sampled with `samples` pairs
    /// above it.
    pub fn degree_stats_auto(&self, samples: usize, seed: u64) -> DegreeStats {
        if self.len() <= EXACT_ENUMERATION_LIMIT {
            DegreeStats::from_degrees(&self.degrees_unchecked())
        } else {
            self.sampled_stats(samples, seed)
        }
    }

    fn sampled_stats(&self, samples: usize, seed: u64) -> DegreeStats {
        let n = self.len();
        if n < 2 || samples == 0 {
            return DegreeStats {
                max_degree: None,
                avg_degree: 0.0,
                edge_count: 0.0,
                histogram: Vec::new(),
                sample: Some(SampleInfo { samples, seed }),
            };
        }
        let mut rng = rng::stream(seed, Purpose::Sampling, 0, 0);
        let mut hits = 0usize;
        for _ in 0..samples {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            if self.adjacent(i, j) {
                hits += 1;
            }
        }
        let density = hits as f64 / samples as f64;
        DegreeStats {
            max_degree: None,
            avg_degree: density * (n - 1) as f64,
            edge_count: density * (n as f64) * ((n - 1) as f64) / 2.0,
            histogram: Vec::new(),
            sample: Some(SampleInfo { samples, seed }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeMode {
    Exact,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleInfo {
    pub samples: usize,
    pub seed: u64,
}

/// Degree summary of a view. Sampled stats carry no maximum or histogram.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeStats {
    pub max_degree: Option<usize>,
    pub avg_degree: f64,
    /// Exact edge count, or the density-scaled estimate when sampled.
    pub edge_count: f64,
    /// `histogram[d]` = number of vertices of degree `d`.
    pub histogram: Vec<usize>,
    pub sample: Option<SampleInfo>,
}

impl DegreeStats {
    pub fn from_degrees(degrees: &[usize]) -> Self {
        let max = degrees.iter().copied().max().unwrap_or(0);
        let mut histogram = vec![0usize; max + 1];
        for &d in degrees {
            histogram[d] += 1;
        }
        let sum: usize = degrees.iter().sum();
        Self {
            max_degree: Some(max),
            avg_degree: if degrees.is_empty() {
                0.0
            } else {
                sum as f64 / degrees.len() as f64
            },
            edge_count: (sum / 2) as f64,
            histogram,
            sample: None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.sample.is_none()
    }
}
