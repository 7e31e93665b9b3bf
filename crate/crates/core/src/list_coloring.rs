//! List coloring of a conflict graph.
//!
//! The dynamic strategy always serves a most-constrained vertex: vertices
//! sit in buckets keyed by their current list length, a vertex is drawn
//! uniformly from the lowest non-empty bucket, takes a uniformly random color
//! from its list, and that color is struck from the lists of its uncolored
//! neighbors (each of which drops one bucket). A vertex whose list runs dry
//! is set aside as uncolored for the next round. Static strategies visit a
//! fixed order and take the first list color no colored neighbor holds.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::conflict::ConflictGraph;
use crate::graph::smallest_last_order;
use crate::palette::ColorLists;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConflictStrategy {
    Dynamic,
    Natural,
    LargestDegreeFirst,
    SmallestDegreeLast,
    Random,
}

impl ConflictStrategy {
    pub const ALL: [ConflictStrategy; 5] = [
        ConflictStrategy::Dynamic,
        ConflictStrategy::Natural,
        ConflictStrategy::LargestDegreeFirst,
        ConflictStrategy::SmallestDegreeLast,
        ConflictStrategy::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConflictStrategy::Dynamic => "dynamic",
            ConflictStrategy::Natural => "natural",
            ConflictStrategy::LargestDegreeFirst => "ldf",
            ConflictStrategy::SmallestDegreeLast => "sdl",
            ConflictStrategy::Random => "random",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|c| c.name() == s)
    }
}

/// Buckets of vertices keyed by current list length with O(1) removal.
#[derive(Debug, Clone)]
pub struct BucketQueue {
    buckets: Vec<Vec<u32>>,
    /// `(bucket, slot)` per vertex; `bucket == u32::MAX` when absent.
    position: Vec<(u32, u32)>,
    lowest: usize,
    len: usize,
}

const ABSENT: u32 = u32::MAX;

impl BucketQueue {
    pub fn new(num_vertices: usize, max_key: usize) -> Self {
        Self {
            buckets: vec![Vec::new(); max_key + 1],
            position: vec![(ABSENT, 0); num_vertices],
            lowest: max_key + 1,
            len: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: u32) -> bool {
        self.position[v as usize].0 != ABSENT
    }

    pub fn key(&self, v: u32) -> Option<usize> {
        match self.position[v as usize].0 {
            ABSENT => None,
            b => Some(b as usize),
        }
    }

    pub fn insert(&mut self, v: u32, key: usize) {
        debug_assert!(!self.contains(v));
        let bucket = &mut self.buckets[key];
        self.position[v as usize] = (key as u32, bucket.len() as u32);
        bucket.push(v);
        self.lowest = self.lowest.min(key);
        self.len += 1;
    }

    pub fn remove(&mut self, v: u32) {
        let (b, slot) = self.position[v as usize];
        debug_assert_ne!(b, ABSENT);
        let bucket = &mut self.buckets[b as usize];
        bucket.swap_remove(slot as usize);
        if let Some(&moved) = bucket.get(slot as usize) {
            self.position[moved as usize].1 = slot;
        }
        self.position[v as usize] = (ABSENT, 0);
        self.len -= 1;
    }

    pub fn rekey(&mut self, v: u32, key: usize) {
        self.remove(v);
        self.insert(v, key);
    }

    /// Index of the lowest non-empty bucket.
    pub fn lowest_key(&mut self) -> Option<usize> {
        while self.lowest < self.buckets.len() && self.buckets[self.lowest].is_empty() {
            self.lowest += 1;
        }
        (self.lowest < self.buckets.len()).then_some(self.lowest)
    }

    /// Removes and returns a uniformly random vertex of the lowest bucket.
    pub fn pop_lowest<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Option<u32> {
        let key = self.lowest_key()?;
        debug_assert!(self.buckets[..key].iter().all(Vec::is_empty));
        let slot = rng.gen_range(0..self.buckets[key].len());
        let v = self.buckets[key][slot];
        self.remove(v);
        Some(v)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ListColoringStats {
    /// Vertices colored.
    pub picks: usize,
    /// Colors struck from neighbor lists.
    pub removals: usize,
    /// Lists that ran empty.
    pub empties: usize,
    /// Distinct colors assigned.
    pub colors_used: usize,
}

/// Result over conflict-graph members (member indices, see
/// [`ConflictGraph::members`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictColoringOutcome {
    pub colors: Vec<Option<u32>>,
    /// Members left uncolored, in the order they were given up on.
    pub uncolored: Vec<u32>,
    pub stats: ListColoringStats,
    /// Member drawn at each step with its list length at that moment.
    pub pick_log: Vec<(u32, u32)>,
}

impl ConflictColoringOutcome {
    fn finish(mut self) -> Self {
        let mut used: Vec<u32> = self.colors.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        self.stats.colors_used = used.len();
        self
    }
}

/// Dispatches on `strategy`.
pub fn color_conflict_graph<R: Rng + ?Sized>(
    gc: &ConflictGraph,
    lists: &ColorLists,
    strategy: ConflictStrategy,
    rng: &mut R,
) -> ConflictColoringOutcome {
    match strategy {
        ConflictStrategy::Dynamic => color_dynamic(gc, lists, rng),
        other => color_static(gc, lists, other, rng),
    }
}

/// Working copy of the members' lists in a flat stride layout.
struct WorkingLists {
    data: Vec<u32>,
    len: Vec<u32>,
    stride: usize,
}

impl WorkingLists {
    fn new(gc: &ConflictGraph, lists: &ColorLists) -> Self {
        let stride = lists.max_list_len();
        let mut data = vec![0u32; gc.num_members() * stride];
        let mut len = Vec::with_capacity(gc.num_members());
        for (k, &local) in gc.members().iter().enumerate() {
            let l = lists.list(local as usize);
            data[k * stride..k * stride + l.len()].copy_from_slice(l);
            len.push(l.len() as u32);
        }
        Self { data, len, stride }
    }

    fn get(&self, k: usize) -> &[u32] {
        &self.data[k * self.stride..k * self.stride + self.len[k] as usize]
    }

    /// Removes `c` keeping order; false when absent.
    fn strike(&mut self, k: usize, c: u32) -> bool {
        let start = k * self.stride;
        let l = self.len[k] as usize;
        let row = &mut self.data[start..start + l];
        match row.binary_search(&c) {
            Ok(pos) => {
                row.copy_within(pos + 1.., pos);
                self.len[k] -= 1;
                true
            }
            Err(_) => false,
        }
    }
}

pub fn color_dynamic<R: Rng + ?Sized>(
    gc: &ConflictGraph,
    lists: &ColorLists,
    rng: &mut R,
) -> ConflictColoringOutcome {
    let m = gc.num_members();
    let csr = gc.csr();
    let mut work = WorkingLists::new(gc, lists);
    let mut queue = BucketQueue::new(m, work.stride);
    let mut processed = vec![false; m];
    let mut out = ConflictColoringOutcome {
        colors: vec![None; m],
        uncolored: Vec::new(),
        stats: ListColoringStats::default(),
        pick_log: Vec::with_capacity(m),
    };
    for (k, done) in processed.iter_mut().enumerate() {
        match work.len[k] {
            0 => {
                *done = true;
                out.uncolored.push(k as u32);
                out.stats.empties += 1;
            }
            l => queue.insert(k as u32, l as usize),
        }
    }

    while let Some(v) = queue.pop_lowest(rng) {
        let vi = v as usize;
        let list = work.get(vi);
        out.pick_log.push((v, list.len() as u32));
        let c = list[rng.gen_range(0..list.len())];
        out.colors[vi] = Some(c);
        processed[vi] = true;
        out.stats.picks += 1;
        for &u in csr.neighbors(v) {
            let ui = u as usize;
            if processed[ui] || !work.strike(ui, c) {
                continue;
            }
            out.stats.removals += 1;
            if work.len[ui] == 0 {
                processed[ui] = true;
                queue.remove(u);
                out.uncolored.push(u);
                out.stats.empties += 1;
            } else {
                queue.rekey(u, work.len[ui] as usize);
            }
        }
    }
    debug_assert!(out.stats.removals <= gc.edge_count() * work.stride.max(1));
    out.finish()
}

/// Visiting order (member indices) for a static strategy.
pub fn static_order<R: Rng + ?Sized>(
    gc: &ConflictGraph,
    strategy: ConflictStrategy,
    rng: &mut R,
) -> Vec<u32> {
    let csr = gc.csr();
    let m = gc.num_members() as u32;
    match strategy {
        ConflictStrategy::Natural | ConflictStrategy::Dynamic => (0..m).collect(),
        ConflictStrategy::LargestDegreeFirst => {
            let mut order: Vec<u32> = (0..m).collect();
            order.sort_by_key(|&v| (core::cmp::Reverse(csr.degree(v)), v));
            order
        }
        ConflictStrategy::SmallestDegreeLast => smallest_last_order(csr),
        ConflictStrategy::Random => {
            let mut order: Vec<u32> = (0..m).collect();
            order.shuffle(rng);
            order
        }
    }
}

pub fn color_static<R: Rng + ?Sized>(
    gc: &ConflictGraph,
    lists: &ColorLists,
    strategy: ConflictStrategy,
    rng: &mut R,
) -> ConflictColoringOutcome {
    let m = gc.num_members();
    let csr = gc.csr();
    let order = static_order(gc, strategy, rng);
    let mut out = ConflictColoringOutcome {
        colors: vec![None; m],
        uncolored: Vec::new(),
        stats: ListColoringStats::default(),
        pick_log: Vec::with_capacity(m),
    };
    let mut taken: Vec<u32> = Vec::new();
    for v in order {
        let list = lists.list(gc.members()[v as usize] as usize);
        out.pick_log.push((v, list.len() as u32));
        taken.clear();
        taken.extend(csr.neighbors(v).iter().filter_map(|&u| out.colors[u as usize]));
        taken.sort_unstable();
        match list.iter().find(|c| taken.binary_search(c).is_err()) {
            Some(&c) => {
                out.colors[v as usize] = Some(c);
                out.stats.picks += 1;
            }
            None => {
                out.uncolored.push(v);
                out.stats.empties += 1;
            }
        }
    }
    out.finish()
}
