#![allow(dead_code)]

use pcolor_core::conflict::ConflictGraph;
use pcolor_core::rng::{self, Purpose};
use pcolor_core::{ColorLists, EdgeOracleView, ExplicitGraph, Pauli, PauliSet, PauliString};
use rand::Rng;

pub fn random_pauli(n: usize, qubits: usize, seed: u64) -> PauliSet {
    let letters = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    let strings = (0..n)
        .map(|i| {
            let mut r = rng::stream(seed, Purpose::Generator, 0, i as u64);
            PauliString::new((0..qubits).map(|_| letters[r.gen_range(0..4)]).collect()).unwrap()
        })
        .collect();
    PauliSet::new(strings).unwrap()
}

pub fn gnp(n: usize, p: f64, seed: u64) -> ExplicitGraph {
    let mut r = rng::stream(seed, Purpose::Generator, 1, 0);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    ExplicitGraph::from_edges(n, edges).unwrap().0
}

/// Independent edge test written straight from the definitions: a Pauli
/// pair is complement-adjacent when the count of positions holding two
/// different non-identity letters is even.
pub fn naive_adjacent(view: &EdgeOracleView<'_>, graph: Option<(&ExplicitGraph, bool)>, i: usize, j: usize) -> bool {
    let (u, v) = (view.vertex(i), view.vertex(j));
    match (view.pauli_set(), graph) {
        (Some(set), _) => {
            let a = set.string(u as usize).ops();
            let b = set.string(v as usize).ops();
            let clashes = a
                .iter()
                .zip(b)
                .filter(|(x, y)| **x != Pauli::I && **y != Pauli::I && x != y)
                .count();
            clashes % 2 == 0
        }
        (None, Some((g, complement))) => {
            let stored = g.edges().any(|(a, b)| (a, b) == (u.min(v), u.max(v)));
            stored != complement
        }
        (None, None) => panic!("explicit view needs its graph"),
    }
}

/// O(n^2 L) reference: every pair, set intersection by nested loops.
pub fn naive_conflict_edges(
    view: &EdgeOracleView<'_>,
    graph: Option<(&ExplicitGraph, bool)>,
    lists: &ColorLists,
) -> Vec<(u32, u32)> {
    let n = view.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let share = lists.list(i).iter().any(|c| lists.list(j).contains(c));
            if share && naive_adjacent(view, graph, i, j) {
                out.push((i as u32, j as u32));
            }
        }
    }
    out
}

pub fn members_of(edges: &[(u32, u32)]) -> Vec<u32> {
    let mut m: Vec<u32> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    m.sort_unstable();
    m.dedup();
    m
}

pub fn check_conflict_graph(gc: &ConflictGraph, reference: &[(u32, u32)]) {
    assert_eq!(gc.local_edges(), reference);
    assert_eq!(gc.members(), members_of(reference).as_slice());
    assert_eq!(gc.edge_count(), reference.len());
}

pub fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap()
}

pub fn max_threads() -> usize {
    std::thread::available_parallelism().map_or(4, |n| n.get()).max(3)
}

/// Every pair of the view checked for a monochromatic edge.
pub fn count_violations(view: &EdgeOracleView<'_>, colors: &[u32]) -> usize {
    let n = view.len();
    let mut bad = 0;
    for i in 0..n {
        for j in i + 1..n {
            if colors[i] == colors[j] && view.adjacent(i, j) {
                bad += 1;
            }
        }
    }
    bad
}
