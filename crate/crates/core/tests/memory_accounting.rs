//! The reported storage proxy against real heap usage.

mod common;

use std::alloc::{GlobalAlloc, Layout, System};
use std::sync::atomic::{AtomicUsize, Ordering};

use common::*;
use pcolor_core::greedy::{greedy_color, GreedyOrdering};
use pcolor_core::palette::{self, PaletteParams, RunOptions};
use pcolor_core::EdgeOracleView;

struct Counting;

static LIVE: AtomicUsize = AtomicUsize::new(0);
static PEAK: AtomicUsize = AtomicUsize::new(0);

unsafe impl GlobalAlloc for Counting {
    unsafe fn alloc(&self, l: Layout) -> *mut u8 {
        let p = System.alloc(l);
        let now = LIVE.fetch_add(l.size(), Ordering::SeqCst) + l.size();
        PEAK.fetch_max(now, Ordering::SeqCst);
        p
    }
    unsafe fn dealloc(&self, p: *mut u8, l: Layout) {
        System.dealloc(p, l);
        LIVE.fetch_sub(l.size(), Ordering::SeqCst);
    }
}

#[global_allocator]
static GLOBAL: Counting = Counting;

/// Heap bytes above the starting level while `f` runs.
fn peak_during<T>(f: impl FnOnce() -> T) -> (T, usize) {
    let base = LIVE.load(Ordering::SeqCst);
    PEAK.store(base, Ordering::SeqCst);
    let out = f();
    (out, PEAK.load(Ordering::SeqCst) - base)
}

#[test]
fn proxy_tracks_heap_and_greedy_stores_whole_graph() {
    let set = random_pauli(2000, 12, 5);
    let view = EdgeOracleView::pauli(&set);
    let m = view.count_edges().unwrap() as usize;
    // single worker so concurrent per-block buffers do not blur the figure
    let pool = pool(1);

    let (r, heap) = pool.install(|| peak_during(|| palette::run(&view, &PaletteParams::normal(3), &RunOptions::default()).unwrap()));
    let max_round = r.iterations.iter().map(|it| it.tracked_entries).max().unwrap();
    assert_eq!(r.peak_tracked_entries, max_round);
    for it in &r.iterations {
        // 2|E_c| neighbor entries plus per-vertex arrays
        assert!(it.tracked_entries >= 2 * it.conflict_edges + 3 * it.active);
    }
    // 4-byte entries; the build also holds its pair buffer (8 bytes per edge)
    let proxy_bytes = 4 * r.peak_tracked_entries;
    assert!(heap >= proxy_bytes / 2, "heap {heap} vs proxy {proxy_bytes}");
    assert!(heap <= 8 * proxy_bytes, "heap {heap} vs proxy {proxy_bytes}");

    let (g, greedy_heap) = pool.install(|| peak_during(|| greedy_color(&view, GreedyOrdering::LargestFirst).unwrap()));
    assert_eq!(g.stored_adjacency_entries, 2 * m);
    assert!(greedy_heap >= 4 * 2 * m);
}
