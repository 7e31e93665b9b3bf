//! Conflict graph construction: the edges of the current view whose
//! endpoints' color lists intersect, emitted as canonical CSR.
//!
//! The upper triangle of local pairs `(i, j), i < j` is cut into row blocks
//! of `block_size` rows. Blocks are scanned independently and their output
//! is concatenated in block order, so the resulting pair list (and CSR) is
//! the same for any number of workers. In two-phase mode a counting scan
//! runs first, the budget is checked, and the fill scan writes each block
//! into its precomputed slice.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{EdgeOracleView, ExplicitGraph};
use crate::palette::ColorLists;
use crate::par;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConflictError {
    #[error("conflict graph needs {required} edges, budget is {budget}")]
    OutOfMemoryBudget { required: usize, budget: usize },
    #[error("color lists cover {lists} vertices but the view has {view}")]
    ListCountMismatch { lists: usize, view: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConflictConfig {
    /// Rows of the pair triangle per work block.
    pub block_size: usize,
    /// Maximum admissible `|E_c|`.
    pub edge_budget: Option<usize>,
    /// Count before filling, so an over-budget graph is never allocated.
    pub two_phase: bool,
}

impl Default for ConflictConfig {
    fn default() -> Self {
        Self {
            block_size: 32,
            edge_budget: None,
            two_phase: true,
        }
    }
}

/// Two-pointer intersection test on sorted lists.
#[inline]
pub fn lists_intersect(a: &[u32], b: &[u32]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// `G_c` over a compact re-indexing of its members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    /// `members[k]` is the view-local index of member `k`, increasing.
    members: Vec<u32>,
    csr: ExplicitGraph,
}

impl ConflictGraph {
    pub fn empty() -> Self {
        Self {
            members: Vec::new(),
            csr: ExplicitGraph::empty(0),
        }
    }

    /// Builds from unique view-local pairs `(i, j)` with `i < j`.
    pub fn from_local_pairs(view_len: usize, pairs: &[(u32, u32)]) -> Self {
        let mut member_index = vec![u32::MAX; view_len];
        for &(i, j) in pairs {
            member_index[i as usize] = 0;
            member_index[j as usize] = 0;
        }
        let mut members = Vec::new();
        for (local, slot) in member_index.iter_mut().enumerate() {
            if *slot != u32::MAX {
                *slot = members.len() as u32;
                members.push(local as u32);
            }
        }
        let remapped: Vec<(u32, u32)> = pairs
            .iter()
            .map(|&(i, j)| (member_index[i as usize], member_index[j as usize]))
            .collect();
        let csr = ExplicitGraph::from_unique_pairs(members.len(), &remapped);
        Self { members, csr }
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn num_members(&self) -> usize {
        self.members.len()
    }

    pub fn edge_count(&self) -> usize {
        self.csr.num_edges()
    }

    pub fn csr(&self) -> &ExplicitGraph {
        &self.csr
    }

    /// Per-local-vertex membership flags for a view of `view_len` vertices.
    pub fn membership(&self, view_len: usize) -> Vec<bool> {
        let mut mask = vec![false; view_len];
        for &m in &self.members {
            mask[m as usize] = true;
        }
        mask
    }

    /// Edges as sorted view-local pairs `(i, j)`, `i < j`.
    pub fn local_edges(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = self
            .csr
            .edges()
            .map(|(a, b)| (self.members[a as usize], self.members[b as usize]))
            .collect();
        out.sort_unstable();
        out
    }

    /// Machine words held: neighbor array, row offsets and member map.
    pub fn stored_entries(&self) -> usize {
        self.csr.neighbor_array().len() + self.csr.offsets().len() + self.members.len()
    }
}

fn scan_block<F>(view: &EdgeOracleView<'_>, lists: &ColorLists, rows: (usize, usize), mut emit: F)
where
    F: FnMut(u32, u32),
{
    let n = view.len();
    for i in rows.0..rows.1 {
        let li = lists.list(i);
        for j in i + 1..n {
            if view.adjacent(i, j) && lists_intersect(li, lists.list(j)) {
                emit(i as u32, j as u32);
            }
        }
    }
}

pub fn build(
    view: &EdgeOracleView<'_>,
    lists: &ColorLists,
    config: &ConflictConfig,
) -> Result<ConflictGraph, ConflictError> {
    let n = view.len();
    if lists.num_vertices() != n {
        return Err(ConflictError::ListCountMismatch {
            lists: lists.num_vertices(),
            view: n,
        });
    }
    let block = config.block_size.max(1);
    let num_blocks = n.div_ceil(block);
    let rows = |b: usize| (b * block, ((b + 1) * block).min(n));
    let check_budget = |required: usize| match config.edge_budget {
        Some(budget) if required > budget => {
            Err(ConflictError::OutOfMemoryBudget { required, budget })
        }
        _ => Ok(()),
    };

    let pairs = if config.two_phase {
        let counts = par::map_range(num_blocks, |b| {
            let mut c = 0usize;
            scan_block(view, lists, rows(b), |_, _| c += 1);
            c
        });
        let total: usize = counts.iter().sum();
        check_budget(total)?;
        let mut pairs = vec![(0u32, 0u32); total];
        let mut slices = Vec::with_capacity(num_blocks);
        let mut rest: &mut [(u32, u32)] = &mut pairs;
        for (b, &c) in counts.iter().enumerate() {
            let (head, tail) = core::mem::take(&mut rest).split_at_mut(c);
            slices.push((b, head));
            rest = tail;
        }
        par::for_each_owned(slices, |(b, out)| {
            let mut k = 0;
            scan_block(view, lists, rows(b), |i, j| {
                out[k] = (i, j);
                k += 1;
            });
            debug_assert_eq!(k, out.len());
        });
        pairs
    } else {
        let parts = par::map_range(num_blocks, |b| {
            let mut out = Vec::new();
            scan_block(view, lists, rows(b), |i, j| out.push((i, j)));
            out
        });
        let total = parts.iter().map(Vec::len).sum();
        check_budget(total)?;
        let mut pairs = Vec::with_capacity(total);
        for p in parts {
            pairs.extend_from_slice(&p);
        }
        pairs
    };

    Ok(ConflictGraph::from_local_pairs(n, &pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliSet;

    #[test]
    fn intersect_examples() {
        assert!(lists_intersect(&[1, 5, 9], &[2, 5, 7]));
        assert!(!lists_intersect(&[1, 2], &[3, 4]));
        assert!(lists_intersect(&[4, 8], &[4, 8]));
        assert!(!lists_intersect(&[], &[1]));
    }

    #[test]
    fn disjoint_lists_give_empty_graph() {
        let g = ExplicitGraph::empty(4);
        let view = EdgeOracleView::explicit_complement(&g);
        let lists = ColorLists::from_lists(&[vec![0], vec![1], vec![2], vec![3]]);
        let gc = build(&view, &lists, &ConflictConfig::default()).unwrap();
        assert_eq!(gc.edge_count(), 0);
        assert_eq!(gc.num_members(), 0);
    }

    #[test]
    fn triangle_with_shared_singletons() {
        let (g, _) = ExplicitGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let view = EdgeOracleView::explicit(&g);
        let lists = ColorLists::from_lists(&[vec![7], vec![7], vec![7]]);
        for two_phase in [true, false] {
            let cfg = ConflictConfig {
                block_size: 1,
                two_phase,
                ..Default::default()
            };
            let gc = build(&view, &lists, &cfg).unwrap();
            assert_eq!(gc.edge_count(), 3);
            assert_eq!(gc.csr(), &g);
            assert_eq!(gc.members(), &[0, 1, 2]);
        }
    }

    #[test]
    fn members_are_exactly_incident_vertices() {
        // XX, YY commute; ZI anticommutes with both; IZ commutes with ZI only.
        let set = PauliSet::from_strs(["XX", "YY", "ZI", "IZ"]).unwrap();
        let view = EdgeOracleView::pauli(&set);
        let lists = ColorLists::from_lists(&[vec![1], vec![1], vec![1], vec![2]]);
        let gc = build(&view, &lists, &ConflictConfig::default()).unwrap();
        assert_eq!(gc.local_edges(), vec![(0, 1)]);
        assert_eq!(gc.members(), &[0, 1]);
        assert_eq!(gc.membership(4), vec![true, true, false, false]);
    }

    #[test]
    fn budget_is_enforced_in_both_modes() {
        let g = ExplicitGraph::empty(5);
        let view = EdgeOracleView::explicit_complement(&g);
        let lists = ColorLists::from_lists(&vec![vec![0]; 5]);
        for two_phase in [true, false] {
            let cfg = ConflictConfig {
                block_size: 2,
                edge_budget: Some(9),
                two_phase,
            };
            assert_eq!(
                build(&view, &lists, &cfg),
                Err(ConflictError::OutOfMemoryBudget {
                    required: 10,
                    budget: 9
                })
            );
        }
    }
}
