//! Hub-parameterized coloring solvers (plain, list, vertex deletion, edge
//! deletion) and their exhaustive oracles.

mod ed;
mod list;
mod oracle;
mod plain;
mod vd;

pub use ed::{min_edge_deletion, solve_coloring_ed};
pub use list::{list_coloring_leaf_bound, solve_list_coloring};
pub use oracle::{
    oracle_coloring, oracle_ed, oracle_ed_by_edge_subsets, oracle_list_coloring, oracle_vd,
    ORACLE_EDGE_CAP, ORACLE_VERTEX_CAP,
};
pub use plain::solve_coloring;
pub use vd::{solve_coloring_vd, solve_coloring_vd_fast, vd_local_optimum};

use crate::graph::Graph;
use crate::lists::ListAssignment;

/// A (possibly partial) coloring together with the deletions that make it
/// proper.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringSolution {
    /// Color of each vertex; `None` for deleted vertices.
    pub assignment: Vec<Option<u8>>,
    pub deleted_vertices: Vec<usize>,
    pub deleted_edges: Vec<(usize, usize)>,
    pub cost: usize,
}

impl ColoringSolution {
    /// A full coloring with nothing deleted.
    pub fn proper(colors: Vec<u8>) -> Self {
        Self {
            assignment: colors.into_iter().map(Some).collect(),
            deleted_vertices: vec![],
            deleted_edges: vec![],
            cost: 0,
        }
    }

    /// A vertex-deletion solution: `None` entries are the deleted vertices.
    pub fn from_vertex_deletion(assignment: Vec<Option<u8>>) -> Self {
        let deleted_vertices: Vec<usize> = (0..assignment.len())
            .filter(|&v| assignment[v].is_none())
            .collect();
        let cost = deleted_vertices.len();
        Self {
            assignment,
            deleted_vertices,
            deleted_edges: vec![],
            cost,
        }
    }

    /// An edge-deletion solution: the monochromatic edges are deleted.
    pub fn from_edge_deletion(g: &Graph, colors: Vec<u8>) -> Self {
        let deleted_edges: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| colors[u] == colors[v])
            .collect();
        let cost = deleted_edges.len();
        Self {
            assignment: colors.into_iter().map(Some).collect(),
            deleted_vertices: vec![],
            deleted_edges,
            cost,
        }
    }

    /// Checks that the assignment is a proper coloring of the residual
    /// graph, respects `q` and the lists, and that the cost is consistent.
    pub fn verify(
        &self,
        g: &Graph,
        q: usize,
        lists: Option<&ListAssignment>,
    ) -> Result<(), String> {
        if self.assignment.len() != g.n() {
            return Err("assignment length differs from vertex count".into());
        }
        for (v, c) in self.assignment.iter().enumerate() {
            let deleted = self.deleted_vertices.binary_search(&v).is_ok();
            match c {
                None if !deleted => return Err(format!("vertex {v} is uncolored but not deleted")),
                Some(_) if deleted => return Err(format!("vertex {v} is deleted but colored")),
                Some(c) if *c as usize >= q => {
                    return Err(format!("vertex {v} has color {c} outside [q]"))
                }
                Some(c) if lists.is_some_and(|l| !l.allows(v, *c)) => {
                    return Err(format!("vertex {v} has color {c} outside its list"))
                }
                _ => {}
            }
        }
        for &(u, v) in g.edges() {
            if let (Some(a), Some(b)) = (self.assignment[u], self.assignment[v]) {
                if a == b && self.deleted_edges.binary_search(&(u, v)).is_err() {
                    return Err(format!("edge ({u},{v}) is monochromatic and not deleted"));
                }
            }
        }
        if self.cost != self.deleted_vertices.len() + self.deleted_edges.len() {
            return Err("cost differs from the number of deletions".into());
        }
        Ok(())
    }
}

/// Search statistics reported by the hub solvers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Leaves of the search tree (hub states for the enumeration solvers).
    pub leaves: u64,
    /// Worst-case number of leaves the algorithm guarantees on this
    /// instance; `leaves <= bound` always holds.
    pub bound: u128,
}

/// `base^exp`, saturating at `u128::MAX`.
pub(crate) fn sat_pow(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// Backtracking extension of a partial coloring to `vertices`, in order.
/// `allowed(v)` is the base color mask; already colored neighbours are
/// avoided. On success the colors are written into `color`.
pub(crate) fn extend_coloring(
    g: &Graph,
    vertices: &[usize],
    allowed: &dyn Fn(usize) -> u32,
    color: &mut [Option<u8>],
) -> bool {
    fn go(
        g: &Graph,
        vs: &[usize],
        i: usize,
        allowed: &dyn Fn(usize) -> u32,
        color: &mut [Option<u8>],
    ) -> bool {
        let Some(&v) = vs.get(i) else { return true };
        let mut mask = allowed(v);
        for &w in g.neighbors(v) {
            if let Some(c) = color[w] {
                mask &= !(1 << c);
            }
        }
        while mask != 0 {
            let c = mask.trailing_zeros() as u8;
            mask &= mask - 1;
            color[v] = Some(c);
            if go(g, vs, i + 1, allowed, color) {
                return true;
            }
        }
        color[v] = None;
        false
    }
    go(g, vertices, 0, allowed, color)
}
