//! List q-Coloring with a hub by branching on non-extendable boundary
//! colorings.
//!
//! Every component `A` of `G - Q` (and every hub edge, treated as a
//! component with no vertices of its own) is a *unit* whose boundary is its
//! set of hub neighbours. A node of the search tree holds the current hub
//! lists and the hub vertices fixed so far. Reduction rules, applied at every
//! node:
//!
//! * an unfixed hub vertex with an empty list rejects the node;
//! * a unit whose boundary is entirely fixed is checked once and resolved;
//! * a unit all of whose boundary colorings (from the current lists) extend
//!   is deferred: it extends whatever colors the lists end up providing;
//! * a unit none of whose boundary colorings extend rejects the node;
//! * unfixed hub vertices in no pending unit are free and take their first
//!   listed color at the end.
//!
//! When fewer than `2 * delta` hub vertices remain in pending units, their
//! colorings are enumerated directly (one leaf). Otherwise the first pending
//! unit branches over its extendable boundary colorings, of which there are
//! at most `q^delta - 1`; fixing a color removes it from the lists of hub
//! neighbours.

use super::{extend_coloring, sat_pow, ColoringSolution, SolveStats};
use crate::graph::Graph;
use crate::hub::HubDecomposition;
use crate::lists::ListAssignment;
use std::collections::HashMap;

/// The worst-case leaf count `(q^delta - 1)^ceil(p / delta)`, at least 1.
pub fn list_coloring_leaf_bound(q: usize, p: usize, delta: usize) -> u128 {
    let delta = delta.max(1);
    let base = sat_pow(q as u128, delta) - 1;
    sat_pow(base, p.div_ceil(delta)).max(1)
}

/// Finds a proper list coloring, if one exists. The reported bound uses the
/// effective delta: the largest boundary, and at least 2 when the hub has
/// internal edges.
pub fn solve_list_coloring(
    g: &Graph,
    la: &ListAssignment,
    h: &HubDecomposition,
) -> (Option<ColoringSolution>, SolveStats) {
    assert_eq!(la.n(), g.n(), "list assignment size differs from graph");
    let p = h.p();
    let mut units: Vec<Unit> = (0..h.components().len())
        .map(|i| Unit {
            component: Some(i),
            boundary: h
                .boundary(i)
                .iter()
                .map(|&b| h.hub_position(b).unwrap())
                .collect(),
        })
        .collect();
    let hub_edges = h.hub_edges(g);
    let mut hub_adj = vec![Vec::new(); p];
    for &(u, v) in &hub_edges {
        let (a, b) = (h.hub_position(u).unwrap(), h.hub_position(v).unwrap());
        hub_adj[a].push(b);
        hub_adj[b].push(a);
        units.push(Unit {
            component: None,
            boundary: vec![a, b],
        });
    }
    let max_boundary = units.iter().map(|u| u.boundary.len()).max().unwrap_or(0);
    let delta_eff = max_boundary.max(1);
    let bound = list_coloring_leaf_bound(la.q(), p, delta_eff);

    let mut solver = Solver {
        g,
        h,
        la,
        units,
        hub_adj,
        threshold: 2 * delta_eff,
        memo: HashMap::new(),
        leaves: 0,
    };
    let root = Node {
        lists: h.hub().iter().map(|&v| la.mask(v)).collect(),
        fixed: vec![None; p],
        status: vec![Status::Pending; solver.units.len()],
    };
    let hub_colors = solver.search(root);
    let stats = SolveStats {
        leaves: solver.leaves,
        bound,
    };
    let Some(hub_colors) = hub_colors else {
        return (None, stats);
    };

    let mut color: Vec<Option<u8>> = vec![None; g.n()];
    for (i, &v) in h.hub().iter().enumerate() {
        color[v] = Some(hub_colors[i]);
    }
    for comp in h.components() {
        let ok = extend_coloring(g, comp, &|v| la.mask(v), &mut color);
        assert!(ok, "deferred or resolved component failed to extend");
    }
    let sol = ColoringSolution::proper(color.into_iter().map(Option::unwrap).collect());
    debug_assert_eq!(sol.verify(g, la.q(), Some(la)), Ok(()));
    (Some(sol), stats)
}

struct Unit {
    component: Option<usize>,
    /// Hub positions.
    boundary: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pending,
    Done,
}

#[derive(Clone)]
struct Node {
    lists: Vec<u32>,
    fixed: Vec<Option<u8>>,
    status: Vec<Status>,
}

struct Solver<'a> {
    g: &'a Graph,
    h: &'a HubDecomposition,
    la: &'a ListAssignment,
    units: Vec<Unit>,
    hub_adj: Vec<Vec<usize>>,
    threshold: usize,
    memo: HashMap<(usize, Vec<u8>), bool>,
    leaves: u64,
}

impl Solver<'_> {
    /// Whether unit `u` extends the boundary coloring `colors` (aligned with
    /// its boundary).
    fn extends(&mut self, u: usize, colors: &[u8]) -> bool {
        let unit = &self.units[u];
        let Some(ci) = unit.component else {
            return colors[0] != colors[1];
        };
        let (g, h, la) = (self.g, self.h, self.la);
        *self.memo.entry((ci, colors.to_vec())).or_insert_with(|| {
            let mut color: Vec<Option<u8>> = vec![None; g.n()];
            for (&b, &c) in h.boundary(ci).iter().zip(colors) {
                color[b] = Some(c);
            }
            extend_coloring(g, &h.components()[ci], &|v| la.mask(v), &mut color)
        })
    }

    /// Extendable colorings of the unfixed boundary of unit `u`, in
    /// lexicographic order, together with the total number of candidates.
    fn extendable(&mut self, node: &Node, u: usize) -> (Vec<Vec<u8>>, u64) {
        let boundary = self.units[u].boundary.clone();
        let free: Vec<usize> = (0..boundary.len())
            .filter(|&i| node.fixed[boundary[i]].is_none())
            .collect();
        let mut colors: Vec<u8> = boundary
            .iter()
            .map(|&b| node.fixed[b].unwrap_or(0))
            .collect();
        let choices: Vec<Vec<u8>> = free
            .iter()
            .map(|&i| crate::lists::colors_of(node.lists[boundary[i]]))
            .collect();
        let total: u64 = choices.iter().map(|c| c.len() as u64).product();
        let mut out = Vec::new();
        if total == 0 {
            return (out, 0);
        }
        let mut digits = vec![0usize; free.len()];
        loop {
            for (k, &i) in free.iter().enumerate() {
                colors[i] = choices[k][digits[k]];
            }
            if self.extends(u, &colors) {
                out.push(free.iter().map(|&i| colors[i]).collect());
            }
            let mut k = free.len();
            loop {
                if k == 0 {
                    return (out, total);
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] < choices[k].len() {
                    break;
                }
                digits[k] = 0;
            }
        }
    }

    /// Applies the reduction rules; `false` if the node is rejected.
    fn reduce(&mut self, node: &mut Node) -> bool {
        if (0..node.lists.len()).any(|i| node.fixed[i].is_none() && node.lists[i] == 0) {
            return false;
        }
        for u in 0..self.units.len() {
            if node.status[u] != Status::Pending {
                continue;
            }
            if self.units[u]
                .boundary
                .iter()
                .all(|&b| node.fixed[b].is_some())
            {
                let colors: Vec<u8> = self.units[u]
                    .boundary
                    .iter()
                    .map(|&b| node.fixed[b].unwrap())
                    .collect();
                if !self.extends(u, &colors) {
                    return false;
                }
                node.status[u] = Status::Done;
                continue;
            }
            let (ext, total) = self.extendable(node, u);
            if ext.is_empty() {
                return false;
            }
            if ext.len() as u64 == total {
                node.status[u] = Status::Done;
            }
        }
        true
    }

    fn fix(&self, node: &mut Node, pos: usize, c: u8) {
        node.fixed[pos] = Some(c);
        for &w in &self.hub_adj[pos] {
            node.lists[w] &= !(1 << c);
        }
    }

    /// Returns a color for every hub position, or `None` if the node has no
    /// solution.
    fn search(&mut self, mut node: Node) -> Option<Vec<u8>> {
        if !self.reduce(&mut node) {
            self.leaves += 1;
            return None;
        }
        let pending: Vec<usize> = (0..self.units.len())
            .filter(|&u| node.status[u] == Status::Pending)
            .collect();
        let mut open: Vec<usize> = pending
            .iter()
            .flat_map(|&u| self.units[u].boundary.iter().copied())
            .filter(|&b| node.fixed[b].is_none())
            .collect();
        open.sort_unstable();
        open.dedup();

        if open.len() < self.threshold {
            self.leaves += 1;
            return self.exhaust(node, &open, &pending, 0);
        }

        let u = pending[0];
        let boundary = self.units[u].boundary.clone();
        let free: Vec<usize> = boundary
            .iter()
            .copied()
            .filter(|&b| node.fixed[b].is_none())
            .collect();
        let (ext, _) = self.extendable(&node, u);
        let mut children = 0;
        for colors in ext {
            let proper = (0..free.len()).all(|i| {
                (i + 1..free.len())
                    .all(|j| colors[i] != colors[j] || !self.hub_adj[free[i]].contains(&free[j]))
            });
            if !proper {
                continue;
            }
            children += 1;
            let mut child = node.clone();
            for (&b, &c) in free.iter().zip(&colors) {
                self.fix(&mut child, b, c);
            }
            if let Some(sol) = self.search(child) {
                return Some(sol);
            }
        }
        if children == 0 {
            self.leaves += 1;
        }
        None
    }

    /// Enumerates colorings of `open` from the current lists and checks every
    /// pending unit.
    fn exhaust(
        &mut self,
        mut node: Node,
        open: &[usize],
        pending: &[usize],
        i: usize,
    ) -> Option<Vec<u8>> {
        if let Some(&pos) = open.get(i) {
            for c in crate::lists::colors_of(node.lists[pos]) {
                let mut child = node.clone();
                self.fix(&mut child, pos, c);
                if let Some(sol) = self.exhaust(child, open, pending, i + 1) {
                    return Some(sol);
                }
            }
            return None;
        }
        for &u in pending {
            let colors: Vec<u8> = self.units[u]
                .boundary
                .iter()
                .map(|&b| node.fixed[b].unwrap())
                .collect();
            if !self.extends(u, &colors) {
                return None;
            }
        }
        for pos in 0..node.fixed.len() {
            if node.fixed[pos].is_none() {
                let c = node.lists[pos].trailing_zeros() as u8;
                self.fix(&mut node, pos, c);
            }
        }
        Some(node.fixed.into_iter().map(Option::unwrap).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hub::validate_hub;

    #[test]
    fn odd_cycle_two_lists() {
        let g = Graph::cycle(5);
        let la = ListAssignment::new(2, vec![0b11; 5]).unwrap();
        let h = validate_hub(&g, &[0, 2], 2, 2).unwrap();
        assert!(solve_list_coloring(&g, &la, &h).0.is_none());
    }

    #[test]
    fn empty_list_rejects() {
        let g = Graph::path(3);
        let la = ListAssignment::new(3, vec![0b111, 0, 0b111]).unwrap();
        let h = validate_hub(&g, &[1], 1, 1).unwrap();
        assert!(solve_list_coloring(&g, &la, &h).0.is_none());
    }

    #[test]
    fn bound_values() {
        assert_eq!(list_coloring_leaf_bound(3, 4, 2), 64);
        assert_eq!(list_coloring_leaf_bound(3, 5, 2), 512);
        assert_eq!(list_coloring_leaf_bound(1, 5, 2), 1);
        assert_eq!(list_coloring_leaf_bound(3, 0, 2), 1);
    }
}
