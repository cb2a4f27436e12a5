//! Vertex-deletion list coloring with a hub: direct `(q+1)^p` enumeration and
//! the faster route through the wildcard CSP.

use super::{sat_pow, ColoringSolution, SolveStats};
use crate::error::Result;
use crate::graph::Graph;
use crate::hub::{validate_hub, HubDecomposition};
use crate::lists::ListAssignment;
use crate::wildcard::{decode_value, solve_wildcard, vd_to_wildcard_csp};
use std::collections::HashMap;

/// Minimum number of deletions inside `component` so that the rest is list
/// colorable, given the colors of the surrounding vertices in `color`
/// (`None` = deleted or irrelevant). Returns the cost and the colors of the
/// component vertices, aligned with `component`.
pub fn vd_local_optimum(
    g: &Graph,
    la: &ListAssignment,
    component: &[usize],
    color: &[Option<u8>],
) -> (usize, Vec<Option<u8>>) {
    let mut work = color.to_vec();
    for &v in component {
        work[v] = None;
    }
    let mut best = (component.len(), vec![None; component.len()]);
    let mut current = vec![None; component.len()];
    local(g, la, component, 0, 0, &mut work, &mut current, &mut best);
    best
}

#[allow(clippy::too_many_arguments)]
fn local(
    g: &Graph,
    la: &ListAssignment,
    comp: &[usize],
    i: usize,
    cost: usize,
    work: &mut [Option<u8>],
    current: &mut [Option<u8>],
    best: &mut (usize, Vec<Option<u8>>),
) {
    if cost >= best.0 {
        return;
    }
    let Some(&v) = comp.get(i) else {
        *best = (cost, current.to_vec());
        return;
    };
    let mut mask = la.mask(v);
    for &w in g.neighbors(v) {
        if let Some(c) = work[w] {
            mask &= !(1 << c);
        }
    }
    while mask != 0 {
        let c = mask.trailing_zeros() as u8;
        mask &= mask - 1;
        work[v] = Some(c);
        current[i] = Some(c);
        local(g, la, comp, i + 1, cost, work, current, best);
    }
    work[v] = None;
    current[i] = None;
    local(g, la, comp, i + 1, cost + 1, work, current, best);
}

/// Optimum vertex deletion by enumerating the `(q+1)^p` hub states (a listed
/// color or deletion per hub vertex) with branch and bound; components are
/// solved exactly and memoized per boundary state.
pub fn solve_coloring_vd(
    g: &Graph,
    la: &ListAssignment,
    h: &HubDecomposition,
) -> (ColoringSolution, SolveStats) {
    let q = la.q();
    let p = h.p();
    // Components are charged once their last boundary vertex is decided.
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); p];
    let mut constant = 0;
    let mut hub_color: Vec<Option<u8>> = vec![None; g.n()];
    for (ci, comp) in h.components().iter().enumerate() {
        match h.boundary(ci).last() {
            Some(&b) => due[h.hub_position(b).unwrap()].push(ci),
            None => constant += vd_local_optimum(g, la, comp, &hub_color).0,
        }
    }
    let mut search = VdSearch {
        g,
        la,
        h,
        q,
        due,
        memo: HashMap::new(),
        best: usize::MAX,
        best_state: Vec::new(),
        state: vec![None; p],
        leaves: 0,
    };
    search.go(0, constant, &mut hub_color);
    let stats = SolveStats {
        leaves: search.leaves,
        bound: sat_pow(q as u128 + 1, p),
    };

    let mut color: Vec<Option<u8>> = vec![None; g.n()];
    for (i, &v) in h.hub().iter().enumerate() {
        color[v] = search.best_state[i];
    }
    for comp in h.components() {
        let (_, local) = vd_local_optimum(g, la, comp, &color);
        for (&v, c) in comp.iter().zip(local) {
            color[v] = c;
        }
    }
    let sol = ColoringSolution::from_vertex_deletion(color);
    debug_assert_eq!(sol.cost, search.best);
    debug_assert_eq!(sol.verify(g, q, Some(la)), Ok(()));
    (sol, stats)
}

struct VdSearch<'a> {
    g: &'a Graph,
    la: &'a ListAssignment,
    h: &'a HubDecomposition,
    q: usize,
    due: Vec<Vec<usize>>,
    memo: HashMap<(usize, Vec<u8>), usize>,
    best: usize,
    best_state: Vec<Option<u8>>,
    state: Vec<Option<u8>>,
    leaves: u64,
}

impl VdSearch<'_> {
    fn go(&mut self, i: usize, cost: usize, color: &mut Vec<Option<u8>>) {
        if cost >= self.best {
            return;
        }
        if i == self.h.p() {
            self.leaves += 1;
            self.best = cost;
            self.best_state = self.state.clone();
            return;
        }
        let v = self.h.hub()[i];
        let mut options: Vec<Option<u8>> = self.la.colors(v).into_iter().map(Some).collect();
        options.push(None);
        for opt in options {
            if let Some(c) = opt {
                if self
                    .g
                    .neighbors(v)
                    .iter()
                    .any(|&w| self.h.in_hub(w) && color[w] == Some(c))
                {
                    continue;
                }
            }
            color[v] = opt;
            self.state[i] = opt;
            let mut extra = usize::from(opt.is_none());
            for k in 0..self.due[i].len() {
                let ci = self.due[i][k];
                let key: Vec<u8> = self
                    .h
                    .boundary(ci)
                    .iter()
                    .map(|&b| color[b].unwrap_or(self.q as u8))
                    .collect();
                let (g, la, comp) = (self.g, self.la, &self.h.components()[ci]);
                extra += *self
                    .memo
                    .entry((ci, key))
                    .or_insert_with(|| vd_local_optimum(g, la, comp, color).0);
            }
            self.go(i + 1, cost + extra, color);
        }
        color[v] = None;
        self.state[i] = None;
    }
}

/// Optimum vertex deletion through the wildcard CSP. Hub vertices with an
/// empty list are deleted up front. The reported bound is the wildcard
/// solver's `((q+1)^r - 1)^ceil(n/r)` for the produced CSP.
pub fn solve_coloring_vd_fast(
    g: &Graph,
    la: &ListAssignment,
    h: &HubDecomposition,
) -> Result<(ColoringSolution, SolveStats)> {
    let forced: Vec<usize> = h
        .hub()
        .iter()
        .copied()
        .filter(|&v| la.mask(v) == 0)
        .collect();
    if !forced.is_empty() {
        let keep: Vec<usize> = (0..g.n())
            .filter(|v| forced.binary_search(v).is_err())
            .collect();
        let (sub, map) = g.induced(&keep);
        let mut index = vec![usize::MAX; g.n()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let sub_lists = ListAssignment::new(la.q(), map.iter().map(|&v| la.mask(v)).collect())?;
        let sub_hub: Vec<usize> = h
            .hub()
            .iter()
            .filter(|&&v| la.mask(v) != 0)
            .map(|&v| index[v])
            .collect();
        let sub_h = validate_hub(&sub, &sub_hub, h.sigma(), h.delta())?;
        let (sub_sol, stats) = solve_coloring_vd_fast(&sub, &sub_lists, &sub_h)?;
        let mut assignment = vec![None; g.n()];
        for (i, &v) in map.iter().enumerate() {
            assignment[v] = sub_sol.assignment[i];
        }
        return Ok((ColoringSolution::from_vertex_deletion(assignment), stats));
    }

    let csp = vd_to_wildcard_csp(g, la, h)?;
    let (wa, stats) = solve_wildcard(&csp)?;
    let mut color: Vec<Option<u8>> = vec![None; g.n()];
    for (i, &v) in h.hub().iter().enumerate() {
        color[v] = wa.values[i].and_then(|x| decode_value(la, v, x as usize));
    }
    for comp in h.components() {
        let (_, local) = vd_local_optimum(g, la, comp, &color);
        for (&v, c) in comp.iter().zip(local) {
            color[v] = c;
        }
    }
    let sol = ColoringSolution::from_vertex_deletion(color);
    debug_assert_eq!(sol.cost as u64, wa.cost);
    debug_assert_eq!(sol.verify(g, la.q(), Some(la)), Ok(()));
    Ok((sol, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hub::validate_hub;

    fn full(g: &Graph, q: usize) -> ListAssignment {
        ListAssignment::full(g.n(), q)
    }

    #[test]
    fn examples() {
        let k3 = Graph::complete(3);
        let h = validate_hub(&k3, &[0], 2, 1).unwrap();
        assert_eq!(solve_coloring_vd(&k3, &full(&k3, 2), &h).0.cost, 1);
        let k4 = Graph::complete(4);
        let h = validate_hub(&k4, &[0, 1], 2, 2).unwrap();
        assert_eq!(solve_coloring_vd(&k4, &full(&k4, 3), &h).0.cost, 1);
        let e = Graph::empty(4);
        let h = validate_hub(&e, &[], 1, 0).unwrap();
        assert_eq!(solve_coloring_vd(&e, &full(&e, 1), &h).0.cost, 0);
    }

    #[test]
    fn fast_examples() {
        let p3 = Graph::path(3);
        let h = validate_hub(&p3, &[1], 1, 1).unwrap();
        let (sol, _) = solve_coloring_vd_fast(&p3, &full(&p3, 1), &h).unwrap();
        assert_eq!(sol.cost, 1);
        assert_eq!(sol.deleted_vertices, vec![1]);
        let c5 = Graph::cycle(5);
        let h = validate_hub(&c5, &[0, 2], 2, 2).unwrap();
        assert_eq!(
            solve_coloring_vd_fast(&c5, &full(&c5, 2), &h)
                .unwrap()
                .0
                .cost,
            1
        );
    }

    #[test]
    fn empty_hub_list_is_deleted() {
        let g = Graph::path(3);
        let la = ListAssignment::new(2, vec![0b11, 0, 0b11]).unwrap();
        let h = validate_hub(&g, &[1], 1, 1).unwrap();
        let (sol, _) = solve_coloring_vd_fast(&g, &la, &h).unwrap();
        assert_eq!(sol.cost, 1);
        assert_eq!(solve_coloring_vd(&g, &la, &h).0.cost, 1);
    }
}
