//! Edge-deletion q-coloring with a hub: enumerate hub colorings, charge each
//! component its precomputed local optimum.

use super::{sat_pow, ColoringSolution, SolveStats};
use crate::error::Result;
use crate::graph::Graph;
use crate::hub::HubDecomposition;
use crate::minsum::{MinSum, DEFAULT_TABLE_CAP};

/// Optimum edge deletion. For each component a table gives the fewest
/// monochromatic edges inside the component and towards the hub for every
/// coloring of its hub neighbours; the hub colorings are then enumerated
/// depth-first with branch and bound (at most `q^p` leaves).
pub fn solve_coloring_ed(
    g: &Graph,
    h: &HubDecomposition,
    q: usize,
) -> Result<(ColoringSolution, SolveStats)> {
    assert!(q >= 1, "q must be positive");
    let p = h.p();
    let mut tables = Vec::with_capacity(h.components().len());
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); p];
    let mut constant = 0u64;
    for (ci, comp) in h.components().iter().enumerate() {
        let boundary = h.boundary(ci);
        let table = component_table(g, comp, boundary, q)?;
        match boundary.last() {
            Some(&b) => due[h.hub_position(b).unwrap()].push(ci),
            None => constant += table[0],
        }
        tables.push(table);
    }
    let mut hub_nbrs: Vec<Vec<usize>> = vec![Vec::new(); p];
    for (u, v) in h.hub_edges(g) {
        let (a, b) = (h.hub_position(u).unwrap(), h.hub_position(v).unwrap());
        hub_nbrs[a.max(b)].push(a.min(b));
    }

    let mut search = EdSearch {
        h,
        q,
        tables: &tables,
        due,
        hub_nbrs,
        state: vec![0; p],
        best: u64::MAX,
        best_state: vec![0; p],
        leaves: 0,
    };
    search.go(0, constant);

    let mut colors = vec![0u8; g.n()];
    for (i, &v) in h.hub().iter().enumerate() {
        colors[v] = search.best_state[i];
    }
    for comp in h.components() {
        for (v, c) in comp.iter().zip(component_witness(g, comp, &colors, q)?) {
            colors[*v] = c;
        }
    }
    let sol = ColoringSolution::from_edge_deletion(g, colors);
    debug_assert_eq!(sol.cost as u64, search.best);
    let stats = SolveStats {
        leaves: search.leaves,
        bound: sat_pow(q as u128, p),
    };
    Ok((sol, stats))
}

/// Minimum edge deletion on a whole graph by min-sum variable elimination
/// (exact; fails only when the elimination tables exceed the cap).
pub fn min_edge_deletion(g: &Graph, q: usize) -> Result<ColoringSolution> {
    let mut ms = MinSum::new(g.n(), q);
    for &(u, v) in g.edges() {
        ms.add_conflict(u, v);
    }
    let (_, colors) = ms
        .solve_with_assignment(DEFAULT_TABLE_CAP)?
        .expect("unrestricted coloring is feasible");
    Ok(ColoringSolution::from_edge_deletion(g, colors))
}

/// Table over colorings of `boundary` (first boundary vertex most
/// significant) of the fewest monochromatic edges incident to `comp`.
fn component_table(g: &Graph, comp: &[usize], boundary: &[usize], q: usize) -> Result<Vec<u64>> {
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in comp.iter().chain(boundary).enumerate() {
        local[v] = i;
    }
    let mut ms = MinSum::new(comp.len() + boundary.len(), q);
    for &v in comp {
        for &w in g.neighbors(v) {
            // Each component-internal edge once; every edge to the hub.
            if local[w] != usize::MAX && (local[w] >= comp.len() || v < w) {
                ms.add_conflict(local[v], local[w]);
            }
        }
    }
    let keep: Vec<usize> = (comp.len()..comp.len() + boundary.len()).collect();
    ms.solve(&keep, DEFAULT_TABLE_CAP)
}

/// Optimal colors of `comp` given the hub colors in `colors`.
fn component_witness(g: &Graph, comp: &[usize], colors: &[u8], q: usize) -> Result<Vec<u8>> {
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in comp.iter().enumerate() {
        local[v] = i;
    }
    let mut ms = MinSum::new(comp.len(), q);
    for &v in comp {
        let mut unary = vec![0u64; q];
        for &w in g.neighbors(v) {
            if local[w] == usize::MAX {
                unary[colors[w] as usize] += 1;
            } else if v < w {
                ms.add_conflict(local[v], local[w]);
            }
        }
        ms.add_unary(local[v], unary);
    }
    Ok(ms
        .solve_with_assignment(DEFAULT_TABLE_CAP)?
        .expect("feasible")
        .1)
}

struct EdSearch<'a> {
    h: &'a HubDecomposition,
    q: usize,
    tables: &'a [Vec<u64>],
    due: Vec<Vec<usize>>,
    /// Earlier hub neighbours of each hub position.
    hub_nbrs: Vec<Vec<usize>>,
    state: Vec<u8>,
    best: u64,
    best_state: Vec<u8>,
    leaves: u64,
}

impl EdSearch<'_> {
    fn go(&mut self, i: usize, cost: u64) {
        if cost >= self.best {
            return;
        }
        if i == self.state.len() {
            self.leaves += 1;
            self.best = cost;
            self.best_state = self.state.clone();
            return;
        }
        for c in 0..self.q as u8 {
            self.state[i] = c;
            let mut extra = self.hub_nbrs[i]
                .iter()
                .filter(|&&j| self.state[j] == c)
                .count() as u64;
            for &ci in &self.due[i] {
                let idx = self.h.boundary(ci).iter().fold(0, |acc, &b| {
                    acc * self.q + self.state[self.h.hub_position(b).unwrap()] as usize
                });
                extra += self.tables[ci][idx];
            }
            self.go(i + 1, cost + extra);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hub::validate_hub;

    #[test]
    fn examples() {
        let k3 = Graph::complete(3);
        let h = validate_hub(&k3, &[0], 2, 1).unwrap();
        assert_eq!(solve_coloring_ed(&k3, &h, 2).unwrap().0.cost, 1);
        let c5 = Graph::cycle(5);
        let h = validate_hub(&c5, &[0, 2], 2, 2).unwrap();
        let (sol, _) = solve_coloring_ed(&c5, &h, 2).unwrap();
        assert_eq!(sol.cost, 1);
        assert_eq!(c5.m() - sol.cost, 4);
        let k4 = Graph::complete(4);
        let h = validate_hub(&k4, &[0, 1], 2, 2).unwrap();
        assert_eq!(solve_coloring_ed(&k4, &h, 3).unwrap().0.cost, 1);
        assert_eq!(min_edge_deletion(&k4, 3).unwrap().cost, 1);
    }
}
