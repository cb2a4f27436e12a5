//! q-Coloring by exhaustive enumeration of hub colorings.

use super::{extend_coloring, sat_pow, ColoringSolution, SolveStats};
use crate::graph::Graph;
use crate::hub::HubDecomposition;
use crate::lists::full_mask;
use std::collections::HashMap;

/// Finds a proper `q`-coloring, if one exists.
///
/// Hub colorings are enumerated depth-first (skipping those that are already
/// improper on hub edges); each complete hub coloring is tested by extending
/// every component, with results memoized per (component, boundary
/// coloring).
pub fn solve_coloring(
    g: &Graph,
    h: &HubDecomposition,
    q: usize,
) -> (Option<ColoringSolution>, SolveStats) {
    assert!(q >= 1, "q must be positive");
    let mut search = Search {
        g,
        h,
        q,
        color: vec![None; g.n()],
        memo: HashMap::new(),
        leaves: 0,
    };
    let found = search.hub(0);
    let stats = SolveStats {
        leaves: search.leaves,
        bound: sat_pow(q as u128, h.p()),
    };
    if !found {
        return (None, stats);
    }
    let mut color = search.color;
    let full = full_mask(q);
    for comp in h.components() {
        let ok = extend_coloring(g, comp, &|_| full, &mut color);
        debug_assert!(ok);
    }
    let sol = ColoringSolution::proper(
        color
            .into_iter()
            .map(|c| c.expect("every vertex colored"))
            .collect(),
    );
    debug_assert_eq!(sol.verify(g, q, None), Ok(()));
    (Some(sol), stats)
}

struct Search<'a> {
    g: &'a Graph,
    h: &'a HubDecomposition,
    q: usize,
    color: Vec<Option<u8>>,
    memo: HashMap<(usize, Vec<u8>), bool>,
    leaves: u64,
}

impl Search<'_> {
    fn hub(&mut self, i: usize) -> bool {
        let Some(&v) = self.h.hub().get(i) else {
            self.leaves += 1;
            return self.components_extend();
        };
        for c in 0..self.q as u8 {
            if self
                .g
                .neighbors(v)
                .iter()
                .any(|&w| self.h.in_hub(w) && self.color[w] == Some(c))
            {
                continue;
            }
            self.color[v] = Some(c);
            if self.hub(i + 1) {
                return true;
            }
        }
        self.color[v] = None;
        false
    }

    fn components_extend(&mut self) -> bool {
        let full = full_mask(self.q);
        for (i, comp) in self.h.components().iter().enumerate() {
            let key: Vec<u8> = self
                .h
                .boundary(i)
                .iter()
                .map(|&b| self.color[b].unwrap())
                .collect();
            let g = self.g;
            let color = &mut self.color;
            let ok = *self.memo.entry((i, key)).or_insert_with(|| {
                let ok = extend_coloring(g, comp, &|_| full, color);
                for &v in comp {
                    color[v] = None;
                }
                ok
            });
            if !ok {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hub::validate_hub;

    #[test]
    fn triangle() {
        let g = Graph::complete(3);
        let h = validate_hub(&g, &[0, 1], 1, 2).unwrap();
        assert!(solve_coloring(&g, &h, 3).0.is_some());
        assert!(solve_coloring(&g, &h, 2).0.is_none());
    }

    #[test]
    fn leaves_within_bound() {
        let g = Graph::cycle(7);
        let h = validate_hub(&g, &[0, 3], 3, 2).unwrap();
        let (sol, stats) = solve_coloring(&g, &h, 2);
        assert!(sol.is_none());
        assert!(u128::from(stats.leaves) <= stats.bound);
    }
}
