//! Exhaustive reference solvers. They deliberately share no code with the
//! hub solvers they check.

use super::ColoringSolution;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lists::ListAssignment;

/// Vertex cap for the coloring oracles.
pub const ORACLE_VERTEX_CAP: usize = 12;
/// Edge cap for the edge-subset oracle.
pub const ORACLE_EDGE_CAP: usize = 18;

fn check_vertices(g: &Graph) -> Result<()> {
    if g.n() > ORACLE_VERTEX_CAP {
        return Err(Error::too_large(
            "vertices",
            g.n() as u64,
            ORACLE_VERTEX_CAP as u64,
        ));
    }
    Ok(())
}

/// Tries every assignment from `lists` in lexicographic order and returns the
/// first proper one among the vertices not in `skip`.
fn first_proper(g: &Graph, lists: &[u32], skip: &[bool]) -> Option<Vec<u8>> {
    let n = g.n();
    let mut colors = vec![0u8; n];
    fn rec(g: &Graph, lists: &[u32], skip: &[bool], v: usize, colors: &mut Vec<u8>) -> bool {
        if v == g.n() {
            return g
                .edges()
                .iter()
                .all(|&(a, b)| skip[a] || skip[b] || colors[a] != colors[b]);
        }
        if skip[v] {
            return rec(g, lists, skip, v + 1, colors);
        }
        for c in 0..16u8 {
            if lists[v] >> c & 1 == 1 {
                // Prune only against earlier vertices so the search stays a
                // plain enumeration.
                if g.neighbors(v)
                    .iter()
                    .any(|&w| w < v && !skip[w] && colors[w] == c)
                {
                    continue;
                }
                colors[v] = c;
                if rec(g, lists, skip, v + 1, colors) {
                    return true;
                }
            }
        }
        false
    }
    rec(g, lists, skip, 0, &mut colors).then_some(colors)
}

/// A proper `q`-coloring, if one exists.
pub fn oracle_coloring(g: &Graph, q: usize) -> Result<Option<Vec<u8>>> {
    oracle_list_coloring(g, &ListAssignment::full(g.n(), q))
}

/// A proper list coloring, if one exists.
pub fn oracle_list_coloring(g: &Graph, la: &ListAssignment) -> Result<Option<Vec<u8>>> {
    check_vertices(g)?;
    Ok(first_proper(g, la.masks(), &vec![false; g.n()]))
}

/// Minimum vertex deletion: tries deletion sets by increasing size.
pub fn oracle_vd(g: &Graph, la: &ListAssignment) -> Result<ColoringSolution> {
    check_vertices(g)?;
    let n = g.n();
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for m in masks {
        let skip: Vec<bool> = (0..n).map(|v| m >> v & 1 == 1).collect();
        if let Some(colors) = first_proper(g, la.masks(), &skip) {
            let assignment = (0..n).map(|v| (!skip[v]).then_some(colors[v])).collect();
            return Ok(ColoringSolution::from_vertex_deletion(assignment));
        }
    }
    unreachable!("deleting every vertex always succeeds")
}

/// Minimum edge deletion: minimum number of monochromatic edges over all
/// `q^n` colorings.
pub fn oracle_ed(g: &Graph, q: usize) -> Result<ColoringSolution> {
    check_vertices(g)?;
    let n = g.n();
    let total = q.pow(n as u32);
    let mut best: Option<(usize, Vec<u8>)> = None;
    let mut colors = vec![0u8; n];
    for code in 0..total {
        let mut c = code;
        for v in (0..n).rev() {
            colors[v] = (c % q) as u8;
            c /= q;
        }
        let mono = g.monochromatic_edges(&colors);
        if best.as_ref().is_none_or(|(b, _)| mono < *b) {
            best = Some((mono, colors.clone()));
        }
    }
    let (_, colors) = best.expect("at least one coloring");
    Ok(ColoringSolution::from_edge_deletion(g, colors))
}

/// Minimum edge deletion by trying edge subsets of increasing size.
pub fn oracle_ed_by_edge_subsets(g: &Graph, q: usize) -> Result<usize> {
    let m = g.m();
    if m > ORACLE_EDGE_CAP {
        return Err(Error::too_large("edges", m as u64, ORACLE_EDGE_CAP as u64));
    }
    check_vertices(g)?;
    let mut masks: Vec<u32> = (0..1u32 << m).collect();
    masks.sort_by_key(|x| x.count_ones());
    for x in masks {
        let kept = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(i, _)| x >> i & 1 == 0)
            .map(|(_, &e)| e);
        let h = Graph::new(g.n(), kept).expect("subgraph edges are valid");
        if first_proper(
            &h,
            ListAssignment::full(g.n(), q).masks(),
            &vec![false; g.n()],
        )
        .is_some()
        {
            return Ok(x.count_ones() as usize);
        }
    }
    unreachable!("deleting every edge always succeeds")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let k3 = Graph::complete(3);
        assert!(oracle_coloring(&k3, 3).unwrap().is_some());
        assert!(oracle_coloring(&k3, 2).unwrap().is_none());
        assert_eq!(oracle_vd(&k3, &ListAssignment::full(3, 2)).unwrap().cost, 1);
        assert_eq!(oracle_ed(&Graph::cycle(5), 2).unwrap().cost, 1);
        assert_eq!(oracle_ed_by_edge_subsets(&Graph::cycle(5), 2).unwrap(), 1);
        assert_eq!(oracle_ed(&Graph::complete(4), 3).unwrap().cost, 1);
    }

    #[test]
    fn caps_enforced() {
        assert!(oracle_coloring(&Graph::empty(13), 2).is_err());
        assert!(oracle_ed_by_edge_subsets(&Graph::complete(7), 2).is_err());
    }
}
