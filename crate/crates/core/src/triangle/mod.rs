//! Triangle packing and partition: exact oracles, the equality gadget and
//! the reduction from uniform set partition, splitters, and the hub
//! algorithm through precolored instances.

mod precolored;
mod splitter;

pub use precolored::{
    hub_triangles, oracle_precolored, solve_precolored, solve_triangle_packing, PackingElement,
    PrecoloredInstance, TrianglePackingOutcome, COMBINATION_CAP, MAX_HUB,
};
pub use splitter::{
    build_splitter, is_even_split, monte_carlo_reps, SplitterBackend, SplitterFamily,
    SPLITTER_SUBSET_CAP,
};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hub::{validate_hub, HubDecomposition};
use crate::setsys::{SetSystem, Variant};

/// Vertices of a triangle, increasing.
pub type Triangle = [usize; 3];

/// The oracle accepts graphs with at most this many triangles, or at most
/// [`ORACLE_VERTEX_CAP`] vertices.
pub const ORACLE_TRIANGLE_CAP: usize = 20;
pub const ORACLE_VERTEX_CAP: usize = 12;
/// Node budget of the triangle partition search.
pub const PARTITION_NODE_CAP: u64 = 50_000_000;

/// Largest set of pairwise vertex-disjoint triangles among `triangles`, by
/// branch and bound (include or skip each triangle, pruned by the number of
/// untouched vertices).
pub fn best_packing(n: usize, triangles: &[Triangle]) -> Vec<Triangle> {
    struct Bb<'a> {
        tris: &'a [Triangle],
        used: Vec<bool>,
        current: Vec<Triangle>,
        best: Vec<Triangle>,
    }
    impl Bb<'_> {
        fn go(&mut self, i: usize, free: usize) {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            if i == self.tris.len() || self.current.len() + free / 3 <= self.best.len() {
                return;
            }
            let t = self.tris[i];
            if t.iter().all(|&v| !self.used[v]) {
                t.iter().for_each(|&v| self.used[v] = true);
                self.current.push(t);
                self.go(i + 1, free - 3);
                self.current.pop();
                t.iter().for_each(|&v| self.used[v] = false);
            }
            self.go(i + 1, free);
        }
    }
    let mut touched = vec![false; n];
    for t in triangles {
        t.iter().for_each(|&v| touched[v] = true);
    }
    let free = touched.iter().filter(|&&b| b).count();
    let mut bb = Bb {
        tris: triangles,
        used: vec![false; n],
        current: Vec::new(),
        best: Vec::new(),
    };
    bb.go(0, free);
    bb.best
}

/// Triangles of `g` inside `vertices`.
pub fn triangles_within(g: &Graph, vertices: &[usize]) -> Vec<Triangle> {
    let mut inside = vec![false; g.n()];
    vertices.iter().for_each(|&v| inside[v] = true);
    g.triangles()
        .into_iter()
        .filter(|t| t.iter().all(|&v| inside[v]))
        .collect()
}

/// Exact maximum triangle packing for small graphs.
pub fn oracle_triangle_packing(g: &Graph) -> Result<usize> {
    let tris = g.triangles();
    if tris.len() > ORACLE_TRIANGLE_CAP && g.n() > ORACLE_VERTEX_CAP {
        return Err(Error::too_large(
            "triangles for the packing oracle",
            tris.len() as u64,
            ORACLE_TRIANGLE_CAP as u64,
        ));
    }
    Ok(best_packing(g.n(), &tris).len())
}

/// Checks that `packing` consists of pairwise vertex-disjoint triangles of `g`.
pub fn verify_packing(g: &Graph, packing: &[Triangle]) -> std::result::Result<(), String> {
    let mut used = vec![false; g.n()];
    for t in packing {
        if t.iter().any(|&v| v >= g.n()) {
            return Err(format!("triangle {t:?} has a vertex outside the graph"));
        }
        if !(g.has_edge(t[0], t[1]) && g.has_edge(t[1], t[2]) && g.has_edge(t[0], t[2])) {
            return Err(format!("{t:?} is not a triangle"));
        }
        for &v in t {
            if std::mem::replace(&mut used[v], true) {
                return Err(format!("vertex {v} is used twice"));
            }
        }
    }
    Ok(())
}

/// A partition of all vertices into triangles, if one exists, by exact-cover
/// search (the vertex with the fewest available triangles first).
pub fn triangle_partition(g: &Graph) -> Result<Option<Vec<Triangle>>> {
    if g.n() % 3 != 0 {
        return Ok(None);
    }
    let tris = g.triangles();
    let mut by_vertex = vec![Vec::new(); g.n()];
    for (i, t) in tris.iter().enumerate() {
        t.iter().for_each(|&v| by_vertex[v].push(i));
    }
    struct Cover<'a> {
        tris: &'a [Triangle],
        by_vertex: Vec<Vec<usize>>,
        used: Vec<bool>,
        chosen: Vec<Triangle>,
        nodes: u64,
    }
    impl Cover<'_> {
        fn go(&mut self) -> Result<bool> {
            self.nodes += 1;
            if self.nodes > PARTITION_NODE_CAP {
                return Err(Error::too_large(
                    "triangle partition search nodes",
                    self.nodes,
                    PARTITION_NODE_CAP,
                ));
            }
            let mut pick: Option<(usize, usize)> = None;
            for v in 0..self.used.len() {
                if self.used[v] {
                    continue;
                }
                let free = self.by_vertex[v]
                    .iter()
                    .filter(|&&i| self.tris[i].iter().all(|&w| !self.used[w]))
                    .count();
                if pick.is_none_or(|(f, _)| free < f) {
                    pick = Some((free, v));
                    if free == 0 {
                        return Ok(false);
                    }
                }
            }
            let Some((_, v)) = pick else { return Ok(true) };
            let options: Vec<usize> = self.by_vertex[v]
                .iter()
                .copied()
                .filter(|&i| self.tris[i].iter().all(|&w| !self.used[w]))
                .collect();
            for i in options {
                let t = self.tris[i];
                t.iter().for_each(|&w| self.used[w] = true);
                self.chosen.push(t);
                if self.go()? {
                    return Ok(true);
                }
                self.chosen.pop();
                t.iter().for_each(|&w| self.used[w] = false);
            }
            Ok(false)
        }
    }
    let mut cover = Cover {
        tris: &tris,
        by_vertex,
        used: vec![false; g.n()],
        chosen: Vec::new(),
        nodes: 0,
    };
    Ok(cover.go()?.then_some(cover.chosen))
}

/// Every inclusion-maximal triangle packing of `g` that covers all of
/// `must_cover` (exhaustive; meant for gadget-sized graphs).
pub fn maximal_packings_covering(g: &Graph, must_cover: &[usize]) -> Vec<Vec<Triangle>> {
    fn go(
        tris: &[Triangle],
        i: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<Triangle>,
        out: &mut Vec<Vec<Triangle>>,
        need: &[usize],
    ) {
        if i == tris.len() {
            let maximal = tris.iter().all(|t| t.iter().any(|&v| used[v]));
            if maximal && need.iter().all(|&v| used[v]) {
                out.push(cur.clone());
            }
            return;
        }
        let t = tris[i];
        if t.iter().all(|&v| !used[v]) {
            t.iter().for_each(|&v| used[v] = true);
            cur.push(t);
            go(tris, i + 1, used, cur, out, need);
            cur.pop();
            t.iter().for_each(|&v| used[v] = false);
        }
        go(tris, i + 1, used, cur, out, need);
    }
    let tris = g.triangles();
    let mut out = Vec::new();
    go(
        &tris,
        0,
        &mut vec![false; g.n()],
        &mut Vec::new(),
        &mut out,
        must_cover,
    );
    out
}

/// A graph with designated portal vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleGadget {
    pub graph: Graph,
    pub portals: Vec<usize>,
}

/// The equality gadget on `4r` vertices: portals `p_i` (ids `0..r`), then
/// `q_i`, `a_i`, `b_i`. Its triangles are `(a_i, b_i, p_i)`,
/// `(q_i, b_i, a_{i+1 mod r})` and the consecutive `q`-triples; every
/// packing covering all non-portals either covers every portal or none.
pub fn build_trieq(r: usize) -> Result<TriangleGadget> {
    if r < 3 || r % 3 != 0 {
        return Err(Error::BadArity(format!(
            "the equality gadget needs r >= 3 divisible by 3, got {r}"
        )));
    }
    let p = |i: usize| i;
    let q = |i: usize| r + i;
    let a = |i: usize| 2 * r + i;
    let b = |i: usize| 3 * r + i;
    let mut tris = Vec::new();
    for i in 0..r {
        tris.push([a(i), b(i), p(i)]);
        tris.push([q(i), b(i), a((i + 1) % r)]);
    }
    for j in 0..r / 3 {
        tris.push([q(3 * j), q(3 * j + 1), q(3 * j + 2)]);
    }
    let edges = tris
        .iter()
        .flat_map(|t| [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])]);
    Ok(TriangleGadget {
        graph: Graph::new(4 * r, edges)?,
        portals: (0..r).collect(),
    })
}

/// Uniform set partition with set size `r` divisible by 3 → triangle
/// partition. The universe becomes the hub; every set gets its own gadget
/// whose portals are identified with the set's elements.
pub fn reduce_partition_to_triangle(sys: &SetSystem) -> Result<(Graph, HubDecomposition)> {
    if sys.variant() != Variant::PartitionEq {
        return Err(Error::Invalid(format!(
            "expected a partition-eq instance, got {}",
            sys.variant()
        )));
    }
    sys.check_covering()?;
    let r = sys.d();
    let gadget = build_trieq(r)?;
    let n = sys.n();
    let mut edges = Vec::new();
    let mut next = n;
    for &s in sys.sets() {
        let elems = crate::setsys::elements(s);
        // Gadget vertex -> graph vertex: portals map onto the set's elements.
        let map: Vec<usize> = (0..4 * r)
            .map(|v| if v < r { elems[v] } else { next + v - r })
            .collect();
        next += 3 * r;
        edges.extend(gadget.graph.edges().iter().map(|&(u, v)| (map[u], map[v])));
    }
    let g = Graph::new(next, edges)?;
    let hub: Vec<usize> = (0..n).collect();
    let h = validate_hub(&g, &hub, 4 * r, r)?;
    Ok((g, h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_triangle_packing(&Graph::complete(3)).unwrap(), 1);
        let bowtie = Graph::new(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(oracle_triangle_packing(&bowtie).unwrap(), 1);
        assert_eq!(oracle_triangle_packing(&Graph::complete(6)).unwrap(), 2);
    }

    #[test]
    fn gadget_sizes() {
        assert_eq!(build_trieq(3).unwrap().graph.n(), 12);
        assert_eq!(build_trieq(6).unwrap().graph.n(), 24);
        assert!(matches!(build_trieq(4), Err(Error::BadArity(_))));
    }

    #[test]
    fn single_set_partition() {
        let sys = SetSystem::new(3, vec![0b111], Variant::PartitionEq, 3, None).unwrap();
        let (g, h) = reduce_partition_to_triangle(&sys).unwrap();
        assert_eq!(g.n(), 12);
        assert_eq!(h.p(), 3);
        let part = triangle_partition(&g).unwrap().unwrap();
        verify_packing(&g, &part).unwrap();
        let empty = SetSystem::new(3, vec![], Variant::PartitionEq, 3, None).unwrap();
        assert!(reduce_partition_to_triangle(&empty).is_err());
    }
}
