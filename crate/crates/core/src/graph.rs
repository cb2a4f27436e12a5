//! Simple undirected graphs with dense integer vertex ids.

use crate::error::{Error, Result};
use std::collections::VecDeque;
use std::fmt::Write as _;

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are sorted and the edge list holds each edge once as
/// `(u, v)` with `u < v`, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, collapsing duplicate edges.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Invalid(format!(
                    "edge ({u},{v}) has an endpoint >= {n}"
                )));
            }
            if u == v {
                return Err(Error::Invalid(format!("self-loop at vertex {u}")));
            }
            list.push((u.min(v), u.max(v)));
        }
        Ok(Self::from_normalized(n, list))
    }

    /// The graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    /// The complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_normalized(n, edges.collect())
    }

    /// The cycle `0-1-...-(n-1)-0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
    }

    /// The path `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    fn from_normalized(n: usize, mut edges: Vec<(usize, usize)>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self { adj, edges }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Returns a copy with one extra edge (no-op if already present).
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        Self::new(self.n(), self.edges.iter().copied().chain([(u, v)]))
    }

    /// Returns `G - v` with the remaining vertices renumbered in order.
    pub fn without_vertex(&self, v: usize) -> Self {
        let keep: Vec<usize> = (0..self.n()).filter(|&u| u != v).collect();
        self.induced(&keep).0
    }

    /// The subgraph induced by `vertices` (renumbered `0..k` in the given
    /// order) together with the map from new ids to old ids.
    pub fn induced(&self, vertices: &[usize]) -> (Self, Vec<usize>) {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        (
            Self::new(vertices.len(), edges).expect("induced edges are valid"),
            vertices.to_vec(),
        )
    }

    /// Connected components of the graph with `removed` vertices deleted.
    /// Each component is sorted; components are ordered by minimum vertex.
    pub fn components_avoiding(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = removed.to_vec();
        seen.resize(n, false);
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// All triangles `(a, b, c)` with `a < b < c`, in lexicographic order.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            for &c in &self.adj[b] {
                if c > b && self.has_edge(a, c) {
                    out.push([a, b, c]);
                }
            }
        }
        out
    }

    /// Number of edges whose endpoints receive the same color.
    pub fn monochromatic_edges(&self, colors: &[u8]) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| colors[u] == colors[v])
            .count()
    }
}

/// Parses the graph file format: a header `p <n> <m>` followed by lines
/// `e <u> <v>` with 1-based ids. Lines starting with `c` or `#` are comments.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut n = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tok = raw.split_whitespace();
        let Some(head) = tok.next() else { continue };
        match head {
            "c" | "#" => continue,
            "p" => {
                if n.is_some() {
                    return Err(Error::parse(line, "duplicate header"));
                }
                let mut nums: Vec<&str> = tok.collect();
                if nums.first().is_some_and(|t| t.parse::<usize>().is_err()) {
                    nums.remove(0);
                }
                if nums.len() != 2 {
                    return Err(Error::parse(line, "malformed header, expected `p <n> <m>`"));
                }
                let vn: usize = parse_num(nums[0], line)?;
                parse_num::<usize>(nums[1], line)?;
                n = Some(vn);
            }
            "e" => {
                let Some(vn) = n else {
                    return Err(Error::parse(line, "edge before header"));
                };
                let u: usize = parse_num(tok.next().unwrap_or(""), line)?;
                let v: usize = parse_num(tok.next().unwrap_or(""), line)?;
                if tok.next().is_some() {
                    return Err(Error::parse(line, "trailing tokens after edge"));
                }
                if u == 0 || v == 0 || u > vn || v > vn {
                    return Err(Error::parse(line, "vertex id out of range"));
                }
                if u == v {
                    return Err(Error::parse(line, "self-loop"));
                }
                edges.push((u - 1, v - 1));
            }
            other => return Err(Error::parse(line, format!("unknown line type `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| Error::parse(0, "missing header"))?;
    Graph::new(n, edges)
}

/// Serializes a graph in the canonical file form (sorted edges, 1-based).
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub(crate) fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected a number, found `{tok}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_path_and_triangle() {
        let p = parse_graph("p 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(p, Graph::path(3));
        let k3 = parse_graph("p 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(k3, Graph::complete(3));
    }

    #[test]
    fn rejects_out_of_range_and_loops() {
        let err = parse_graph("p 2 1\ne 1 3\n").unwrap_err();
        assert_eq!(err, Error::parse(2, "vertex id out of range"));
        assert!(parse_graph("p 2 1\ne 1 1\n").is_err());
        assert!(parse_graph("e 1 2\n").is_err());
        assert!(parse_graph("p x 1\n").is_err());
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = parse_graph("p 2 2\ne 1 2\ne 2 1\n").unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn triangles_of_k4() {
        assert_eq!(Graph::complete(4).triangles().len(), 4);
        assert!(Graph::cycle(5).triangles().is_empty());
    }

    #[test]
    fn components_ordered_by_min_vertex() {
        let g = Graph::new(5, [(3, 4), (0, 2)]).unwrap();
        assert_eq!(
            g.components_avoiding(&[]),
            vec![vec![0, 2], vec![1], vec![3, 4]]
        );
    }
}
