//! Hubs, their component decompositions and the derived star-shaped tree
//! decompositions.

use crate::error::{Error, Result};
use crate::graph::{parse_num, Graph};
use std::fmt::Write as _;

/// A validated (sigma, delta)-hub of a graph.
///
/// `components` are the connected components of `G - hub`, each sorted and
/// ordered by minimum vertex; `boundaries[i]` is the sorted set of hub
/// vertices adjacent to `components[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HubDecomposition {
    hub: Vec<usize>,
    position: Vec<Option<usize>>,
    components: Vec<Vec<usize>>,
    boundaries: Vec<Vec<usize>>,
    sigma: usize,
    delta: usize,
}

impl HubDecomposition {
    pub fn hub(&self) -> &[usize] {
        &self.hub
    }

    pub fn p(&self) -> usize {
        self.hub.len()
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Hub neighbours of component `i`.
    pub fn boundary(&self, i: usize) -> &[usize] {
        &self.boundaries[i]
    }

    pub fn in_hub(&self, v: usize) -> bool {
        self.position[v].is_some()
    }

    /// Index of `v` within the sorted hub, if it is a hub vertex.
    pub fn hub_position(&self, v: usize) -> Option<usize> {
        self.position[v]
    }

    /// Edges with both endpoints in the hub.
    pub fn hub_edges(&self, g: &Graph) -> Vec<(usize, usize)> {
        g.edges()
            .iter()
            .copied()
            .filter(|&(u, v)| self.in_hub(u) && self.in_hub(v))
            .collect()
    }

    /// Largest component and largest boundary actually present.
    pub fn tight_bounds(&self) -> (usize, usize) {
        let s = self.components.iter().map(Vec::len).max().unwrap_or(0);
        let d = self.boundaries.iter().map(Vec::len).max().unwrap_or(0);
        (s, d)
    }
}

/// Checks that `q_set` is a (sigma, delta)-hub of `g` and computes its
/// component decomposition.
pub fn validate_hub(
    g: &Graph,
    q_set: &[usize],
    sigma: usize,
    delta: usize,
) -> Result<HubDecomposition> {
    let n = g.n();
    let mut hub: Vec<usize> = q_set.to_vec();
    hub.sort_unstable();
    hub.dedup();
    if let Some(&v) = hub.iter().find(|&&v| v >= n) {
        return Err(Error::Invalid(format!(
            "hub vertex {v} is not a vertex of the graph"
        )));
    }
    let mut position = vec![None; n];
    let mut removed = vec![false; n];
    for (i, &v) in hub.iter().enumerate() {
        position[v] = Some(i);
        removed[v] = true;
    }
    let components = g.components_avoiding(&removed);
    let mut boundaries = Vec::with_capacity(components.len());
    for comp in &components {
        if comp.len() > sigma {
            return Err(Error::ComponentTooLarge {
                component: comp.clone(),
                size: comp.len(),
            });
        }
        let mut b: Vec<usize> = comp
            .iter()
            .flat_map(|&v| g.neighbors(v))
            .copied()
            .filter(|&w| removed[w])
            .collect();
        b.sort_unstable();
        b.dedup();
        if b.len() > delta {
            return Err(Error::NeighborhoodTooLarge {
                component: comp.clone(),
                count: b.len(),
            });
        }
        boundaries.push(b);
    }
    Ok(HubDecomposition {
        hub,
        position,
        components,
        boundaries,
        sigma,
        delta,
    })
}

/// Validates `q_set` with the smallest sigma and delta it satisfies.
pub fn tight_hub(g: &Graph, q_set: &[usize]) -> HubDecomposition {
    let loose =
        validate_hub(g, q_set, usize::MAX, usize::MAX).expect("unbounded hub always validates");
    let (s, d) = loose.tight_bounds();
    HubDecomposition {
        sigma: s,
        delta: d,
        ..loose
    }
}

/// Deterministic greedy hub: while some component violates the bounds, move
/// its highest-degree vertex (smallest id on ties) into the hub; afterwards
/// drop hub vertices that turned out to be unnecessary, latest first.
pub fn greedy_hub(g: &Graph, sigma: usize, delta: usize) -> Vec<usize> {
    let mut q: Vec<usize> = Vec::new();
    loop {
        let offending = match validate_hub(g, &q, sigma, delta) {
            Ok(_) => break,
            Err(Error::ComponentTooLarge { component, .. })
            | Err(Error::NeighborhoodTooLarge { component, .. }) => component,
            Err(e) => unreachable!("unexpected hub validation error: {e}"),
        };
        let pick = offending
            .iter()
            .copied()
            .max_by(|&a, &b| g.degree(a).cmp(&g.degree(b)).then(b.cmp(&a)))
            .expect("offending components are nonempty");
        q.push(pick);
    }
    let mut i = q.len();
    while i > 0 {
        i -= 1;
        let mut trial = q.clone();
        trial.remove(i);
        if validate_hub(g, &trial, sigma, delta).is_ok() {
            q = trial;
        }
    }
    q.sort_unstable();
    q
}

/// A tree decomposition given by bags and tree edges between bag indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub tree_edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Largest bag size minus one, clamped at zero.
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Checks the three decomposition axioms against `g` and that the bag
    /// graph is a tree.
    pub fn check(&self, g: &Graph) -> std::result::Result<(), String> {
        let k = self.bags.len();
        if k == 0 {
            return Err("no bags".into());
        }
        if self.tree_edges.len() + 1 != k {
            return Err("bag graph is not a tree (wrong edge count)".into());
        }
        let mut tree = vec![Vec::new(); k];
        for &(a, b) in &self.tree_edges {
            if a >= k || b >= k {
                return Err("tree edge refers to a missing bag".into());
            }
            tree[a].push(b);
            tree[b].push(a);
        }
        if reachable(&tree, &vec![true; k], 0) != k {
            return Err("bag graph is disconnected".into());
        }
        let mut holders = vec![Vec::new(); g.n()];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= g.n() {
                    return Err(format!("bag {i} holds unknown vertex {v}"));
                }
                holders[v].push(i);
            }
        }
        for (v, hs) in holders.iter().enumerate() {
            if hs.is_empty() {
                return Err(format!("vertex {v} is in no bag"));
            }
            let mut mask = vec![false; k];
            for &h in hs {
                mask[h] = true;
            }
            if reachable(&tree, &mask, hs[0]) != hs.len() {
                return Err(format!("bags holding vertex {v} are not connected"));
            }
        }
        for &(u, v) in g.edges() {
            if !holders[u]
                .iter()
                .any(|b| self.bags[*b].binary_search(&v).is_ok())
            {
                return Err(format!("edge ({u},{v}) is in no bag"));
            }
        }
        Ok(())
    }
}

fn reachable(tree: &[Vec<usize>], allowed: &[bool], start: usize) -> usize {
    let mut seen = vec![false; tree.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut count = 0;
    while let Some(b) = stack.pop() {
        count += 1;
        for &c in &tree[b] {
            if allowed[c] && !seen[c] {
                seen[c] = true;
                stack.push(c);
            }
        }
    }
    count
}

/// The star decomposition: centre bag `Q`, one leaf bag `Q ∪ C` per
/// component `C`. Its width is at most `p + sigma - 1`.
pub fn hub_to_tree_decomposition(h: &HubDecomposition) -> TreeDecomposition {
    let mut bags = vec![h.hub.clone()];
    let mut tree_edges = Vec::new();
    for comp in &h.components {
        let mut bag: Vec<usize> = h.hub.iter().chain(comp).copied().collect();
        bag.sort_unstable();
        tree_edges.push((0, bags.len()));
        bags.push(bag);
    }
    TreeDecomposition { bags, tree_edges }
}

/// A hub as stored on disk, before validation against a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HubSpec {
    pub vertices: Vec<usize>,
    pub sigma: usize,
    pub delta: usize,
}

/// Parses `hub <p> <sigma> <delta>` followed by `p` 1-based vertex ids.
pub fn parse_hub(text: &str) -> Result<HubSpec> {
    let mut header = None;
    let mut vertices = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        if toks.is_empty() || toks[0] == "#" {
            continue;
        }
        if toks[0] == "hub" {
            if header.is_some() || toks.len() != 4 {
                return Err(Error::parse(
                    line,
                    "malformed header, expected `hub <p> <sigma> <delta>`",
                ));
            }
            let p: usize = parse_num(toks[1], line)?;
            header = Some((p, parse_num(toks[2], line)?, parse_num(toks[3], line)?));
            continue;
        }
        if header.is_none() {
            return Err(Error::parse(line, "hub ids before header"));
        }
        for t in toks {
            let v: usize = parse_num(t, line)?;
            if v == 0 {
                return Err(Error::parse(line, "vertex ids are 1-based"));
            }
            vertices.push(v - 1);
        }
    }
    let (p, sigma, delta) = header.ok_or_else(|| Error::parse(0, "missing hub header"))?;
    if vertices.len() != p {
        return Err(Error::parse(
            0,
            format!("header declares {p} hub vertices, found {}", vertices.len()),
        ));
    }
    Ok(HubSpec {
        vertices,
        sigma,
        delta,
    })
}

pub fn write_hub(h: &HubDecomposition) -> String {
    let mut out = format!("hub {} {} {}\n", h.p(), h.sigma(), h.delta());
    let ids: Vec<String> = h.hub().iter().map(|v| (v + 1).to_string()).collect();
    writeln!(out, "{}", ids.join(" ")).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_split_by_middle() {
        let g = Graph::path(3);
        let h = validate_hub(&g, &[1], 1, 1).unwrap();
        assert_eq!(h.components(), &[vec![0], vec![2]]);
        let td = hub_to_tree_decomposition(&h);
        assert_eq!(td.bags, vec![vec![1], vec![0, 1], vec![1, 2]]);
        assert_eq!(td.width(), 1);
        td.check(&g).unwrap();
    }

    #[test]
    fn triangle_neighbourhood_bounds() {
        let g = Graph::complete(3);
        assert!(validate_hub(&g, &[0], 2, 1).is_ok());
        assert!(matches!(
            validate_hub(&g, &[0], 2, 0),
            Err(Error::NeighborhoodTooLarge { count: 1, .. })
        ));
        assert!(matches!(
            validate_hub(&g, &[], 2, 0),
            Err(Error::ComponentTooLarge { size: 3, .. })
        ));
    }

    #[test]
    fn triangle_width_bound() {
        let g = Graph::complete(3);
        let h = validate_hub(&g, &[0, 1], 1, 2).unwrap();
        let td = hub_to_tree_decomposition(&h);
        assert_eq!(td.width(), 2);
        td.check(&g).unwrap();
    }

    #[test]
    fn empty_graph_single_bag() {
        let g = Graph::empty(0);
        let h = validate_hub(&g, &[], 0, 0).unwrap();
        let td = hub_to_tree_decomposition(&h);
        assert_eq!(td.bags, vec![Vec::<usize>::new()]);
        assert_eq!(td.width(), 0);
        td.check(&g).unwrap();
    }

    #[test]
    fn greedy_examples() {
        assert!(greedy_hub(&Graph::empty(4), 1, 0).is_empty());
        assert_eq!(greedy_hub(&Graph::complete(4), 1, 3).len(), 3);
        let star = Graph::new(6, (1..6).map(|i| (0, i))).unwrap();
        assert_eq!(greedy_hub(&star, 1, 1), vec![0]);
    }

    #[test]
    fn hub_file_round_trip() {
        let g = Graph::path(3);
        let h = validate_hub(&g, &[1], 1, 1).unwrap();
        let spec = parse_hub(&write_hub(&h)).unwrap();
        assert_eq!(
            spec,
            HubSpec {
                vertices: vec![1],
                sigma: 1,
                delta: 1
            }
        );
        assert!(parse_hub("hub 2 1 1\n1\n").is_err());
    }
}
