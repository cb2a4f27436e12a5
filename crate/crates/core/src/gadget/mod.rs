//! Edge-deletion gadgets: graphs with color lists and ordered portals, the
//! cost of extending a portal state, realization checks against relations,
//! and constructors for two-color relation realizers and Max Cut instances.

mod build;
mod maxcut;

pub use build::{
    build_forbid, build_one_realizer, build_or, build_or2, build_or2_pow, build_or_weighted,
    build_relation,
};
pub use maxcut::{
    build_list_instance, build_maxcut_instance, ListInstance, ListRemoval, MaxCutInstance,
    RealizerKind, Synthesis,
};

use crate::coloring::oracle_list_coloring;
use crate::error::{Error, Result};
use crate::graph::{parse_graph, parse_num, write_graph, Graph};
use crate::lists::{full_mask, ListAssignment, MAX_COLORS};
use crate::minsum::{MinSum, DEFAULT_TABLE_CAP, INF};
use std::collections::BTreeSet;
use std::fmt::Write as _;

/// The brute-force cost oracle enumerates colorings up to this many
/// vertices, or edge subsets up to [`BRUTE_EDGE_CAP`] edges.
pub const BRUTE_VERTEX_CAP: usize = 14;
pub const BRUTE_EDGE_CAP: usize = 18;

/// A graph with color lists over `0..q` and an ordered tuple of portals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    graph: Graph,
    lists: ListAssignment,
    portals: Vec<usize>,
}

impl Gadget {
    pub fn new(graph: Graph, lists: ListAssignment, portals: Vec<usize>) -> Result<Self> {
        if lists.n() != graph.n() {
            return Err(Error::Invalid(format!(
                "{} lists for {} vertices",
                lists.n(),
                graph.n()
            )));
        }
        let mut seen = vec![false; graph.n()];
        for &p in &portals {
            if p >= graph.n() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Invalid(format!(
                    "portal {p} is out of range or repeated"
                )));
            }
        }
        Ok(Self {
            graph,
            lists,
            portals,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn lists(&self) -> &ListAssignment {
        &self.lists
    }

    pub fn portals(&self) -> &[usize] {
        &self.portals
    }

    pub fn q(&self) -> usize {
        self.lists.q()
    }

    pub fn arity(&self) -> usize {
        self.portals.len()
    }

    /// Whether no two portals are adjacent (needed to stack copies on the
    /// same portals without creating parallel edges).
    pub fn portals_independent(&self) -> bool {
        self.portals.iter().enumerate().all(|(i, &a)| {
            self.portals[i + 1..]
                .iter()
                .all(|&b| !self.graph.has_edge(a, b))
        })
    }

    fn minsum(&self) -> MinSum {
        let mut ms = MinSum::new(self.graph.n(), self.q());
        for v in 0..self.graph.n() {
            ms.restrict(v, self.lists.mask(v));
        }
        for &(u, v) in self.graph.edges() {
            ms.add_conflict(u, v);
        }
        ms
    }

    fn check_tuple(&self, d: &[u8]) -> Result<()> {
        if d.len() != self.arity() || d.iter().any(|&c| c as usize >= self.q()) {
            return Err(Error::Invalid(format!(
                "state {d:?} does not fit {} portals over {} colors",
                self.arity(),
                self.q()
            )));
        }
        Ok(())
    }
}

/// A relation: a set of tuples of length `r` over `0..q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    q: usize,
    r: usize,
    tuples: BTreeSet<Vec<u8>>,
}

impl Relation {
    pub fn new(q: usize, r: usize, tuples: impl IntoIterator<Item = Vec<u8>>) -> Result<Self> {
        if q == 0 || q > MAX_COLORS {
            return Err(Error::Invalid(format!("q must be in 1..={MAX_COLORS}")));
        }
        let tuples: BTreeSet<Vec<u8>> = tuples.into_iter().collect();
        if let Some(t) = tuples
            .iter()
            .find(|t| t.len() != r || t.iter().any(|&c| c as usize >= q))
        {
            return Err(Error::Invalid(format!("tuple {t:?} is not in [{q}]^{r}")));
        }
        Ok(Self { q, r, tuples })
    }

    /// Every tuple of `[q]^r`.
    pub fn full(q: usize, r: usize) -> Result<Self> {
        Self::new(q, r, all_tuples(q, r))
    }

    /// All tuples except the all-`q` one (OR, reading color 0 as true).
    pub fn or(r: usize) -> Result<Self> {
        Self::excluding(&vec![1; r])
    }

    /// Two-color relation of all tuples except `d`.
    pub fn excluding(d: &[u8]) -> Result<Self> {
        Self::new(
            2,
            d.len(),
            all_tuples(2, d.len()).filter(|t| t.as_slice() != d),
        )
    }

    /// `{(0,1), (1,0)}`.
    pub fn neq() -> Self {
        Self::new(2, 2, [vec![0, 1], vec![1, 0]]).expect("valid tuples")
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn arity(&self) -> usize {
        self.r
    }

    pub fn tuples(&self) -> &BTreeSet<Vec<u8>> {
        &self.tuples
    }

    pub fn contains(&self, t: &[u8]) -> bool {
        self.tuples.contains(t)
    }

    /// Tuples outside the relation, in lexicographic order.
    pub fn excluded(&self) -> Vec<Vec<u8>> {
        all_tuples(self.q, self.r)
            .filter(|t| !self.tuples.contains(t))
            .collect()
    }
}

/// Every tuple of `[q]^r` in lexicographic order.
pub fn all_tuples(q: usize, r: usize) -> impl Iterator<Item = Vec<u8>> {
    let total = q.pow(r as u32);
    (0..total).map(move |mut code| {
        let mut t = vec![0u8; r];
        for slot in t.iter_mut().rev() {
            *slot = (code % q) as u8;
            code /= q;
        }
        t
    })
}

/// Fewest edge deletions after which the gadget has a proper list coloring
/// with the portals colored `d`; `None` if `d` violates a portal list.
/// Computed exactly as the fewest monochromatic edges over list colorings,
/// by variable elimination.
pub fn cost_ed(gad: &Gadget, d: &[u8]) -> Result<Option<u64>> {
    gad.check_tuple(d)?;
    let mut ms = gad.minsum();
    for (&p, &c) in gad.portals.iter().zip(d) {
        ms.restrict(p, 1 << c);
    }
    let cost = ms.solve(&[], DEFAULT_TABLE_CAP)?[0];
    Ok((cost < INF).then_some(cost))
}

/// [`cost_ed`] for every portal state, in lexicographic order of states.
pub fn cost_table(gad: &Gadget) -> Result<Vec<Option<u64>>> {
    let table = gad.minsum().solve(&gad.portals, DEFAULT_TABLE_CAP)?;
    Ok(table.into_iter().map(|c| (c < INF).then_some(c)).collect())
}

/// Reference implementation of [`cost_ed`]: enumerates colorings of small
/// gadgets, or edge-deletion sets by increasing size for sparse ones.
pub fn cost_ed_brute(gad: &Gadget, d: &[u8]) -> Result<Option<u64>> {
    gad.check_tuple(d)?;
    let g = &gad.graph;
    let mut lists = gad.lists.clone();
    for (&p, &c) in gad.portals.iter().zip(d) {
        lists.set(p, lists.mask(p) & (1 << c));
    }
    if (0..g.n()).any(|v| lists.mask(v) == 0) {
        return Ok(None);
    }
    if g.n() <= BRUTE_VERTEX_CAP {
        let choices: Vec<Vec<u8>> = (0..g.n()).map(|v| lists.colors(v)).collect();
        let mut idx = vec![0usize; g.n()];
        let mut colors: Vec<u8> = choices.iter().map(|c| c[0]).collect();
        let mut best = u64::MAX;
        loop {
            best = best.min(g.monochromatic_edges(&colors) as u64);
            let mut v = 0;
            loop {
                if v == g.n() {
                    return Ok(Some(best));
                }
                idx[v] += 1;
                if idx[v] < choices[v].len() {
                    colors[v] = choices[v][idx[v]];
                    break;
                }
                idx[v] = 0;
                colors[v] = choices[v][0];
                v += 1;
            }
        }
    }
    if g.m() <= BRUTE_EDGE_CAP {
        let edges = g.edges();
        let mut subsets: Vec<u32> = (0..1u32 << edges.len()).collect();
        subsets.sort_by_key(|s| s.count_ones());
        for s in subsets {
            let kept = edges
                .iter()
                .enumerate()
                .filter(|(i, _)| s >> i & 1 == 0)
                .map(|(_, &e)| e);
            let h = Graph::new(g.n(), kept)?;
            if oracle_list_coloring(&h, &lists)?.is_some() {
                return Ok(Some(u64::from(s.count_ones())));
            }
        }
        unreachable!("deleting every edge leaves a list-colorable graph");
    }
    Err(Error::GadgetTooLarge(format!(
        "brute force needs at most {BRUTE_VERTEX_CAP} vertices or {BRUTE_EDGE_CAP} edges, got {} and {}",
        g.n(),
        g.m()
    )))
}

/// What [`verify_realization`] found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    /// Cost of every portal state, in lexicographic order.
    pub costs: Vec<(Vec<u8>, Option<u64>)>,
    /// The common cost of states in the relation, when the gadget realizes
    /// it. For the empty relation this is one below the cheapest state.
    pub k: Option<i64>,
    pub realizes: bool,
    /// The common excess of excluded states over `k`, when it exists.
    pub omega: Option<u64>,
    /// No state is excluded, so any excess is vacuously common.
    pub vacuous: bool,
    /// The relation is empty, so `k` is free and a uniform violation cost
    /// gives every excess.
    pub empty: bool,
}

impl Realization {
    /// Whether the gadget `omega`-realizes the relation.
    pub fn omega_realizes(&self, omega: u64) -> bool {
        self.realizes
            && (self.vacuous || self.omega == Some(omega) || (self.empty && self.omega.is_some()))
    }
}

/// Computes the cost of every portal state and checks whether the gadget
/// realizes `rel` (satisfying states share a cost `k`, all others cost
/// more) and whether every violation costs the same `k + omega`.
pub fn verify_realization(gad: &Gadget, rel: &Relation) -> Result<Realization> {
    if gad.q() != rel.q() || gad.arity() != rel.arity() {
        return Err(Error::Invalid(format!(
            "gadget has {} portals over {} colors, relation is over [{}]^{}",
            gad.arity(),
            gad.q(),
            rel.q(),
            rel.arity()
        )));
    }
    let table = cost_table(gad)?;
    let costs: Vec<(Vec<u8>, Option<u64>)> = all_tuples(rel.q(), rel.arity()).zip(table).collect();
    let inside: BTreeSet<Option<u64>> = costs
        .iter()
        .filter(|(t, _)| rel.contains(t))
        .map(|&(_, c)| c)
        .collect();
    let outside: BTreeSet<Option<u64>> = costs
        .iter()
        .filter(|(t, _)| !rel.contains(t))
        .map(|&(_, c)| c)
        .collect();
    let vacuous = outside.is_empty();
    // Infinite costs sort after every finite one as `None` is mapped last.
    let as_cost = |c: Option<u64>| c.map_or(i64::MAX, |c| c as i64);
    let k = match inside.len() {
        0 => outside.iter().next().map(|&c| as_cost(c).saturating_sub(1)),
        1 => inside.iter().next().unwrap().map(|c| c as i64),
        _ => None,
    };
    let realizes = k.is_some_and(|k| outside.iter().all(|&c| as_cost(c) > k));
    let omega = match (realizes, k, outside.len()) {
        (true, Some(k), 1) => outside
            .iter()
            .next()
            .unwrap()
            .map(|c| (c as i64 - k) as u64),
        _ => None,
    };
    Ok(Realization {
        costs,
        k: if realizes { k } else { None },
        realizes,
        omega,
        vacuous,
        empty: rel.tuples().is_empty(),
    })
}

/// Decision-style contract: a state extends with zero deletions exactly
/// when it is in `rel`.
pub fn verify_extension_gadget(gad: &Gadget, rel: &Relation) -> Result<bool> {
    if gad.q() != rel.q() || gad.arity() != rel.arity() {
        return Err(Error::Invalid("gadget and relation shapes differ".into()));
    }
    let table = cost_table(gad)?;
    Ok(all_tuples(rel.q(), rel.arity())
        .zip(table)
        .all(|(t, c)| (c == Some(0)) == rel.contains(&t)))
}

/// Parses a gadget: graph lines, plus an optional `colors <q>` line
/// (default 2), one `portal <v1> <v2> ...` line and `list <v>: <colors>`
/// lines, all 1-based.
pub fn parse_gadget(text: &str) -> Result<Gadget> {
    let mut graph_text = String::new();
    let mut q = 2usize;
    let mut portals = None;
    let mut list_lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim_start();
        if let Some(rest) = trimmed.strip_prefix("colors ") {
            q = parse_num(rest.trim(), line)?;
            if q == 0 || q > MAX_COLORS {
                return Err(Error::parse(
                    line,
                    format!("colors must be in 1..={MAX_COLORS}"),
                ));
            }
            graph_text.push_str("c\n");
        } else if let Some(rest) = trimmed.strip_prefix("portal") {
            if portals.is_some() {
                return Err(Error::parse(line, "duplicate portal line"));
            }
            let ids = rest
                .split_whitespace()
                .map(|t| parse_num::<usize>(t, line))
                .collect::<Result<Vec<_>>>()?;
            portals = Some((line, ids));
            graph_text.push_str("c\n");
        } else if let Some(rest) = trimmed.strip_prefix("list ") {
            list_lines.push((line, rest.to_string()));
            graph_text.push_str("c\n");
        } else {
            graph_text.push_str(raw);
            graph_text.push('\n');
        }
    }
    let graph = parse_graph(&graph_text)?;
    let n = graph.n();
    let (pline, ids) = portals.ok_or_else(|| Error::parse(0, "missing portal line"))?;
    if ids.iter().any(|&v| v == 0 || v > n) {
        return Err(Error::parse(pline, "portal id out of range"));
    }
    let mut lists = ListAssignment::full(n, q);
    let mut seen = vec![false; n];
    for (line, rest) in list_lines {
        let (head, colors) = rest
            .split_once(':')
            .ok_or_else(|| Error::parse(line, "expected `list <v>: <colors>`"))?;
        let v: usize = parse_num(head.trim(), line)?;
        if v == 0 || v > n {
            return Err(Error::parse(line, "vertex id out of range"));
        }
        if std::mem::replace(&mut seen[v - 1], true) {
            return Err(Error::parse(line, "duplicate list for vertex"));
        }
        let mut mask = 0u32;
        for t in colors.split_whitespace() {
            let c: usize = parse_num(t, line)?;
            if c == 0 || c > q {
                return Err(Error::parse(line, "color out of range"));
            }
            mask |= 1 << (c - 1);
        }
        lists.set(v - 1, mask);
    }
    Gadget::new(graph, lists, ids.into_iter().map(|v| v - 1).collect())
        .map_err(|e| Error::parse(pline, e.to_string()))
}

pub fn write_gadget(gad: &Gadget) -> String {
    let mut out = write_graph(&gad.graph);
    if gad.q() != 2 {
        writeln!(out, "colors {}", gad.q()).unwrap();
    }
    let ids: Vec<String> = gad.portals.iter().map(|p| (p + 1).to_string()).collect();
    writeln!(out, "portal {}", ids.join(" ")).unwrap();
    for v in 0..gad.graph.n() {
        if gad.lists.mask(v) != full_mask(gad.q()) {
            let cs: Vec<String> = gad
                .lists
                .colors(v)
                .iter()
                .map(|c| (c + 1).to_string())
                .collect();
            writeln!(out, "list {}: {}", v + 1, cs.join(" ")).unwrap();
        }
    }
    out
}

/// Parses a relation: `q <q>`, `r <r>` and one `t <c1> ... <cr>` line per
/// tuple (colors 1-based).
pub fn parse_relation(text: &str) -> Result<Relation> {
    let (mut q, mut r) = (None, None);
    let mut tuples = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tok = raw.split_whitespace();
        let Some(head) = tok.next() else { continue };
        match head {
            "#" | "c" => continue,
            "q" | "r" => {
                let v: usize = parse_num(tok.next().unwrap_or(""), line)?;
                let slot = if head == "q" { &mut q } else { &mut r };
                if slot.replace(v).is_some() {
                    return Err(Error::parse(line, format!("duplicate `{head}` line")));
                }
            }
            "t" => {
                let (Some(q), Some(r)) = (q, r) else {
                    return Err(Error::parse(line, "tuple before `q` and `r` lines"));
                };
                let t = tok
                    .map(|x| parse_num::<usize>(x, line))
                    .collect::<Result<Vec<_>>>()?;
                if t.len() != r || t.iter().any(|&c| c == 0 || c > q) {
                    return Err(Error::parse(
                        line,
                        format!("tuple must have {r} colors in 1..={q}"),
                    ));
                }
                tuples.push(t.into_iter().map(|c| (c - 1) as u8).collect());
            }
            other => return Err(Error::parse(line, format!("unknown line type `{other}`"))),
        }
    }
    let q = q.ok_or_else(|| Error::parse(0, "missing `q` line"))?;
    let r = r.ok_or_else(|| Error::parse(0, "missing `r` line"))?;
    Relation::new(q, r, tuples)
}

pub fn write_relation(rel: &Relation) -> String {
    let mut out = format!("q {}\nr {}\n", rel.q, rel.r);
    for t in &rel.tuples {
        let cs: Vec<String> = t.iter().map(|c| (c + 1).to_string()).collect();
        writeln!(out, "t {}", cs.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge() -> Gadget {
        Gadget::new(Graph::complete(2), ListAssignment::full(2, 2), vec![0, 1]).unwrap()
    }

    #[test]
    fn single_edge_is_a_neq_gadget() {
        let g = edge();
        assert_eq!(cost_ed(&g, &[0, 0]).unwrap(), Some(1));
        assert_eq!(cost_ed(&g, &[0, 1]).unwrap(), Some(0));
        let rep = verify_realization(&g, &Relation::neq()).unwrap();
        assert_eq!((rep.k, rep.realizes, rep.omega), (Some(0), true, Some(1)));
        assert!(verify_extension_gadget(&g, &Relation::neq()).unwrap());
    }

    #[test]
    fn brute_matches_elimination_on_lists() {
        let mut lists = ListAssignment::full(4, 3);
        lists.set(3, 0b100);
        let g = Gadget::new(Graph::cycle(4), lists, vec![0, 2]).unwrap();
        for d in all_tuples(3, 2) {
            assert_eq!(cost_ed(&g, &d).unwrap(), cost_ed_brute(&g, &d).unwrap());
        }
    }

    #[test]
    fn formats_round_trip() {
        let mut lists = ListAssignment::full(3, 3);
        lists.set(1, 0b011);
        let g = Gadget::new(Graph::path(3), lists, vec![2, 0]).unwrap();
        assert_eq!(parse_gadget(&write_gadget(&g)).unwrap(), g);
        let rel = Relation::or(3).unwrap();
        assert_eq!(parse_relation(&write_relation(&rel)).unwrap(), rel);
        assert!(parse_gadget("p edge 2 1\ne 1 2\n").is_err());
        assert!(parse_relation("q 2\nr 2\nt 1 3\n").is_err());
    }
}
