//! Two-valued Max-CSP → list edge deletion with two colors → Max Cut.

use super::build::{build_one_realizer, build_relation, Builder, BOTH, ONLY_SECOND};
use super::{verify_realization, Gadget, Relation};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hub::{tight_hub, HubDecomposition};
use crate::lists::ListAssignment;
use crate::maxcsp::{MaxConstraint, MaxCsp};
use std::collections::BTreeMap;

/// How many parallel paths tie a single-color vertex to the apex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ListRemoval {
    /// `deg(v) + 1` paths: recoloring `v` to its list color changes at most
    /// `deg(v)` gadget edges, so a violated list never pays off.
    Local,
    /// `alpha + 2` paths per vertex (with unit violation weight), where
    /// `alpha` is the satisfied cost of the vertex's gadget. Correct but far
    /// larger.
    Weighted,
}

/// Which 1-realizer stands in for each constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealizerKind {
    /// [`build_relation`]: one forbid gadget per excluded tuple. Every
    /// violation costs exactly one, so this is already a 1-realizer.
    Direct,
    /// [`build_one_realizer`]: flag coordinates per excluded tuple.
    /// Exponential in the number of excluded tuples.
    Flagged,
}

/// Knobs for [`build_maxcut_instance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Synthesis {
    pub removal: ListRemoval,
    pub realizer: RealizerKind,
}

impl Default for Synthesis {
    fn default() -> Self {
        Self {
            removal: ListRemoval::Local,
            realizer: RealizerKind::Direct,
        }
    }
}

/// List edge-deletion instance: variable vertices `0..n` followed by one
/// realizer per constraint.
#[derive(Clone, Debug)]
pub struct ListInstance {
    pub graph: Graph,
    pub lists: ListAssignment,
    /// Hub formed by the variable vertices.
    pub hub: HubDecomposition,
    /// Satisfied cost of each constraint's gadget (0 for constraints
    /// without variables).
    pub alphas: Vec<u64>,
    /// Constraint owning each vertex (`None` for variable vertices).
    pub owner: Vec<Option<usize>>,
    /// Constraints without variables that are violated by every
    /// assignment.
    pub constant_violations: usize,
}

impl ListInstance {
    pub fn alpha_total(&self) -> u64 {
        self.alphas.iter().sum()
    }
}

/// Max Cut instance: the list instance plus an apex and path bundles.
#[derive(Clone, Debug)]
pub struct MaxCutInstance {
    pub graph: Graph,
    /// Variable vertices plus the apex.
    pub hub: HubDecomposition,
    pub apex: usize,
    /// Edge deletion budget `z + sum(alpha)`; `None` when even a perfect
    /// assignment exceeds `z` (constant violations).
    pub budget: Option<u64>,
    /// Cut size that decides the instance: the Max-CSP optimum is at most
    /// `z` iff the maximum cut reaches this value.
    pub threshold: u64,
    pub alpha_total: u64,
}

/// The constraint on its distinct variables (first occurrence order);
/// tuples disagreeing on a repeated variable are dropped.
fn project(c: &MaxConstraint) -> (Vec<usize>, Vec<Vec<u8>>) {
    let mut vars: Vec<usize> = Vec::new();
    let mut pos = Vec::with_capacity(c.scope.len());
    for &v in &c.scope {
        match vars.iter().position(|&w| w == v) {
            Some(i) => pos.push(i),
            None => {
                pos.push(vars.len());
                vars.push(v);
            }
        }
    }
    let mut tuples: Vec<Vec<u8>> = c
        .tuples
        .iter()
        .filter_map(|t| {
            let mut out = vec![u8::MAX; vars.len()];
            for (&i, &x) in pos.iter().zip(t) {
                if out[i] != u8::MAX && out[i] != x {
                    return None;
                }
                out[i] = x;
            }
            Some(out)
        })
        .collect();
    tuples.sort();
    tuples.dedup();
    (vars, tuples)
}

/// One 1-realizer per constraint on its variable vertices. The optimum
/// number of edge deletions equals `sum(alpha) + opt` where `opt` is the
/// Max-CSP optimum.
pub fn build_list_instance(inst: &MaxCsp, realizer: RealizerKind) -> Result<ListInstance> {
    if inst.d() != 2 {
        return Err(Error::Invalid(format!(
            "Max Cut synthesis needs domain 2, got {}",
            inst.d()
        )));
    }
    let n = inst.n();
    let mut b = Builder::new();
    let ys = b.vertices(n, BOTH);
    let mut owner = vec![None; n];
    let mut alphas = Vec::with_capacity(inst.constraints().len());
    let mut constant_violations = 0;
    let mut cache: BTreeMap<Vec<Vec<u8>>, BTreeMap<usize, (Gadget, u64)>> = BTreeMap::new();
    for (i, c) in inst.constraints().iter().enumerate() {
        let (vars, tuples) = project(c);
        if vars.is_empty() {
            if tuples.is_empty() {
                constant_violations += 1;
            }
            alphas.push(0);
            continue;
        }
        let arity = vars.len();
        let entry = cache.entry(tuples.clone()).or_default();
        if let std::collections::btree_map::Entry::Vacant(slot) = entry.entry(arity) {
            let rel = Relation::new(2, arity, tuples)?;
            let gad = match realizer {
                RealizerKind::Direct => build_relation(&rel)?,
                RealizerKind::Flagged => build_one_realizer(&rel, 1)?,
            };
            let rep = verify_realization(&gad, &rel)?;
            let k = rep
                .k
                .filter(|_| rep.omega_realizes(1))
                .ok_or_else(|| Error::Invalid(format!("constraint {i}: realizer check failed")))?;
            slot.insert((gad, k as u64));
        }
        let (gad, alpha) = &entry[&arity];
        let onto: Vec<usize> = vars.iter().map(|&v| ys[v]).collect();
        let before = b.lists.len();
        b.embed(gad, &onto);
        owner.resize(b.lists.len(), Some(i));
        debug_assert_eq!(owner.len(), before + gad.graph().n() - arity);
        alphas.push(*alpha);
    }
    let lists = ListAssignment::new(2, b.lists)?;
    let graph = Graph::new(lists.n(), b.edges)?;
    let hub = tight_hub(&graph, &ys);
    Ok(ListInstance {
        graph,
        lists,
        hub,
        alphas,
        owner,
        constant_violations,
    })
}

/// Replaces lists by an apex `A`: a first-color vertex gets parallel
/// 2-edge paths to `A` (forcing its color to match `A`), a second-color
/// vertex parallel 3-edge paths (forcing it to differ). The hub is the
/// variable vertices plus `A`.
pub fn build_maxcut_instance(inst: &MaxCsp, z: u64, opts: Synthesis) -> Result<MaxCutInstance> {
    let list = build_list_instance(inst, opts.realizer)?;
    let g = &list.graph;
    let apex = g.n();
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    let mut next = apex + 1;
    for v in 0..g.n() {
        let mask = list.lists.mask(v);
        if mask == BOTH {
            continue;
        }
        let copies = match opts.removal {
            ListRemoval::Local => g.degree(v) as u64 + 1,
            // Unit violation weight: `alpha + omega + 1 = alpha + 2` paths
            // for first-color vertices, `alpha + 2` for second-color ones.
            ListRemoval::Weighted => list.owner[v].map_or(0, |c| list.alphas[c]) + 2,
        };
        let inner = if mask == ONLY_SECOND { 2 } else { 1 };
        for _ in 0..copies {
            let mut prev = v;
            for _ in 0..inner {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
            edges.push((prev, apex));
        }
    }
    let graph = Graph::new(next, edges)?;
    let mut hub_set: Vec<usize> = (0..inst.n()).collect();
    hub_set.push(apex);
    let hub = tight_hub(&graph, &hub_set);
    let alpha_total = list.alpha_total();
    let budget = z
        .checked_sub(list.constant_violations as u64)
        .map(|slack| slack + alpha_total);
    let m = graph.m() as u64;
    let threshold = budget.map_or(m + 1, |b| m.saturating_sub(b));
    Ok(MaxCutInstance {
        graph,
        hub,
        apex,
        budget,
        threshold,
        alpha_total,
    })
}
