//! Two-color relation realizers built from single edges (not-equal), the
//! 5-cycle OR gadget, and portal identification.

use super::{Gadget, Relation};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lists::ListAssignment;

/// List masks over two colors.
pub(super) const BOTH: u32 = 0b11;
pub(super) const ONLY_FIRST: u32 = 0b01;
pub(super) const ONLY_SECOND: u32 = 0b10;

/// Incremental gadget assembly.
pub(super) struct Builder {
    pub(super) lists: Vec<u32>,
    pub(super) edges: Vec<(usize, usize)>,
}

impl Builder {
    pub(super) fn new() -> Self {
        Self {
            lists: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub(super) fn vertex(&mut self, mask: u32) -> usize {
        self.lists.push(mask);
        self.lists.len() - 1
    }

    pub(super) fn vertices(&mut self, count: usize, mask: u32) -> Vec<usize> {
        (0..count).map(|_| self.vertex(mask)).collect()
    }

    pub(super) fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }

    /// Copies `gad` in, identifying its portals with `onto` (distinct
    /// vertices) and giving every other vertex a fresh id. Portal lists are
    /// intersected into the targets.
    pub(super) fn embed(&mut self, gad: &Gadget, onto: &[usize]) {
        debug_assert!(gad.portals_independent());
        let mut map = vec![usize::MAX; gad.graph().n()];
        for (&p, &t) in gad.portals().iter().zip(onto) {
            map[p] = t;
            self.lists[t] &= gad.lists().mask(p);
        }
        for (v, slot) in map.iter_mut().enumerate() {
            if *slot == usize::MAX {
                *slot = self.vertex(gad.lists().mask(v));
            }
        }
        self.edges
            .extend(gad.graph().edges().iter().map(|&(u, v)| (map[u], map[v])));
    }

    pub(super) fn finish(self, portals: Vec<usize>) -> Gadget {
        let n = self.lists.len();
        let graph = Graph::new(n, self.edges).expect("builder edges are in range");
        let lists = ListAssignment::new(2, self.lists).expect("two-color lists");
        Gadget::new(graph, lists, portals).expect("builder portals are distinct")
    }
}

/// The 5-cycle `v1..v5` with `v5` restricted to the second color and
/// portals `v1`, `v4`: satisfying OR states cost 1, the all-second state 3.
pub fn build_or2() -> Gadget {
    let mut b = Builder::new();
    let v = b.vertices(5, BOTH);
    b.lists[v[4]] = ONLY_SECOND;
    for i in 0..5 {
        b.edge(v[i], v[(i + 1) % 5]);
    }
    b.finish(vec![v[0], v[3]])
}

/// `omega` copies of [`build_or2`] on shared portals.
pub fn build_or2_pow(omega: usize) -> Result<Gadget> {
    if omega == 0 {
        return Err(Error::Invalid("omega must be positive".into()));
    }
    let base = build_or2();
    let mut b = Builder::new();
    let ends = b.vertices(2, BOTH);
    for _ in 0..omega {
        b.embed(&base, &ends);
    }
    Ok(b.finish(ends))
}

/// OR of arity `p` with one OR2 copy per link; see [`build_or_weighted`].
pub fn build_or(p: usize) -> Result<Gadget> {
    build_or_weighted(p, 1)
}

/// OR of arity `p`: vertex sets `X`, `Y`, `Z` of size `p`, a copy of
/// `OR2^omega` on every `(x_i, y_i)`, `(y_i, z_i)` and `(z_i, z_j)`, and a
/// vertex restricted to the first color adjacent to all of them. Portals
/// are `Y`, numbered first. One copy per link already makes every violation
/// cost exactly one more than any satisfying state.
pub fn build_or_weighted(p: usize, omega: usize) -> Result<Gadget> {
    if p == 0 {
        return Err(Error::BadArity("OR needs at least one portal".into()));
    }
    let link = build_or2_pow(omega)?;
    let mut b = Builder::new();
    let y = b.vertices(p, BOTH);
    let x = b.vertices(p, BOTH);
    let z = b.vertices(p, BOTH);
    let apex = b.vertex(ONLY_FIRST);
    for i in 0..p {
        b.embed(&link, &[x[i], y[i]]);
        b.embed(&link, &[y[i], z[i]]);
    }
    for i in 0..p {
        for j in i + 1..p {
            b.embed(&link, &[z[i], z[j]]);
        }
    }
    for &v in x.iter().chain(&y).chain(&z) {
        b.edge(apex, v);
    }
    Ok(b.finish(y))
}

/// Realizer of all two-color tuples except `d`: an OR gadget whose
/// portals for coordinates with `d_i = 0` are negated by a pendant vertex.
pub fn build_forbid(d: &[u8]) -> Result<Gadget> {
    if d.iter().any(|&c| c > 1) {
        return Err(Error::Invalid(format!("{d:?} is not a two-color tuple")));
    }
    let or = build_or(d.len())?;
    let mut b = Builder::new();
    let xs = b.vertices(d.len(), BOTH);
    b.embed(&or, &xs);
    let portals = xs
        .iter()
        .zip(d)
        .map(|(&x, &c)| {
            if c == 0 {
                let y = b.vertex(BOTH);
                b.edge(x, y);
                y
            } else {
                x
            }
        })
        .collect();
    Ok(b.finish(portals))
}

/// Realizer of an arbitrary two-color relation: one [`build_forbid`] copy
/// per excluded tuple (in lexicographic order) on shared portals.
pub fn build_relation(rel: &Relation) -> Result<Gadget> {
    check_two_colors(rel)?;
    let mut b = Builder::new();
    let xs = b.vertices(rel.arity(), BOTH);
    for d in rel.excluded() {
        b.embed(&build_forbid(&d)?, &xs);
    }
    Ok(b.finish(xs))
}

/// A gadget whose every excluded state costs exactly `omega` more than the
/// satisfying states. Realizes the auxiliary relation over the original
/// coordinates plus one flag per excluded tuple (the flag may be raised
/// only by its own tuple), pins every flag portal with a pendant vertex of
/// the second color, and stacks `omega` copies on the original portals.
pub fn build_one_realizer(rel: &Relation, omega: usize) -> Result<Gadget> {
    check_two_colors(rel)?;
    if rel.arity() == 0 {
        return Err(Error::BadArity(
            "relation needs at least one coordinate".into(),
        ));
    }
    if omega == 0 {
        return Err(Error::Invalid("omega must be positive".into()));
    }
    let r = rel.arity();
    let bad = rel.excluded();
    let mut aux = Vec::new();
    for t in rel.tuples() {
        let mut row = t.clone();
        row.resize(r + bad.len(), 0);
        aux.push(row);
    }
    for (i, t) in bad.iter().enumerate() {
        let mut row = t.clone();
        row.resize(r + bad.len(), 0);
        row[r + i] = 1;
        aux.push(row);
    }
    let inner = build_relation(&Relation::new(2, r + bad.len(), aux)?)?;
    let mut single = Builder::new();
    let all = single.vertices(r + bad.len(), BOTH);
    single.embed(&inner, &all);
    for &flag in &all[r..] {
        let pin = single.vertex(ONLY_SECOND);
        single.edge(flag, pin);
    }
    let single = single.finish(all[..r].to_vec());
    let mut b = Builder::new();
    let xs = b.vertices(r, BOTH);
    for _ in 0..omega {
        b.embed(&single, &xs);
    }
    Ok(b.finish(xs))
}

fn check_two_colors(rel: &Relation) -> Result<()> {
    if rel.q() != 2 {
        return Err(Error::Invalid(format!(
            "constructions are for two colors, relation has {}",
            rel.q()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::{cost_ed, cost_ed_brute, verify_realization};
    use super::*;

    #[test]
    fn or2_costs() {
        let g = build_or2();
        assert_eq!((g.graph().n(), g.graph().m()), (5, 5));
        assert_eq!(g.portals(), &[0, 3]);
        for (d, c) in [([0, 0], 1), ([0, 1], 1), ([1, 0], 1), ([1, 1], 3)] {
            assert_eq!(cost_ed(&g, &d).unwrap(), Some(c));
            assert_eq!(cost_ed_brute(&g, &d).unwrap(), Some(c));
        }
        let rep = verify_realization(&g, &Relation::or(2).unwrap()).unwrap();
        assert_eq!((rep.k, rep.omega), (Some(1), Some(2)));
    }

    #[test]
    fn or2_power_scales_the_violation() {
        let g = build_or2_pow(3).unwrap();
        let rep = verify_realization(&g, &Relation::or(2).unwrap()).unwrap();
        assert_eq!((rep.k, rep.omega), (Some(3), Some(6)));
        assert!(g.portals_independent());
    }

    #[test]
    fn or_shape() {
        let p = 3;
        let g = build_or(p).unwrap();
        let links = 2 * p + p * (p - 1) / 2;
        assert_eq!(g.graph().n(), 3 * p + 1 + 3 * links);
        for p in 1..=4 {
            let g = build_or(p).unwrap();
            let rep = verify_realization(&g, &Relation::or(p).unwrap()).unwrap();
            assert!(rep.omega_realizes(1), "p={p}: {rep:?}");
        }
    }
}
