//! Triangle packing with a hub through precolored instances: every
//! component of `G - Q` and every triangle inside `Q` gets a color, and at
//! most `c` elements of each color may be active (touched by a packing
//! triangle that also meets the hub, or chosen, for hub triangles).

use super::splitter::{build_splitter, SplitterBackend};
use super::{best_packing, triangles_within, verify_packing, Triangle};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hub::HubDecomposition;
use crate::setsys::{solve_exact, SetSystem, Variant};
use std::collections::HashMap;

/// Most partial configurations enumerated while preparing one instance.
pub const COMBINATION_CAP: u64 = 2_000_000;
/// Largest hub accepted by the precolored solver.
pub const MAX_HUB: usize = 64;

/// Triangles with all three vertices in the hub.
pub fn hub_triangles(g: &Graph, h: &HubDecomposition) -> Vec<Triangle> {
    g.triangles()
        .into_iter()
        .filter(|t| t.iter().all(|&v| h.in_hub(v)))
        .collect()
}

/// What a color is assigned to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PackingElement {
    Component(usize),
    HubTriangle(Triangle),
}

/// A precolored instance: `colors[e]` is the color (in `0..ell`) of element
/// `e`, where elements are the hub's components followed by the hub
/// triangles in lexicographic order.
#[derive(Clone, Debug)]
pub struct PrecoloredInstance<'a> {
    pub graph: &'a Graph,
    pub hub: &'a HubDecomposition,
    pub target: usize,
    pub capacity: usize,
    pub ell: usize,
    pub colors: Vec<usize>,
}

impl<'a> PrecoloredInstance<'a> {
    /// Validates the coloring: one color in `0..ceil(p/c)` (at least one
    /// color) per component and hub triangle.
    pub fn new(
        graph: &'a Graph,
        hub: &'a HubDecomposition,
        target: usize,
        capacity: usize,
        colors: Vec<usize>,
    ) -> Result<Self> {
        if capacity == 0 {
            return Err(Error::Invalid("capacity must be positive".into()));
        }
        let ell = hub.p().div_ceil(capacity).max(1);
        let expected = hub.components().len() + hub_triangles(graph, hub).len();
        if colors.len() != expected {
            return Err(Error::Invalid(format!(
                "coloring covers {} elements, expected {expected}",
                colors.len()
            )));
        }
        if colors.iter().any(|&c| c >= ell) {
            return Err(Error::Invalid(format!("colors must lie in 0..{ell}")));
        }
        Ok(Self {
            graph,
            hub,
            target,
            capacity,
            ell,
            colors,
        })
    }

    pub fn elements(&self) -> Vec<PackingElement> {
        let comps = (0..self.hub.components().len()).map(PackingElement::Component);
        comps
            .chain(
                hub_triangles(self.graph, self.hub)
                    .into_iter()
                    .map(PackingElement::HubTriangle),
            )
            .collect()
    }
}

/// Element index of each triangle and whether it makes that element active.
struct Classifier {
    comp_of: Vec<Option<usize>>,
    hub_tri_index: HashMap<Triangle, usize>,
    n_comps: usize,
}

impl Classifier {
    fn new(g: &Graph, h: &HubDecomposition) -> Self {
        let mut comp_of = vec![None; g.n()];
        for (ci, comp) in h.components().iter().enumerate() {
            comp.iter().for_each(|&v| comp_of[v] = Some(ci));
        }
        let hub_tri_index = hub_triangles(g, h)
            .into_iter()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        Self {
            comp_of,
            hub_tri_index,
            n_comps: h.components().len(),
        }
    }

    /// (element, active) for a triangle of the graph.
    fn classify(&self, t: &Triangle) -> (usize, bool) {
        match t.iter().find_map(|&v| self.comp_of[v]) {
            Some(ci) => (ci, t.iter().any(|&v| self.comp_of[v].is_none())),
            None => (self.n_comps + self.hub_tri_index[t], true),
        }
    }
}

/// Checks the precolored constraints of a packing: at most `capacity`
/// active elements per color.
fn active_counts_ok(
    cls: &Classifier,
    colors: &[usize],
    ell: usize,
    capacity: usize,
    packing: &[Triangle],
) -> bool {
    let mut active: Vec<usize> = packing
        .iter()
        .map(|t| cls.classify(t))
        .filter(|x| x.1)
        .map(|x| x.0)
        .collect();
    active.sort_unstable();
    active.dedup();
    let mut per_color = vec![0usize; ell];
    for e in active {
        per_color[colors[e]] += 1;
    }
    per_color.iter().all(|&k| k <= capacity)
}

/// Brute force: a packing of at least `target` triangles respecting the
/// per-color activity bound.
pub fn oracle_precolored(inst: &PrecoloredInstance) -> Result<bool> {
    let g = inst.graph;
    let tris = g.triangles();
    if tris.len() > 200 {
        return Err(Error::too_large(
            "triangles for the precolored oracle",
            tris.len() as u64,
            200u64,
        ));
    }
    let cls = Classifier::new(g, inst.hub);
    let meta: Vec<(usize, bool)> = tris.iter().map(|t| cls.classify(t)).collect();
    struct Bf<'a> {
        tris: &'a [Triangle],
        meta: &'a [(usize, bool)],
        colors: &'a [usize],
        cap: usize,
        target: usize,
        used: Vec<bool>,
        active_uses: Vec<usize>,
        per_color: Vec<usize>,
    }
    impl Bf<'_> {
        fn go(&mut self, i: usize, size: usize, free: usize) -> bool {
            if size >= self.target {
                return true;
            }
            if i == self.tris.len() || size + free / 3 < self.target {
                return false;
            }
            let t = self.tris[i];
            let (e, act) = self.meta[i];
            let fits = t.iter().all(|&v| !self.used[v]);
            let allowed =
                !act || self.active_uses[e] > 0 || self.per_color[self.colors[e]] < self.cap;
            if fits && allowed {
                t.iter().for_each(|&v| self.used[v] = true);
                if act {
                    if self.active_uses[e] == 0 {
                        self.per_color[self.colors[e]] += 1;
                    }
                    self.active_uses[e] += 1;
                }
                let found = self.go(i + 1, size + 1, free - 3);
                if act {
                    self.active_uses[e] -= 1;
                    if self.active_uses[e] == 0 {
                        self.per_color[self.colors[e]] -= 1;
                    }
                }
                t.iter().for_each(|&v| self.used[v] = false);
                if found {
                    return true;
                }
            }
            self.go(i + 1, size, free)
        }
    }
    let mut bf = Bf {
        tris: &tris,
        meta: &meta,
        colors: &inst.colors,
        cap: inst.capacity,
        target: inst.target,
        used: vec![false; g.n()],
        active_uses: vec![0; inst.colors.len()],
        per_color: vec![0; inst.ell],
    };
    Ok(bf.go(0, 0, g.n()))
}

/// One way an element can be active: the hub vertices it claims, the gain
/// over its inactive contribution, and the triangles realizing it.
#[derive(Clone, Debug)]
struct ActiveOption {
    hub_mask: u128,
    gain: usize,
    triangles: Vec<Triangle>,
}

/// Coloring-independent data of a graph with a hub.
struct Prepared<'a> {
    g: &'a Graph,
    h: &'a HubDecomposition,
    cls: Classifier,
    /// Maximum packing inside each component.
    inner: Vec<Vec<Triangle>>,
    /// Options per element (components, then hub triangles).
    options: Vec<Vec<ActiveOption>>,
}

impl<'a> Prepared<'a> {
    fn new(g: &'a Graph, h: &'a HubDecomposition) -> Result<Self> {
        // Hub vertices plus one element per color must fit in a set mask.
        if h.p() > MAX_HUB {
            return Err(Error::too_large(
                "hub for the set packing universe",
                h.p() as u64,
                MAX_HUB as u64,
            ));
        }
        let cls = Classifier::new(g, h);
        let hub_bit = |v: usize| 1u128 << h.hub_position(v).unwrap();
        let comps = h.components();
        let inner: Vec<Vec<Triangle>> = comps
            .iter()
            .map(|c| best_packing(g.n(), &triangles_within(g, c)))
            .collect();
        let mut crossing: Vec<Vec<Triangle>> = vec![Vec::new(); comps.len()];
        let mut hub_tris = Vec::new();
        for t in g.triangles() {
            let (e, act) = cls.classify(&t);
            if e >= comps.len() {
                hub_tris.push(t);
            } else if act {
                crossing[e].push(t);
            }
        }
        let mut work = 0u64;
        let mut options = Vec::with_capacity(comps.len() + hub_tris.len());
        for (ci, comp) in comps.iter().enumerate() {
            let inside = triangles_within(g, comp);
            let mut best: HashMap<u128, ActiveOption> = HashMap::new();
            let mut chosen = Vec::new();
            let mut used = vec![false; g.n()];
            enumerate_crossing(
                &crossing[ci],
                0,
                &mut chosen,
                &mut used,
                &mut work,
                &mut |chosen, used| {
                    let rest: Vec<Triangle> = inside
                        .iter()
                        .copied()
                        .filter(|t| t.iter().all(|&v| !used[v]))
                        .collect();
                    let rest = best_packing(g.n(), &rest);
                    let total = chosen.len() + rest.len();
                    if total <= inner[ci].len() {
                        return;
                    }
                    let gain = total - inner[ci].len();
                    let mask = chosen
                        .iter()
                        .flatten()
                        .filter(|&&v| h.in_hub(v))
                        .fold(0u128, |a, &v| a | hub_bit(v));
                    if best.get(&mask).is_none_or(|o| o.gain < gain) {
                        let mut triangles = chosen.to_vec();
                        triangles.extend(rest);
                        best.insert(
                            mask,
                            ActiveOption {
                                hub_mask: mask,
                                gain,
                                triangles,
                            },
                        );
                    }
                },
            )?;
            let mut opts: Vec<ActiveOption> = best.into_values().collect();
            opts.sort_by_key(|o| o.hub_mask);
            options.push(opts);
        }
        for t in hub_tris {
            let mask = t.iter().fold(0u128, |a, &v| a | hub_bit(v));
            options.push(vec![ActiveOption {
                hub_mask: mask,
                gain: 1,
                triangles: vec![t],
            }]);
        }
        Ok(Self {
            g,
            h,
            cls,
            inner,
            options,
        })
    }

    /// Decides the precolored instance for `colors`; returns a verified
    /// witness packing.
    fn solve(
        &self,
        colors: &[usize],
        ell: usize,
        capacity: usize,
        target: usize,
    ) -> Result<Option<Vec<Triangle>>> {
        let n_comps = self.h.components().len();
        let p = self.h.p();
        let mut base = vec![0usize; ell];
        for ci in 0..n_comps {
            base[colors[ci]] += self.inner[ci].len();
        }
        // Best gain per claimed hub set, per color, with the realizing choice.
        let mut valid: Vec<HashMap<u128, (usize, Vec<(usize, usize)>)>> = Vec::with_capacity(ell);
        let mut work = 0u64;
        for color in 0..ell {
            let members: Vec<usize> = (0..colors.len())
                .filter(|&e| colors[e] == color && !self.options[e].is_empty())
                .collect();
            let mut map = HashMap::new();
            map.insert(0u128, (0usize, Vec::new()));
            let mut picks = Vec::new();
            self.combine(&members, 0, 0, 0, capacity, &mut picks, &mut map, &mut work)?;
            // Re-verify every entry before it may be used.
            map.retain(|_, (gain, picks)| {
                let packing = self.color_packing(colors, color, picks);
                verify_packing(self.g, &packing).is_ok()
                    && packing.len() == base[color] + *gain
                    && active_counts_ok(&self.cls, colors, ell, capacity, &packing)
            });
            valid.push(map);
        }
        let need = target.saturating_sub(base.iter().sum());
        let max_gain: Vec<usize> = valid
            .iter()
            .map(|m| m.values().map(|v| v.0).max().unwrap_or(0))
            .collect();
        if max_gain.iter().sum::<usize>() < need {
            return Ok(None);
        }
        // Offsets summing exactly to `need`: validity is monotone in the
        // offset, so larger sums never help.
        let mut offsets = vec![0usize; ell];
        let mut found = None;
        self.offsets(0, need, &max_gain, &mut offsets, &mut |q| {
            let mut sets = Vec::new();
            for (color, map) in valid.iter().enumerate() {
                for (&mask, &(gain, _)) in map {
                    if gain >= q[color] {
                        sets.push(mask | 1u128 << (p + color));
                    }
                }
            }
            let d = sets
                .iter()
                .map(|s| s.count_ones() as usize)
                .max()
                .unwrap_or(1);
            let sys = SetSystem::new(p + ell, sets, Variant::PackingLeSets, d, Some(ell))?;
            if let Some(chosen) = solve_exact(&sys)? {
                let mut packing = Vec::new();
                for &i in &chosen {
                    let s = sys.sets()[i];
                    let color = (s >> p).trailing_zeros() as usize;
                    let mask = s & ((1u128 << p) - 1);
                    packing.extend(self.color_packing(colors, color, &valid[color][&mask].1));
                }
                found = Some(packing);
                return Ok(true);
            }
            Ok(false)
        })?;
        Ok(found.filter(|packing| {
            verify_packing(self.g, packing).is_ok()
                && packing.len() >= target
                && active_counts_ok(&self.cls, colors, ell, capacity, packing)
        }))
    }

    /// Triangles of one color: chosen active options plus the inner packing
    /// of every other component of that color.
    fn color_packing(
        &self,
        colors: &[usize],
        color: usize,
        picks: &[(usize, usize)],
    ) -> Vec<Triangle> {
        let n_comps = self.h.components().len();
        let mut out = Vec::new();
        for ci in 0..n_comps {
            if colors[ci] == color && !picks.iter().any(|&(e, _)| e == ci) {
                out.extend_from_slice(&self.inner[ci]);
            }
        }
        for &(e, o) in picks {
            out.extend_from_slice(&self.options[e][o].triangles);
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn combine(
        &self,
        members: &[usize],
        i: usize,
        mask: u128,
        gain: usize,
        left: usize,
        picks: &mut Vec<(usize, usize)>,
        map: &mut HashMap<u128, (usize, Vec<(usize, usize)>)>,
        work: &mut u64,
    ) -> Result<()> {
        *work += 1;
        if *work > COMBINATION_CAP {
            return Err(Error::too_large(
                "active combinations",
                *work,
                COMBINATION_CAP,
            ));
        }
        if !picks.is_empty() && map.get(&mask).is_none_or(|v| v.0 < gain) {
            map.insert(mask, (gain, picks.clone()));
        }
        if left == 0 {
            return Ok(());
        }
        for j in i..members.len() {
            let e = members[j];
            for (o, opt) in self.options[e].iter().enumerate() {
                if opt.hub_mask & mask == 0 {
                    picks.push((e, o));
                    self.combine(
                        members,
                        j + 1,
                        mask | opt.hub_mask,
                        gain + opt.gain,
                        left - 1,
                        picks,
                        map,
                        work,
                    )?;
                    picks.pop();
                }
            }
        }
        Ok(())
    }

    fn offsets(
        &self,
        i: usize,
        left: usize,
        max_gain: &[usize],
        q: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> Result<bool>,
    ) -> Result<bool> {
        if i == q.len() {
            return if left == 0 { visit(q) } else { Ok(false) };
        }
        let rest: usize = max_gain[i + 1..].iter().sum();
        let lo = left.saturating_sub(rest);
        for v in lo..=max_gain[i].min(left) {
            q[i] = v;
            if self.offsets(i + 1, left - v, max_gain, q, visit)? {
                return Ok(true);
            }
        }
        q[i] = 0;
        Ok(false)
    }
}

/// Enumerates nonempty sets of pairwise disjoint triangles from `tris`.
fn enumerate_crossing(
    tris: &[Triangle],
    from: usize,
    chosen: &mut Vec<Triangle>,
    used: &mut Vec<bool>,
    work: &mut u64,
    visit: &mut dyn FnMut(&[Triangle], &[bool]),
) -> Result<()> {
    for i in from..tris.len() {
        let t = tris[i];
        if t.iter().any(|&v| used[v]) {
            continue;
        }
        *work += 1;
        if *work > COMBINATION_CAP {
            return Err(Error::too_large(
                "crossing triangle sets",
                *work,
                COMBINATION_CAP,
            ));
        }
        t.iter().for_each(|&v| used[v] = true);
        chosen.push(t);
        visit(chosen, used);
        enumerate_crossing(tris, i + 1, chosen, used, work, visit)?;
        chosen.pop();
        t.iter().for_each(|&v| used[v] = false);
    }
    Ok(())
}

/// Decides a precolored instance through set packing over the hub plus one
/// fresh element per color; returns a verified witness packing.
pub fn solve_precolored(inst: &PrecoloredInstance) -> Result<Option<Vec<Triangle>>> {
    let prep = Prepared::new(inst.graph, inst.hub)?;
    prep.solve(&inst.colors, inst.ell, inst.capacity, inst.target)
}

/// Result of the splitter-driven triangle packing algorithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrianglePackingOutcome {
    pub verdict: bool,
    pub witness: Option<Vec<Triangle>>,
    pub splitter_size: usize,
    pub colorings_tried: usize,
}

/// Is there a packing of at least `target` triangles? Tries every coloring
/// of an `(N, p', p'/c)`-splitter, where `N` counts components and hub
/// triangles and `p'` is the hub size rounded up to a multiple of `c`
/// (padding `N` to at least `p'`). Exact with the exhaustive backend; the
/// Monte-Carlo backend never reports a false YES.
pub fn solve_triangle_packing(
    g: &Graph,
    h: &HubDecomposition,
    target: usize,
    capacity: usize,
    backend: SplitterBackend,
    seed: u64,
) -> Result<TrianglePackingOutcome> {
    if capacity == 0 {
        return Err(Error::Invalid("capacity must be positive".into()));
    }
    if target == 0 {
        return Ok(TrianglePackingOutcome {
            verdict: true,
            witness: Some(Vec::new()),
            splitter_size: 0,
            colorings_tried: 0,
        });
    }
    let prep = Prepared::new(g, h)?;
    let n_elems = prep.options.len();
    let ell = h.p().div_ceil(capacity).max(1);
    let padded_p = ell * capacity;
    let splitter = build_splitter(n_elems.max(padded_p), padded_p, ell, backend, seed)?;
    let mut tried = 0;
    for member in &splitter.members {
        tried += 1;
        let colors: Vec<usize> = member[..n_elems].iter().map(|&c| c as usize).collect();
        if let Some(w) = prep.solve(&colors, ell, capacity, target)? {
            return Ok(TrianglePackingOutcome {
                verdict: true,
                witness: Some(w),
                splitter_size: splitter.members.len(),
                colorings_tried: tried,
            });
        }
    }
    Ok(TrianglePackingOutcome {
        verdict: false,
        witness: None,
        splitter_size: splitter.members.len(),
        colorings_tried: tried,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hub::validate_hub;

    #[test]
    fn examples() {
        let two = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let h = validate_hub(&two, &[0, 3], 2, 1).unwrap();
        let out = solve_triangle_packing(&two, &h, 2, 1, SplitterBackend::Exhaustive, 1).unwrap();
        assert!(out.verdict);
        assert_eq!(out.witness.unwrap().len(), 2);
        let k4 = Graph::complete(4);
        let h = validate_hub(&k4, &[0], 3, 1).unwrap();
        assert!(
            !solve_triangle_packing(&k4, &h, 2, 1, SplitterBackend::Exhaustive, 1)
                .unwrap()
                .verdict
        );
        let k3 = Graph::complete(3);
        let h = validate_hub(&k3, &[0, 1, 2], 1, 0).unwrap();
        let inst = PrecoloredInstance::new(&k3, &h, 1, 1, vec![0]).unwrap();
        assert!(solve_precolored(&inst).unwrap().is_some());
        assert!(oracle_precolored(&inst).unwrap());
        let zero = PrecoloredInstance::new(&k3, &h, 0, 1, vec![0]).unwrap();
        assert!(solve_precolored(&zero).unwrap().is_some());
    }
}
