//! Dominating Set: a branch-and-bound oracle, an exact solver driven by a
//! hub, and the two instance generators from Set Cover and Hitting Set.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hub::{tight_hub, HubDecomposition};
use crate::setsys::{elements, universe_mask};

/// Largest graph accepted by [`oracle_domset`].
pub const ORACLE_CAP: usize = 20;
/// Largest hub accepted by [`solve_domset_hub`].
pub const MAX_DOMSET_HUB: usize = 20;
/// Largest component accepted by [`solve_domset_hub`]; its options are
/// enumerated subset by subset.
pub const MAX_DOMSET_COMPONENT: usize = 20;
/// Largest component boundary accepted by [`solve_domset_hub`]; option
/// tables have `4^boundary` entries.
pub const MAX_DOMSET_BOUNDARY: usize = 12;

/// A dominating set, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomSet {
    pub vertices: Vec<usize>,
}

impl DomSet {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// Checks that `set` is a set of vertices dominating `g`.
pub fn verify_domset(g: &Graph, set: &[usize]) -> std::result::Result<(), String> {
    let mut dominated = vec![false; g.n()];
    for &v in set {
        if v >= g.n() {
            return Err(format!("vertex {v} is out of range"));
        }
        dominated[v] = true;
        for &w in g.neighbors(v) {
            dominated[w] = true;
        }
    }
    match dominated.iter().position(|&d| !d) {
        Some(v) => Err(format!("vertex {v} is not dominated")),
        None => Ok(()),
    }
}

/// Minimum dominating set by branching on the closed neighbourhood of the
/// first undominated vertex (`n <= ORACLE_CAP`).
pub fn oracle_domset(g: &Graph) -> Result<DomSet> {
    let n = g.n();
    if n > ORACLE_CAP {
        return Err(Error::too_large(
            "graph for the domination oracle",
            n as u64,
            ORACLE_CAP as u64,
        ));
    }
    let closed: Vec<u32> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .fold(1u32 << v, |m, &w| m | 1 << w)
        })
        .collect();
    let full = (1u32 << n) - 1;

    struct Search<'a> {
        closed: &'a [u32],
        full: u32,
        best: u32,
        best_size: u32,
    }
    impl Search<'_> {
        fn go(&mut self, chosen: u32, dominated: u32) {
            let size = chosen.count_ones();
            if dominated == self.full {
                if size < self.best_size {
                    self.best_size = size;
                    self.best = chosen;
                }
                return;
            }
            if size + 1 >= self.best_size {
                return;
            }
            let v = (!dominated & self.full).trailing_zeros() as usize;
            let mut options = self.closed[v];
            while options != 0 {
                let w = options.trailing_zeros() as usize;
                options &= options - 1;
                self.go(chosen | 1 << w, dominated | self.closed[w]);
            }
        }
    }
    // Every vertex is a dominating set of itself; start from all of them.
    let mut s = Search {
        closed: &closed,
        full,
        best: full,
        best_size: n as u32 + 1,
    };
    s.go(0, 0);
    let vertices = (0..n).filter(|&v| s.best >> v & 1 == 1).collect();
    Ok(DomSet { vertices })
}

/// For one component: the fewest component vertices that dominate the whole
/// component given which boundary vertices are selected, indexed by
/// `[selected boundary][boundary dominated by the choice]`.
struct ComponentOptions {
    comp: Vec<usize>,
    /// Hub positions of the boundary vertices.
    boundary: Vec<usize>,
    /// `cost[sel * width + cov]`, `u32::MAX` when impossible.
    cost: Vec<u32>,
    choice: Vec<u32>,
}

impl ComponentOptions {
    fn new(g: &Graph, h: &HubDecomposition, index: usize) -> Result<Self> {
        let comp = h.components()[index].clone();
        let k = comp.len();
        if k > MAX_DOMSET_COMPONENT {
            return Err(Error::too_large(
                "component for domination options",
                k as u64,
                MAX_DOMSET_COMPONENT as u64,
            ));
        }
        let bnd = h.boundary(index);
        let b = bnd.len();
        if b > MAX_DOMSET_BOUNDARY {
            return Err(Error::too_large(
                "component boundary for domination options",
                b as u64,
                MAX_DOMSET_BOUNDARY as u64,
            ));
        }
        let local = |v: usize| comp.binary_search(&v).ok();
        // Closed neighbourhood within the component, and boundary neighbours.
        let mut inner = vec![0u32; k];
        let mut outer = vec![0u32; k];
        for (i, &v) in comp.iter().enumerate() {
            inner[i] |= 1 << i;
            for &w in g.neighbors(v) {
                if let Some(j) = local(w) {
                    inner[i] |= 1 << j;
                } else if let Ok(j) = bnd.binary_search(&w) {
                    outer[i] |= 1 << j;
                }
            }
        }
        // Component vertices each boundary vertex dominates when selected.
        let mut from_boundary = vec![0u32; b];
        for (i, &o) in outer.iter().enumerate() {
            for (j, slot) in from_boundary.iter_mut().enumerate() {
                if o >> j & 1 == 1 {
                    *slot |= 1 << i;
                }
            }
        }
        let width = 1usize << b;
        let mut cost = vec![u32::MAX; width * width];
        let mut choice = vec![0u32; width * width];
        let full = (1u32 << k) - 1;
        let mut sel_dom = vec![0u32; width];
        for sel in 1..width {
            let j = sel.trailing_zeros() as usize;
            sel_dom[sel] = sel_dom[sel & (sel - 1)] | from_boundary[j];
        }
        for x in 0..=full {
            let mut dom = 0u32;
            let mut cov = 0usize;
            let mut bits = x;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                dom |= inner[i];
                cov |= outer[i] as usize;
            }
            let size = x.count_ones();
            for (sel, &sd) in sel_dom.iter().enumerate() {
                if (dom | sd) & full == full {
                    let slot = sel * width + cov;
                    if size < cost[slot] {
                        cost[slot] = size;
                        choice[slot] = x;
                    }
                }
            }
            if x == full {
                break;
            }
        }
        Ok(Self {
            comp,
            boundary: bnd.iter().map(|&v| h.hub_position(v).unwrap()).collect(),
            cost,
            choice,
        })
    }

    fn width(&self) -> usize {
        1 << self.boundary.len()
    }

    /// Local boundary mask of a hub mask.
    fn localize(&self, hub_mask: u64) -> usize {
        self.boundary
            .iter()
            .enumerate()
            .filter(|(_, &p)| hub_mask >> p & 1 == 1)
            .fold(0, |m, (j, _)| m | 1 << j)
    }

    fn vertices_of(&self, x: u32) -> impl Iterator<Item = usize> + '_ {
        (0..self.comp.len())
            .filter(move |&i| x >> i & 1 == 1)
            .map(|i| self.comp[i])
    }
}

/// Exact minimum dominating set using a hub `Q`.
///
/// Every hub vertex is either selected, dominated by a selected hub
/// neighbour, or must be dominated from a component. For each selected set
/// `S ⊆ Q` the remaining requirement `R` is covered by a subset DP over the
/// components, each contributing its cheapest option for every part of `R`
/// it dominates. Running time `3^p · 2^delta · poly`, where the per
/// component tables cost `2^sigma · 4^delta` once.
pub fn solve_domset_hub(g: &Graph, h: &HubDecomposition) -> Result<DomSet> {
    let p = h.p();
    if p > MAX_DOMSET_HUB {
        return Err(Error::too_large(
            "hub for the domination solver",
            p as u64,
            MAX_DOMSET_HUB as u64,
        ));
    }
    let options: Vec<ComponentOptions> = (0..h.components().len())
        .map(|i| ComponentOptions::new(g, h, i))
        .collect::<Result<_>>()?;
    let hub_closed: Vec<u64> = h
        .hub()
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            g.neighbors(v)
                .iter()
                .filter_map(|&w| h.hub_position(w))
                .fold(1u64 << i, |m, j| m | 1 << j)
        })
        .collect();
    let full: u64 = (1u64 << p) - 1;

    let mut best: Option<(u32, u64)> = None;
    let mut dominated = vec![0u64; 1 << p];
    for sel in 0..=full {
        if sel != 0 {
            let j = sel.trailing_zeros() as usize;
            dominated[sel as usize] = dominated[(sel & (sel - 1)) as usize] | hub_closed[j];
        }
        let need = full & !dominated[sel as usize];
        let base = sel.count_ones();
        if best.is_some_and(|(b, _)| base >= b) {
            continue;
        }
        if let Some(total) = cover_requirement(&options, sel, need, None) {
            let total = total + base;
            if best.is_none_or(|(b, _)| total < b) {
                best = Some((total, sel));
            }
        }
    }
    let (_, sel) = best.expect("selecting the whole hub and every component is feasible");
    let need = full & !dominated[sel as usize];
    let mut vertices: Vec<usize> = h
        .hub()
        .iter()
        .enumerate()
        .filter(|(i, _)| sel >> i & 1 == 1)
        .map(|(_, &v)| v)
        .collect();
    cover_requirement(&options, sel, need, Some(&mut vertices));
    vertices.sort_unstable();
    Ok(DomSet { vertices })
}

/// Fewest component vertices that dominate every component (given the
/// selected hub set `sel`) and every hub vertex of `need`. When `out` is
/// given, an optimal choice is appended to it.
fn cover_requirement(
    options: &[ComponentOptions],
    sel: u64,
    need: u64,
    out: Option<&mut Vec<usize>>,
) -> Option<u32> {
    let need_bits: Vec<usize> = (0..64).filter(|&i| need >> i & 1 == 1).collect();
    let size = 1usize << need_bits.len();
    let compress = |hub_mask: u64| -> usize {
        need_bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| hub_mask >> b & 1 == 1)
            .fold(0, |m, (i, _)| m | 1 << i)
    };
    const NONE: u32 = u32::MAX;
    let mut dp = vec![NONE; size];
    dp[0] = 0;
    // Per component: (compressed coverage, cost, choice) alternatives, and
    // the DP layers when a witness is wanted.
    let tracing = out.is_some();
    let mut layers: Vec<(Vec<u32>, Vec<(usize, u32, u32)>)> = Vec::new();
    for opt in options {
        let width = opt.width();
        let local_sel = opt.localize(sel);
        let mut alts: Vec<(usize, u32, u32)> = Vec::new();
        for cov in 0..width {
            let slot = local_sel * width + cov;
            let c = opt.cost[slot];
            if c == NONE {
                continue;
            }
            let hub_cov = opt
                .boundary
                .iter()
                .enumerate()
                .filter(|(j, _)| cov >> j & 1 == 1)
                .fold(0u64, |m, (_, &pos)| m | 1 << pos);
            let key = compress(hub_cov);
            match alts.iter_mut().find(|a| a.0 == key) {
                Some(a) if c < a.1 => *a = (key, c, opt.choice[slot]),
                Some(_) => {}
                None => alts.push((key, c, opt.choice[slot])),
            }
        }
        if alts.is_empty() {
            return None;
        }
        let mut next = vec![NONE; size];
        for (mask, &v) in dp.iter().enumerate() {
            if v == NONE {
                continue;
            }
            for &(key, c, _) in &alts {
                let slot = &mut next[mask | key];
                *slot = (*slot).min(v + c);
            }
        }
        if tracing {
            layers.push((std::mem::replace(&mut dp, next), alts));
        } else {
            dp = next;
        }
    }
    let total = dp[size - 1];
    if total == NONE {
        return None;
    }
    if let Some(out) = out {
        let mut mask = size - 1;
        let mut value = total;
        for (opt, (prev, alts)) in options.iter().zip(&layers).rev() {
            let (m, c, x) = alts
                .iter()
                .find_map(|&(key, c, x)| {
                    (0..size)
                        .find(|&m| m | key == mask && prev[m] != NONE && prev[m] + c == value)
                        .map(|m| (m, c, x))
                })
                .expect("DP layers are consistent");
            mask = m;
            value -= c;
            out.extend(opt.vertices_of(x));
        }
    }
    Some(total)
}

/// A Dominating Set instance produced from a set problem; its minimum
/// dominating set is `offset` plus the optimum of the set problem.
#[derive(Clone, Debug)]
pub struct DomReduction {
    pub graph: Graph,
    pub hub: HubDecomposition,
    pub offset: usize,
}

/// Set Cover → Dominating Set: element vertices `y_i` (`0..n`, the hub) and
/// a path `a_F b_F c_F` per set with `a_F` adjacent to the elements of `F`.
/// The minimum dominating set is the minimum cover plus `|F|`.
pub fn reduce_setcover_to_domset(n: usize, family: &[u128]) -> Result<DomReduction> {
    check_family(n, family)?;
    let union = family.iter().fold(0, |a, &s| a | s);
    if union != universe_mask(n) {
        return Err(Error::Invalid(
            "the family does not cover the universe".into(),
        ));
    }
    let mut edges = Vec::new();
    for (j, &s) in family.iter().enumerate() {
        let a = n + 3 * j;
        edges.push((a, a + 1));
        edges.push((a + 1, a + 2));
        edges.extend(elements(s).into_iter().map(|i| (i, a)));
    }
    let graph = Graph::new(n + 3 * family.len(), edges)?;
    let ys: Vec<usize> = (0..n).collect();
    let hub = tight_hub(&graph, &ys);
    Ok(DomReduction {
        graph,
        hub,
        offset: family.len(),
    })
}

/// Hitting Set → Dominating Set: element vertices `y_i` (the hub), pendant
/// chains `y_i a_i b_i`, and a vertex `z_F` per set adjacent to its
/// elements. The minimum dominating set is `n` plus the minimum hitting
/// set.
pub fn reduce_hittingset_to_domset(n: usize, family: &[u128]) -> Result<DomReduction> {
    check_family(n, family)?;
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, n + i));
        edges.push((n + i, 2 * n + i));
    }
    for (j, &s) in family.iter().enumerate() {
        edges.extend(elements(s).into_iter().map(|i| (i, 3 * n + j)));
    }
    let graph = Graph::new(3 * n + family.len(), edges)?;
    let ys: Vec<usize> = (0..n).collect();
    let hub = tight_hub(&graph, &ys);
    Ok(DomReduction {
        graph,
        hub,
        offset: n,
    })
}

fn check_family(n: usize, family: &[u128]) -> Result<()> {
    if family.contains(&0) {
        return Err(Error::Invalid("the family contains the empty set".into()));
    }
    if family.iter().any(|&s| s & !universe_mask(n) != 0) {
        return Err(Error::Invalid(
            "a set has an element outside the universe".into(),
        ));
    }
    Ok(())
}

/// Minimum hitting set by enumerating subsets of the universe in order of
/// size (`n <= 20`).
pub fn oracle_hitting_set(n: usize, family: &[u128]) -> Result<Vec<usize>> {
    if n > ORACLE_CAP {
        return Err(Error::too_large(
            "universe for the hitting set oracle",
            n as u64,
            ORACLE_CAP as u64,
        ));
    }
    check_family(n, family)?;
    let best = (0u128..1 << n)
        .filter(|&h| family.iter().all(|&s| s & h != 0))
        .min_by_key(|h| (h.count_ones(), *h))
        .expect("the whole universe hits every nonempty set");
    Ok(elements(best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hub::validate_hub;

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_domset(&Graph::complete(3)).unwrap().size(), 1);
        assert_eq!(oracle_domset(&Graph::path(3)).unwrap().size(), 1);
        assert_eq!(oracle_domset(&Graph::cycle(6)).unwrap().size(), 2);
        assert_eq!(oracle_domset(&Graph::empty(4)).unwrap().size(), 4);
        assert_eq!(oracle_domset(&Graph::empty(0)).unwrap().size(), 0);
        assert!(oracle_domset(&Graph::empty(21)).unwrap_err().is_cap());
    }

    #[test]
    fn hub_examples() {
        let star = Graph::new(5, (1..5).map(|v| (0, v))).unwrap();
        let h = validate_hub(&star, &[0], 1, 1).unwrap();
        let s = solve_domset_hub(&star, &h).unwrap();
        assert_eq!(s.vertices, vec![0]);

        let p5 = Graph::path(5);
        let h = validate_hub(&p5, &[2], 2, 1).unwrap();
        let s = solve_domset_hub(&p5, &h).unwrap();
        assert_eq!(s.size(), 2);
        verify_domset(&p5, &s.vertices).unwrap();

        let h = tight_hub(&p5, &[]);
        assert_eq!(solve_domset_hub(&p5, &h).unwrap().size(), 2);
    }

    #[test]
    fn reduction_examples() {
        let r = reduce_setcover_to_domset(1, &[0b1]).unwrap();
        assert_eq!(oracle_domset(&r.graph).unwrap().size(), 2);
        assert_eq!(r.offset, 1);
        let r = reduce_setcover_to_domset(2, &[0b01, 0b10, 0b11]).unwrap();
        assert_eq!(oracle_domset(&r.graph).unwrap().size(), 4);
        assert_eq!((r.hub.sigma(), r.hub.delta()), (3, 2));
        assert!(reduce_setcover_to_domset(2, &[0b01]).is_err());

        let r = reduce_hittingset_to_domset(1, &[0b1]).unwrap();
        assert_eq!(oracle_domset(&r.graph).unwrap().size(), 2);
        let r = reduce_hittingset_to_domset(3, &[]).unwrap();
        assert_eq!(oracle_domset(&r.graph).unwrap().size(), 3);
        assert!(reduce_hittingset_to_domset(2, &[0]).is_err());
    }
}
