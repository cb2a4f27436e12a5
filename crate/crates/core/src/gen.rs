//! Seeded instance generators shared by the tests and the self-check.

use crate::graph::Graph;
use crate::hub::{validate_hub, HubDecomposition};
use crate::lists::{full_mask, ListAssignment};
use crate::wildcard::{WildcardConstraint, WildcardCsp};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type GenRng = ChaCha8Rng;

/// Deterministic generator for a seed and a stream label, so independent
/// suites do not perturb each other's instances.
pub fn rng(seed: u64, stream: u64) -> GenRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Erdős–Rényi graph.
pub fn random_graph(rng: &mut GenRng, n: usize, edge_prob: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(edge_prob) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("generated edges are valid")
}

/// A random graph with `n` vertices built around a (sigma, delta)-hub:
/// components of at most `sigma` vertices (connected by a random spanning
/// tree plus extra edges) each attached to at most `delta` hub vertices, and
/// random hub-internal edges. Vertex labels are shuffled.
pub fn random_hubbed_graph(
    rng: &mut GenRng,
    n: usize,
    sigma: usize,
    delta: usize,
) -> (Graph, HubDecomposition) {
    assert!(sigma >= 1);
    let p = if n == 0 {
        0
    } else {
        rng.gen_range(0..=n.min(n / 2 + 1))
    };
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let hub: Vec<usize> = perm[..p].to_vec();
    let mut edges = Vec::new();
    for i in 0..p {
        for j in i + 1..p {
            if rng.gen_bool(0.3) {
                edges.push((hub[i], hub[j]));
            }
        }
    }
    let mut rest = &perm[p..];
    while !rest.is_empty() {
        let size = rng.gen_range(1..=sigma.min(rest.len()));
        let (comp, tail) = rest.split_at(size);
        rest = tail;
        for i in 1..comp.len() {
            edges.push((comp[rng.gen_range(0..i)], comp[i]));
        }
        for i in 0..comp.len() {
            for j in i + 1..comp.len() {
                if rng.gen_bool(0.3) {
                    edges.push((comp[i], comp[j]));
                }
            }
        }
        if p > 0 {
            let k = rng.gen_range(0..=delta.min(p));
            let boundary: Vec<usize> = hub.choose_multiple(rng, k).copied().collect();
            for &b in &boundary {
                // Every chosen hub vertex gets at least one edge.
                edges.push((b, *comp.choose(rng).unwrap()));
                for &v in comp {
                    if rng.gen_bool(0.3) {
                        edges.push((b, v));
                    }
                }
            }
        }
    }
    let g = Graph::new(n, edges).expect("generated edges are valid");
    let h = validate_hub(&g, &hub, sigma, delta).expect("generator respects the bounds");
    (g, h)
}

/// Random lists over `[q]`: mostly nonempty, occasionally empty.
pub fn random_lists(rng: &mut GenRng, n: usize, q: usize, empty_prob: f64) -> ListAssignment {
    let lists = (0..n)
        .map(|_| {
            if rng.gen_bool(empty_prob) {
                0
            } else {
                rng.gen_range(1..=full_mask(q))
            }
        })
        .collect();
    ListAssignment::new(q, lists).expect("masks within [q]")
}

/// A random wildcard CSP with `m` constraints of arity `1..=r` and entries in
/// `0..=max_cost`, made monotone by pushing minima towards more wildcards.
pub fn random_wildcard_csp(
    rng: &mut GenRng,
    n: usize,
    q: usize,
    r: usize,
    m: usize,
    max_cost: u64,
) -> WildcardCsp {
    let b = q + 1;
    let mut constraints = Vec::with_capacity(m);
    let vars: Vec<usize> = (0..n).collect();
    for _ in 0..m {
        let k = rng.gen_range(0..=r.min(n));
        let scope: Vec<usize> = vars.choose_multiple(rng, k).copied().collect();
        let size = b.pow(k as u32);
        let mut table: Vec<u64> = (0..size).map(|_| rng.gen_range(0..=max_cost)).collect();
        // Process entries by increasing number of wildcards so each entry
        // inherits the minimum over all entries it is obtained from.
        let mut order: Vec<usize> = (0..size).collect();
        let wilds = |mut idx: usize| {
            let mut w = 0;
            for _ in 0..k {
                w += usize::from(idx % b == q);
                idx /= b;
            }
            w
        };
        order.sort_by_key(|&i| wilds(i));
        for &idx in &order {
            let mut stride = 1;
            for _ in 0..k {
                let d = idx / stride % b;
                if d == q {
                    for from in 0..q {
                        let src = idx - (q - from) * stride;
                        table[idx] = table[idx].min(table[src]);
                    }
                }
                stride *= b;
            }
        }
        constraints.push(WildcardConstraint { scope, table });
    }
    WildcardCsp::new(n, q, constraints).expect("generated constraints are valid")
}

/// Random CNF with clauses of 1..=3 literals over distinct variables.
pub fn random_cnf(rng: &mut GenRng, n: usize, m: usize) -> crate::maxcsp::Cnf {
    let vars: Vec<i32> = (1..=n as i32).collect();
    let clauses = if n == 0 {
        Vec::new()
    } else {
        (0..m)
            .map(|_| {
                let k = rng.gen_range(1..=3.min(n));
                let picked: Vec<i32> = vars.choose_multiple(rng, k).copied().collect();
                picked
                    .into_iter()
                    .map(|v| if rng.gen_bool(0.5) { v } else { -v })
                    .collect()
            })
            .collect()
    };
    crate::maxcsp::Cnf { n, clauses }
}

/// Random Max-CSP with `m` constraints of arity `1..=r`; each tuple is
/// allowed with probability `density`.
pub fn random_maxcsp(
    rng: &mut GenRng,
    n: usize,
    d: usize,
    r: usize,
    m: usize,
    density: f64,
) -> crate::maxcsp::MaxCsp {
    use crate::maxcsp::{MaxConstraint, MaxCsp};
    let vars: Vec<usize> = (0..n).collect();
    let mut constraints = Vec::with_capacity(m);
    for _ in 0..m {
        let k = rng.gen_range(1..=r.min(n).max(1)).min(n);
        let scope: Vec<usize> = vars.choose_multiple(rng, k).copied().collect();
        let mut tuples = Vec::new();
        for code in 0..d.pow(k as u32) {
            if rng.gen_bool(density) {
                let mut t = vec![0u8; k];
                let mut rem = code;
                for slot in t.iter_mut().rev() {
                    *slot = (rem % d) as u8;
                    rem /= d;
                }
                tuples.push(t);
            }
        }
        constraints.push(MaxConstraint::new(scope, tuples));
    }
    MaxCsp::new(n, d, constraints).expect("generated constraints are valid")
}

/// Random family of `m` nonempty subsets of `[n]` with sizes in `1..=max_size`.
pub fn random_family(rng: &mut GenRng, n: usize, m: usize, max_size: usize) -> Vec<u128> {
    let elems: Vec<usize> = (0..n).collect();
    (0..m)
        .map(|_| {
            let k = rng.gen_range(1..=max_size.min(n).max(1));
            elems
                .choose_multiple(rng, k)
                .fold(0u128, |a, &e| a | 1 << e)
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every family of at most `max_sets` distinct nonempty subsets of `[n]`
/// whose union is `[n]`, one representative per isomorphism class (the
/// lexicographically least sorted relabelling). Practical for `n <= 6`.
pub fn covering_family_classes(n: usize, max_sets: usize) -> Vec<Vec<u128>> {
    use std::collections::BTreeSet;
    assert!(n <= 7, "class enumeration is meant for tiny universes");
    let masks = 1usize << n;
    let perm_table: Vec<Vec<u128>> = permutations(n)
        .into_iter()
        .map(|p| {
            (0..masks)
                .map(|m| {
                    (0..n)
                        .filter(|&e| m >> e & 1 == 1)
                        .fold(0u128, |a, e| a | 1 << p[e])
                })
                .collect()
        })
        .collect();
    let canon = |fam: &[u128]| -> Vec<u128> {
        let mut best: Option<Vec<u128>> = None;
        let mut img = Vec::with_capacity(fam.len());
        for table in &perm_table {
            img.clear();
            img.extend(fam.iter().map(|&s| table[s as usize]));
            img.sort_unstable();
            if best.as_ref().is_none_or(|b| img < *b) {
                best = Some(img.clone());
            }
        }
        best.unwrap_or_default()
    };
    let full = if n == 0 { 0 } else { (1u128 << n) - 1 };
    let mut layer: BTreeSet<Vec<u128>> = BTreeSet::from([Vec::new()]);
    let mut out = Vec::new();
    for size in 0..=max_sets {
        out.extend(
            layer
                .iter()
                .filter(|f| f.iter().fold(0, |a, &s| a | s) == full)
                .cloned(),
        );
        if size == max_sets {
            break;
        }
        let mut next = BTreeSet::new();
        for fam in &layer {
            for s in 1..masks as u128 {
                if !fam.contains(&s) {
                    let mut grown = fam.clone();
                    grown.push(s);
                    next.insert(canon(&grown));
                }
            }
        }
        layer = next;
    }
    out
}
