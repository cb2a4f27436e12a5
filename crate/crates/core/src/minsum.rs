//! Exact min-sum inference over colorings by variable elimination.
//!
//! The engine minimizes a sum of cost tables over assignments of variables
//! to colors `0..q`. It is used wherever an optimum over colorings of a
//! large but tree-like graph is needed: edge-deletion costs of gadgets,
//! component-local tables of the edge-deletion solver, and whole-graph
//! Max Cut. Variables are eliminated in min-degree order (ties by id);
//! variables with a single allowed color are conditioned away first.

use crate::error::{Error, Result};
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

/// Cost of an infeasible assignment. Sums saturate at this value.
pub const INF: u64 = u64::MAX / 4;

/// Default cap on the number of entries of any intermediate table.
pub const DEFAULT_TABLE_CAP: usize = 1 << 22;

#[inline]
fn add(a: u64, b: u64) -> u64 {
    (a + b).min(INF)
}

#[derive(Clone, Debug)]
struct Factor {
    scope: Vec<usize>,
    table: Vec<u64>,
}

/// A min-sum problem over `n` variables with values `0..q`.
#[derive(Clone, Debug)]
pub struct MinSum {
    q: usize,
    domain: Vec<u32>,
    factors: Vec<Factor>,
}

struct Trace {
    var: usize,
    scope: Vec<usize>,
    combined: Vec<u64>,
}

impl MinSum {
    pub fn new(n: usize, q: usize) -> Self {
        assert!((1..=16).contains(&q), "q must be in 1..=16");
        Self {
            q,
            domain: vec![crate::lists::full_mask(q); n],
            factors: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.domain.len()
    }

    /// Intersects the allowed colors of `v` with `mask`.
    pub fn restrict(&mut self, v: usize, mask: u32) {
        self.domain[v] &= mask;
    }

    /// Adds a unary cost table (`costs[c]` for color `c`).
    pub fn add_unary(&mut self, v: usize, costs: Vec<u64>) {
        assert_eq!(costs.len(), self.q);
        self.factors.push(Factor {
            scope: vec![v],
            table: costs,
        });
    }

    /// Adds a cost of one whenever `u` and `v` receive the same color.
    pub fn add_conflict(&mut self, u: usize, v: usize) {
        assert_ne!(u, v);
        let q = self.q;
        let (a, b) = (u.min(v), u.max(v));
        let table = (0..q * q).map(|i| u64::from(i / q == i % q)).collect();
        self.factors.push(Factor {
            scope: vec![a, b],
            table,
        });
    }

    /// Adds a general factor. The table is indexed in mixed radix `q` with
    /// `scope[0]` most significant. Scope variables must be distinct.
    pub fn add_factor(&mut self, scope: Vec<usize>, table: Vec<u64>) {
        assert_eq!(table.len(), self.q.pow(scope.len() as u32));
        let f = normalize(self.q, scope, table);
        self.factors.push(f);
    }

    /// Minimum total cost for every coloring of `keep`, as a table indexed
    /// like [`MinSum::add_factor`] (`keep[0]` most significant). Entries of
    /// infeasible colorings are [`INF`].
    pub fn solve(self, keep: &[usize], cap: usize) -> Result<Vec<u64>> {
        let (table, _) = self.run(keep, cap, false)?;
        Ok(table)
    }

    /// Minimum total cost and an optimal assignment, or `None` if every
    /// assignment is infeasible.
    pub fn solve_with_assignment(self, cap: usize) -> Result<Option<(u64, Vec<u8>)>> {
        let (table, assignment) = self.run(&[], cap, true)?;
        let cost = table[0];
        if cost >= INF {
            return Ok(None);
        }
        Ok(Some((cost, assignment.expect("decoding requested"))))
    }

    fn run(
        mut self,
        keep: &[usize],
        cap: usize,
        decode: bool,
    ) -> Result<(Vec<u64>, Option<Vec<u8>>)> {
        let q = self.q;
        let n = self.domain.len();
        let full = crate::lists::full_mask(q);
        let mut kept = vec![false; n];
        for &k in keep {
            assert!(!kept[k], "keep variables must be distinct");
            kept[k] = true;
        }
        if q.checked_pow(keep.len() as u32).is_none_or(|s| s > cap) {
            return Err(too_large(q, keep.len()));
        }
        for v in 0..n {
            if self.domain[v] != full {
                let d = self.domain[v];
                let table = (0..q)
                    .map(|c| if d >> c & 1 == 1 { 0 } else { INF })
                    .collect();
                self.factors.push(Factor {
                    scope: vec![v],
                    table,
                });
            }
        }

        // Condition variables with exactly one allowed color.
        let mut fixed: Vec<Option<u8>> = vec![None; n];
        for v in 0..n {
            if !kept[v] && self.domain[v].count_ones() == 1 {
                fixed[v] = Some(self.domain[v].trailing_zeros() as u8);
            }
        }
        let mut constant = 0u64;
        let mut factors: Vec<Option<Factor>> = Vec::with_capacity(self.factors.len());
        for f in std::mem::take(&mut self.factors) {
            let f = if f.scope.iter().any(|&v| fixed[v].is_some()) {
                condition(q, &f, &fixed)
            } else {
                f
            };
            if f.scope.is_empty() {
                constant = add(constant, f.table[0]);
            } else {
                factors.push(Some(f));
            }
        }

        let mut var_factors: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut nbrs: Vec<HashSet<usize>> = vec![HashSet::new(); n];
        for (i, f) in factors.iter().enumerate() {
            let f = f.as_ref().unwrap();
            for &v in &f.scope {
                var_factors[v].push(i);
                for &w in &f.scope {
                    if w != v {
                        nbrs[v].insert(w);
                    }
                }
            }
        }
        let mut heap = BinaryHeap::new();
        for v in 0..n {
            if !kept[v] && fixed[v].is_none() {
                heap.push(Reverse((nbrs[v].len(), v)));
            }
        }
        let mut eliminated = vec![false; n];
        let mut trace = Vec::new();
        while let Some(Reverse((deg, v))) = heap.pop() {
            if eliminated[v] || deg != nbrs[v].len() {
                continue;
            }
            eliminated[v] = true;
            let ids: Vec<usize> = var_factors[v]
                .iter()
                .copied()
                .filter(|&i| factors[i].is_some())
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            let parts: Vec<Factor> = ids.iter().map(|&i| factors[i].take().unwrap()).collect();
            let mut scope: Vec<usize> = parts
                .iter()
                .flat_map(|f| f.scope.iter().copied())
                .filter(|&w| w != v)
                .collect();
            scope.sort_unstable();
            scope.dedup();
            if q.checked_pow(scope.len() as u32 + 1)
                .is_none_or(|s| s > cap)
            {
                return Err(too_large(q, scope.len() + 1));
            }
            let mut all = scope.clone();
            all.push(v);
            let combined = combine(q, &all, &parts);
            let reduced: Vec<u64> = combined
                .chunks(q)
                .map(|c| c.iter().copied().min().unwrap_or(INF))
                .collect();
            if decode {
                trace.push(Trace {
                    var: v,
                    scope: scope.clone(),
                    combined,
                });
            }
            for &u in &scope {
                nbrs[u].remove(&v);
                for &w in &scope {
                    if w != u {
                        nbrs[u].insert(w);
                    }
                }
            }
            nbrs[v].clear();
            if scope.is_empty() {
                constant = add(constant, reduced[0]);
            } else {
                let id = factors.len();
                for &u in &scope {
                    var_factors[u].push(id);
                    if !kept[u] {
                        heap.push(Reverse((nbrs[u].len(), u)));
                    }
                }
                factors.push(Some(Factor {
                    scope,
                    table: reduced,
                }));
            }
        }

        let rest: Vec<Factor> = factors.into_iter().flatten().collect();
        let mut table = combine(q, keep, &rest);
        for t in &mut table {
            *t = add(*t, constant);
        }

        let assignment = decode.then(|| {
            let mut value: Vec<u8> = fixed.iter().map(|f| f.unwrap_or(0)).collect();
            for t in trace.iter().rev() {
                let mut base = 0usize;
                for &u in &t.scope {
                    base = base * q + value[u] as usize;
                }
                let slice = &t.combined[base * q..base * q + q];
                let best = (0..q).min_by_key(|&c| (slice[c], c)).unwrap();
                value[t.var] = best as u8;
            }
            value
        });
        Ok((table, assignment))
    }
}

fn too_large(q: usize, vars: usize) -> Error {
    Error::GadgetTooLarge(format!(
        "elimination needs a table over {vars} variables with {q} colors"
    ))
}

/// Reorders a factor so its scope is increasing.
fn normalize(q: usize, scope: Vec<usize>, table: Vec<u64>) -> Factor {
    let mut order: Vec<usize> = (0..scope.len()).collect();
    order.sort_by_key(|&i| scope[i]);
    if order.iter().enumerate().all(|(i, &o)| i == o) {
        return Factor { scope, table };
    }
    let sorted: Vec<usize> = order.iter().map(|&i| scope[i]).collect();
    let src = Factor { scope, table };
    let table = combine(q, &sorted, std::slice::from_ref(&src));
    Factor {
        scope: sorted,
        table,
    }
}

/// Slices fixed variables out of a factor.
fn condition(q: usize, f: &Factor, fixed: &[Option<u8>]) -> Factor {
    let scope: Vec<usize> = f
        .scope
        .iter()
        .copied()
        .filter(|&v| fixed[v].is_none())
        .collect();
    let k = f.scope.len();
    let mut strides = vec![0usize; k];
    let mut s = 1;
    for i in (0..k).rev() {
        strides[i] = s;
        s *= q;
    }
    let mut base = 0;
    let mut free_strides = Vec::new();
    for (i, &v) in f.scope.iter().enumerate() {
        match fixed[v] {
            Some(c) => base += c as usize * strides[i],
            None => free_strides.push(strides[i]),
        }
    }
    let size = q.pow(scope.len() as u32);
    let mut table = Vec::with_capacity(size);
    for e in 0..size {
        let mut idx = base;
        let mut rem = e;
        for &st in free_strides.iter().rev() {
            idx += (rem % q) * st;
            rem /= q;
        }
        table.push(f.table[idx]);
    }
    Factor { scope, table }
}

/// Sums `parts` into one table over `all` (every part's scope must be a
/// subset of `all`); indexed with `all[0]` most significant.
fn combine(q: usize, all: &[usize], parts: &[Factor]) -> Vec<u64> {
    // Factors over the same scope are summed pointwise first; gadgets often
    // contribute many of them.
    let mut merged: Vec<Factor> = Vec::new();
    let mut by_scope: HashMap<&[usize], usize> = HashMap::new();
    for f in parts {
        match by_scope.get(f.scope.as_slice()) {
            Some(&i) => {
                for (a, &b) in merged[i].table.iter_mut().zip(&f.table) {
                    *a = add(*a, b);
                }
            }
            None => {
                by_scope.insert(&f.scope, merged.len());
                merged.push(f.clone());
            }
        }
    }
    let parts = &merged[..];
    let len = all.len();
    let size = q.pow(len as u32);
    let mut strides: Vec<Vec<usize>> = Vec::with_capacity(parts.len());
    for f in parts {
        let mut st = vec![0usize; len];
        let mut s = 1;
        for &v in f.scope.iter().rev() {
            let pos = all
                .iter()
                .position(|&a| a == v)
                .expect("factor scope outside combined scope");
            st[pos] = s;
            s *= q;
        }
        strides.push(st);
    }
    // The last `low` positions form blocks handled by precomputed offsets;
    // an odometer walks the remaining high positions.
    let mut low = 0;
    while low < len && q.pow(low as u32 + 1) <= 256 {
        low += 1;
    }
    let high = len - low;
    let block = q.pow(low as u32);
    let offsets: Vec<Vec<usize>> = strides
        .iter()
        .map(|st| {
            let mut off = Vec::with_capacity(block);
            off.push(0usize);
            for &stride in &st[high..] {
                off = off
                    .iter()
                    .flat_map(|&o| (0..q).map(move |c| o + c * stride))
                    .collect();
            }
            off
        })
        .collect();
    let mut out = vec![0u64; size];
    let mut digits = vec![0usize; high];
    let mut base = vec![0usize; parts.len()];
    for chunk in out.chunks_mut(block) {
        for ((f, off), &b) in parts.iter().zip(&offsets).zip(&base) {
            let table = &f.table[b..];
            for (slot, &o) in chunk.iter_mut().zip(off) {
                *slot = add(*slot, table[o]);
            }
        }
        // Advance the odometer (last high position least significant).
        let mut pos = high;
        while pos > 0 {
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < q {
                for (j, st) in strides.iter().enumerate() {
                    base[j] += st[pos];
                }
                break;
            }
            digits[pos] = 0;
            for (j, st) in strides.iter().enumerate() {
                base[j] -= st[pos] * (q - 1);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(ms: &MinSum, n: usize) -> u64 {
        let q = ms.q;
        let mut best = INF;
        for code in 0..q.pow(n as u32) {
            let mut val = vec![0usize; n];
            let mut c = code;
            for v in (0..n).rev() {
                val[v] = c % q;
                c /= q;
            }
            if (0..n).any(|v| ms.domain[v] >> val[v] & 1 == 0) {
                continue;
            }
            let mut cost = 0;
            for f in &ms.factors {
                let mut idx = 0;
                for &v in &f.scope {
                    idx = idx * q + val[v];
                }
                cost = add(cost, f.table[idx]);
            }
            best = best.min(cost);
        }
        best
    }

    #[test]
    fn odd_cycle_needs_one_deletion() {
        let mut ms = MinSum::new(5, 2);
        for i in 0..5 {
            ms.add_conflict(i, (i + 1) % 5);
        }
        let (cost, val) = ms
            .solve_with_assignment(DEFAULT_TABLE_CAP)
            .unwrap()
            .unwrap();
        assert_eq!(cost, 1);
        let mono = (0..5).filter(|&i| val[i] == val[(i + 1) % 5]).count();
        assert_eq!(mono, 1);
    }

    #[test]
    fn kept_table_matches_brute_force() {
        let mut ms = MinSum::new(4, 3);
        ms.add_conflict(0, 1);
        ms.add_conflict(1, 2);
        ms.add_conflict(2, 0);
        ms.add_conflict(2, 3);
        ms.restrict(3, 0b001);
        let table = ms.clone().solve(&[0, 1], DEFAULT_TABLE_CAP).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let mut m = ms.clone();
                m.restrict(0, 1 << a);
                m.restrict(1, 1 << b);
                assert_eq!(table[a * 3 + b], brute(&m, 4));
            }
        }
    }

    #[test]
    fn infeasible_reports_none() {
        let mut ms = MinSum::new(1, 2);
        ms.restrict(0, 0);
        assert!(ms
            .solve_with_assignment(DEFAULT_TABLE_CAP)
            .unwrap()
            .is_none());
    }

    #[test]
    fn general_factor_order_is_respected() {
        let mut ms = MinSum::new(2, 2);
        // cost = 5 if (x1, x0) == (1, 0), else 7
        ms.add_factor(vec![1, 0], vec![7, 7, 5, 7]);
        let t = ms.solve(&[0, 1], DEFAULT_TABLE_CAP).unwrap();
        assert_eq!(t, vec![7, 5, 7, 7]);
    }
}
