//! CSP with wildcard: variables take a value in `0..q` or the wildcard `×`,
//! every wildcard costs one, and constraint cost tables may only decrease
//! when values are overwritten by `×`.
//!
//! Tables are dense and indexed in mixed radix `q + 1` with the first scope
//! variable most significant; digit `q` encodes `×`.

use crate::coloring::{sat_pow, vd_local_optimum, SolveStats};
use crate::error::{Error, Result};
use crate::graph::{parse_num, Graph};
use crate::hub::HubDecomposition;
use crate::lists::ListAssignment;
use std::fmt::Write as _;

/// Cap on `(q+1)^n` for [`oracle_wildcard`].
pub const ORACLE_WILDCARD_CAP: u128 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WildcardConstraint {
    pub scope: Vec<usize>,
    pub table: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WildcardCsp {
    n: usize,
    q: usize,
    constraints: Vec<WildcardConstraint>,
}

/// An assignment: `None` is the wildcard.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WildcardAssignment {
    pub values: Vec<Option<u8>>,
    pub cost: u64,
}

impl WildcardAssignment {
    /// Number of wildcard variables.
    pub fn norm(&self) -> usize {
        self.values.iter().filter(|v| v.is_none()).count()
    }
}

impl WildcardCsp {
    /// Checks scopes and table sizes; does not check monotonicity.
    pub fn new(n: usize, q: usize, constraints: Vec<WildcardConstraint>) -> Result<Self> {
        if !(1..=crate::lists::MAX_COLORS).contains(&q) {
            return Err(Error::Invalid(format!(
                "q must be in 1..={}",
                crate::lists::MAX_COLORS
            )));
        }
        for (i, c) in constraints.iter().enumerate() {
            if c.scope.iter().any(|&v| v >= n) {
                return Err(Error::Invalid(format!(
                    "constraint {i} mentions a variable outside 0..{n}"
                )));
            }
            let mut s = c.scope.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != c.scope.len() {
                return Err(Error::Invalid(format!("constraint {i} repeats a variable")));
            }
            let expected = (q + 1).checked_pow(c.scope.len() as u32);
            if expected != Some(c.table.len()) {
                return Err(Error::Invalid(format!(
                    "constraint {i} has a table of the wrong size"
                )));
            }
        }
        Ok(Self { n, q, constraints })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn constraints(&self) -> &[WildcardConstraint] {
        &self.constraints
    }

    /// Largest scope size (the arity `r`).
    pub fn arity(&self) -> usize {
        self.constraints
            .iter()
            .map(|c| c.scope.len())
            .max()
            .unwrap_or(0)
    }

    /// Total cost of an assignment: wildcards plus constraint costs.
    pub fn total_cost(&self, values: &[Option<u8>]) -> u64 {
        let q = self.q;
        let mut cost = values.iter().filter(|v| v.is_none()).count() as u64;
        for c in &self.constraints {
            let idx = c.scope.iter().fold(0, |acc, &v| {
                acc * (q + 1) + values[v].map_or(q, usize::from)
            });
            cost += c.table[idx];
        }
        cost
    }
}

/// Index of the first constraint violating monotonicity, if any. Checking
/// single overwrites suffices since the order is their transitive closure.
pub fn first_wildcard_violation(csp: &WildcardCsp) -> Option<usize> {
    let b = csp.q + 1;
    csp.constraints.iter().position(|c| {
        let k = c.scope.len();
        (0..c.table.len()).any(|idx| {
            let mut stride = 1;
            for _ in 0..k {
                let digit = idx / stride % b;
                if digit != csp.q && c.table[idx + (csp.q - digit) * stride] > c.table[idx] {
                    return true;
                }
                stride *= b;
            }
            false
        })
    })
}

/// True iff every table is monotone under overwriting values with `×`.
pub fn check_wildcard_property(csp: &WildcardCsp) -> bool {
    first_wildcard_violation(csp).is_none()
}

/// The wildcard CSP of vertex-deletion list coloring with a hub: one
/// variable per hub vertex, one constraint per component over its hub
/// neighbours whose cost is the component's local optimum, and one
/// constraint per hub edge costing 2 when both ends keep the same color.
/// Value `i` of hub vertex `x` decodes to the `(i mod |L(x)|)`-th color of
/// its list; `×` decodes to deletion.
///
/// Every hub list must be nonempty.
pub fn vd_to_wildcard_csp(
    g: &Graph,
    la: &ListAssignment,
    h: &HubDecomposition,
) -> Result<WildcardCsp> {
    let q = la.q();
    if let Some(&v) = h.hub().iter().find(|&&v| la.mask(v) == 0) {
        return Err(Error::Invalid(format!("hub vertex {v} has an empty list")));
    }
    let mut constraints = Vec::new();
    let mut color = vec![None; g.n()];
    for (ci, comp) in h.components().iter().enumerate() {
        let boundary = h.boundary(ci);
        let k = boundary.len();
        let size = (q + 1).pow(k as u32);
        let mut table = Vec::with_capacity(size);
        for idx in 0..size {
            let mut rem = idx;
            for &b in boundary.iter().rev() {
                color[b] = decode_value(la, b, rem % (q + 1));
                rem /= q + 1;
            }
            table.push(vd_local_optimum(g, la, comp, &color).0 as u64);
        }
        for &b in boundary {
            color[b] = None;
        }
        let scope = boundary
            .iter()
            .map(|&b| h.hub_position(b).unwrap())
            .collect();
        constraints.push(WildcardConstraint { scope, table });
    }
    for (u, v) in h.hub_edges(g) {
        let mut table = vec![0; (q + 1) * (q + 1)];
        for a in 0..q {
            for b in 0..q {
                if decode_value(la, u, a) == decode_value(la, v, b) {
                    table[a * (q + 1) + b] = 2;
                }
            }
        }
        constraints.push(WildcardConstraint {
            scope: vec![h.hub_position(u).unwrap(), h.hub_position(v).unwrap()],
            table,
        });
    }
    WildcardCsp::new(h.p(), q, constraints)
}

/// Decodes a CSP value of hub vertex `v` to a color (`None` for `×`).
pub fn decode_value(la: &ListAssignment, v: usize, value: usize) -> Option<u8> {
    if value >= la.q() {
        return None;
    }
    let colors = la.colors(v);
    Some(colors[value % colors.len()])
}

/// Exact optimum by enumerating all `(q+1)^n` assignments; returns the
/// lexicographically least optimal assignment (variable 0 most significant,
/// values ordered `0..q` then `×`).
pub fn oracle_wildcard(csp: &WildcardCsp) -> Result<WildcardAssignment> {
    let b = csp.q + 1;
    let total = sat_pow(b as u128, csp.n);
    if total > ORACLE_WILDCARD_CAP {
        return Err(Error::too_large("assignments", total, ORACLE_WILDCARD_CAP));
    }
    let mut best: Option<WildcardAssignment> = None;
    let mut values = vec![None; csp.n];
    for code in 0..total as usize {
        let mut rem = code;
        for v in (0..csp.n).rev() {
            let d = rem % b;
            values[v] = (d < csp.q).then_some(d as u8);
            rem /= b;
        }
        let cost = csp.total_cost(&values);
        if best.as_ref().is_none_or(|w| cost < w.cost) {
            best = Some(WildcardAssignment {
                values: values.clone(),
                cost,
            });
        }
    }
    Ok(best.expect("at least one assignment"))
}

/// The worst-case leaf count `((q+1)^r - 1)^ceil(n / r)`, at least 1.
pub fn wildcard_leaf_bound(q: usize, n: usize, r: usize) -> u128 {
    let r = r.max(1);
    sat_pow(sat_pow(q as u128 + 1, r) - 1, n.div_ceil(r)).max(1)
}

/// Exact optimum by branch and reduce.
///
/// Reduction rules: variables in no scope take value 0; a constraint whose
/// scope is contained in another's is added into it. With at most `r`
/// variables left (`r` the arity of the input) the rest is enumerated (one
/// leaf). Otherwise the constraint with the largest scope is taken: if its
/// table is constant it is dropped, else it has an entry `f'` that some
/// entry `f` with one more `×` beats (`cost(f) + 1 <= cost(f')`), and the
/// search branches over every assignment of the scope except `f'`.
pub fn solve_wildcard(csp: &WildcardCsp) -> Result<(WildcardAssignment, SolveStats)> {
    if let Some(constraint) = first_wildcard_violation(csp) {
        return Err(Error::WildcardPropertyViolated { constraint });
    }
    let r = csp.arity().max(1);
    let mut solver = Solver {
        q: csp.q,
        r,
        leaves: 0,
    };
    let mut offset = 0;
    let mut cons = Vec::new();
    for c in &csp.constraints {
        let c = normalize(csp.q, c);
        if c.scope.is_empty() {
            offset += c.table[0];
        } else {
            cons.push(c);
        }
    }
    let values = vec![UNSET; csp.n];
    let (cost, values) = solver.solve(cons, offset, values);
    let values: Vec<Option<u8>> = values
        .into_iter()
        .map(|v| (v < csp.q as u8).then_some(v))
        .collect();
    debug_assert_eq!(csp.total_cost(&values), cost);
    let stats = SolveStats {
        leaves: solver.leaves,
        bound: wildcard_leaf_bound(csp.q, csp.n, r),
    };
    Ok((WildcardAssignment { values, cost }, stats))
}

/// Applies the reduction rules once to the whole instance: constraints
/// whose scope is contained in another's are added into it, and variables
/// in no scope are dropped (they take a value at no cost). The optimum is
/// unchanged.
pub fn reduce_wildcard(csp: &WildcardCsp) -> Result<WildcardCsp> {
    let q = csp.q;
    let mut cons: Vec<WildcardConstraint> =
        csp.constraints.iter().map(|c| normalize(q, c)).collect();
    merge_contained(q, &mut cons);
    let mut rename = vec![usize::MAX; csp.n];
    let mut next = 0;
    for c in &cons {
        for &v in &c.scope {
            if rename[v] == usize::MAX {
                rename[v] = next;
                next += 1;
            }
        }
    }
    let cons = cons
        .into_iter()
        .map(|c| WildcardConstraint {
            scope: c.scope.iter().map(|&v| rename[v]).collect(),
            table: c.table,
        })
        .collect();
    WildcardCsp::new(next, q, cons)
}

const UNSET: u8 = u8::MAX;

struct Solver {
    q: usize,
    r: usize,
    leaves: u64,
}

impl Solver {
    /// `values[v]` is `UNSET`, a value `< q`, or `q` for `×`. Returns the
    /// best cost (including `offset` and the wildcards already set) and the
    /// completed assignment.
    fn solve(
        &mut self,
        mut cons: Vec<WildcardConstraint>,
        mut offset: u64,
        mut values: Vec<u8>,
    ) -> (u64, Vec<u8>) {
        let q = self.q;
        loop {
            merge_contained(q, &mut cons);
            let mut in_scope = vec![false; values.len()];
            for c in &cons {
                for &v in &c.scope {
                    in_scope[v] = true;
                }
            }
            for v in 0..values.len() {
                if values[v] == UNSET && !in_scope[v] {
                    values[v] = 0;
                }
            }
            let open: Vec<usize> = (0..values.len()).filter(|&v| values[v] == UNSET).collect();
            if open.len() <= self.r {
                self.leaves += 1;
                return exhaust(q, &cons, offset, values, &open);
            }
            let pick = (0..cons.len())
                .max_by_key(|&i| (cons[i].scope.len(), std::cmp::Reverse(i)))
                .unwrap();
            let table = &cons[pick].table;
            let all_wild = table.len() - 1;
            let c_del = table[all_wild];
            if table.iter().all(|&t| t == c_del) {
                offset += c_del;
                cons.remove(pick);
                continue;
            }
            let c = cons.remove(pick);
            let k = c.scope.len();
            let b = q + 1;
            // f': an entry above c_del with the most wildcards (first in
            // encoding order on ties); f: f' with its first value wildcarded.
            let norm = |idx: usize| digits(idx, b, k).iter().filter(|&&d| d == q).count();
            let excluded = (0..c.table.len())
                .filter(|&i| c.table[i] > c_del)
                .max_by_key(|&i| (norm(i), std::cmp::Reverse(i)))
                .unwrap();
            let ex_digits = digits(excluded, b, k);
            let first = ex_digits
                .iter()
                .position(|&d| d != q)
                .expect("entry above c_del is not all-wildcard");
            let better = excluded + (q - ex_digits[first]) * b.pow((k - 1 - first) as u32);
            assert!(
                c.table[better] + norm(better) as u64 <= c.table[excluded] + norm(excluded) as u64,
                "case-b witness must dominate the excluded entry"
            );

            let mut best: Option<(u64, Vec<u8>)> = None;
            for idx in 0..c.table.len() {
                if idx == excluded {
                    continue;
                }
                let ds = digits(idx, b, k);
                let mut child_values = values.clone();
                let mut child_offset = offset + c.table[idx];
                for (&v, &d) in c.scope.iter().zip(&ds) {
                    child_values[v] = d as u8;
                    if d == q {
                        child_offset += 1;
                    }
                }
                let mut child_cons = Vec::with_capacity(cons.len());
                for other in &cons {
                    let rc = restrict(q, other, &child_values);
                    if rc.scope.is_empty() {
                        child_offset += rc.table[0];
                    } else {
                        child_cons.push(rc);
                    }
                }
                let (cost, vals) = self.solve(child_cons, child_offset, child_values);
                if best.as_ref().is_none_or(|(bc, _)| cost < *bc) {
                    best = Some((cost, vals));
                }
            }
            return best.expect("at least one branch");
        }
    }
}

/// Digits of `idx` in radix `b`, most significant first.
fn digits(mut idx: usize, b: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for i in (0..k).rev() {
        out[i] = idx % b;
        idx /= b;
    }
    out
}

/// Enumerates the open variables; ties keep the first assignment found.
fn exhaust(
    q: usize,
    cons: &[WildcardConstraint],
    offset: u64,
    mut values: Vec<u8>,
    open: &[usize],
) -> (u64, Vec<u8>) {
    let b = q + 1;
    let total = b.pow(open.len() as u32);
    let mut best: Option<(u64, Vec<u8>)> = None;
    for code in 0..total {
        let ds = digits(code, b, open.len());
        let mut cost = offset;
        for (&v, &d) in open.iter().zip(&ds) {
            values[v] = d as u8;
            if d == q {
                cost += 1;
            }
        }
        for c in cons {
            let idx = c
                .scope
                .iter()
                .fold(0, |acc, &v| acc * b + values[v] as usize);
            cost += c.table[idx];
        }
        if best.as_ref().is_none_or(|(bc, _)| cost < *bc) {
            best = Some((cost, values.clone()));
        }
    }
    best.unwrap()
}

/// Sorts the scope of a constraint, permuting its table accordingly.
fn normalize(q: usize, c: &WildcardConstraint) -> WildcardConstraint {
    let mut scope = c.scope.clone();
    scope.sort_unstable();
    if scope == c.scope {
        return c.clone();
    }
    let b = q + 1;
    let k = scope.len();
    let src_pos: Vec<usize> = scope
        .iter()
        .map(|v| c.scope.iter().position(|w| w == v).unwrap())
        .collect();
    let mut table = vec![0; c.table.len()];
    for (idx, slot) in table.iter_mut().enumerate() {
        let ds = digits(idx, b, k);
        let mut src = vec![0; k];
        for (i, &d) in ds.iter().enumerate() {
            src[src_pos[i]] = d;
        }
        *slot = c.table[src.iter().fold(0, |acc, &d| acc * b + d)];
    }
    WildcardConstraint { scope, table }
}

/// Restricts a constraint to the variables still unset.
fn restrict(q: usize, c: &WildcardConstraint, values: &[u8]) -> WildcardConstraint {
    if c.scope.iter().all(|&v| values[v] == UNSET) {
        return c.clone();
    }
    let b = q + 1;
    let scope: Vec<usize> = c
        .scope
        .iter()
        .copied()
        .filter(|&v| values[v] == UNSET)
        .collect();
    let size = b.pow(scope.len() as u32);
    let mut table = Vec::with_capacity(size);
    for idx in 0..size {
        let ds = digits(idx, b, scope.len());
        let mut j = 0;
        let full = c.scope.iter().fold(0, |acc, &v| {
            let d = if values[v] == UNSET {
                j += 1;
                ds[j - 1]
            } else {
                values[v] as usize
            };
            acc * b + d
        });
        table.push(c.table[full]);
    }
    WildcardConstraint { scope, table }
}

/// Adds every constraint whose scope is contained in another's into the
/// larger one (sorted scopes assumed).
fn merge_contained(q: usize, cons: &mut Vec<WildcardConstraint>) {
    let b = q + 1;
    let mut i = 0;
    while i < cons.len() {
        let host = (0..cons.len()).find(|&j| {
            j != i
                && (cons[j].scope.len() > cons[i].scope.len()
                    || (cons[j].scope.len() == cons[i].scope.len() && j < i))
                && cons[i]
                    .scope
                    .iter()
                    .all(|v| cons[j].scope.binary_search(v).is_ok())
        });
        let Some(j) = host else {
            i += 1;
            continue;
        };
        let small = cons.remove(i);
        let j = if j > i { j - 1 } else { j };
        let big = &mut cons[j];
        let k = big.scope.len();
        let pos: Vec<usize> = small
            .scope
            .iter()
            .map(|v| big.scope.binary_search(v).unwrap())
            .collect();
        for idx in 0..big.table.len() {
            let ds = digits(idx, b, k);
            let sub = pos.iter().fold(0, |acc, &p| acc * b + ds[p]);
            big.table[idx] += small.table[sub];
        }
        i = 0;
    }
}

/// Parses the `wcsp <n> <q>` format: each constraint is `c <k> <v1..vk>`
/// (1-based variables) followed by `(q+1)^k` table values, which may span
/// lines.
pub fn parse_wcsp(text: &str) -> Result<WildcardCsp> {
    let mut tokens = text.lines().enumerate().flat_map(|(i, l)| {
        let l = if l.trim_start().starts_with('#') {
            ""
        } else {
            l
        };
        l.split_whitespace().map(move |t| (i + 1, t))
    });
    let (line, head) = tokens
        .next()
        .ok_or_else(|| Error::parse(1, "missing `wcsp` header"))?;
    if head != "wcsp" {
        return Err(Error::parse(line, "expected `wcsp <n> <q>`"));
    }
    let mut next_num = |what: &str| -> Result<(usize, usize)> {
        let (line, t) = tokens
            .next()
            .ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
        Ok((line, parse_num(t, line)?))
    };
    let (_, n) = next_num("variable count")?;
    let (line, q) = next_num("domain size")?;
    if !(1..=crate::lists::MAX_COLORS).contains(&q) {
        return Err(Error::parse(line, "domain size out of range"));
    }
    let mut constraints = Vec::new();
    drop(next_num);
    while let Some((line, t)) = tokens.next() {
        if t != "c" {
            return Err(Error::parse(line, "expected `c <k> <vars...>`"));
        }
        let mut num = || -> Result<usize> {
            let (l, t) = tokens
                .next()
                .ok_or_else(|| Error::parse(line, "truncated constraint"))?;
            parse_num(t, l)
        };
        let k = num()?;
        let mut scope = Vec::with_capacity(k);
        for _ in 0..k {
            let v = num()?;
            if v == 0 || v > n {
                return Err(Error::parse(line, "variable id out of range"));
            }
            scope.push(v - 1);
        }
        let size = (q + 1)
            .checked_pow(k as u32)
            .ok_or_else(|| Error::parse(line, "table too large"))?;
        let mut table = Vec::with_capacity(size);
        for _ in 0..size {
            table.push(num()? as u64);
        }
        constraints.push(WildcardConstraint { scope, table });
    }
    WildcardCsp::new(n, q, constraints).map_err(|e| Error::parse(0, e.to_string()))
}

pub fn write_wcsp(csp: &WildcardCsp) -> String {
    let mut out = format!("wcsp {} {}\n", csp.n, csp.q);
    for c in &csp.constraints {
        let vars: Vec<String> = c.scope.iter().map(|v| (v + 1).to_string()).collect();
        writeln!(out, "c {} {}", c.scope.len(), vars.join(" ")).unwrap();
        let vals: Vec<String> = c.table.iter().map(u64::to_string).collect();
        writeln!(out, "{}", vals.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unary(v: usize, table: Vec<u64>) -> WildcardConstraint {
        WildcardConstraint {
            scope: vec![v],
            table,
        }
    }

    #[test]
    fn property_examples() {
        let zero = WildcardCsp::new(
            2,
            2,
            vec![WildcardConstraint {
                scope: vec![0, 1],
                table: vec![0; 9],
            }],
        )
        .unwrap();
        assert!(check_wildcard_property(&zero));
        let bad = WildcardCsp::new(1, 1, vec![unary(0, vec![0, 1])]).unwrap();
        assert!(!check_wildcard_property(&bad));
        assert!(matches!(
            solve_wildcard(&bad),
            Err(Error::WildcardPropertyViolated { constraint: 0 })
        ));
    }

    #[test]
    fn wildcard_beats_expensive_value() {
        let csp = WildcardCsp::new(1, 1, vec![unary(0, vec![5, 0])]).unwrap();
        let (sol, _) = solve_wildcard(&csp).unwrap();
        assert_eq!(sol.values, vec![None]);
        assert_eq!(sol.cost, 1);
        assert_eq!(oracle_wildcard(&csp).unwrap(), sol);
    }

    #[test]
    fn no_constraints() {
        let csp = WildcardCsp::new(4, 3, vec![]).unwrap();
        let (sol, _) = solve_wildcard(&csp).unwrap();
        assert_eq!(sol.cost, 0);
        assert!(sol.values.iter().all(Option::is_some));
    }

    #[test]
    fn merge_and_restrict_preserve_costs() {
        let mut cons = vec![
            unary(1, vec![3, 1, 0]),
            WildcardConstraint {
                scope: vec![0, 1],
                table: (0..9).map(|i| 9 - i as u64).collect(),
            },
        ];
        let before: Vec<u64> = (0..9)
            .map(|i| cons[1].table[i] + cons[0].table[i % 3])
            .collect();
        merge_contained(2, &mut cons);
        assert_eq!(cons.len(), 1);
        assert_eq!(cons[0].table, before);
        let r = restrict(2, &cons[0], &[1, UNSET]);
        assert_eq!(r.scope, vec![1]);
        assert_eq!(r.table, before[3..6].to_vec());
    }

    #[test]
    fn format_round_trip() {
        let csp = WildcardCsp::new(
            3,
            1,
            vec![
                unary(2, vec![2, 1]),
                WildcardConstraint {
                    scope: vec![1, 0],
                    table: vec![4, 3, 2, 1],
                },
            ],
        )
        .unwrap();
        assert_eq!(parse_wcsp(&write_wcsp(&csp)).unwrap(), csp);
        assert!(parse_wcsp("wcsp 1 1\nc 1 2 0 0\n").is_err());
    }
}
