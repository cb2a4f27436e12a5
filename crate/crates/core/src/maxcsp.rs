//! Max-CSP (minimize violated constraints) and the derandomization toolkit:
//! SAT grouping, product covering families, domain restriction and
//! signature-structured splitting.

use crate::coloring::sat_pow;
use crate::error::{Error, Result};
use crate::graph::parse_num;
use std::fmt::Write as _;

/// Cap on `d^n` for [`oracle_maxcsp`].
pub const ORACLE_MAXCSP_CAP: u128 = 1 << 24;
/// Cap on the work `C(d',d)^m * d'^m` of one block cover.
pub const BLOCK_COVER_CAP: u128 = 20_000_000;
/// Cap on the relation size of one structured constraint.
pub const SPLIT_RELATION_CAP: u128 = 1 << 20;
/// Largest group size for [`group_sat`] (domain `2^p <= 256`).
pub const MAX_GROUP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxConstraint {
    pub scope: Vec<usize>,
    /// Allowed tuples, sorted and deduplicated.
    pub tuples: Vec<Vec<u8>>,
}

impl MaxConstraint {
    pub fn new(scope: Vec<usize>, mut tuples: Vec<Vec<u8>>) -> Self {
        tuples.sort();
        tuples.dedup();
        Self { scope, tuples }
    }

    pub fn satisfied(&self, assignment: &[u8]) -> bool {
        let t: Vec<u8> = self.scope.iter().map(|&v| assignment[v]).collect();
        self.tuples.binary_search(&t).is_ok()
    }
}

/// A Max-CSP over domain `0..d`. Variables flagged in `free` were introduced
/// by padding and carry no meaning for the original instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxCsp {
    n: usize,
    d: usize,
    constraints: Vec<MaxConstraint>,
    free: Vec<bool>,
}

impl MaxCsp {
    pub fn new(n: usize, d: usize, constraints: Vec<MaxConstraint>) -> Result<Self> {
        if d == 0 || d > 256 {
            return Err(Error::Invalid("domain size must be in 1..=256".into()));
        }
        for (i, c) in constraints.iter().enumerate() {
            if c.scope.iter().any(|&v| v >= n) {
                return Err(Error::Invalid(format!(
                    "constraint {i} mentions a variable outside 0..{n}"
                )));
            }
            if c.tuples
                .iter()
                .any(|t| t.len() != c.scope.len() || t.iter().any(|&x| x as usize >= d))
            {
                return Err(Error::Invalid(format!(
                    "constraint {i} has a malformed tuple"
                )));
            }
            if c.tuples.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Invalid(format!(
                    "constraint {i} tuples are not sorted and unique"
                )));
            }
        }
        Ok(Self {
            n,
            d,
            constraints,
            free: vec![false; n],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn constraints(&self) -> &[MaxConstraint] {
        &self.constraints
    }

    pub fn arity(&self) -> usize {
        self.constraints
            .iter()
            .map(|c| c.scope.len())
            .max()
            .unwrap_or(0)
    }

    /// Padding markers.
    pub fn free(&self) -> &[bool] {
        &self.free
    }

    /// Number of violated constraints.
    pub fn violations(&self, assignment: &[u8]) -> usize {
        self.constraints
            .iter()
            .filter(|c| !c.satisfied(assignment))
            .count()
    }

    /// Strips padding variables from an assignment.
    pub fn strip_free(&self, assignment: &[u8]) -> Vec<u8> {
        (0..self.n)
            .filter(|&v| !self.free[v])
            .map(|v| assignment[v])
            .collect()
    }
}

/// Exact minimum number of violations by enumeration; returns the
/// lexicographically least optimal assignment.
pub fn oracle_maxcsp(inst: &MaxCsp) -> Result<(Vec<u8>, usize)> {
    let total = sat_pow(inst.d as u128, inst.n);
    if total > ORACLE_MAXCSP_CAP {
        return Err(Error::too_large("assignments", total, ORACLE_MAXCSP_CAP));
    }
    let mut a = vec![0u8; inst.n];
    let mut best = (a.clone(), inst.violations(&a));
    for _ in 1..total {
        let mut i = inst.n;
        while i > 0 {
            i -= 1;
            if (a[i] as usize) + 1 < inst.d {
                a[i] += 1;
                break;
            }
            a[i] = 0;
        }
        let v = inst.violations(&a);
        if v < best.1 {
            best = (a.clone(), v);
        }
    }
    Ok(best)
}

/// A CNF formula; literals are nonzero `i32`s as in DIMACS (variable `|l|`,
/// negated if negative).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub n: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl Cnf {
    pub fn unsatisfied(&self, values: &[bool]) -> usize {
        self.clauses
            .iter()
            .filter(|c| {
                !c.iter()
                    .any(|&l| values[l.unsigned_abs() as usize - 1] == (l > 0))
            })
            .count()
    }
}

/// Minimum number of unsatisfied clauses by enumeration.
pub fn oracle_maxsat(cnf: &Cnf) -> Result<usize> {
    if cnf.n > 24 {
        return Err(Error::too_large("variables", cnf.n as u64, 24u64));
    }
    let mut best = usize::MAX;
    for mask in 0..1u32 << cnf.n {
        let values: Vec<bool> = (0..cnf.n).map(|i| mask >> i & 1 == 1).collect();
        best = best.min(cnf.unsatisfied(&values));
    }
    Ok(best)
}

/// Parses DIMACS CNF (`p cnf <n> <m>`, clauses terminated by `0`).
pub fn parse_cnf(text: &str) -> Result<Cnf> {
    let mut n = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('%') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('p') {
            let t: Vec<&str> = rest.split_whitespace().collect();
            if t.len() != 3 || t[0] != "cnf" {
                return Err(Error::parse(
                    line,
                    "malformed header, expected `p cnf <n> <m>`",
                ));
            }
            n = Some(parse_num::<usize>(t[1], line)?);
            parse_num::<usize>(t[2], line)?;
            continue;
        }
        let Some(nv) = n else {
            return Err(Error::parse(line, "clause before header"));
        };
        for tok in trimmed.split_whitespace() {
            let l: i32 = parse_num(tok, line)?;
            if l == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if l.unsigned_abs() as usize > nv {
                return Err(Error::parse(line, "variable id out of range"));
            } else {
                current.push(l);
            }
        }
    }
    let n = n.ok_or_else(|| Error::parse(0, "missing header"))?;
    if !current.is_empty() {
        clauses.push(current);
    }
    Ok(Cnf { n, clauses })
}

/// Groups the variables of a formula with clauses of at most three literals
/// into blocks of `p` (padding the last block) and turns each block into one
/// variable over `2^p` values: bit `j` of a value is the truth value of the
/// block's `j`-th variable. Each clause becomes a constraint on the blocks
/// it touches whose relation holds exactly the satisfying block valuations,
/// so violation counts are preserved exactly.
pub fn group_sat(cnf: &Cnf, p: usize) -> Result<MaxCsp> {
    if p == 0 || p > MAX_GROUP {
        return Err(Error::ParamsTooLarge(format!(
            "group size must be in 1..={MAX_GROUP}"
        )));
    }
    if let Some(i) = cnf.clauses.iter().position(|c| c.len() > 3) {
        return Err(Error::BadArity(format!(
            "clause {i} has more than three literals"
        )));
    }
    let blocks = cnf.n.div_ceil(p);
    let d = 1usize << p;
    let mut constraints = Vec::with_capacity(cnf.clauses.len());
    for clause in &cnf.clauses {
        let mut scope: Vec<usize> = clause
            .iter()
            .map(|&l| (l.unsigned_abs() as usize - 1) / p)
            .collect();
        scope.sort_unstable();
        scope.dedup();
        let k = scope.len();
        let mut tuples = Vec::new();
        for code in 0..d.pow(k as u32) {
            let mut tuple = vec![0u8; k];
            let mut rem = code;
            for slot in tuple.iter_mut().rev() {
                *slot = (rem % d) as u8;
                rem /= d;
            }
            let sat = clause.iter().any(|&l| {
                let var = l.unsigned_abs() as usize - 1;
                let pos = scope.binary_search(&(var / p)).unwrap();
                (tuple[pos] >> (var % p) & 1 == 1) == (l > 0)
            });
            if sat {
                tuples.push(tuple);
            }
        }
        constraints.push(MaxConstraint::new(scope, tuples));
    }
    let mut inst = MaxCsp::new(blocks, d, constraints)?;
    // A block made only of padding variables carries no meaning.
    for b in 0..blocks {
        inst.free[b] = b * p >= cnf.n;
    }
    Ok(inst)
}

/// A family of products `D_1 x ... x D_n` with `D_i` a `d`-subset of `[d']`
/// (stored as bitmasks).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductCover {
    pub d_prime: usize,
    pub d: usize,
    pub n: usize,
    pub members: Vec<Vec<u32>>,
}

impl ProductCover {
    /// Whether every tuple of `[d']^n` lies in some member (exhaustive).
    pub fn covers_everything(&self) -> bool {
        let total = self.d_prime.pow(self.n as u32);
        (0..total).all(|code| {
            let mut rem = code;
            let mut t = vec![0usize; self.n];
            for slot in t.iter_mut().rev() {
                *slot = rem % self.d_prime;
                rem /= self.d_prime;
            }
            self.members
                .iter()
                .any(|m| t.iter().zip(m).all(|(&x, &mask)| mask >> x & 1 == 1))
        })
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn subsets_of_size(n: usize, k: usize) -> Vec<u32> {
    (0..1u32 << n)
        .filter(|m| m.count_ones() as usize == k)
        .collect()
}

/// Covers `[d']^n` by products of `d`-subsets: a cover of one block of `m`
/// coordinates is found over all `C(d',d)^m` candidate products (greedy set
/// cover, or a minimum cover by exhaustive search when `exact`), and the
/// family is its `ceil(n/m)`-fold product, truncated on the last block.
pub fn covering_family(
    d_prime: usize,
    d: usize,
    n: usize,
    m: usize,
    exact: bool,
) -> Result<ProductCover> {
    if !(1..=d_prime).contains(&d) || d_prime > 16 {
        return Err(Error::Invalid("need 1 <= d <= d' <= 16".into()));
    }
    if m == 0 {
        return Err(Error::Invalid("block size must be positive".into()));
    }
    let work = sat_pow(binomial(d_prime, d), m).saturating_mul(sat_pow(d_prime as u128, m));
    if work > BLOCK_COVER_CAP {
        return Err(Error::BlockTooLarge {
            work,
            cap: BLOCK_COVER_CAP,
        });
    }
    let block = if exact {
        exact_block_cover(d_prime, d, m)
    } else {
        greedy_block_cover(d_prime, d, m)
    };
    let mut members: Vec<Vec<u32>> = vec![Vec::new()];
    let mut left = n;
    while left > 0 {
        let take = left.min(m);
        let mut part: Vec<Vec<u32>> = block.iter().map(|b| b[..take].to_vec()).collect();
        part.sort();
        part.dedup();
        if take < m {
            // Drop members made redundant by the truncation.
            part = minimal_cover_subset(d_prime, take, part);
        }
        members = members
            .iter()
            .flat_map(|pre| {
                part.iter()
                    .map(move |p| pre.iter().chain(p).copied().collect())
            })
            .collect();
        left -= take;
    }
    Ok(ProductCover {
        d_prime,
        d,
        n,
        members,
    })
}

/// All tuples of `[d']^m` as index lists, and for each candidate the set of
/// tuples it covers.
fn block_candidates(d_prime: usize, d: usize, m: usize) -> (Vec<Vec<u32>>, Vec<Vec<usize>>) {
    let subsets = subsets_of_size(d_prime, d);
    let total = d_prime.pow(m as u32);
    let mut candidates = vec![Vec::new()];
    for _ in 0..m {
        candidates = candidates
            .iter()
            .flat_map(|pre: &Vec<u32>| {
                subsets
                    .iter()
                    .map(move |&s| pre.iter().copied().chain([s]).collect())
            })
            .collect();
    }
    let covered = candidates
        .iter()
        .map(|c: &Vec<u32>| {
            (0..total)
                .filter(|&code| {
                    let mut rem = code;
                    (0..m).rev().all(|i| {
                        let x = rem % d_prime;
                        rem /= d_prime;
                        c[i] >> x & 1 == 1
                    })
                })
                .collect()
        })
        .collect();
    (candidates, covered)
}

fn greedy_block_cover(d_prime: usize, d: usize, m: usize) -> Vec<Vec<u32>> {
    let (candidates, covered) = block_candidates(d_prime, d, m);
    let mut uncovered = vec![true; d_prime.pow(m as u32)];
    let mut left = uncovered.len();
    let mut out = Vec::new();
    while left > 0 {
        let gain = |i: usize| covered[i].iter().filter(|&&t| uncovered[t]).count();
        let best = (0..candidates.len())
            .max_by_key(|&i| (gain(i), std::cmp::Reverse(i)))
            .unwrap();
        for &t in &covered[best] {
            if std::mem::replace(&mut uncovered[t], false) {
                left -= 1;
            }
        }
        out.push(candidates[best].clone());
    }
    out
}

fn exact_block_cover(d_prime: usize, d: usize, m: usize) -> Vec<Vec<u32>> {
    let greedy = greedy_block_cover(d_prime, d, m);
    let (candidates, covered) = block_candidates(d_prime, d, m);
    let total = d_prime.pow(m as u32);
    // Iterative deepening below the greedy size.
    for size in 1..greedy.len() {
        let mut count = vec![0usize; total];
        let mut chosen = Vec::new();
        if exact_search(&covered, size, 0, &mut count, &mut chosen) {
            return chosen.into_iter().map(|i| candidates[i].clone()).collect();
        }
    }
    greedy
}

fn exact_search(
    covered: &[Vec<usize>],
    size: usize,
    start: usize,
    count: &mut [usize],
    chosen: &mut Vec<usize>,
) -> bool {
    let Some(first_uncovered) = count.iter().position(|&c| c == 0) else {
        return true;
    };
    if chosen.len() == size {
        return false;
    }
    // Some chosen candidate must cover the first uncovered tuple.
    for i in start..covered.len() {
        if covered[i].binary_search(&first_uncovered).is_err() {
            continue;
        }
        for &t in &covered[i] {
            count[t] += 1;
        }
        chosen.push(i);
        if exact_search(covered, size, 0, count, chosen) {
            return true;
        }
        chosen.pop();
        for &t in &covered[i] {
            count[t] -= 1;
        }
    }
    false
}

/// Greedily removes members whose products are covered by the others.
fn minimal_cover_subset(d_prime: usize, k: usize, mut part: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let covers = |fam: &[Vec<u32>]| {
        ProductCover {
            d_prime,
            d: 0,
            n: k,
            members: fam.to_vec(),
        }
        .covers_everything()
    };
    let mut i = part.len();
    while i > 0 {
        i -= 1;
        let removed = part.remove(i);
        if !covers(&part) {
            part.insert(i, removed);
        }
    }
    part
}

/// Restricts every variable `i` to the colors of `member[i]` (a bitmask over
/// `[d']`), relabelled to `0..d` in increasing order. Relations keep only the
/// tuples inside the product; an emptied relation is always violated.
pub fn restrict_domains(inst: &MaxCsp, member: &[u32]) -> Result<MaxCsp> {
    if member.len() != inst.n {
        return Err(Error::Invalid(
            "member length differs from the variable count".into(),
        ));
    }
    let d = member.first().map_or(inst.d, |m| m.count_ones() as usize);
    if member
        .iter()
        .any(|&m| m.count_ones() as usize != d || (inst.d < 32 && m >> inst.d != 0))
    {
        return Err(Error::Invalid(
            "every member coordinate must be a d-subset of the domain".into(),
        ));
    }
    let rank = |v: usize, x: u8| -> Option<u8> {
        (member[v] >> x & 1 == 1).then(|| (member[v] & ((1u32 << x) - 1)).count_ones() as u8)
    };
    let constraints = inst
        .constraints
        .iter()
        .map(|c| {
            let tuples = c
                .tuples
                .iter()
                .filter_map(|t| {
                    c.scope
                        .iter()
                        .zip(t)
                        .map(|(&v, &x)| rank(v, x))
                        .collect::<Option<Vec<u8>>>()
                })
                .collect();
            MaxConstraint::new(c.scope.clone(), tuples)
        })
        .collect();
    let mut out = MaxCsp::new(inst.n, d.max(1), constraints)?;
    out.free = inst.free.clone();
    Ok(out)
}

/// Maps an assignment of a restricted instance back to the original domain.
pub fn lift_assignment(member: &[u32], assignment: &[u8]) -> Vec<u8> {
    member
        .iter()
        .zip(assignment)
        .map(|(&mask, &j)| crate::lists::colors_of(mask)[j as usize])
        .collect()
}

/// Signature-structured splitting. Variables are padded to a multiple of `b`
/// and cut into blocks of `b`; for every signature `f` in `{0..b}^(n/b)` an
/// instance is emitted in which block `i` has exactly `f_i` variables set to
/// the largest value `d-1` (one constraint per block), and every original
/// constraint is widened to the blocks it touches with the same count
/// requirement. The original instance is satisfiable iff some emitted
/// instance is.
pub fn structured_split(inst: &MaxCsp, b: usize) -> Result<StructuredSplit<'_>> {
    if b == 0 {
        return Err(Error::Invalid("block size must be positive".into()));
    }
    let padded = inst.n.div_ceil(b) * b;
    let widest = inst
        .constraints
        .iter()
        .map(|c| {
            let mut blocks: Vec<usize> = c.scope.iter().map(|&v| v / b).collect();
            blocks.sort_unstable();
            blocks.dedup();
            blocks.len() * b
        })
        .max()
        .unwrap_or(0)
        .max(b);
    let size = sat_pow(inst.d as u128, widest);
    if size > SPLIT_RELATION_CAP {
        return Err(Error::too_large(
            "structured relation",
            size,
            SPLIT_RELATION_CAP,
        ));
    }
    Ok(StructuredSplit {
        inst,
        b,
        padded,
        signature: Some(vec![0; padded / b]),
    })
}

/// Lazy iterator over the structured instances, signatures in
/// lexicographic order.
pub struct StructuredSplit<'a> {
    inst: &'a MaxCsp,
    b: usize,
    padded: usize,
    signature: Option<Vec<usize>>,
}

impl StructuredSplit<'_> {
    /// Number of instances the iterator yields in total.
    pub fn count_total(&self) -> u128 {
        sat_pow(self.b as u128 + 1, self.padded / self.b)
    }

    fn build(&self, f: &[usize]) -> MaxCsp {
        let (inst, b) = (self.inst, self.b);
        let top = (inst.d - 1) as u8;
        let d = inst.d;
        let enumerate = |vars: &[usize], keep: &dyn Fn(&[u8]) -> bool| -> Vec<Vec<u8>> {
            let k = vars.len();
            let mut out = Vec::new();
            let mut t = vec![0u8; k];
            loop {
                if keep(&t) {
                    out.push(t.clone());
                }
                let mut i = k;
                loop {
                    if i == 0 {
                        return out;
                    }
                    i -= 1;
                    if (t[i] as usize) + 1 < d {
                        t[i] += 1;
                        break;
                    }
                    t[i] = 0;
                }
            }
        };
        let block_ok = |vars: &[usize], t: &[u8]| {
            vars.chunks(b)
                .zip(t.chunks(b))
                .all(|(vs, ts)| ts.iter().filter(|&&x| x == top).count() == f[vs[0] / b])
        };
        let mut constraints = Vec::new();
        for (i, _) in f.iter().enumerate() {
            let vars: Vec<usize> = (i * b..(i + 1) * b).collect();
            let tuples = enumerate(&vars, &|t| block_ok(&vars, t));
            constraints.push(MaxConstraint::new(vars, tuples));
        }
        for c in &inst.constraints {
            let mut blocks: Vec<usize> = c.scope.iter().map(|&v| v / b).collect();
            blocks.sort_unstable();
            blocks.dedup();
            let vars: Vec<usize> = blocks.iter().flat_map(|&k| k * b..(k + 1) * b).collect();
            let pos: Vec<usize> = c
                .scope
                .iter()
                .map(|v| vars.binary_search(v).unwrap())
                .collect();
            let tuples = enumerate(&vars, &|t| {
                let proj: Vec<u8> = pos.iter().map(|&p| t[p]).collect();
                c.tuples.binary_search(&proj).is_ok() && block_ok(&vars, t)
            });
            constraints.push(MaxConstraint::new(vars, tuples));
        }
        let mut out =
            MaxCsp::new(self.padded, d, constraints).expect("structured instance is valid");
        for v in 0..self.padded {
            out.free[v] = v >= inst.n || inst.free[v];
        }
        out
    }
}

impl Iterator for StructuredSplit<'_> {
    type Item = MaxCsp;

    fn next(&mut self) -> Option<MaxCsp> {
        let f = self.signature.take()?;
        let out = self.build(&f);
        let mut next = f;
        let mut i = next.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            next[i] += 1;
            if next[i] <= self.b {
                self.signature = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    }
}

/// Parses `maxcsp <n> <d>`, optional `free <vars>`, and constraints
/// `c <k> <v1..vk> <t>` each followed by `t` tuple lines (all 1-based).
pub fn parse_maxcsp(text: &str) -> Result<MaxCsp> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line, head) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing `maxcsp` header"))?;
    let h: Vec<&str> = head.split_whitespace().collect();
    if h.len() != 3 || h[0] != "maxcsp" {
        return Err(Error::parse(
            line,
            "malformed header, expected `maxcsp <n> <d>`",
        ));
    }
    let n: usize = parse_num(h[1], line)?;
    let d: usize = parse_num(h[2], line)?;
    if d == 0 || d > 256 {
        return Err(Error::parse(line, "domain size out of range"));
    }
    let mut free = vec![false; n];
    let mut constraints = Vec::new();
    while let Some((line, l)) = lines.next() {
        let t: Vec<&str> = l.split_whitespace().collect();
        match t[0] {
            "free" => {
                for tok in &t[1..] {
                    let v: usize = parse_num(tok, line)?;
                    if v == 0 || v > n {
                        return Err(Error::parse(line, "variable id out of range"));
                    }
                    free[v - 1] = true;
                }
            }
            "c" => {
                let k: usize = parse_num(t.get(1).copied().unwrap_or(""), line)?;
                if t.len() != k + 3 {
                    return Err(Error::parse(line, "expected `c <k> <vars...> <t>`"));
                }
                let mut scope = Vec::with_capacity(k);
                for tok in &t[2..2 + k] {
                    let v: usize = parse_num(tok, line)?;
                    if v == 0 || v > n {
                        return Err(Error::parse(line, "variable id out of range"));
                    }
                    scope.push(v - 1);
                }
                let count: usize = parse_num(t[k + 2], line)?;
                let mut tuples = Vec::with_capacity(count);
                for _ in 0..count {
                    let (tl, tup) = lines
                        .next()
                        .ok_or_else(|| Error::parse(line, "missing tuple lines"))?;
                    let mut tuple = Vec::with_capacity(k);
                    for tok in tup.split_whitespace() {
                        let x: usize = parse_num(tok, tl)?;
                        if x == 0 || x > d {
                            return Err(Error::parse(tl, "value out of range"));
                        }
                        tuple.push((x - 1) as u8);
                    }
                    if tuple.len() != k {
                        return Err(Error::parse(tl, "tuple length differs from arity"));
                    }
                    tuples.push(tuple);
                }
                constraints.push(MaxConstraint::new(scope, tuples));
            }
            other => return Err(Error::parse(line, format!("unknown line type `{other}`"))),
        }
    }
    let mut inst = MaxCsp::new(n, d, constraints)?;
    inst.free = free;
    Ok(inst)
}

pub fn write_maxcsp(inst: &MaxCsp) -> String {
    let mut out = format!("maxcsp {} {}\n", inst.n, inst.d);
    let free: Vec<String> = (0..inst.n)
        .filter(|&v| inst.free[v])
        .map(|v| (v + 1).to_string())
        .collect();
    if !free.is_empty() {
        writeln!(out, "free {}", free.join(" ")).unwrap();
    }
    for c in &inst.constraints {
        let vars: Vec<String> = c.scope.iter().map(|v| (v + 1).to_string()).collect();
        writeln!(
            out,
            "c {} {} {}",
            c.scope.len(),
            vars.join(" "),
            c.tuples.len()
        )
        .unwrap();
        for t in &c.tuples {
            let vals: Vec<String> = t.iter().map(|x| (x + 1).to_string()).collect();
            writeln!(out, "{}", vals.join(" ")).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contradictory_unaries() {
        let inst = MaxCsp::new(
            1,
            2,
            vec![
                MaxConstraint::new(vec![0], vec![vec![0]]),
                MaxConstraint::new(vec![0], vec![vec![1]]),
            ],
        )
        .unwrap();
        assert_eq!(oracle_maxcsp(&inst).unwrap().1, 1);
    }

    #[test]
    fn grouping_example() {
        let cnf = Cnf {
            n: 2,
            clauses: vec![vec![1, -2]],
        };
        let g = group_sat(&cnf, 2).unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.d(), 4);
        assert_eq!(g.constraints()[0].tuples.len(), 3);
        let empty = group_sat(
            &Cnf {
                n: 0,
                clauses: vec![],
            },
            2,
        )
        .unwrap();
        assert_eq!(oracle_maxcsp(&empty).unwrap().1, 0);
    }

    #[test]
    fn small_covers() {
        let c = covering_family(2, 1, 1, 1, false).unwrap();
        assert_eq!(c.members, vec![vec![0b01], vec![0b10]]);
        let c = covering_family(4, 3, 1, 1, false).unwrap();
        assert_eq!(c.members.len(), 2);
        assert!(c.covers_everything());
        let c = covering_family(3, 2, 4, 2, false).unwrap();
        assert!(c.covers_everything());
        assert!((c.members.len() as f64) <= 2.5f64.powi(4));
        assert!(matches!(
            covering_family(4, 2, 4, 8, false),
            Err(Error::BlockTooLarge { .. })
        ));
    }

    #[test]
    fn split_counts() {
        let inst = MaxCsp::new(2, 2, vec![]).unwrap();
        assert_eq!(structured_split(&inst, 2).unwrap().count(), 3);
    }

    #[test]
    fn format_round_trip() {
        let mut inst = MaxCsp::new(
            3,
            3,
            vec![MaxConstraint::new(vec![2, 0], vec![vec![0, 2], vec![1, 1]])],
        )
        .unwrap();
        inst.free[1] = true;
        assert_eq!(parse_maxcsp(&write_maxcsp(&inst)).unwrap(), inst);
        let cnf = parse_cnf("c hi\np cnf 3 2\n1 -2 0\n3 0\n").unwrap();
        assert_eq!(cnf.clauses, vec![vec![1, -2], vec![3]]);
    }
}
