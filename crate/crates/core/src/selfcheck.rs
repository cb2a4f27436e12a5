//! The property suite behind `hubsolve selfcheck`: ten seeded checks, each
//! comparing solvers, reductions and gadgets against brute-force oracles.
//!
//! Every check is deterministic in `(level, seed)`. Exhaustive corpora do not
//! depend on the seed; random corpora draw from it.

use crate::coloring::*;
use crate::domset::*;
use crate::gadget::*;
use crate::gen::{covering_family_classes, random_family, random_hubbed_graph, random_lists};
use crate::gen::{random_maxcsp, random_wildcard_csp, rng, GenRng};
use crate::graph::Graph;
use crate::lists::ListAssignment;
use crate::maxcsp::{covering_family, lift_assignment, oracle_maxcsp, restrict_domains, MaxCsp};
use crate::minsum::{MinSum, DEFAULT_TABLE_CAP};
use crate::setsys::audit::{applicable, check_reduction, questions};
use crate::setsys::*;
use crate::triangle::*;
use crate::wildcard::*;
use rand::Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

/// How much of each corpus to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    /// Small corpora for a fast smoke test.
    Quick,
    /// The full corpora.
    Full,
}

impl std::str::FromStr for Level {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> crate::error::Result<Self> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            _ => Err(crate::error::Error::Invalid(format!(
                "unknown level `{s}` (expected quick or full)"
            ))),
        }
    }
}

/// Outcome of one numbered check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    /// Counts on success, the first discrepancy on failure.
    pub detail: String,
    pub elapsed: Duration,
    /// Runtime budget at the full level, if the check has one.
    pub budget: Option<Duration>,
}

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !($cond) {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: crate::error::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Names and budgets of the checks, in order.
pub const CHECKS: [(&str, Option<u64>); 10] = [
    ("coloring-oracles", Some(120)),
    ("leaf-bounds", None),
    ("wildcard", None),
    ("gadgets", Some(60)),
    ("maxcut", None),
    ("setsys-web", Some(300)),
    ("covering-family", None),
    ("triangle-equality", None),
    ("triangle-pipeline", Some(300)),
    ("domset", None),
];

/// Runs check `id` (1-based). Panics inside a check count as failures.
pub fn run_check(id: usize, level: Level, seed: u64) -> CheckResult {
    let (name, budget) = CHECKS[id - 1];
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| match id {
        1 => coloring_oracles(level, seed),
        2 => leaf_bounds(level, seed),
        3 => wildcard(level, seed),
        4 => gadgets(level, seed),
        5 => maxcut(level, seed),
        6 => setsys_web(level, seed),
        7 => covering(level, seed),
        8 => triangle_equality(),
        9 => triangle_pipeline(level, seed),
        10 => domset(level, seed),
        _ => Err(format!("no check {id}")),
    }));
    let elapsed = start.elapsed();
    let budget = budget.map(Duration::from_secs);
    let (mut passed, mut detail) = match outcome {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            (false, format!("panicked: {msg}"))
        }
    };
    if let Some(b) = budget.filter(|_| level == Level::Full) {
        if passed && elapsed > b {
            passed = false;
            detail = format!("over the {}s budget", b.as_secs());
        }
    }
    CheckResult {
        id,
        name,
        passed,
        detail,
        elapsed,
        budget,
    }
}

/// Runs all checks in order.
pub fn selfcheck(level: Level, seed: u64) -> Vec<CheckResult> {
    (1..=CHECKS.len())
        .map(|id| run_check(id, level, seed))
        .collect()
}

fn scaled(level: Level, full: usize, quick: usize) -> usize {
    match level {
        Level::Full => full,
        Level::Quick => quick,
    }
}

/// The coloring corpus: graphs with `n <= 9` and a valid hub, plus random
/// lists for every `q` in `1..=3`.
fn coloring_corpus(
    level: Level,
    seed: u64,
) -> impl Iterator<Item = (Graph, crate::hub::HubDecomposition, [ListAssignment; 3])> {
    let count = scaled(level, 500, 60);
    let mut r = rng(seed, 1);
    (0..count).map(move |i| {
        let n = 1 + i % 9;
        let sigma = r.gen_range(1..=3);
        let delta = r.gen_range(1..=3);
        let (g, h) = random_hubbed_graph(&mut r, n, sigma, delta);
        let lists = [1, 2, 3].map(|q| random_lists(&mut r, n, q, 0.05));
        (g, h, lists)
    })
}

fn coloring_oracles(level: Level, seed: u64) -> Check {
    let mut graphs = 0;
    for (g, h, lists) in coloring_corpus(level, seed) {
        graphs += 1;
        for q in [2, 3] {
            let (sol, _) = solve_coloring(&g, &h, q);
            let want = ok(oracle_coloring(&g, q))?.is_some();
            ensure!(sol.is_some() == want, "q-coloring q={q} on {g:?}");
            if let Some(s) = sol {
                s.verify(&g, q, None)?;
            }
            let want = ok(oracle_ed(&g, q))?.cost;
            let (s, _) = ok(solve_coloring_ed(&g, &h, q))?;
            ensure!(s.cost == want, "edge deletion q={q} on {g:?}");
            s.verify(&g, q, None)?;
        }
        let la = &lists[2];
        let (sol, _) = solve_list_coloring(&g, la, &h);
        let want = ok(oracle_list_coloring(&g, la))?.is_some();
        ensure!(sol.is_some() == want, "list coloring on {g:?} {la:?}");
        if let Some(s) = sol {
            s.verify(&g, 3, Some(la))?;
        }
        for (q, la) in (1..=3).zip(&lists) {
            let full = ListAssignment::full(g.n(), q);
            for lists in [&full, la] {
                let want = ok(oracle_vd(&g, lists))?.cost;
                let (a, _) = solve_coloring_vd(&g, lists, &h);
                let (b, _) = ok(solve_coloring_vd_fast(&g, lists, &h))?;
                ensure!(
                    a.cost == want && b.cost == want,
                    "vertex deletion q={q} on {g:?} {lists:?}"
                );
                a.verify(&g, q, Some(lists))?;
                b.verify(&g, q, Some(lists))?;
            }
        }
    }
    Ok(format!("graphs={graphs} variants=8"))
}

fn leaf_bounds(level: Level, seed: u64) -> Check {
    let mut checked = 0;
    for (g, h, lists) in coloring_corpus(level, seed) {
        for q in [2, 3] {
            let full = ListAssignment::full(g.n(), q);
            let (_, st) = solve_list_coloring(&g, &full, &h);
            ensure!(u128::from(st.leaves) <= st.bound, "list leaves {st:?}");
        }
        let (_, st) = solve_list_coloring(&g, &lists[2], &h);
        ensure!(u128::from(st.leaves) <= st.bound, "list leaves {st:?}");
        for (q, la) in (1..=3).zip(&lists) {
            let mut la = la.clone();
            for &v in h.hub() {
                if la.mask(v) == 0 {
                    la.set(v, 1);
                }
            }
            let csp = ok(vd_to_wildcard_csp(&g, &la, &h))?;
            let (_, st) = ok(solve_wildcard(&csp))?;
            let bound = wildcard_leaf_bound(q, csp.n(), csp.arity().max(1));
            ensure!(
                u128::from(st.leaves) <= bound,
                "wildcard leaves {} over {bound}",
                st.leaves
            );
            let (_, st) = ok(solve_coloring_vd_fast(&g, &la, &h))?;
            ensure!(u128::from(st.leaves) <= st.bound, "vd leaves {st:?}");
        }
        checked += 1;
    }
    Ok(format!("graphs={checked}"))
}

fn wildcard(level: Level, seed: u64) -> Check {
    let count = scaled(level, 300, 40);
    let mut r = rng(seed, 3);
    for _ in 0..count {
        let n = r.gen_range(1..=8);
        let q = r.gen_range(1..=3);
        let k = r.gen_range(1..=3);
        let m = r.gen_range(0..=6);
        let csp = random_wildcard_csp(&mut r, n, q, k, m, 4);
        ensure!(check_wildcard_property(&csp), "generator broke monotonicity");
        let (sol, _) = ok(solve_wildcard(&csp))?;
        let want = ok(oracle_wildcard(&csp))?;
        ensure!(sol.cost == want.cost, "wildcard optimum on {csp:?}");
        ensure!(csp.total_cost(&sol.values) == sol.cost, "wildcard witness");
        let reduced = ok(reduce_wildcard(&csp))?;
        ensure!(check_wildcard_property(&reduced), "reduction broke monotonicity");
        ensure!(
            ok(oracle_wildcard(&reduced))?.cost == want.cost,
            "reduction rules changed the optimum of {csp:?}"
        );
    }
    Ok(format!("instances={count}"))
}

fn relation_from_mask(r: usize, mask: u32) -> crate::error::Result<Relation> {
    let tuples = all_tuples(2, r)
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, t)| t);
    Relation::new(2, r, tuples)
}

fn check_realizers(rel: &Relation) -> Check {
    let plain = ok(build_relation(rel))?;
    ensure!(plain.portals_independent(), "portals of {rel:?}");
    ensure!(
        ok(verify_realization(&plain, rel))?.realizes,
        "build_relation does not realize {rel:?}"
    );
    let one = ok(build_one_realizer(rel, 1))?;
    ensure!(one.portals_independent(), "portals of {rel:?}");
    ensure!(
        ok(verify_realization(&one, rel))?.omega_realizes(1),
        "build_one_realizer does not 1-realize {rel:?}"
    );
    Ok(String::new())
}

fn gadgets(level: Level, seed: u64) -> Check {
    let or2 = build_or2();
    for (d, c) in [([0u8, 0], 1), ([0, 1], 1), ([1, 0], 1), ([1, 1], 3)] {
        ensure!(ok(cost_ed(&or2, &d))? == Some(c), "OR2 cost of {d:?}");
    }
    let mut count = 0;
    for r in 1..=2 {
        for mask in 0..1u32 << (1 << r) {
            check_realizers(&ok(relation_from_mask(r, mask))?)?;
            count += 1;
        }
    }
    let samples = scaled(level, 50, 5);
    let mut rg = rng(seed, 4);
    for _ in 0..samples {
        let mask = match level {
            Level::Full => rg.gen_range(0..256),
            // At most four excluded tuples keeps the realizers small.
            Level::Quick => loop {
                let m: u32 = rg.gen_range(0..256);
                if m.count_ones() >= 4 {
                    break m;
                }
            },
        };
        check_realizers(&ok(relation_from_mask(3, mask))?)?;
    }
    Ok(format!("relations={count} ternary={samples}"))
}

/// Decides the Max Cut question of `build_maxcut_instance` exactly and
/// compares it with the Max-CSP optimum.
pub fn check_maxcut_synthesis(inst: &MaxCsp, opts: Synthesis) -> Check {
    let (_, opt) = ok(oracle_maxcsp(inst))?;
    let list = ok(build_list_instance(inst, opts.realizer))?;
    let mut ms = MinSum::new(list.graph.n(), 2);
    for v in 0..list.graph.n() {
        ms.restrict(v, list.lists.mask(v));
    }
    for &(u, v) in list.graph.edges() {
        ms.add_conflict(u, v);
    }
    let list_opt = ok(ms.solve(&[], DEFAULT_TABLE_CAP))?[0];
    // Constraints without variables are violated outright and have no gadget.
    ensure!(
        list_opt + list.constant_violations as u64 == list.alpha_total() + opt as u64,
        "list instance optimum {list_opt} vs alpha {} + {opt}",
        list.alpha_total()
    );
    for z in [opt.saturating_sub(1), opt, opt + 1] {
        let mc = ok(build_maxcut_instance(inst, z as u64, opts))?;
        ensure!(mc.hub.in_hub(mc.apex), "apex outside the hub");
        let cut = mc.graph.m() - ok(min_edge_deletion(&mc.graph, 2))?.cost;
        ensure!(
            (cut as u64 >= mc.threshold) == (opt <= z),
            "z={z} opt={opt} cut={cut} threshold={} on {inst:?}",
            mc.threshold
        );
    }
    Ok(String::new())
}

fn maxcut(level: Level, seed: u64) -> Check {
    let count = scaled(level, 200, 20);
    let mut r = rng(seed, 5);
    for _ in 0..count {
        let n = r.gen_range(1..=6);
        let m = r.gen_range(0..=5);
        let arity = r.gen_range(1..=3);
        let inst = random_maxcsp(&mut r, n, 2, arity, m, 0.5);
        check_maxcut_synthesis(&inst, Synthesis::default())?;
    }
    Ok(format!("instances={count}"))
}

fn check_family(n: usize, fam: &[u128], max_join_d: usize) -> std::result::Result<usize, String> {
    let mut runs = 0;
    for q in ok(questions(n, fam))? {
        for (red, param) in applicable(&q, max_join_d) {
            let c = ok(check_reduction(&red, &q, param))?;
            ensure!(
                c.agrees(),
                "{} (param {param}) on {q:?}: {c:?}",
                red.name
            );
            runs += 1;
        }
    }
    Ok(runs)
}

fn setsys_web(level: Level, seed: u64) -> Check {
    let (max_n, max_sets, random) = match level {
        Level::Full => (5, 6, 500),
        Level::Quick => (4, 4, 40),
    };
    let mut runs = 0;
    let mut classes = 0;
    for n in 0..=max_n {
        for fam in covering_family_classes(n, max_sets) {
            runs += check_family(n, &fam, 3)?;
            classes += 1;
        }
    }
    let mut r = rng(seed, 6);
    for _ in 0..random {
        let n = r.gen_range(1..=8);
        let m = r.gen_range(1..=8);
        let d = r.gen_range(1..=3);
        let fam = random_family(&mut r, n, m, d);
        runs += check_family(n, &fam, 3)?;
    }
    let joins = join_identities(&mut r, scaled(level, 200, 20))?;
    Ok(format!(
        "classes={classes} random={random} reductions={runs} joins={joins}"
    ))
}

fn join_identities(r: &mut GenRng, count: usize) -> std::result::Result<usize, String> {
    let mut joins = 0;
    for _ in 0..count {
        let n = r.gen_range(1..=7);
        let m = r.gen_range(1..=7);
        let d = r.gen_range(1..=3);
        let c = r.gen_range(1..=2);
        let fam = random_family(r, n, m, d);
        let sys = ok(SetSystem::new(n, fam, Variant::PartitionLe, d, None))?;
        let fact: usize = (1..=d).product();
        for sig in signatures(&sys) {
            let j = ok(build_join_instance(&sys, c, &sig))?;
            ensure!(j.set_size == c * fact + 1, "join set size {}", j.set_size);
            ensure!(
                j.sets
                    .iter()
                    .all(|s| s.count_ones() as usize == j.set_size),
                "join sets are not uniform"
            );
            let alpha: usize = sig
                .counts
                .iter()
                .enumerate()
                .map(|(i, &k)| k.div_ceil(c * fact / (i + 1)))
                .sum();
            ensure!(j.alpha == alpha, "join guard count {} vs {alpha}", j.alpha);
            joins += 1;
        }
    }
    Ok(joins)
}

fn covering(level: Level, seed: u64) -> Check {
    let mut families = 0;
    for d_prime in 2..=4 {
        for d in 1..d_prime {
            for n in 1..=6 {
                for block in 1..=3 {
                    let c = match covering_family(d_prime, d, n, block, false) {
                        Ok(c) => c,
                        Err(e) if e.is_cap() => continue,
                        Err(e) => return Err(e.to_string()),
                    };
                    ensure!(
                        c.covers_everything(),
                        "d'={d_prime} d={d} n={n} block={block}"
                    );
                    let bound = (d_prime as f64 / d as f64 + 1.0).powi(n as i32);
                    ensure!(
                        c.members.len() as f64 <= bound,
                        "d'={d_prime} d={d} n={n} block={block}: {} members",
                        c.members.len()
                    );
                    families += 1;
                }
            }
        }
    }
    let count = scaled(level, 100, 20);
    let mut r = rng(seed, 7);
    for i in 0..count {
        let n = 1 + i % 5;
        let m = r.gen_range(0..=6);
        let arity = r.gen_range(1..=2);
        let inst = random_maxcsp(&mut r, n, 3, arity, m, 0.4);
        let fam = ok(covering_family(3, 2, n, 1, false))?;
        let mut best = usize::MAX;
        for member in &fam.members {
            let sub = ok(restrict_domains(&inst, member))?;
            let (a, v) = ok(oracle_maxcsp(&sub))?;
            ensure!(
                inst.violations(&lift_assignment(member, &a)) == v,
                "lifted assignment cost"
            );
            best = best.min(v);
        }
        let want = ok(oracle_maxcsp(&inst))?.1;
        ensure!(best == want, "restriction optimum {best} vs {want}");
    }
    Ok(format!("families={families} restrictions={count}"))
}

fn triangle_equality() -> Check {
    for r in [3, 6] {
        let gadget = ok(build_trieq(r))?;
        let inner: Vec<usize> = (0..gadget.graph.n())
            .filter(|v| !gadget.portals.contains(v))
            .collect();
        let mut shapes: Vec<(usize, usize)> = maximal_packings_covering(&gadget.graph, &inner)
            .iter()
            .map(|pk| {
                let portals = pk
                    .iter()
                    .flatten()
                    .filter(|v| gadget.portals.contains(v))
                    .count();
                (pk.len(), portals)
            })
            .collect();
        shapes.sort_unstable();
        ensure!(
            shapes == vec![(r, 0), (r + r / 3, r)],
            "r={r}: packings {shapes:?}"
        );
    }
    Ok("r=3,6".into())
}

fn triples(n: usize) -> Vec<u128> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                out.push((1u128 << a) | (1 << b) | (1 << c));
            }
        }
    }
    out
}

/// Every family of at most `max_sets` triples over `[n]` covering `[n]`.
pub fn covering_triple_families(n: usize, max_sets: usize) -> Vec<Vec<u128>> {
    fn rec(
        all: &[u128],
        from: usize,
        left: usize,
        cur: &mut Vec<u128>,
        full: u128,
        out: &mut Vec<Vec<u128>>,
    ) {
        if !cur.is_empty() && cur.iter().fold(0, |a, s| a | s) == full {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for i in from..all.len() {
            cur.push(all[i]);
            rec(all, i + 1, left - 1, cur, full, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(
        &triples(n),
        0,
        max_sets,
        &mut Vec::new(),
        universe_mask(n),
        &mut out,
    );
    out
}

fn check_partition(sys: &SetSystem) -> Check {
    let expected = ok(oracle_set(sys))?.verdict;
    let (g, h) = ok(reduce_partition_to_triangle(sys))?;
    ensure!(h.p() == sys.n(), "hub size {} for n={}", h.p(), sys.n());
    let part = ok(triangle_partition(&g))?;
    if let Some(p) = &part {
        verify_packing(&g, p)?;
        ensure!(p.len() * 3 == g.n(), "partition does not cover");
    }
    ensure!(part.is_some() == expected, "partition verdict on {sys:?}");
    Ok(String::new())
}

fn random_triangle_instance(seed: u64) -> (Graph, crate::hub::HubDecomposition) {
    let mut r = rng(seed, 8);
    let n = r.gen_range(3..=10);
    let sigma = r.gen_range(1..=4);
    let delta = r.gen_range(1..=3);
    random_hubbed_graph(&mut r, n, sigma, delta)
}

fn triangle_pipeline(level: Level, seed: u64) -> Check {
    let sizes: &[(usize, usize)] = match level {
        Level::Full => &[(3, 5), (4, 5), (5, 5), (6, 5), (7, 3), (8, 3), (9, 3)],
        Level::Quick => &[(3, 3), (6, 2), (9, 3)],
    };
    let mut partitions = 0;
    for &(n, max_sets) in sizes {
        for fam in covering_triple_families(n, max_sets) {
            check_partition(&ok(SetSystem::new(n, fam, Variant::PartitionEq, 3, None))?)?;
            partitions += 1;
        }
    }
    for n in 1..=9 {
        let fam = (0..n).map(|i| 1u128 << i).collect();
        let sys = ok(SetSystem::new(n, fam, Variant::PartitionEq, 1, None))?;
        check_partition(&ok(pad_partition_mod3(&sys))?)?;
        partitions += 1;
    }

    let count = scaled(level, 300, 40) as u64;
    let base = seed.wrapping_mul(1_000_003);
    let mut r = rng(seed, 9);
    for i in 0..count {
        let inst_seed = base.wrapping_add(i);
        let (g, h) = random_triangle_instance(inst_seed);
        let opt = ok(oracle_triangle_packing(&g))?;
        let capacity = r.gen_range(1..=2);
        for target in [opt, opt + 1] {
            let out = ok(solve_triangle_packing(
                &g,
                &h,
                target,
                capacity,
                SplitterBackend::Exhaustive,
                inst_seed,
            ))?;
            ensure!(
                out.verdict == (target <= opt),
                "exhaustive splitter, target {target}, optimum {opt}, on {g:?}"
            );
            if let Some(w) = out.witness {
                verify_packing(&g, &w)?;
                ensure!(w.len() >= target, "witness too small");
            }
        }
    }
    let mc = SplitterBackend::MonteCarlo { reps: Some(4) };
    let mut found = 0;
    for i in 0..count {
        let inst_seed = base.wrapping_add(count + i);
        let (g, h) = random_triangle_instance(inst_seed);
        let opt = ok(oracle_triangle_packing(&g))?;
        for target in [opt, opt + 1] {
            let out = ok(solve_triangle_packing(&g, &h, target, 1, mc, inst_seed))?;
            ensure!(
                !out.verdict || target <= opt,
                "monte carlo false yes at target {target} on {g:?}"
            );
            if let Some(w) = out.witness {
                verify_packing(&g, &w)?;
                ensure!(w.len() >= target, "witness too small");
                found += 1;
            }
        }
    }
    Ok(format!(
        "partitions={partitions} exhaustive={count} monte_carlo={count} found={found}"
    ))
}

fn domset(level: Level, seed: u64) -> Check {
    let max_n = scaled(level, 5, 4);
    let mut cover = 0;
    let mut hitting = 0;
    for n in 1..=max_n {
        for fam in covering_family_classes(n, 6) {
            let d = fam.iter().map(|s| s.count_ones() as usize).max().unwrap_or(0);
            let sys = ok(SetSystem::new(n, fam.clone(), Variant::CoverLe, d, Some(0)))?;
            let min_cover = ok(oracle_set(&sys))?
                .optimum
                .ok_or("covering class without a cover")?;
            let red = ok(reduce_setcover_to_domset(n, &fam))?;
            ensure!(
                reduced_optimum(&red)? == min_cover + fam.len(),
                "set cover identity on n={n} {fam:?}"
            );
            cover += 1;
        }
        for used in 0..=n {
            let families = if used == 0 {
                vec![vec![]]
            } else {
                covering_family_classes(used, 6)
            };
            for fam in families {
                let hs = ok(oracle_hitting_set(n, &fam))?.len();
                let red = ok(reduce_hittingset_to_domset(n, &fam))?;
                ensure!(
                    reduced_optimum(&red)? == n + hs,
                    "hitting set identity on n={n} {fam:?}"
                );
                hitting += 1;
            }
        }
    }
    let count = scaled(level, 300, 40);
    let mut r = rng(seed, 10);
    for _ in 0..count {
        let n = r.gen_range(1..=12);
        let sigma = r.gen_range(1..=4);
        let delta = r.gen_range(1..=3);
        let (g, h) = random_hubbed_graph(&mut r, n, sigma, delta);
        let s = ok(solve_domset_hub(&g, &h))?;
        verify_domset(&g, &s.vertices)?;
        ensure!(
            s.size() == ok(oracle_domset(&g))?.size(),
            "hub solver on {g:?}"
        );
    }
    Ok(format!("cover={cover} hitting={hitting} random={count}"))
}

/// Minimum dominating set of a reduced instance via the hub solver,
/// cross-checked by the oracle when the graph is small enough.
fn reduced_optimum(red: &DomReduction) -> std::result::Result<usize, String> {
    let s = ok(solve_domset_hub(&red.graph, &red.hub))?;
    verify_domset(&red.graph, &s.vertices)?;
    if red.graph.n() <= ORACLE_CAP {
        ensure!(
            ok(oracle_domset(&red.graph))?.size() == s.size(),
            "hub solver disagrees with the oracle on {:?}",
            red.graph
        );
    }
    Ok(s.size())
}
