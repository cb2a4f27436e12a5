use hubsolve_core::gen::{random_hubbed_graph, rng};
use hubsolve_core::setsys::{oracle_set, pad_partition_mod3, SetSystem, Variant};
use hubsolve_core::triangle::*;
use proptest::prelude::*;
use rand::Rng;

#[test]
fn equality_gadget_has_exactly_two_covering_packings() {
    for r in [3, 6] {
        let gadget = build_trieq(r).unwrap();
        let inner: Vec<usize> = (r..4 * r).collect();
        let packings = maximal_packings_covering(&gadget.graph, &inner);
        assert_eq!(packings.len(), 2, "r={r}");
        let mut shapes: Vec<(usize, usize)> = packings
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
        shapes.sort();
        assert_eq!(shapes, vec![(r, 0), (r + r / 3, r)]);
    }
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

/// Every family of at most `max_sets` triples over `[n]` whose union is `[n]`.
fn covering_triple_families(n: usize, max_sets: usize) -> Vec<Vec<u128>> {
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
        (1u128 << n) - 1,
        &mut out,
    );
    out
}

fn assert_partition_matches(sys: &SetSystem) {
    let expected = oracle_set(sys).unwrap().verdict;
    let (g, h) = reduce_partition_to_triangle(sys).unwrap();
    assert_eq!(h.p(), sys.n());
    let part = triangle_partition(&g).unwrap();
    if let Some(p) = &part {
        verify_packing(&g, p).unwrap();
        assert_eq!(p.len() * 3, g.n());
    }
    assert_eq!(part.is_some(), expected, "{sys:?}");
}

#[test]
fn partition_reduction_preserves_verdicts() {
    let mut checked = 0;
    for (n, max_sets) in [(3, 5), (4, 5), (5, 5), (6, 5), (7, 3), (8, 3), (9, 3)] {
        for fam in covering_triple_families(n, max_sets) {
            let sys = SetSystem::new(n, fam, Variant::PartitionEq, 3, None).unwrap();
            assert_partition_matches(&sys);
            checked += 1;
        }
    }
    // Singleton families, padded to triples.
    for n in 1..=9 {
        let fam = (0..n).map(|i| 1u128 << i).collect();
        let sys = SetSystem::new(n, fam, Variant::PartitionEq, 1, None).unwrap();
        let padded = pad_partition_mod3(&sys).unwrap();
        assert_eq!(padded.d(), 3);
        assert_partition_matches(&padded);
        checked += 1;
    }
    assert!(checked > 1000);
}

fn random_instance(
    seed: u64,
) -> (
    hubsolve_core::graph::Graph,
    hubsolve_core::hub::HubDecomposition,
) {
    let mut r = rng(seed, 7);
    let n = r.gen_range(3..=10);
    let sigma = r.gen_range(1..=4);
    let delta = r.gen_range(1..=3);
    random_hubbed_graph(&mut r, n, sigma, delta)
}

#[test]
fn exhaustive_splitter_matches_oracle() {
    let mut r = rng(21, 1);
    for seed in 0..300 {
        let (g, h) = random_instance(seed);
        let opt = oracle_triangle_packing(&g).unwrap();
        let capacity = r.gen_range(1..=2);
        for target in [opt, opt + 1] {
            let out =
                solve_triangle_packing(&g, &h, target, capacity, SplitterBackend::Exhaustive, seed)
                    .unwrap();
            assert_eq!(
                out.verdict,
                target <= opt,
                "seed {seed} target {target} c {capacity}"
            );
            if let Some(w) = out.witness {
                verify_packing(&g, &w).unwrap();
                assert!(w.len() >= target);
            }
        }
    }
}

#[test]
fn monte_carlo_splitter_never_reports_false_yes() {
    let mut misses = 0;
    for seed in 0..200 {
        let (g, h) = random_instance(1000 + seed);
        let opt = oracle_triangle_packing(&g).unwrap();
        let mc = SplitterBackend::MonteCarlo { reps: Some(4) };
        assert!(
            !solve_triangle_packing(&g, &h, opt + 1, 1, mc, seed)
                .unwrap()
                .verdict
        );
        let out = solve_triangle_packing(&g, &h, opt, 1, mc, seed).unwrap();
        if let Some(w) = out.witness {
            verify_packing(&g, &w).unwrap();
        } else {
            misses += 1;
        }
    }
    // Few reps may miss, but never all of them.
    assert!(misses < 200);
}

#[test]
fn precolored_solver_matches_brute_force() {
    let mut r = rng(21, 2);
    let mut compared = 0;
    for seed in 0..300 {
        let (g, h) = random_instance(2000 + seed);
        if hub_triangles(&g, &h).len() + h.components().len() > 12 {
            continue;
        }
        let capacity = r.gen_range(1..=2);
        let ell = h.p().div_ceil(capacity).max(1);
        let n_elems = h.components().len() + hub_triangles(&g, &h).len();
        let colors: Vec<usize> = (0..n_elems).map(|_| r.gen_range(0..ell)).collect();
        let target = r.gen_range(0..=g.n() / 3);
        let inst = PrecoloredInstance::new(&g, &h, target, capacity, colors).unwrap();
        let fast = solve_precolored(&inst).unwrap();
        if let Some(w) = &fast {
            verify_packing(&g, w).unwrap();
            assert!(w.len() >= target);
        }
        assert_eq!(
            fast.is_some(),
            oracle_precolored(&inst).unwrap(),
            "seed {seed}"
        );
        compared += 1;
    }
    assert!(compared > 100);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exhaustive_splitters_split_every_subset(n in 1usize..=10, p_frac in 0.0f64..=1.0, l_frac in 0.0f64..=1.0, seed in 0u64..1000) {
        let p = ((n as f64 * p_frac) as usize).max(1);
        let ell = ((p as f64 * l_frac) as usize).clamp(1, p);
        let s = build_splitter(n, p, ell, SplitterBackend::Exhaustive, seed).unwrap();
        prop_assert!(s.verify().unwrap());
    }
}
