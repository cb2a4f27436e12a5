use hubsolve_core::domset::*;
use hubsolve_core::gen::{covering_family_classes, random_hubbed_graph, rng};
use hubsolve_core::graph::Graph;
use hubsolve_core::hub::tight_hub;
use hubsolve_core::setsys::{oracle_set, SetSystem, Variant};
use proptest::prelude::*;
use rand::Rng;

fn min_cover(n: usize, family: &[u128]) -> usize {
    let d = family.iter().map(|s| s.count_ones() as usize).max().unwrap_or(0);
    let sys = SetSystem::new(n, family.to_vec(), Variant::CoverLe, d, Some(0)).unwrap();
    oracle_set(&sys).unwrap().optimum.unwrap()
}

/// Solves with the hub solver, and with the oracle when the graph fits.
fn min_domset(r: &DomReduction) -> usize {
    let s = solve_domset_hub(&r.graph, &r.hub).unwrap();
    verify_domset(&r.graph, &s.vertices).unwrap();
    if r.graph.n() <= ORACLE_CAP {
        assert_eq!(oracle_domset(&r.graph).unwrap().size(), s.size());
    }
    s.size()
}

#[test]
fn setcover_identity_on_exhaustive_corpus() {
    let mut checked = 0;
    for n in 1..=5 {
        for fam in covering_family_classes(n, 6) {
            let r = reduce_setcover_to_domset(n, &fam).unwrap();
            assert_eq!(r.hub.p(), n);
            assert!(r.hub.sigma() <= 3);
            assert_eq!(min_domset(&r), min_cover(n, &fam) + fam.len(), "{fam:?}");
            checked += 1;
        }
    }
    assert!(checked > 1000);
}

#[test]
fn hittingset_identity_on_exhaustive_corpus() {
    let mut checked = 0;
    for n in 1..=5 {
        // Families over a prefix of the universe cover every class up to
        // isomorphism, including the non-covering ones.
        for used in 0..=n {
            let families = if used == 0 {
                vec![vec![]]
            } else {
                covering_family_classes(used, 6)
            };
            for fam in families {
                let r = reduce_hittingset_to_domset(n, &fam).unwrap();
                assert!(r.hub.sigma() <= 2);
                let hs = oracle_hitting_set(n, &fam).unwrap();
                assert_eq!(min_domset(&r), n + hs.len(), "n={n} {fam:?}");
                checked += 1;
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn hub_solver_matches_oracle() {
    for seed in 0..300 {
        let mut r = rng(seed, 11);
        let n = r.gen_range(1..=12);
        let sigma = r.gen_range(1..=4);
        let delta = r.gen_range(1..=3);
        let (g, h) = random_hubbed_graph(&mut r, n, sigma, delta);
        let s = solve_domset_hub(&g, &h).unwrap();
        verify_domset(&g, &s.vertices).unwrap();
        assert_eq!(s.size(), oracle_domset(&g).unwrap().size(), "seed {seed}");
    }
}

#[test]
fn caps_are_reported() {
    let g = Graph::empty(30);
    let h = tight_hub(&g, &(0..21).collect::<Vec<_>>());
    assert!(solve_domset_hub(&g, &h).unwrap_err().is_cap());
    assert!(oracle_domset(&g).unwrap_err().is_cap());
}

fn graph_and_hub() -> impl Strategy<Value = (Graph, Vec<usize>)> {
    (1usize..=10).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
            proptest::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(picks, in_hub)| {
                let mut edges = Vec::new();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if picks[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                let hub = (0..n).filter(|&v| in_hub[v]).collect();
                (Graph::new(n, edges).unwrap(), hub)
            })
    })
}

proptest! {
    #[test]
    fn any_hub_gives_the_optimum((g, hub) in graph_and_hub()) {
        let h = tight_hub(&g, &hub);
        let s = solve_domset_hub(&g, &h).unwrap();
        prop_assert!(verify_domset(&g, &s.vertices).is_ok());
        prop_assert_eq!(s.size(), oracle_domset(&g).unwrap().size());
    }
}
