use hubsolve_core::coloring::*;
use hubsolve_core::gen::{random_hubbed_graph, random_lists, rng};
use hubsolve_core::graph::Graph;
use hubsolve_core::hub::validate_hub;
use hubsolve_core::lists::ListAssignment;

#[test]
fn hub_solvers_match_oracles() {
    let mut r = rng(7, 100);
    for i in 0..400 {
        let n = 1 + i % 9;
        let (g, h) = random_hubbed_graph(&mut r, n, 3, 2);
        for q in [1, 2, 3] {
            let full = ListAssignment::full(n, q);
            let (sol, stats) = solve_coloring(&g, &h, q);
            assert_eq!(sol.is_some(), oracle_coloring(&g, q).unwrap().is_some());
            assert!(u128::from(stats.leaves) <= stats.bound);
            if let Some(s) = sol {
                s.verify(&g, q, None).unwrap();
            }

            let la = random_lists(&mut r, n, q, 0.05);
            let (sol, stats) = solve_list_coloring(&g, &la, &h);
            assert_eq!(
                sol.is_some(),
                oracle_list_coloring(&g, &la).unwrap().is_some(),
                "{g:?} {la:?}"
            );
            assert!(
                u128::from(stats.leaves) <= stats.bound,
                "leaves {} bound {}",
                stats.leaves,
                stats.bound
            );
            if let Some(s) = sol {
                s.verify(&g, q, Some(&la)).unwrap();
            }

            for lists in [&full, &la] {
                let want = oracle_vd(&g, lists).unwrap().cost;
                let (a, sa) = solve_coloring_vd(&g, lists, &h);
                let (b, sb) = solve_coloring_vd_fast(&g, lists, &h).unwrap();
                assert_eq!(a.cost, want);
                assert_eq!(b.cost, want, "{g:?} {lists:?} {h:?}");
                a.verify(&g, q, Some(lists)).unwrap();
                b.verify(&g, q, Some(lists)).unwrap();
                assert!(u128::from(sa.leaves) <= sa.bound);
                assert!(
                    u128::from(sb.leaves) <= sb.bound,
                    "leaves {} bound {}",
                    sb.leaves,
                    sb.bound
                );
            }

            if q >= 2 {
                let want = oracle_ed(&g, q).unwrap().cost;
                let (s, st) = solve_coloring_ed(&g, &h, q).unwrap();
                assert_eq!(s.cost, want);
                s.verify(&g, q, None).unwrap();
                assert!(u128::from(st.leaves) <= st.bound);
                assert_eq!(min_edge_deletion(&g, q).unwrap().cost, want);
            }
        }
    }
}

#[test]
fn edge_subset_oracle_agrees() {
    let mut r = rng(3, 1);
    for _ in 0..60 {
        let g = hubsolve_core::gen::random_graph(&mut r, 7, 0.4);
        if g.m() <= ORACLE_EDGE_CAP {
            assert_eq!(
                oracle_ed(&g, 2).unwrap().cost,
                oracle_ed_by_edge_subsets(&g, 2).unwrap()
            );
        }
    }
    let k4 = Graph::complete(4);
    let h = validate_hub(&k4, &[0, 1, 2], 1, 3).unwrap();
    assert_eq!(
        solve_coloring_ed(&k4, &h, 3).unwrap().0.cost,
        oracle_ed_by_edge_subsets(&k4, 3).unwrap()
    );
}

#[test]
fn arbitrary_hubs_on_random_graphs() {
    use rand::Rng;
    let mut r = rng(11, 2);
    for i in 0..300 {
        let n = 2 + i % 8;
        let g = hubsolve_core::gen::random_graph(&mut r, n, 0.45);
        let hub: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.5)).collect();
        let h = hubsolve_core::hub::tight_hub(&g, &hub);
        for q in [2, 3] {
            let la = random_lists(&mut r, n, q, 0.0);
            let (sol, stats) = solve_list_coloring(&g, &la, &h);
            assert_eq!(
                sol.is_some(),
                oracle_list_coloring(&g, &la).unwrap().is_some()
            );
            assert!(
                u128::from(stats.leaves) <= stats.bound,
                "leaves {} bound {}",
                stats.leaves,
                stats.bound
            );
            let (b, sb) = solve_coloring_vd_fast(&g, &la, &h).unwrap();
            assert_eq!(b.cost, oracle_vd(&g, &la).unwrap().cost);
            assert!(u128::from(sb.leaves) <= sb.bound);
        }
    }
}
