use hubsolve_core::gen::{random_hubbed_graph, random_lists, random_wildcard_csp, rng};
use hubsolve_core::wildcard::*;
use rand::Rng;

#[test]
fn solver_matches_oracle_on_random_monotone_csps() {
    let mut r = rng(5, 3);
    for _ in 0..300 {
        let n = r.gen_range(1..=8);
        let q = r.gen_range(1..=3);
        let k = r.gen_range(1..=3);
        let m = r.gen_range(0..=6);
        let csp = random_wildcard_csp(&mut r, n, q, k, m, 4);
        assert!(check_wildcard_property(&csp));
        let (sol, stats) = solve_wildcard(&csp).unwrap();
        let want = oracle_wildcard(&csp).unwrap();
        assert_eq!(sol.cost, want.cost);
        assert_eq!(csp.total_cost(&sol.values), sol.cost);
        assert_eq!(csp.total_cost(&want.values), want.cost);
        assert!(u128::from(stats.leaves) <= wildcard_leaf_bound(q, n, csp.arity().max(1)));
        assert_eq!(parse_wcsp(&write_wcsp(&csp)).unwrap(), csp);

        let reduced = reduce_wildcard(&csp).unwrap();
        assert!(check_wildcard_property(&reduced));
        assert!(reduced.n() <= csp.n());
        assert_eq!(oracle_wildcard(&reduced).unwrap().cost, want.cost);
    }
}

#[test]
fn vd_reduction_tables_are_monotone() {
    let mut r = rng(5, 4);
    for i in 0..200 {
        let (g, h) = random_hubbed_graph(&mut r, 1 + i % 9, 3, 3);
        let q = 1 + i % 3;
        let mut la = random_lists(&mut r, g.n(), q, 0.0);
        for &v in h.hub() {
            if la.mask(v) == 0 {
                la.set(v, 1);
            }
        }
        let csp = vd_to_wildcard_csp(&g, &la, &h).unwrap();
        assert!(check_wildcard_property(&csp));
        assert_eq!(csp.n(), h.p());
    }
}
