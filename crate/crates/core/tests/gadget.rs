use hubsolve_core::coloring::min_edge_deletion;
use hubsolve_core::gadget::*;
use hubsolve_core::gen::{random_maxcsp, rng};
use hubsolve_core::graph::Graph;
use hubsolve_core::lists::ListAssignment;
use hubsolve_core::maxcsp::{oracle_maxcsp, MaxConstraint, MaxCsp};
use hubsolve_core::minsum::{MinSum, DEFAULT_TABLE_CAP};
use proptest::prelude::*;
use rand::Rng;

fn relations_of_arity(r: usize) -> Vec<Relation> {
    let tuples: Vec<Vec<u8>> = all_tuples(2, r).collect();
    (0..1u32 << tuples.len())
        .map(|mask| {
            let chosen = tuples
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, t)| t.clone());
            Relation::new(2, r, chosen).unwrap()
        })
        .collect()
}

fn assert_realizers(rel: &Relation, omegas: &[usize]) {
    let plain = build_relation(rel).unwrap();
    assert!(plain.portals_independent());
    let rep = verify_realization(&plain, rel).unwrap();
    assert!(rep.realizes, "{rel:?}: {rep:?}");
    for &omega in omegas {
        let gad = build_one_realizer(rel, omega).unwrap();
        assert!(gad.portals_independent());
        let rep = verify_realization(&gad, rel).unwrap();
        assert!(
            rep.omega_realizes(omega as u64),
            "{rel:?} omega {omega}: {rep:?}"
        );
    }
}

#[test]
fn every_small_relation_is_realized() {
    for r in 1..=2 {
        for rel in relations_of_arity(r) {
            assert_realizers(&rel, &[1, 2]);
        }
    }
}

#[test]
fn sampled_ternary_relations_are_realized() {
    let mut r = rng(31, 1);
    let all = relations_of_arity(3);
    for _ in 0..50 {
        assert_realizers(&all[r.gen_range(0..all.len())], &[1]);
    }
}

#[test]
fn full_relation_has_no_violations() {
    let rel = Relation::full(2, 3).unwrap();
    let rep = verify_realization(&build_one_realizer(&rel, 1).unwrap(), &rel).unwrap();
    assert!(rep.vacuous && rep.realizes);
    assert_eq!(rep.k, Some(0));
}

#[test]
fn or_gadget_has_the_stated_shape() {
    for p in 2..=5 {
        let g = build_or(p).unwrap();
        let links = 2 * p + p * (p - 1) / 2;
        assert_eq!(g.graph().n(), 3 * p + 1 + 3 * links);
        assert!(g.portals_independent());
    }
    let heavy = build_or_weighted(3, 4).unwrap();
    let rep = verify_realization(&heavy, &Relation::or(3).unwrap()).unwrap();
    assert!(rep.realizes);
}

#[test]
fn extension_contract() {
    let edge = Gadget::new(Graph::complete(2), ListAssignment::full(2, 2), vec![0, 1]).unwrap();
    assert!(verify_extension_gadget(&edge, &Relation::neq()).unwrap());
    assert!(!verify_extension_gadget(&build_or2(), &Relation::or(2).unwrap()).unwrap());
    let k3 = Gadget::new(
        Graph::complete(3),
        ListAssignment::full(3, 3),
        vec![0, 1, 2],
    )
    .unwrap();
    let all_diff = Relation::new(
        3,
        3,
        all_tuples(3, 3).filter(|t| t[0] != t[1] && t[1] != t[2] && t[0] != t[2]),
    )
    .unwrap();
    assert!(verify_extension_gadget(&k3, &all_diff).unwrap());
}

/// Fewest deletions of the list instance (lists enforced).
fn list_optimum(list: &ListInstance) -> u64 {
    let mut ms = MinSum::new(list.graph.n(), 2);
    for v in 0..list.graph.n() {
        ms.restrict(v, list.lists.mask(v));
    }
    for &(u, v) in list.graph.edges() {
        ms.add_conflict(u, v);
    }
    ms.solve(&[], DEFAULT_TABLE_CAP).unwrap()[0]
}

fn check_maxcut(inst: &MaxCsp, opts: Synthesis) {
    let (_, opt) = oracle_maxcsp(inst).unwrap();
    let list = build_list_instance(inst, opts.realizer).unwrap();
    assert_eq!(list_optimum(&list), list.alpha_total() + opt as u64);
    for z in [opt.saturating_sub(1), opt, opt + 1] {
        let mc = build_maxcut_instance(inst, z as u64, opts).unwrap();
        assert!(mc.hub.in_hub(mc.apex));
        assert!(mc.hub.delta() <= inst.arity() + 1);
        let cut = mc.graph.m() - min_edge_deletion(&mc.graph, 2).unwrap().cost;
        assert_eq!(cut as u64 >= mc.threshold, opt <= z, "{inst:?} z={z}");
    }
}

#[test]
fn maxcut_synthesis_matches_both_oracles() {
    let mut r = rng(31, 2);
    for _ in 0..200 {
        let n = r.gen_range(1..=6);
        let m = r.gen_range(0..=5);
        let inst = random_maxcsp(&mut r, n, 2, 3, m, 0.5);
        check_maxcut(&inst, Synthesis::default());
    }
}

#[test]
fn weighted_removal_and_flagged_realizers_on_tiny_instances() {
    let mut r = rng(31, 3);
    for i in 0..20 {
        let n = r.gen_range(1..=3);
        let m = r.gen_range(0..=2);
        let inst = random_maxcsp(&mut r, n, 2, 2, m, 0.5);
        // Weighted removal multiplies the flagged realizers' large alphas
        // into huge path bundles, so each option is paired with the default.
        let opts = if i % 2 == 0 {
            Synthesis {
                removal: ListRemoval::Weighted,
                realizer: RealizerKind::Direct,
            }
        } else {
            Synthesis {
                removal: ListRemoval::Local,
                realizer: RealizerKind::Flagged,
            }
        };
        check_maxcut(&inst, opts);
    }
}

#[test]
fn maxcut_examples() {
    let empty = MaxCsp::new(3, 2, vec![]).unwrap();
    let mc = build_maxcut_instance(&empty, 0, Synthesis::default()).unwrap();
    assert_eq!((mc.graph.n(), mc.graph.m(), mc.threshold), (4, 0, 0));
    let neq = MaxCsp::new(
        2,
        2,
        vec![MaxConstraint::new(vec![0, 1], vec![vec![0, 1], vec![1, 0]])],
    )
    .unwrap();
    let mc = build_maxcut_instance(&neq, 0, Synthesis::default()).unwrap();
    let cut = mc.graph.m() - min_edge_deletion(&mc.graph, 2).unwrap().cost;
    assert!(cut as u64 >= mc.threshold);
    // Repeated variables are projected away.
    let eq_self =
        MaxCsp::new(1, 2, vec![MaxConstraint::new(vec![0, 0], vec![vec![0, 1]])]).unwrap();
    check_maxcut(&eq_self, Synthesis::default());
}

fn small_gadget() -> impl Strategy<Value = Gadget> {
    (2usize..=3, 2usize..=8)
        .prop_flat_map(|(q, n)| {
            let pairs = n * (n - 1) / 2;
            (
                Just(q),
                Just(n),
                proptest::collection::vec(any::<bool>(), pairs),
                proptest::collection::vec(1u32..(1 << q), n),
                1usize..=n.min(3),
            )
        })
        .prop_map(|(q, n, picks, lists, r)| {
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
            let g = Graph::new(n, edges).unwrap();
            Gadget::new(g, ListAssignment::new(q, lists).unwrap(), (0..r).collect()).unwrap()
        })
}

proptest! {
    #[test]
    fn elimination_matches_brute_force(gad in small_gadget()) {
        let table = cost_table(&gad).unwrap();
        for (d, c) in all_tuples(gad.q(), gad.arity()).zip(table) {
            let brute = cost_ed_brute(&gad, &d).unwrap();
            prop_assert_eq!(cost_ed(&gad, &d).unwrap(), brute);
            prop_assert_eq!(c, brute);
        }
        prop_assert_eq!(parse_gadget(&write_gadget(&gad)).unwrap(), gad);
    }
}
