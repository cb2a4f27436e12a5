use hubsolve_core::gen::{covering_family_classes, random_family, rng};
use hubsolve_core::setsys::audit::{applicable, check_reduction, questions};
use hubsolve_core::setsys::*;
use proptest::prelude::*;
use rand::Rng;

fn random_system(r: &mut hubsolve_core::gen::GenRng, variant: Variant) -> SetSystem {
    let n = r.gen_range(1..=8);
    let m = r.gen_range(0..=10);
    let d = r.gen_range(1..=4);
    let mut family = random_family(r, n, m, d);
    if variant.uniform() {
        family.retain(|s| s.count_ones() as usize == d);
    }
    let t = variant.has_target().then(|| r.gen_range(0..=n));
    SetSystem::new(n, family, variant, d, t).unwrap()
}

#[test]
fn oracles_and_search_agree() {
    let mut r = rng(11, 1);
    for i in 0..1600 {
        let sys = random_system(&mut r, Variant::ALL[i % 8]);
        let dp = oracle_set(&sys).unwrap();
        assert_eq!(dp, oracle_naive(&sys).unwrap(), "{sys:?}");
        match solve_exact(&sys).unwrap() {
            Some(w) => {
                assert!(dp.verdict, "{sys:?}");
                sys.verify_witness(&w).unwrap();
            }
            None => assert!(!dp.verdict, "{sys:?}"),
        }
    }
}

#[test]
fn reductions_preserve_verdicts_on_small_classes() {
    for n in 0..=4 {
        for fam in covering_family_classes(n, 5) {
            for q in questions(n, &fam).unwrap() {
                for (red, param) in applicable(&q, 3) {
                    let c = check_reduction(&red, &q, param).unwrap();
                    assert!(c.agrees(), "{} (param {param}) on {q:?}: {c:?}", red.name);
                }
            }
        }
    }
}

#[test]
fn reductions_preserve_verdicts_on_random_systems() {
    let mut r = rng(11, 2);
    for _ in 0..150 {
        let n = r.gen_range(1..=7);
        let m = r.gen_range(1..=7);
        let fam = random_family(&mut r, n, m, 3);
        for q in questions(n, &fam).unwrap() {
            for (red, param) in applicable(&q, 3) {
                let c = check_reduction(&red, &q, param).unwrap();
                assert!(c.agrees(), "{} (param {param}) on {q:?}: {c:?}", red.name);
            }
        }
    }
}

#[test]
fn join_instances_have_the_stated_shape() {
    let mut r = rng(11, 3);
    for _ in 0..200 {
        let n = r.gen_range(1..=7);
        let m = r.gen_range(1..=7);
        let d = r.gen_range(1..=3);
        let c = r.gen_range(1..=2);
        let fam = random_family(&mut r, n, m, d);
        let sys = SetSystem::new(n, fam, Variant::PartitionLe, d, None).unwrap();
        let fact: usize = (1..=d).product();
        for sig in signatures(&sys) {
            let j = build_join_instance(&sys, c, &sig).unwrap();
            assert_eq!(j.set_size, c * fact + 1);
            assert!(j.sets.iter().all(|s| s.count_ones() as usize == j.set_size));
            let alpha: usize = sig
                .counts
                .iter()
                .enumerate()
                .map(|(i, &k)| k.div_ceil(c * fact / (i + 1)))
                .sum();
            assert_eq!(j.alpha, alpha);
            let (orig, dummies, guards) = join_layout(&j);
            assert_eq!((orig, guards), (n, alpha));
            let padded: usize = sig
                .counts
                .iter()
                .enumerate()
                .map(|(i, &k)| {
                    (k.div_ceil(c * fact / (i + 1)) * (c * fact / (i + 1)) - k) * (i + 1)
                })
                .sum();
            assert_eq!(dummies, padded);
            assert!(j.sets.iter().all(|s| (s & j.guards).count_ones() == 1));
        }
    }
}

#[test]
fn block_trick_rejects_unreachable_union_targets() {
    let sys = SetSystem::new(2, vec![0b01], Variant::PackingLeUnion, 1, Some(3)).unwrap();
    for out in reduce_packing_union_to_partition_sets(&sys, 2).unwrap() {
        assert!(!decide(&out.unwrap()).unwrap());
    }
}

#[test]
fn format_rejects_bad_input() {
    assert!(parse_set_system("u 3\nvariant nope\n").is_err());
    assert!(parse_set_system("u 3\nvariant cover-le\ns 1\n").is_err());
    assert!(parse_set_system("variant cover-le\nt 1\n").is_err());
    let ok = parse_set_system("# comment\nu 3\nvariant cover-le\nt 2\ns 1 2\ns 3\n").unwrap();
    assert_eq!(ok.d(), 2);
    assert!(ok.check_covering().is_ok());
}

proptest! {
    #[test]
    fn round_trip_and_witnesses(
        n in 1usize..=9,
        raw in proptest::collection::vec(1u128..512, 0..8),
        vi in 0usize..8,
        t in 0usize..6,
    ) {
        let family: Vec<u128> = raw.into_iter().map(|s| s & ((1 << n) - 1)).filter(|&s| s != 0).collect();
        let variant = Variant::ALL[vi];
        let d = family.iter().map(|s| s.count_ones() as usize).max().unwrap_or(1);
        let family: Vec<u128> = if variant.uniform() {
            family.into_iter().filter(|s| s.count_ones() as usize == d).collect()
        } else {
            family
        };
        let sys = SetSystem::new(n, family, variant, d, variant.has_target().then_some(t)).unwrap();
        prop_assert_eq!(&parse_set_system(&write_set_system(&sys)).unwrap(), &sys);
        let verdict = oracle_set(&sys).unwrap().verdict;
        match solve_exact(&sys).unwrap() {
            Some(w) => {
                prop_assert!(verdict);
                prop_assert!(sys.verify_witness(&w).is_ok());
            }
            None => prop_assert!(!verdict),
        }
    }
}
