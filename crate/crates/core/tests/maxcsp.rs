use hubsolve_core::gen::{random_cnf, random_maxcsp, rng};
use hubsolve_core::maxcsp::*;
use rand::Rng;

#[test]
fn grouping_preserves_maxsat_optimum() {
    let mut r = rng(9, 5);
    for i in 0..200 {
        let n = r.gen_range(0..=8);
        let m = r.gen_range(0..=12);
        let cnf = random_cnf(&mut r, n, m);
        let p = 1 + i % 3;
        let grouped = group_sat(&cnf, p).unwrap();
        assert!(grouped.arity() <= 3);
        assert_eq!(
            oracle_maxcsp(&grouped).unwrap().1,
            oracle_maxsat(&cnf).unwrap()
        );
    }
}

#[test]
fn covering_families_cover_and_stay_small() {
    for d_prime in 2..=4 {
        for d in 1..d_prime {
            for n in 1..=6 {
                for m in 1..=3 {
                    let Ok(c) = covering_family(d_prime, d, n, m, false) else {
                        continue;
                    };
                    assert!(c.covers_everything(), "d'={d_prime} d={d} n={n} m={m}");
                    let bound = (d_prime as f64 / d as f64 + 1.0).powi(n as i32);
                    assert!(
                        (c.members.len() as f64) <= bound,
                        "d'={d_prime} d={d} n={n} m={m}: {}",
                        c.members.len()
                    );
                }
            }
        }
    }
}

#[test]
fn restriction_preserves_optimum() {
    let mut r = rng(9, 6);
    for i in 0..60 {
        let n = 1 + i % 5;
        let m = r.gen_range(0..=6);
        let inst = random_maxcsp(&mut r, n, 3, 2, m, 0.4);
        let fam = covering_family(3, 2, n, 1 + i % 2, false).unwrap();
        let best = fam
            .members
            .iter()
            .map(|m| {
                let sub = restrict_domains(&inst, m).unwrap();
                let (a, v) = oracle_maxcsp(&sub).unwrap();
                assert_eq!(inst.violations(&lift_assignment(m, &a)), v);
                v
            })
            .min()
            .unwrap();
        assert_eq!(best, oracle_maxcsp(&inst).unwrap().1);
    }
}

#[test]
fn structured_split_preserves_satisfiability() {
    let mut r = rng(9, 7);
    for _ in 0..100 {
        let n = r.gen_range(1..=6);
        let m = r.gen_range(0..=5);
        let inst = random_maxcsp(&mut r, n, 2, 2, m, 0.6);
        let split = structured_split(&inst, 2).unwrap();
        let total = split.count_total();
        let mut count = 0u128;
        let mut any = false;
        for s in split {
            count += 1;
            any |= oracle_maxcsp(&s).unwrap().1 == 0;
        }
        assert_eq!(count, total);
        assert_eq!(count, 3u128.pow(n.div_ceil(2) as u32));
        assert_eq!(any, oracle_maxcsp(&inst).unwrap().1 == 0);
    }
}
