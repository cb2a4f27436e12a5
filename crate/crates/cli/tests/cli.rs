use std::path::PathBuf;
use std::process::{Command, Output};

fn hubsolve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hubsolve"))
        .args(args)
        .output()
        .expect("failed to launch hubsolve")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// A fresh scratch directory per test.
fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hubsolve-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn file(dir: &PathBuf, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn value<'a>(out: &'a str, key: &str) -> Option<&'a str> {
    out.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
}

#[test]
fn unknown_command_is_a_usage_error() {
    assert_eq!(hubsolve(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hubsolve(&["reduce", "no-such-reduction"]).status.code(), Some(2));
}

#[test]
fn missing_flag_is_named() {
    let o = hubsolve(&["solve", "coloring", "--graph", "x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--q"));
}

#[test]
fn triangle_three_colors_but_not_two() {
    let d = scratch("k3");
    let g = file(&d, "k3", "p 3 3\ne 1 2\ne 2 3\ne 1 3\n");
    let h = file(&d, "k3.hub", "hub 2 1 2\n1 2\n");
    let o = hubsolve(&["solve", "coloring", "--q", "3", "--graph", &g, "--hub", &h, "--stats"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(value(&out, "verdict"), Some("yes"));
    assert!(value(&out, "leaves").is_some());
    let o = hubsolve(&["solve", "coloring", "--q", "2", "--graph", &g, "--hub", &h]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(value(&stdout(&o), "verdict"), Some("no"));
}

#[test]
fn deletion_budgets_decide_the_verdict() {
    let d = scratch("budget");
    let g = file(&d, "c5", "p 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n");
    for (cmd, budget, code) in [("vd", "0", 1), ("vd", "1", 0), ("ed", "0", 1), ("ed", "1", 0)] {
        let o = hubsolve(&["solve", cmd, "--q", "2", "--graph", &g, "--budget", budget]);
        assert_eq!(o.status.code(), Some(code), "{cmd} {budget}");
        assert_eq!(value(&stdout(&o), "cost"), Some("1"));
    }
}

#[test]
fn cap_exceeded_exits_3() {
    let d = scratch("cap");
    let g = file(&d, "empty", "p 21 0\n");
    let ids: Vec<String> = (1..=21).map(|v| v.to_string()).collect();
    let h = file(&d, "hub", &format!("hub 21 0 0\n{}\n", ids.join(" ")));
    let o = hubsolve(&["solve", "domset", "--graph", &g, "--hub", &h]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn or2_gadget_round_trip() {
    let d = scratch("or2");
    let gad = d.join("or2.gad").to_string_lossy().into_owned();
    assert!(hubsolve(&["gadget", "build", "or2", "--out", &gad]).status.success());
    let rel = file(&d, "or2.rel", "q 2\nr 2\nt 1 1\nt 1 2\nt 2 1\n");
    let o = hubsolve(&["gadget", "verify", "--gadget", &gad, "--relation", &rel, "--omega", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(value(&out, "cost[1,2]"), Some("1"));
    assert_eq!(value(&out, "cost[2,2]"), Some("3"));
    let o = hubsolve(&["gadget", "verify", "--gadget", &gad, "--relation", &rel, "--omega", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn setcover_through_domset() {
    let d = scratch("setcover");
    let sys = file(&d, "c.sys", "u 4\nvariant cover-le\nt 2\ns 1 2\ns 3 4\ns 2 3\n");
    let g = d.join("dom.g").to_string_lossy().into_owned();
    let o = hubsolve(&["reduce", "setcover-to-domset", "--input", &sys, "--out", &g]);
    assert!(o.status.success());
    let offset: usize = value(&stdout(&o), "offset").unwrap().parse().unwrap();
    let hub = format!("{g}.hub");
    let o = hubsolve(&["solve", "domset", "--graph", &g, "--hub", &hub]);
    let size: usize = value(&stdout(&o), "size").unwrap().parse().unwrap();
    assert_eq!(size, offset + 2);
    let o = hubsolve(&["solve", "setsys", "--input", &sys]);
    assert_eq!(value(&stdout(&o), "size"), Some("2"));
}

#[test]
fn partition_to_triangle_pipeline() {
    let d = scratch("tri");
    let sys = file(&d, "p.sys", "u 6\nvariant partition-eq\ns 1 2 3\ns 4 5 6\ns 2 3 4\n");
    let g = d.join("t.g").to_string_lossy().into_owned();
    let o = hubsolve(&["reduce", "partition-to-triangle", "--input", &sys, "--out", &g]);
    assert!(o.status.success());
    let n: usize = value(&stdout(&o), "vertices").unwrap().parse().unwrap();
    let hub = format!("{g}.hub");
    let target = (n / 3).to_string();
    for splitter in ["exhaustive", "mc"] {
        let o = hubsolve(&[
            "solve", "triangle", "--graph", &g, "--hub", &hub, "--target", &target,
            "--capacity", "3", "--splitter", splitter, "--seed", "7",
        ]);
        assert_eq!(o.status.code(), Some(0), "{splitter}");
    }
}

#[test]
fn selfcheck_quick_is_deterministic() {
    let a = hubsolve(&["selfcheck", "--level", "quick", "--seed", "3"]);
    let b = hubsolve(&["selfcheck", "--level", "quick", "--seed", "3"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(value(&stdout(&a), "passed"), Some("10/10"));
}
