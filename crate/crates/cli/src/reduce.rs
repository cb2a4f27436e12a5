//! `hubsolve reduce <name> ...`: transform an instance and write the result.

use crate::report::*;
use crate::ReduceArgs;
use hubsolve_core::domset::{reduce_hittingset_to_domset, reduce_setcover_to_domset, DomReduction};
use hubsolve_core::graph::{write_graph, Graph};
use hubsolve_core::hub::{write_hub, HubDecomposition};
use hubsolve_core::maxcsp::{
    covering_family, group_sat, parse_cnf, parse_maxcsp, structured_split, write_maxcsp,
};
use hubsolve_core::setsys::{parse_set_system, registry, write_set_system};
use hubsolve_core::triangle::reduce_partition_to_triangle;
use std::path::{Path, PathBuf};

/// Names handled here rather than by the set-system registry.
pub const SPECIAL: [&str; 6] = [
    "group-sat",
    "cover-family",
    "structured-split",
    "partition-to-triangle",
    "setcover-to-domset",
    "hittingset-to-domset",
];

fn required<'a, T>(v: &'a Option<T>, flag: &str, name: &str) -> CliResult<&'a T> {
    v.as_ref()
        .ok_or_else(|| CliError::Usage(format!("reduce {name} requires --{flag}")))
}

pub fn reduce(a: &ReduceArgs, out: &mut Report) -> CliResult<Verdict> {
    let name = a.name.as_str();
    match name {
        "group-sat" => group(a, out),
        "cover-family" => cover(a, out),
        "structured-split" => split(a, out),
        "partition-to-triangle" => {
            let sys = load(required(&a.input, "input", name)?, parse_set_system)?;
            let (g, h) = reduce_partition_to_triangle(&sys)?;
            write_graph_and_hub(required(&a.out, "out", name)?, &g, &h, out)?;
            Ok(Verdict::Yes)
        }
        "setcover-to-domset" | "hittingset-to-domset" => domset(a, out),
        _ => setsys(a, out),
    }
}

fn write_graph_and_hub(
    path: &Path,
    g: &Graph,
    h: &HubDecomposition,
    out: &mut Report,
) -> CliResult<()> {
    write(path, &write_graph(g))?;
    let hub_file = hub_path(path);
    write(&hub_file, &write_hub(h))?;
    out.kv("vertices", g.n());
    out.kv("edges", g.m());
    out.kv("hub", format!("p={} sigma={} delta={}", h.p(), h.sigma(), h.delta()));
    out.kv("hub_file", hub_file.display());
    Ok(())
}

fn group(a: &ReduceArgs, out: &mut Report) -> CliResult<Verdict> {
    let cnf = load(required(&a.input, "input", "group-sat")?, parse_cnf)?;
    let p = *required(&a.p, "p", "group-sat")?;
    let inst = group_sat(&cnf, p)?;
    write(required(&a.out, "out", "group-sat")?, &write_maxcsp(&inst))?;
    out.kv("variables", inst.n());
    out.kv("domain", inst.d());
    out.kv("constraints", inst.constraints().len());
    out.kv("arity", inst.arity());
    Ok(Verdict::Yes)
}

/// Writes the cover as one `m` line per member: for every coordinate the
/// allowed values, 1-based and comma-separated.
fn cover(a: &ReduceArgs, out: &mut Report) -> CliResult<Verdict> {
    let name = "cover-family";
    let d_prime = *required(&a.d_prime, "d-prime", name)?;
    let d = *required(&a.d, "d", name)?;
    let n = *required(&a.n, "n", name)?;
    let block = *required(&a.block, "block", name)?;
    let fam = covering_family(d_prime, d, n, block, a.exact_block)?;
    if let Some(path) = &a.out {
        let mut text = String::new();
        for m in &fam.members {
            let coords: Vec<String> = m
                .iter()
                .map(|&mask| join((0..d_prime).filter(|&v| mask >> v & 1 == 1).map(|v| v + 1)))
                .collect();
            text.push_str(&format!("m {}\n", coords.join(" ")));
        }
        write(path, &text)?;
    }
    out.kv("members", fam.members.len());
    Ok(Verdict::Yes)
}

fn split(a: &ReduceArgs, out: &mut Report) -> CliResult<Verdict> {
    let name = "structured-split";
    let inst = load(required(&a.input, "input", name)?, parse_maxcsp)?;
    let b = *required(&a.block, "block", name)?;
    let dir = required(&a.out_dir, "out-dir", name)?;
    create_dir(dir)?;
    let it = structured_split(&inst, b)?;
    out.kv("expected", it.count_total());
    let mut count = 0usize;
    for part in it {
        write(&dir.join(format!("split-{count}.maxcsp")), &write_maxcsp(&part))?;
        count += 1;
    }
    out.kv("instances", count);
    Ok(Verdict::Yes)
}

fn domset(a: &ReduceArgs, out: &mut Report) -> CliResult<Verdict> {
    let name = a.name.as_str();
    let sys = load(required(&a.input, "input", name)?, parse_set_system)?;
    let r: DomReduction = if name == "setcover-to-domset" {
        reduce_setcover_to_domset(sys.n(), sys.sets())?
    } else {
        reduce_hittingset_to_domset(sys.n(), sys.sets())?
    };
    write_graph_and_hub(required(&a.out, "out", name)?, &r.graph, &r.hub, out)?;
    out.kv("offset", r.offset);
    Ok(Verdict::Yes)
}

fn setsys(a: &ReduceArgs, out: &mut Report) -> CliResult<Verdict> {
    let name = a.name.as_str();
    let all = registry();
    let Some(red) = all.iter().find(|r| r.name == name) else {
        let mut known: Vec<&str> = SPECIAL.to_vec();
        known.extend(all.iter().map(|r| r.name));
        return Err(CliError::Usage(format!(
            "unknown reduction `{name}`; known: {}",
            known.join(", ")
        )));
    };
    let sys = load(required(&a.input, "input", name)?, parse_set_system)?;
    let param = match red.param {
        Some(flag) => *required(&a.param, &format!("param (the {flag})"), name)?,
        None => 0,
    };
    let dir: &PathBuf = required(&a.out_dir, "out-dir", name)?;
    create_dir(dir)?;
    let mut count = 0usize;
    for inst in (red.run)(&sys, param)? {
        let inst = inst?;
        write(&dir.join(format!("{name}-{count}.sys")), &write_set_system(&inst))?;
        count += 1;
    }
    out.kv("from", sys.variant());
    out.kv("to", red.to);
    out.kv("instances", count);
    Ok(Verdict::Yes)
}
