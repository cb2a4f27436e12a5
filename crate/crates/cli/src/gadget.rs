//! `hubsolve gadget ...`: build gadgets to files and verify them.

use crate::report::*;
use crate::BuildArgs;
use hubsolve_core::gadget::{
    build_forbid, build_one_realizer, build_or, build_or2, build_or2_pow, build_or_weighted,
    build_relation, parse_gadget, parse_relation, verify_realization, write_gadget, Gadget,
};
use hubsolve_core::graph::write_graph;
use hubsolve_core::triangle::build_trieq;
use std::path::Path;

pub const NAMES: &str = "or2, or2-pow, or, or-weighted, forbid, relation, one-realizer";

pub fn build(a: &BuildArgs, out: &mut Report) -> CliResult<Verdict> {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| CliError::Usage(format!("gadget build {} requires --{flag}", a.name)))
    };
    let relation = || match &a.relation {
        Some(p) => load(p, parse_relation),
        None => Err(CliError::Usage(format!(
            "gadget build {} requires --relation",
            a.name
        ))),
    };
    let gad: Gadget = match a.name.as_str() {
        "or2" => build_or2(),
        "or2-pow" => build_or2_pow(need(a.omega, "omega")?)?,
        "or" => build_or(need(a.p.or(a.r), "p")?)?,
        "or-weighted" => build_or_weighted(need(a.p.or(a.r), "p")?, need(a.omega, "omega")?)?,
        "forbid" => {
            let tuple = a
                .tuple
                .as_ref()
                .ok_or_else(|| CliError::Usage("gadget build forbid requires --tuple".into()))?;
            build_forbid(&parse_tuple(tuple)?)?
        }
        "relation" => build_relation(&relation()?)?,
        "one-realizer" => build_one_realizer(&relation()?, a.omega.unwrap_or(1))?,
        other => {
            return Err(CliError::Usage(format!(
                "unknown gadget `{other}`; known: {NAMES}"
            )))
        }
    };
    write(&a.out, &write_gadget(&gad))?;
    out.kv("vertices", gad.graph().n());
    out.kv("edges", gad.graph().m());
    out.kv("portals", ids(gad.portals().iter().copied()));
    Ok(Verdict::Yes)
}

/// `1,2,1` (1-based colors) → `[0, 1, 0]`.
fn parse_tuple(s: &str) -> CliResult<Vec<u8>> {
    s.split(',')
        .map(|t| match t.trim().parse::<u8>() {
            Ok(c) if c >= 1 => Ok(c - 1),
            _ => Err(CliError::Usage(format!("--tuple: bad color `{t}`"))),
        })
        .collect()
}

pub fn verify(gadget: &Path, relation: &Path, omega: Option<u64>, out: &mut Report) -> CliResult<Verdict> {
    let gad = load(gadget, parse_gadget)?;
    let rel = load(relation, parse_relation)?;
    let real = verify_realization(&gad, &rel)?;
    let verdict = Verdict::from_bool(match omega {
        Some(w) => real.omega_realizes(w),
        None => real.realizes,
    });
    out.verdict(verdict);
    out.kv("realizes", Verdict::from_bool(real.realizes).word());
    if let Some(k) = real.k {
        out.kv("k", k);
    }
    match (real.omega, real.vacuous) {
        (_, true) => out.kv("omega", "any"),
        (Some(w), false) => out.kv("omega", w),
        (None, false) => out.kv("omega", "none"),
    }
    for (state, cost) in &real.costs {
        let c = cost.map_or("inf".to_string(), |c| c.to_string());
        out.kv(&format!("cost[{}]", join(state.iter().map(|x| x + 1))), c);
    }
    Ok(verdict)
}

/// Writes the triangle equality gadget as a graph followed by its portals.
pub fn trieq(r: usize, path: &Path, out: &mut Report) -> CliResult<Verdict> {
    let gad = build_trieq(r)?;
    let mut text = write_graph(&gad.graph);
    text.push_str(&format!(
        "portal {}\n",
        gad.portals
            .iter()
            .map(|p| (p + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    ));
    write(path, &text)?;
    out.kv("vertices", gad.graph.n());
    out.kv("edges", gad.graph.m());
    out.kv("triangles", gad.graph.triangles().len());
    out.kv("portals", ids(gad.portals.iter().copied()));
    Ok(Verdict::Yes)
}
