//! `hubsolve solve ...`: run a solver, re-verify its witness, report.

use crate::report::*;
use crate::{ColorArgs, SplitterKind};
use hubsolve_core::coloring::{
    solve_coloring, solve_coloring_ed, solve_coloring_vd_fast, solve_list_coloring,
    ColoringSolution, SolveStats,
};
use hubsolve_core::domset::{solve_domset_hub, verify_domset};
use hubsolve_core::lists::{parse_lists, ListAssignment, MAX_COLORS};
use hubsolve_core::setsys::{parse_set_system, solve_exact};
use hubsolve_core::triangle::{solve_triangle_packing, verify_packing, SplitterBackend};
use hubsolve_core::wildcard::{parse_wcsp, solve_wildcard};
use std::path::Path;

/// Hub bounds used when no hub file is given.
const DEFAULT_SIGMA: usize = 4;
const DEFAULT_DELTA: usize = 3;
/// Larger defaults for dominating set, whose hub solver is cheap in
/// component size.
const DOMSET_SIGMA: usize = 12;
const DOMSET_DELTA: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColoringKind {
    Plain,
    List,
    VertexDeletion,
    EdgeDeletion,
}

pub fn coloring(kind: ColoringKind, a: &ColorArgs, out: &mut Report) -> CliResult<Verdict> {
    if a.q == 0 || a.q > MAX_COLORS {
        return Err(CliError::Usage(format!(
            "--q must be between 1 and {MAX_COLORS}"
        )));
    }
    if a.lists.is_some() && matches!(kind, ColoringKind::Plain | ColoringKind::EdgeDeletion) {
        return Err(CliError::Usage(
            "--lists only applies to list-coloring and vd".into(),
        ));
    }
    let g = load_graph(&a.graph)?;
    let h = load_hub(&g, a.hub.as_deref(), DEFAULT_SIGMA, DEFAULT_DELTA)?;
    let la = match &a.lists {
        Some(p) => load(p, |t| parse_lists(t, g.n(), a.q))?,
        None => ListAssignment::full(g.n(), a.q),
    };
    let (solution, stats): (Option<ColoringSolution>, SolveStats) = match kind {
        ColoringKind::Plain => solve_coloring(&g, &h, a.q),
        ColoringKind::List => solve_list_coloring(&g, &la, &h),
        ColoringKind::VertexDeletion => {
            let (s, st) = solve_coloring_vd_fast(&g, &la, &h)?;
            (Some(s), st)
        }
        ColoringKind::EdgeDeletion => {
            let (s, st) = solve_coloring_ed(&g, &h, a.q)?;
            (Some(s), st)
        }
    };
    let lists = matches!(kind, ColoringKind::List | ColoringKind::VertexDeletion).then_some(&la);
    if let Some(s) = &solution {
        verified(s.verify(&g, a.q, lists))?;
    }
    let verdict = match (&solution, a.budget) {
        (None, _) => Verdict::No,
        (Some(s), Some(k)) => Verdict::from_bool(s.cost <= k),
        (Some(_), None) => Verdict::Yes,
    };
    out.verdict(verdict);
    out.kv("hub", format!("p={} sigma={} delta={}", h.p(), h.sigma(), h.delta()));
    if let Some(s) = &solution {
        if matches!(
            kind,
            ColoringKind::VertexDeletion | ColoringKind::EdgeDeletion
        ) {
            out.kv("cost", s.cost);
        }
        out.kv("witness", colors(&s.assignment));
        match kind {
            ColoringKind::VertexDeletion => out.kv("deleted", ids(s.deleted_vertices.clone())),
            ColoringKind::EdgeDeletion => out.kv(
                "deleted",
                join(s.deleted_edges.iter().map(|(u, v)| format!("{}-{}", u + 1, v + 1))),
            ),
            _ => {}
        }
    }
    if a.stats {
        out.kv("leaves", stats.leaves);
        out.kv("leaf_bound", stats.bound);
    }
    Ok(verdict)
}

pub fn wcsp(input: &Path, stats: bool, out: &mut Report) -> CliResult<Verdict> {
    let csp = load(input, parse_wcsp)?;
    let (a, st) = solve_wildcard(&csp)?;
    let recomputed = csp.total_cost(&a.values);
    if recomputed != a.cost {
        return Err(CliError::Verification(format!(
            "reported cost {} but the assignment costs {recomputed}",
            a.cost
        )));
    }
    out.verdict(Verdict::Yes);
    out.kv("cost", a.cost);
    out.kv("wildcards", a.norm());
    out.kv(
        "witness",
        join(a.values.iter().map(|v| match v {
            Some(c) => (c + 1).to_string(),
            None => "*".to_string(),
        })),
    );
    if stats {
        out.kv("leaves", st.leaves);
        out.kv("leaf_bound", st.bound);
    }
    Ok(Verdict::Yes)
}

pub fn setsys(input: &Path, out: &mut Report) -> CliResult<Verdict> {
    let sys = load(input, parse_set_system)?;
    let found = solve_exact(&sys)?;
    if let Some(w) = &found {
        verified(sys.verify_witness(w))?;
    }
    let verdict = Verdict::from_bool(found.is_some());
    out.verdict(verdict);
    out.kv("variant", sys.variant());
    if let Some(w) = found {
        out.kv("size", w.len());
        out.kv("witness", ids(w));
    }
    Ok(verdict)
}

pub struct TriangleArgs<'a> {
    pub graph: &'a Path,
    pub hub: &'a Path,
    pub target: usize,
    pub capacity: usize,
    pub splitter: SplitterKind,
    pub seed: u64,
}

pub fn triangle(a: TriangleArgs, out: &mut Report) -> CliResult<Verdict> {
    let g = load_graph(a.graph)?;
    let h = load_hub(&g, Some(a.hub), 0, 0)?;
    let backend = match a.splitter {
        SplitterKind::Exhaustive => SplitterBackend::Exhaustive,
        SplitterKind::Mc => SplitterBackend::MonteCarlo { reps: None },
    };
    let res = solve_triangle_packing(&g, &h, a.target, a.capacity, backend, a.seed)?;
    if let Some(w) = &res.witness {
        verified(verify_packing(&g, w))?;
        if w.len() < a.target {
            return Err(CliError::Verification(format!(
                "packing has {} triangles, fewer than {}",
                w.len(),
                a.target
            )));
        }
    }
    let verdict = Verdict::from_bool(res.verdict);
    out.verdict(verdict);
    if let Some(w) = &res.witness {
        out.kv("size", w.len());
        out.kv(
            "witness",
            join(w.iter().map(|t| format!("{}-{}-{}", t[0] + 1, t[1] + 1, t[2] + 1))),
        );
    }
    out.kv("splitter_size", res.splitter_size);
    out.kv("colorings_tried", res.colorings_tried);
    Ok(verdict)
}

pub fn domset(graph: &Path, hub: Option<&Path>, out: &mut Report) -> CliResult<Verdict> {
    let g = load_graph(graph)?;
    let h = load_hub(&g, hub, DOMSET_SIGMA, DOMSET_DELTA)?;
    let s = solve_domset_hub(&g, &h)?;
    verified(verify_domset(&g, &s.vertices))?;
    out.verdict(Verdict::Yes);
    out.kv("hub", format!("p={} sigma={} delta={}", h.p(), h.sigma(), h.delta()));
    out.kv("size", s.size());
    out.kv("witness", ids(s.vertices.iter().copied()));
    Ok(Verdict::Yes)
}
