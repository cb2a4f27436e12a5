//! Verdict-preservation checks for the set-system reductions.

use super::{decide, oracle_set, registry, Reduction, SetSystem, Variant};
use crate::error::Result;

/// Every question worth asking about a family: each variant whose size
/// rule it satisfies (with `d` the largest set size), with targets at the
/// optimum and one step to either side.
pub fn questions(n: usize, family: &[u128]) -> Result<Vec<SetSystem>> {
    let sizes: Vec<usize> = family.iter().map(|s| s.count_ones() as usize).collect();
    let d = sizes.iter().copied().max().unwrap_or(0);
    let uniform = sizes.iter().all(|&s| s == d);
    let mut out = Vec::new();
    for v in Variant::ALL {
        if v.uniform() && (!uniform || d == 0) {
            continue;
        }
        let base = SetSystem::new(n, family.to_vec(), v, d, v.has_target().then_some(0))?;
        if !v.has_target() {
            out.push(base);
            continue;
        }
        let opt = oracle_set(&base)?.optimum.unwrap_or(family.len() + 1);
        let mut targets = vec![opt.saturating_sub(1), opt, opt + 1];
        targets.dedup();
        for t in targets {
            out.push(base.with(v, d, Some(t))?);
        }
    }
    Ok(out)
}

/// Outcome of running one reduction on one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCheck {
    pub expected: bool,
    pub produced: bool,
    pub emitted: usize,
}

impl ReductionCheck {
    pub fn agrees(&self) -> bool {
        self.expected == self.produced
    }
}

/// Runs `reduction` and compares the verdict of `sys` with the disjunction
/// of the emitted verdicts. Every emitted instance is decided.
pub fn check_reduction(
    reduction: &Reduction,
    sys: &SetSystem,
    param: usize,
) -> Result<ReductionCheck> {
    let expected = oracle_set(sys)?.verdict;
    let mut produced = false;
    let mut emitted = 0;
    for out in (reduction.run)(sys, param)? {
        let out = out?;
        emitted += 1;
        produced |= decide(&out)?;
    }
    Ok(ReductionCheck {
        expected,
        produced,
        emitted,
    })
}

/// Reductions applicable to `sys` with the parameters to try. Join-based
/// reductions are only run for set sizes up to `max_join_d`.
pub fn applicable(sys: &SetSystem, max_join_d: usize) -> Vec<(Reduction, usize)> {
    let mut out = Vec::new();
    for r in registry() {
        if !r.from.contains(&sys.variant()) {
            continue;
        }
        match r.param {
            None => out.push((r, 0)),
            Some("block") => {
                for b in [1, 2, 3] {
                    out.push((r, b));
                }
            }
            Some(_) => {
                if sys.d() <= max_join_d {
                    out.push((r, 1));
                }
            }
        }
    }
    out
}
