//! Exact answers for set systems: a subset DP over the universe, a naive
//! subfamily enumeration, and a branch-and-bound search for universes too
//! large for the DP.

use super::{universe_mask, SetSystem, Variant};
use crate::error::{Error, Result};

/// Largest universe handled by the subset DP.
pub const DP_CAP: usize = 20;
/// Largest family handled by the naive subfamily enumeration.
pub const NAIVE_CAP: usize = 20;
/// Node budget of the branch-and-bound search.
pub const SEARCH_NODE_CAP: u64 = 200_000_000;

/// The optimum of the objective behind a variant and the resulting verdict.
///
/// `optimum` is the fewest sets of a cover (cover variants), the fewest sets
/// of a partition (partition variants), the most disjoint sets (set-count
/// packings) or the largest union of disjoint sets (union packing); `None`
/// when no cover or partition exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SetAnswer {
    pub verdict: bool,
    pub optimum: Option<usize>,
}

fn verdict(sys: &SetSystem, optimum: Option<usize>) -> bool {
    let t = sys.target();
    match (sys.variant(), optimum) {
        (_, None) => false,
        (Variant::CoverEq | Variant::CoverLe | Variant::PartitionLeSets, Some(k)) => {
            k <= t.unwrap()
        }
        (Variant::PartitionEq | Variant::PartitionLe, Some(_)) => true,
        (Variant::PackingEqSets | Variant::PackingLeSets | Variant::PackingLeUnion, Some(k)) => {
            k >= t.unwrap()
        }
    }
}

/// Subset DP over the universe (`n <= DP_CAP`).
pub fn oracle_set(sys: &SetSystem) -> Result<SetAnswer> {
    let n = sys.n();
    if n > DP_CAP {
        return Err(Error::too_large(
            "universe for the subset DP",
            n as u64,
            DP_CAP as u64,
        ));
    }
    let sets: Vec<usize> = sys.sets().iter().map(|&s| s as usize).collect();
    let full = (1usize << n) - 1;
    const NONE: u8 = u8::MAX;
    let size = 1usize << n;
    let optimum = match sys.variant() {
        Variant::CoverEq | Variant::CoverLe => {
            let mut dp = vec![NONE; size];
            dp[0] = 0;
            for m in 1..size {
                let low = m & m.wrapping_neg();
                for &s in &sets {
                    if s & low != 0 && dp[m & !s] != NONE {
                        dp[m] = dp[m].min(dp[m & !s] + 1);
                    }
                }
            }
            (dp[full] != NONE).then(|| dp[full] as usize)
        }
        Variant::PartitionEq | Variant::PartitionLe | Variant::PartitionLeSets => {
            let mut dp = vec![NONE; size];
            dp[0] = 0;
            for m in 1..size {
                let low = m & m.wrapping_neg();
                for &s in &sets {
                    if s & low != 0 && s & !m == 0 && dp[m ^ s] != NONE {
                        dp[m] = dp[m].min(dp[m ^ s] + 1);
                    }
                }
            }
            (dp[full] != NONE).then(|| dp[full] as usize)
        }
        Variant::PackingEqSets | Variant::PackingLeSets | Variant::PackingLeUnion => {
            let union = sys.variant() == Variant::PackingLeUnion;
            let mut dp = vec![0u8; size];
            for m in 1..size {
                let low = m & m.wrapping_neg();
                let mut best = dp[m ^ low];
                for &s in &sets {
                    if s & low != 0 && s & !m == 0 {
                        let gain = if union { s.count_ones() as u8 } else { 1 };
                        best = best.max(dp[m ^ s] + gain);
                    }
                }
                dp[m] = best;
            }
            Some(dp[full] as usize)
        }
    };
    Ok(SetAnswer {
        verdict: verdict(sys, optimum),
        optimum,
    })
}

/// Enumerates every subfamily (`|F| <= NAIVE_CAP`).
pub fn oracle_naive(sys: &SetSystem) -> Result<SetAnswer> {
    let sets = sys.sets();
    if sets.len() > NAIVE_CAP {
        return Err(Error::too_large(
            "family for subfamily enumeration",
            sets.len() as u64,
            NAIVE_CAP as u64,
        ));
    }
    let full = universe_mask(sys.n());
    let mut optimum: Option<usize> = None;
    for pick in 0u32..1 << sets.len() {
        let mut union = 0u128;
        let mut total = 0usize;
        for (i, &s) in sets.iter().enumerate() {
            if pick >> i & 1 == 1 {
                union |= s;
                total += s.count_ones() as usize;
            }
        }
        let k = pick.count_ones() as usize;
        let disjoint = total == union.count_ones() as usize;
        let value = match sys.variant() {
            Variant::CoverEq | Variant::CoverLe => (union == full).then_some(k),
            Variant::PartitionEq | Variant::PartitionLe | Variant::PartitionLeSets => {
                (union == full && disjoint).then_some(k)
            }
            Variant::PackingEqSets | Variant::PackingLeSets => disjoint.then_some(k),
            Variant::PackingLeUnion => disjoint.then_some(total),
        };
        let minimize = !matches!(
            sys.variant(),
            Variant::PackingEqSets | Variant::PackingLeSets | Variant::PackingLeUnion
        );
        if let Some(v) = value {
            optimum = Some(match optimum {
                None => v,
                Some(o) if minimize => o.min(v),
                Some(o) => o.max(v),
            });
        }
    }
    Ok(SetAnswer {
        verdict: verdict(sys, optimum),
        optimum,
    })
}

/// Decides the instance by branch and bound over the elements and returns a
/// witness (indices into `sets()`) for YES instances. Works for any universe
/// size; fails only when the node budget is exhausted.
pub fn solve_exact(sys: &SetSystem) -> Result<Option<Vec<usize>>> {
    let mut by_elem = vec![Vec::new(); sys.n()];
    for (i, &s) in sys.sets().iter().enumerate() {
        for e in super::elements(s) {
            by_elem[e].push(i);
        }
    }
    let sizes = sys.sets().iter().map(|s| s.count_ones() as usize);
    let mut search = Search {
        sets: sys.sets(),
        by_elem,
        max_size: sizes.clone().max().unwrap_or(1),
        min_size: sizes.min().unwrap_or(1),
        chosen: Vec::new(),
        nodes: 0,
    };
    let full = universe_mask(sys.n());
    let t = sys.target().unwrap_or(usize::MAX);
    let found = match sys.variant() {
        Variant::CoverEq | Variant::CoverLe => search.cover(0, full, t, false)?,
        Variant::PartitionEq | Variant::PartitionLe | Variant::PartitionLeSets => {
            search.cover(0, full, t, true)?
        }
        Variant::PackingEqSets | Variant::PackingLeSets => search.pack(full, 0, t, false)?,
        Variant::PackingLeUnion => search.pack(full, 0, t, true)?,
    };
    Ok(found.then_some(search.chosen))
}

/// Decision only, by the branch-and-bound search (faster than the DP on
/// every size measured, and independent of it).
pub fn decide(sys: &SetSystem) -> Result<bool> {
    Ok(solve_exact(sys)?.is_some())
}

struct Search<'a> {
    sets: &'a [u128],
    by_elem: Vec<Vec<usize>>,
    max_size: usize,
    min_size: usize,
    chosen: Vec<usize>,
    nodes: u64,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > SEARCH_NODE_CAP {
            return Err(Error::too_large(
                "set-system search nodes",
                self.nodes,
                SEARCH_NODE_CAP,
            ));
        }
        Ok(())
    }

    /// Covers (or, with `disjoint`, partitions) `full` with at most `t`
    /// sets, branching on the uncovered element with the fewest options.
    fn cover(&mut self, covered: u128, full: u128, t: usize, disjoint: bool) -> Result<bool> {
        self.tick()?;
        let open = full & !covered;
        if open == 0 {
            return Ok(true);
        }
        let need = (open.count_ones() as usize).div_ceil(self.max_size);
        if self.chosen.len().saturating_add(need) > t {
            return Ok(false);
        }
        let usable = |s: u128| !disjoint || s & covered == 0;
        let mut best: Option<(usize, usize)> = None;
        for e in super::elements(open) {
            let count = self.by_elem[e]
                .iter()
                .filter(|&&i| usable(self.sets[i]))
                .count();
            if best.is_none_or(|(c, _)| count < c) {
                best = Some((count, e));
                if count == 0 {
                    return Ok(false);
                }
            }
        }
        let e = best.unwrap().1;
        let options: Vec<usize> = self.by_elem[e]
            .iter()
            .copied()
            .filter(|&i| usable(self.sets[i]))
            .collect();
        for i in options {
            self.chosen.push(i);
            if self.cover(covered | self.sets[i], full, t, disjoint)? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }

    /// Finds disjoint sets inside `avail` reaching `t` sets (or `t` covered
    /// elements with `by_union`); each element is either covered by one of
    /// its sets or dropped.
    fn pack(&mut self, avail: u128, covered: usize, t: usize, by_union: bool) -> Result<bool> {
        self.tick()?;
        let score = if by_union { covered } else { self.chosen.len() };
        if score >= t {
            return Ok(true);
        }
        let room = avail.count_ones() as usize;
        let potential = if by_union { room } else { room / self.min_size };
        if score + potential < t {
            return Ok(false);
        }
        let mut best: Option<(usize, usize)> = None;
        for e in super::elements(avail) {
            let count = self.by_elem[e]
                .iter()
                .filter(|&&i| self.sets[i] & !avail == 0)
                .count();
            if best.is_none_or(|(c, _)| count < c) {
                best = Some((count, e));
                if count == 0 {
                    break;
                }
            }
        }
        let Some((_, e)) = best else { return Ok(false) };
        let options: Vec<usize> = self.by_elem[e]
            .iter()
            .copied()
            .filter(|&i| self.sets[i] & !avail == 0)
            .collect();
        for i in options {
            let s = self.sets[i];
            self.chosen.push(i);
            if self.pack(avail & !s, covered + s.count_ones() as usize, t, by_union)? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        self.pack(avail & !(1u128 << e), covered, t, by_union)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(n: usize, sets: &[u128], v: Variant, t: Option<usize>) -> SetSystem {
        let d = sets
            .iter()
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(1);
        SetSystem::new(n, sets.to_vec(), v, d, t).unwrap()
    }

    #[test]
    fn small_examples() {
        let s = sys(4, &[0b0011, 0b0110, 0b1100], Variant::CoverLe, Some(2));
        assert_eq!(
            oracle_set(&s).unwrap(),
            SetAnswer {
                verdict: true,
                optimum: Some(2)
            }
        );
        let p = sys(4, &[0b0011, 0b0110, 0b1100], Variant::PartitionLe, None);
        assert!(oracle_set(&p).unwrap().verdict);
        let p = sys(3, &[0b011, 0b110], Variant::PartitionLe, None);
        assert_eq!(
            oracle_set(&p).unwrap(),
            SetAnswer {
                verdict: false,
                optimum: None
            }
        );
        let k = sys(
            5,
            &[0b00011, 0b00110, 0b11000],
            Variant::PackingLeSets,
            Some(2),
        );
        assert_eq!(oracle_set(&k).unwrap().optimum, Some(2));
        let u = sys(
            5,
            &[0b00111, 0b01100, 0b11000],
            Variant::PackingLeUnion,
            Some(5),
        );
        assert_eq!(
            oracle_set(&u).unwrap(),
            SetAnswer {
                verdict: true,
                optimum: Some(5)
            }
        );
        for s in [&s, &k, &u] {
            assert_eq!(oracle_naive(s).unwrap(), oracle_set(s).unwrap());
            let w = solve_exact(s).unwrap().unwrap();
            s.verify_witness(&w).unwrap();
        }
        assert_eq!(solve_exact(&p).unwrap(), None);
    }
}
