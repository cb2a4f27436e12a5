//! Join instances: given how many sets of each size a solution should use,
//! glue the sets of each size into uniform blocks guarded by fresh elements,
//! so that every set of the new family has the same size `c*d! + 1`.

use super::reductions::Emitted;
use super::{elements, SetSystem, Variant, MAX_UNIVERSE};
use crate::error::{Error, Result};

/// Most candidate unions enumerated while building one join instance.
pub const JOIN_UNION_CAP: u64 = 1_000_000;

/// How many sets of each size (`counts[i-1]` sets of size `i`) a solution
/// uses.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SizeSignature {
    pub counts: Vec<usize>,
}

impl SizeSignature {
    /// Total number of sets.
    pub fn weight(&self) -> usize {
        self.counts.iter().sum()
    }
}

fn size_classes(sys: &SetSystem) -> Vec<usize> {
    let mut classes = vec![0usize; sys.d()];
    for &s in sys.sets() {
        classes[s.count_ones() as usize - 1] += 1;
    }
    classes
}

/// Number of valid signatures: at most `|F_i|` sets of size `i` and at most
/// `n` sets in total.
pub fn signature_count(sys: &SetSystem) -> u128 {
    let classes = size_classes(sys);
    // ways[w] = signatures over the classes seen so far with weight w.
    let mut ways = vec![0u128; sys.n() + 1];
    ways[0] = 1;
    for &c in &classes {
        let mut next = vec![0u128; sys.n() + 1];
        for (w, &k) in ways.iter().enumerate() {
            for r in 0..=c.min(sys.n() - w) {
                next[w + r] = next[w + r].saturating_add(k);
            }
        }
        ways = next;
    }
    ways.iter().fold(0u128, |a, &k| a.saturating_add(k))
}

/// Every valid signature, in lexicographic order.
pub fn signatures(sys: &SetSystem) -> Vec<SizeSignature> {
    let classes = size_classes(sys);
    let mut out = Vec::new();
    let mut counts = vec![0usize; classes.len()];
    fn rec(
        classes: &[usize],
        i: usize,
        left: usize,
        counts: &mut Vec<usize>,
        out: &mut Vec<SizeSignature>,
    ) {
        if i == classes.len() {
            out.push(SizeSignature {
                counts: counts.clone(),
            });
            return;
        }
        for r in 0..=classes[i].min(left) {
            counts[i] = r;
            rec(classes, i + 1, left - r, counts, out);
        }
        counts[i] = 0;
    }
    rec(&classes, 0, sys.n(), &mut counts, &mut out);
    out
}

/// A join instance: universe `0..n` holding the original elements first,
/// then the dummy elements, then the guard elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinInstance {
    pub n: usize,
    pub sets: Vec<u128>,
    /// Packing size that certifies the signature.
    pub alpha: usize,
    /// Elements of the dummy sets padding each size class.
    pub dummies: u128,
    /// One fresh element per block; each new set holds exactly one.
    pub guards: u128,
    /// Common size of every new set, `c*d! + 1`.
    pub set_size: usize,
}

impl JoinInstance {
    pub fn system(&self, variant: Variant, target: Option<usize>) -> Result<SetSystem> {
        SetSystem::new(self.n, self.sets.clone(), variant, self.set_size, target)
    }
}

fn factorial(d: usize) -> Option<usize> {
    (1..=d).try_fold(1usize, |a, k| a.checked_mul(k))
}

/// Builds the join instance of `sys` for `signature` with multiplier `c`.
///
/// For each size `i` with `r_i > 0`, the `r_i` wanted sets are topped up
/// with fresh dummy `i`-sets to `s_i = ceil(r_i/a_i)*a_i` where
/// `a_i = c*d!/i`; blocks are unions of `a_i` pairwise disjoint sets of size
/// `i` (real or dummy), and each of the `s_i/a_i` guard elements of size `i`
/// is joined with every block.
pub fn build_join_instance(
    sys: &SetSystem,
    c: usize,
    signature: &SizeSignature,
) -> Result<JoinInstance> {
    let d = sys.d();
    if c == 0 || d == 0 {
        return Err(Error::Invalid(
            "join needs a positive multiplier and set size".into(),
        ));
    }
    if signature.counts.len() != d {
        return Err(Error::Invalid(
            "signature length differs from the size bound".into(),
        ));
    }
    let block = factorial(d)
        .and_then(|f| f.checked_mul(c))
        .filter(|&b| b < MAX_UNIVERSE)
        .ok_or_else(|| {
            Error::ParamsTooLarge(format!(
                "block size c*d! for c={c}, d={d} exceeds {}",
                MAX_UNIVERSE - 1
            ))
        })?;
    let classes = size_classes(sys);
    for (i, (&r, &have)) in signature.counts.iter().zip(&classes).enumerate() {
        if r > have {
            return Err(Error::Invalid(format!(
                "signature wants {r} sets of size {} but only {have} exist",
                i + 1
            )));
        }
    }
    // Lay out dummy and guard elements.
    let mut next = sys.n();
    let mut plan = Vec::new();
    for (idx, &r) in signature.counts.iter().enumerate() {
        if r == 0 {
            continue;
        }
        let size = idx + 1;
        let per_block = block / size;
        let groups = r.div_ceil(per_block);
        let dummies = groups * per_block - r;
        plan.push((size, per_block, groups, dummies));
        next += dummies * size;
    }
    let guard_start = next;
    next += plan.iter().map(|p| p.2).sum::<usize>();
    if next > MAX_UNIVERSE {
        return Err(Error::too_large(
            "join universe",
            next as u64,
            MAX_UNIVERSE as u64,
        ));
    }

    let mut sets = Vec::new();
    let mut dummy_mask = 0u128;
    let mut guard_mask = 0u128;
    let mut cursor = sys.n();
    let mut guard = guard_start;
    let mut work = 0u64;
    for &(size, per_block, groups, dummies) in &plan {
        let mut pieces: Vec<u128> = sys
            .sets()
            .iter()
            .copied()
            .filter(|s| s.count_ones() as usize == size)
            .collect();
        for _ in 0..dummies {
            let piece = ((1u128 << size) - 1) << cursor;
            cursor += size;
            dummy_mask |= piece;
            pieces.push(piece);
        }
        let mut unions = Vec::new();
        disjoint_unions(&pieces, per_block, 0, 0, 0, &mut unions, &mut work)?;
        unions.sort_unstable();
        unions.dedup();
        for _ in 0..groups {
            let g = 1u128 << guard;
            guard += 1;
            guard_mask |= g;
            sets.extend(unions.iter().map(|u| u | g));
        }
    }
    sets.sort_unstable();
    Ok(JoinInstance {
        n: next,
        sets,
        alpha: plan.iter().map(|p| p.2).sum(),
        dummies: dummy_mask,
        guards: guard_mask,
        set_size: block + 1,
    })
}

fn disjoint_unions(
    pieces: &[u128],
    want: usize,
    from: usize,
    acc: u128,
    taken: usize,
    out: &mut Vec<u128>,
    work: &mut u64,
) -> Result<()> {
    if taken == want {
        out.push(acc);
        return Ok(());
    }
    if pieces.len() - from < want - taken {
        return Ok(());
    }
    for i in from..pieces.len() {
        if pieces[i] & acc == 0 {
            *work += 1;
            if *work > JOIN_UNION_CAP {
                return Err(Error::CombinatorialBlowup {
                    cap: JOIN_UNION_CAP,
                });
            }
            disjoint_unions(pieces, want, i + 1, acc | pieces[i], taken + 1, out, work)?;
        }
    }
    Ok(())
}

fn join_iter(
    sys: &SetSystem,
    c: usize,
    keep: impl Fn(&SizeSignature) -> bool,
    emit: fn(JoinInstance) -> Result<SetSystem>,
) -> Result<Emitted> {
    if sys.d() == 0 {
        // Empty family: the only signature is empty and the join is the
        // universe with no sets.
        let sys = sys.clone();
        let sig = SizeSignature { counts: Vec::new() };
        let inst = JoinInstance {
            n: sys.n(),
            sets: Vec::new(),
            alpha: 0,
            dummies: 0,
            guards: 0,
            set_size: 1,
        };
        return Ok(Box::new(keep(&sig).then(|| emit(inst)).into_iter()));
    }
    let sys = sys.clone();
    let sigs: Vec<SizeSignature> = signatures(&sys).into_iter().filter(keep).collect();
    Ok(Box::new(
        sigs.into_iter()
            .map(move |sig| emit(build_join_instance(&sys, c, &sig)?)),
    ))
}

fn expect(sys: &SetSystem, v: Variant) -> Result<()> {
    if sys.variant() == v {
        Ok(())
    } else {
        Err(Error::Invalid(format!(
            "reduction expects {v}, got {}",
            sys.variant()
        )))
    }
}

/// Partition into at most `t` sets → partition into uniform sets, one join
/// instance per signature of weight at most `t`.
pub fn reduce_partition_sets_to_partition(sys: &SetSystem, c: usize) -> Result<Emitted> {
    expect(sys, Variant::PartitionLeSets)?;
    let t = sys.target().unwrap();
    join_iter(
        sys,
        c,
        move |s| s.weight() <= t,
        |j| j.system(Variant::PartitionLe, None),
    )
}

/// Partition into sets of size at most `d` → partition into sets of size
/// exactly `c*d! + 1`, one join instance per signature.
pub fn reduce_partition_to_eq_partition(sys: &SetSystem, c: usize) -> Result<Emitted> {
    expect(sys, Variant::PartitionLe)?;
    join_iter(sys, c, |_| true, |j| j.system(Variant::PartitionEq, None))
}

/// Packing of at least `t` sets → packing of `alpha` uniform sets, one join
/// instance per signature of weight at least `t`. Any `alpha` disjoint new
/// sets use every guard, hence exactly the signature's sets of each size.
pub fn reduce_packing_sets_to_eq_packing(sys: &SetSystem, c: usize) -> Result<Emitted> {
    expect(sys, Variant::PackingLeSets)?;
    let t = sys.target().unwrap();
    join_iter(
        sys,
        c,
        move |s| s.weight() >= t,
        |j| {
            let alpha = j.alpha;
            j.system(Variant::PackingEqSets, Some(alpha))
        },
    )
}

/// Elements of a join instance grouped as (original, dummy, guard) counts.
pub fn join_layout(j: &JoinInstance) -> (usize, usize, usize) {
    let dummies = elements(j.dummies).len();
    let guards = elements(j.guards).len();
    (j.n - dummies - guards, dummies, guards)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setsys::{decide, oracle_set};

    #[test]
    fn signatures_are_counted() {
        let sys = SetSystem::new(
            4,
            vec![0b0001, 0b0010, 0b0011, 0b1100],
            Variant::PartitionLe,
            2,
            None,
        )
        .unwrap();
        let sigs = signatures(&sys);
        assert_eq!(sigs.len() as u128, signature_count(&sys));
        assert_eq!(sigs.len(), 9);
    }

    #[test]
    fn join_is_uniform_and_sound() {
        let sys = SetSystem::new(
            4,
            vec![0b0001, 0b0010, 0b1100, 0b0110],
            Variant::PartitionLe,
            2,
            None,
        )
        .unwrap();
        let sig = SizeSignature { counts: vec![2, 1] };
        let j = build_join_instance(&sys, 1, &sig).unwrap();
        assert!(j.sets.iter().all(|s| s.count_ones() == 3));
        assert_eq!(j.alpha, 2);
        assert_eq!(join_layout(&j), (4, 0, 2));
        assert!(decide(&j.system(Variant::PartitionEq, None).unwrap()).unwrap());
        let any = reduce_partition_to_eq_partition(&sys, 1)
            .unwrap()
            .map(|s| decide(&s.unwrap()).unwrap())
            .any(|b| b);
        assert_eq!(any, oracle_set(&sys).unwrap().verdict);
    }
}
