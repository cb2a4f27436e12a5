//! Reductions between set-system variants. Reductions that emit several
//! instances are disjunctive: the input is a YES instance exactly when at
//! least one emitted instance is.

use super::join::{
    reduce_packing_sets_to_eq_packing, reduce_partition_sets_to_partition,
    reduce_partition_to_eq_partition, JOIN_UNION_CAP,
};
use super::{elements, SetSystem, Variant};
use crate::error::{Error, Result};

/// Lazily produced output instances.
pub type Emitted = Box<dyn Iterator<Item = Result<SetSystem>>>;

fn expect(sys: &SetSystem, allowed: &[Variant]) -> Result<()> {
    if allowed.contains(&sys.variant()) {
        Ok(())
    } else {
        Err(Error::Invalid(format!(
            "reduction does not accept {} instances",
            sys.variant()
        )))
    }
}

fn single(sys: Result<SetSystem>) -> Emitted {
    Box::new(std::iter::once(sys))
}

/// Largest set size whose subsets are enumerated when closing a cover
/// family downwards.
pub const SUBSET_CLOSURE_CAP: usize = 20;

/// Cover with at most `t` sets → partition into at most `t` sets: the new
/// family holds every nonempty subset of a member.
pub fn reduce_cover_to_partition_sets(sys: &SetSystem) -> Result<SetSystem> {
    expect(sys, &[Variant::CoverEq, Variant::CoverLe])?;
    let mut family = Vec::new();
    for &s in sys.sets() {
        let elems = elements(s);
        if elems.len() > SUBSET_CLOSURE_CAP {
            return Err(Error::too_large(
                "set size for subset closure",
                elems.len() as u64,
                SUBSET_CLOSURE_CAP as u64,
            ));
        }
        for pick in 1u32..1 << elems.len() {
            family.push(
                elems
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| pick >> i & 1 == 1)
                    .fold(0u128, |a, (_, &e)| a | 1 << e),
            );
        }
    }
    SetSystem::new(
        sys.n(),
        family,
        Variant::PartitionLeSets,
        sys.d(),
        sys.target(),
    )
}

/// Packing covering at least `t` elements → partition into few sets, one
/// instance per block signature.
///
/// The universe is padded to a multiple of `block` and cut into blocks; each
/// block gets a fresh element. For a signature `x` (an uncovered count per
/// block) the family is extended by every `x_i`-subset of block `i` joined
/// with that block's fresh element, so the fresh elements force exactly one
/// such set per block. Only signatures leaving at least `t` covered elements
/// are emitted, which makes the set-count target irrelevant; it is set to
/// the universe size.
pub fn reduce_packing_union_to_partition_sets(sys: &SetSystem, block: usize) -> Result<Emitted> {
    expect(sys, &[Variant::PackingLeUnion])?;
    if block == 0 {
        return Err(Error::Invalid("block size must be positive".into()));
    }
    let blocks = sys.n().div_ceil(block);
    let padded = blocks * block;
    let total = padded + blocks;
    if total > super::MAX_UNIVERSE {
        return Err(Error::too_large(
            "padded universe",
            total as u64,
            super::MAX_UNIVERSE as u64,
        ));
    }
    let t = sys.target().unwrap();
    let d = sys.d().max(block + 1);
    let base = sys.sets().to_vec();
    // Subsets of each block by size.
    let mut by_size: Vec<Vec<u128>> = vec![Vec::new(); block + 1];
    for pick in 0u32..1 << block {
        by_size[pick.count_ones() as usize].push(pick as u128);
    }
    let mut x = vec![0usize; blocks];
    let mut done = false;
    let iter = std::iter::from_fn(move || loop {
        if done {
            return None;
        }
        let current = x.clone();
        // Odometer step.
        done = true;
        for slot in x.iter_mut() {
            if *slot < block {
                *slot += 1;
                done = false;
                break;
            }
            *slot = 0;
        }
        if padded - current.iter().sum::<usize>() < t {
            continue;
        }
        let mut family = base.clone();
        for (i, &xi) in current.iter().enumerate() {
            let fresh = 1u128 << (padded + i);
            for &s in &by_size[xi] {
                if xi > 0 {
                    family.push(s << (i * block) | fresh);
                }
            }
            if xi == 0 {
                family.push(fresh);
            }
        }
        return Some(SetSystem::new(
            total,
            family,
            Variant::PartitionLeSets,
            d,
            Some(total),
        ));
    });
    Ok(Box::new(iter))
}

/// Partition into `d`-sets → partition into `3d`-sets: fresh `d`-sets are
/// added until the number of parts is a multiple of three, and the family
/// becomes all unions of three disjoint members.
pub fn pad_partition_mod3(sys: &SetSystem) -> Result<SetSystem> {
    expect(sys, &[Variant::PartitionEq])?;
    let d = sys.d();
    if d == 0 {
        return Err(Error::Invalid("set size must be positive".into()));
    }
    let extra = 3 - (sys.n() / d) % 3;
    let n = sys.n() + extra * d;
    if n > super::MAX_UNIVERSE {
        return Err(Error::too_large(
            "padded universe",
            n as u64,
            super::MAX_UNIVERSE as u64,
        ));
    }
    let mut members = sys.sets().to_vec();
    for j in 0..extra {
        members.push(((1u128 << d) - 1) << (sys.n() + j * d));
    }
    let mut family = Vec::new();
    let m = members.len();
    for a in 0..m {
        for b in a + 1..m {
            if members[a] & members[b] != 0 {
                continue;
            }
            for c in b + 1..m {
                if (members[a] | members[b]) & members[c] == 0 {
                    family.push(members[a] | members[b] | members[c]);
                    if family.len() as u64 > JOIN_UNION_CAP {
                        return Err(Error::CombinatorialBlowup {
                            cap: JOIN_UNION_CAP,
                        });
                    }
                }
            }
        }
    }
    SetSystem::new(n, family, Variant::PartitionEq, 3 * d, None)
}

pub fn cover_eq_to_cover_le(sys: &SetSystem) -> Result<SetSystem> {
    expect(sys, &[Variant::CoverEq])?;
    sys.with(Variant::CoverLe, sys.d(), sys.target())
}

pub fn packing_eq_to_packing_le(sys: &SetSystem) -> Result<SetSystem> {
    expect(sys, &[Variant::PackingEqSets])?;
    sys.with(Variant::PackingLeSets, sys.d(), sys.target())
}

/// `t` disjoint `d`-sets exactly when the disjoint sets cover `t*d` elements.
pub fn packing_eq_to_union(sys: &SetSystem) -> Result<SetSystem> {
    expect(sys, &[Variant::PackingEqSets])?;
    sys.with(
        Variant::PackingLeUnion,
        sys.d(),
        Some(sys.target().unwrap() * sys.d()),
    )
}

/// A partition into `d`-sets is a packing of `n/d` sets; when `d` does not
/// divide `n` the target `ceil(n/d)` is unreachable, as it should be.
pub fn partition_eq_to_packing_eq(sys: &SetSystem) -> Result<SetSystem> {
    expect(sys, &[Variant::PartitionEq])?;
    let d = sys.d().max(1);
    sys.with(Variant::PackingEqSets, sys.d(), Some(sys.n().div_ceil(d)))
}

/// A partition into `d`-sets is a cover by `n/d` sets; when `d` does not
/// divide `n` the target `floor(n/d)` is unreachable.
pub fn partition_eq_to_cover_eq(sys: &SetSystem) -> Result<SetSystem> {
    expect(sys, &[Variant::PartitionEq])?;
    let d = sys.d().max(1);
    sys.with(Variant::CoverEq, sys.d(), Some(sys.n() / d))
}

/// A named reduction. `param` is the block size or the join multiplier
/// where one is used, and ignored otherwise.
#[derive(Clone, Copy)]
pub struct Reduction {
    pub name: &'static str,
    pub from: &'static [Variant],
    pub to: Variant,
    /// Whether the reduction emits several instances (disjunctively).
    pub multi: bool,
    pub param: Option<&'static str>,
    pub run: fn(&SetSystem, usize) -> Result<Emitted>,
}

/// Every set-system reduction, by name.
pub fn registry() -> Vec<Reduction> {
    vec![
        Reduction {
            name: "cover-to-partition-sets",
            from: &[Variant::CoverEq, Variant::CoverLe],
            to: Variant::PartitionLeSets,
            multi: false,
            param: None,
            run: |s, _| Ok(single(reduce_cover_to_partition_sets(s))),
        },
        Reduction {
            name: "union-packing-to-partition-sets",
            from: &[Variant::PackingLeUnion],
            to: Variant::PartitionLeSets,
            multi: true,
            param: Some("block"),
            run: reduce_packing_union_to_partition_sets,
        },
        Reduction {
            name: "partition-sets-to-partition",
            from: &[Variant::PartitionLeSets],
            to: Variant::PartitionLe,
            multi: true,
            param: Some("multiplier"),
            run: reduce_partition_sets_to_partition,
        },
        Reduction {
            name: "partition-to-eq-partition",
            from: &[Variant::PartitionLe],
            to: Variant::PartitionEq,
            multi: true,
            param: Some("multiplier"),
            run: reduce_partition_to_eq_partition,
        },
        Reduction {
            name: "packing-sets-to-eq-packing",
            from: &[Variant::PackingLeSets],
            to: Variant::PackingEqSets,
            multi: true,
            param: Some("multiplier"),
            run: reduce_packing_sets_to_eq_packing,
        },
        Reduction {
            name: "pad-partition-mod3",
            from: &[Variant::PartitionEq],
            to: Variant::PartitionEq,
            multi: false,
            param: None,
            run: |s, _| Ok(single(pad_partition_mod3(s))),
        },
        Reduction {
            name: "cover-eq-to-cover-le",
            from: &[Variant::CoverEq],
            to: Variant::CoverLe,
            multi: false,
            param: None,
            run: |s, _| Ok(single(cover_eq_to_cover_le(s))),
        },
        Reduction {
            name: "packing-eq-to-packing-le",
            from: &[Variant::PackingEqSets],
            to: Variant::PackingLeSets,
            multi: false,
            param: None,
            run: |s, _| Ok(single(packing_eq_to_packing_le(s))),
        },
        Reduction {
            name: "packing-eq-to-union",
            from: &[Variant::PackingEqSets],
            to: Variant::PackingLeUnion,
            multi: false,
            param: None,
            run: |s, _| Ok(single(packing_eq_to_union(s))),
        },
        Reduction {
            name: "partition-eq-to-packing-eq",
            from: &[Variant::PartitionEq],
            to: Variant::PackingEqSets,
            multi: false,
            param: None,
            run: |s, _| Ok(single(partition_eq_to_packing_eq(s))),
        },
        Reduction {
            name: "partition-eq-to-cover-eq",
            from: &[Variant::PartitionEq],
            to: Variant::CoverEq,
            multi: false,
            param: None,
            run: |s, _| Ok(single(partition_eq_to_cover_eq(s))),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setsys::oracle_set;

    #[test]
    fn block_trick_counterexample_is_handled() {
        // U = {1,2}, F = {{1}}: the best packing covers one element, so a
        // union target of 3 must be rejected for every block signature.
        let sys = SetSystem::new(2, vec![0b01], Variant::PackingLeUnion, 1, Some(3)).unwrap();
        let out: Vec<_> = reduce_packing_union_to_partition_sets(&sys, 2)
            .unwrap()
            .collect();
        assert!(out
            .into_iter()
            .all(|s| !oracle_set(&s.unwrap()).unwrap().verdict));
        let sys = sys.with(Variant::PackingLeUnion, 1, Some(1)).unwrap();
        let out: Vec<_> = reduce_packing_union_to_partition_sets(&sys, 2)
            .unwrap()
            .collect();
        assert!(out
            .into_iter()
            .any(|s| oracle_set(&s.unwrap()).unwrap().verdict));
    }

    #[test]
    fn padding_makes_part_count_divisible_by_three() {
        let sys = SetSystem::new(
            4,
            vec![0b0011, 0b1100, 0b0110],
            Variant::PartitionEq,
            2,
            None,
        )
        .unwrap();
        let padded = pad_partition_mod3(&sys).unwrap();
        assert_eq!(padded.n() % 6, 0);
        assert!(oracle_set(&padded).unwrap().verdict);
    }
}
