//! Set cover, packing and partition problems over small universes, their
//! oracles, and the reductions between the variants.
//!
//! Sets are bitmasks over the universe `0..n` (`n <= 128`); families are
//! sorted and deduplicated.

pub mod audit;
mod join;
mod oracle;
mod reductions;

pub use join::{
    build_join_instance, join_layout, reduce_packing_sets_to_eq_packing,
    reduce_partition_sets_to_partition, reduce_partition_to_eq_partition, signature_count,
    signatures, JoinInstance, SizeSignature, JOIN_UNION_CAP,
};
pub use oracle::{decide, oracle_naive, oracle_set, solve_exact, SetAnswer, DP_CAP, NAIVE_CAP};
pub use reductions::{
    cover_eq_to_cover_le, packing_eq_to_packing_le, packing_eq_to_union, pad_partition_mod3,
    partition_eq_to_cover_eq, partition_eq_to_packing_eq, reduce_cover_to_partition_sets,
    reduce_packing_union_to_partition_sets, registry, Emitted, Reduction,
};

use crate::error::{Error, Result};
use crate::graph::parse_num;
use std::fmt::Write as _;
use std::str::FromStr;

/// Largest supported universe.
pub const MAX_UNIVERSE: usize = 128;

/// The eight problem variants. `Eq`/`Le` refers to the set sizes (exactly
/// `d` or at most `d`); the suffix names the objective.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Cover with at most `t` sets, all of size `d`.
    CoverEq,
    /// Cover with at most `t` sets of size at most `d`.
    CoverLe,
    /// Partition into sets of size `d`.
    PartitionEq,
    /// Partition into sets of size at most `d`.
    PartitionLe,
    /// Partition into at most `t` sets of size at most `d`.
    PartitionLeSets,
    /// Packing of at least `t` sets of size `d`.
    PackingEqSets,
    /// Packing of at least `t` sets of size at most `d`.
    PackingLeSets,
    /// Packing of sets of size at most `d` covering at least `t` elements.
    PackingLeUnion,
}

impl Variant {
    pub const ALL: [Variant; 8] = [
        Variant::CoverEq,
        Variant::CoverLe,
        Variant::PartitionEq,
        Variant::PartitionLe,
        Variant::PartitionLeSets,
        Variant::PackingEqSets,
        Variant::PackingLeSets,
        Variant::PackingLeUnion,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Variant::CoverEq => "cover-eq",
            Variant::CoverLe => "cover-le",
            Variant::PartitionEq => "partition-eq",
            Variant::PartitionLe => "partition-le",
            Variant::PartitionLeSets => "partition-le-sets",
            Variant::PackingEqSets => "packing-eq-sets",
            Variant::PackingLeSets => "packing-le-sets",
            Variant::PackingLeUnion => "packing-le-union",
        }
    }

    /// Whether every set must have size exactly `d`.
    pub fn uniform(self) -> bool {
        matches!(
            self,
            Variant::CoverEq | Variant::PartitionEq | Variant::PackingEqSets
        )
    }

    pub fn has_target(self) -> bool {
        !matches!(self, Variant::PartitionEq | Variant::PartitionLe)
    }

    /// Cover and partition variants expect the family to cover the universe.
    pub fn needs_covering(self) -> bool {
        matches!(
            self,
            Variant::CoverEq
                | Variant::CoverLe
                | Variant::PartitionEq
                | Variant::PartitionLe
                | Variant::PartitionLeSets
        )
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.tag() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown variant `{s}`")))
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// A set system together with the question asked about it.
///
/// Size constraints are enforced on construction. The covering invariant
/// (`U` is the union of the family) is checked separately by
/// [`SetSystem::check_covering`], since several reductions legitimately
/// produce instances where it fails (they are then NO instances).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetSystem {
    n: usize,
    sets: Vec<u128>,
    variant: Variant,
    d: usize,
    target: Option<usize>,
}

pub fn universe_mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

impl SetSystem {
    pub fn new(
        n: usize,
        sets: Vec<u128>,
        variant: Variant,
        d: usize,
        target: Option<usize>,
    ) -> Result<Self> {
        if n > MAX_UNIVERSE {
            return Err(Error::too_large("universe", n as u64, MAX_UNIVERSE as u64));
        }
        let mut sets = sets;
        sets.sort_unstable();
        sets.dedup();
        let full = universe_mask(n);
        for &s in &sets {
            if s == 0 {
                return Err(Error::Invalid("the family contains the empty set".into()));
            }
            if s & !full != 0 {
                return Err(Error::Invalid(
                    "a set has an element outside the universe".into(),
                ));
            }
            let size = s.count_ones() as usize;
            if (variant.uniform() && size != d) || size > d {
                return Err(Error::Invalid(format!(
                    "set of size {size} violates the size bound d={d} of {variant}"
                )));
            }
        }
        if variant.has_target() != target.is_some() {
            return Err(Error::Invalid(format!(
                "{variant} {} a target",
                if variant.has_target() {
                    "needs"
                } else {
                    "takes no"
                }
            )));
        }
        Ok(Self {
            n,
            sets,
            variant,
            d,
            target,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[u128] {
        &self.sets
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn target(&self) -> Option<usize> {
        self.target
    }

    /// Same family and universe, another question.
    pub fn with(&self, variant: Variant, d: usize, target: Option<usize>) -> Result<Self> {
        Self::new(self.n, self.sets.clone(), variant, d, target)
    }

    pub fn union(&self) -> u128 {
        self.sets.iter().fold(0, |a, &s| a | s)
    }

    pub fn covers_universe(&self) -> bool {
        self.union() == universe_mask(self.n)
    }

    /// Fails if a cover or partition variant does not cover its universe.
    pub fn check_covering(&self) -> Result<()> {
        if self.variant.needs_covering() && !self.covers_universe() {
            return Err(Error::Invalid(
                "the family does not cover the universe".into(),
            ));
        }
        Ok(())
    }

    /// Checks that the chosen sets (indices into `sets()`) answer the
    /// question positively.
    pub fn verify_witness(&self, chosen: &[usize]) -> std::result::Result<(), String> {
        let mut seen = 0u128;
        let mut disjoint = true;
        let mut idx: Vec<usize> = chosen.to_vec();
        idx.sort_unstable();
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return Err("a set is chosen twice".into());
        }
        for &i in &idx {
            let s = *self.sets.get(i).ok_or("witness index out of range")?;
            disjoint &= seen & s == 0;
            seen |= s;
        }
        let k = idx.len();
        let covered = seen.count_ones() as usize;
        let full = seen == universe_mask(self.n);
        let t = self.target.unwrap_or(0);
        let ok = match self.variant {
            Variant::CoverEq | Variant::CoverLe => full && k <= t,
            Variant::PartitionEq | Variant::PartitionLe => full && disjoint,
            Variant::PartitionLeSets => full && disjoint && k <= t,
            Variant::PackingEqSets | Variant::PackingLeSets => disjoint && k >= t,
            Variant::PackingLeUnion => disjoint && covered >= t,
        };
        if ok {
            Ok(())
        } else {
            Err(format!(
                "witness does not certify the {} question",
                self.variant
            ))
        }
    }
}

/// Parses `u <n>`, `s <e1> <e2> ...` (1-based), optional `t <target>`,
/// `variant <tag>` and optional `d <bound>` (default: largest set size).
pub fn parse_set_system(text: &str) -> Result<SetSystem> {
    let mut n = None;
    let mut sets = Vec::new();
    let mut target = None;
    let mut variant = None;
    let mut d = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tok = raw.split_whitespace();
        let Some(head) = tok.next() else { continue };
        let rest: Vec<&str> = tok.collect();
        let one = |what: &str| -> Result<usize> {
            match rest.as_slice() {
                [x] => parse_num(x, line),
                _ => Err(Error::parse(line, format!("expected `{what} <number>`"))),
            }
        };
        match head {
            "#" | "c" => {}
            "u" => n = Some(one("u")?),
            "t" => target = Some(one("t")?),
            "d" => d = Some(one("d")?),
            "variant" => {
                let [tag] = rest.as_slice() else {
                    return Err(Error::parse(line, "expected `variant <tag>`"));
                };
                variant = Some(
                    tag.parse::<Variant>()
                        .map_err(|e| Error::parse(line, e.to_string()))?,
                );
            }
            "s" => {
                let Some(nv) = n else {
                    return Err(Error::parse(line, "set before `u` line"));
                };
                let mut s = 0u128;
                for t in rest {
                    let e: usize = parse_num(t, line)?;
                    if e == 0 || e > nv {
                        return Err(Error::parse(line, "element out of range"));
                    }
                    s |= 1 << (e - 1);
                }
                sets.push(s);
            }
            other => return Err(Error::parse(line, format!("unknown line type `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| Error::parse(0, "missing `u <n>` line"))?;
    let variant = variant.ok_or_else(|| Error::parse(0, "missing `variant` line"))?;
    let d = d.unwrap_or_else(|| {
        sets.iter()
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    });
    SetSystem::new(n, sets, variant, d, target)
}

pub fn write_set_system(sys: &SetSystem) -> String {
    let mut out = format!("u {}\nvariant {}\nd {}\n", sys.n, sys.variant, sys.d);
    if let Some(t) = sys.target {
        writeln!(out, "t {t}").unwrap();
    }
    for &s in &sys.sets {
        let elems: Vec<String> = (0..sys.n)
            .filter(|&e| s >> e & 1 == 1)
            .map(|e| (e + 1).to_string())
            .collect();
        writeln!(out, "s {}", elems.join(" ")).unwrap();
    }
    out
}

/// Elements of a set, increasing.
pub fn elements(s: u128) -> Vec<usize> {
    (0..128).filter(|&e| s >> e & 1 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(SetSystem::new(3, vec![0b011, 0b110], Variant::CoverLe, 2, Some(2)).is_ok());
        assert!(SetSystem::new(3, vec![0b011, 0b100], Variant::CoverEq, 2, Some(2)).is_err());
        assert!(SetSystem::new(3, vec![0b1000], Variant::CoverLe, 2, Some(2)).is_err());
        assert!(SetSystem::new(3, vec![0b011], Variant::PartitionLe, 2, Some(1)).is_err());
        let s = SetSystem::new(3, vec![0b011], Variant::PartitionLe, 2, None).unwrap();
        assert!(s.check_covering().is_err());
    }

    #[test]
    fn format_round_trip() {
        let s = SetSystem::new(
            4,
            vec![0b0011, 0b1100, 0b0101],
            Variant::PartitionEq,
            2,
            None,
        )
        .unwrap();
        assert_eq!(parse_set_system(&write_set_system(&s)).unwrap(), s);
        assert!(parse_set_system("u 2\nvariant cover-le\nt 1\ns 3\n").is_err());
    }
}
