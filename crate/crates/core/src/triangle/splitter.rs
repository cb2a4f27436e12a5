//! Splitters: families of colorings of `[N]` with `ell` colors such that
//! every `p`-subset is colored as evenly as possible by some member.

use crate::error::{Error, Result};
use crate::gen::rng;
use rand::seq::SliceRandom;
use rand::Rng;

/// Most `p`-subsets the exhaustive backend will enumerate.
pub const SPLITTER_SUBSET_CAP: u128 = 200_000;
/// Candidate colorings tried per greedy step.
const GREEDY_CANDIDATES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitterBackend {
    /// Greedy cover of every `p`-subset; the property holds by construction.
    Exhaustive,
    /// Independent uniform colorings; `reps = None` picks the count from the
    /// balance probability so a fixed subset is missed with probability at
    /// most `2^-20`.
    MonteCarlo { reps: Option<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitterFamily {
    pub n: usize,
    pub p: usize,
    pub ell: usize,
    pub members: Vec<Vec<u8>>,
    pub backend: SplitterBackend,
    pub seed: u64,
}

impl SplitterFamily {
    /// Checks the splitter property over every `p`-subset.
    pub fn verify(&self) -> Result<bool> {
        let subsets = all_subsets(self.n, self.p)?;
        Ok(subsets
            .chunks(self.p.max(1))
            .all(|s| self.members.iter().any(|m| is_even_split(m, s, self.ell))))
    }
}

/// Whether `coloring` gives every color `floor` or `ceil` of `|subset|/ell`
/// elements of `subset` (which forces the exact counts).
pub fn is_even_split(coloring: &[u8], subset: &[u32], ell: usize) -> bool {
    let mut counts = [0usize; 256];
    for &e in subset {
        counts[coloring[e as usize] as usize] += 1;
    }
    let lo = subset.len() / ell;
    let hi = subset.len().div_ceil(ell);
    counts[..ell].iter().all(|&c| c == lo || c == hi)
}

fn count(n: usize, p: usize) -> u128 {
    (0..p as u128).fold(1u128, |acc, i| acc.saturating_mul(n as u128 - i) / (i + 1))
}

/// All `p`-subsets of `[n]`, flattened with stride `p`.
fn all_subsets(n: usize, p: usize) -> Result<Vec<u32>> {
    let total = count(n, p);
    if total > SPLITTER_SUBSET_CAP {
        return Err(Error::ParamsTooLarge(format!(
            "an exhaustive splitter for N={n}, p={p} would enumerate {total} subsets (cap {SPLITTER_SUBSET_CAP})"
        )));
    }
    let mut out = Vec::with_capacity(total as usize * p);
    let mut cur: Vec<u32> = (0..p as u32).collect();
    if p == 0 {
        return Ok(out);
    }
    loop {
        out.extend_from_slice(&cur);
        let mut i = p;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if (cur[i] as usize) < n - p + i {
                break;
            }
        }
        cur[i] += 1;
        for j in i + 1..p {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Probability that a uniform coloring splits a fixed `p`-set evenly.
fn balance_probability(p: usize, ell: usize) -> f64 {
    let lo = p / ell;
    let extra = p % ell;
    let ln_fact = |k: usize| (1..=k).map(|i| (i as f64).ln()).sum::<f64>();
    // Multinomial count of even colorings, times the choice of which colors
    // receive the larger share.
    let ln_choose = ln_fact(ell) - ln_fact(extra) - ln_fact(ell - extra);
    let ln_even = ln_fact(p) - (ell - extra) as f64 * ln_fact(lo) - extra as f64 * ln_fact(lo + 1)
        + ln_choose;
    (ln_even - p as f64 * (ell as f64).ln()).exp().min(1.0)
}

/// Repetitions making a fixed subset unbalanced by every member with
/// probability at most `2^-20`.
pub fn monte_carlo_reps(p: usize, ell: usize) -> u64 {
    let prob = balance_probability(p, ell);
    if prob >= 1.0 {
        return 1;
    }
    (20.0 * std::f64::consts::LN_2 / -(1.0 - prob).ln()).ceil() as u64
}

/// Builds an `(n, p, ell)`-splitter.
pub fn build_splitter(
    n: usize,
    p: usize,
    ell: usize,
    backend: SplitterBackend,
    seed: u64,
) -> Result<SplitterFamily> {
    if p > n || ell == 0 || ell > p.max(1) || ell > 255 {
        return Err(Error::Invalid(format!(
            "splitter needs p <= N and 1 <= ell <= p (N={n}, p={p}, ell={ell})"
        )));
    }
    let mut r = rng(seed, 0x5b1);
    let members = if ell == 1 {
        vec![vec![0u8; n]]
    } else {
        match backend {
            SplitterBackend::Exhaustive => greedy(n, p, ell, &mut r)?,
            SplitterBackend::MonteCarlo { reps } => {
                let reps = reps.unwrap_or_else(|| monte_carlo_reps(p, ell));
                (0..reps)
                    .map(|_| (0..n).map(|_| r.gen_range(0..ell) as u8).collect())
                    .collect()
            }
        }
    };
    Ok(SplitterFamily {
        n,
        p,
        ell,
        members,
        backend,
        seed,
    })
}

fn greedy(n: usize, p: usize, ell: usize, r: &mut crate::gen::GenRng) -> Result<Vec<Vec<u8>>> {
    let flat = all_subsets(n, p)?;
    let mut open: Vec<&[u32]> = flat.chunks(p).collect();
    let mut members = Vec::new();
    // Balanced color multiset for a p-subset.
    let balanced: Vec<u8> = (0..p).map(|i| (i % ell) as u8).collect();
    while let Some(target) = open.first().copied() {
        let mut best: Option<(usize, Vec<u8>)> = None;
        for _ in 0..GREEDY_CANDIDATES {
            let mut coloring: Vec<u8> = (0..n).map(|_| r.gen_range(0..ell) as u8).collect();
            let mut colors = balanced.clone();
            colors.shuffle(r);
            for (&e, &c) in target.iter().zip(&colors) {
                coloring[e as usize] = c;
            }
            let hits = open
                .iter()
                .filter(|s| is_even_split(&coloring, s, ell))
                .count();
            if best.as_ref().is_none_or(|(h, _)| hits > *h) {
                best = Some((hits, coloring));
            }
        }
        let (_, coloring) = best.unwrap();
        open.retain(|s| !is_even_split(&coloring, s, ell));
        members.push(coloring);
    }
    Ok(members)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let one = build_splitter(5, 3, 1, SplitterBackend::Exhaustive, 1).unwrap();
        assert_eq!(one.members.len(), 1);
        assert!(one.verify().unwrap());
        let small = build_splitter(4, 2, 2, SplitterBackend::Exhaustive, 1).unwrap();
        assert!(small.verify().unwrap());
        let big = build_splitter(12, 4, 2, SplitterBackend::Exhaustive, 1).unwrap();
        assert!(big.verify().unwrap());
        assert!(build_splitter(60, 30, 3, SplitterBackend::Exhaustive, 1).is_err());
    }

    #[test]
    fn balance_probability_matches_small_cases() {
        // p=2, ell=2: half of the four colorings split the pair.
        assert!((balance_probability(2, 2) - 0.5).abs() < 1e-12);
        // p=3, ell=3: 3!/27.
        assert!((balance_probability(3, 3) - 6.0 / 27.0).abs() < 1e-12);
        // p=3, ell=2: 6 of 8 colorings give a 2/1 split.
        assert!((balance_probability(3, 2) - 0.75).abs() < 1e-12);
        assert_eq!(monte_carlo_reps(2, 2), 20);
    }
}
