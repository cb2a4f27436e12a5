//! Per-vertex color lists over `[q]`, stored as bitmasks (bit `c` = color
//! `c + 1` in file notation).

use crate::error::{Error, Result};
use crate::graph::parse_num;
use std::fmt::Write as _;

/// Largest supported number of colors.
pub const MAX_COLORS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListAssignment {
    q: usize,
    lists: Vec<u32>,
}

impl ListAssignment {
    /// Every vertex may use every color.
    pub fn full(n: usize, q: usize) -> Self {
        assert!(
            (1..=MAX_COLORS).contains(&q),
            "q must be in 1..={MAX_COLORS}"
        );
        Self {
            q,
            lists: vec![full_mask(q); n],
        }
    }

    pub fn new(q: usize, lists: Vec<u32>) -> Result<Self> {
        if !(1..=MAX_COLORS).contains(&q) {
            return Err(Error::Invalid(format!("q must be in 1..={MAX_COLORS}")));
        }
        if let Some(v) = lists.iter().position(|&l| l & !full_mask(q) != 0) {
            return Err(Error::Invalid(format!(
                "list of vertex {v} holds a color outside [q]"
            )));
        }
        Ok(Self { q, lists })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.lists.len()
    }

    pub fn mask(&self, v: usize) -> u32 {
        self.lists[v]
    }

    pub fn masks(&self) -> &[u32] {
        &self.lists
    }

    pub fn allows(&self, v: usize, c: u8) -> bool {
        self.lists[v] >> c & 1 == 1
    }

    /// Colors of `v` in increasing order.
    pub fn colors(&self, v: usize) -> Vec<u8> {
        colors_of(self.lists[v])
    }

    pub fn set(&mut self, v: usize, mask: u32) {
        assert_eq!(mask & !full_mask(self.q), 0, "mask outside [q]");
        self.lists[v] = mask;
    }
}

pub fn full_mask(q: usize) -> u32 {
    if q >= 32 {
        u32::MAX
    } else {
        (1u32 << q) - 1
    }
}

pub fn colors_of(mask: u32) -> Vec<u8> {
    (0..32u8).filter(|&c| mask >> c & 1 == 1).collect()
}

/// Parses lines `<v>: <c1> <c2> ...` (1-based vertex ids and colors);
/// vertices without a line keep the full list.
pub fn parse_lists(text: &str, n: usize, q: usize) -> Result<ListAssignment> {
    let mut la = ListAssignment::full(n, q);
    let mut seen = vec![false; n];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (head, rest) = trimmed
            .split_once(':')
            .ok_or_else(|| Error::parse(line, "expected `<v>: <colors>`"))?;
        let v: usize = parse_num(head.trim(), line)?;
        if v == 0 || v > n {
            return Err(Error::parse(line, "vertex id out of range"));
        }
        if std::mem::replace(&mut seen[v - 1], true) {
            return Err(Error::parse(line, "duplicate list for vertex"));
        }
        let mut mask = 0u32;
        for t in rest.split_whitespace() {
            let c: usize = parse_num(t, line)?;
            if c == 0 || c > q {
                return Err(Error::parse(line, "color out of range"));
            }
            mask |= 1 << (c - 1);
        }
        la.lists[v - 1] = mask;
    }
    Ok(la)
}

/// Writes every non-full list in the file format.
pub fn write_lists(la: &ListAssignment) -> String {
    let mut out = String::new();
    for v in 0..la.n() {
        if la.mask(v) != full_mask(la.q()) {
            let cs: Vec<String> = la.colors(v).iter().map(|c| (c + 1).to_string()).collect();
            writeln!(out, "{}: {}", v + 1, cs.join(" ")).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_default() {
        let la = parse_lists("2: 1 3\n3:\n", 3, 3).unwrap();
        assert_eq!(la.mask(0), 0b111);
        assert_eq!(la.mask(1), 0b101);
        assert_eq!(la.mask(2), 0);
        assert_eq!(parse_lists(&write_lists(&la), 3, 3).unwrap(), la);
    }

    #[test]
    fn rejects_bad_colors() {
        assert!(parse_lists("1: 4\n", 2, 3).is_err());
        assert!(parse_lists("3: 1\n", 2, 3).is_err());
    }
}
