use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Hard cap on the number of terminals.
pub const MAX_TERMINALS: usize = 20;

/// A subset of the terminals `{1..m}`, stored as a bitmask with terminal `i`
/// at bit `i - 1`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TerminalSet(u32);

impl TerminalSet {
    pub const EMPTY: TerminalSet = TerminalSet(0);

    pub fn from_bits(bits: u32) -> Self {
        TerminalSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// `{1, .., m}`.
    pub fn full(m: usize) -> Self {
        debug_assert!(m <= MAX_TERMINALS);
        TerminalSet(((1u64 << m) - 1) as u32)
    }

    /// `{i}` for a 1-indexed terminal.
    pub fn singleton(i: usize) -> Self {
        debug_assert!((1..=MAX_TERMINALS).contains(&i));
        TerminalSet(1 << (i - 1))
    }

    /// Builds a set from 1-indexed terminal labels, checking each lies in `1..=m`.
    pub fn from_terminals(m: usize, terminals: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        for &i in terminals {
            if i == 0 || i > m {
                return domain(format!("terminal {i} outside 1..={m}"));
            }
            bits |= 1 << (i - 1);
        }
        Ok(TerminalSet(bits))
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=32).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        TerminalSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        TerminalSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        TerminalSet(self.0 & !other.0)
    }

    pub fn complement(self, m: usize) -> Self {
        TerminalSet::full(m).difference(self)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Whether every member lies in `1..=m`.
    pub fn within(self, m: usize) -> bool {
        self.is_subset(TerminalSet::full(m))
    }

    /// Members as ascending 1-indexed labels.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i + 1)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Smallest member, if any.
    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Order by cardinality, then lexicographically on the ascending member list.
    pub fn cmp_size_lex(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }

    /// All nonempty subsets of `{1..m}` ordered by size then lexicographically.
    pub fn all_nonempty(m: usize) -> Vec<TerminalSet> {
        let mut v: Vec<TerminalSet> = (1..(1u32 << m)).map(TerminalSet).collect();
        v.sort_by(TerminalSet::cmp_size_lex);
        v
    }
}

impl fmt::Display for TerminalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for TerminalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
