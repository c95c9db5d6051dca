use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A subset of `{1, ..., ambient}` with strictly increasing members.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexSet {
    ambient: usize,
    members: Vec<usize>,
}

impl IndexSet {
    pub fn new(ambient: usize, members: Vec<usize>) -> Result<Self> {
        for (pos, &m) in members.iter().enumerate() {
            if m == 0 || m > ambient {
                return Err(Error::IndexOutOfRange { index: m, ambient });
            }
            if pos > 0 && members[pos - 1] >= m {
                return Err(Error::UnsortedIndexSet);
            }
        }
        Ok(Self { ambient, members })
    }

    pub fn empty(ambient: usize) -> Self {
        Self {
            ambient,
            members: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            members: (1..=ambient).collect(),
        }
    }

    /// The range `p:q`, empty when `p > q`.
    pub fn range(ambient: usize, p: usize, q: usize) -> Result<Self> {
        if p > q {
            return Ok(Self::empty(ambient));
        }
        Self::new(ambient, (p..=q).collect())
    }

    /// Bit `i` of `mask` selects index `i + 1`.
    pub fn from_mask(ambient: usize, mask: u64) -> Self {
        let members = (0..ambient).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        Self { ambient, members }
    }

    pub fn to_mask(&self) -> u64 {
        self.members.iter().fold(0, |acc, m| acc | 1 << (m - 1))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.binary_search(&index).is_ok()
    }

    /// Zero-based positions, for indexing into storage.
    pub fn zero_based(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().map(|m| m - 1)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut members: Vec<usize> = self.members.iter().chain(&other.members).copied().collect();
        members.sort_unstable();
        members.dedup();
        Self {
            ambient: self.ambient.max(other.ambient),
            members,
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let members = self.members.iter().copied().filter(|m| other.contains(*m)).collect();
        Self {
            ambient: self.ambient,
            members,
        }
    }

    pub fn without(&self, index: usize) -> Self {
        Self {
            ambient: self.ambient,
            members: self.members.iter().copied().filter(|&m| m != index).collect(),
        }
    }

    /// Maximal runs of consecutive integers as `(start, length)` pairs.
    /// Distinct runs are automatically separated (they differ by at least 2).
    pub fn runs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &m in &self.members {
            match out.last_mut() {
                Some((start, len)) if *start + *len == m => *len += 1,
                _ => out.push((m, 1)),
            }
        }
        out
    }

    /// True when every element of `self` differs from every element of
    /// `other` by more than one.
    pub fn is_separated_from(&self, other: &Self) -> bool {
        self.members
            .iter()
            .all(|&p| other.members.iter().all(|&q| p.abs_diff(q) > 1))
    }

    pub fn is_consecutive(&self) -> bool {
        self.runs().len() <= 1
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

/// All subsets of `{1..n}` as bitmasks, ordered by cardinality and then
/// lexicographically by their sorted members. This is the order in which
/// sweeps report their first witness.
pub fn subsets_in_order(n: usize) -> Vec<u64> {
    assert!(n < 64);
    let mut masks: Vec<u64> = (0..1u64 << n).collect();
    masks.sort_by_key(|&m| {
        let members: Vec<u32> = (0..n as u32).filter(|i| m >> i & 1 == 1).collect();
        (m.count_ones(), members)
    });
    masks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_and_unsorted() {
        assert!(matches!(IndexSet::new(3, vec![0]), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(IndexSet::new(3, vec![4]), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(IndexSet::new(3, vec![2, 2]), Err(Error::UnsortedIndexSet)));
        assert!(IndexSet::new(3, vec![]).unwrap().is_empty());
    }

    #[test]
    fn range_notation() {
        assert_eq!(IndexSet::range(5, 2, 4).unwrap().members(), &[2, 3, 4]);
        assert!(IndexSet::range(5, 4, 2).unwrap().is_empty());
    }

    #[test]
    fn runs_split_on_gaps() {
        let s = IndexSet::new(10, vec![1, 2, 4, 6, 7, 8]).unwrap();
        assert_eq!(s.runs(), vec![(1, 2), (4, 1), (6, 3)]);
        assert!(!s.is_consecutive());
        assert!(IndexSet::empty(3).runs().is_empty());
    }

    #[test]
    fn separation() {
        let a = IndexSet::new(8, vec![1, 2]).unwrap();
        let b = IndexSet::new(8, vec![4, 5]).unwrap();
        let c = IndexSet::new(8, vec![3]).unwrap();
        assert!(a.is_separated_from(&b));
        assert!(!a.is_separated_from(&c));
    }

    #[test]
    fn mask_round_trip_and_order() {
        let s = IndexSet::new(6, vec![2, 5]).unwrap();
        assert_eq!(IndexSet::from_mask(6, s.to_mask()), s);
        let order = subsets_in_order(3);
        let sets: Vec<Vec<usize>> = order
            .iter()
            .map(|&m| IndexSet::from_mask(3, m).members().to_vec())
            .collect();
        assert_eq!(
            sets,
            vec![
                vec![],
                vec![1],
                vec![2],
                vec![3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3],
                vec![1, 2, 3]
            ]
        );
    }
}
