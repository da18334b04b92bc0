use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A grading degree in `Zᵏ`. Entries are signed so that the same type covers
/// the two-sided symbols `T(n)`; most constructors require `n ≥ 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<i64>);

/// Result of [`meet_join_parts`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeParts {
    pub meet: MultiIndex,
    pub join: MultiIndex,
    pub pos: MultiIndex,
    pub neg: MultiIndex,
}

impl MultiIndex {
    pub fn new(entries: Vec<i64>) -> Self {
        MultiIndex(entries)
    }

    pub fn zeros(k: usize) -> Self {
        MultiIndex(vec![0; k])
    }

    /// `e_i` (0-based `i`).
    pub fn unit(k: usize, i: usize) -> Self {
        let mut v = vec![0; k];
        v[i] = 1;
        MultiIndex(v)
    }

    /// `e(u) = Σ_{i∈u} e_i`.
    pub fn indicator(k: usize, u: Subset) -> Self {
        MultiIndex((0..k).map(|i| i64::from(u.contains(i))).collect())
    }

    pub fn splat(k: usize, value: i64) -> Self {
        MultiIndex(vec![value; k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Total degree `Σ nᵢ`.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Componentwise partial order `self ≤ other`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn zip_with(&self, other: &MultiIndex, f: impl Fn(i64, i64) -> i64) -> Result<MultiIndex> {
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "multi-index lengths {} and {} differ",
                self.len(),
                other.len()
            )));
        }
        Ok(MultiIndex(
            self.0.iter().zip(&other.0).map(|(&a, &b)| f(a, b)).collect(),
        ))
    }

    pub fn meet(&self, other: &MultiIndex) -> Result<MultiIndex> {
        self.zip_with(other, i64::min)
    }

    pub fn join(&self, other: &MultiIndex) -> Result<MultiIndex> {
        self.zip_with(other, i64::max)
    }

    pub fn add(&self, other: &MultiIndex) -> Result<MultiIndex> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &MultiIndex) -> Result<MultiIndex> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg_all(&self) -> MultiIndex {
        MultiIndex(self.0.iter().map(|&a| -a).collect())
    }

    /// `n₊`, entrywise `max(nᵢ, 0)`.
    pub fn pos(&self) -> MultiIndex {
        MultiIndex(self.0.iter().map(|&a| a.max(0)).collect())
    }

    /// `n₋ = n₊ − n`.
    pub fn neg(&self) -> MultiIndex {
        MultiIndex(self.0.iter().map(|&a| (-a).max(0)).collect())
    }

    /// Support as a subset of generators.
    pub fn support(&self) -> Subset {
        Subset::from_indices(self.0.iter().enumerate().filter(|(_, &a)| a != 0).map(|(i, _)| i))
    }

    /// Canonical letter word: `n₁` copies of generator 0, then generator 1, …
    pub fn word(&self) -> Result<Vec<usize>> {
        if !self.is_nonnegative() {
            return Err(Error::Domain(format!("grade {self} has a negative entry")));
        }
        Ok(self
            .0
            .iter()
            .enumerate()
            .flat_map(|(i, &n)| std::iter::repeat_n(i, n as usize))
            .collect())
    }

    /// Grade of a letter word.
    pub fn of_word(k: usize, word: &[usize]) -> MultiIndex {
        let mut v = vec![0; k];
        for &g in word {
            v[g] += 1;
        }
        MultiIndex(v)
    }

    /// All `n` with `0 ≤ n ≤ self` in lexicographic order.
    pub fn box_grades(&self) -> Vec<MultiIndex> {
        let k = self.len();
        let mut out = Vec::new();
        if !self.is_nonnegative() {
            return out;
        }
        let mut cur = vec![0i64; k];
        loop {
            out.push(MultiIndex(cur.clone()));
            let mut pos = k;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if cur[pos] < self.0[pos] {
                    cur[pos] += 1;
                    for c in cur.iter_mut().skip(pos + 1) {
                        *c = 0;
                    }
                    break;
                }
            }
        }
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Vec<i64>> for MultiIndex {
    fn from(v: Vec<i64>) -> Self {
        MultiIndex(v)
    }
}

impl<const N: usize> From<[i64; N]> for MultiIndex {
    fn from(v: [i64; N]) -> Self {
        MultiIndex(v.to_vec())
    }
}

/// Componentwise meet and join of `n`, `m` together with the positive and
/// negative parts of `n − m`.
pub fn meet_join_parts(n: &MultiIndex, m: &MultiIndex) -> Result<LatticeParts> {
    let diff = n.sub(m)?;
    Ok(LatticeParts {
        meet: n.meet(m)?,
        join: n.join(m)?,
        pos: diff.pos(),
        neg: diff.neg(),
    })
}

/// A subset of the generator set `{0, …, k−1}` as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub fn from_indices(idx: impl IntoIterator<Item = usize>) -> Self {
        Subset(idx.into_iter().fold(0u32, |acc, i| acc | (1 << i)))
    }

    pub fn full(k: usize) -> Self {
        Subset(((1u64 << k) - 1) as u32)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.0 & (1 << i) != 0)
    }

    /// Every subset of `self`, including `∅` and `self`.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        // Standard submask enumeration, emitted in increasing order.
        let full = self.0;
        let mut masks = Vec::with_capacity(1 << full.count_ones());
        let mut sub = full;
        loop {
            masks.push(Subset(sub));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & full;
        }
        masks.reverse();
        masks.into_iter()
    }

    /// Every subset of `{0,…,k−1}`.
    pub fn all(k: usize) -> impl Iterator<Item = Subset> {
        Subset::full(k).subsets()
    }

    /// `(−1)^{|u|}`.
    pub fn sign(self) -> i64 {
        if self.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.indices().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `Σ_{u⊆v, e(u)≤n} (−1)^{|u|}`. Equals 1 exactly when `nᵢ = 0` for all
/// `i ∈ v` and 0 otherwise.
pub fn signed_subset_sum(v: Subset, n: &MultiIndex) -> i64 {
    v.subsets()
        .filter(|u| u.indices().all(|i| i < n.len() && n.get(i) >= 1))
        .map(Subset::sign)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lattice_parts() {
        let n = MultiIndex::from([2, -1]);
        assert_eq!(n.pos(), MultiIndex::from([2, 0]));
        assert_eq!(n.neg(), MultiIndex::from([0, 1]));

        let parts = meet_join_parts(&MultiIndex::from([1, 2]), &MultiIndex::from([2, 1])).unwrap();
        assert_eq!(parts.meet, MultiIndex::from([1, 1]));
        assert_eq!(parts.join, MultiIndex::from([2, 2]));

        let same = MultiIndex::from([3, 0, -2]);
        let parts = meet_join_parts(&same, &same).unwrap();
        assert!(parts.pos.is_zero() && parts.neg.is_zero());
    }

    #[test]
    fn length_mismatch_is_dimension_error() {
        let err = meet_join_parts(&MultiIndex::from([1]), &MultiIndex::from([1, 2])).unwrap_err();
        assert!(matches!(err, Error::Dimension(_)));
    }

    #[test]
    fn signed_sum_examples() {
        let v = Subset::from_indices([0, 1, 2]);
        assert_eq!(signed_subset_sum(v, &MultiIndex::from([0, 0, 0])), 1);
        assert_eq!(signed_subset_sum(v, &MultiIndex::from([1, 0, 1])), 0);
        assert_eq!(signed_subset_sum(Subset::EMPTY, &MultiIndex::from([4, 2, 7])), 1);
    }

    #[test]
    fn box_grades_are_lexicographic() {
        let g = MultiIndex::from([1, 2]).box_grades();
        let want: Vec<MultiIndex> = [[0, 0], [0, 1], [0, 2], [1, 0], [1, 1], [1, 2]]
            .iter()
            .map(|&a| MultiIndex::from(a))
            .collect();
        assert_eq!(g, want);
        assert_eq!(MultiIndex::zeros(0).box_grades().len(), 1);
    }

    #[test]
    fn words() {
        assert_eq!(MultiIndex::from([2, 0, 1]).word().unwrap(), vec![0, 0, 2]);
        assert!(MultiIndex::from([1, -1]).word().is_err());
        assert_eq!(MultiIndex::of_word(3, &[2, 0, 2]), MultiIndex::from([1, 0, 2]));
    }

    #[test]
    fn subsets_enumerate() {
        let v = Subset::from_indices([0, 2]);
        let all: Vec<u32> = v.subsets().map(Subset::bits).collect();
        assert_eq!(all, vec![0, 1, 4, 5]);
        assert_eq!(Subset::all(3).count(), 8);
        assert_eq!(format!("{v}"), "{1,3}");
    }

    proptest! {
        #[test]
        fn pos_neg_decomposition(v in proptest::collection::vec(-5i64..5, 1..5)) {
            let n = MultiIndex::new(v);
            let back = n.pos().sub(&n.neg()).unwrap();
            prop_assert_eq!(back, n.clone());
            prop_assert!(n.pos().meet(&n.neg()).unwrap().is_zero());
        }

        #[test]
        fn signed_sum_is_indicator(bits in 0u32..16, v in proptest::collection::vec(0i64..3, 4)) {
            let s = Subset::from_bits(bits);
            let n = MultiIndex::new(v);
            let expected = i64::from(s.indices().all(|i| n.get(i) == 0));
            prop_assert_eq!(signed_subset_sum(s, &n), expected);
        }
    }
}
