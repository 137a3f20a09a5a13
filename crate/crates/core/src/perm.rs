//! Permutations, value sets and the exhaustive counting oracles.
//!
//! Everything that enumerates `S_n` lives here. Enumeration walks the
//! permutations in lexicographic order, one block per leading entry, so the
//! work splits cleanly across rayon workers while the totals stay identical
//! to a sequential run.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Default largest `n` the brute-force oracles will enumerate (10! permutations).
pub const DEFAULT_BRUTE_CAP: u32 = 10;

/// Hard ceiling on any brute-force cap: per-worker counters are `u64` and
/// value sets are packed into `u64` bitmasks during enumeration.
pub const MAX_BRUTE_CAP: u32 = 20;

/// A permutation of `[n]` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &e in &entries {
            let idx = e as usize;
            if idx == 0 || idx > n {
                return Err(Error::InvalidPermutation {
                    n,
                    reason: format!("entry {e} is outside 1..={n}"),
                });
            }
            if seen[idx] {
                return Err(Error::InvalidPermutation {
                    n,
                    reason: format!("entry {e} appears twice"),
                });
            }
            seen[idx] = true;
        }
        Ok(Permutation(entries))
    }

    pub fn identity(n: u32) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn circular_descent_set(&self) -> ValueSet {
        circular_descent_set(self)
    }

    pub fn nwexb_set(&self) -> ValueSet {
        nwexb_set(self)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = parse_list(s)?;
        Permutation::new(entries)
    }
}

/// A finite set of positive integers, stored sorted ascending.
///
/// Used both as a circular descent set and as a non-weak-excedance bottom
/// set. Ordering is lexicographic on the sorted elements.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValueSet(Vec<u32>);

impl ValueSet {
    pub fn empty() -> Self {
        ValueSet(Vec::new())
    }

    /// Builds a set from elements in strictly increasing order.
    pub fn new(elements: Vec<u32>) -> Result<Self> {
        if elements.contains(&0) {
            return Err(Error::InvalidSet("elements must be positive".into()));
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSet(format!(
                "elements must be strictly increasing, got {elements:?}"
            )));
        }
        Ok(ValueSet(elements))
    }

    /// Builds a set from elements in any order, dropping duplicates.
    pub fn from_unsorted<I: IntoIterator<Item = u32>>(elements: I) -> Result<Self> {
        let mut v: Vec<u32> = elements.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        ValueSet::new(v)
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<u32>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        ValueSet(elements)
    }

    pub fn elements(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn smallest(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn largest(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn contains(&self, value: u32) -> bool {
        self.0.binary_search(&value).is_ok()
    }

    pub fn with(&self, value: u32) -> ValueSet {
        let mut v = self.0.clone();
        if let Err(pos) = v.binary_search(&value) {
            v.insert(pos, value);
        }
        ValueSet(v)
    }

    pub fn without(&self, value: u32) -> ValueSet {
        ValueSet(self.0.iter().copied().filter(|&e| e != value).collect())
    }

    /// Bit `e - 1` is set for each element `e`. Requires every element ≤ 64.
    pub fn to_mask(&self) -> Option<u64> {
        let mut mask = 0u64;
        for &e in &self.0 {
            if e > 64 {
                return None;
            }
            mask |= 1u64 << (e - 1);
        }
        Some(mask)
    }

    pub fn from_mask(mask: u64) -> Self {
        ValueSet(
            (0..64)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| b + 1)
                .collect(),
        )
    }

    /// Checks that every element lies in `[1, n]`.
    pub fn check_within(&self, n: u32) -> Result<()> {
        match self.largest() {
            Some(m) if m > n => Err(Error::AmbientTooSmall { n, max: m }),
            _ => Ok(()),
        }
    }

    /// All subsets of `[2, n]`, in increasing bitmask order.
    pub fn subsets_of_interval(n: u32) -> impl Iterator<Item = ValueSet> {
        let width = n.saturating_sub(1);
        assert!(width < 64, "interval [2, {n}] too wide to enumerate");
        (0u64..1u64 << width).map(move |mask| {
            ValueSet(
                (0..width)
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| b + 2)
                    .collect(),
            )
        })
    }
}

impl fmt::Display for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Parses `"3,5"` (or `"{3,5}"`). Duplicate or descending input is rejected
/// rather than sorted; the empty string is the empty set.
impl FromStr for ValueSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let elements = parse_list(s)?;
        for w in elements.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidSet(format!("duplicate element {}", w[0])));
            }
        }
        ValueSet::new(elements)
    }
}

/// Parses a comma-separated list of nonnegative integers. Whitespace is
/// ignored; surrounding braces or parentheses are allowed.
pub fn parse_list(s: &str) -> Result<Vec<u32>> {
    let trimmed = s
        .trim()
        .trim_start_matches(['{', '('])
        .trim_end_matches(['}', ')']);
    if trimmed.trim().is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<u32>()
                .map_err(|_| Error::Parse(format!("'{tok}' is not a nonnegative integer")))
        })
        .collect()
}

/// Exact counts indexed by value set, for permutations of a fixed `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    n: u32,
    counts: BTreeMap<ValueSet, BigUint>,
}

impl CountTable {
    pub fn new(n: u32) -> Self {
        CountTable {
            n,
            counts: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Adds `count` to the entry for `set`. Zero counts are not stored.
    pub fn add(&mut self, set: ValueSet, count: BigUint) {
        if count.is_zero() {
            return;
        }
        *self.counts.entry(set).or_insert_with(BigUint::zero) += count;
    }

    /// The count for `set`; unattained sets read as zero.
    pub fn get(&self, set: &ValueSet) -> BigUint {
        self.counts.get(set).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ValueSet, &BigUint)> {
        self.counts.iter()
    }
}

/// `{ p(i) : p(i) > p(i+1), i < n }`. The reading is linear: `p(n)` is never
/// compared with `p(1)`.
pub fn circular_descent_set(p: &Permutation) -> ValueSet {
    ValueSet::from_unsorted(p.0.windows(2).filter(|w| w[0] > w[1]).map(|w| w[0]))
        .expect("permutation entries are positive")
}

/// `{ i : p(i) < i }`, positions 1-based.
pub fn nwexb_set(p: &Permutation) -> ValueSet {
    ValueSet::from_sorted_unchecked(
        p.0.iter()
            .enumerate()
            .filter(|&(i, &v)| (v as usize) < i + 1)
            .map(|(i, _)| i as u32 + 1)
            .collect(),
    )
}

/// Replaces each entry by its rank among the entries.
pub fn reduction(seq: &[i64]) -> Result<Permutation> {
    let mut sorted: Vec<i64> = seq.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::RepeatedEntry(w[0]));
    }
    let entries = seq
        .iter()
        .map(|v| sorted.binary_search(v).expect("value present") as u32 + 1)
        .collect();
    Ok(Permutation(entries))
}

/// Advances `v` to its lexicographic successor; returns `false` at the last
/// permutation.
pub fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Brute-force enumeration limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteCap(u32);

impl BruteCap {
    pub fn new(cap: u32) -> Result<Self> {
        if cap > MAX_BRUTE_CAP {
            return Err(Error::CapExceeded {
                what: "brute-force cap",
                requested: cap as u64,
                cap: MAX_BRUTE_CAP as u64,
            });
        }
        Ok(BruteCap(cap))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub(crate) fn check(self, what: &'static str, n: u32) -> Result<()> {
        if n > self.0 {
            return Err(Error::CapExceeded {
                what,
                requested: n as u64,
                cap: self.0 as u64,
            });
        }
        Ok(())
    }
}

impl Default for BruteCap {
    fn default() -> Self {
        BruteCap(DEFAULT_BRUTE_CAP)
    }
}

/// Visits every permutation of `[n]` exactly once and folds the results.
///
/// The space is split by leading entry; each block is walked in
/// lexicographic order on its own accumulator and the accumulators are
/// merged afterwards. `merge` must be commutative and associative for the
/// result to be independent of scheduling.
pub fn fold_permutations<A, I, V, M>(n: u32, init: I, visit: V, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    V: Fn(&mut A, &[u32]) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    if n == 0 {
        let mut acc = init();
        visit(&mut acc, &[]);
        return acc;
    }
    (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut acc = init();
            let mut perm: Vec<u32> = std::iter::once(first)
                .chain((1..=n).filter(|&v| v != first))
                .collect();
            loop {
                visit(&mut acc, &perm);
                if !next_permutation(&mut perm[1..]) {
                    break;
                }
            }
            acc
        })
        .reduce(&init, &merge)
}

fn cdes_mask(perm: &[u32]) -> u64 {
    perm.windows(2)
        .filter(|w| w[0] > w[1])
        .fold(0u64, |m, w| m | 1u64 << (w[0] - 1))
}

fn nwexb_mask(perm: &[u32]) -> u64 {
    perm.iter()
        .enumerate()
        .filter(|&(i, &v)| (v as usize) < i + 1)
        .fold(0u64, |m, (i, _)| m | 1u64 << i)
}

fn count_matching(n: u32, target: u64, statistic: fn(&[u32]) -> u64) -> BigUint {
    let count = fold_permutations(
        n,
        || 0u64,
        |acc, p| {
            if statistic(p) == target {
                *acc += 1;
            }
        },
        |a, b| a + b,
    );
    BigUint::from(count)
}

fn check_brute_args(n: u32, set: &ValueSet, cap: BruteCap) -> Result<u64> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: 0,
            range: "n >= 1".into(),
        });
    }
    cap.check("brute-force n", n)?;
    set.check_within(n)?;
    Ok(set.to_mask().expect("elements bounded by the cap"))
}

/// Number of permutations of `[n]` whose circular descent set is `set`,
/// by exhaustive enumeration.
pub fn brute_cdes_count(n: u32, set: &ValueSet, cap: BruteCap) -> Result<BigUint> {
    let target = check_brute_args(n, set, cap)?;
    Ok(count_matching(n, target, cdes_mask))
}

/// Number of permutations of `[n]` whose non-weak-excedance bottom set is
/// `set`, by exhaustive enumeration.
pub fn brute_nwexb_count(n: u32, set: &ValueSet, cap: BruteCap) -> Result<BigUint> {
    let target = check_brute_args(n, set, cap)?;
    Ok(count_matching(n, target, nwexb_mask))
}

fn brute_table(n: u32, cap: BruteCap, statistic: fn(&[u32]) -> u64) -> Result<CountTable> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: 0,
            range: "n >= 1".into(),
        });
    }
    cap.check("brute-force n", n)?;
    let histogram = fold_permutations(
        n,
        HashMap::<u64, u64>::new,
        |acc, p| *acc.entry(statistic(p)).or_insert(0) += 1,
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    );
    let mut table = CountTable::new(n);
    for (mask, count) in histogram {
        table.add(ValueSet::from_mask(mask), BigUint::from(count));
    }
    Ok(table)
}

/// Circular descent set distribution over all of `S_n` in one pass.
pub fn brute_cdes_table(n: u32, cap: BruteCap) -> Result<CountTable> {
    brute_table(n, cap, cdes_mask)
}

/// Non-weak-excedance bottom set distribution over all of `S_n`.
pub fn brute_nwexb_table(n: u32, cap: BruteCap) -> Result<CountTable> {
    brute_table(n, cap, nwexb_mask)
}

pub fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[u32]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn set(v: &[u32]) -> ValueSet {
        ValueSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn cdes_examples() {
        assert_eq!(
            circular_descent_set(&perm(&[4, 8, 6, 3, 2, 5, 1, 7])),
            set(&[3, 5, 6, 8])
        );
        assert_eq!(circular_descent_set(&perm(&[1, 2, 3])), ValueSet::empty());
        assert_eq!(circular_descent_set(&perm(&[2, 1])), set(&[2]));
    }

    #[test]
    fn nwexb_examples() {
        assert_eq!(nwexb_set(&perm(&[1, 2, 3])), ValueSet::empty());
        assert_eq!(nwexb_set(&perm(&[2, 1])), set(&[2]));
        assert_eq!(nwexb_set(&perm(&[3, 1, 2])), set(&[2, 3]));
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduction(&[8, 6, 5]).unwrap(), perm(&[3, 2, 1]));
        assert_eq!(reduction(&[1, 2, 3]).unwrap(), perm(&[1, 2, 3]));
        assert_eq!(reduction(&[4, 8, 3, 7]).unwrap(), perm(&[2, 4, 1, 3]));
        assert_eq!(reduction(&[4, 2, 4]), Err(Error::RepeatedEntry(4)));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
        assert!("2,1,3".parse::<Permutation>().is_ok());
    }

    #[test]
    fn set_parsing_rejects_unsorted_and_duplicates() {
        assert_eq!("3,5".parse::<ValueSet>().unwrap(), set(&[3, 5]));
        assert_eq!(" {2, 4} ".parse::<ValueSet>().unwrap(), set(&[2, 4]));
        assert_eq!("".parse::<ValueSet>().unwrap(), ValueSet::empty());
        assert!("5,3".parse::<ValueSet>().is_err());
        assert!("3,3".parse::<ValueSet>().is_err());
        assert!("0,3".parse::<ValueSet>().is_err());
        assert!("a".parse::<ValueSet>().is_err());
    }

    #[test]
    fn mask_round_trip() {
        let s = set(&[2, 5, 64]);
        assert_eq!(ValueSet::from_mask(s.to_mask().unwrap()), s);
        assert_eq!(set(&[65]).to_mask(), None);
    }

    #[test]
    fn successor_order_is_lexicographic() {
        let mut v = vec![1, 2, 3];
        let mut seen = vec![v.clone()];
        while next_permutation(&mut v) {
            seen.push(v.clone());
        }
        assert_eq!(
            seen,
            vec![
                vec![1, 2, 3],
                vec![1, 3, 2],
                vec![2, 1, 3],
                vec![2, 3, 1],
                vec![3, 1, 2],
                vec![3, 2, 1]
            ]
        );
    }

    #[test]
    fn brute_counts() {
        let cap = BruteCap::default();
        assert_eq!(
            brute_cdes_count(4, &set(&[2, 4]), cap).unwrap(),
            3u32.into()
        );
        assert_eq!(
            brute_cdes_count(5, &set(&[1, 3]), cap).unwrap(),
            0u32.into()
        );
        assert_eq!(
            brute_cdes_count(5, &set(&[4, 5]), cap).unwrap(),
            31u32.into()
        );
        assert_eq!(
            brute_nwexb_count(4, &set(&[2, 4]), cap).unwrap(),
            3u32.into()
        );
        assert_eq!(brute_nwexb_count(3, &set(&[1]), cap).unwrap(), 0u32.into());
        for n in 1..=6 {
            assert_eq!(
                brute_nwexb_count(n, &ValueSet::empty(), cap).unwrap(),
                1u32.into()
            );
        }
    }

    #[test]
    fn brute_tables() {
        let cap = BruteCap::default();
        let t3 = brute_cdes_table(3, cap).unwrap();
        let expect = [(vec![], 1u32), (vec![2], 1), (vec![3], 3), (vec![2, 3], 1)];
        assert_eq!(t3.len(), expect.len());
        for (s, c) in expect {
            assert_eq!(t3.get(&set(&s)), c.into());
        }
        let t2 = brute_cdes_table(2, cap).unwrap();
        assert_eq!(t2.get(&ValueSet::empty()), 1u32.into());
        assert_eq!(t2.get(&set(&[2])), 1u32.into());
        assert_eq!(t2.len(), 2);
        let t1 = brute_cdes_table(1, cap).unwrap();
        assert_eq!(t1.len(), 1);
        assert_eq!(t1.get(&ValueSet::empty()), 1u32.into());
    }

    #[test]
    fn cap_is_enforced() {
        let cap = BruteCap::new(5).unwrap();
        assert!(matches!(
            brute_cdes_count(6, &ValueSet::empty(), cap),
            Err(Error::CapExceeded { .. })
        ));
        assert!(BruteCap::new(MAX_BRUTE_CAP + 1).is_err());
        assert!(matches!(
            brute_cdes_count(4, &set(&[5]), BruteCap::default()),
            Err(Error::AmbientTooSmall { n: 4, max: 5 })
        ));
    }

    #[test]
    fn parallel_fold_matches_sequential_walk() {
        let n = 6;
        let par = brute_cdes_table(n, BruteCap::default()).unwrap();
        let mut seq = CountTable::new(n);
        let mut v: Vec<u32> = (1..=n).collect();
        loop {
            seq.add(circular_descent_set(&perm(&v)), BigUint::one());
            if !next_permutation(&mut v) {
                break;
            }
        }
        assert_eq!(par, seq);
    }
}
