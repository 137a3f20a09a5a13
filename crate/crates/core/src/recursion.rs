//! Recursive routes to `cdes_n(S)`.
//!
//! [`cdes_recursive`] descends on the smallest element of `S`, splitting by
//! how `i = min(S)` and `i - 1` sit next to each other. [`cdes_insertion_table`]
//! builds whole tables bottom-up by inserting the largest letter.

use std::collections::HashMap;
use std::sync::RwLock;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::perm::{CountTable, ValueSet};

/// `{ s - 1 : s ∈ S }`.
pub fn delta(set: &ValueSet) -> Result<ValueSet> {
    if set.contains(1) {
        return Err(Error::ContainsOne);
    }
    Ok(shift_down(set))
}

fn shift_down(set: &ValueSet) -> ValueSet {
    ValueSet::from_sorted_unchecked(set.elements().iter().map(|&s| s - 1).collect())
}

/// Grow-only memo table keyed by the set alone (`n` is normalized to
/// `max(S)`). Safe to share between threads; a racing duplicate insert must
/// carry the same value.
#[derive(Debug, Default)]
pub struct MemoCache {
    store: RwLock<HashMap<ValueSet, BigUint>>,
}

impl MemoCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, key: &ValueSet) -> Option<BigUint> {
        self.store.read().expect("memo lock").get(key).cloned()
    }

    fn publish(&self, key: ValueSet, value: BigUint) {
        let mut store = self.store.write().expect("memo lock");
        let prev = store.entry(key).or_insert_with(|| value.clone());
        assert_eq!(*prev, value, "memo cache received divergent values");
    }

    pub fn len(&self) -> usize {
        self.store.read().expect("memo lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn check_args(n: u32, set: &ValueSet) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: 0,
            range: "n >= 1".into(),
        });
    }
    set.check_within(n)
}

/// `cdes_n(S)` by the min-element recursion, memoized in `cache`.
pub fn cdes_recursive(n: u32, set: &ValueSet, cache: &MemoCache) -> Result<BigUint> {
    check_args(n, set)?;
    Ok(recurse(set, Some(cache)))
}

/// Same recursion without memoization. Exponential; for cross-checking.
pub fn cdes_recursive_uncached(n: u32, set: &ValueSet) -> Result<BigUint> {
    check_args(n, set)?;
    Ok(recurse(set, None))
}

fn recurse(set: &ValueSet, cache: Option<&MemoCache>) -> BigUint {
    if set.contains(1) {
        return BigUint::zero();
    }
    match set.len() {
        0 => return BigUint::one(),
        1 => return (BigUint::one() << (set.largest().unwrap() - 1)) - 1u32,
        _ => {}
    }
    if let Some(hit) = cache.and_then(|c| c.get(set)) {
        return hit;
    }
    let value = if set.smallest() == Some(2) {
        min_two_shortcut(set, cache)
    } else {
        general_step(set, cache)
    };
    if let Some(c) = cache {
        c.publish(set.clone(), value.clone());
    }
    value
}

/// `cdes(S ∪ {2}) = cdes(δ(S))` for `S ⊆ [3, n]`: the letter 2 must sit
/// immediately before 1.
fn min_two_shortcut(set: &ValueSet, cache: Option<&MemoCache>) -> BigUint {
    recurse(&shift_down(&set.without(2)), cache)
}

/// `cdes_n(S) = cdes_n(S ∪ {i-1} \ {i}) + cdes_{n-1}(δS) + cdes_{n-1}(δS \ {i-1})`
/// with `i = min(S)`. Terms whose set contains 1 vanish through the base case.
fn general_step(set: &ValueSet, cache: Option<&MemoCache>) -> BigUint {
    let i = set.smallest().expect("nonempty");
    let swapped = set.without(i).with(i - 1);
    let shifted = shift_down(set);
    let shifted_without = shifted.without(i - 1);
    recurse(&swapped, cache) + recurse(&shifted, cache) + recurse(&shifted_without, cache)
}

/// Full table of `cdes_n(S)` for `S ⊆ [2, n]`, built by inserting the
/// largest letter:
///
/// `cdes_m(S ∪ {m}) = (m - 1 - |S|) cdes_{m-1}(S) + Σ_{i ∈ [2, m-1] \ S} cdes_{m-1}(S ∪ {i})`
/// and `cdes_m(S) = cdes_{m-1}(S)` when `m ∉ S`.
pub fn cdes_insertion_table(n: u32) -> Result<CountTable> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: 0,
            range: "n >= 1".into(),
        });
    }
    if n > 40 {
        return Err(Error::CapExceeded {
            what: "insertion-table n",
            requested: n as u64,
            cap: 40,
        });
    }
    // Indexed by bitmask over [2, m]: bit (e - 2) for element e.
    let mut table = vec![BigUint::one()];
    for m in 2..=n {
        let prev_width = m - 2;
        let top = 1usize << prev_width;
        let mut next = Vec::with_capacity(top * 2);
        next.extend(table.iter().cloned());
        for mask in 0..top {
            let size = mask.count_ones();
            let mut value = &table[mask] * (m - 1 - size);
            for bit in 0..prev_width {
                if mask >> bit & 1 == 0 {
                    value += &table[mask | 1 << bit];
                }
            }
            next.push(value);
        }
        table = next;
    }
    let mut out = CountTable::new(n);
    for (mask, value) in table.into_iter().enumerate() {
        let set = ValueSet::from_sorted_unchecked(
            (0..n.saturating_sub(1))
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| b + 2)
                .collect(),
        );
        out.add(set, value);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::cdes_formula;
    use crate::perm::factorial;

    fn set(v: &[u32]) -> ValueSet {
        ValueSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&set(&[2, 4])).unwrap(), set(&[1, 3]));
        assert_eq!(delta(&ValueSet::empty()).unwrap(), ValueSet::empty());
        assert_eq!(delta(&set(&[3, 5, 6])).unwrap(), set(&[2, 4, 5]));
        assert_eq!(delta(&set(&[1, 5])), Err(Error::ContainsOne));
    }

    #[test]
    fn recursion_examples() {
        let cache = MemoCache::new();
        let rec = |n, v: &[u32]| cdes_recursive(n, &set(v), &cache).unwrap();
        assert_eq!(rec(3, &[3]), 3u32.into());
        assert_eq!(rec(4, &[3, 4]), 7u32.into());
        assert_eq!(rec(9, &[2]), 1u32.into());
        assert_eq!(rec(6, &[1, 4]), 0u32.into());
        assert!(cdes_recursive(3, &set(&[4]), &cache).is_err());
    }

    #[test]
    fn recursion_matches_formula() {
        let cache = MemoCache::new();
        for n in 1..=10 {
            for s in ValueSet::subsets_of_interval(n) {
                assert_eq!(
                    cdes_recursive(n, &s, &cache).unwrap(),
                    cdes_formula(n, &s).unwrap(),
                    "S={s}"
                );
            }
        }
        assert!(!cache.is_empty());
    }

    #[test]
    fn memoized_and_unmemoized_agree() {
        let cache = MemoCache::new();
        for s in ValueSet::subsets_of_interval(8) {
            assert_eq!(
                cdes_recursive(8, &s, &cache).unwrap(),
                cdes_recursive_uncached(8, &s).unwrap()
            );
        }
    }

    #[test]
    fn shortcut_equals_general_step_when_min_is_two() {
        for s in ValueSet::subsets_of_interval(8).filter(|s| s.smallest() == Some(2) && s.len() > 1)
        {
            assert_eq!(min_two_shortcut(&s, None), general_step(&s, None), "S={s}");
        }
    }

    #[test]
    fn shared_cache_across_threads() {
        let cache = MemoCache::new();
        let sets: Vec<ValueSet> = ValueSet::subsets_of_interval(9).collect();
        std::thread::scope(|scope| {
            for chunk in sets.chunks(64) {
                let cache = &cache;
                scope.spawn(move || {
                    for s in chunk {
                        let got = cdes_recursive(9, s, cache).unwrap();
                        assert_eq!(got, cdes_formula(9, s).unwrap());
                    }
                });
            }
        });
    }

    #[test]
    fn insertion_table_examples() {
        let t3 = cdes_insertion_table(3).unwrap();
        assert_eq!(t3.get(&ValueSet::empty()), 1u32.into());
        assert_eq!(t3.get(&set(&[2])), 1u32.into());
        assert_eq!(t3.get(&set(&[3])), 3u32.into());
        assert_eq!(t3.get(&set(&[2, 3])), 1u32.into());
        let t4 = cdes_insertion_table(4).unwrap();
        assert_eq!(t4.get(&set(&[4])), 7u32.into());
        assert_eq!(t4.get(&set(&[2, 3, 4])), 1u32.into());
        assert_eq!(cdes_insertion_table(1).unwrap().total(), 1u32.into());
    }

    #[test]
    fn insertion_table_matches_formula_and_mass() {
        for n in 1..=10 {
            let table = cdes_insertion_table(n).unwrap();
            assert_eq!(table.total(), factorial(n));
            for s in ValueSet::subsets_of_interval(n) {
                assert_eq!(table.get(&s), cdes_formula(n, &s).unwrap());
            }
        }
    }

    #[test]
    fn omitted_index_one_term_is_zero() {
        // the insertion sum over [n-1] \ S includes i = 1, which never counts
        for n in 2..=8 {
            for s in ValueSet::subsets_of_interval(n) {
                assert!(cdes_formula(n, &s.with(1)).unwrap().is_zero());
            }
        }
    }
}
