//! Closed-form evaluation of `cdes_n(S)`.
//!
//! For `S = {s_1 > s_2 > … > s_k}` with gaps `d_i = s_i - s_{i+1}` and
//! `d_k = s_k - 1`,
//!
//! ```text
//! cdes_n(S) = Σ_{x ∈ {0,1}^k} (-1)^{k - Σx} Π_{i=1..k} (1 + x_1 + … + x_i)^{d_i}
//! ```
//!
//! The value does not depend on `n` once `n ≥ max(S)`. A second evaluator
//! groups the same product by the maximal runs of `S`.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::ValueSet;

/// Sums with at least this many binary variables are split across workers.
const PARALLEL_MIN_BITS: usize = 16;
/// Number of leading variables fixed per parallel task.
const PARALLEL_PREFIX_BITS: usize = 6;
/// The cube walk uses a `u64` counter.
pub const MAX_SUM_BITS: usize = 63;

/// Consecutive gaps of a set read in descending-element order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GapVector(Vec<u32>);

impl GapVector {
    pub fn new(gaps: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = gaps.iter().find(|&&g| g == 0) {
            return Err(Error::NonPositivePart(bad));
        }
        Ok(GapVector(gaps))
    }

    pub fn gaps(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Inverse of [`gap_vector`]: cumulative sums from 1, read in reverse.
    pub fn to_set(&self) -> ValueSet {
        let mut acc = 1u32;
        let mut elements: Vec<u32> = self
            .0
            .iter()
            .rev()
            .map(|&d| {
                acc += d;
                acc
            })
            .collect();
        elements.sort_unstable();
        ValueSet::from_sorted_unchecked(elements)
    }
}

impl fmt::Display for GapVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// One maximal run `[max - len + 1, max]` of consecutive elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Run {
    pub max: u32,
    pub len: u32,
}

/// Run-length decomposition of a set, largest run first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RunType {
    runs: Vec<Run>,
}

impl RunType {
    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    /// Prefix sums `M_i = m_1 + … + m_i` of the run lengths.
    pub fn prefix_lengths(&self) -> Vec<u32> {
        self.runs
            .iter()
            .scan(0u32, |acc, r| {
                *acc += r.len;
                Some(*acc)
            })
            .collect()
    }

    pub fn to_set(&self) -> ValueSet {
        ValueSet::from_unsorted(self.runs.iter().flat_map(|r| (r.max + 1 - r.len)..=r.max))
            .expect("run elements are positive")
    }
}

impl fmt::Display for RunType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .runs
            .iter()
            .map(|r| format!("{}^{}", r.max, r.len))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

fn reject_one(set: &ValueSet) -> Result<()> {
    if set.contains(1) {
        Err(Error::ContainsOne)
    } else {
        Ok(())
    }
}

/// `(s_1 - s_2, …, s_{k-1} - s_k, s_k - 1)` for `S = {s_1 > … > s_k}`.
pub fn gap_vector(set: &ValueSet) -> Result<GapVector> {
    reject_one(set)?;
    let desc: Vec<u32> = set.elements().iter().rev().copied().collect();
    let gaps = desc
        .iter()
        .zip(desc.iter().skip(1).chain(std::iter::once(&1)))
        .map(|(a, b)| a - b)
        .collect();
    Ok(GapVector(gaps))
}

/// Decomposes a set into maximal runs of consecutive integers.
pub fn set_type(set: &ValueSet) -> Result<RunType> {
    reject_one(set)?;
    let mut runs: Vec<Run> = Vec::new();
    for &e in set.elements().iter().rev() {
        match runs.last_mut() {
            Some(run) if run.max - run.len == e => run.len += 1,
            _ => runs.push(Run { max: e, len: 1 }),
        }
    }
    Ok(RunType { runs })
}

/// Shared precondition handling. `Some(v)` is an early answer.
fn guard(n: u32, set: &ValueSet) -> Result<Option<BigUint>> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: 0,
            range: "n >= 1".into(),
        });
    }
    set.check_within(n)?;
    if set.contains(1) {
        return Ok(Some(BigUint::zero()));
    }
    if set.is_empty() {
        return Ok(Some(BigUint::one()));
    }
    if set.len() > MAX_SUM_BITS {
        return Err(Error::CapExceeded {
            what: "|S|",
            requested: set.len() as u64,
            cap: MAX_SUM_BITS as u64,
        });
    }
    Ok(None)
}

fn into_count(v: BigInt) -> BigUint {
    v.to_biguint()
        .expect("alternating sum for a descent set is nonnegative")
}

/// `cdes_n(S)` by the alternating sum over `{0,1}^|S|`.
pub fn cdes_formula(n: u32, set: &ValueSet) -> Result<BigUint> {
    if let Some(v) = guard(n, set)? {
        return Ok(v);
    }
    let gaps = gap_vector(set)?;
    Ok(into_count(alternating_power_sum(gaps.gaps())))
}

/// `Σ_x (-1)^{k-Σx} Π_i (1 + x_1 + … + x_i)^{e_i}` for arbitrary
/// nonnegative exponents.
///
/// The cube is walked with an ascending binary counter, `x_1` being the most
/// significant bit. Partial products of the prefix are cached so each step
/// only recomputes the factors whose prefix sum changed.
pub fn alternating_power_sum(exponents: &[u32]) -> BigInt {
    let k = exponents.len();
    assert!(k <= MAX_SUM_BITS, "too many summation variables: {k}");
    if k == 0 {
        return BigInt::one();
    }
    // powers[i][s] = (1 + s)^{e_i}, s = prefix sum through level i (≤ i + 1)
    let powers: Vec<Vec<BigUint>> = exponents
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            (0..=i as u32 + 1)
                .map(|s| BigUint::from(1 + s).pow(e))
                .collect()
        })
        .collect();

    if k < PARALLEL_MIN_BITS {
        return walk_cube(&powers, 0, 0, BigUint::one());
    }
    let fixed = PARALLEL_PREFIX_BITS.min(k);
    (0u64..1u64 << fixed)
        .into_par_iter()
        .map(|prefix| {
            let mut sum = 0u32;
            let mut product = BigUint::one();
            for (level, row) in powers.iter().enumerate().take(fixed) {
                sum += (prefix >> (fixed - 1 - level) & 1) as u32;
                product *= &row[sum as usize];
            }
            let sign_flip = (fixed as u32 - sum) % 2 == 1;
            let part = walk_cube(&powers, fixed, sum, product);
            if sign_flip {
                -part
            } else {
                part
            }
        })
        .sum()
}

/// Sums over the free levels `start..k`, given the fixed prefix's sum and
/// product. The sign accounts for the free levels only.
fn walk_cube(
    powers: &[Vec<BigUint>],
    start: usize,
    prefix_sum: u32,
    prefix_product: BigUint,
) -> BigInt {
    let k = powers.len();
    let free = k - start;
    if free == 0 {
        return BigInt::from_biguint(Sign::Plus, prefix_product);
    }
    // sums[t] / products[t]: state after level start + t - 1; index 0 is the prefix.
    let mut sums = vec![prefix_sum; free + 1];
    let mut products = vec![prefix_product; free + 1];
    for t in 0..free {
        products[t + 1] = &products[t] * &powers[start + t][sums[t] as usize];
    }
    let mut positive = BigUint::zero();
    let mut negative = BigUint::zero();
    let total = 1u64 << free;
    let mut counter = 0u64;
    loop {
        let ones = counter.count_ones();
        if (free as u32 - ones).is_multiple_of(2) {
            positive += &products[free];
        } else {
            negative += &products[free];
        }
        counter += 1;
        if counter == total {
            break;
        }
        // the highest bit that flipped is bit `trailing_zeros(counter)`,
        // i.e. free level `free - 1 - tz`; every level from there down changes.
        let first = free - 1 - counter.trailing_zeros() as usize;
        for t in first..free {
            let bit = (counter >> (free - 1 - t) & 1) as u32;
            sums[t + 1] = sums[t] + bit;
            products[t + 1] = &products[t] * &powers[start + t][sums[t + 1] as usize];
        }
    }
    BigInt::from_biguint(Sign::Plus, positive) - BigInt::from_biguint(Sign::Plus, negative)
}

/// `cdes_n(S)` by the run-grouped product: one linear factor per element
/// and one power per run,
///
/// ```text
/// Π_{i=1..|S|} (1 + X_i) · Π_{runs} (1 + X_{M_i})^{r_i - r_{i+1} - m_i},   r_{s+1} = 1
/// ```
///
/// where `X_i = x_1 + … + x_i`. Evaluated term by term.
pub fn cdes_formula_typed(n: u32, set: &ValueSet) -> Result<BigUint> {
    if let Some(v) = guard(n, set)? {
        return Ok(v);
    }
    let ty = set_type(set)?;
    let k = set.len();
    let prefix_lengths = ty.prefix_lengths();
    let run_exponents: Vec<u32> = ty
        .runs()
        .iter()
        .enumerate()
        .map(|(i, run)| {
            let next_max = ty.runs().get(i + 1).map_or(1, |r| r.max);
            run.max - next_max - run.len
        })
        .collect();

    let mut total = BigInt::zero();
    let mut prefix = vec![0u32; k + 1];
    for x in 0u64..1u64 << k {
        for i in 0..k {
            prefix[i + 1] = prefix[i] + (x >> (k - 1 - i) & 1) as u32;
        }
        let mut term = BigUint::one();
        for &p in &prefix[1..] {
            term *= 1 + p;
        }
        for (&m, &e) in prefix_lengths.iter().zip(&run_exponents) {
            term *= BigUint::from(1 + prefix[m as usize]).pow(e);
        }
        if (k as u32 - prefix[k]).is_multiple_of(2) {
            total += BigInt::from(term);
        } else {
            total -= BigInt::from(term);
        }
    }
    Ok(into_count(total))
}
