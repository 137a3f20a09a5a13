//! Permutation tableaux counted by shape.
//!
//! A tableau of shape `λ = (λ_1 ≥ … ≥ λ_k ≥ 1)` is a 0/1 filling of the
//! Young diagram in which every column holds a 1 and no 0 has both a 1
//! above it (same column) and a 1 to its left (same row). The bounding
//! rectangle is `k × λ_1`, so the border path has `n = k + λ_1` steps.
//!
//! Tableaux of a shape are equinumerous with permutations of `[n]` whose
//! circular descent set is the set of horizontal step labels on the border
//! path, so the count reduces to `cdes_n(S)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::formula::cdes_formula;
use crate::perm::{parse_list, ValueSet};

/// Default largest number of boxes the filling oracle will enumerate.
pub const DEFAULT_FILLING_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionShape(Vec<u32>);

impl PartitionShape {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidShape("a shape needs at least one row".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidShape("parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape(format!(
                "parts must be weakly decreasing, got {parts:?}"
            )));
        }
        Ok(PartitionShape(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn rows(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn columns(&self) -> u32 {
        self.0[0]
    }

    /// Rows plus columns of the bounding rectangle.
    pub fn semiperimeter(&self) -> u32 {
        self.rows() + self.columns()
    }

    pub fn boxes(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    /// Height of column `c` (1-based).
    pub fn column_height(&self, c: u32) -> u32 {
        self.0.iter().filter(|&&p| p >= c).count() as u32
    }
}

impl fmt::Display for PartitionShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses `"3,3,1"`.
impl FromStr for PartitionShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PartitionShape::new(parse_list(s)?)
    }
}

/// Distinct part values `a_1 > … > a_s` and `b_i = #{j : λ_j ≥ a_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionType {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

pub fn partition_type(shape: &PartitionShape) -> PartitionType {
    let mut a: Vec<u32> = shape.parts().to_vec();
    a.dedup();
    let b = a
        .iter()
        .map(|&v| shape.parts().iter().filter(|&&p| p >= v).count() as u32)
        .collect();
    PartitionType { a, b }
}

/// Walks the southeast border from the rectangle's northeast corner to its
/// southwest corner, labelling steps `1..=n`, and returns `n` together with
/// the labels of the horizontal steps.
pub fn shape_to_descent_set(shape: &PartitionShape) -> (u32, ValueSet) {
    let parts = shape.parts();
    let k = parts.len();
    let n = shape.semiperimeter();
    let mut row = 0usize;
    let mut col = shape.columns();
    let mut horizontal = Vec::with_capacity(col as usize);
    for label in 1..=n {
        if row < k && parts[row] == col {
            row += 1;
        } else {
            horizontal.push(label);
            col -= 1;
        }
    }
    debug_assert_eq!(col, 0);
    debug_assert_eq!(row, k);
    (n, ValueSet::from_sorted_unchecked(horizontal))
}

/// Number of tableaux of `shape`, via `cdes_n(S)` on the border-path set.
pub fn count_tableaux_formula(shape: &PartitionShape) -> BigUint {
    let (n, set) = shape_to_descent_set(shape);
    cdes_formula(n, &set).expect("border-path set lies in [2, n]")
}

/// Number of tableaux of `shape`, evaluated directly from the partition
/// type:
///
/// ```text
/// Σ_{x ∈ {0,1}^{λ_1}} (-1)^{λ_1 - Σx} Π_{i=1..λ_1} (1 + X_i) · Π_{i=1..s} (1 + X_{a_{s+1-i}})^{b_{s+1-i} - b_{s-i}}
/// ```
///
/// with `X_i = x_1 + … + x_i` and `b_0 = 1`.
pub fn count_tableaux_by_type(shape: &PartitionShape) -> Result<BigUint> {
    let width = shape.columns() as usize;
    if width > crate::formula::MAX_SUM_BITS {
        return Err(Error::CapExceeded {
            what: "shape width",
            requested: width as u64,
            cap: crate::formula::MAX_SUM_BITS as u64,
        });
    }
    let ty = partition_type(shape);
    let s = ty.a.len();
    let b_at = |i: usize| if i == 0 { 1 } else { ty.b[i - 1] };
    // (prefix index a_j, exponent b_j - b_{j-1}) for j = s, s-1, …, 1
    let factors: Vec<(usize, u32)> = (1..=s)
        .map(|i| {
            let j = s + 1 - i;
            (ty.a[j - 1] as usize, b_at(j) - b_at(j - 1))
        })
        .collect();

    let mut total = BigInt::zero();
    let mut prefix = vec![0u32; width + 1];
    for x in 0u64..1u64 << width {
        for i in 0..width {
            prefix[i + 1] = prefix[i] + (x >> (width - 1 - i) & 1) as u32;
        }
        let mut term = BigUint::one();
        for &p in &prefix[1..] {
            term *= 1 + p;
        }
        for &(idx, e) in &factors {
            term *= BigUint::from(1 + prefix[idx]).pow(e);
        }
        if (width as u32 - prefix[width]).is_multiple_of(2) {
            total += BigInt::from(term);
        } else {
            total -= BigInt::from(term);
        }
    }
    Ok(total.to_biguint().expect("tableau counts are nonnegative"))
}

/// A 0/1 filling of a shape, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableauFilling {
    shape: PartitionShape,
    bits: Vec<bool>,
}

impl TableauFilling {
    pub fn new(shape: PartitionShape, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != shape.boxes() {
            return Err(Error::DimensionMismatch {
                expected: shape.boxes(),
                got: bits.len(),
            });
        }
        Ok(TableauFilling { shape, bits })
    }

    /// Builds a filling from one string of `0`/`1` characters per row.
    pub fn from_rows(rows: &[&str]) -> Result<Self> {
        let parts = rows.iter().map(|r| r.len() as u32).collect();
        let shape = PartitionShape::new(parts)?;
        let mut bits = Vec::with_capacity(shape.boxes());
        for row in rows {
            for ch in row.chars() {
                match ch {
                    '0' => bits.push(false),
                    '1' => bits.push(true),
                    other => return Err(Error::Parse(format!("unexpected cell '{other}'"))),
                }
            }
        }
        TableauFilling::new(shape, bits)
    }

    pub fn shape(&self) -> &PartitionShape {
        &self.shape
    }

    /// Cell at 1-based `(row, col)`, row 1 on top.
    pub fn cell(&self, row: u32, col: u32) -> bool {
        let offset: u32 = self.shape.parts()[..row as usize - 1].iter().sum();
        self.bits[(offset + col - 1) as usize]
    }
}

/// One row per line of `0`/`1` characters.
impl fmt::Display for TableauFilling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut offset = 0usize;
        for &len in self.shape.parts() {
            let row: String = self.bits[offset..offset + len as usize]
                .iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect();
            writeln!(f, "{row}")?;
            offset += len as usize;
        }
        Ok(())
    }
}

/// Checks both defining properties directly.
pub fn is_valid_tableau(filling: &TableauFilling) -> bool {
    let shape = filling.shape();
    for c in 1..=shape.columns() {
        if !(1..=shape.column_height(c)).any(|r| filling.cell(r, c)) {
            return false;
        }
    }
    for (r0, &len) in shape.parts().iter().enumerate() {
        let r = r0 as u32 + 1;
        for c in 1..=len {
            if filling.cell(r, c) {
                continue;
            }
            let above = (1..r).any(|rr| filling.cell(rr, c));
            let left = (1..c).any(|cc| filling.cell(r, cc));
            if above && left {
                return false;
            }
        }
    }
    true
}

/// Counts valid fillings by enumeration, one column at a time: each column
/// takes only patterns with at least one 1, and a pattern is rejected as
/// soon as it places a 0 below a 1 in a row that already has a 1.
pub fn brute_count_tableaux(shape: &PartitionShape, cap: usize) -> Result<BigUint> {
    let boxes = shape.boxes();
    if boxes > cap {
        return Err(Error::CapExceeded {
            what: "boxes",
            requested: boxes as u64,
            cap: cap as u64,
        });
    }
    let heights: Vec<u32> = (1..=shape.columns())
        .map(|c| shape.column_height(c))
        .collect();
    Ok(BigUint::from(count_columns(&heights, 0)))
}

// `row_has_one` bit r: row r+1 holds a 1 in an earlier column
fn count_columns(heights: &[u32], row_has_one: u64) -> u64 {
    let Some((&h, rest)) = heights.split_first() else {
        return 1;
    };
    let mut total = 0;
    'pattern: for pattern in 1u64..1u64 << h {
        let mut seen_one = false;
        for r in 0..h {
            let bit = pattern >> r & 1 == 1;
            if !bit && seen_one && row_has_one >> r & 1 == 1 {
                continue 'pattern;
            }
            seen_one |= bit;
        }
        total += count_columns(rest, row_has_one | pattern);
    }
    total
}

/// All shapes with exactly `boxes` boxes and at most `max_rows` rows,
/// parts in reverse lexicographic order.
pub fn partitions(boxes: u32, max_rows: u32) -> Vec<PartitionShape> {
    fn go(
        rest: u32,
        max_part: u32,
        rows_left: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<PartitionShape>,
    ) {
        if rest == 0 {
            out.push(PartitionShape(cur.clone()));
            return;
        }
        if rows_left == 0 {
            return;
        }
        for part in (1..=max_part.min(rest)).rev() {
            cur.push(part);
            go(rest - part, part, rows_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if boxes > 0 {
        go(boxes, boxes, max_rows, &mut Vec::new(), &mut out);
    }
    out
}

/// All shapes whose bounding rectangle has `rows + columns = n`.
pub fn shapes_with_semiperimeter(n: u32) -> Vec<PartitionShape> {
    fn tails(len: u32, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if len == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max_part).rev() {
            cur.push(part);
            tails(len - 1, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for width in (1..n).rev() {
        let rows = n - width;
        let mut found = Vec::new();
        tails(rows - 1, width, &mut vec![width], &mut found);
        out.extend(found.into_iter().map(PartitionShape));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(v: &[u32]) -> PartitionShape {
        PartitionShape::new(v.to_vec()).unwrap()
    }

    fn set(v: &[u32]) -> ValueSet {
        ValueSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn shape_validation() {
        assert!(PartitionShape::new(vec![]).is_err());
        assert!(PartitionShape::new(vec![1, 2]).is_err());
        assert!(PartitionShape::new(vec![2, 0]).is_err());
        assert_eq!(
            "3,3,1".parse::<PartitionShape>().unwrap(),
            shape(&[3, 3, 1])
        );
    }

    #[test]
    fn type_examples() {
        let t = partition_type(&shape(&[2, 1]));
        assert_eq!((t.a, t.b), (vec![2, 1], vec![1, 2]));
        let t = partition_type(&shape(&[3, 3, 1]));
        assert_eq!((t.a, t.b), (vec![3, 1], vec![2, 3]));
        let t = partition_type(&shape(&[2, 2]));
        assert_eq!((t.a, t.b), (vec![2], vec![2]));
    }

    #[test]
    fn border_walk_examples() {
        assert_eq!(shape_to_descent_set(&shape(&[2, 1])), (4, set(&[2, 4])));
        assert_eq!(shape_to_descent_set(&shape(&[1, 1, 1])), (4, set(&[4])));
        assert_eq!(shape_to_descent_set(&shape(&[3])), (4, set(&[2, 3, 4])));
        assert_eq!(shape_to_descent_set(&shape(&[2, 2])), (4, set(&[3, 4])));
        assert_eq!(
            shape_to_descent_set(&shape(&[3, 3, 1])),
            (6, set(&[3, 4, 6]))
        );
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_tableaux_formula(&shape(&[2, 1])), 3u32.into());
        assert_eq!(count_tableaux_formula(&shape(&[1, 1, 1])), 7u32.into());
        assert_eq!(count_tableaux_formula(&shape(&[3])), 1u32.into());
        let brute = |v: &[u32]| brute_count_tableaux(&shape(v), DEFAULT_FILLING_CAP).unwrap();
        assert_eq!(brute(&[2, 1]), 3u32.into());
        assert_eq!(brute(&[2, 2]), 7u32.into());
        assert_eq!(brute(&[1, 1]), 3u32.into());
    }

    #[test]
    fn validity_examples() {
        let valid = |rows: &[&str]| is_valid_tableau(&TableauFilling::from_rows(rows).unwrap());
        assert!(valid(&["11", "1"]));
        assert!(!valid(&["01", "0"]));
        assert!(!valid(&["11", "10"]));
        assert!(TableauFilling::new(shape(&[2, 1]), vec![true; 4]).is_err());
        let f = TableauFilling::from_rows(&["10", "1"]).unwrap();
        assert_eq!(f.to_string(), "10\n1\n");
    }

    #[test]
    fn pruned_oracle_matches_plain_enumeration() {
        for boxes in 1..=9 {
            for sh in partitions(boxes, 9) {
                let mut plain = 0u64;
                for mask in 0u64..1 << boxes {
                    let bits = (0..boxes).map(|i| mask >> i & 1 == 1).collect();
                    if is_valid_tableau(&TableauFilling::new(sh.clone(), bits).unwrap()) {
                        plain += 1;
                    }
                }
                assert_eq!(brute_count_tableaux(&sh, 20).unwrap(), plain.into(), "{sh}");
            }
        }
    }

    #[test]
    fn type_sum_matches_border_path_route() {
        for boxes in 1..=12 {
            for sh in partitions(boxes, 6) {
                assert_eq!(
                    count_tableaux_by_type(&sh).unwrap(),
                    count_tableaux_formula(&sh),
                    "{sh}"
                );
            }
        }
    }

    #[test]
    fn border_set_shape_properties() {
        for n in 2..=9 {
            let shapes = shapes_with_semiperimeter(n);
            assert_eq!(shapes.len(), 1 << (n - 2));
            let mut sets: Vec<ValueSet> = shapes
                .iter()
                .map(|sh| {
                    let (m, s) = shape_to_descent_set(sh);
                    assert_eq!(m, n);
                    assert!(!s.contains(1));
                    assert_eq!(s.largest(), Some(n));
                    assert_eq!(s.len() as u32, sh.columns());
                    assert_eq!(n - s.len() as u32, sh.rows());
                    s
                })
                .collect();
            sets.sort();
            sets.dedup();
            assert_eq!(sets.len(), shapes.len());
        }
    }

    #[test]
    fn shapes_account_for_all_permutations() {
        // shapes of semiperimeter m cover the sets with max(S) = m; the
        // empty set contributes the identity
        for n in 2..=8 {
            let mut total = BigUint::one();
            for m in 2..=n {
                for sh in shapes_with_semiperimeter(m) {
                    total += count_tableaux_formula(&sh);
                }
            }
            assert_eq!(total, crate::perm::factorial(n), "n={n}");
        }
    }

    #[test]
    fn partition_enumeration_counts() {
        // p(n) for n = 1..=10
        let expect = [1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, &p) in (1..=10).zip(&expect) {
            assert_eq!(partitions(n, n).len(), p);
        }
        assert_eq!(partitions(6, 2).len(), 4);
        assert_eq!(partitions(0, 3).len(), 0);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(brute_count_tableaux(&shape(&[5, 5]), 9).is_err());
    }
}
