//! Exact enumeration of permutations by circular descent set.
//!
//! The circular descent set of a permutation is the set of *values*
//! `σ(i)` with `σ(i) > σ(i+1)`. This crate counts permutations by that set
//! through several independent routes (exhaustive enumeration, a closed
//! alternating sum, two recursions and a weighted generating tree), builds
//! the multivariate descent polynomials, and applies the counts to
//! permutation tableaux and generalized Genocchi numbers.

pub mod error;
pub mod formula;
pub mod genocchi;
pub mod perm;
pub mod poly;
pub mod recursion;
pub mod tableaux;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use formula::{cdes_formula, cdes_formula_typed, gap_vector, set_type, GapVector, RunType};
pub use perm::{
    brute_cdes_count, brute_cdes_table, brute_nwexb_count, circular_descent_set, nwexb_set,
    parse_list, reduction, BruteCap, CountTable, Permutation, ValueSet,
};
pub use recursion::{cdes_insertion_table, cdes_recursive, delta, MemoCache};
