//! Sparse polynomials in `x_1, x_2, …` and `y` with exact integer
//! coefficients, and the circular descent polynomials built from them.
//!
//! The descent polynomial `g_n` records each descent set `S` as the monomial
//! `Π_{s ∈ S} x_{s-1} · y^{|S|}`. Public functions take and return descent
//! sets; the shift to variable indices happens only in
//! [`Monomial::for_descent_set`] and [`Monomial::descent_set`].

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::formula::gap_vector;
use crate::perm::ValueSet;
use crate::tree::{tree_weight_sum, WeightSequence};

/// A monomial `Π x_i^{e_i} · y^ydeg`.
///
/// Ordered by `ydeg` first and then lexicographically by the x-variable
/// list, which is the canonical term order for printing.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    ydeg: u32,
    // (variable index, exponent ≥ 1), sorted by index
    xs: Vec<(u32, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    /// Squarefree monomial `x_{i_1} ⋯ x_{i_r} y^ydeg`.
    pub fn new(xvars: &[u32], ydeg: u32) -> Result<Self> {
        if xvars.contains(&0) {
            return Err(Error::InvalidSet("variable indices start at 1".into()));
        }
        if xvars.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSet(format!(
                "variable indices must be strictly increasing, got {xvars:?}"
            )));
        }
        Ok(Monomial {
            ydeg,
            xs: xvars.iter().map(|&i| (i, 1)).collect(),
        })
    }

    pub fn x(index: u32) -> Self {
        Monomial {
            ydeg: 0,
            xs: vec![(index, 1)],
        }
    }

    pub fn y(degree: u32) -> Self {
        Monomial {
            ydeg: degree,
            xs: Vec::new(),
        }
    }

    /// The monomial `x_S y^{|S|}` recording descent set `S`.
    pub fn for_descent_set(set: &ValueSet) -> Result<Self> {
        if set.contains(1) {
            return Err(Error::ContainsOne);
        }
        Ok(Monomial {
            ydeg: set.len() as u32,
            xs: set.elements().iter().map(|&s| (s - 1, 1)).collect(),
        })
    }

    /// Inverse of [`Monomial::for_descent_set`], ignoring `y`. `None` if the
    /// monomial is not squarefree.
    pub fn descent_set(&self) -> Option<ValueSet> {
        if !self.is_squarefree() {
            return None;
        }
        Some(ValueSet::from_sorted_unchecked(
            self.xs.iter().map(|&(i, _)| i + 1).collect(),
        ))
    }

    pub fn ydeg(&self) -> u32 {
        self.ydeg
    }

    /// Indices of the x variables present.
    pub fn xvars(&self) -> Vec<u32> {
        self.xs.iter().map(|&(i, _)| i).collect()
    }

    pub fn x_degree(&self) -> u32 {
        self.xs.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.xs.iter().all(|&(_, e)| e == 1)
    }

    pub fn is_one(&self) -> bool {
        self.ydeg == 0 && self.xs.is_empty()
    }

    fn exponent_of(&self, var: u32) -> u32 {
        self.xs
            .binary_search_by_key(&var, |&(i, _)| i)
            .map_or(0, |pos| self.xs[pos].1)
    }

    pub fn with_ydeg(&self, ydeg: u32) -> Self {
        Monomial {
            ydeg,
            xs: self.xs.clone(),
        }
    }

    fn product(&self, other: &Monomial) -> Monomial {
        let mut merged: BTreeMap<u32, u32> = self.xs.iter().copied().collect();
        for &(i, e) in &other.xs {
            *merged.entry(i).or_insert(0) += e;
        }
        Monomial {
            ydeg: self.ydeg + other.ydeg,
            xs: merged.into_iter().collect(),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut factors: Vec<String> = self
            .xs
            .iter()
            .map(|&(i, e)| {
                if e == 1 {
                    format!("x{i}")
                } else {
                    format!("x{i}^{e}")
                }
            })
            .collect();
        match self.ydeg {
            0 => {}
            1 => factors.push("y".into()),
            d => factors.push(format!("y^{d}")),
        }
        write!(f, "{}", factors.join("*"))
    }
}

/// Which variable to differentiate by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    X(u32),
    Y,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparsePolynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl SparsePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Monomial::one(), BigInt::one())
    }

    pub fn term(monomial: Monomial, coefficient: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(monomial, coefficient);
        p
    }

    pub fn add_term(&mut self, monomial: Monomial, coefficient: BigInt) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            Entry::Vacant(slot) => {
                slot.insert(coefficient);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coefficient;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, monomial: &Monomial) -> BigInt {
        self.terms.get(monomial).cloned().unwrap_or_default()
    }

    /// Coefficient of `x_S y^{|S|}`.
    pub fn coefficient_of_set(&self, set: &ValueSet) -> Result<BigInt> {
        Ok(self.coefficient(&Monomial::for_descent_set(set)?))
    }

    pub fn partial(&self, var: Variable) -> SparsePolynomial {
        let mut out = SparsePolynomial::zero();
        for (m, c) in &self.terms {
            match var {
                Variable::Y => {
                    if m.ydeg > 0 {
                        out.add_term(m.with_ydeg(m.ydeg - 1), c * m.ydeg);
                    }
                }
                Variable::X(i) => {
                    let e = m.exponent_of(i);
                    if e > 0 {
                        let xs =
                            m.xs.iter()
                                .filter_map(|&(j, f)| match (j == i, f) {
                                    (true, 1) => None,
                                    (true, f) => Some((j, f - 1)),
                                    _ => Some((j, f)),
                                })
                                .collect();
                        out.add_term(Monomial { ydeg: m.ydeg, xs }, c * e);
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, factor: &BigInt) -> SparsePolynomial {
        let mut out = SparsePolynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * factor);
        }
        out
    }

    /// Evaluates with every `x_i` set to `x` and `y` set to `y`.
    pub fn evaluate_uniform(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(m, c)| {
                c * num_traits::pow(x.clone(), m.x_degree() as usize)
                    * num_traits::pow(y.clone(), m.ydeg as usize)
            })
            .sum()
    }

    /// The terms of y-degree `k`, with `y` removed.
    pub fn y_slice(&self, k: u32) -> SparsePolynomial {
        let mut out = SparsePolynomial::zero();
        for (m, c) in self.terms.iter().filter(|(m, _)| m.ydeg == k) {
            out.add_term(m.with_ydeg(0), c.clone());
        }
        out
    }

    /// Multiplies every term by `y^k`.
    pub fn times_y(&self, k: u32) -> SparsePolynomial {
        let mut out = SparsePolynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(m.with_ydeg(m.ydeg + k), c.clone());
        }
        out
    }

    pub fn max_ydeg(&self) -> u32 {
        self.terms.keys().map(|m| m.ydeg).max().unwrap_or(0)
    }
}

impl Add for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self + &(-rhs)
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn neg(self) -> SparsePolynomial {
        SparsePolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut out = SparsePolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.product(mb), ca * cb);
            }
        }
        out
    }
}

/// Canonical text form: terms in ascending y-degree then lexicographic
/// x-variables, joined by `" + "`. A nonconstant term is `<coeff>*<factors>`
/// with the coefficient always written; the constant term is the bare
/// number. `y^1` prints as `y`. The zero polynomial prints as `0`.
impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Circular descent polynomial `g_n`, built by
/// `g_{m+1} = (1 + m x_m y) g_m + x_m Σ_{i<m} ∂g_m/∂x_i - x_m y² ∂g_m/∂y`
/// from `g_2 = 1 + x_1 y`. For `n = 1` the polynomial is `1`.
pub fn gn(n: u32) -> Result<SparsePolynomial> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: 0,
            range: "n >= 1".into(),
        });
    }
    if n == 1 {
        return Ok(SparsePolynomial::one());
    }
    let mut g = SparsePolynomial::one();
    g.add_term(Monomial::new(&[1], 1).expect("valid"), BigInt::one());
    for m in 2..n {
        g = insertion_step(&g, m);
    }
    Ok(g)
}

fn insertion_step(g: &SparsePolynomial, m: u32) -> SparsePolynomial {
    let x_m = SparsePolynomial::term(Monomial::x(m), BigInt::one());
    let mut factor = SparsePolynomial::one();
    factor.add_term(Monomial::new(&[m], 1).expect("valid"), BigInt::from(m));

    let mut x_partials = SparsePolynomial::zero();
    for i in 1..m {
        x_partials = &x_partials + &g.partial(Variable::X(i));
    }
    let y_sq = SparsePolynomial::term(Monomial::y(2), BigInt::one());
    let y_part = &(&x_m * &y_sq) * &g.partial(Variable::Y);

    &(&(&factor * g) + &(&x_m * &x_partials)) - &y_part
}

/// `{1 + d_1, 1 + d_1 + d_2, …, 1 + d_1 + … + d_k}`.
pub fn tau(parts: &[u32]) -> Result<ValueSet> {
    if let Some(&bad) = parts.iter().find(|&&d| d == 0) {
        return Err(Error::NonPositivePart(bad));
    }
    let mut acc = 1u32;
    Ok(ValueSet::from_sorted_unchecked(
        parts
            .iter()
            .map(|&d| {
                acc += d;
                acc
            })
            .collect(),
    ))
}

/// Compositions of `total` into exactly `parts` positive parts, in
/// lexicographic order.
pub fn compositions(total: u32, parts: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, slots: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if rest < slots {
            return;
        }
        for first in 1..=rest - (slots - 1) {
            cur.push(first);
            go(rest - first, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, &mut Vec::new(), &mut out);
    out
}

/// The size-`k` slice of `g_n` (with `y` removed), assembled from tree
/// weights: every descent set of size `k` in `[2, n]` is `τ(D)` for a unique
/// composition `D` of `max(S) - 1 ≤ n - 1`, and its coefficient is the tree
/// weight of `gap_vector(τ(D))`, which is `D` reversed.
pub fn gnk(n: u32, k: u32) -> Result<SparsePolynomial> {
    if n == 0 || k >= n {
        return Err(Error::OutOfRange {
            what: "k",
            value: k as u64,
            range: format!("0..={}", n.saturating_sub(1)),
        });
    }
    let mut out = SparsePolynomial::zero();
    if k == 0 {
        out.add_term(Monomial::one(), BigInt::one());
        return Ok(out);
    }
    for total in k..n {
        for parts in compositions(total, k) {
            let set = tau(&parts)?;
            let gaps = gap_vector(&set)?;
            let weight = tree_weight_sum(&WeightSequence::new(gaps.gaps().to_vec()))?;
            debug_assert!(!weight.is_negative());
            out.add_term(Monomial::for_descent_set(&set)?.with_ydeg(0), weight);
        }
    }
    Ok(out)
}
