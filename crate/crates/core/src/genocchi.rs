//! Gandhi polynomials and generalized Genocchi numbers.
//!
//! `A_{n+1}(X) = X^k A_n(X+1) - (X-1)^k A_n(X)`, `A_0 = 1`, and
//! `G_{2n}^{(k)} = A_{n-1}(1)`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::perm::fold_permutations;

/// Default largest `k·n` the permutation cross-check will enumerate.
pub const DEFAULT_GENOCCHI_CAP: u32 = 8;

/// Dense univariate polynomial, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPolynomial(Vec<BigInt>);

impl UniPolynomial {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        UniPolynomial(coefficients)
    }

    pub fn constant(c: i64) -> Self {
        UniPolynomial::new(vec![BigInt::from(c)])
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.0
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        self.0
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `p(X + 1)`, by expanding each `(X+1)^j` binomially.
    pub fn shift_by_one(&self) -> UniPolynomial {
        let mut out = vec![BigInt::zero(); self.0.len()];
        let mut binom: Vec<BigInt> = Vec::with_capacity(self.0.len());
        for (j, c) in self.0.iter().enumerate() {
            // row j of Pascal's triangle
            binom.push(BigInt::one());
            for i in (1..j).rev() {
                let prev = binom[i - 1].clone();
                binom[i] += prev;
            }
            for (i, b) in binom.iter().enumerate() {
                out[i] += c * b;
            }
        }
        UniPolynomial::new(out)
    }

    fn mul(&self, other: &UniPolynomial) -> UniPolynomial {
        if self.0.is_empty() || other.0.is_empty() {
            return UniPolynomial(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPolynomial::new(out)
    }

    fn sub(&self, other: &UniPolynomial) -> UniPolynomial {
        let len = self.0.len().max(other.0.len());
        let out = (0..len)
            .map(|i| {
                let a = self.0.get(i).cloned().unwrap_or_default();
                let b = other.0.get(i).cloned().unwrap_or_default();
                a - b
            })
            .collect();
        UniPolynomial::new(out)
    }

    fn pow(&self, e: u32) -> UniPolynomial {
        (0..e).fold(UniPolynomial::constant(1), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for UniPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (deg, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "X")?,
                (1, false) => write!(f, "{mag}X")?,
                (_, true) => write!(f, "X^{deg}")?,
                (_, false) => write!(f, "{mag}X^{deg}")?,
            }
        }
        Ok(())
    }
}

fn check_k(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::OutOfRange {
            what: "k",
            value: 0,
            range: "k >= 1".into(),
        });
    }
    Ok(())
}

/// `A_n^{(k)}(X)`.
pub fn gandhi_poly(k: u32, n: u32) -> Result<UniPolynomial> {
    check_k(k)?;
    let x_k = UniPolynomial::new(vec![BigInt::zero(), BigInt::one()]).pow(k);
    let x_minus_one_k = UniPolynomial::new(vec![BigInt::from(-1), BigInt::one()]).pow(k);
    let mut a = UniPolynomial::constant(1);
    for _ in 0..n {
        a = x_k.mul(&a.shift_by_one()).sub(&x_minus_one_k.mul(&a));
    }
    Ok(a)
}

/// `G_{2n}^{(k)} = A_{n-1}^{(k)}(1)`.
pub fn genocchi_number(k: u32, n: u32) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: 0,
            range: "n >= 1".into(),
        });
    }
    let value = gandhi_poly(k, n - 1)?.evaluate(&BigInt::one());
    value.to_biguint().ok_or_else(|| Error::OutOfRange {
        what: "Genocchi value sign",
        value: 0,
        range: "nonnegative".into(),
    })
}

/// Counts `σ ∈ S_{kn}` with `σ(i) ≥ i` exactly when `k | σ(i)`.
pub fn brute_genocchi_perm_count(k: u32, n: u32, cap: u32) -> Result<BigUint> {
    check_k(k)?;
    let size = k * n;
    if size > cap {
        return Err(Error::CapExceeded {
            what: "k*n",
            requested: size as u64,
            cap: cap as u64,
        });
    }
    let count = fold_permutations(
        size,
        || 0u64,
        |acc, p| {
            let ok = p
                .iter()
                .enumerate()
                .all(|(i, &v)| (v as usize > i) == v.is_multiple_of(k));
            if ok {
                *acc += 1;
            }
        },
        |a, b| a + b,
    );
    Ok(BigUint::from(count))
}
