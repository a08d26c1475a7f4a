//! Coefficient rings the calculus is generic over.
//!
//! Everything downstream (Chow classes, K-classes, operators) is written
//! against [`Scalar`]. Three rings implement it: the integers, the field with
//! two elements, and the localizations `Z[1/k]` carried by
//! [`Coefficient`](super::Coefficient).

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::lattice;

/// Arbitrary-precision integers.
pub type Integer = BigInt;

pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_integer(n: &Integer) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_integer(&Integer::from(n))
    }

    /// Multiplicative inverse, when it exists in this ring.
    fn try_inverse(&self) -> Option<Self>;

    /// `1/k` in this ring, switching on the localization at `k` if the ring
    /// supports one.
    fn integer_inverse(k: i64) -> Option<Self>;

    /// Moves the value into the ring with `k` inverted. Rings without a
    /// localization return the value unchanged.
    fn localize(self, _k: i64) -> Self {
        self
    }

    /// Exact quotient by an integer, if it exists in this ring.
    fn checked_div_integer(&self, d: &Integer) -> Option<Self>;

    /// The value as an integer, if it is one.
    fn to_integer(&self) -> Option<Integer>;

    /// Coordinates of `target` in the span of `generators` (all vectors of the
    /// same length), or `None` if it is not a member. Exact.
    fn solve_in_span(generators: &[Vec<Self>], target: &[Self]) -> Option<Vec<Self>>;

    fn pow_u32(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for Integer {
    fn from_integer(n: &Integer) -> Self {
        n.clone()
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }

    fn integer_inverse(k: i64) -> Option<Self> {
        match k {
            1 | -1 => Some(Integer::from(k)),
            _ => None,
        }
    }

    fn checked_div_integer(&self, d: &Integer) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    fn to_integer(&self) -> Option<Integer> {
        Some(self.clone())
    }

    fn solve_in_span(generators: &[Vec<Self>], target: &[Self]) -> Option<Vec<Self>> {
        lattice::solve_via_snf(generators, target)
    }
}

/// Residues modulo two.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct F2(pub bool);

impl F2 {
    pub const ZERO: F2 = F2(false);
    pub const ONE: F2 = F2(true);

    pub fn from_parity(n: &Integer) -> Self {
        F2(n.is_odd())
    }
}

impl fmt::Display for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 { "1" } else { "0" })
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for F2 {
    type Output = F2;
    fn add(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Sub for F2 {
    type Output = F2;
    fn sub(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for F2 {
    type Output = F2;
    fn mul(self, rhs: F2) -> F2 {
        F2(self.0 & rhs.0)
    }
}

impl Neg for F2 {
    type Output = F2;
    fn neg(self) -> F2 {
        self
    }
}

impl Zero for F2 {
    fn zero() -> Self {
        F2::ZERO
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for F2 {
    fn one() -> Self {
        F2::ONE
    }
}

impl Scalar for F2 {
    fn from_integer(n: &Integer) -> Self {
        F2::from_parity(n)
    }

    fn try_inverse(&self) -> Option<Self> {
        self.0.then_some(*self)
    }

    fn integer_inverse(k: i64) -> Option<Self> {
        (k % 2 != 0).then_some(F2::ONE)
    }

    fn checked_div_integer(&self, d: &Integer) -> Option<Self> {
        if d.is_odd() {
            Some(*self)
        } else {
            None
        }
    }

    fn to_integer(&self) -> Option<Integer> {
        Some(Integer::from(self.0 as u8))
    }

    fn solve_in_span(generators: &[Vec<Self>], target: &[Self]) -> Option<Vec<Self>> {
        solve_gf2(generators, target)
    }
}

/// Gaussian elimination over the two-element field.
fn solve_gf2(generators: &[Vec<F2>], target: &[F2]) -> Option<Vec<F2>> {
    let rows = target.len();
    let cols = generators.len();
    // augmented matrix, one row per coordinate
    let mut m: Vec<Vec<bool>> = (0..rows)
        .map(|i| {
            let mut row: Vec<bool> = generators.iter().map(|g| g[i].0).collect();
            row.push(target[i].0);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c]) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..rows {
            if i != r && m[i][c] {
                let pivot_row = m[r].clone();
                for (a, b) in m[i].iter_mut().zip(pivot_row) {
                    *a ^= b;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| row[cols]) {
        return None;
    }
    let mut sol = vec![F2::ZERO; cols];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = F2(m[i][cols]);
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_arithmetic() {
        assert_eq!(F2::ONE + F2::ONE, F2::ZERO);
        assert_eq!(-F2::ONE, F2::ONE);
        assert_eq!(F2::from_i64(-3), F2::ONE);
        assert_eq!(F2::from_i64(4), F2::ZERO);
    }

    #[test]
    fn gf2_solve() {
        let g = vec![vec![F2::ONE, F2::ONE, F2::ZERO], vec![F2::ZERO, F2::ONE, F2::ONE]];
        let t = vec![F2::ONE, F2::ZERO, F2::ONE];
        assert_eq!(F2::solve_in_span(&g, &t), Some(vec![F2::ONE, F2::ONE]));
        assert_eq!(F2::solve_in_span(&g, &[F2::ONE, F2::ZERO, F2::ZERO]), None);
    }

    #[test]
    fn integer_units() {
        assert!(Integer::from(-1).try_inverse().is_some());
        assert!(Integer::from(2).try_inverse().is_none());
        assert_eq!(Integer::integer_inverse(3), None);
    }
}
