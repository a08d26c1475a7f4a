//! Integers with one integer inverted.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::lattice;
use super::scalar::{Integer, Scalar};

/// An element `numerator / base^exponent` of `Z[1/base]`.
///
/// `base` is the absolute value of the inverted integer (`Z[1/k] = Z[1/|k|]`).
/// Values with exponent zero are plain integers and combine with any base;
/// two values localized at different bases cannot be combined, which panics.
#[derive(Clone, Debug)]
pub struct Coefficient {
    numerator: BigInt,
    exponent: u32,
    base: u64,
}

impl Coefficient {
    pub fn integer(n: impl Into<BigInt>) -> Self {
        Coefficient { numerator: n.into(), exponent: 0, base: 1 }
    }

    /// `numerator / |k|^exponent` in `Z[1/k]`.
    pub fn new(numerator: impl Into<BigInt>, exponent: u32, k: i64) -> Self {
        assert!(k != 0, "cannot invert zero");
        let base = k.unsigned_abs();
        let exponent = if base == 1 { 0 } else { exponent };
        Coefficient { numerator: numerator.into(), exponent, base }.canonical()
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    /// Exponent of the base in the reduced denominator.
    pub fn denominator_exponent(&self) -> u32 {
        self.exponent
    }

    /// The inverted integer (absolute value); 1 when nothing is inverted.
    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn denominator(&self) -> BigInt {
        BigInt::from(self.base).pow(self.exponent)
    }

    fn canonical(mut self) -> Self {
        if self.numerator.is_zero() {
            self.exponent = 0;
            return self;
        }
        let b = BigInt::from(self.base);
        while self.exponent > 0 {
            let (q, r) = self.numerator.div_rem(&b);
            if !r.is_zero() {
                break;
            }
            self.numerator = q;
            self.exponent -= 1;
        }
        self
    }

    fn join_base(a: u64, b: u64) -> u64 {
        if a == 1 || a == b {
            b
        } else if b == 1 {
            a
        } else {
            panic!("mixed localizations Z[1/{a}] and Z[1/{b}]; re-localize explicitly")
        }
    }

    /// Same value, viewed in `Z[1/k]`. Panics if already localized elsewhere.
    pub fn relocalize(self, k: i64) -> Self {
        let b = k.unsigned_abs();
        if b == 1 {
            return self;
        }
        let base = Self::join_base(self.base, b);
        Coefficient { base, ..self }
    }

    fn scaled_numerator(&self, exponent: u32) -> BigInt {
        &self.numerator * BigInt::from(self.base).pow(exponent - self.exponent)
    }
}

impl PartialEq for Coefficient {
    fn eq(&self, other: &Self) -> bool {
        self.numerator == other.numerator
            && self.exponent == other.exponent
            && (self.exponent == 0 || self.base == other.base)
    }
}

impl Eq for Coefficient {}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator())
        }
    }
}

impl Add for Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: Coefficient) -> Coefficient {
        let base = Self::join_base(self.base, rhs.base);
        let exponent = self.exponent.max(rhs.exponent);
        let a = Coefficient { base, ..self };
        let b = Coefficient { base, ..rhs };
        Coefficient { numerator: a.scaled_numerator(exponent) + b.scaled_numerator(exponent), exponent, base }
            .canonical()
    }
}

impl Sub for Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: Coefficient) -> Coefficient {
        self + (-rhs)
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient { numerator: -self.numerator, ..self }
    }
}

impl Mul for Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: Coefficient) -> Coefficient {
        let base = Self::join_base(self.base, rhs.base);
        Coefficient { numerator: self.numerator * rhs.numerator, exponent: self.exponent + rhs.exponent, base }
            .canonical()
    }
}

impl Zero for Coefficient {
    fn zero() -> Self {
        Coefficient::integer(0)
    }
    fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }
}

impl One for Coefficient {
    fn one() -> Self {
        Coefficient::integer(1)
    }
}

/// Splits `n` as `(part dividing a power of base, part coprime to base)`.
fn split_by_base(n: &BigInt, base: u64) -> (BigInt, BigInt) {
    let b = BigInt::from(base);
    let mut rest = n.abs();
    let mut k_part = BigInt::one();
    if base > 1 {
        loop {
            let g = rest.gcd(&b);
            if g.is_one() {
                break;
            }
            rest /= &g;
            k_part *= g;
        }
    }
    (k_part, rest)
}

/// Smallest `e` with `d | base^e`, for `d` built from primes of `base`.
fn power_covering(d: &BigInt, base: u64) -> u32 {
    let b = BigInt::from(base);
    let mut e = 0;
    let mut p = BigInt::one();
    while !(&p % d).is_zero() {
        p *= &b;
        e += 1;
    }
    e
}

impl Scalar for Coefficient {
    fn from_integer(n: &Integer) -> Self {
        Coefficient::integer(n.clone())
    }

    fn try_inverse(&self) -> Option<Self> {
        self.checked_div_self_inverse()
    }

    fn integer_inverse(k: i64) -> Option<Self> {
        if k == 0 {
            return None;
        }
        Some(Coefficient::new(k.signum(), 1, k))
    }

    fn localize(self, k: i64) -> Self {
        self.relocalize(k)
    }

    fn checked_div_integer(&self, d: &Integer) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (k_part, rest) = split_by_base(d, self.base);
        let (q, r) = self.numerator.div_rem(&rest);
        if !r.is_zero() {
            return None;
        }
        // q / (base^exponent * k_part), with k_part | base^f
        let f = power_covering(&k_part, self.base);
        let cofactor = BigInt::from(self.base).pow(f) / &k_part;
        let sign = if d.is_negative() { -1 } else { 1 };
        Some(
            Coefficient { numerator: q * cofactor * sign, exponent: self.exponent + f, base: self.base }
                .canonical(),
        )
    }

    fn to_integer(&self) -> Option<Integer> {
        (self.exponent == 0).then(|| self.numerator.clone())
    }

    fn solve_in_span(generators: &[Vec<Self>], target: &[Self]) -> Option<Vec<Self>> {
        // scale each generator to integers; coordinates scale back
        let mut scales = Vec::with_capacity(generators.len());
        let mut integral = Vec::with_capacity(generators.len());
        for g in generators {
            let e = g.iter().map(|c| c.exponent).max().unwrap_or(0);
            let base = g.iter().map(|c| c.base).fold(1, Self::join_base);
            integral.push(g.iter().map(|c| c.scaled_numerator(e)).collect::<Vec<_>>());
            scales.push(Coefficient { numerator: BigInt::from(base).pow(e), exponent: 0, base });
        }
        let coords: Vec<Coefficient> = lattice::solve_via_snf(&integral, target)?;
        Some(coords.into_iter().zip(scales).map(|(c, s)| c * s).collect())
    }
}

impl Coefficient {
    fn checked_div_self_inverse(&self) -> Option<Self> {
        if self.numerator.is_zero() {
            return None;
        }
        let (k_part, rest) = split_by_base(&self.numerator, self.base);
        if !rest.is_one() {
            return None;
        }
        // 1 / (num / base^e) = base^e / num
        let f = power_covering(&k_part, self.base);
        let cofactor = BigInt::from(self.base).pow(f) / &k_part;
        let sign = if self.numerator.is_negative() { -1 } else { 1 };
        let numerator = cofactor * BigInt::from(self.base).pow(self.exponent) * sign;
        Some(Coefficient { numerator, exponent: f, base: self.base }.canonical())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_form_strips_base() {
        let c = Coefficient::new(12, 2, 2);
        assert_eq!(c.numerator(), &BigInt::from(3));
        assert_eq!(c.denominator_exponent(), 0);
        let c = Coefficient::new(5, 3, -2);
        assert_eq!(c.to_string(), "5/8");
    }

    #[test]
    fn trivial_localization_has_no_denominator() {
        let c = Coefficient::new(7, 4, -1);
        assert_eq!(c.denominator_exponent(), 0);
        assert_eq!(Coefficient::integer_inverse(-1), Some(Coefficient::integer(-1)));
    }

    #[test]
    fn inverses() {
        let three = Coefficient::integer(3).relocalize(3);
        let inv = three.try_inverse().unwrap();
        assert_eq!(inv.to_string(), "1/3");
        assert_eq!(three * inv, Coefficient::one());
        let six = Coefficient::integer(6).relocalize(6);
        assert_eq!(six.clone() * six.try_inverse().unwrap(), Coefficient::one());
        let four = Coefficient::integer(4).relocalize(6);
        let inv = four.try_inverse().unwrap();
        assert_eq!(four * inv, Coefficient::one());
        assert!(Coefficient::integer(5).relocalize(6).try_inverse().is_none());
        assert!(Coefficient::integer(2).try_inverse().is_none());
    }

    #[test]
    fn exact_division_by_integers() {
        let x = Coefficient::integer(10).relocalize(2);
        assert_eq!(x.checked_div_integer(&BigInt::from(20)).unwrap().to_string(), "1/2");
        assert!(x.checked_div_integer(&BigInt::from(3)).is_none());
    }

    #[test]
    #[should_panic(expected = "mixed localizations")]
    fn mixing_bases_panics() {
        let _ = Coefficient::new(1, 1, 2) + Coefficient::new(1, 1, 3);
    }

    proptest! {
        #[test]
        fn field_laws_in_z_one_third(a in -50i64..50, ea in 0u32..4, b in -50i64..50, eb in 0u32..4, c in -50i64..50) {
            let x = Coefficient::new(a, ea, 3);
            let y = Coefficient::new(b, eb, 3);
            let z = Coefficient::new(c, 0, 3);
            prop_assert_eq!((x.clone() + y.clone()) * z.clone(), x.clone() * z.clone() + y.clone() * z);
            prop_assert_eq!(x.clone() - x.clone(), Coefficient::zero());
            prop_assert_eq!(x.clone() + y.clone() - y, x);
        }
    }
}
