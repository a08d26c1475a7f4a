//! Sparse univariate Laurent polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// `Σ c_e u^e` over integer exponents, zero coefficients never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly<S> {
    terms: BTreeMap<i64, S>,
}

impl<S: Scalar> LaurentPoly<S> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(S::one(), 0)
    }

    pub fn monomial(c: S, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, S)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: i64, c: S) {
        let slot = self.terms.entry(e).or_insert_with(S::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: i64) -> S {
        self.terms.get(&e).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &S)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn map_coefficients<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LaurentPoly<T> {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Value at `u = 1`.
    pub fn at_one(&self) -> S {
        self.terms.values().fold(S::zero(), |a, c| a + c.clone())
    }

    /// `p(u^k)`.
    pub fn substitute_power(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    /// Exact quotient by `1 - u`, or `None` when `1 - u` does not divide.
    pub fn div_one_minus_u(&self) -> Option<Self> {
        let (Some(lo), Some(hi)) = (self.min_exponent(), self.max_exponent()) else {
            return Some(Self::zero());
        };
        // p = (1 - u) q  <=>  q_j = p_j + q_{j-1}
        let mut q = Self::zero();
        let mut carry = S::zero();
        for e in lo..=hi {
            carry = carry + self.coefficient(e);
            if e == hi {
                return carry.is_zero().then_some(q);
            }
            q.add_term(e, carry.clone());
        }
        unreachable!()
    }

    /// Evaluates at a ring element, given `u` and `u^{-1}`.
    pub fn evaluate<R>(&self, u: &R, u_inv: &R, one: R) -> R
    where
        R: Clone + Add<Output = R> + Mul<Output = R>,
        S: Clone,
        R: ScaleBy<S>,
    {
        let mut acc: Option<R> = None;
        for (&e, c) in &self.terms {
            let base = if e >= 0 { u } else { u_inv };
            let mut p = one.clone();
            for _ in 0..e.unsigned_abs() {
                p = p * base.clone();
            }
            let term = p.scale_by(c);
            acc = Some(match acc {
                None => term,
                Some(a) => a + term,
            });
        }
        acc.unwrap_or_else(|| one.scale_by(&S::zero()))
    }
}

/// Scalar multiplication of ring elements by coefficients.
pub trait ScaleBy<S> {
    fn scale_by(&self, c: &S) -> Self;
}

impl<S: Scalar> Add for LaurentPoly<S> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<S: Scalar> Neg for LaurentPoly<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_terms(self.terms.into_iter().map(|(e, c)| (e, -c)))
    }
}

impl<S: Scalar> Sub for LaurentPoly<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Scalar> Mul for LaurentPoly<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<S: Scalar> fmt::Display for LaurentPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| match *e {
                0 => format!("{c}"),
                1 => format!("{c}*u"),
                e => format!("{c}*u^{e}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `t^k(u) = (1 - u^k) / (1 - u)`.
pub fn tk_polynomial<S: Scalar>(k: i64) -> Result<LaurentPoly<S>> {
    if k == 0 {
        return Err(Error::Domain("t^k(u) needs k != 0".into()));
    }
    let t = if k > 0 {
        LaurentPoly::from_terms((0..k).map(|e| (e, S::one())))
    } else {
        LaurentPoly::from_terms((k..0).map(|e| (e, -S::one())))
    };
    debug_assert_eq!(
        Some(t.clone()),
        (LaurentPoly::one() - LaurentPoly::monomial(S::one(), k)).div_one_minus_u()
    );
    Ok(t)
}

/// The Laurent polynomial `r` with `t^k(u) = k + (1 - u) r(u)`.
pub fn tk_remainder<S: Scalar>(k: i64) -> Result<LaurentPoly<S>> {
    let t = tk_polynomial::<S>(k)?;
    (t - LaurentPoly::monomial(S::from_i64(k), 0))
        .div_one_minus_u()
        .ok_or_else(|| Error::Domain(format!("t^{k}(u) - {k} not divisible by 1 - u")))
}

impl<S: Scalar> Zero for LaurentPoly<S> {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<S: Scalar> One for LaurentPoly<S> {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Integer;
    use proptest::prelude::*;

    type P = LaurentPoly<Integer>;

    fn p(terms: &[(i64, i64)]) -> P {
        P::from_terms(terms.iter().map(|&(e, c)| (e, Integer::from(c))))
    }

    #[test]
    fn tk_small_cases() {
        assert_eq!(tk_polynomial::<Integer>(2).unwrap(), p(&[(0, 1), (1, 1)]));
        assert_eq!(tk_polynomial::<Integer>(1).unwrap(), P::one());
        assert_eq!(tk_polynomial::<Integer>(-1).unwrap(), p(&[(-1, -1)]));
        assert_eq!(tk_polynomial::<Integer>(3).unwrap(), p(&[(0, 1), (1, 1), (2, 1)]));
        assert!(matches!(tk_polynomial::<Integer>(0), Err(Error::Domain(_))));
    }

    #[test]
    fn minus_one_by_long_division() {
        // (1 - u^{-1}) / (1 - u)
        let num = p(&[(0, 1), (-1, -1)]);
        assert_eq!(num.div_one_minus_u().unwrap(), p(&[(-1, -1)]));
    }

    #[test]
    fn remainder_reconstructs() {
        for k in [-4, -1, 1, 2, 5] {
            let r = tk_remainder::<Integer>(k).unwrap();
            let back = P::monomial(Integer::from(k), 0) + p(&[(0, 1), (1, -1)]) * r;
            assert_eq!(back, tk_polynomial(k).unwrap());
        }
    }

    #[test]
    fn division_rejects_non_multiples() {
        assert!(p(&[(0, 1), (2, 1)]).div_one_minus_u().is_none());
    }

    proptest! {
        #[test]
        fn tk_minus_k_vanishes_at_one(k in -30i64..30) {
            prop_assume!(k != 0);
            let t = tk_polynomial::<Integer>(k).unwrap();
            prop_assert_eq!(t.at_one(), Integer::from(k));
            prop_assert!(tk_remainder::<Integer>(k).is_ok());
        }

        #[test]
        fn tk_multiplicative(k in -9i64..10, l in -9i64..10) {
            prop_assume!(k != 0 && l != 0);
            let lhs = tk_polynomial::<Integer>(k * l).unwrap();
            let rhs = tk_polynomial::<Integer>(k).unwrap().substitute_power(l) * tk_polynomial(l).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
