//! Multivariate polynomials truncated in each variable.
//!
//! Variable `i` satisfies `x_i^(caps[i] + 1) = 0`, so every element with zero
//! constant term is nilpotent. These model the subrings of Chow and K-rings
//! generated by hyperplane classes, one variable per product factor.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::laurent::ScaleBy;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncPoly<S> {
    caps: Vec<usize>,
    coeffs: Vec<S>,
}

impl<S: Scalar> TruncPoly<S> {
    pub fn zero(caps: &[usize]) -> Self {
        let len = caps.iter().map(|c| c + 1).product();
        TruncPoly { caps: caps.to_vec(), coeffs: vec![S::zero(); len] }
    }

    pub fn constant(caps: &[usize], c: S) -> Self {
        let mut p = Self::zero(caps);
        p.coeffs[0] = c;
        p
    }

    pub fn one(caps: &[usize]) -> Self {
        Self::constant(caps, S::one())
    }

    /// The variable `x_i` (zero if its cap is 0).
    pub fn var(caps: &[usize], i: usize) -> Self {
        let mut p = Self::zero(caps);
        if caps[i] > 0 {
            let mut e = vec![0; caps.len()];
            e[i] = 1;
            let idx = p.index(&e);
            p.coeffs[idx] = S::one();
        }
        p
    }

    pub fn caps(&self) -> &[usize] {
        &self.caps
    }

    fn index(&self, exps: &[usize]) -> usize {
        let mut idx = 0;
        for (e, c) in exps.iter().zip(&self.caps) {
            idx = idx * (c + 1) + e;
        }
        idx
    }

    fn exponents(&self, mut idx: usize) -> Vec<usize> {
        let mut e = vec![0; self.caps.len()];
        for i in (0..self.caps.len()).rev() {
            let r = self.caps[i] + 1;
            e[i] = idx % r;
            idx /= r;
        }
        e
    }

    pub fn coefficient(&self, exps: &[usize]) -> S {
        if exps.iter().zip(&self.caps).any(|(e, c)| e > c) {
            return S::zero();
        }
        self.coeffs[self.index(exps)].clone()
    }

    pub fn constant_term(&self) -> &S {
        &self.coeffs[0]
    }

    /// Nonzero terms as `(exponents, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &S)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.exponents(i), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &S) -> Self {
        TruncPoly { caps: self.caps.clone(), coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> TruncPoly<T> {
        TruncPoly { caps: self.caps.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Part of total degree `n` in the variables selected by `mask`, counting
    /// unselected variables as weight 0.
    pub fn homogeneous_part(&self, n: usize, mask: &[bool]) -> Self {
        let mut out = Self::zero(&self.caps);
        for (i, c) in self.coeffs.iter().enumerate() {
            let deg: usize = self.exponents(i).iter().zip(mask).filter(|(_, m)| **m).map(|(e, _)| e).sum();
            if deg == n {
                out.coeffs[i] = c.clone();
            }
        }
        out
    }

    /// Coefficient of `x_var^n`, as a polynomial in the remaining variables
    /// (the slot of `var` is kept with cap unchanged but exponent 0).
    pub fn coefficient_of_power(&self, var: usize, n: usize) -> Self {
        let mut out = Self::zero(&self.caps);
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut e = self.exponents(i);
            if e[var] == n {
                e[var] = 0;
                let j = out.index(&e);
                out.coeffs[j] = c.clone();
            }
        }
        out
    }

    /// Exponent beyond which every product of nilpotents vanishes.
    pub fn nilpotency_bound(&self) -> usize {
        self.caps.iter().sum::<usize>() + 1
    }

    fn check_caps(&self, other: &Self) {
        assert_eq!(self.caps, other.caps, "truncated polynomials over different rings");
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.caps);
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// Integer power, negative exponents through [`Self::invert_unipotent`].
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.invert_unipotent()?.pow(e.unsigned_abs() as u32))
        }
    }

    /// Inverse of `c (1 + n)` with `n` nilpotent, by the truncated geometric
    /// series. Fails when the constant term `c` is not a unit of `S`.
    pub fn invert_unipotent(&self) -> Result<Self> {
        let c_inv = self.constant_term().try_inverse().ok_or_else(|| {
            Error::Inversion(format!("constant term {} is not a unit", self.constant_term()))
        })?;
        let one = Self::one(&self.caps);
        let n = self.scale(&c_inv) - one.clone();
        let neg_n = -n;
        let mut term = one.clone();
        let mut acc = one;
        for _ in 1..self.nilpotency_bound() {
            term = term * neg_n.clone();
            if term.is_zero() {
                break;
            }
            acc = acc + term.clone();
        }
        Ok(acc.scale(&c_inv))
    }
}

impl<S: Scalar> Add for TruncPoly<S> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.check_caps(&rhs);
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a = a.clone() + b;
        }
        self
    }
}

impl<S: Scalar> Sub for TruncPoly<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Scalar> Neg for TruncPoly<S> {
    type Output = Self;
    fn neg(self) -> Self {
        TruncPoly { caps: self.caps, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<S: Scalar> Mul for TruncPoly<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check_caps(&rhs);
        let mut out = Self::zero(&self.caps);
        let lhs_terms: Vec<(Vec<usize>, S)> = self.terms().map(|(e, c)| (e, c.clone())).collect();
        let rhs_terms: Vec<(Vec<usize>, S)> = rhs.terms().map(|(e, c)| (e, c.clone())).collect();
        for (ea, ca) in &lhs_terms {
            for (eb, cb) in &rhs_terms {
                let e: Vec<usize> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if e.iter().zip(&self.caps).any(|(x, c)| x > c) {
                    continue;
                }
                let i = out.index(&e);
                out.coeffs[i] = out.coeffs[i].clone() + ca.clone() * cb.clone();
            }
        }
        out
    }
}

impl<S: Scalar> ScaleBy<S> for TruncPoly<S> {
    fn scale_by(&self, c: &S) -> Self {
        self.scale(c)
    }
}

/// `invert_unipotent` as a free function.
pub fn invert_unipotent<S: Scalar>(x: &TruncPoly<S>) -> Result<TruncPoly<S>> {
    x.invert_unipotent()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Coefficient, Integer};

    #[test]
    fn one_minus_eps() {
        let caps = [1];
        let eps = TruncPoly::<Integer>::var(&caps, 0);
        let x = TruncPoly::one(&caps) - eps.clone();
        assert_eq!(x.invert_unipotent().unwrap(), TruncPoly::one(&caps) + eps);
    }

    #[test]
    fn identity_inverts_to_itself() {
        let caps = [0];
        let one = TruncPoly::<Integer>::one(&caps);
        assert_eq!(one.invert_unipotent().unwrap(), one);
    }

    #[test]
    fn localized_unit_part() {
        let caps = [1];
        let k = 3;
        let n = TruncPoly::<Coefficient>::var(&caps, 0);
        let kk = Coefficient::integer(k).relocalize(k);
        let x = (TruncPoly::one(&caps) + n.clone()).scale(&kk);
        let inv = x.invert_unipotent().unwrap();
        let expected = (TruncPoly::one(&caps) - n).scale(&<Coefficient as crate::exactalg::Scalar>::integer_inverse(k).unwrap());
        assert_eq!(inv.clone(), expected);
        assert_eq!(x * inv, TruncPoly::one(&caps));
    }

    #[test]
    fn even_unit_part_fails_over_integers() {
        let caps = [2];
        let x = TruncPoly::<Integer>::constant(&caps, Integer::from(2)) + TruncPoly::var(&caps, 0);
        assert!(matches!(x.invert_unipotent(), Err(Error::Inversion(_))));
    }

    #[test]
    fn truncation_and_parts() {
        let caps = [2, 1];
        let a = TruncPoly::<Integer>::var(&caps, 0);
        let b = TruncPoly::<Integer>::var(&caps, 1);
        let s = TruncPoly::one(&caps) + a.clone() + b.clone();
        let cube = s.pow(3);
        // multinomial 3!/(2! 1!) for a^2 b
        assert_eq!(cube.coefficient(&[2, 1]), Integer::from(3));
        assert_eq!(cube.homogeneous_part(1, &[true, true]), (a.clone() + b).scale(&Integer::from(3)));
        assert!(a.pow(3).is_zero());
    }

    #[test]
    fn exhaustive_unipotent_inverses_small_support() {
        let caps = [2, 1];
        let one = TruncPoly::<Integer>::one(&caps);
        for c1 in -2..=2 {
            for c2 in -2..=2 {
                for c3 in -2..=2 {
                    let mut x = one.clone();
                    x = x + TruncPoly::var(&caps, 0).scale(&Integer::from(c1));
                    x = x + TruncPoly::var(&caps, 1).scale(&Integer::from(c2));
                    x = x + TruncPoly::var(&caps, 0).pow(2).scale(&Integer::from(c3));
                    let inv = x.invert_unipotent().unwrap();
                    assert_eq!(x * inv, one);
                }
            }
        }
    }
}
