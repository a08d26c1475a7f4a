//! Chow and K-classes on catalog varieties.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::variety::Variety;
use crate::error::{Error, Result};
use crate::exactalg::{Coefficient, Integer, Scalar, TruncPoly, F2};

pub(crate) fn check_same(a: &Variety, b: &Variety) -> Result<()> {
    if a.descriptor() != b.descriptor() {
        return Err(Error::Domain(format!("class on {} used on {}", a.descriptor(), b.descriptor())));
    }
    Ok(())
}

fn check_len(v: &Variety, n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::Domain(format!("{} coordinates for a basis of size {} on {}", n, v.len(), v.descriptor())));
    }
    Ok(())
}

/// Coordinates over the cell basis of CH, integral or mod 2.
#[derive(Clone, Debug)]
pub struct ChowClass<S> {
    variety: Arc<Variety>,
    coeffs: Vec<S>,
}

impl<S: Scalar> PartialEq for ChowClass<S> {
    fn eq(&self, other: &Self) -> bool {
        self.variety.descriptor() == other.variety.descriptor() && self.coeffs == other.coeffs
    }
}

impl<S: Scalar> Eq for ChowClass<S> {}

impl<S: Scalar> ChowClass<S> {
    pub fn new(variety: Arc<Variety>, coeffs: Vec<S>) -> Result<Self> {
        check_len(&variety, coeffs.len())?;
        Ok(ChowClass { variety, coeffs })
    }

    pub fn zero(variety: &Arc<Variety>) -> Self {
        ChowClass { coeffs: vec![S::zero(); variety.len()], variety: variety.clone() }
    }

    pub fn basis(variety: &Arc<Variety>, i: usize) -> Self {
        let mut c = Self::zero(variety);
        c.coeffs[i] = S::one();
        c
    }

    /// `[X]`.
    pub fn fundamental(variety: &Arc<Variety>) -> Self {
        Self::basis(variety, variety.fundamental_index())
    }

    pub fn point(variety: &Arc<Variety>) -> Self {
        Self::basis(variety, variety.point_index())
    }

    pub fn from_integers(variety: &Arc<Variety>, coeffs: &[Integer]) -> Result<Self> {
        Self::new(variety.clone(), coeffs.iter().map(S::from_integer).collect())
    }

    /// `h_1^{e_1} ⋯ h_r^{e_r} ∩ [X]`.
    pub fn h_monomial(variety: &Arc<Variety>, exps: &[usize]) -> Self {
        let v = variety.h_monomial(exps);
        ChowClass { coeffs: v.iter().map(S::from_integer).collect(), variety: variety.clone() }
    }

    pub fn from_poly(variety: &Arc<Variety>, p: &TruncPoly<S>) -> Self {
        ChowClass { coeffs: variety.chow_from_poly(p), variety: variety.clone() }
    }

    pub fn variety(&self) -> &Arc<Variety> {
        &self.variety
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same(&self.variety, &other.variety)?;
        Ok(self.with(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        self.with(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_same(&self.variety, &other.variety)?;
        Ok(self.with(self.variety.chow_mul(&self.coeffs, &other.coeffs)))
    }

    pub fn degree(&self) -> S {
        self.variety.degree(&self.coeffs)
    }

    /// Dimension if the class is homogeneous and nonzero.
    pub fn pure_dimension(&self) -> Option<usize> {
        let dims = self.variety.dims();
        let mut found = None;
        for (c, &d) in self.coeffs.iter().zip(dims) {
            if c.is_zero() {
                continue;
            }
            match found {
                None => found = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        found
    }

    /// Component of dimension `p`.
    pub fn component(&self, p: usize) -> Self {
        let dims = self.variety.dims();
        self.with(self.coeffs.iter().zip(dims).map(|(c, &d)| if d == p { c.clone() } else { S::zero() }).collect())
    }

    pub(crate) fn with(&self, coeffs: Vec<S>) -> Self {
        ChowClass { variety: self.variety.clone(), coeffs }
    }
}

impl ChowClass<Integer> {
    pub fn reduce_mod2(&self) -> ChowClass<F2> {
        ChowClass { variety: self.variety.clone(), coeffs: self.coeffs.iter().map(F2::from_integer).collect() }
    }
}

impl ChowClass<F2> {
    /// The lift with coefficients in `{0, 1}`.
    pub fn lift(&self) -> ChowClass<Integer> {
        ChowClass {
            variety: self.variety.clone(),
            coeffs: self.coeffs.iter().map(|c| if c.0 { Integer::from(1) } else { Integer::zero() }).collect(),
        }
    }
}

impl<S: Scalar> fmt::Display for ChowClass<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, &self.coeffs, self.variety.names())
    }
}

fn write_combination<S: Scalar>(f: &mut fmt::Formatter<'_>, coeffs: &[S], names: &[String]) -> fmt::Result {
    let terms: Vec<String> =
        coeffs.iter().zip(names).filter(|(c, _)| !c.is_zero()).map(|(c, n)| format!("{c}·{n}")).collect();
    if terms.is_empty() {
        f.write_str("0")
    } else {
        f.write_str(&terms.join(" + "))
    }
}

/// Coordinates over the cell-closure basis `[O_Z]` of K₀.
#[derive(Clone, Debug)]
pub struct KClass<S> {
    variety: Arc<Variety>,
    coords: Vec<S>,
}

impl<S: Scalar> PartialEq for KClass<S> {
    fn eq(&self, other: &Self) -> bool {
        self.variety.descriptor() == other.variety.descriptor() && self.coords == other.coords
    }
}

impl<S: Scalar> Eq for KClass<S> {}

impl<S: Scalar> KClass<S> {
    pub fn new(variety: Arc<Variety>, coords: Vec<S>) -> Result<Self> {
        check_len(&variety, coords.len())?;
        Ok(KClass { variety, coords })
    }

    pub fn zero(variety: &Arc<Variety>) -> Self {
        KClass { coords: vec![S::zero(); variety.len()], variety: variety.clone() }
    }

    pub fn basis(variety: &Arc<Variety>, i: usize) -> Self {
        let mut c = Self::zero(variety);
        c.coords[i] = S::one();
        c
    }

    /// `[O_X]`.
    pub fn one(variety: &Arc<Variety>) -> Self {
        Self::basis(variety, variety.fundamental_index())
    }

    pub fn from_integers(variety: &Arc<Variety>, coords: &[Integer]) -> Result<Self> {
        Self::new(variety.clone(), coords.iter().map(S::from_integer).collect())
    }

    pub fn from_poly(variety: &Arc<Variety>, p: &TruncPoly<S>) -> Self {
        KClass { coords: variety.k_from_poly(p), variety: variety.clone() }
    }

    /// `[O(a_1, .., a_r)]`.
    pub fn line_bundle(variety: &Arc<Variety>, degrees: &[i64]) -> Self {
        Self::from_poly(variety, &variety.line_bundle_poly(degrees))
    }

    pub fn variety(&self) -> &Arc<Variety> {
        &self.variety
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<S> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same(&self.variety, &other.variety)?;
        Ok(self.with(self.coords.iter().zip(&other.coords).map(|(a, b)| a.clone() + b.clone()).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        self.with(self.coords.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiplication by a polynomial in the `y` variables.
    pub fn mul_poly(&self, p: &TruncPoly<S>) -> Self {
        self.with(self.variety.k_operator(p).apply(&self.coords))
    }

    /// Ring product; available on products of projective spaces.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_same(&self.variety, &other.variety)?;
        Ok(self.with(self.variety.k_mul(&self.coords, &other.coords)?))
    }

    pub fn rank(&self) -> S {
        self.variety.rank(&self.coords)
    }

    pub fn chi(&self) -> S {
        self.variety.chi(&self.coords)
    }

    pub(crate) fn with(&self, coords: Vec<S>) -> Self {
        KClass { variety: self.variety.clone(), coords }
    }
}

impl KClass<Integer> {
    /// The same class with coefficients in `Z[1/k]`.
    pub fn localize(&self, k: i64) -> KClass<Coefficient> {
        KClass {
            variety: self.variety.clone(),
            coords: self.coords.iter().map(|c| Coefficient::integer(c.clone()).relocalize(k)).collect(),
        }
    }
}

impl KClass<Coefficient> {
    /// The same class with `k` also inverted.
    pub fn localize_at(&self, k: i64) -> KClass<Coefficient> {
        self.with(self.coords.iter().map(|c| c.clone().relocalize(k)).collect())
    }

    /// Integer coordinates, if every coordinate is integral.
    pub fn to_integral(&self) -> Option<KClass<Integer>> {
        let coords: Option<Vec<Integer>> = self.coords.iter().map(Scalar::to_integer).collect();
        Some(KClass { variety: self.variety.clone(), coords: coords? })
    }
}

impl<S: Scalar> fmt::Display for KClass<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.variety.names().iter().map(|n| format!("[O_{n}]")).collect();
        write_combination(f, &self.coords, &names)
    }
}

/// Line bundle `O(a_1, .., a_r)` by its degree on each factor.
pub type LineBundle = Vec<i64>;

/// A formal integer combination of line bundles.
#[derive(Clone, Debug)]
pub struct SplitKClass {
    variety: Arc<Variety>,
    terms: BTreeMap<LineBundle, i64>,
}

impl PartialEq for SplitKClass {
    fn eq(&self, other: &Self) -> bool {
        self.variety.descriptor() == other.variety.descriptor() && self.terms == other.terms
    }
}

impl Eq for SplitKClass {}

impl SplitKClass {
    pub fn zero(variety: &Arc<Variety>) -> Self {
        SplitKClass { variety: variety.clone(), terms: BTreeMap::new() }
    }

    /// `m · [O(degrees)]`; degrees on zero-dimensional factors are ignored.
    pub fn line(variety: &Arc<Variety>, degrees: &[i64], m: i64) -> Result<Self> {
        let mut s = Self::zero(variety);
        s.add_term(degrees, m)?;
        Ok(s)
    }

    /// `m · [O_X]`.
    pub fn trivial(variety: &Arc<Variety>, m: i64) -> Self {
        let mut s = Self::zero(variety);
        s.add_term(&vec![0; variety.factor_count()], m).expect("degree vector sized to the variety");
        s
    }

    pub fn add_term(&mut self, degrees: &[i64], m: i64) -> Result<()> {
        if degrees.len() != self.variety.factor_count() {
            return Err(Error::Domain(format!(
                "line bundle with {} degrees on {} with {} factors",
                degrees.len(),
                self.variety.descriptor(),
                self.variety.factor_count()
            )));
        }
        let key: LineBundle =
            degrees.iter().zip(self.variety.caps()).map(|(&a, c)| if c == 0 { 0 } else { a }).collect();
        let e = self.terms.entry(key.clone()).or_insert(0);
        *e += m;
        if *e == 0 {
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn variety(&self) -> &Arc<Variety> {
        &self.variety
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LineBundle, i64)> {
        self.terms.iter().map(|(l, &m)| (l, m))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn rank(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same(&self.variety, &other.variety)?;
        let mut out = self.clone();
        for (l, m) in other.terms() {
            out.add_term(l, m)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero(&self.variety);
        if c != 0 {
            out.terms = self.terms.iter().map(|(l, m)| (l.clone(), m * c)).collect();
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// `ψ^{-1}`: dual line bundles.
    pub fn dual(&self) -> Self {
        let mut out = Self::zero(&self.variety);
        for (l, m) in self.terms() {
            let d: Vec<i64> = l.iter().map(|a| -a).collect();
            out.add_term(&d, m).expect("same variety");
        }
        out
    }

    /// Same formal combination read on another variety with the same number
    /// of factors (restriction along a map respecting hyperplane classes).
    pub fn transport(&self, to: &Arc<Variety>) -> Result<Self> {
        let mut out = Self::zero(to);
        for (l, m) in self.terms() {
            out.add_term(l, m)?;
        }
        Ok(out)
    }

    /// As a polynomial in the `y` variables.
    pub fn to_poly<S: Scalar>(&self) -> TruncPoly<S> {
        let caps = self.variety.caps();
        let mut acc = TruncPoly::zero(&caps);
        for (l, m) in self.terms() {
            acc = acc + self.variety.line_bundle_poly::<S>(l).scale(&S::from_i64(m));
        }
        acc
    }

    pub fn to_k_class<S: Scalar>(&self) -> KClass<S> {
        KClass::from_poly(&self.variety, &self.to_poly())
    }

    /// Tangent class: `(n+1)O(1) - 1` on `P^n`, `(d+2)O(1) - 1 - O(2)` on
    /// `Q_d`, summed over factors.
    pub fn tangent(variety: &Arc<Variety>) -> Self {
        let r = variety.factor_count();
        let mut out = Self::zero(variety);
        for (k, f) in variety.factors.iter().enumerate() {
            for &(a, m) in &f.tangent {
                let mut deg = vec![0; r];
                deg[k] = a;
                out.add_term(&deg, m).expect("sized degrees");
            }
        }
        out
    }
}

impl fmt::Display for SplitKClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(l, m)| {
                let degs: Vec<String> = l.iter().map(|a| a.to_string()).collect();
                format!("{m}·O({})", degs.join(","))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
