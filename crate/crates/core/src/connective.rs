//! The `(p, -p)` row of connective K-theory, modelled by the topological
//! filtration `F_p K₀` of a catalog variety.
//!
//! `β` is the inclusion `F_{p-1} ⊆ F_p`. The lifted operation
//! `τ_k = ψ_k - k^{-p}` must land in `F_{p-1}`; every result carries a
//! lattice certificate and a failed certificate aborts with
//! [`Error::ModelFalsification`].

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;

use crate::adams::{homological_adams, k_chern_polys, theta_poly, total_chern_poly, AdamsContext};
use crate::error::{Error, Result};
use crate::exactalg::{Coefficient, Integer, Matrix, F2};
use crate::steenrod::sq1;
use crate::varieties::{check_same, phi, CatalogMorphism, ChowClass, GrClass, KClass, SplitKClass, Variety};

/// A class of `F_p K₀(X) ⊗ Z[1/k]` with its coordinates in the generators of
/// `F_p`.
#[derive(Clone, Debug)]
pub struct FiltrationElement {
    class: KClass<Coefficient>,
    level: i64,
    minimal_level: i64,
    certificate: Vec<Coefficient>,
}

impl PartialEq for FiltrationElement {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level && self.class == other.class
    }
}

impl Eq for FiltrationElement {}

impl FiltrationElement {
    /// Certifies `class ∈ F_level`.
    pub fn new(class: KClass<Coefficient>, level: i64) -> Result<Self> {
        let certificate = certify(&class, level)
            .ok_or_else(|| Error::Domain(format!("{class} does not lie in F_{level}")))?;
        let minimal_level = class.variety().filtration_level(class.coords());
        Ok(FiltrationElement { class, level, minimal_level, certificate })
    }

    pub fn from_integral(class: &KClass<Integer>, level: i64) -> Result<Self> {
        Self::new(class.localize(1), level)
    }

    /// The basis class `[O_Z]` at the level `dim Z`.
    pub fn basis(v: &Arc<Variety>, i: usize) -> Self {
        Self::from_integral(&KClass::basis(v, i), v.dims()[i] as i64).expect("a cell lies in its own level")
    }

    pub fn zero(v: &Arc<Variety>, level: i64) -> Self {
        Self::from_integral(&KClass::zero(v), level).expect("zero lies in every level")
    }

    /// Assembles an element without checking the certificate.
    pub fn from_parts(class: KClass<Coefficient>, level: i64, certificate: Vec<Coefficient>) -> Self {
        let minimal_level = class.variety().filtration_level(class.coords());
        FiltrationElement { class, level, minimal_level, certificate }
    }

    pub fn class(&self) -> &KClass<Coefficient> {
        &self.class
    }

    pub fn variety(&self) -> &Arc<Variety> {
        self.class.variety()
    }

    /// Declared level `p`.
    pub fn level(&self) -> i64 {
        self.level
    }

    /// Smallest `p` with the class in `F_p`; `-1` for zero.
    pub fn minimal_level(&self) -> i64 {
        self.minimal_level
    }

    pub fn certificate(&self) -> &[Coefficient] {
        &self.certificate
    }

    pub fn is_zero(&self) -> bool {
        self.class.is_zero()
    }

    /// Recombines the certificate and compares with the class.
    pub fn verify(&self) -> Result<()> {
        let (lattice, _) = self.variety().filtration_lattice(self.level);
        let ok = self.certificate.len() == lattice.generators().len()
            && lattice.combine(&self.certificate).as_slice() == self.class.coords();
        if ok {
            Ok(())
        } else {
            Err(Error::Certificate(format!("certificate does not reproduce {} in F_{}", self.class, self.level)))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.level != other.level {
            return Err(Error::Domain(format!("adding F_{} and F_{}", self.level, other.level)));
        }
        Self::new(self.class.add(&other.class)?, self.level)
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        Self::new(self.class.scale(c), self.level).expect("F_p is a submodule")
    }

    /// Residue in `Z/2 ⊗ gr_p`.
    pub fn gr_class(&self) -> Result<GrClass> {
        GrClass::project(&self.class, self.level)
    }

    /// External product `x × y ∈ F_{p+q}(X × Y)`.
    pub fn external(&self, other: &Self, product: &Arc<Variety>) -> Result<Self> {
        let parts = [self.class.coords().to_vec(), other.class.coords().to_vec()];
        let class = KClass::new(product.clone(), product.tensor(&parts))?;
        Self::new(class, self.level + other.level)
    }
}

impl fmt::Display for FiltrationElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in F_{}", self.class, self.level)
    }
}

/// Coordinates of `class` in the generators of `F_level`. The generators are
/// the cells of dimension at most `level`, in basis order, so the certificate
/// is read off directly; `verify` recombines it through the lattice.
fn certify(class: &KClass<Coefficient>, level: i64) -> Option<Vec<Coefficient>> {
    let v = class.variety();
    let mut cert = Vec::new();
    for (c, &d) in class.coords().iter().zip(v.dims()) {
        if d as i64 <= level {
            cert.push(c.clone());
        } else if !c.is_zero() {
            return None;
        }
    }
    Some(cert)
}

fn drop_to(class: KClass<Coefficient>, level: i64, what: impl FnOnce() -> String) -> Result<FiltrationElement> {
    match certify(&class, level) {
        Some(certificate) => {
            let minimal_level = class.variety().filtration_level(class.coords());
            Ok(FiltrationElement { class, level, minimal_level, certificate })
        }
        None => Err(Error::ModelFalsification(format!("{} = {class} is not in F_{level}", what()))),
    }
}

/// `β: F_{p-1} → F_p`.
pub fn beta(x: &FiltrationElement) -> Result<FiltrationElement> {
    x.verify()?;
    let certificate = certify(&x.class, x.level + 1).expect("F_{p-1} ⊆ F_p");
    Ok(FiltrationElement { level: x.level + 1, certificate, ..x.clone() })
}

/// `τ_k(x) = ψ_k(x) - k^{-p} x`, certified in `F_{p-1}`.
pub fn tau(ctx: &AdamsContext, x: &FiltrationElement) -> Result<FiltrationElement> {
    x.verify()?;
    let class = x.class.localize_at(ctx.k());
    let psi = homological_adams(ctx, &class)?;
    let out = psi.sub(&class.scale(&ctx.k_power(-x.level)))?;
    drop_to(out, x.level - 1, || format!("τ_{}({x})", ctx.k()))
}

/// `π^k(y)·x = (θ^k(y) - k^{rank y})·x`, certified in `F_{p-1}`.
pub fn pi_class(ctx: &AdamsContext, y: &SplitKClass, x: &FiltrationElement) -> Result<FiltrationElement> {
    x.verify()?;
    check_same(y.variety(), x.variety())?;
    let class = x.class.localize_at(ctx.k());
    let theta = theta_poly(ctx, y)?;
    let out = class.mul_poly(&theta).sub(&class.scale(&ctx.k_power(y.rank())))?;
    drop_to(out, x.level - 1, || format!("π^{}({y})·({x})", ctx.k()))
}

/// `θ^k(y)·x`, which stays in `F_p`.
pub fn theta_action(ctx: &AdamsContext, y: &SplitKClass, x: &FiltrationElement) -> Result<FiltrationElement> {
    x.verify()?;
    let class = x.class.localize_at(ctx.k());
    let out = class.mul_poly(&theta_poly(ctx, y)?);
    drop_to(out, x.level, || format!("θ^{}({y})·({x})", ctx.k()))
}

/// `f^*: F_p(Y) → F_{p+d}(X)` for a catalog morphism of relative dimension `d`.
pub fn pull_filtered(f: &CatalogMorphism, x: &FiltrationElement) -> Result<FiltrationElement> {
    x.verify()?;
    let out = f.pull_k(&x.class)?;
    drop_to(out, x.level + f.relative_dimension(), || format!("{f}^*({x})"))
}

/// A lift of `x ∈ Z/2 ⊗ gr_p` to `F_p`: the canonical lift plus an arbitrary
/// element of `F_{p-1}` and twice an arbitrary element of `F_p`.
pub fn random_lift<R: Rng + ?Sized>(x: &GrClass, rng: &mut R) -> KClass<Integer> {
    let v = x.variety();
    let p = x.level();
    let base = x.canonical_lift();
    let coords = base
        .coords()
        .iter()
        .zip(v.dims())
        .map(|(c, &d)| {
            if d < p {
                c + Integer::from(rng.gen_range(-5i64..=5))
            } else if d == p {
                c + Integer::from(2 * rng.gen_range(-3i64..=3))
            } else {
                c.clone()
            }
        })
        .collect();
    KClass::new(v.clone(), coords).expect("sized to the variety")
}

/// `𝔖_1: Z/2 ⊗ gr_p → Z/2 ⊗ gr_{p-1}` through the given lift. On `gr_0` the
/// target `gr_{-1}` is zero and the zero class of `gr_0` is returned.
pub fn gr_steenrod_via(x: &GrClass, lift: &KClass<Integer>) -> Result<GrClass> {
    let p = x.level() as i64;
    if GrClass::project(lift, p)? != *x {
        return Err(Error::Domain(format!("{lift} is not a lift of {x}")));
    }
    let ctx = AdamsContext::new(-1)?;
    let t = tau(&ctx, &FiltrationElement::from_integral(lift, p)?)?;
    if p == 0 {
        return Ok(GrClass::zero(x.variety(), 0));
    }
    t.gr_class()
}

/// `𝔖_1` through the canonical lift.
pub fn gr_steenrod(x: &GrClass) -> Result<GrClass> {
    gr_steenrod_via(x, &x.canonical_lift())
}

/// One row of a descent comparison: `𝔖_1(φ(e_i))` against `φ(Sq_1(e_i))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentRow {
    pub basis: usize,
    pub name: String,
    pub level: usize,
    pub k_side: GrClass,
    pub chow_side: GrClass,
}

impl DescentRow {
    pub fn passes(&self) -> bool {
        self.k_side == self.chow_side
    }
}

/// `𝔖_1∘φ = φ∘Sq_1` on every cell of `X`; the K side goes through `τ_{-1}`
/// and the Chow side through the `Sq_1` table of `X`.
pub fn descent_compare(v: &Arc<Variety>) -> Result<Vec<DescentRow>> {
    (0..v.len())
        .map(|i| {
            let level = v.dims()[i];
            let e = ChowClass::<F2>::basis(v, i);
            let k_side = gr_steenrod(&phi(level, &e)?)?;
            let chow_side = if level == 0 {
                GrClass::zero(v, 0)
            } else {
                phi(level - 1, &sq1(&e)).map_err(|err| Error::Domain(format!("Sq_1({}): {err}", v.names()[i])))?
            };
            Ok(DescentRow { basis: i, name: v.names()[i].clone(), level, k_side, chow_side })
        })
        .collect()
}

/// Matrix of `τ_k` on the cell basis, each cell taken at its own level.
pub fn tau_matrix(ctx: &AdamsContext, v: &Arc<Variety>) -> Result<Matrix<Coefficient>> {
    let cols: Vec<Vec<Coefficient>> = (0..v.len())
        .map(|i| Ok(tau(ctx, &FiltrationElement::basis(v, i))?.class.into_coords()))
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(v.len(), &cols))
}

/// Matrix of `𝔖_1` on the cell basis of `⊕_p Z/2 ⊗ gr_p`.
pub fn gr_steenrod_matrix(v: &Arc<Variety>) -> Result<Matrix<F2>> {
    let cols: Vec<Vec<F2>> = (0..v.len())
        .map(|i| {
            let e = ChowClass::<F2>::basis(v, i);
            Ok(gr_steenrod(&phi(v.dims()[i], &e)?)?.coeffs().to_vec())
        })
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(v.len(), &cols))
}

/// One term of `θ^{-1}(y)·z = Σ_n (-1)^{rank y - n} c^K_n(ψ^{-1} y)·z`.
#[derive(Clone, Debug)]
pub struct ThetaOneTerm {
    pub n: usize,
    /// `(-1)^{rank y - n} c^K_n(ψ^{-1} y)·z`, certified in `F_{p-n}`.
    pub term: FiltrationElement,
    /// `φ(c_n(ψ^{-1} y) ∩ z)` in `Z/2 ⊗ gr_{p-n}`.
    pub expected: GrClass,
}

impl ThetaOneTerm {
    pub fn passes(&self) -> bool {
        self.term.gr_class().map(|g| g == self.expected).unwrap_or(false)
    }
}

/// Expands `θ^{-1}(y)·z` by K-theoretic Chern classes for an integral cell
/// combination `z ∈ F_p`. Returns the terms and whether they sum to
/// `θ^{-1}(y)·z` exactly; a term outside `F_{p-n}` is a model falsification.
pub fn theta_one_expansion(y: &SplitKClass, z: &FiltrationElement) -> Result<(Vec<ThetaOneTerm>, bool)> {
    let v = z.variety();
    check_same(y.variety(), v)?;
    let ctx = AdamsContext::new(-1)?;
    let zc = z.class.to_integral().ok_or_else(|| Error::Domain(format!("{z} is not integral")))?;
    let cycle = ChowClass::<Integer>::new(v.clone(), zc.coords().to_vec())?;
    let dual = y.dual();
    let chern = total_chern_poly(&dual)?;
    let mask = vec![true; v.factor_count()];
    let mut sum = KClass::<Coefficient>::zero(v);
    let mut terms = Vec::new();
    for (n, ck) in k_chern_polys(&dual)?.iter().enumerate() {
        let sign = if (y.rank() - n as i64).rem_euclid(2) == 0 { Integer::one() } else { -Integer::one() };
        let class = zc.mul_poly(ck).scale(&sign).localize(1);
        sum = sum.add(&class)?;
        let level = z.level - n as i64;
        let term = drop_to(class, level, || format!("c^K_{n}(({y})^∨)·({z})"))?;
        if level < 0 {
            continue;
        }
        let cap = ChowClass::from_poly(v, &chern.homogeneous_part(n, &mask)).mul(&cycle)?;
        let expected = phi(level as usize, &cap.reduce_mod2())?;
        terms.push(ThetaOneTerm { n, term, expected });
    }
    let whole = theta_action(&ctx, y, z)?;
    Ok((terms, &sum == whole.class()))
}

/// Reduces a certified class to integer coordinates (`k = ±1`).
pub fn integral_class(x: &FiltrationElement) -> Option<KClass<Integer>> {
    x.class.to_integral()
}

/// `F_p` rank, i.e. the number of cells of dimension at most `p`.
pub fn filtration_rank(v: &Variety, p: i64) -> usize {
    v.dims().iter().filter(|&&d| (d as i64) <= p).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::varieties::SplitVariety;

    #[test]
    fn certificates_agree_with_the_lattice_solver() {
        for s in ["P3", "Q4", "P1xQ3", "Q2xQ2"] {
            let v = Variety::shared(&s.parse::<SplitVariety>().unwrap()).unwrap();
            let ctx = AdamsContext::new(-1).unwrap();
            for i in 0..v.len() {
                let t = tau(&ctx, &FiltrationElement::basis(&v, i)).unwrap();
                for p in -1..=v.dimension() as i64 {
                    let (lattice, _) = v.filtration_lattice(p);
                    let solved = lattice.solve_over(t.class().coords()).unwrap();
                    assert_eq!(certify(t.class(), p), solved, "{s} cell {i} p={p}");
                }
            }
        }
    }
}
