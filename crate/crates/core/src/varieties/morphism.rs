//! Catalog morphisms with push-forward and pull-back on CH and K₀.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::classes::{check_same, ChowClass, KClass, SplitKClass};
use super::factor::{Cell, FactorKind};
use super::variety::{tensor_vectors, SplitVariety, Variety};
use crate::error::{Error, Result};
use crate::exactalg::{Integer, Matrix, Scalar, SmithForm, TruncPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismKind {
    /// `X × Y → X` (`keep_left`) or `X × Y → Y`.
    Projection { keep_left: bool },
    /// `X → X × X`.
    Diagonal,
    /// `P^j ⊂ P^n` or `P^j ⊂ Q_d`; `alternate` selects the second ruling.
    LinearEmbedding { dim: usize, alternate: bool },
    /// Plane section `Q_e ⊂ Q_d`.
    SubquadricEmbedding { dim: usize },
    /// `P^0 → X` onto the base point of the cell structure.
    PointInclusion,
    /// `X → P^0`.
    Structural,
}

#[derive(Clone, Debug)]
enum KPull {
    Full(Matrix<Integer>),
    /// Defined on the span of `y`-monomials, sending `y ↦ y`.
    SplitOnly,
}

#[derive(Clone, Debug)]
pub struct CatalogMorphism {
    kind: MorphismKind,
    source: Arc<Variety>,
    target: Arc<Variety>,
    tangent: SplitKClass,
    chow_push: Matrix<Integer>,
    chow_pull: Matrix<Integer>,
    k_push: Option<Matrix<Integer>>,
    k_pull: Option<KPull>,
}

fn unit(n: usize, i: usize) -> Vec<Integer> {
    let mut v = vec![Integer::zero(); n];
    v[i] = Integer::one();
    v
}

fn shared(d: &SplitVariety) -> Result<Arc<Variety>> {
    Variety::shared(d)
}

/// `f^* x = Σ_k deg(x · f_* e_k) e_k^∨`, from the projection formula.
fn pull_by_duality(source: &Variety, target: &Variety, push: &Matrix<Integer>) -> Matrix<Integer> {
    let (ns, nt) = (source.len(), target.len());
    let dual = source.pairing_dual();
    let columns: Vec<Vec<Integer>> = (0..nt)
        .map(|t| {
            let x = unit(nt, t);
            let mut out = vec![Integer::zero(); ns];
            for k in 0..ns {
                let d = target.degree(&target.chow_mul(&x, &push.column(k)));
                if d.is_zero() {
                    continue;
                }
                for (o, c) in out.iter_mut().zip(dual.column(k)) {
                    *o += &d * c;
                }
            }
            out
        })
        .collect();
    Matrix::from_columns(ns, &columns)
}

/// Dual basis for `χ(a · b)` on a product of projective spaces.
fn chi_dual(v: &Variety) -> Result<Matrix<Integer>> {
    let n = v.len();
    let rows: Vec<Vec<Integer>> = (0..n)
        .map(|i| (0..n).map(|j| v.chi(&v.k_mul(&unit(n, i), &unit(n, j)).expect("projective tower"))).collect())
        .collect();
    let snf = SmithForm::compute(&rows, n, n);
    let cols: Option<Vec<Vec<Integer>>> = (0..n).map(|i| snf.solve(&unit(n, i))).collect();
    let cols = cols.ok_or_else(|| Error::Catalog(format!("{}: χ-pairing is not unimodular", v.descriptor())))?;
    Ok(Matrix::from_columns(n, &cols))
}

impl CatalogMorphism {
    #[allow(clippy::too_many_arguments)]
    fn build(
        kind: MorphismKind,
        source: Arc<Variety>,
        target: Arc<Variety>,
        tangent: SplitKClass,
        chow_push: Matrix<Integer>,
        chow_pull: Option<Matrix<Integer>>,
        k_push: Option<Matrix<Integer>>,
        k_pull: Option<KPull>,
    ) -> Self {
        let chow_pull = chow_pull.unwrap_or_else(|| pull_by_duality(&source, &target, &chow_push));
        CatalogMorphism { kind, source, target, tangent, chow_push, chow_pull, k_push, k_pull }
    }

    /// Projection of a binary product onto one of its two sides.
    pub fn projection(source: &Arc<Variety>, keep_left: bool) -> Result<Self> {
        let SplitVariety::Product(a, b) = source.descriptor() else {
            return Err(Error::Domain(format!("{} is not a product", source.descriptor())));
        };
        let (va, vb) = (shared(a)?, shared(b)?);
        let (la, lb) = (va.len(), vb.len());
        let n = source.len();
        let target = if keep_left { va.clone() } else { vb.clone() };
        let nt = target.len();
        let mut push = Matrix::zeros(nt, n);
        let mut k_push = Matrix::zeros(nt, n);
        let mut pull = Matrix::zeros(n, nt);
        for ia in 0..la {
            for ib in 0..lb {
                let s = ia * lb + ib;
                let (t, other_is_point) =
                    if keep_left { (ia, ib == vb.point_index()) } else { (ib, ia == va.point_index()) };
                if other_is_point {
                    push.set(t, s, Integer::one());
                }
                // every cell closure has χ = 1
                k_push.set(t, s, Integer::one());
            }
        }
        for t in 0..nt {
            let s = if keep_left { t * lb } else { t };
            pull.set(s, t, Integer::one());
        }
        let other = if keep_left { &vb } else { &va };
        let ka = va.factor_count();
        let mut tangent = SplitKClass::zero(source);
        for (l, m) in SplitKClass::tangent(other).terms() {
            let mut deg = vec![0; source.factor_count()];
            let offset = if keep_left { ka } else { 0 };
            deg[offset..offset + l.len()].copy_from_slice(l);
            tangent.add_term(&deg, m)?;
        }
        Ok(Self::build(
            MorphismKind::Projection { keep_left },
            source.clone(),
            target,
            tangent,
            push,
            Some(pull.clone()),
            Some(k_push),
            Some(KPull::Full(pull)),
        ))
    }

    /// `X → X × X` for a single projective space or quadric.
    pub fn diagonal(x: &Arc<Variety>) -> Result<Self> {
        if x.factor_count() != 1 {
            return Err(Error::Domain(format!("diagonal of {} would exceed the product cap", x.descriptor())));
        }
        let target = shared(&SplitVariety::product(x.descriptor().clone(), x.descriptor().clone()))?;
        let n = x.len();
        let dual = x.pairing_dual();
        let push_cols: Vec<Vec<Integer>> = (0..n)
            .map(|i| {
                let mut acc = vec![Integer::zero(); n * n];
                for j in 0..n {
                    let t = tensor_vectors(&[x.chow_basis_product(i, j), dual.column(j)]);
                    for (a, b) in acc.iter_mut().zip(t) {
                        *a += b;
                    }
                }
                acc
            })
            .collect();
        let pull_cols: Vec<Vec<Integer>> =
            (0..n * n).map(|t| x.chow_basis_product(t / n, t % n)).collect();
        let (k_push, k_pull) = if x.descriptor().is_projective_tower() {
            let kd = chi_dual(x)?;
            let kp: Vec<Vec<Integer>> = (0..n)
                .map(|i| {
                    let mut acc = vec![Integer::zero(); n * n];
                    for j in 0..n {
                        let prod = x.k_mul(&unit(n, i), &unit(n, j))?;
                        for (a, b) in acc.iter_mut().zip(tensor_vectors(&[prod, kd.column(j)])) {
                            *a += b;
                        }
                    }
                    Ok(acc)
                })
                .collect::<Result<_>>()?;
            let kl: Vec<Vec<Integer>> =
                (0..n * n).map(|t| x.k_mul(&unit(n, t / n), &unit(n, t % n))).collect::<Result<_>>()?;
            (Some(Matrix::from_columns(n * n, &kp)), Some(KPull::Full(Matrix::from_columns(n, &kl))))
        } else {
            (None, None)
        };
        Ok(Self::build(
            MorphismKind::Diagonal,
            x.clone(),
            target,
            SplitKClass::tangent(x).neg(),
            Matrix::from_columns(n * n, &push_cols),
            Some(Matrix::from_columns(n, &pull_cols)),
            k_push,
            k_pull,
        ))
    }

    /// `P^j` as a linear subspace of `P^n` or of `Q_d` (`j ≤ ⌊d/2⌋`).
    pub fn linear_embedding(dim: usize, target: &Arc<Variety>, alternate: bool) -> Result<Self> {
        let kinds = target.factor_kinds();
        let bad = || Error::Domain(format!("no linear P{dim} in {} (alternate: {alternate})", target.descriptor()));
        let cell_of = |i: usize| -> Option<Cell> {
            match kinds.as_slice() {
                [FactorKind::Proj(n)] if dim <= *n && !alternate => Some(Cell::Hyperplane(n - dim + i)),
                [FactorKind::Quadric(d)] if dim <= d / 2 => {
                    let m = d / 2;
                    if alternate && (d % 2 == 1 || dim != m) {
                        return None;
                    }
                    let k = dim - i;
                    Some(if alternate && k == m { Cell::LinearAlt(m) } else { Cell::Linear(k) })
                }
                _ => None,
            }
        };
        let source = shared(&SplitVariety::proj(dim))?;
        let nt = target.len();
        let cols: Vec<Vec<Integer>> = (0..=dim)
            .map(|i| Ok(unit(nt, target.cell_index(&[cell_of(i).ok_or_else(bad)?]).ok_or_else(bad)?)))
            .collect::<Result<_>>()?;
        let push = Matrix::from_columns(nt, &cols);
        let k_pull = match kinds[0] {
            FactorKind::Proj(_) => {
                let pull_cols: Vec<Vec<Integer>> =
                    (0..nt).map(|t| if t <= dim { unit(dim + 1, t) } else { vec![Integer::zero(); dim + 1] }).collect();
                KPull::Full(Matrix::from_columns(dim + 1, &pull_cols))
            }
            FactorKind::Quadric(_) => KPull::SplitOnly,
        };
        let tangent = SplitKClass::tangent(&source).sub(&SplitKClass::tangent(target).transport(&source)?)?;
        Ok(Self::build(
            MorphismKind::LinearEmbedding { dim, alternate },
            source,
            target.clone(),
            tangent,
            push.clone(),
            None,
            Some(push),
            Some(k_pull),
        ))
    }

    /// A plane section `Q_e ⊂ Q_d`, `1 ≤ e < d`.
    pub fn subquadric(dim: usize, target: &Arc<Variety>) -> Result<Self> {
        let d = match target.factor_kinds().as_slice() {
            [FactorKind::Quadric(d)] if dim >= 1 && dim < *d => *d,
            _ => return Err(Error::Domain(format!("no subquadric Q{dim} in {}", target.descriptor()))),
        };
        let source = shared(&SplitVariety::quadric(dim))?;
        let big = &target.factors[0];
        let nt = target.len();
        let mut chow_cols = Vec::new();
        let mut k_cols = Vec::new();
        for i in 0..source.len() {
            match source.cell(i)[0] {
                Cell::Hyperplane(c) => {
                    chow_cols.push(big.h_powers[d - dim + c].clone());
                    k_cols.push(big.subquadric_k_class((dim - c) as i64));
                }
                Cell::Linear(k) | Cell::LinearAlt(k) => {
                    let t = unit(nt, target.cell_index(&[Cell::Linear(k)]).expect("linear cell"));
                    chow_cols.push(t.clone());
                    k_cols.push(t);
                }
            }
        }
        let tangent = SplitKClass::line(&source, &[1], dim as i64 - d as i64)?;
        Ok(Self::build(
            MorphismKind::SubquadricEmbedding { dim },
            source,
            target.clone(),
            tangent,
            Matrix::from_columns(nt, &chow_cols),
            None,
            Some(Matrix::from_columns(nt, &k_cols)),
            Some(KPull::SplitOnly),
        ))
    }

    pub fn point_inclusion(target: &Arc<Variety>) -> Result<Self> {
        let source = shared(&SplitVariety::point())?;
        let nt = target.len();
        let push = Matrix::from_columns(nt, &[unit(nt, target.point_index())]);
        let pull_cols: Vec<Vec<Integer>> =
            (0..nt).map(|t| vec![if t == target.fundamental_index() { Integer::one() } else { Integer::zero() }]).collect();
        let tangent = SplitKClass::trivial(&source, -(target.dimension() as i64));
        Ok(Self::build(
            MorphismKind::PointInclusion,
            source,
            target.clone(),
            tangent,
            push.clone(),
            None,
            Some(push),
            Some(KPull::Full(Matrix::from_columns(1, &pull_cols))),
        ))
    }

    pub fn structural(source: &Arc<Variety>) -> Result<Self> {
        let target = shared(&SplitVariety::point())?;
        let n = source.len();
        let push = Matrix::from_columns(
            1,
            &(0..n).map(|i| vec![if i == source.point_index() { Integer::one() } else { Integer::zero() }]).collect::<Vec<_>>(),
        );
        let chi = Matrix::from_columns(1, &vec![vec![Integer::one()]; n]);
        let pull = Matrix::from_columns(n, &[unit(n, source.fundamental_index())]);
        Ok(Self::build(
            MorphismKind::Structural,
            source.clone(),
            target,
            SplitKClass::tangent(source),
            push,
            Some(pull.clone()),
            Some(chi),
            Some(KPull::Full(pull)),
        ))
    }

    pub fn kind(&self) -> &MorphismKind {
        &self.kind
    }

    pub fn source(&self) -> &Arc<Variety> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Variety> {
        &self.target
    }

    pub fn relative_dimension(&self) -> i64 {
        self.source.dimension() as i64 - self.target.dimension() as i64
    }

    /// `T_f = T_source - f^* T_target`.
    pub fn tangent(&self) -> &SplitKClass {
        &self.tangent
    }

    pub fn chow_push_matrix(&self) -> &Matrix<Integer> {
        &self.chow_push
    }

    pub fn chow_pull_matrix(&self) -> &Matrix<Integer> {
        &self.chow_pull
    }

    pub fn push_chow<S: Scalar>(&self, x: &ChowClass<S>) -> Result<ChowClass<S>> {
        check_same(x.variety(), &self.source)?;
        ChowClass::new(self.target.clone(), self.chow_push.map(S::from_integer).apply(x.coeffs()))
    }

    pub fn pull_chow<S: Scalar>(&self, x: &ChowClass<S>) -> Result<ChowClass<S>> {
        check_same(x.variety(), &self.target)?;
        ChowClass::new(self.source.clone(), self.chow_pull.map(S::from_integer).apply(x.coeffs()))
    }

    pub fn push_k<S: Scalar>(&self, x: &KClass<S>) -> Result<KClass<S>> {
        check_same(x.variety(), &self.source)?;
        let m = self.k_push.as_ref().ok_or_else(|| {
            Error::UnsupportedDomain(format!("K₀ push-forward along {self} is exposed only for projective spaces"))
        })?;
        KClass::new(self.target.clone(), m.map(S::from_integer).apply(x.coords()))
    }

    pub fn pull_k<S: Scalar>(&self, x: &KClass<S>) -> Result<KClass<S>> {
        check_same(x.variety(), &self.target)?;
        match &self.k_pull {
            Some(KPull::Full(m)) => KClass::new(self.source.clone(), m.map(S::from_integer).apply(x.coords())),
            Some(KPull::SplitOnly) => {
                let p = self.target.split_coordinates(x.coords()).ok_or_else(|| {
                    Error::UnsupportedDomain(format!(
                        "K₀ pull-back along {self} is exposed on classes generated by line bundles; {x} is not one"
                    ))
                })?;
                let caps = self.source.caps();
                let mut q = TruncPoly::zero(&caps);
                for (e, c) in p.terms() {
                    q = q + TruncPoly::var(&caps, 0).pow(e[0] as u32).scale(c);
                }
                Ok(KClass::from_poly(&self.source, &q))
            }
            None => Err(Error::UnsupportedDomain(format!(
                "K₀ pull-back along {self} is exposed only for projective spaces"
            ))),
        }
    }

    /// Whether `pull_k` is defined on all of K₀ of the target.
    pub fn has_full_k_pullback(&self) -> bool {
        matches!(self.k_pull, Some(KPull::Full(_)))
    }

    pub fn has_k_pushforward(&self) -> bool {
        self.k_push.is_some()
    }
}

impl fmt::Display for CatalogMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match &self.kind {
            MorphismKind::Projection { keep_left: true } => "pr1".to_string(),
            MorphismKind::Projection { keep_left: false } => "pr2".to_string(),
            MorphismKind::Diagonal => "diag".to_string(),
            MorphismKind::LinearEmbedding { alternate: false, .. } => "linear".to_string(),
            MorphismKind::LinearEmbedding { alternate: true, .. } => "linear'".to_string(),
            MorphismKind::SubquadricEmbedding { .. } => "section".to_string(),
            MorphismKind::PointInclusion => "point".to_string(),
            MorphismKind::Structural => "structural".to_string(),
        };
        write!(f, "{label}: {} -> {}", self.source.descriptor(), self.target.descriptor())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::F2;

    fn v(s: &str) -> Arc<Variety> {
        Variety::shared(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn linear_subspace_lands_on_l_j() {
        let q = v("Q5");
        for j in 0..=2 {
            let f = CatalogMorphism::linear_embedding(j, &q, false).unwrap();
            let img = f.push_chow(&ChowClass::<Integer>::fundamental(f.source())).unwrap();
            assert_eq!(img, ChowClass::basis(&q, q.index_of_name(&format!("l_{j}")).unwrap()));
        }
        assert!(CatalogMorphism::linear_embedding(3, &q, false).is_err());
        assert!(CatalogMorphism::linear_embedding(2, &q, true).is_err());
        let q4 = v("Q4");
        let f = CatalogMorphism::linear_embedding(2, &q4, true).unwrap();
        let img = f.push_chow(&ChowClass::<Integer>::fundamental(f.source())).unwrap();
        assert_eq!(img, ChowClass::basis(&q4, q4.index_of_name("l_2'").unwrap()));
    }

    #[test]
    fn chi_of_projective_space_and_twists() {
        for n in 0..=5usize {
            let p = v(&format!("P{n}"));
            let f = CatalogMorphism::structural(&p).unwrap();
            assert_eq!(f.push_k(&KClass::<Integer>::one(&p)).unwrap().coords(), &[Integer::one()]);
            let mut binom = Integer::one();
            for a in 1..=4usize {
                binom = binom * Integer::from(n + a) / Integer::from(a);
                let l = KClass::<Integer>::line_bundle(&p, &[a as i64]);
                assert_eq!(f.push_k(&l).unwrap().coords()[0], binom);
            }
        }
    }

    #[test]
    fn hyperplane_restricts_to_hyperplane() {
        let q = v("Q4");
        let f = CatalogMorphism::subquadric(3, &q).unwrap();
        let h = ChowClass::<Integer>::h_monomial(&q, &[1]);
        assert_eq!(f.pull_chow(&h).unwrap(), ChowClass::h_monomial(f.source(), &[1]));
        assert_eq!(f.tangent().rank(), -1);
        assert_eq!(f.tangent().to_string(), "-1·O(1)");
    }

    #[test]
    fn diagonal_pulls_external_product_back() {
        let p = v("P3");
        let f = CatalogMorphism::diagonal(&p).unwrap();
        assert_eq!(f.tangent().rank(), -3);
        let h_times_1 = ChowClass::<Integer>::h_monomial(f.target(), &[1, 0]);
        assert_eq!(f.pull_chow(&h_times_1).unwrap(), ChowClass::h_monomial(&p, &[1]));
        let x = ChowClass::<Integer>::basis(&p, 1);
        let pr = CatalogMorphism::projection(f.target(), true).unwrap();
        assert_eq!(pr.push_chow(&f.push_chow(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn projection_tangent() {
        let x = v("P1xQ3");
        let f = CatalogMorphism::projection(&x, true).unwrap();
        assert_eq!(f.tangent().rank(), 3);
        assert_eq!(f.relative_dimension(), 3);
    }

    #[test]
    fn duality_pullback_agrees_with_direct_formulas() {
        for s in ["P2xP3", "Q2xP2", "P1xQ3"] {
            let x = v(s);
            for keep in [true, false] {
                let f = CatalogMorphism::projection(&x, keep).unwrap();
                assert_eq!(pull_by_duality(f.source(), f.target(), f.chow_push_matrix()), *f.chow_pull_matrix());
            }
        }
        for s in ["P3", "Q3", "Q4"] {
            let x = v(s);
            for f in [CatalogMorphism::diagonal(&x).unwrap(), CatalogMorphism::structural(&x).unwrap()] {
                assert_eq!(pull_by_duality(f.source(), f.target(), f.chow_push_matrix()), *f.chow_pull_matrix());
            }
        }
    }

    #[test]
    fn projection_formula_on_embeddings_mod2() {
        let q = v("Q6");
        let f = CatalogMorphism::subquadric(4, &q).unwrap();
        for i in 0..q.len() {
            for j in 0..f.source().len() {
                let x = ChowClass::<F2>::basis(&q, i);
                let y = ChowClass::<F2>::basis(f.source(), j);
                let lhs = f.push_chow(&f.pull_chow(&x).unwrap().mul(&y).unwrap()).unwrap();
                let rhs = x.mul(&f.push_chow(&y).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn k_pullback_into_quadric_requires_split_class() {
        let q = v("Q2");
        let f = CatalogMorphism::linear_embedding(1, &q, false).unwrap();
        let line = KClass::<Integer>::line_bundle(&q, &[1]);
        assert_eq!(f.pull_k(&line).unwrap(), KClass::line_bundle(f.source(), &[1]));
        let a = KClass::<Integer>::basis(&q, q.index_of_name("l_1").unwrap());
        assert!(matches!(f.pull_k(&a), Err(Error::UnsupportedDomain(_))));
    }
}
