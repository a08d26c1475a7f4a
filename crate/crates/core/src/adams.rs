//! Adams operations, Bott classes, Chern classes and the homological Adams
//! operation `ψ_k = θ^k(-T_X) ψ^k` on catalog varieties.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{tk_polynomial, Coefficient, Integer, Matrix, Scalar, TruncPoly};
use crate::varieties::{ChowClass, KClass, SplitKClass, SplitVariety, Variety};

/// A fixed `k ≠ 0`; Bott classes live in `Z[1/k]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdamsContext {
    k: i64,
}

impl AdamsContext {
    pub fn new(k: i64) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("Adams operations need k != 0".into()));
        }
        Ok(AdamsContext { k })
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    /// `n` as a coefficient of this context.
    pub fn scalar(&self, n: impl Into<Integer>) -> Coefficient {
        Coefficient::integer(n.into()).relocalize(self.k)
    }

    /// `k^e` for any integer `e`.
    pub fn k_power(&self, e: i64) -> Coefficient {
        let base = self.scalar(self.k);
        let p = base.pow_u32(e.unsigned_abs() as u32);
        if e >= 0 {
            p
        } else {
            p.try_inverse().expect("k is a unit of Z[1/k]")
        }
    }
}

fn localize_poly(p: &TruncPoly<Integer>, k: i64) -> TruncPoly<Coefficient> {
    p.map(|c| Coefficient::integer(c.clone()).relocalize(k))
}

/// Substitutes `y_f ↦ 1 - (1 - y_f)^k` in each variable.
fn substitute_psi<S: Scalar>(p: &TruncPoly<S>, k: i64) -> Result<TruncPoly<S>> {
    let caps = p.caps().to_vec();
    let images: Vec<TruncPoly<S>> = (0..caps.len())
        .map(|f| {
            let one = TruncPoly::one(&caps);
            let one_minus_y = one.clone() - TruncPoly::var(&caps, f);
            Ok(one - one_minus_y.powi(k)?)
        })
        .collect::<Result<_>>()?;
    let mut acc = TruncPoly::zero(&caps);
    for (e, c) in p.terms() {
        let mut m = TruncPoly::constant(&caps, c.clone());
        for (f, &ef) in e.iter().enumerate() {
            m = m * images[f].pow(ef as u32);
        }
        acc = acc + m;
    }
    Ok(acc)
}

/// `ψ^k` on K₀.
///
/// `k = 1` is the identity and `k = -1` is computed on the whole of K₀ by
/// duality. Other `k` act on classes generated by line bundles (all of K₀
/// for products of projective spaces) through `ψ^k[L] = [L^k]`.
pub fn adams_psi<S: Scalar>(ctx: &AdamsContext, x: &KClass<S>) -> Result<KClass<S>> {
    let v = x.variety();
    match ctx.k {
        1 => Ok(x.clone()),
        -1 => KClass::new(v.clone(), v.psi_dual_matrix().map(S::from_integer).apply(x.coords())),
        k => {
            let p = v.split_coordinates(x.coords()).ok_or_else(|| {
                Error::UnsupportedDomain(format!(
                    "ψ^{k} on {} is defined on classes generated by line bundles; {x} is not one",
                    v.descriptor()
                ))
            })?;
            Ok(KClass::from_poly(v, &substitute_psi(&p, k)?))
        }
    }
}

/// `ψ^k` as a matrix on the cell basis, when it is defined on all of K₀.
pub fn adams_psi_matrix(ctx: &AdamsContext, v: &Arc<Variety>) -> Result<Matrix<Coefficient>> {
    let cols: Vec<Vec<Coefficient>> = (0..v.len())
        .map(|i| Ok(adams_psi(ctx, &KClass::<Integer>::basis(v, i).localize(ctx.k))?.into_coords()))
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(v.len(), &cols))
}

/// `θ^k(y)` as a polynomial in the `y` variables over `Z[1/k]`:
/// `θ^k(L) = t^k([L^∨])`, extended multiplicatively.
pub fn theta_poly(ctx: &AdamsContext, y: &SplitKClass) -> Result<TruncPoly<Coefficient>> {
    let v = y.variety();
    let caps = v.caps();
    let t = tk_polynomial::<Coefficient>(ctx.k)?.map_coefficients(|c| c.clone().relocalize(ctx.k));
    let one = TruncPoly::<Coefficient>::one(&caps);
    let mut acc = one.clone();
    for (l, m) in y.terms() {
        let dual: Vec<i64> = l.iter().map(|a| -a).collect();
        let u = localize_poly(&v.line_bundle_poly::<Integer>(&dual), ctx.k);
        let u_inv = localize_poly(&v.line_bundle_poly::<Integer>(l), ctx.k);
        let value = t.evaluate(&u, &u_inv, one.clone());
        acc = acc * value.powi(m)?;
    }
    Ok(acc)
}

/// `θ^k(y) · [O_X]`.
pub fn bott_theta(ctx: &AdamsContext, y: &SplitKClass) -> Result<KClass<Coefficient>> {
    Ok(KClass::from_poly(y.variety(), &theta_poly(ctx, y)?))
}

/// Multiplication by `θ^k(y)`.
pub fn theta_operator(ctx: &AdamsContext, y: &SplitKClass) -> Result<Matrix<Coefficient>> {
    Ok(y.variety().k_operator(&theta_poly(ctx, y)?))
}

/// Total Chern class `Π (1 + Σ_f a_f h_f)^m` as a polynomial in the
/// hyperplane classes.
pub fn total_chern_poly(y: &SplitKClass) -> Result<TruncPoly<Integer>> {
    let caps = y.variety().caps();
    let mut acc = TruncPoly::<Integer>::one(&caps);
    for (l, m) in y.terms() {
        let mut root = TruncPoly::one(&caps);
        for (f, &a) in l.iter().enumerate() {
            root = root + TruncPoly::var(&caps, f).scale(&Integer::from(a));
        }
        acc = acc * root.powi(m)?;
    }
    Ok(acc)
}

/// `c_n(y) ∩ [X]`.
pub fn chern_class(n: usize, y: &SplitKClass) -> Result<ChowClass<Integer>> {
    let v = y.variety();
    let mask = vec![true; v.factor_count()];
    let part = total_chern_poly(y)?.homogeneous_part(n, &mask);
    Ok(ChowClass::from_poly(v, &part))
}

/// `c_1(y)` as a polynomial in the hyperplane classes.
pub fn first_chern_poly(y: &SplitKClass) -> Result<TruncPoly<Integer>> {
    let mask = vec![true; y.variety().factor_count()];
    Ok(total_chern_poly(y)?.homogeneous_part(1, &mask))
}

/// K-theoretic Chern classes `c^K_n(y)`, `n = 0..=dim X`, as polynomials in
/// the `y` variables, from `c^K(L) = 1 + t (1 - [L^∨])`.
pub fn k_chern_polys(y: &SplitKClass) -> Result<Vec<TruncPoly<Integer>>> {
    let v = y.variety();
    let r = v.factor_count();
    let dim = v.dimension();
    let mut caps = v.caps();
    caps.push(dim);
    let t = TruncPoly::<Integer>::var(&caps, r);
    let one = TruncPoly::<Integer>::one(&caps);
    let mut acc = one.clone();
    for (l, m) in y.terms() {
        // [L^∨] = Π (1 - y_f)^{a_f}
        let mut dual = one.clone();
        for (f, &a) in l.iter().enumerate() {
            let base = one.clone() - TruncPoly::var(&caps, f);
            dual = dual * base.powi(a)?;
        }
        let c = one.clone() + t.clone() * (one.clone() - dual);
        acc = acc * c.powi(m)?;
    }
    let factor_caps = v.caps();
    Ok((0..=dim)
        .map(|n| {
            let slice = acc.coefficient_of_power(r, n);
            let mut p = TruncPoly::<Integer>::zero(&factor_caps);
            for (e, c) in slice.terms() {
                let mut mono = TruncPoly::constant(&factor_caps, c.clone());
                for (f, &ef) in e[..r].iter().enumerate() {
                    mono = mono * TruncPoly::var(&factor_caps, f).pow(ef as u32);
                }
                p = p + mono;
            }
            p
        })
        .collect())
}

/// `c^K_n(y) · [O_X]`, `n = 0..=dim X`.
pub fn k_chern_classes(y: &SplitKClass) -> Result<Vec<KClass<Integer>>> {
    let v = y.variety();
    Ok(k_chern_polys(y)?.iter().map(|p| KClass::from_poly(v, p)).collect())
}

/// The integral matrix of `ψ_{-1} = θ^{-1}(-T_X)·ψ^{-1}`, cached per
/// descriptor.
pub fn homological_dual_matrix(v: &Arc<Variety>) -> Arc<Matrix<Integer>> {
    static CACHE: OnceLock<Mutex<HashMap<SplitVariety, Arc<Matrix<Integer>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(m) = cache.lock().expect("cache lock").get(v.descriptor()) {
        return m.clone();
    }
    let ctx = AdamsContext { k: -1 };
    let theta = theta_operator(&ctx, &SplitKClass::tangent(v).neg()).expect("θ^{-1} needs no inverses");
    let theta = theta.map(|c| c.to_integer().expect("θ^{-1} is integral"));
    let m = Arc::new(&theta * v.psi_dual_matrix());
    cache.lock().expect("cache lock").insert(v.descriptor().clone(), m.clone());
    m
}

/// `ψ_k(x) = θ^k(-T_X) · ψ^k(x)`.
pub fn homological_adams(ctx: &AdamsContext, x: &KClass<Coefficient>) -> Result<KClass<Coefficient>> {
    let v = x.variety();
    if ctx.k == -1 {
        let m = homological_dual_matrix(v);
        let coords = (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .filter(|&j| !m.get(i, j).is_zero() && !x.coords()[j].is_zero())
                    .fold(Coefficient::zero(), |acc, j| acc + Coefficient::from_integer(m.get(i, j)) * x.coords()[j].clone())
            })
            .collect();
        return KClass::new(v.clone(), coords);
    }
    let psi = adams_psi(ctx, x)?;
    let theta = theta_poly(ctx, &SplitKClass::tangent(v).neg())?;
    Ok(psi.mul_poly(&theta))
}

/// `ψ_k` as a matrix on the cell basis, when defined on all of K₀.
pub fn homological_adams_matrix(ctx: &AdamsContext, v: &Arc<Variety>) -> Result<Matrix<Coefficient>> {
    let psi = adams_psi_matrix(ctx, v)?;
    let theta = theta_operator(ctx, &SplitKClass::tangent(v).neg())?;
    Ok(&theta * &psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::varieties::SplitVariety;
    use num_traits::{One, Zero};

    fn v(s: &str) -> Arc<Variety> {
        Variety::shared(&s.parse::<SplitVariety>().unwrap()).unwrap()
    }

    fn ints(x: &[i64]) -> Vec<Integer> {
        x.iter().map(|&a| Integer::from(a)).collect()
    }

    fn ctx(k: i64) -> AdamsContext {
        AdamsContext::new(k).unwrap()
    }

    #[test]
    fn cached_dual_matches_the_formula() {
        for s in ["P3", "Q4", "Q5", "P1xQ2"] {
            let x = v(s);
            let c = ctx(-1);
            let psi = adams_psi_matrix(&c, &x).unwrap();
            let theta = theta_operator(&c, &SplitKClass::tangent(&x).neg()).unwrap();
            let direct = &theta * &psi;
            assert_eq!(direct, homological_dual_matrix(&x).map(Coefficient::from_integer), "{s}");
        }
    }

    #[test]
    fn psi_two_on_p1() {
        // x = 1 - [O(-1)] ↦ 1 - [O(-2)] = 2x - x^2
        let p1 = v("P1");
        let x = KClass::<Integer>::basis(&p1, 1);
        let expected = x.scale(&Integer::from(2));
        assert_eq!(adams_psi(&ctx(2), &x).unwrap(), expected);
        let p3 = v("P3");
        let x = KClass::<Integer>::basis(&p3, 1);
        let x2 = KClass::<Integer>::basis(&p3, 2);
        assert_eq!(adams_psi(&ctx(2), &x).unwrap(), x.scale(&Integer::from(2)).sub(&x2).unwrap());
    }

    #[test]
    fn psi_dual_on_points_of_quadrics() {
        for d in 1..=8 {
            let q = v(&format!("Q{d}"));
            let pt = KClass::<Integer>::basis(&q, q.point_index());
            let sign = if d % 2 == 0 { 1 } else { -1 };
            assert_eq!(adams_psi(&ctx(-1), &pt).unwrap(), pt.scale(&Integer::from(sign)));
        }
    }

    #[test]
    fn psi_dual_agrees_with_ring_map_on_projective_space() {
        // ψ^{-1}(x) = 1 - (1 - x)^{-1} computed as a ring map
        for n in 1..=5 {
            let p = v(&format!("P{n}"));
            for i in 0..=n {
                let x = KClass::<Integer>::basis(&p, i);
                let poly = p.split_coordinates(x.coords()).unwrap();
                let ring = KClass::from_poly(&p, &substitute_psi(&poly, -1).unwrap());
                assert_eq!(adams_psi(&ctx(-1), &x).unwrap(), ring);
            }
        }
    }

    #[test]
    fn psi_k_outside_split_span() {
        let q = v("Q4");
        let a = KClass::<Integer>::basis(&q, q.index_of_name("l_2").unwrap());
        assert!(matches!(adams_psi(&ctx(2), &a), Err(Error::UnsupportedDomain(_))));
        assert!(adams_psi(&ctx(-1), &a).is_ok());
        let h = KClass::<Integer>::line_bundle(&q, &[3]);
        assert_eq!(adams_psi(&ctx(2), &h).unwrap(), KClass::line_bundle(&q, &[6]));
    }

    #[test]
    fn theta_examples() {
        let p1 = v("P1");
        assert_eq!(bott_theta(&ctx(3), &SplitKClass::zero(&p1)).unwrap(), KClass::one(&p1).localize(3));
        // θ^{-1}(L) = -[L]
        for a in [-2, 1, 3] {
            let l = SplitKClass::line(&p1, &[a], 1).unwrap();
            let expected = KClass::<Integer>::line_bundle(&p1, &[a]).scale(&Integer::from(-1)).localize(-1);
            assert_eq!(bott_theta(&ctx(-1), &l).unwrap(), expected);
        }
        // θ^2(O(-1)) = 1 + [O(1)]
        let l = SplitKClass::line(&p1, &[-1], 1).unwrap();
        let expected = KClass::one(&p1).add(&KClass::<Integer>::line_bundle(&p1, &[1])).unwrap().localize(2);
        assert_eq!(bott_theta(&ctx(2), &l).unwrap(), expected);
        let p2 = v("P2");
        assert_eq!(bott_theta(&ctx(3), &SplitKClass::tangent(&p2)).unwrap().rank(), ctx(3).scalar(9));
    }

    #[test]
    fn theta_of_negative_tangent_of_quadric() {
        // θ^{-1}(-T_Q) = (-1)^d O(-d)
        for d in 1..=6 {
            let q = v(&format!("Q{d}"));
            let lhs = bott_theta(&ctx(-1), &SplitKClass::tangent(&q).neg()).unwrap();
            let sign = if d % 2 == 0 { 1 } else { -1 };
            let rhs = KClass::<Integer>::line_bundle(&q, &[-(d as i64)]).scale(&Integer::from(sign)).localize(-1);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn chern_examples() {
        for d in 1..=8usize {
            let q = v(&format!("Q{d}"));
            let c1 = chern_class(1, &SplitKClass::tangent(&q)).unwrap();
            // adjunction: ω_Q = O(-d), so integrally c_1 = d·h; in Ch this is (d+2)·h
            assert_eq!(c1, ChowClass::h_monomial(&q, &[1]).scale(&Integer::from(d)));
            let h = ChowClass::<Integer>::h_monomial(&q, &[1]);
            assert_eq!(c1.reduce_mod2(), h.scale(&Integer::from(d + 2)).reduce_mod2());
            assert_eq!(chern_class(0, &SplitKClass::tangent(&q)).unwrap(), ChowClass::fundamental(&q));
        }
        let p3 = v("P3");
        let c1 = chern_class(1, &SplitKClass::tangent(&p3)).unwrap();
        assert_eq!(c1.coeffs(), ints(&[0, 4, 0, 0]));
        // c(T_P3) = (1 + h)^4: c_3 = 4 h^3
        assert_eq!(chern_class(3, &SplitKClass::tangent(&p3)).unwrap().degree(), Integer::from(4));
    }

    #[test]
    fn homological_adams_on_p1_point() {
        let p1 = v("P1");
        let pt = KClass::<Integer>::basis(&p1, 1).localize(-1);
        assert_eq!(homological_adams(&ctx(-1), &pt).unwrap(), pt);
        let point = v("P0");
        let one = KClass::<Integer>::one(&point).localize(5);
        assert_eq!(homological_adams(&ctx(5), &one).unwrap(), one);
    }

    #[test]
    fn k_chern_of_line() {
        let p2 = v("P2");
        let l = SplitKClass::line(&p2, &[1], 1).unwrap();
        let c = k_chern_classes(&l).unwrap();
        assert_eq!(c[0], KClass::one(&p2));
        // c^K_1(O(1)) = 1 - [O(-1)] = y
        assert_eq!(c[1], KClass::basis(&p2, 1));
        assert!(c[2].is_zero());
        assert!(Integer::one() + Integer::zero() == Integer::one());
    }
}
