//! The first Steenrod square on mod-2 Chow groups, correspondences and the
//! half-degree functional.

use std::sync::Arc;

use num_traits::Zero;

use crate::adams::chern_class;
use crate::error::{Error, Result};
use crate::exactalg::{Integer, Scalar, F2};
use crate::varieties::{CatalogMorphism, ChowClass, SplitKClass, SplitVariety, Variety};

/// `Sq_1: Ch_p → Ch_{p-1}`.
pub fn sq1(x: &ChowClass<F2>) -> ChowClass<F2> {
    let v = x.variety();
    ChowClass::new(v.clone(), v.sq1_matrix().apply(x.coeffs())).expect("same basis")
}

/// `c_1(T_X) ∩ [X]`.
pub fn c1_tangent(v: &Arc<Variety>) -> ChowClass<Integer> {
    chern_class(1, &SplitKClass::tangent(v)).expect("tangent classes have unipotent Chern roots")
}

/// `Sq^1 = Sq_1 + c_1(T_X) ∩ -`.
pub fn sq1_coh(x: &ChowClass<F2>) -> ChowClass<F2> {
    let c1 = c1_tangent(x.variety()).reduce_mod2();
    sq1(x).add(&c1.mul(x).expect("same variety")).expect("same variety")
}

/// `c_1(O(a_1, .., a_r)) ∩ x = (Σ a_f h_f) · x`.
pub fn c1_action<S: Scalar>(degrees: &[i64], x: &ChowClass<S>) -> Result<ChowClass<S>> {
    let v = x.variety();
    if degrees.len() != v.factor_count() {
        return Err(Error::Domain(format!("{} degrees for {}", degrees.len(), v.descriptor())));
    }
    let mut h = ChowClass::<S>::zero(v);
    for (f, &a) in degrees.iter().enumerate() {
        let mut e = vec![0; degrees.len()];
        e[f] = 1;
        h = h.add(&ChowClass::h_monomial(v, &e).scale(&S::from_i64(a)))?;
    }
    h.mul(x)
}

/// `c_1(y) ∩ x` for a split class `y`.
pub fn c1_split_action<S: Scalar>(y: &SplitKClass, x: &ChowClass<S>) -> Result<ChowClass<S>> {
    let c1 = chern_class(1, y)?;
    let c1 = ChowClass::from_integers(c1.variety(), c1.coeffs())?;
    c1.mul(x)
}

/// Integral lift of `Sq_1(h^i ∩ [X])` on a single projective space or
/// quadric: `Sq^1(h^i) + c_1(T_X)·h^i = i·h^{i+1} + c_1(T_X)·h^i`.
pub fn sq1_lift_h_power(v: &Arc<Variety>, i: usize) -> Result<ChowClass<Integer>> {
    if v.factor_count() != 1 {
        return Err(Error::Domain(format!("{} is not a single factor", v.descriptor())));
    }
    let hi = ChowClass::<Integer>::h_monomial(v, &[i]);
    let coh = ChowClass::h_monomial(v, &[i + 1]).scale(&Integer::from(i));
    coh.add(&c1_tangent(v).mul(&hi)?)
}

/// `(deg x / 2) mod 2` for a zero-cycle of even degree.
pub fn half_degree(x: &ChowClass<Integer>) -> Result<F2> {
    if let Some(d) = x.pure_dimension() {
        if d != 0 {
            return Err(Error::Domain(format!("{x} is not a zero-cycle")));
        }
    } else if !x.is_zero() {
        return Err(Error::Domain(format!("{x} is not a zero-cycle")));
    }
    let deg = x.degree();
    let two = Integer::from(2);
    if !(&deg % &two).is_zero() {
        return Err(Error::OddDegree(deg.to_string()));
    }
    Ok(F2::from_integer(&(deg / two)))
}

/// A cycle on `X × Y` of dimension `dim X`.
#[derive(Clone, Debug)]
pub struct Correspondence<S> {
    carrier: ChowClass<S>,
    left: Arc<Variety>,
    right: Arc<Variety>,
}

impl<S: Scalar> Correspondence<S> {
    pub fn new(carrier: ChowClass<S>) -> Result<Self> {
        let v = carrier.variety().clone();
        let SplitVariety::Product(a, b) = v.descriptor() else {
            return Err(Error::Domain(format!("correspondences live on products, not {}", v.descriptor())));
        };
        let left = Variety::shared(a)?;
        let right = Variety::shared(b)?;
        match carrier.pure_dimension() {
            Some(d) if d != left.dimension() => {
                return Err(Error::Domain(format!(
                    "correspondence of dimension {d} on {}; expected {}",
                    v.descriptor(),
                    left.dimension()
                )))
            }
            None if !carrier.is_zero() => {
                return Err(Error::Domain(format!("correspondence {carrier} is not of pure dimension")))
            }
            _ => {}
        }
        Ok(Correspondence { carrier, left, right })
    }

    /// `[Δ] ⊂ X × X` for a single-factor `X`.
    pub fn diagonal(x: &Arc<Variety>) -> Result<Self> {
        let d = CatalogMorphism::diagonal(x)?;
        Self::new(d.push_chow(&ChowClass::<S>::fundamental(x))?)
    }

    pub fn carrier(&self) -> &ChowClass<S> {
        &self.carrier
    }

    pub fn left(&self) -> &Arc<Variety> {
        &self.left
    }

    pub fn right(&self) -> &Arc<Variety> {
        &self.right
    }

    fn q(&self) -> CatalogMorphism {
        CatalogMorphism::projection(self.carrier.variety(), true).expect("product carrier")
    }

    fn p(&self) -> CatalogMorphism {
        CatalogMorphism::projection(self.carrier.variety(), false).expect("product carrier")
    }

    /// `m` with `q_*(r) = m·[X]`.
    pub fn multiplicity(&self) -> S {
        let pushed = self.q().push_chow(&self.carrier).expect("carrier on X × Y");
        pushed.coeffs()[self.left.fundamental_index()].clone()
    }

    /// `r_*(x) = p_*(q^*(x) · r)`.
    pub fn pushforward(&self, x: &ChowClass<S>) -> Result<ChowClass<S>> {
        let q = self.q();
        let pulled = q.pull_chow(x)?;
        self.p().push_chow(&pulled.mul(&self.carrier)?)
    }
}

impl Correspondence<F2> {
    /// The four mod-2 degrees of one step chain in the proof that
    /// `(deg/2) ∘ Sq_1 ∘ r_* = m · (deg/2) ∘ Sq_1`:
    /// `deg Sq_1 p_*(q^*x·r)`, `deg p_* Sq_1(q^*x·r)`, `deg q_* Sq_1(q^*x·r)`,
    /// `deg Sq_1(x · q_*r)`.
    pub fn degree_chain(&self, x: &ChowClass<F2>) -> Result<[F2; 4]> {
        let r = &self.carrier;
        let (p, q) = (self.p(), self.q());
        let z = q.pull_chow(x)?.mul(r)?;
        let sz = sq1(&z);
        Ok([
            sq1(&p.push_chow(&z)?).degree(),
            p.push_chow(&sz)?.degree(),
            q.push_chow(&sz)?.degree(),
            sq1(&x.mul(&q.push_chow(r)?)?).degree(),
        ])
    }
}

pub fn multiplicity<S: Scalar>(r: &Correspondence<S>) -> S {
    r.multiplicity()
}

pub fn corr_pushforward<S: Scalar>(r: &Correspondence<S>, x: &ChowClass<S>) -> Result<ChowClass<S>> {
    r.pushforward(x)
}

/// Outcome of the 2-torsion criterion for a quadric of dimension `d ≥ 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorsionVerdict {
    /// Multiplicity 0: the criterion says nothing.
    NotApplicable { multiplicity: F2 },
    /// Multiplicity 1 but the closure hypothesis was not asserted.
    HypothesisNotAsserted { multiplicity: F2 },
    /// Multiplicity 1 and the closure hypothesis asserted by the caller: a
    /// nonzero `ξ ∈ CH_1(X)` with `2ξ = 0` exists. `witness` is
    /// `m · (deg/2)(Sq_1 h^{d-1})` evaluated on the integral lift.
    Certified { multiplicity: F2, witness: F2 },
}

/// Decision procedure for the 2-torsion criterion on a quadric `X` of
/// dimension `d`: given a mod-2 correspondence `r` on the split model
/// `Q_d × Q_d` and the caller's assertion that `(r_L)_* Ch_1` vanishes over
/// the algebraic closure. The assertion is input; it is never computed.
pub fn torsion_decision(d: usize, r: &Correspondence<F2>, closure_vanishing: bool) -> Result<TorsionVerdict> {
    if d < 3 {
        return Err(Error::Domain(format!("the criterion needs a quadric of dimension at least 3, got {d}")));
    }
    let q = SplitVariety::quadric(d);
    if r.left.descriptor() != &q || r.right.descriptor() != &q {
        return Err(Error::Domain(format!("correspondence on {} is not on Q{d}xQ{d}", r.carrier.variety().descriptor())));
    }
    let m = r.multiplicity();
    if !m.0 {
        return Ok(TorsionVerdict::NotApplicable { multiplicity: m });
    }
    if !closure_vanishing {
        return Ok(TorsionVerdict::HypothesisNotAsserted { multiplicity: m });
    }
    let lift = sq1_lift_h_power(&r.left, d - 1)?;
    let witness = m * half_degree(&lift)?;
    Ok(TorsionVerdict::Certified { multiplicity: m, witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Arc<Variety> {
        Variety::shared(&s.parse::<SplitVariety>().unwrap()).unwrap()
    }

    fn f2(b: bool) -> F2 {
        F2(b)
    }

    #[test]
    fn sq1_of_linear_subspaces() {
        for d in 2..=8usize {
            let q = v(&format!("Q{d}"));
            for j in 1..=d / 2 {
                let l = ChowClass::<F2>::basis(&q, q.index_of_name(&format!("l_{j}")).unwrap());
                let below = ChowClass::<F2>::basis(&q, q.index_of_name(&format!("l_{}", j - 1)).unwrap());
                let expected = if (j + 1) % 2 == 1 { below } else { ChowClass::zero(&q) };
                assert_eq!(sq1(&l), expected, "Q{d} l_{j}");
            }
            assert!(sq1(&ChowClass::point(&q)).is_zero());
        }
    }

    #[test]
    fn sq1_of_fundamental_class_of_projective_space() {
        for n in 1..=6usize {
            let p = v(&format!("P{n}"));
            let expected = ChowClass::<F2>::h_monomial(&p, &[1]).scale(&F2::from_i64(n as i64 + 1));
            assert_eq!(sq1(&ChowClass::fundamental(&p)), expected);
        }
    }

    #[test]
    fn sq1_coh_rules() {
        for s in ["P3", "Q3", "Q4", "P1xQ2"] {
            let x = v(s);
            let one = ChowClass::<F2>::fundamental(&x);
            assert!(sq1_coh(&one).is_zero(), "{s}");
            for f in 0..x.factor_count() {
                let mut e = vec![0; x.factor_count()];
                e[f] = 1;
                let h = ChowClass::<F2>::h_monomial(&x, &e);
                assert_eq!(sq1_coh(&h), h.mul(&h).unwrap());
            }
        }
        let p4 = v("P4");
        for i in 0..=4usize {
            let hi = ChowClass::<F2>::h_monomial(&p4, &[i]);
            let next = ChowClass::<F2>::h_monomial(&p4, &[i + 1]).scale(&F2::from_i64(i as i64));
            assert_eq!(sq1_coh(&hi), next);
        }
    }

    #[test]
    fn c1_actions() {
        let q = v("Q5");
        let one = ChowClass::<Integer>::fundamental(&q);
        assert_eq!(c1_action(&[1], &one).unwrap(), ChowClass::h_monomial(&q, &[1]));
        assert!(c1_action(&[0], &one).unwrap().is_zero());
        let x = ChowClass::<F2>::basis(&q, 1);
        assert_eq!(c1_action(&[3], &x).unwrap(), c1_action(&[-3], &x).unwrap());
    }

    #[test]
    fn half_degrees() {
        let q = v("Q4");
        assert_eq!(half_degree(&ChowClass::h_monomial(&q, &[4])).unwrap(), f2(true));
        let pt = ChowClass::<Integer>::point(&q);
        assert_eq!(half_degree(&pt.scale(&Integer::from(2))).unwrap(), f2(true));
        assert!(matches!(half_degree(&pt), Err(Error::OddDegree(_))));
        assert!(matches!(half_degree(&ChowClass::fundamental(&q)), Err(Error::Domain(_))));
    }

    #[test]
    fn multiplicities() {
        let q = v("Q3");
        let delta = Correspondence::<Integer>::diagonal(&q).unwrap();
        assert_eq!(delta.multiplicity(), Integer::from(1));
        let qq = delta.carrier().variety().clone();
        let x_times_pt = ChowClass::<Integer>::basis(&qq, qq.flat_index(&[0, q.point_index()]));
        assert_eq!(Correspondence::new(x_times_pt).unwrap().multiplicity(), Integer::from(1));
        let z_times_y = ChowClass::<Integer>::basis(&qq, qq.flat_index(&[1, q.index_of_name("l_1").unwrap()]));
        assert_eq!(Correspondence::new(z_times_y).unwrap().multiplicity(), Integer::zero());
        let wrong = ChowClass::<Integer>::fundamental(&qq);
        assert!(Correspondence::new(wrong).is_err());
    }

    #[test]
    fn diagonal_pushforward_is_identity() {
        let q = v("Q3");
        let delta = Correspondence::<Integer>::diagonal(&q).unwrap();
        for i in 0..q.len() {
            let x = ChowClass::<Integer>::basis(&q, i);
            assert_eq!(delta.pushforward(&x).unwrap(), x);
        }
        let zero = Correspondence::new(ChowClass::<Integer>::zero(delta.carrier().variety())).unwrap();
        assert!(zero.pushforward(&ChowClass::fundamental(&q)).unwrap().is_zero());
    }

    #[test]
    fn torsion_gate() {
        let q = v("Q3");
        let delta = Correspondence::<F2>::diagonal(&q).unwrap();
        assert_eq!(
            torsion_decision(3, &delta, false).unwrap(),
            TorsionVerdict::HypothesisNotAsserted { multiplicity: f2(true) }
        );
        assert_eq!(
            torsion_decision(3, &delta, true).unwrap(),
            TorsionVerdict::Certified { multiplicity: f2(true), witness: f2(true) }
        );
        let zero = Correspondence::new(ChowClass::<F2>::zero(delta.carrier().variety())).unwrap();
        assert_eq!(torsion_decision(3, &zero, true).unwrap(), TorsionVerdict::NotApplicable { multiplicity: f2(false) });
        let q2 = v("Q2");
        assert!(torsion_decision(2, &Correspondence::<F2>::diagonal(&q2).unwrap(), true).is_err());
    }
}
