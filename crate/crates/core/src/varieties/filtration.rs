//! Topological filtration on K₀ and the comparison map from mod-2 cycles.
//!
//! For a cellular variety the classes `[O_Z]` of cell closures with
//! `dim Z ≤ p` span `F_p K₀`, so every `F_p` is a coordinate sublattice of the
//! cell basis and `gr_p` is free on the cells of dimension `p`.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::classes::{check_same, ChowClass, KClass};
use super::variety::Variety;
use crate::error::{Error, Result};
use crate::exactalg::{Integer, IntegerLattice, Scalar, F2};

/// `F_p K₀(X)` with `p` clamped to `[-1, dim X]`; the flag is set when the
/// requested `p` was out of range.
pub fn filtration_subgroup(x: &Variety, p: i64) -> (IntegerLattice, bool) {
    let (lattice, clamped) = x.filtration_lattice(p);
    (lattice.clone(), clamped)
}

/// An element of `Z/2 ⊗ gr_p K₀(X)`, stored over the cells of dimension `p`.
#[derive(Clone)]
pub struct GrClass {
    variety: Arc<Variety>,
    level: usize,
    coeffs: Vec<F2>,
}

impl PartialEq for GrClass {
    fn eq(&self, other: &Self) -> bool {
        self.variety.descriptor() == other.variety.descriptor() && self.level == other.level && self.coeffs == other.coeffs
    }
}

impl Eq for GrClass {}

impl fmt::Debug for GrClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GrClass({} on {})", self, self.variety.descriptor())
    }
}

impl GrClass {
    pub fn zero(variety: &Arc<Variety>, level: usize) -> Self {
        GrClass { variety: variety.clone(), level, coeffs: vec![F2::zero(); variety.len()] }
    }

    /// Residue of `x ∈ F_p` in `Z/2 ⊗ gr_p`.
    pub fn project<S: Scalar>(x: &KClass<S>, level: i64) -> Result<Self> {
        let v = x.variety();
        let found = v.filtration_level(x.coords());
        if found > level {
            return Err(Error::Domain(format!("{x} does not lie in F_{level} of {}", v.descriptor())));
        }
        if level < 0 {
            return Err(Error::Domain("gr_p is zero for p < 0".into()));
        }
        let level = level as usize;
        let coeffs = x
            .coords()
            .iter()
            .zip(v.dims())
            .map(|(c, &d)| {
                if d != level {
                    return Ok(F2::zero());
                }
                let n = c.to_integer().ok_or_else(|| {
                    Error::Domain(format!("coordinate {c} is not integral; no residue mod 2"))
                })?;
                Ok(F2::from_integer(&n))
            })
            .collect::<Result<_>>()?;
        Ok(GrClass { variety: v.clone(), level, coeffs })
    }

    pub fn variety(&self) -> &Arc<Variety> {
        &self.variety
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn coeffs(&self) -> &[F2] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The lift with `{0, 1}` coordinates on the cells of dimension `p`.
    pub fn canonical_lift(&self) -> KClass<Integer> {
        let coords = self.coeffs.iter().map(|c| if c.0 { Integer::from(1) } else { Integer::zero() }).collect();
        KClass::new(self.variety.clone(), coords).expect("sized to the variety")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same(&self.variety, &other.variety)?;
        if self.level != other.level {
            return Err(Error::Domain(format!("adding gr_{} and gr_{}", self.level, other.level)));
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| *a + *b).collect();
        Ok(GrClass { coeffs, ..self.clone() })
    }
}

impl fmt::Display for GrClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .zip(self.variety.names())
            .filter(|(c, _)| c.0)
            .map(|(_, n)| format!("[O_{n}]"))
            .collect();
        if terms.is_empty() {
            write!(f, "0 in gr_{}", self.level)
        } else {
            write!(f, "{} in gr_{}", terms.join(" + "), self.level)
        }
    }
}

/// `φ: Ch_p → Z/2 ⊗ gr_p K₀`, sending the cycle of a cell closure to the
/// residue of its structure sheaf.
pub fn phi(p: usize, x: &ChowClass<F2>) -> Result<GrClass> {
    let v = x.variety();
    if let Some(i) = x.coeffs().iter().zip(v.dims()).position(|(c, &d)| c.0 && d != p) {
        return Err(Error::Domain(format!("{x} has a component of dimension {} != {p}", v.dims()[i])));
    }
    Ok(GrClass { variety: v.clone(), level: p, coeffs: x.coeffs().to_vec() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::varieties::SplitVariety;

    fn v(s: &str) -> Arc<Variety> {
        Variety::shared(&s.parse::<SplitVariety>().unwrap()).unwrap()
    }

    #[test]
    fn bottom_and_point() {
        let p = v("P4");
        assert_eq!(filtration_subgroup(&p, -1).0.rank(), 0);
        let (f0, _) = filtration_subgroup(&p, 0);
        assert_eq!(f0.rank(), 1);
        // [O_pt] = y^4 · [O_P4]
        assert!(f0.contains(&p.y_monomial(&[4])).unwrap());
        assert!(!f0.contains(&p.y_monomial(&[3])).unwrap());
    }

    #[test]
    fn graded_ranks_match_chow_ranks() {
        for s in ["P3", "Q1", "Q4", "Q5", "P1xQ2", "Q3xQ2"] {
            let x = v(s);
            let ranks = x.chow_ranks();
            for p in 0..=x.dimension() as i64 {
                let hi = filtration_subgroup(&x, p).0;
                let lo = filtration_subgroup(&x, p - 1).0;
                assert_eq!(hi.rank() - lo.rank(), ranks[p as usize], "{s} p={p}");
            }
        }
    }

    #[test]
    fn phi_rejects_mixed_classes() {
        let q = v("Q3");
        let x = ChowClass::<F2>::fundamental(&q).add(&ChowClass::point(&q)).unwrap();
        assert!(matches!(phi(3, &x), Err(Error::Domain(_))));
        let h = ChowClass::<F2>::h_monomial(&q, &[1]);
        assert_eq!(phi(2, &h).unwrap().canonical_lift(), KClass::basis(&q, 1));
    }
}
