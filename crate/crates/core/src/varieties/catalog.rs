//! Enumeration of the catalog and of its morphisms.

use std::sync::Arc;

use super::morphism::CatalogMorphism;
use super::variety::{SplitVariety, Variety};
use crate::error::Result;

/// `P^0..P^max_dim`, `Q_1..Q_min(max_dim, max_quadric)`, and products of two
/// positive-dimensional members of total dimension at most `max_dim`.
pub fn catalog(max_dim: usize, max_quadric: usize) -> Vec<SplitVariety> {
    let mut singles: Vec<SplitVariety> = (0..=max_dim).map(SplitVariety::proj).collect();
    singles.extend((1..=max_dim.min(max_quadric)).map(SplitVariety::quadric));
    let mut out = singles.clone();
    let positive: Vec<&SplitVariety> = singles.iter().filter(|v| v.dimension() > 0).collect();
    for (i, a) in positive.iter().enumerate() {
        for b in &positive[i..] {
            if a.dimension() + b.dimension() <= max_dim {
                out.push(SplitVariety::product((*a).clone(), (*b).clone()));
            }
        }
    }
    out
}

/// Every catalog morphism whose source and target have dimension at most
/// `max_dim`.
pub fn catalog_morphisms(max_dim: usize, max_quadric: usize) -> Result<Vec<CatalogMorphism>> {
    let mut out = Vec::new();
    for d in catalog(max_dim, max_quadric) {
        let x: Arc<Variety> = Variety::shared(&d)?;
        if x.dimension() > 0 {
            out.push(CatalogMorphism::structural(&x)?);
            out.push(CatalogMorphism::point_inclusion(&x)?);
        }
        match &d {
            SplitVariety::Product(..) => {
                out.push(CatalogMorphism::projection(&x, true)?);
                out.push(CatalogMorphism::projection(&x, false)?);
            }
            SplitVariety::ProjSpace(n) => {
                for j in 1..*n {
                    out.push(CatalogMorphism::linear_embedding(j, &x, false)?);
                }
            }
            SplitVariety::SplitQuadric(q) => {
                let m = q / 2;
                for j in 1..=m {
                    out.push(CatalogMorphism::linear_embedding(j, &x, false)?);
                }
                if q % 2 == 0 {
                    out.push(CatalogMorphism::linear_embedding(m, &x, true)?);
                }
                for e in 1..*q {
                    out.push(CatalogMorphism::subquadric(e, &x)?);
                }
            }
        }
        if x.factor_count() == 1 && x.dimension() > 0 && 2 * x.dimension() <= max_dim {
            out.push(CatalogMorphism::diagonal(&x)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadric_filter() {
        let names: Vec<String> = catalog(4, 2).iter().map(|v| v.to_string()).collect();
        assert!(names.contains(&"Q1".to_string()) && names.contains(&"Q2".to_string()));
        assert!(!names.contains(&"Q3".to_string()));
        assert!(names.contains(&"P1xQ2".to_string()));
        assert!(!names.contains(&"P2xQ3".to_string()));
    }

    #[test]
    fn morphisms_enumerate() {
        let ms = catalog_morphisms(4, 4).unwrap();
        assert!(ms.iter().any(|f| f.to_string() == "diag: P2 -> P2xP2"));
        assert!(ms.iter().any(|f| f.to_string() == "linear': P2 -> Q4"));
        assert!(ms.iter().all(|f| f.source().dimension() <= 4 && f.target().dimension() <= 4));
    }
}
