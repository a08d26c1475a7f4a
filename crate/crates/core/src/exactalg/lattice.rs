//! Smith normal form over the integers, and exact lattice membership.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::scalar::{Integer, Scalar};
use crate::error::{Error, Result};

/// `U · G · V = diag(d_1, .., d_r, 0, ..)` with `U`, `V` unimodular and
/// `d_i | d_{i+1}`, `d_i > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<Integer>,
    u: Vec<Vec<Integer>>,
    v: Vec<Vec<Integer>>,
}

impl SmithForm {
    /// `matrix` is given row-major, `rows x cols`.
    pub fn compute(matrix: &[Vec<Integer>], rows: usize, cols: usize) -> Self {
        let mut a: Vec<Vec<Integer>> = matrix.to_vec();
        let mut u = identity(rows);
        let mut v = identity(cols);
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pi, pj)) = min_abs_entry(&a, t, rows, cols) else {
                break;
            };
            a.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..rows {
                    if a[i][t].is_zero() {
                        continue;
                    }
                    let q = a[i][t].div_floor(&a[t][t]);
                    row_axpy(&mut a, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                    if !a[i][t].is_zero() {
                        a.swap(t, i);
                        u.swap(t, i);
                        dirty = true;
                    }
                }
                for j in t + 1..cols {
                    if a[t][j].is_zero() {
                        continue;
                    }
                    let q = a[t][j].div_floor(&a[t][t]);
                    col_axpy(&mut a, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                    if !a[t][j].is_zero() {
                        swap_cols(&mut a, t, j);
                        swap_cols(&mut v, t, j);
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // divisibility of the remaining block
                let pivot = a[t][t].clone();
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &pivot).is_zero()));
                match bad {
                    Some(i) => {
                        row_axpy(&mut a, t, i, &BigInt::from(-1));
                        row_axpy(&mut u, t, i, &BigInt::from(-1));
                    }
                    None => break,
                }
            }
            if a[t][t].is_negative() {
                for x in a[t].iter_mut() {
                    *x = -x.clone();
                }
                for x in u[t].iter_mut() {
                    *x = -x.clone();
                }
            }
            t += 1;
        }
        let diagonal = (0..t).map(|i| a[i][i].clone()).collect();
        SmithForm { diagonal, u, v }
    }

    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Solves `G c = target` given the form of `G`.
    pub fn solve<S: Scalar>(&self, target: &[S]) -> Option<Vec<S>> {
        let rows = self.u.len();
        let cols = self.v.len();
        let w: Vec<S> = (0..rows)
            .map(|i| {
                self.u[i]
                    .iter()
                    .zip(target)
                    .fold(S::zero(), |acc, (uij, tj)| acc + S::from_integer(uij) * tj.clone())
            })
            .collect();
        if w[self.rank()..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut z = vec![S::zero(); cols];
        for (i, d) in self.diagonal.iter().enumerate() {
            z[i] = w[i].checked_div_integer(d)?;
        }
        Some(
            (0..cols)
                .map(|i| {
                    self.v[i]
                        .iter()
                        .zip(&z)
                        .fold(S::zero(), |acc, (vij, zj)| acc + S::from_integer(vij) * zj.clone())
                })
                .collect(),
        )
    }
}

fn identity(n: usize) -> Vec<Vec<Integer>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn min_abs_entry(a: &[Vec<Integer>], t: usize, rows: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..rows {
        for j in t..cols {
            if a[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_cols(a: &mut [Vec<Integer>], i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// row[dst] -= q * row[src]
fn row_axpy(a: &mut [Vec<Integer>], dst: usize, src: usize, q: &Integer) {
    let src_row = a[src].clone();
    for (x, s) in a[dst].iter_mut().zip(src_row) {
        *x -= q * s;
    }
}

/// col[dst] -= q * col[src]
fn col_axpy(a: &mut [Vec<Integer>], dst: usize, src: usize, q: &Integer) {
    for row in a.iter_mut() {
        let s = row[src].clone();
        row[dst] -= q * s;
    }
}

/// Coordinates of `target` in the span of the integer `generators`, over the
/// scalar ring `S` (integers, or a localization of them).
pub fn solve_via_snf<S: Scalar>(generators: &[Vec<Integer>], target: &[S]) -> Option<Vec<S>> {
    let rows = target.len();
    let cols = generators.len();
    let matrix: Vec<Vec<Integer>> = (0..rows).map(|i| generators.iter().map(|g| g[i].clone()).collect()).collect();
    SmithForm::compute(&matrix, rows, cols).solve(target)
}

/// A subgroup of `Z^n` given by generators, with its Smith normal form
/// computed once at construction.
#[derive(Clone, Debug)]
pub struct IntegerLattice {
    ambient_rank: usize,
    generators: Vec<Vec<Integer>>,
    snf: SmithForm,
}

impl IntegerLattice {
    pub fn new(ambient_rank: usize, generators: Vec<Vec<Integer>>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != ambient_rank) {
            return Err(Error::Domain(format!(
                "generator of length {} in a lattice of ambient rank {ambient_rank}",
                g.len()
            )));
        }
        let matrix: Vec<Vec<Integer>> =
            (0..ambient_rank).map(|i| generators.iter().map(|g| g[i].clone()).collect()).collect();
        let snf = SmithForm::compute(&matrix, ambient_rank, generators.len());
        Ok(IntegerLattice { ambient_rank, generators, snf })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[Vec<Integer>] {
        &self.generators
    }

    pub fn smith_form(&self) -> &SmithForm {
        &self.snf
    }

    pub fn rank(&self) -> usize {
        self.snf.rank()
    }

    /// Exact membership with coordinates in the generators.
    pub fn solve(&self, target: &[Integer]) -> Result<Option<Vec<Integer>>> {
        self.solve_over(target)
    }

    /// Membership over `S`, e.g. in the lattice tensored with `Z[1/k]`.
    pub fn solve_over<S: Scalar>(&self, target: &[S]) -> Result<Option<Vec<S>>> {
        if target.len() != self.ambient_rank {
            return Err(Error::Domain(format!(
                "target of length {} for a lattice of ambient rank {}",
                target.len(),
                self.ambient_rank
            )));
        }
        Ok(self.snf.solve(target))
    }

    pub fn contains(&self, target: &[Integer]) -> Result<bool> {
        Ok(self.solve(target)?.is_some())
    }

    /// Combination of the generators with the given coordinates.
    pub fn combine<S: Scalar>(&self, coordinates: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.ambient_rank];
        for (g, c) in self.generators.iter().zip(coordinates) {
            for (o, x) in out.iter_mut().zip(g) {
                *o = o.clone() + S::from_integer(x) * c.clone();
            }
        }
        out
    }
}

/// `lattice_solve`: coordinates of `target`, or `None` when it is not a member.
pub fn lattice_solve(lattice: &IntegerLattice, target: &[Integer]) -> Result<Option<Vec<Integer>>> {
    lattice.solve(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn diagonal_lattice() {
        let l = IntegerLattice::new(2, vec![ints(&[2, 0]), ints(&[0, 1])]).unwrap();
        assert_eq!(l.solve(&ints(&[4, 3])).unwrap(), Some(ints(&[2, 3])));
        assert_eq!(l.solve(&ints(&[1, 0])).unwrap(), None);
    }

    #[test]
    fn skew_lattice() {
        let l = IntegerLattice::new(2, vec![ints(&[1, 1]), ints(&[0, 2])]).unwrap();
        assert_eq!(l.solve(&ints(&[3, 1])).unwrap(), Some(ints(&[3, -1])));
    }

    #[test]
    fn dimension_mismatch() {
        let l = IntegerLattice::new(2, vec![ints(&[1, 1])]).unwrap();
        assert!(matches!(l.solve(&ints(&[1, 1, 1])), Err(Error::Domain(_))));
        assert!(IntegerLattice::new(2, vec![ints(&[1])]).is_err());
    }

    #[test]
    fn empty_lattice_contains_only_zero() {
        let l = IntegerLattice::new(3, vec![]).unwrap();
        assert_eq!(l.solve(&ints(&[0, 0, 0])).unwrap(), Some(vec![]));
        assert_eq!(l.solve(&ints(&[0, 1, 0])).unwrap(), None);
    }

    #[test]
    fn smith_diagonal_divisibility() {
        let m = vec![ints(&[2, 4, 4]), ints(&[-6, 6, 12]), ints(&[10, -4, -16])];
        let s = SmithForm::compute(&m, 3, 3);
        assert_eq!(s.diagonal, ints(&[2, 6, 12]));
    }

    #[test]
    fn recomputing_gives_same_diagonal() {
        let g = vec![ints(&[3, 1, 4]), ints(&[1, 5, 9]), ints(&[2, 6, 5])];
        let a = IntegerLattice::new(3, g.clone()).unwrap();
        let b = IntegerLattice::new(3, g).unwrap();
        assert_eq!(a.smith_form().diagonal, b.smith_form().diagonal);
    }

    #[test]
    fn localized_membership() {
        use crate::exactalg::Coefficient;
        let l = IntegerLattice::new(1, vec![ints(&[2])]).unwrap();
        let t = vec![Coefficient::integer(1).relocalize(2)];
        let c = l.solve_over(&t).unwrap().unwrap();
        assert_eq!(c[0].to_string(), "1/2");
        let l3 = IntegerLattice::new(1, vec![ints(&[3])]).unwrap();
        assert!(l3.solve_over(&t).unwrap().is_none());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn solve_reproduces_target(
            gens in proptest::collection::vec(proptest::collection::vec(-6i64..7, 3), 0..5),
            coords in proptest::collection::vec(-5i64..6, 5),
        ) {
            let generators: Vec<Vec<Integer>> = gens.iter().map(|g| ints(g)).collect();
            let lattice = IntegerLattice::new(3, generators.clone()).unwrap();
            let c: Vec<Integer> = ints(&coords[..generators.len()]);
            let target = lattice.combine(&c);
            let sol = lattice.solve(&target).unwrap().expect("member by construction");
            prop_assert_eq!(lattice.combine(&sol), target);
        }
    }
}
