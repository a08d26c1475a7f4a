//! Cell data of a single projective space or split quadric.
//!
//! Chow and K₀ share the cell basis: a cell closure `Z` gives the cycle `[Z]`
//! and the structure sheaf `[O_Z]`. For `P^n` the cells are the linear
//! subspaces, written `h^i = [P^(n-i)]`. For `Q_d` with `m = ⌊d/2⌋` the large
//! cells are the plane sections `h^i = [Q_(d-i)]` and the small ones the
//! linear subspaces `l_j = [P^j]`; in even dimension the two rulings give the
//! middle classes `l_m` and `l_m'`.

use num_traits::{One, Zero};

use crate::exactalg::{Integer, Matrix, Scalar, F2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorKind {
    Proj(usize),
    Quadric(usize),
}

impl FactorKind {
    pub fn dim(self) -> usize {
        match self {
            FactorKind::Proj(n) => n,
            FactorKind::Quadric(d) => d,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cell {
    /// `h^i` intersected with the fundamental class.
    Hyperplane(usize),
    /// Linear subspace of the given dimension (first ruling in the middle).
    Linear(usize),
    /// Middle-dimensional linear subspace of the second ruling.
    LinearAlt(usize),
}

#[derive(Clone, Debug)]
pub(crate) struct Factor {
    pub kind: FactorKind,
    pub cells: Vec<Cell>,
    pub dims: Vec<usize>,
    pub names: Vec<String>,
    /// `products[i][j]`: coordinates of `e_i · e_j` in CH.
    pub products: Vec<Vec<Vec<Integer>>>,
    /// `h^i ∩ [X]` for `i = 0..=dim`.
    pub h_powers: Vec<Vec<Integer>>,
    pub point: usize,
    pub sq1: Matrix<F2>,
    /// Multiplication by `y = 1 - [O(-1)]` on K₀.
    pub y: Matrix<Integer>,
    /// `y^i · [O_X]` for `i = 0..=dim`.
    pub y_powers: Vec<Vec<Integer>>,
    /// `ψ^{-1}` on K₀.
    pub psi_dual: Matrix<Integer>,
    /// Tangent class as `(twist, multiplicity)` pairs.
    pub tangent: Vec<(i64, i64)>,
}

fn unit(n: usize, i: usize) -> Vec<Integer> {
    let mut v = vec![Integer::zero(); n];
    v[i] = Integer::one();
    v
}

fn axpy(acc: &mut [Integer], c: i64, v: &[Integer]) {
    for (a, x) in acc.iter_mut().zip(v) {
        *a += x * c;
    }
}

impl Factor {
    pub fn new(kind: FactorKind) -> Self {
        let cells = cells_of(kind);
        let n = cells.len();
        let dim = kind.dim();
        let index = |c: Cell| cells.iter().position(|&x| x == c).expect("cell in basis");
        let dims: Vec<usize> = cells
            .iter()
            .map(|c| match *c {
                Cell::Hyperplane(i) => dim - i,
                Cell::Linear(j) | Cell::LinearAlt(j) => j,
            })
            .collect();
        let names = cells
            .iter()
            .map(|c| match *c {
                Cell::Hyperplane(i) => format!("h^{i}"),
                Cell::Linear(j) => format!("l_{j}"),
                Cell::LinearAlt(j) => format!("l_{j}'"),
            })
            .collect();

        let h_power = |i: usize| -> Vec<Integer> {
            let mut v = vec![Integer::zero(); n];
            if i > dim {
                return v;
            }
            match kind {
                FactorKind::Proj(_) => v[index(Cell::Hyperplane(i))] = Integer::one(),
                FactorKind::Quadric(d) => {
                    let m = d / 2;
                    if i <= last_hyperplane(d) {
                        v[index(Cell::Hyperplane(i))] = Integer::one();
                    } else if d % 2 == 0 && i == m {
                        v[index(Cell::Linear(m))] = Integer::one();
                        v[index(Cell::LinearAlt(m))] = Integer::one();
                    } else {
                        v[index(Cell::Linear(d - i))] = Integer::from(2);
                    }
                }
            }
            v
        };
        let h_powers: Vec<Vec<Integer>> = (0..=dim).map(h_power).collect();

        let product = |a: Cell, b: Cell| -> Vec<Integer> {
            match (a, b) {
                (Cell::Hyperplane(i), Cell::Hyperplane(j)) => h_power(i + j),
                (Cell::Hyperplane(0), other) | (other, Cell::Hyperplane(0)) => unit(n, index(other)),
                (Cell::Hyperplane(i), Cell::Linear(j) | Cell::LinearAlt(j))
                | (Cell::Linear(j) | Cell::LinearAlt(j), Cell::Hyperplane(i)) => {
                    if i <= j {
                        unit(n, index(Cell::Linear(j - i)))
                    } else {
                        vec![Integer::zero(); n]
                    }
                }
                (x, y) => {
                    // two linear subspaces; only middle ones in even dimension meet
                    let FactorKind::Quadric(d) = kind else { unreachable!() };
                    let m = d / 2;
                    let middle = |c: Cell| matches!(c, Cell::Linear(j) | Cell::LinearAlt(j) if j == m);
                    if d % 2 == 1 || !middle(x) || !middle(y) {
                        return vec![Integer::zero(); n];
                    }
                    let same_ruling = std::mem::discriminant(&x) == std::mem::discriminant(&y);
                    if same_ruling == (m % 2 == 0) {
                        unit(n, index(Cell::Linear(0)))
                    } else {
                        vec![Integer::zero(); n]
                    }
                }
            }
        };
        let products: Vec<Vec<Vec<Integer>>> =
            cells.iter().map(|&a| cells.iter().map(|&b| product(a, b)).collect()).collect();
        let point = dims.iter().position(|&d| d == 0).expect("point cell");

        let sq1 = sq1_table(kind, &cells, &h_powers, index);
        let y = y_matrix(kind, &cells, index);
        let mut y_powers = vec![unit(n, 0)];
        for i in 1..=dim {
            let next = y.apply(&y_powers[i - 1]);
            y_powers.push(next);
        }
        let psi_dual = psi_dual_matrix(kind, &cells, &dims, &y);
        let tangent = match kind {
            FactorKind::Proj(n) => vec![(1, n as i64 + 1), (0, -1)],
            FactorKind::Quadric(d) => vec![(1, d as i64 + 2), (0, -1), (2, -1)],
        };
        Factor { kind, cells, dims, names, products, h_powers, point, sq1, y, y_powers, psi_dual, tangent }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn dim(&self) -> usize {
        self.kind.dim()
    }

    pub fn index_of(&self, c: Cell) -> Option<usize> {
        self.cells.iter().position(|&x| x == c)
    }

    /// K₀ class of a plane section `Q_e ⊂ Q_d` (`-1 <= e <= d`), in the cell basis.
    pub fn subquadric_k_class(&self, e: i64) -> Vec<Integer> {
        let FactorKind::Quadric(d) = self.kind else { panic!("subquadric of a projective space") };
        subquadric_k(d, e, &self.cells)
    }
}

fn last_hyperplane(d: usize) -> usize {
    if d % 2 == 1 {
        d / 2
    } else {
        d / 2 - 1
    }
}

fn cells_of(kind: FactorKind) -> Vec<Cell> {
    match kind {
        FactorKind::Proj(n) => (0..=n).map(Cell::Hyperplane).collect(),
        FactorKind::Quadric(d) => {
            assert!(d >= 1, "quadrics have dimension at least one");
            let m = d / 2;
            let mut cells: Vec<Cell> = (0..=last_hyperplane(d)).map(Cell::Hyperplane).collect();
            cells.push(Cell::Linear(m));
            if d % 2 == 0 {
                cells.push(Cell::LinearAlt(m));
            }
            cells.extend((0..m).rev().map(Cell::Linear));
            cells
        }
    }
}

/// `[O_{Q_e}]` in K₀(Q_d). Sections of dimension above the middle are basis
/// cells; the others follow from `[O_{Q_e}] = [O_{P^{e+1}}](1 - [O(-2)])`
/// pushed into `P^{d+1}`, plus the symmetry exchanging the two rulings.
fn subquadric_k(d: usize, e: i64, cells: &[Cell]) -> Vec<Integer> {
    let n = cells.len();
    let index = |c: Cell| cells.iter().position(|&x| x == c).expect("cell in basis");
    let mut v = vec![Integer::zero(); n];
    if e < 0 {
        return v;
    }
    let e = e as usize;
    let m = d / 2;
    let codim = d - e;
    if codim <= last_hyperplane(d) {
        v[index(Cell::Hyperplane(codim))] = Integer::one();
        return v;
    }
    if d.is_multiple_of(2) && e == m {
        v[index(Cell::Linear(m))] += 1;
        v[index(Cell::LinearAlt(m))] += 1;
    } else {
        v[index(Cell::Linear(e))] += 2;
    }
    if e >= 1 {
        v[index(Cell::Linear(e - 1))] -= 1;
    }
    v
}

fn y_matrix(kind: FactorKind, cells: &[Cell], index: impl Fn(Cell) -> usize) -> Matrix<Integer> {
    let n = cells.len();
    let columns: Vec<Vec<Integer>> = cells
        .iter()
        .map(|&c| match (kind, c) {
            (FactorKind::Proj(p), Cell::Hyperplane(i)) => {
                if i < p {
                    unit(n, index(Cell::Hyperplane(i + 1)))
                } else {
                    vec![Integer::zero(); n]
                }
            }
            (FactorKind::Quadric(d), Cell::Hyperplane(i)) => subquadric_k(d, d as i64 - i as i64 - 1, cells),
            (_, Cell::Linear(j) | Cell::LinearAlt(j)) => {
                if j == 0 {
                    vec![Integer::zero(); n]
                } else {
                    unit(n, index(Cell::Linear(j - 1)))
                }
            }
        })
        .collect();
    Matrix::from_columns(n, &columns)
}

/// `O(a)` acting through `(1 - y)^{-a}`.
pub(crate) fn twist_matrix(y: &Matrix<Integer>, a: i64) -> Matrix<Integer> {
    let n = y.rows();
    let id = Matrix::<Integer>::identity(n);
    let base = if a >= 0 {
        // (1 - y)^{-1} = Σ y^k
        let mut acc = id.clone();
        let mut p = id.clone();
        for _ in 0..n {
            p = &p * y;
            acc = &acc + &p;
        }
        acc
    } else {
        &id - y
    };
    base.pow(a.unsigned_abs() as usize)
}

/// `ψ^{-1}[O_Z] = (-1)^{codim Z} [O_Z ⊗ ω_Z ⊗ ω_X^∨]`, which for every cell is
/// a twist of `O_Z`.
fn psi_dual_matrix(kind: FactorKind, cells: &[Cell], dims: &[usize], y: &Matrix<Integer>) -> Matrix<Integer> {
    let n = cells.len();
    let dim = kind.dim();
    let columns: Vec<Vec<Integer>> = cells
        .iter()
        .zip(dims)
        .enumerate()
        .map(|(j, (&c, &z))| {
            let codim = dim - z;
            // ω_X^∨ = O(n+1) on P^n, O(d) on Q_d; ω_Z for Z = P^z, Q_z
            let twist = match (kind, c) {
                (FactorKind::Proj(p), _) => (p + 1) as i64 - (z + 1) as i64,
                (FactorKind::Quadric(d), Cell::Hyperplane(_)) => d as i64 - z as i64,
                (FactorKind::Quadric(d), _) => d as i64 - (z + 1) as i64,
            };
            let sign = if codim.is_multiple_of(2) { 1 } else { -1 };
            let col = twist_matrix(y, twist).column(j);
            col.into_iter().map(|x| x * sign).collect()
        })
        .collect();
    Matrix::from_columns(n, &columns)
}

/// `Sq_1` on the cell basis, modulo two: `Sq_1(h^i) = (i + c) h^{i+1}` with
/// `c_1(T_X) = c·h`, and `Sq_1(l_j) = (j + 1) l_{j-1}`.
fn sq1_table(kind: FactorKind, cells: &[Cell], h_powers: &[Vec<Integer>], index: impl Fn(Cell) -> usize) -> Matrix<F2> {
    let n = cells.len();
    let dim = kind.dim();
    let c1 = match kind {
        FactorKind::Proj(p) => p + 1,
        FactorKind::Quadric(d) => d + 2,
    };
    let columns: Vec<Vec<F2>> = cells
        .iter()
        .map(|&c| {
            let mut col = vec![Integer::zero(); n];
            match c {
                Cell::Hyperplane(i) => {
                    if i < dim {
                        axpy(&mut col, (i + c1) as i64, &h_powers[i + 1]);
                    }
                }
                Cell::Linear(j) | Cell::LinearAlt(j) => {
                    if j > 0 {
                        col[index(Cell::Linear(j - 1))] = Integer::from(j + 1);
                    }
                }
            }
            col.iter().map(F2::from_integer).collect()
        })
        .collect();
    Matrix::from_columns(n, &columns)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn quadric_bases() {
        let q3 = Factor::new(FactorKind::Quadric(3));
        assert_eq!(q3.names, ["h^0", "h^1", "l_1", "l_0"]);
        assert_eq!(q3.dims, [3, 2, 1, 0]);
        let q4 = Factor::new(FactorKind::Quadric(4));
        assert_eq!(q4.names, ["h^0", "h^1", "l_2", "l_2'", "l_1", "l_0"]);
        assert_eq!(q4.dims, [4, 3, 2, 2, 1, 0]);
        let q1 = Factor::new(FactorKind::Quadric(1));
        assert_eq!(q1.names, ["h^0", "l_0"]);
    }

    #[test]
    fn conic_hyperplane_is_two_points() {
        let q1 = Factor::new(FactorKind::Quadric(1));
        assert_eq!(q1.h_powers[1], ints(&[0, 2]));
        // y = [O_{Q_0}] = two points
        assert_eq!(q1.y.column(0), ints(&[0, 2]));
    }

    #[test]
    fn middle_section_of_q2() {
        let q2 = Factor::new(FactorKind::Quadric(2));
        // [O_{Q_1}] = [O_L] + [O_L'] - [O_pt]
        assert_eq!(q2.y.column(0), ints(&[0, 1, 1, -1]));
    }

    #[test]
    fn projective_twist_on_a_line() {
        let p1 = Factor::new(FactorKind::Proj(1));
        // [O(1)] = 1 + [O_pt]
        assert_eq!(twist_matrix(&p1.y, 1).column(0), ints(&[1, 1]));
    }

    #[test]
    fn koszul_on_lines_of_quadrics() {
        for d in 2..=8 {
            let q = Factor::new(FactorKind::Quadric(d));
            let l1 = q.index_of(Cell::Linear(1)).unwrap();
            let l0 = q.index_of(Cell::Linear(0)).unwrap();
            assert_eq!(q.y.column(l1), unit(q.len(), l0));
        }
    }
}
