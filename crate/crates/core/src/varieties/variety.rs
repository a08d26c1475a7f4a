//! Catalog descriptors and their ring presentations.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use super::factor::{twist_matrix, Cell, Factor, FactorKind};
use crate::error::{Error, Result};
use crate::exactalg::{Integer, IntegerLattice, Matrix, Scalar, SmithForm, TruncPoly, F2};

/// Largest number of projective-space or quadric factors in a product.
pub const MAX_FACTORS: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SplitVariety {
    ProjSpace(usize),
    SplitQuadric(usize),
    Product(Box<SplitVariety>, Box<SplitVariety>),
}

impl SplitVariety {
    pub fn proj(n: usize) -> Self {
        SplitVariety::ProjSpace(n)
    }

    pub fn quadric(d: usize) -> Self {
        SplitVariety::SplitQuadric(d)
    }

    pub fn product(left: SplitVariety, right: SplitVariety) -> Self {
        SplitVariety::Product(Box::new(left), Box::new(right))
    }

    pub fn point() -> Self {
        SplitVariety::ProjSpace(0)
    }

    pub fn dimension(&self) -> usize {
        match self {
            SplitVariety::ProjSpace(n) => *n,
            SplitVariety::SplitQuadric(d) => *d,
            SplitVariety::Product(a, b) => a.dimension() + b.dimension(),
        }
    }

    /// Factors in order, products flattened left to right.
    pub fn factor_kinds(&self) -> Vec<FactorKind> {
        match self {
            SplitVariety::ProjSpace(n) => vec![FactorKind::Proj(*n)],
            SplitVariety::SplitQuadric(d) => vec![FactorKind::Quadric(*d)],
            SplitVariety::Product(a, b) => {
                let mut v = a.factor_kinds();
                v.extend(b.factor_kinds());
                v
            }
        }
    }

    pub fn is_product(&self) -> bool {
        matches!(self, SplitVariety::Product(..))
    }

    /// True when every factor is a projective space.
    pub fn is_projective_tower(&self) -> bool {
        self.factor_kinds().iter().all(|k| matches!(k, FactorKind::Proj(_)))
    }

    pub fn validate(&self) -> Result<()> {
        let kinds = self.factor_kinds();
        if kinds.contains(&FactorKind::Quadric(0)) {
            return Err(Error::Catalog("split quadrics have dimension at least 1".into()));
        }
        if kinds.len() > MAX_FACTORS {
            return Err(Error::Catalog(format!("{self}: products are limited to {MAX_FACTORS} factors")));
        }
        Ok(())
    }
}

impl fmt::Display for SplitVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplitVariety::ProjSpace(n) => write!(f, "P{n}"),
            SplitVariety::SplitQuadric(d) => write!(f, "Q{d}"),
            SplitVariety::Product(a, b) => {
                let wrap = |v: &SplitVariety| if v.is_product() { format!("({v})") } else { v.to_string() };
                write!(f, "{}x{}", wrap(a), wrap(b))
            }
        }
    }
}

impl FromStr for SplitVariety {
    type Err = Error;

    /// `P3`, `Q4`, `P1xQ2`, `(P1xP1)xP2`; an unparenthesized chain groups to the left.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let v = parse_product(&s)?;
        v.validate()?;
        Ok(v)
    }
}

fn parse_product(s: &str) -> Result<SplitVariety> {
    let bad = || Error::Catalog(format!("cannot parse variety '{s}'"));
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            'x' | '*' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(bad());
        }
    }
    if depth != 0 {
        return Err(bad());
    }
    parts.push(&s[start..]);
    let mut items = parts.into_iter().map(|p| {
        if let Some(inner) = p.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            parse_product(inner)
        } else {
            parse_atom(p).ok_or_else(bad)
        }
    });
    let mut acc = items.next().ok_or_else(bad)??;
    for next in items {
        acc = SplitVariety::product(acc, next?);
    }
    Ok(acc)
}

fn parse_atom(p: &str) -> Option<SplitVariety> {
    let (head, num) = p.split_at(p.char_indices().nth(1)?.0);
    let n: usize = num.parse().ok()?;
    match head {
        "P" | "p" => Some(SplitVariety::ProjSpace(n)),
        "Q" | "q" => Some(SplitVariety::SplitQuadric(n)),
        _ => None,
    }
}

/// Cell data, structure constants and operation tables of a catalog variety.
#[derive(Debug)]
pub struct Variety {
    descriptor: SplitVariety,
    pub(crate) factors: Vec<Factor>,
    sizes: Vec<usize>,
    dims: Vec<usize>,
    names: Vec<String>,
    sq1: Matrix<F2>,
    psi_dual: Matrix<Integer>,
    y_ops: Vec<Matrix<Integer>>,
    pairing_dual: Matrix<Integer>,
    split_lattice: IntegerLattice,
    split_exponents: Vec<Vec<usize>>,
    filtration: Vec<IntegerLattice>,
}

fn cache() -> &'static Mutex<HashMap<SplitVariety, Arc<Variety>>> {
    static CACHE: OnceLock<Mutex<HashMap<SplitVariety, Arc<Variety>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl Variety {
    pub fn new(descriptor: SplitVariety) -> Result<Self> {
        descriptor.validate()?;
        let factors: Vec<Factor> = descriptor.factor_kinds().into_iter().map(Factor::new).collect();
        let sizes: Vec<usize> = factors.iter().map(Factor::len).collect();
        let len: usize = sizes.iter().product();
        let mut v = Variety {
            descriptor,
            factors,
            sizes,
            dims: Vec::new(),
            names: Vec::new(),
            sq1: Matrix::zeros(len, len),
            psi_dual: Matrix::zeros(len, len),
            y_ops: Vec::new(),
            pairing_dual: Matrix::zeros(len, len),
            split_lattice: IntegerLattice::new(len, vec![])?,
            split_exponents: Vec::new(),
            filtration: Vec::new(),
        };
        for i in 0..len {
            let mi = v.multi_index(i);
            v.dims.push(mi.iter().zip(&v.factors).map(|(&c, f)| f.dims[c]).sum());
            let parts: Vec<&str> = mi.iter().zip(&v.factors).map(|(&c, f)| f.names[c].as_str()).collect();
            v.names.push(parts.join("*"));
        }
        v.sq1 = v.cartan_sum(|f| f.sq1.clone());
        v.psi_dual = v.factors.iter().fold(Matrix::identity(1), |acc, f| acc.kron(&f.psi_dual));
        v.y_ops = (0..v.factors.len()).map(|k| v.embed_factor_op(k, &v.factors[k].y)).collect();
        v.pairing_dual = v.compute_pairing_dual()?;
        v.split_exponents = all_exponents(&v.caps());
        let gens = v.split_exponents.iter().map(|e| v.y_monomial(e)).collect();
        v.split_lattice = IntegerLattice::new(len, gens)?;
        v.filtration = (-1..=v.dimension() as i64).map(|p| v.coordinate_lattice(p)).collect();
        Ok(v)
    }

    /// Shared presentation, built once per descriptor.
    pub fn shared(descriptor: &SplitVariety) -> Result<Arc<Variety>> {
        if let Some(v) = cache().lock().expect("variety cache").get(descriptor) {
            return Ok(v.clone());
        }
        let v = Arc::new(Variety::new(descriptor.clone())?);
        cache().lock().expect("variety cache").entry(descriptor.clone()).or_insert(v.clone());
        Ok(v)
    }

    /// A copy whose `Sq_1` table has entry `(row, col)` flipped. Test fixture
    /// for the verification suites; never cached.
    pub fn with_corrupted_sq1(&self, row: usize, col: usize) -> Result<Variety> {
        let mut v = Variety::new(self.descriptor.clone())?;
        let cur = *v.sq1.get(row, col);
        v.sq1.set(row, col, cur + F2(true));
        Ok(v)
    }

    pub fn descriptor(&self) -> &SplitVariety {
        &self.descriptor
    }

    pub fn dimension(&self) -> usize {
        self.descriptor.dimension()
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn factor_kinds(&self) -> Vec<FactorKind> {
        self.factors.iter().map(|f| f.kind).collect()
    }

    /// Truncation exponents of the hyperplane (and `y`) variables.
    pub fn caps(&self) -> Vec<usize> {
        self.factors.iter().map(Factor::dim).collect()
    }

    /// Ranks of `CH_p` for `p = 0..=dim`.
    pub fn chow_ranks(&self) -> Vec<usize> {
        let mut r = vec![0; self.dimension() + 1];
        for &d in &self.dims {
            r[d] += 1;
        }
        r
    }

    pub fn fundamental_index(&self) -> usize {
        0
    }

    pub fn point_index(&self) -> usize {
        let mi: Vec<usize> = self.factors.iter().map(|f| f.point).collect();
        self.flat_index(&mi)
    }

    pub fn multi_index(&self, mut i: usize) -> Vec<usize> {
        let mut out = vec![0; self.sizes.len()];
        for k in (0..self.sizes.len()).rev() {
            out[k] = i % self.sizes[k];
            i /= self.sizes[k];
        }
        out
    }

    pub fn flat_index(&self, mi: &[usize]) -> usize {
        mi.iter().zip(&self.sizes).fold(0, |acc, (&c, &s)| acc * s + c)
    }

    /// Flat index of a product of factor cells.
    pub fn cell_index(&self, cells: &[Cell]) -> Option<usize> {
        if cells.len() != self.factors.len() {
            return None;
        }
        let mi: Option<Vec<usize>> = cells.iter().zip(&self.factors).map(|(&c, f)| f.index_of(c)).collect();
        Some(self.flat_index(&mi?))
    }

    pub fn cell(&self, i: usize) -> Vec<Cell> {
        self.multi_index(i).iter().zip(&self.factors).map(|(&c, f)| f.cells[c]).collect()
    }

    /// External tensor of per-factor coordinate vectors.
    pub fn tensor<S: Scalar>(&self, parts: &[Vec<S>]) -> Vec<S> {
        assert_eq!(parts.len(), self.factors.len());
        tensor_vectors(parts)
    }

    fn embed_factor_op(&self, k: usize, op: &Matrix<Integer>) -> Matrix<Integer> {
        let mut acc = Matrix::identity(1);
        for (j, f) in self.factors.iter().enumerate() {
            let m = if j == k { op.clone() } else { Matrix::identity(f.len()) };
            acc = acc.kron(&m);
        }
        acc
    }

    fn cartan_sum(&self, op: impl Fn(&Factor) -> Matrix<F2>) -> Matrix<F2> {
        let len = self.len();
        let mut acc = Matrix::zeros(len, len);
        for k in 0..self.factors.len() {
            let mut term = Matrix::identity(1);
            for (j, f) in self.factors.iter().enumerate() {
                let m = if j == k { op(f) } else { Matrix::identity(f.len()) };
                term = term.kron(&m);
            }
            acc = &acc + &term;
        }
        acc
    }

    // ---- Chow ring ----

    /// `e_i · e_j` in CH.
    pub fn chow_basis_product(&self, i: usize, j: usize) -> Vec<Integer> {
        let (a, b) = (self.multi_index(i), self.multi_index(j));
        let parts: Vec<Vec<Integer>> =
            self.factors.iter().enumerate().map(|(k, f)| f.products[a[k]][b[k]].clone()).collect();
        tensor_vectors(&parts)
    }

    pub fn chow_mul<S: Scalar>(&self, a: &[S], b: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.len()];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let c = x.clone() * y.clone();
                for (o, p) in out.iter_mut().zip(self.chow_basis_product(i, j)) {
                    if !p.is_zero() {
                        *o = o.clone() + c.clone() * S::from_integer(&p);
                    }
                }
            }
        }
        out
    }

    /// Degree of the zero-dimensional part.
    pub fn degree<S: Scalar>(&self, a: &[S]) -> S {
        a[self.point_index()].clone()
    }

    /// `h_1^{e_1} ⋯ h_r^{e_r} ∩ [X]`.
    pub fn h_monomial(&self, exps: &[usize]) -> Vec<Integer> {
        let parts: Vec<Vec<Integer>> = self
            .factors
            .iter()
            .zip(exps)
            .map(|(f, &e)| f.h_powers.get(e).cloned().unwrap_or_else(|| vec![Integer::zero(); f.len()]))
            .collect();
        tensor_vectors(&parts)
    }

    /// A polynomial in the hyperplane classes, capped against `[X]`.
    pub fn chow_from_poly<S: Scalar>(&self, p: &TruncPoly<S>) -> Vec<S> {
        self.eval_monomials(p, |e| self.h_monomial(e))
    }

    /// Column `i` is the dual basis element `e_i^∨` with `deg(e_i^∨ · e_j) = δ_ij`.
    pub fn pairing_dual(&self) -> &Matrix<Integer> {
        &self.pairing_dual
    }

    pub fn pairing_matrix(&self) -> Matrix<Integer> {
        let n = self.len();
        let pt = self.point_index();
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g.set(i, j, self.chow_basis_product(i, j)[pt].clone());
            }
        }
        g
    }

    fn compute_pairing_dual(&self) -> Result<Matrix<Integer>> {
        let n = self.len();
        let g = self.pairing_matrix();
        let rows: Vec<Vec<Integer>> = (0..n).map(|i| (0..n).map(|j| g.get(i, j).clone()).collect()).collect();
        let snf = SmithForm::compute(&rows, n, n);
        let mut cols = Vec::with_capacity(n);
        for i in 0..n {
            let mut e = vec![Integer::zero(); n];
            e[i] = Integer::one();
            // G symmetric: G c = e_i gives deg(c · e_j) = δ_ij
            let c = snf
                .solve(&e)
                .ok_or_else(|| Error::Catalog(format!("{}: Poincaré pairing is not unimodular", self.descriptor)))?;
            cols.push(c);
        }
        Ok(Matrix::from_columns(n, &cols))
    }

    pub fn sq1_matrix(&self) -> &Matrix<F2> {
        &self.sq1
    }

    // ---- K₀ ----

    /// Multiplication by `y_k = 1 - [O(-1)]` pulled back from factor `k`.
    pub fn y_operator(&self, k: usize) -> &Matrix<Integer> {
        &self.y_ops[k]
    }

    pub fn psi_dual_matrix(&self) -> &Matrix<Integer> {
        &self.psi_dual
    }

    /// `y^{e} · [O_X]`.
    pub fn y_monomial(&self, exps: &[usize]) -> Vec<Integer> {
        let parts: Vec<Vec<Integer>> = self
            .factors
            .iter()
            .zip(exps)
            .map(|(f, &e)| f.y_powers.get(e).cloned().unwrap_or_else(|| vec![Integer::zero(); f.len()]))
            .collect();
        tensor_vectors(&parts)
    }

    /// A polynomial in the `y` variables applied to `[O_X]`.
    pub fn k_from_poly<S: Scalar>(&self, p: &TruncPoly<S>) -> Vec<S> {
        self.eval_monomials(p, |e| self.y_monomial(e))
    }

    /// Multiplication by a polynomial in the `y` variables, as a matrix.
    pub fn k_operator<S: Scalar>(&self, p: &TruncPoly<S>) -> Matrix<S> {
        let n = self.len();
        let mut acc = Matrix::zeros(n, n);
        for (e, c) in p.terms() {
            let mut m = Matrix::<Integer>::identity(1);
            for (f, &k) in self.factors.iter().zip(&e) {
                m = m.kron(&f.y.pow(k));
            }
            acc = &acc + &m.map(|x| S::from_integer(x) * c.clone());
        }
        acc
    }

    /// `[O(a_1, .., a_r)]` as a polynomial in the `y` variables.
    pub fn line_bundle_poly<S: Scalar>(&self, degrees: &[i64]) -> TruncPoly<S> {
        let caps = self.caps();
        let mut acc = TruncPoly::one(&caps);
        for (k, &a) in degrees.iter().enumerate() {
            let one_minus_y = TruncPoly::one(&caps) - TruncPoly::var(&caps, k);
            // (1 - y)^{-a}; for a > 0 the inverse is unipotent
            let base = if a > 0 { one_minus_y.invert_unipotent().expect("unipotent") } else { one_minus_y };
            acc = acc * base.pow(a.unsigned_abs() as u32);
        }
        acc
    }

    /// Twisting by `O(a)` on a single-factor variety, as a matrix.
    pub fn twist_operator(&self, a: i64) -> Matrix<Integer> {
        let mut acc = Matrix::identity(1);
        for f in &self.factors {
            acc = acc.kron(&twist_matrix(&f.y, a));
        }
        acc
    }

    /// Euler characteristic; every cell closure has `χ(O_Z) = 1`.
    pub fn chi<S: Scalar>(&self, x: &[S]) -> S {
        x.iter().fold(S::zero(), |a, c| a + c.clone())
    }

    /// Generic rank: the coefficient of `[O_X]`.
    pub fn rank<S: Scalar>(&self, x: &[S]) -> S {
        x[0].clone()
    }

    /// Span of the `y`-monomials `y^e · [O_X]`, the classes generated by
    /// line bundles.
    pub fn split_lattice(&self) -> &IntegerLattice {
        &self.split_lattice
    }

    /// Exponent vectors indexing the generators of [`Self::split_lattice`].
    pub fn split_exponents(&self) -> &[Vec<usize>] {
        &self.split_exponents
    }

    /// Writes `x` as a polynomial in the `y` variables applied to `[O_X]`, if
    /// it lies in the split span.
    pub fn split_coordinates<S: Scalar>(&self, x: &[S]) -> Option<TruncPoly<S>> {
        let gens: Vec<Vec<S>> =
            self.split_lattice.generators().iter().map(|g| g.iter().map(S::from_integer).collect()).collect();
        let coords = S::solve_in_span(&gens, x)?;
        let caps = self.caps();
        let mut p = TruncPoly::zero(&caps);
        for (e, c) in self.split_exponents.iter().zip(coords) {
            let mut m = TruncPoly::one(&caps);
            for (k, &ek) in e.iter().enumerate() {
                m = m * TruncPoly::var(&caps, k).pow(ek as u32);
            }
            p = p + m.scale(&c);
        }
        Some(p)
    }

    /// Product in K₀ when both factors are projective spaces, where
    /// `[O_{P^{n-i}}] = y^i` and the cell basis is the monomial basis.
    pub fn k_mul<S: Scalar>(&self, a: &[S], b: &[S]) -> Result<Vec<S>> {
        if !self.descriptor.is_projective_tower() {
            return Err(Error::UnsupportedDomain(format!(
                "{}: K₀ products are exposed only on products of projective spaces",
                self.descriptor
            )));
        }
        Ok(self.chow_mul(a, b))
    }

    /// Lattice spanned by cell closures of dimension at most `p`; `p` is
    /// clamped to `[-1, dim]` and the flag reports whether it was.
    pub fn filtration_lattice(&self, p: i64) -> (&IntegerLattice, bool) {
        let clamped = p.clamp(-1, self.dimension() as i64);
        (&self.filtration[(clamped + 1) as usize], clamped != p)
    }

    fn coordinate_lattice(&self, p: i64) -> IntegerLattice {
        let n = self.len();
        let gens = (0..n)
            .filter(|&i| (self.dims[i] as i64) <= p)
            .map(|i| {
                let mut e = vec![Integer::zero(); n];
                e[i] = Integer::one();
                e
            })
            .collect();
        IntegerLattice::new(n, gens).expect("unit generators")
    }

    /// Smallest `p` with `x ∈ F_p`, or `-1` for zero.
    pub fn filtration_level<S: Scalar>(&self, x: &[S]) -> i64 {
        x.iter().zip(&self.dims).filter(|(c, _)| !c.is_zero()).map(|(_, &d)| d as i64).max().unwrap_or(-1)
    }

    fn eval_monomials<S: Scalar>(&self, p: &TruncPoly<S>, mono: impl Fn(&[usize]) -> Vec<Integer>) -> Vec<S> {
        assert_eq!(p.caps().len(), self.factors.len(), "polynomial over a different variety");
        let mut out = vec![S::zero(); self.len()];
        for (e, c) in p.terms() {
            for (o, m) in out.iter_mut().zip(mono(&e)) {
                if !m.is_zero() {
                    *o = o.clone() + S::from_integer(&m) * c.clone();
                }
            }
        }
        out
    }
}

pub(crate) fn tensor_vectors<S: Scalar>(parts: &[Vec<S>]) -> Vec<S> {
    let mut acc = vec![S::one()];
    for part in parts {
        let mut next = Vec::with_capacity(acc.len() * part.len());
        for a in &acc {
            for b in part {
                next.push(a.clone() * b.clone());
            }
        }
        acc = next;
    }
    acc
}

fn all_exponents(caps: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &c in caps {
        out = out
            .into_iter()
            .flat_map(|e: Vec<usize>| {
                (0..=c).map(move |i| {
                    let mut e = e.clone();
                    e.push(i);
                    e
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Variety {
        Variety::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn parse_and_display() {
        for s in ["P3", "Q4", "P1xQ2", "(P1xP1)xP2", "P1x(P1xP1)"] {
            assert_eq!(s.parse::<SplitVariety>().unwrap().to_string(), s);
        }
        assert_eq!("P1xP1xP1".parse::<SplitVariety>().unwrap().to_string(), "(P1xP1)xP1");
        assert!("Q0".parse::<SplitVariety>().is_err());
        assert!("R2".parse::<SplitVariety>().is_err());
        assert!("(P1xP1)x(P1xP1)".parse::<SplitVariety>().is_err());
    }

    #[test]
    fn quadric_top_degree() {
        for d in 1..=8 {
            let q = v(&format!("Q{d}"));
            assert_eq!(q.degree(&q.h_monomial(&[d])), Integer::from(2));
            assert_eq!(q.degree(&q.h_monomial(&[d + 1])), Integer::zero());
        }
    }

    #[test]
    fn projective_point_class() {
        for n in 0..=6 {
            let p = v(&format!("P{n}"));
            assert_eq!(p.degree(&p.h_monomial(&[n])), Integer::one());
        }
    }

    #[test]
    fn poincare_pairing_unimodular() {
        for s in ["P0", "P3", "Q1", "Q2", "Q3", "Q4", "Q5", "Q6", "Q7", "Q8", "P1xP1", "Q2xP2", "Q3xQ2"] {
            let x = v(s);
            let det = x.pairing_matrix().determinant();
            assert!(det == Integer::one() || det == Integer::from(-1), "{s}: det {det}");
        }
    }

    #[test]
    fn product_names_and_dims() {
        let x = v("P1xQ2");
        assert_eq!(x.len(), 8);
        assert_eq!(x.names()[0], "h^0*h^0");
        assert_eq!(x.dims()[x.point_index()], 0);
        assert_eq!(x.chow_ranks(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn filtration_is_nested() {
        let x = v("Q4");
        let mut prev = 0;
        for p in -1..=4 {
            let (l, clamped) = x.filtration_lattice(p);
            assert!(!clamped);
            assert!(l.rank() >= prev);
            prev = l.rank();
        }
        assert_eq!(prev, x.len());
        assert!(x.filtration_lattice(9).1);
    }

    #[test]
    fn split_span_misses_ruling_difference() {
        let q = v("Q2");
        assert_eq!(q.split_lattice().rank(), 3);
        let a = q.index_of_name("l_1").unwrap();
        let b = q.index_of_name("l_1'").unwrap();
        let mut diff = vec![Integer::zero(); q.len()];
        diff[a] = Integer::one();
        diff[b] = Integer::from(-1);
        assert!(q.split_coordinates(&diff).is_none());
        let p = v("P3");
        assert_eq!(p.split_lattice().rank(), 4);
    }
}
