//! Exact linear algebra over ℚ.
//!
//! Everything downstream reduces to the operations here: reduced row echelon
//! form, kernels, images, particular solutions and canonical complements.
//! All choices are deterministic. A particular solution sets free variables
//! to zero, and a complement of a subspace is spanned by the coordinate axes
//! that are not pivots of its echelon basis.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Index, IndexMut};
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::scalar::Scalar;

/// Column vector of scalars.
pub type Vector = Vec<Scalar>;

static SPARSE_THRESHOLD: AtomicUsize = AtomicUsize::new(10_000);

/// Entry count above which [`rref`] switches to sparse row storage.
pub fn sparse_threshold() -> usize {
    SPARSE_THRESHOLD.load(Ordering::Relaxed)
}

/// Changes the dense/sparse switch-over point. The result of [`rref`] does
/// not depend on it, only the running time.
pub fn set_sparse_threshold(entries: usize) {
    SPARSE_THRESHOLD.store(entries, Ordering::Relaxed);
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

/// `acc += c * v`, skipping the work when `c` is zero.
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

/// Dense row-major matrix of scalars.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors; all rows must share a length.
    /// An empty list gives a `0 × cols` matrix.
    pub fn from_rows(rows: Vec<Vector>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vector], rows: usize) -> Self {
        let cols = columns.len();
        Matrix::from_fn(rows, cols, |i, j| columns[j][i].clone())
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(rows.len(), cols, |i, j| Scalar::from_int(rows[i][j]))
    }

    /// Reshapes a row-major vector.
    pub fn from_flat(rows: usize, cols: usize, data: Vector) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Row-major entries.
    pub fn flatten(&self) -> Vector {
        self.data.clone()
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        let mut out = zero_vector(self.rows);
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = &self[(i, j)];
                if !a.is_zero() {
                    out[i] += a * x;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: add_vectors(&self.data, &other.data),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: sub_vectors(&self.data, &other.data),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: scale_vector(c, &self.data),
        }
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    /// `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    /// Two-sided inverse, or `None` when singular or not square.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = rref(&self.hstack(&Matrix::identity(n)));
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    /// A right inverse `R` with `self·R = I`, columns chosen by the pivot
    /// convention. `None` unless `self` has full row rank.
    pub fn right_inverse(&self) -> Option<Matrix> {
        let mut cols = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            cols.push(solve(self, &unit_vector(self.rows, i))?);
        }
        Some(Matrix::from_columns(&cols, self.cols))
    }

    /// A left inverse `L` with `L·self = I`. `None` unless `self` has full
    /// column rank.
    pub fn left_inverse(&self) -> Option<Matrix> {
        Some(self.transpose().right_inverse()?.transpose())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Which storage the echelon reduction runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Storage {
    Dense,
    Sparse,
}

/// Reduced row echelon form and its pivot columns.
///
/// Storage is picked from the entry count against [`sparse_threshold`]; the
/// output is the unique RREF either way.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let storage = if m.rows * m.cols > sparse_threshold() {
        Storage::Sparse
    } else {
        Storage::Dense
    };
    rref_with(m, storage)
}

pub fn rref_with(m: &Matrix, storage: Storage) -> (Matrix, Vec<usize>) {
    match storage {
        Storage::Dense => rref_dense(m),
        Storage::Sparse => rref_sparse(m),
    }
}

fn rref_dense(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a[(r, c)].recip();
        for j in c..cols {
            if !a[(r, j)].is_zero() {
                a[(r, j)] *= &inv;
            }
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let factor = a[(i, c)].clone();
            for j in c..cols {
                if !a[(r, j)].is_zero() {
                    let delta = &factor * &a[(r, j)];
                    a[(i, j)] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

fn rref_sparse(m: &Matrix) -> (Matrix, Vec<usize>) {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<BTreeMap<usize, Scalar>> = (0..rows)
        .map(|i| {
            m.row(i)
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i].contains_key(&c)) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][&c].recip();
        for x in a[r].values_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let Some(factor) = row.get(&c).cloned() else {
                continue;
            };
            for (j, x) in &pivot_row {
                let entry = row.entry(*j).or_insert_with(Scalar::zero);
                *entry -= &factor * x;
                if entry.is_zero() {
                    row.remove(j);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = Matrix::zeros(rows, cols);
    for (i, row) in a.into_iter().enumerate() {
        for (j, x) in row {
            out[(i, j)] = x;
        }
    }
    (out, pivots)
}

/// Null space of `m` in canonical echelon form.
pub fn kernel(m: &Matrix) -> Subspace {
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut vectors = Vec::new();
    for f in (0..m.cols).filter(|&j| !is_pivot[j]) {
        let mut v = zero_vector(m.cols);
        v[f] = Scalar::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -&r[(i, f)];
        }
        vectors.push(v);
    }
    Subspace::from_spanning(m.cols, vectors)
}

/// Column space of `m` in canonical echelon form.
pub fn image(m: &Matrix) -> Subspace {
    let columns: Vec<Vector> = (0..m.cols).map(|j| m.column(j)).collect();
    Subspace::from_spanning(m.rows, columns)
}

/// A particular solution of `m·x = b` with all free variables zero, or `None`
/// when the system is inconsistent.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vector> {
    assert_eq!(b.len(), m.rows, "right-hand side length");
    let aug = m.hstack(&Matrix::from_columns(&[b.to_vec()], m.rows));
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = zero_vector(m.cols);
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r[(i, m.cols)].clone();
    }
    Some(x)
}

/// A row combination proving `m·x = b` has no solution: `yᵀm = 0` while
/// `yᵀb = value ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InconsistencyCertificate {
    pub combination: Vector,
    pub value: Scalar,
}

impl InconsistencyCertificate {
    pub fn verify(&self, m: &Matrix, b: &[Scalar]) -> bool {
        if self.value.is_zero() || self.combination.len() != m.rows {
            return false;
        }
        let lhs = m.transpose().mul_vec(&self.combination);
        let rhs: Scalar = self.combination.iter().zip(b).map(|(y, x)| y * x).sum();
        is_zero_vector(&lhs) && rhs == self.value
    }
}

/// Solution set of an affine-linear system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffineSolution {
    Solved { particular: Vector, homogeneous: Subspace },
    Inconsistent(InconsistencyCertificate),
}

impl AffineSolution {
    pub fn particular(&self) -> Option<&Vector> {
        match self {
            AffineSolution::Solved { particular, .. } => Some(particular),
            AffineSolution::Inconsistent(_) => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, AffineSolution::Inconsistent(_))
    }
}

/// Full solution set of `m·x = b`: the pivot-convention particular solution
/// and the kernel, or a certificate of inconsistency.
pub fn solve_affine(m: &Matrix, b: &[Scalar]) -> AffineSolution {
    match solve(m, b) {
        Some(particular) => AffineSolution::Solved {
            particular,
            homogeneous: kernel(m),
        },
        None => {
            let aug = m
                .hstack(&Matrix::from_columns(&[b.to_vec()], m.rows))
                .hstack(&Matrix::identity(m.rows));
            let (r, pivots) = rref(&aug);
            let row = pivots
                .iter()
                .position(|&p| p == m.cols)
                .expect("inconsistent system has a pivot in the constant column");
            let combination: Vector = (0..m.rows).map(|j| r[(row, m.cols + 1 + j)].clone()).collect();
            AffineSolution::Inconsistent(InconsistencyCertificate {
                combination,
                value: Scalar::one(),
            })
        }
    }
}

/// Matrix of a linear map given as a closure, by evaluating on unit vectors.
pub fn linear_map_matrix(n_in: usize, n_out: usize, f: impl Fn(&[Scalar]) -> Vector) -> Matrix {
    let mut columns = Vec::with_capacity(n_in);
    for j in 0..n_in {
        let col = f(&unit_vector(n_in, j));
        assert_eq!(col.len(), n_out, "linear map output length");
        columns.push(col);
    }
    Matrix::from_columns(&columns, n_out)
}

/// All zeros of an affine map `F: k^n_in → k^n_out` given as a closure.
pub fn solve_affine_map(n_in: usize, n_out: usize, f: impl Fn(&[Scalar]) -> Vector) -> AffineSolution {
    let offset = f(&zero_vector(n_in));
    let lin = linear_map_matrix(n_in, n_out, |x| sub_vectors(&f(x), &offset));
    let rhs: Vector = offset.iter().map(|x| -x).collect();
    solve_affine(&lin, &rhs)
}

/// A linear subspace of `k^ambient`, stored as the nonzero rows of the RREF
/// of any spanning set. Equal subspaces have equal representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_spanning(ambient: usize, vectors: Vec<Vector>) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        for v in &vectors {
            assert_eq!(v.len(), ambient, "vector outside the ambient space");
        }
        let (r, pivots) = rref(&Matrix::from_rows(vectors, ambient));
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis, pivots }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| unit_vector(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Normal form of `v` modulo the subspace: the pivot coordinates are
    /// eliminated using the echelon basis.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = out[p].clone();
            if !c.is_zero() {
                axpy(&mut out, &-c, b);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coefficients of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// The vector with the given coefficients in the echelon basis.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vector {
        assert_eq!(coeffs.len(), self.dim());
        let mut out = zero_vector(self.ambient);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            axpy(&mut out, c, b);
        }
        out
    }

    /// `ambient × dim` matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(&self.basis, self.ambient)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::from_spanning(self.ambient, vs)
    }

    pub fn image_under(&self, m: &Matrix) -> Subspace {
        Subspace::from_spanning(m.rows(), self.basis.iter().map(|b| m.mul_vec(b)).collect())
    }

    /// Non-pivot coordinate axes, which span the canonical complement.
    pub fn complement_axes(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&j| !is_pivot[j]).collect()
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace")
            .field("ambient", &self.ambient)
            .field("basis", &self.basis)
            .finish()
    }
}

/// Canonical coordinates on `k^ambient / sub`.
///
/// The complement is spanned by the non-pivot axes of `sub`'s echelon basis.
/// Returns `(projection, section)` with `projection·section = I` and
/// `kernel(projection) = sub`.
pub fn quotient_coordinates(ambient: usize, sub: &Subspace) -> (Matrix, Matrix) {
    assert_eq!(sub.ambient_dim(), ambient);
    let axes = sub.complement_axes();
    let q = axes.len();
    // Row for axis c: e_c − Σ_i b_i[c] e_{p_i}; this is v ↦ reduce(v)[c].
    let mut projection = Matrix::zeros(q, ambient);
    for (row, &c) in axes.iter().enumerate() {
        projection[(row, c)] = Scalar::one();
        for (b, &p) in sub.basis().iter().zip(sub.pivots()) {
            if !b[c].is_zero() {
                projection[(row, p)] = -&b[c];
            }
        }
    }
    let mut section = Matrix::zeros(ambient, q);
    for (col, &c) in axes.iter().enumerate() {
        section[(c, col)] = Scalar::one();
    }
    (projection, section)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vector {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn rref_small_cases() {
        let (r, p) = rref(&Matrix::identity(3));
        assert_eq!(r, Matrix::identity(3));
        assert_eq!(p, vec![0, 1, 2]);

        let (r, p) = rref(&Matrix::zeros(2, 3));
        assert!(r.is_zero());
        assert!(p.is_empty());

        let (r, p) = rref(&Matrix::from_ints(&[&[2, 4], &[1, 2]]));
        assert_eq!(r, Matrix::from_ints(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_and_image() {
        assert_eq!(kernel(&Matrix::identity(3)).dim(), 0);
        assert_eq!(kernel(&Matrix::zeros(4, 4)).dim(), 4);
        let k = kernel(&Matrix::from_ints(&[&[1, 1]]));
        assert_eq!(k.basis(), &[ints(&[1, -1])]);
        let im = image(&Matrix::from_ints(&[&[1], &[2]]));
        assert_eq!(im.basis(), &[ints(&[1, 2])]);
        assert_eq!(image(&Matrix::zeros(3, 2)).dim(), 0);
        assert_eq!(image(&Matrix::identity(2)).dim(), 2);
    }

    #[test]
    fn solve_uses_pivot_convention() {
        let m = Matrix::from_ints(&[&[1, 1]]);
        assert_eq!(solve(&m, &ints(&[2])), Some(ints(&[2, 0])));
        assert_eq!(solve(&Matrix::identity(2), &ints(&[3, -1])), Some(ints(&[3, -1])));
        assert_eq!(solve(&Matrix::zeros(1, 1), &ints(&[1])), None);
    }

    #[test]
    fn inconsistency_certificate_verifies() {
        let m = Matrix::from_ints(&[&[1, 1], &[2, 2]]);
        let b = ints(&[1, 3]);
        match solve_affine(&m, &b) {
            AffineSolution::Inconsistent(cert) => assert!(cert.verify(&m, &b)),
            other => panic!("expected inconsistency, got {other:?}"),
        }
    }

    #[test]
    fn quotient_of_diagonal_line() {
        let sub = Subspace::from_spanning(2, vec![ints(&[1, 1])]);
        let (proj, sec) = quotient_coordinates(2, &sub);
        assert_eq!(proj.rows(), 1);
        assert_eq!(sec.column(0), ints(&[0, 1]));
        assert_eq!(proj.mul(&sec), Matrix::identity(1));
        assert!(is_zero_vector(&proj.mul_vec(&ints(&[1, 1]))));

        let (proj, _) = quotient_coordinates(3, &Subspace::zero(3));
        assert_eq!(proj, Matrix::identity(3));
        let (proj, _) = quotient_coordinates(3, &Subspace::full(3));
        assert_eq!(proj.rows(), 0);
    }

    #[test]
    fn inverses() {
        let m = Matrix::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(Matrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
        let inc = Matrix::from_ints(&[&[1, 0], &[1, 1], &[0, 2]]);
        assert_eq!(inc.left_inverse().unwrap().mul(&inc), Matrix::identity(2));
    }

    #[test]
    fn sparse_and_dense_agree() {
        let m = Matrix::from_ints(&[&[0, 2, 4, 1], &[1, 0, 3, 0], &[2, 2, 10, 1], &[0, 0, 0, 5]]);
        assert_eq!(rref_with(&m, Storage::Dense), rref_with(&m, Storage::Sparse));
    }
}
