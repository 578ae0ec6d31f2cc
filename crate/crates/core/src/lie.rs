//! Finite-dimensional Lie algebras given by structure constants, their
//! representations and the standard constructions on them.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{
    axpy, image, is_zero_vector, kernel, linear_map_matrix, quotient_coordinates, sub_vectors, unit_vector,
    zero_vector, Matrix, Subspace, Vector,
};
use crate::scalar::Scalar;

/// A bracket table that has not been checked for the Jacobi identity.
///
/// Antisymmetry holds by construction: only pairs `i < j` are written and
/// the rest is synthesized.
#[derive(Clone, PartialEq, Eq)]
pub struct BracketTable {
    dim: usize,
    entries: Vec<Vec<Vector>>,
}

impl BracketTable {
    pub fn zero(dim: usize) -> Self {
        BracketTable {
            dim,
            entries: vec![vec![zero_vector(dim); dim]; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sets `[e_i, e_j] = value` and `[e_j, e_i] = −value`. Requires `i < j`.
    pub fn set(&mut self, i: usize, j: usize, value: Vector) {
        assert!(i < j && j < self.dim, "bracket entries are written for i < j");
        assert_eq!(value.len(), self.dim);
        self.entries[j][i] = value.iter().map(|x| -x).collect();
        self.entries[i][j] = value;
    }

    pub fn get(&self, i: usize, j: usize) -> &Vector {
        &self.entries[i][j]
    }

    /// Bracket of two arbitrary vectors.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                axpy(&mut out, &(xi * yj), &self.entries[i][j]);
            }
        }
        out
    }

    /// The cyclic sum `[[x,y],z] + [[y,z],x] + [[z,x],y]` on basis elements.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vector {
        let e = |a: usize| unit_vector(self.dim, a);
        let mut out = self.bracket(&self.entries[i][j], &e(k));
        let t2 = self.bracket(&self.entries[j][k], &e(i));
        let t3 = self.bracket(&self.entries[k][i], &e(j));
        axpy(&mut out, &Scalar::one(), &t2);
        axpy(&mut out, &Scalar::one(), &t3);
        out
    }

    /// All basis triples `i < j < k` on which the Jacobi identity fails.
    pub fn jacobi_violations(&self) -> Vec<(usize, usize, usize)> {
        let mut bad = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    if !is_zero_vector(&self.jacobiator(i, j, k)) {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }
}

/// True iff the cyclic Jacobi sum vanishes on all basis triples.
pub fn check_jacobi(table: &BracketTable) -> bool {
    table.jacobi_violations().is_empty()
}

/// A Lie algebra over ℚ with a fixed ordered basis.
///
/// Basis labels are metadata: equality compares structure constants only.
#[derive(Clone)]
pub struct LieAlgebra {
    labels: Vec<String>,
    table: BracketTable,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Eq for LieAlgebra {}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim {}, basis {:?})", self.dim(), self.labels)
    }
}

impl LieAlgebra {
    /// Builds an algebra from the brackets `[e_i, e_j]`, `i < j`; unlisted
    /// pairs bracket to zero.
    ///
    /// # Errors
    /// `InvariantViolation` for malformed entries, `JacobiViolation` naming
    /// the first failing triple otherwise.
    pub fn new(labels: Vec<String>, brackets: &[(usize, usize, Vector)]) -> Result<Self> {
        let dim = labels.len();
        let mut table = BracketTable::zero(dim);
        let mut seen = std::collections::BTreeSet::new();
        let mut problems = Vec::new();
        for (i, j, v) in brackets {
            if i >= j || *j >= dim {
                problems.push(format!("bracket entry ({i},{j}) must satisfy i < j < {dim}"));
                continue;
            }
            if v.len() != dim {
                problems.push(format!(
                    "bracket entry ({i},{j}) has length {} instead of {dim}",
                    v.len()
                ));
                continue;
            }
            if !seen.insert((*i, *j)) {
                problems.push(format!("bracket entry ({i},{j}) listed twice"));
                continue;
            }
            table.set(*i, *j, v.clone());
        }
        if !problems.is_empty() {
            return Err(Error::InvariantViolation(problems));
        }
        LieAlgebra::from_table(labels, table)
    }

    pub fn from_table(labels: Vec<String>, table: BracketTable) -> Result<Self> {
        if labels.len() != table.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for a {}-dimensional bracket table",
                labels.len(),
                table.dim()
            )));
        }
        if let Some(&(i, j, k)) = table.jacobi_violations().first() {
            return Err(Error::JacobiViolation(i, j, k));
        }
        Ok(LieAlgebra { labels, table })
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            labels: default_labels("e", dim),
            table: BracketTable::zero(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
        self
    }

    pub fn table(&self) -> &BracketTable {
        &self.table
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Vector {
        self.table.get(i, j)
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.table.bracket(x, y)
    }

    /// `ad e_i` as a matrix: column `j` is `[e_i, e_j]`.
    pub fn ad_basis(&self, i: usize) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n, n, |r, c| self.table.get(i, c)[r].clone())
    }

    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                m = m.add(&self.ad_basis(i).scale(xi));
            }
        }
        m
    }

    /// Nonzero brackets `(i, j, [e_i, e_j])` with `i < j`, in order.
    pub fn structure_constants(&self) -> Vec<(usize, usize, Vector)> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                let v = self.table.get(i, j);
                if !is_zero_vector(v) {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.structure_constants().is_empty()
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        unit_vector(self.dim(), i)
    }
}

pub(crate) fn default_labels(prefix: &str, dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("{prefix}{i}")).collect()
}

/// A representation of a Lie algebra on `k^space_dim`.
#[derive(Clone, PartialEq, Eq)]
pub struct Representation {
    algebra: Arc<LieAlgebra>,
    space_dim: usize,
    action: Vec<Matrix>,
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Representation")
            .field("algebra", &self.algebra)
            .field("action", &self.action)
            .finish()
    }
}

impl Representation {
    /// Checks shapes and `ρ([x,y]) = [ρ(x), ρ(y)]` on all basis pairs.
    pub fn new(algebra: Arc<LieAlgebra>, space_dim: usize, action: Vec<Matrix>) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for a {}-dimensional algebra",
                action.len(),
                algebra.dim()
            )));
        }
        for m in &action {
            if m.rows() != space_dim || m.cols() != space_dim {
                return Err(Error::DimensionMismatch(format!(
                    "action matrix of shape {}x{}, expected {space_dim}x{space_dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        if let Some((i, j)) = homomorphism_violation(&algebra, &action, space_dim) {
            return Err(Error::NotAHomomorphism(i, j));
        }
        Ok(Representation {
            algebra,
            space_dim,
            action,
        })
    }

    pub fn trivial(algebra: Arc<LieAlgebra>, space_dim: usize) -> Self {
        let action = vec![Matrix::zeros(space_dim, space_dim); algebra.dim()];
        Representation {
            algebra,
            space_dim,
            action,
        }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// `ρ(x)` for an arbitrary element.
    pub fn act(&self, x: &[Scalar]) -> Matrix {
        combine_matrices(&self.action, x, self.space_dim())
    }

    /// The dual representation `ρ*(x) = −ρ(x)ᵀ`.
    pub fn dual(&self) -> Representation {
        let action = self
            .action
            .iter()
            .map(|m| m.transpose().scale(&Scalar::from_int(-1)))
            .collect();
        Representation {
            algebra: self.algebra.clone(),
            space_dim: self.space_dim,
            action,
        }
    }
}

/// `Σ x_i M_i`.
pub fn combine_matrices(ms: &[Matrix], x: &[Scalar], dim: usize) -> Matrix {
    let mut out = Matrix::zeros(dim, dim);
    for (m, c) in ms.iter().zip(x) {
        if !c.is_zero() {
            out = out.add(&m.scale(c));
        }
    }
    out
}

/// First basis pair on which `x ↦ ms[x]` fails to be a homomorphism into
/// `gl(space_dim)`.
pub fn homomorphism_violation(algebra: &LieAlgebra, ms: &[Matrix], space_dim: usize) -> Option<(usize, usize)> {
    for i in 0..algebra.dim() {
        for j in i + 1..algebra.dim() {
            let lhs = combine_matrices(ms, algebra.bracket_basis(i, j), space_dim);
            if lhs != ms[i].commutator(&ms[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// The adjoint representation.
pub fn adjoint_rep(algebra: &Arc<LieAlgebra>) -> Representation {
    let action = (0..algebra.dim()).map(|i| algebra.ad_basis(i)).collect();
    Representation {
        algebra: algebra.clone(),
        space_dim: algebra.dim(),
        action,
    }
}

/// A linear map between Lie algebras in the given bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearLieMap {
    pub source: Arc<LieAlgebra>,
    pub target: Arc<LieAlgebra>,
    pub matrix: Matrix,
}

impl LinearLieMap {
    pub fn new(source: Arc<LieAlgebra>, target: Arc<LieAlgebra>, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "map matrix {}x{} between algebras of dims {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        Ok(LinearLieMap { source, target, matrix })
    }

    /// First basis pair where brackets are not preserved.
    pub fn homomorphism_violation(&self) -> Option<(usize, usize)> {
        map_homomorphism_violation(&self.source, &self.target, &self.matrix)
    }

    pub fn is_homomorphism(&self) -> bool {
        self.homomorphism_violation().is_none()
    }

    pub fn is_derivation(&self) -> bool {
        self.source == self.target && is_derivation(&self.source, &self.matrix)
    }
}

pub fn map_homomorphism_violation(source: &LieAlgebra, target: &LieAlgebra, m: &Matrix) -> Option<(usize, usize)> {
    let images: Vec<Vector> = (0..source.dim()).map(|i| m.column(i)).collect();
    for i in 0..source.dim() {
        for j in i + 1..source.dim() {
            let lhs = m.mul_vec(source.bracket_basis(i, j));
            let rhs = target.bracket(&images[i], &images[j]);
            if lhs != rhs {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn is_homomorphism(source: &LieAlgebra, target: &LieAlgebra, m: &Matrix) -> bool {
    map_homomorphism_violation(source, target, m).is_none()
}

/// Leibniz residual `D[e_i,e_j] − [De_i,e_j] − [e_i,De_j]` for all `i < j`,
/// concatenated.
pub(crate) fn leibniz_residual(algebra: &LieAlgebra, d: &Matrix) -> Vector {
    let n = algebra.dim();
    let mut out = Vec::with_capacity(n * n * n / 2);
    for i in 0..n {
        for j in i + 1..n {
            let lhs = d.mul_vec(algebra.bracket_basis(i, j));
            let t1 = algebra.bracket(&d.column(i), &algebra.basis_vector(j));
            let t2 = algebra.bracket(&algebra.basis_vector(i), &d.column(j));
            let mut r = sub_vectors(&lhs, &t1);
            r = sub_vectors(&r, &t2);
            out.extend(r);
        }
    }
    out
}

pub fn is_derivation(algebra: &LieAlgebra, d: &Matrix) -> bool {
    d.rows() == algebra.dim() && d.cols() == algebra.dim() && is_zero_vector(&leibniz_residual(algebra, d))
}

/// The center, as the kernel of `x ↦ ad x`.
pub fn center(algebra: &LieAlgebra) -> Subspace {
    let n = algebra.dim();
    let columns: Vec<Vector> = (0..n).map(|k| algebra.ad_basis(k).flatten()).collect();
    kernel(&Matrix::from_columns(&columns, n * n))
}

/// The derived algebra `[L, L]`.
pub fn derived_algebra(algebra: &LieAlgebra) -> Subspace {
    let n = algebra.dim();
    let mut vs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            vs.push(algebra.bracket_basis(i, j).clone());
        }
    }
    Subspace::from_spanning(n, vs)
}

/// Checks `[L, I] ⊆ I`, naming the first offending pair.
pub fn ideal_violation(algebra: &LieAlgebra, ideal: &Subspace) -> Option<(usize, usize)> {
    for i in 0..algebra.dim() {
        for (b, v) in ideal.basis().iter().enumerate() {
            if !ideal.contains(&algebra.bracket(&algebra.basis_vector(i), v)) {
                return Some((i, b));
            }
        }
    }
    None
}

pub fn is_ideal(algebra: &LieAlgebra, sub: &Subspace) -> bool {
    ideal_violation(algebra, sub).is_none()
}

/// `L / I` in canonical quotient coordinates.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: Arc<LieAlgebra>,
    /// `dim(L/I) × dim L`, a Lie homomorphism.
    pub projection: Matrix,
    /// `dim L × dim(L/I)`, a linear right inverse.
    pub section: Matrix,
}

pub fn quotient_algebra(algebra: &LieAlgebra, ideal: &Subspace) -> Result<Quotient> {
    if ideal.ambient_dim() != algebra.dim() {
        return Err(Error::DimensionMismatch("ideal lives in a different space".into()));
    }
    if let Some((element, basis_vector)) = ideal_violation(algebra, ideal) {
        return Err(Error::NotAnIdeal { element, basis_vector });
    }
    let (projection, section) = quotient_coordinates(algebra.dim(), ideal);
    let q = projection.rows();
    let lifts: Vec<Vector> = (0..q).map(|a| section.column(a)).collect();
    let mut table = BracketTable::zero(q);
    for a in 0..q {
        for b in a + 1..q {
            table.set(a, b, projection.mul_vec(&algebra.bracket(&lifts[a], &lifts[b])));
        }
    }
    let labels = ideal
        .complement_axes()
        .iter()
        .map(|&c| algebra.labels()[c].clone())
        .collect();
    let quotient = LieAlgebra::from_table(labels, table)?;
    Ok(Quotient {
        algebra: Arc::new(quotient),
        projection,
        section,
    })
}

/// `der(L)` with the commutator bracket.
#[derive(Clone, Debug)]
pub struct DerivationAlgebra {
    /// Structure constants in the basis `basis`.
    pub algebra: Arc<LieAlgebra>,
    /// Derivation matrices, the echelon basis of the solution space in
    /// `End(L)` flattened row-major.
    pub basis: Vec<Matrix>,
    /// The inner derivations `ad L` in coordinates of `basis`.
    pub inner: Subspace,
    /// The solution space inside flattened `End(L)`.
    pub space: Subspace,
}

impl DerivationAlgebra {
    /// Coordinates of a derivation matrix in `basis`.
    pub fn coordinates(&self, d: &Matrix) -> Option<Vector> {
        self.space.coordinates(&d.flatten())
    }
}

/// The space of derivations of `L` as a subspace of flattened `End(L)`.
pub fn derivation_space(algebra: &LieAlgebra) -> Subspace {
    let n = algebra.dim();
    let m = linear_map_matrix(n * n, n * n.saturating_sub(1) / 2 * n, |x| {
        leibniz_residual(algebra, &Matrix::from_flat(n, n, x.to_vec()))
    });
    kernel(&m)
}

/// Solves `D[x,y] = [Dx,y] + [x,Dy]` over `End(L)`.
pub fn derivations(algebra: &LieAlgebra) -> Result<DerivationAlgebra> {
    let n = algebra.dim();
    let space = derivation_space(algebra);
    let basis: Vec<Matrix> = space
        .basis()
        .iter()
        .map(|v| Matrix::from_flat(n, n, v.clone()))
        .collect();
    let d = basis.len();
    let mut table = BracketTable::zero(d);
    for a in 0..d {
        for b in a + 1..d {
            let c = basis[a].commutator(&basis[b]).flatten();
            let coords = space.coordinates(&c).expect("derivations are closed under commutators");
            table.set(a, b, coords);
        }
    }
    let der = LieAlgebra::from_table(default_labels("D", d), table)?;
    let inner_vectors: Vec<Vector> = (0..n)
        .map(|k| {
            space
                .coordinates(&algebra.ad_basis(k).flatten())
                .expect("inner derivations are derivations")
        })
        .collect();
    let inner = Subspace::from_spanning(d, inner_vectors);
    Ok(DerivationAlgebra {
        algebra: Arc::new(der),
        basis,
        inner,
        space,
    })
}

/// Bracket table of `n ⊕ g` under
/// `[(n,x),(n',x')] = ([n,n'] + S(x)n' − S(x')n + ω(x,x'), [x,x'])`,
/// with coordinates `n` first. `omega(i, j)` is only called for `i < j`.
pub(crate) fn extension_table(
    n: &LieAlgebra,
    g: &LieAlgebra,
    s: &[Matrix],
    omega: impl Fn(usize, usize) -> Vector,
) -> BracketTable {
    let (dn, dg) = (n.dim(), g.dim());
    let mut table = BracketTable::zero(dn + dg);
    let embed = |nv: &[Scalar], gv: &[Scalar]| -> Vector { nv.iter().chain(gv).cloned().collect() };
    for a in 0..dn {
        for b in a + 1..dn {
            table.set(a, b, embed(n.bracket_basis(a, b), &zero_vector(dg)));
        }
    }
    for a in 0..dn {
        for (x, sx) in s.iter().enumerate() {
            // [(e_a, 0), (0, e_x)] = (−S(e_x) e_a, 0)
            let v: Vector = sx.column(a).iter().map(|c| -c).collect();
            table.set(a, dn + x, embed(&v, &zero_vector(dg)));
        }
    }
    for x in 0..dg {
        for y in x + 1..dg {
            table.set(dn + x, dn + y, embed(&omega(x, y), g.bracket_basis(x, y)));
        }
    }
    table
}

/// `n ⋊_S g`, or the direct sum when `s` is `None`.
///
/// # Errors
/// `NotAHomomorphism` when `S` is not a homomorphism `g → der(n)`; a map
/// whose values are not derivations is reported the same way with the pair
/// `(x, x)`.
pub fn direct_and_semidirect(n: &LieAlgebra, g: &LieAlgebra, s: Option<&[Matrix]>) -> Result<LieAlgebra> {
    let zero: Vec<Matrix> = vec![Matrix::zeros(n.dim(), n.dim()); g.dim()];
    let s = s.unwrap_or(&zero);
    if s.len() != g.dim() || s.iter().any(|m| m.rows() != n.dim() || m.cols() != n.dim()) {
        return Err(Error::DimensionMismatch(
            "S must give one dim(n) square matrix per basis element of g".into(),
        ));
    }
    if let Some(x) = s.iter().position(|m| !is_derivation(n, m)) {
        return Err(Error::NotAHomomorphism(x, x));
    }
    if let Some((i, j)) = homomorphism_violation(g, s, n.dim()) {
        return Err(Error::NotAHomomorphism(i, j));
    }
    let table = extension_table(n, g, s, |_, _| zero_vector(n.dim()));
    let labels = n.labels().iter().chain(g.labels()).cloned().collect();
    LieAlgebra::from_table(labels, table)
}

/// Image of the adjoint map as a subspace of flattened `End(L)`.
pub fn inner_derivations(algebra: &LieAlgebra) -> Subspace {
    let n = algebra.dim();
    let columns: Vec<Vector> = (0..n).map(|k| algebra.ad_basis(k).flatten()).collect();
    image(&Matrix::from_columns(&columns, n * n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn ints(v: &[i64]) -> Vector {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn jacobi_counterexample_is_caught() {
        let mut t = BracketTable::zero(3);
        t.set(0, 1, ints(&[0, 0, 1]));
        t.set(1, 2, ints(&[1, 0, 0]));
        t.set(0, 2, ints(&[1, 0, 0]));
        assert!(!check_jacobi(&t));
        let err = LieAlgebra::from_table(default_labels("e", 3), t).unwrap_err();
        assert!(matches!(err, Error::JacobiViolation(0, 1, 2)));
        assert!(check_jacobi(LieAlgebra::abelian(4).table()));
        assert!(check_jacobi(catalog::heisenberg3().table()));
    }

    #[test]
    fn centers() {
        assert_eq!(center(&LieAlgebra::abelian(3)).dim(), 3);
        let z = center(&catalog::heisenberg3());
        assert_eq!(z.basis(), &[ints(&[0, 0, 1])]);
        assert_eq!(center(&catalog::sl2()).dim(), 0);
    }

    #[test]
    fn adjoint_matrices() {
        let sl2 = Arc::new(catalog::sl2());
        let ad = adjoint_rep(&sl2);
        let h = &ad.action()[2];
        assert_eq!(h, &Matrix::from_ints(&[&[2, 0, 0], &[0, -2, 0], &[0, 0, 0]]));
        let heis = catalog::heisenberg3();
        let ad_p = heis.ad_basis(0);
        let nonzero: Vec<(usize, usize)> = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .filter(|&(i, j)| !ad_p[(i, j)].is_zero())
            .collect();
        assert_eq!(nonzero, vec![(2, 1)]);
        assert!(adjoint_rep(&Arc::new(LieAlgebra::abelian(2)))
            .action()
            .iter()
            .all(Matrix::is_zero));
    }

    #[test]
    fn quotients() {
        let heis = catalog::heisenberg3();
        let q = quotient_algebra(&heis, &center(&heis)).unwrap();
        assert_eq!(q.algebra.dim(), 2);
        assert!(q.algebra.is_abelian());
        assert_eq!(q.projection.mul(&q.section), Matrix::identity(2));
        assert!(is_homomorphism(&heis, &q.algebra, &q.projection));

        let q0 = quotient_algebra(&heis, &Subspace::zero(3)).unwrap();
        assert_eq!(*q0.algebra, heis);
        assert_eq!(quotient_algebra(&heis, &Subspace::full(3)).unwrap().algebra.dim(), 0);

        let line = Subspace::from_spanning(3, vec![ints(&[1, 0, 0])]);
        assert!(matches!(quotient_algebra(&heis, &line), Err(Error::NotAnIdeal { .. })));
    }

    #[test]
    fn derivation_dimensions() {
        assert_eq!(derivations(&LieAlgebra::abelian(1)).unwrap().basis.len(), 1);
        let dh = derivations(&catalog::heisenberg3()).unwrap();
        assert_eq!(dh.basis.len(), 6);
        assert_eq!(dh.inner.dim(), 2);
        assert!(is_ideal(&dh.algebra, &dh.inner));
        let ds = derivations(&catalog::sl2()).unwrap();
        assert_eq!(ds.basis.len(), 3);
        assert_eq!(ds.inner.dim(), 3);
    }

    #[test]
    fn semidirect_sums() {
        let k = LieAlgebra::abelian(1);
        let s = vec![Matrix::identity(1)];
        let two = direct_and_semidirect(&k, &k, Some(&s)).unwrap();
        assert_eq!(two.dim(), 2);
        assert!(!two.is_abelian());
        let direct = direct_and_semidirect(&k, &k, None).unwrap();
        assert!(direct.is_abelian());

        let sl2 = catalog::sl2();
        let natural = catalog::sl2_natural_matrices();
        let five = direct_and_semidirect(&LieAlgebra::abelian(2), &sl2, Some(&natural)).unwrap();
        assert_eq!(five.dim(), 5);
        assert!(check_jacobi(five.table()));

        let bad = vec![Matrix::identity(1), Matrix::zeros(1, 1)];
        let g = catalog::nonabelian2();
        assert!(matches!(
            direct_and_semidirect(&k, &g, Some(&bad)),
            Err(Error::NotAHomomorphism(0, 1))
        ));
    }
}
